#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qchain/css_code.hpp"
#include "qchain/graph.hpp"

namespace qchain {

/// -sum over edges of s_i s_j for spins s in {-1,+1}.
i64 ising_energy(const Graph& g, const std::vector<int>& spins);

inline i64 ising_ground_energy(const Graph& g) { return -(i64)g.edge_count(); }

/// ((N_up - N_down)/N)^2 for a pure configuration.
double m_squared(const std::vector<int>& spins);

/// Weighted average of pure-configuration values (weights must sum to 1).
double m_squared_mixture(
    const std::vector<std::pair<double, std::vector<int>>>& mixture);

struct M2BoundReport {
    i64 c_cut = 0, c_size = 1;   // exact expansion coefficient as a fraction
    std::uint64_t configs_checked = 0;
    std::uint64_t violations = 0;
    double min_slack = 0.0;      // tightest M^2 - (1 - 2(E-E0)/(cN)) observed
};

/// Checks M^2 >= 1 - 2(E-E0)/(cN) with the exact brute-forced expansion
/// coefficient, over all 2^N configurations (N <= 20) or a seeded sample.
M2BoundReport verify_m2_bound(const Graph& g, bool exhaustive = true,
                              std::uint64_t samples = 0, std::uint64_t seed = 0);

struct CheckerboardReport {
    int grid_side = 0;   // L
    int block_side = 0;  // l
    std::vector<int> segments;  // 1-d partition of L (same on both axes)
    i64 total_edges = 0;
    i64 cross_edges = 0;
    i64 m2_num = 0, m2_den = 1;      // exact M^2 = sum of block sizes^2 / N^2
    double expected_energy = 0.0;    // -(total - cross)
    double expected_violated = 0.0;  // cross / 2
};

/// Independent +-block mixture on the L x L torus with blocks of side l
/// (sides l and l+1 when l does not divide L); exact closed forms.
CheckerboardReport checkerboard_state(int grid_side, int block_side);

struct CheckerboardSample {
    double m2_mean = 0, m2_stderr = 0;
    double energy_mean = 0, energy_stderr = 0;
    std::uint64_t samples = 0;
};

/// Monte-Carlo estimate of the same mixture, for cross-checking the closed
/// forms; deterministic in the seed.
CheckerboardSample checkerboard_sample(const CheckerboardReport& rep,
                                       std::uint64_t nsamples, std::uint64_t seed);

struct ThermalReport {
    double per_term = 0.0;  // Gibbs expectation of one check term
    int terms_x = 0, terms_z = 0;
    int dropped_x = 0, dropped_z = 0;  // only in drop_redundant mode
    double energy = 0.0;               // -(terms_x + terms_z) * per_term
};

/// Exact thermal energy of a redundancy-free code: every term decouples to
/// the single-site spectrum {2 cos(2 pi j / q)}.  Uses the Gibbs weight
/// e^{+beta A_k} for a term appearing in H as -A_k.  With redundancy
/// present, refuses (RedundancyError) unless drop_redundant is set, which
/// keeps a maximal independent row subset and reports the dropped counts.
ThermalReport thermal_energy_exact(const CssCode& code, double beta,
                                   bool drop_redundant = false);

/// Dense-trace oracle: builds the full q^n Hamiltonian and evaluates
/// tr(H e^{-beta H})/Z.  Guarded by q^n <= budget.
double thermal_energy_brute(const CssCode& code, double beta,
                            std::uint64_t budget = 4096);

}  // namespace qchain
