#include "qchain/statmech.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "qchain/ringlin.hpp"
#include "qchain/rng.hpp"
#include "qchain/stabilizer.hpp"

namespace qchain {

i64 ising_energy(const Graph& g, const std::vector<int>& spins) {
    if ((int)spins.size() != g.vertex_count())
        throw std::invalid_argument("ising_energy: spin count != vertex count");
    for (int s : spins)
        if (s != 1 && s != -1)
            throw std::invalid_argument("ising_energy: spins must be +-1");
    i64 e = 0;
    for (auto [u, v] : g.edges()) e -= (i64)spins[u] * spins[v];
    return e;
}

double m_squared(const std::vector<int>& spins) {
    if (spins.empty()) return 0.0;
    i64 sum = 0;
    for (int s : spins) sum += s;
    double frac = (double)sum / (double)spins.size();
    return frac * frac;
}

double m_squared_mixture(
    const std::vector<std::pair<double, std::vector<int>>>& mixture) {
    double wsum = 0, acc = 0;
    for (const auto& [w, spins] : mixture) {
        wsum += w;
        acc += w * m_squared(spins);
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("m_squared_mixture: weights must sum to 1");
    return acc;
}

M2BoundReport verify_m2_bound(const Graph& g, bool exhaustive, std::uint64_t samples,
                              std::uint64_t seed) {
    const int n = g.vertex_count();
    if (exhaustive && n > 20)
        throw std::invalid_argument("verify_m2_bound: exhaustive mode needs N <= 20");
    ExpansionResult c = edge_expansion_exact(g);
    M2BoundReport rep;
    rep.c_cut = c.cut;
    rep.c_size = c.size;
    rep.min_slack = 2.0;  // M^2 and the bound both live in [-inf, 1]

    const i64 e0 = ising_ground_energy(g);
    auto check_config = [&](std::uint64_t mask) {
        std::vector<int> spins(n);
        for (int v = 0; v < n; ++v) spins[v] = (mask >> v & 1) ? -1 : 1;
        i64 e = ising_energy(g, spins);
        i64 delta = 0;
        for (int s : spins) delta += s;
        // exact integer test of delta^2/N^2 >= 1 - 2(E-E0) size/(cut N):
        // delta^2 * cut * N >= cut * N^3 - 2 (E-E0) size N^2
        i64 lhs = delta * delta * rep.c_cut * n;
        i64 rhs = rep.c_cut * (i64)n * n * n - 2 * (e - e0) * rep.c_size * (i64)n * n;
        ++rep.configs_checked;
        if (lhs < rhs) ++rep.violations;
        double slack = (double)delta * delta / ((double)n * n) -
                       (1.0 - 2.0 * (double)(e - e0) * rep.c_size /
                                  ((double)rep.c_cut * n));
        rep.min_slack = std::min(rep.min_slack, slack);
    };

    if (exhaustive) {
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) check_config(mask);
    } else {
        Rng rng(seed);
        for (std::uint64_t t = 0; t < samples; ++t)
            check_config(rng.next() & ((1ull << n) - 1));
    }
    return rep;
}

namespace {

std::vector<int> partition_segments(int length, int block) {
    if (block < 1 || block > length)
        throw std::invalid_argument("checkerboard_state: need 1 <= l <= L");
    int m = length / block, r = length % block;
    // m - r segments of size l, then r segments of size l+1
    std::vector<int> seg(m - r, block);
    seg.insert(seg.end(), r, block + 1);
    return seg;
}

}  // namespace

CheckerboardReport checkerboard_state(int grid_side, int block_side) {
    CheckerboardReport rep;
    rep.grid_side = grid_side;
    rep.block_side = block_side;
    rep.segments = partition_segments(grid_side, block_side);
    const int nseg = (int)rep.segments.size();
    const i64 n = (i64)grid_side * grid_side;
    rep.total_edges = 2 * n;  // torus grid

    // cross edges: along each axis, every segment boundary contributes one
    // cut column/row of length L; a single segment wraps onto itself.
    const i64 boundaries = nseg == 1 ? 0 : nseg;
    rep.cross_edges = 2 * boundaries * grid_side;

    i64 sum_sq = 0;
    for (int a : rep.segments)
        for (int b : rep.segments) sum_sq += (i64)(a * b) * (a * b);
    rep.m2_num = sum_sq;
    rep.m2_den = n * n;
    rep.expected_energy = -(double)(rep.total_edges - rep.cross_edges);
    rep.expected_violated = (double)rep.cross_edges / 2.0;
    return rep;
}

CheckerboardSample checkerboard_sample(const CheckerboardReport& rep,
                                       std::uint64_t nsamples, std::uint64_t seed) {
    const int L = rep.grid_side;
    const int nseg = (int)rep.segments.size();
    std::vector<int> seg_of(L);
    {
        int pos = 0, s = 0;
        for (int len : rep.segments) {
            for (int k = 0; k < len; ++k) seg_of[pos++] = s;
            ++s;
        }
    }
    Graph torus = named_graph("grid_torus(" + std::to_string(L) + ")");
    std::vector<int> block_of(L * L);
    for (int r = 0; r < L; ++r)
        for (int c = 0; c < L; ++c) block_of[r * L + c] = seg_of[r] * nseg + seg_of[c];
    const int nblocks = nseg * nseg;
    std::vector<i64> block_size(nblocks, 0);
    for (int v = 0; v < L * L; ++v) ++block_size[block_of[v]];

    Rng rng(seed);
    double e_sum = 0, e_sq = 0, m_sum = 0, m_sq = 0;
    std::vector<int> sign(nblocks);
    for (std::uint64_t t = 0; t < nsamples; ++t) {
        for (int b = 0; b < nblocks; ++b) sign[b] = (rng.next() & 1) ? -1 : 1;
        i64 e = 0;
        for (auto [u, v] : torus.edges()) e -= (i64)sign[block_of[u]] * sign[block_of[v]];
        i64 mag = 0;
        for (int b = 0; b < nblocks; ++b) mag += sign[b] * block_size[b];
        double m2 = (double)mag * mag / ((double)L * L * L * L);
        e_sum += (double)e;
        e_sq += (double)e * e;
        m_sum += m2;
        m_sq += m2 * m2;
    }
    CheckerboardSample s;
    s.samples = nsamples;
    double inv = 1.0 / (double)nsamples;
    s.energy_mean = e_sum * inv;
    s.energy_stderr = std::sqrt(std::max(0.0, e_sq * inv - s.energy_mean * s.energy_mean) * inv);
    s.m2_mean = m_sum * inv;
    s.m2_stderr = std::sqrt(std::max(0.0, m_sq * inv - s.m2_mean * s.m2_mean) * inv);
    return s;
}

namespace {

/// Gibbs expectation of one decoupled term with spectrum {2 cos(2 pi j/q)}.
double per_term_value(i64 q, double beta) {
    long double num = 0, den = 0;
    for (i64 j = 0; j < q; ++j) {
        long double lam = 2.0L * std::cos(2.0L * std::numbers::pi_v<long double> *
                                          (long double)j / (long double)q);
        long double w = std::exp((long double)beta * lam);
        num += lam * w;
        den += w;
    }
    return (double)(num / den);
}

int independent_rows(const SparseMat& m, i64 q) {
    return rank_mod_p(m.reduced(q), q);
}

}  // namespace

ThermalReport thermal_energy_exact(const CssCode& code, double beta,
                                   bool drop_redundant) {
    require_prime(code.q, "thermal_energy_exact");
    ThermalReport rep;
    int rx = independent_rows(code.h_x, code.q);
    int rz = independent_rows(code.h_z, code.q);
    if (!drop_redundant) {
        if (rx != code.h_x.rows()) {
            auto ker = kernel_basis_mod_p(code.h_x.transpose().reduced(code.q), code.q);
            throw RedundancyError(
                "thermal_energy_exact: X checks are redundant; pass "
                "drop_redundant to keep an independent subset",
                'X', ker.empty() ? std::vector<i64>{} : ker.front());
        }
        if (rz != code.h_z.rows()) {
            auto ker = kernel_basis_mod_p(code.h_z.transpose().reduced(code.q), code.q);
            throw RedundancyError(
                "thermal_energy_exact: Z checks are redundant; pass "
                "drop_redundant to keep an independent subset",
                'Z', ker.empty() ? std::vector<i64>{} : ker.front());
        }
    }
    rep.terms_x = rx;
    rep.terms_z = rz;
    rep.dropped_x = code.h_x.rows() - rx;
    rep.dropped_z = code.h_z.rows() - rz;
    rep.per_term = per_term_value(code.q, beta);
    rep.energy = -(double)(rep.terms_x + rep.terms_z) * rep.per_term;
    return rep;
}

double thermal_energy_brute(const CssCode& code, double beta, std::uint64_t budget) {
    const i64 q = code.q;
    std::uint64_t dim = 1;
    for (int i = 0; i < code.n; ++i) {
        dim *= (std::uint64_t)q;
        if (dim > budget)
            throw std::invalid_argument("thermal_energy_brute: q^n over budget");
    }
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero((Eigen::Index)dim, (Eigen::Index)dim);

    std::vector<std::vector<i64>> xrows(code.h_x.rows(), std::vector<i64>(code.n, 0));
    for (const auto& e : code.h_x.entries()) xrows[e.row][e.col] = e.val;
    std::vector<std::vector<i64>> zrows(code.h_z.rows(), std::vector<i64>(code.n, 0));
    for (const auto& e : code.h_z.entries()) zrows[e.row][e.col] = e.val;

    std::vector<i64> digits(code.n);
    auto decompose = [&](std::uint64_t m) {
        for (int i = 0; i < code.n; ++i) {
            digits[i] = (i64)(m % (std::uint64_t)q);
            m /= (std::uint64_t)q;
        }
    };
    // X-type checks: shift |m> -> |m + a> plus hermitian conjugate
    for (const auto& a : xrows) {
        for (std::uint64_t m = 0; m < dim; ++m) {
            decompose(m);
            std::uint64_t to = 0, scale = 1;
            for (int i = 0; i < code.n; ++i) {
                to += (std::uint64_t)mod_reduce(digits[i] + a[i], q) * scale;
                scale *= (std::uint64_t)q;
            }
            h((Eigen::Index)to, (Eigen::Index)m) -= 1.0;
            h((Eigen::Index)m, (Eigen::Index)to) -= 1.0;
        }
    }
    // Z-type checks: diagonal 2 cos(2 pi <z, m> / q)
    for (const auto& z : zrows) {
        for (std::uint64_t m = 0; m < dim; ++m) {
            decompose(m);
            i64 dot = 0;
            for (int i = 0; i < code.n; ++i) dot = mod_reduce(dot + z[i] * digits[i], q);
            h((Eigen::Index)m, (Eigen::Index)m) -=
                2.0 * std::cos(2.0 * std::numbers::pi * (double)dot / (double)q);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto& lam = es.eigenvalues();
    const double lmin = lam.minCoeff();
    long double zsum = 0, esum = 0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        long double w = std::exp(-(long double)beta * (lam(i) - lmin));
        zsum += w;
        esum += (long double)lam(i) * w;
    }
    return (double)(esum / zsum);
}

}  // namespace qchain
