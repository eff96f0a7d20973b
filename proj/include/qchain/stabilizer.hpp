#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qchain/chain_complex.hpp"
#include "qchain/css_code.hpp"
#include "qchain/pauli.hpp"

namespace qchain {

/// exp((pi/4) Q) for a Pauli word Q with Q^2 = -1 (a product of two
/// anticommuting Hermitian words needs no imaginary unit in the exponent).
struct PauliExpGate {
    PauliOp q;
};

/// Controlled-NOT in the x basis: X_c -> X_c X_t^coeff, Z_t -> Z_t Z_c^-coeff.
/// Adds column c to column t of an x-exponent matrix.
struct CxGate {
    int control = 0;
    int target = 0;
    i64 coeff = 1;
};

struct HadamardGate {
    int site = 0;
};

/// Qudit relabeling: site i moves to perm[i].
struct PermGate {
    std::vector<int> perm;
};

/// q > 2 only: X_i -> X_i^unit, Z_i -> Z_i^{unit^-1} (scalar column scaling).
struct ScalarGate {
    int site = 0;
    i64 unit = 1;
};

using Gate = std::variant<PauliExpGate, CxGate, HadamardGate, PermGate, ScalarGate>;

std::vector<int> gate_support(const Gate& g);

/// Conjugation P -> U P U^dag (forward) or U^dag P U (inverse).  Phases are
/// exact for q = 2; for q > 2 only the symplectic layer is tracked and
/// PauliExp gates are rejected.
PauliOp conjugate(const Gate& g, const PauliOp& p, bool inverse = false);

/**
 * Layered Clifford circuit.  Gates within a round must have pairwise
 * disjoint supports; the range of the circuit is its depth times the
 * maximum gate diameter under the complex metric.
 */
class CliffordCircuit {
public:
    CliffordCircuit(i64 q, int n) : q_(q), n_(n) {}

    i64 modulus() const { return q_; }
    int sites() const { return n_; }
    int depth() const { return (int)rounds_.size(); }
    const std::vector<std::vector<Gate>>& rounds() const { return rounds_; }

    /// Appends a round after checking support disjointness.
    void push_round(std::vector<Gate> gates);

    PauliOp conjugate_through(PauliOp p, bool inverse = false) const;

    /// Max gate diameter: largest cell_distance between two degree-1 cells
    /// in one gate's support (0 for single-cell gates).
    int max_gate_diameter(const ChainComplex& metric_complex) const;
    /// depth * max gate diameter.
    int range(const ChainComplex& metric_complex) const;

    nlohmann::json to_json() const;

private:
    i64 q_;
    int n_;
    std::vector<std::vector<Gate>> rounds_;
};

/**
 * Stabilizer group on n qubits (q = 2): independent, pairwise commuting
 * Hermitian Pauli words with signs +-1.
 */
class StabilizerGroup {
public:
    StabilizerGroup(int n, std::vector<PauliOp> generators);

    int sites() const { return n_; }
    const std::vector<PauliOp>& generators() const { return gens_; }

    /// Signed membership: is s*P in the group for s = +1 or -1?
    bool contains(const PauliOp& p) const;

    /// +s if s*P is in the group, 0 if P anticommutes with a generator or
    /// is independent of the group.
    int expectation(const PauliOp& p) const;

    /// Basis of the subgroup supported entirely inside `region`, as
    /// explicit signed Pauli words.
    std::vector<PauliOp> local_subgroup(const std::vector<int>& region) const;

private:
    int n_;
    std::vector<PauliOp> gens_;
};

/// True iff the two states look identical on the region: their region-local
/// signed subgroups coincide (a complete invariant of stabilizer reduced
/// density matrices).
bool reduced_state_equal(const StabilizerGroup& g1, const StabilizerGroup& g2,
                         const std::vector<int>& region);

struct DisentangleResult {
    CliffordCircuit circuit;        // U with U H(S0) U^dag diagonal
    std::vector<PauliOp> final_terms;  // conjugated positive terms, all Z-type
    int rounds_used = 0;
    int colors_used = 0;
    std::vector<int> coloring;      // distance-2 coloring of the 0-cells
};

/**
 * The seeded sweep that diagonalizes the toric Hamiltonian with the vertex
 * terms on S0 removed: rounds cycle through a distance-2 coloring of the
 * 0-cells, each round conjugating by exp((pi/4) Z_e A_s') for frontier
 * edges e whose far endpoint s' is still outside the grown set.
 */
DisentangleResult disentangle_circuit(const ChainComplex& c,
                                      const std::set<int>& s0);

/// Stabilizer group of U^dag |0..0>, the exact ground state of the toric
/// Hamiltonian with vertex terms on S0 removed.
StabilizerGroup ground_stabilizers(const ChainComplex& c, const std::set<int>& s0);

/// Raised by canonical_form and thermal_energy_exact when check rows are
/// linearly dependent; carries one dependency as evidence.
struct RedundancyError : std::runtime_error {
    RedundancyError(const std::string& what, char side_, std::vector<i64> witness_)
        : std::runtime_error(what), side(side_), witness(std::move(witness_)) {}
    char side;                 // 'X' or 'Z'
    std::vector<i64> witness;  // row combination multiplying to the identity
};

struct CanonicalFormResult {
    std::vector<Gate> column_ops;
    std::vector<PauliOp> a_rows;  // X singletons on qudits 0..D_{q-1}-1
    std::vector<PauliOp> b_rows;  // X singletons on the next D_{q+1} qudits
};

/// Symplectic column reduction of a redundancy-free code to singleton form
/// (x-basis CNOT column adds, Hadamard swaps, and for q > 2 scalar column
/// scalings).  Refuses with a kernel witness when redundancy is present.
CanonicalFormResult canonical_form(const CssCode& code);

}  // namespace qchain
