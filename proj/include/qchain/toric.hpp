#pragma once

#include <optional>
#include <vector>

#include "qchain/bitvec.hpp"
#include "qchain/chain_complex.hpp"
#include "qchain/pauli.hpp"

namespace qchain {

/// A_s: X on every 1-cell attached to the 0-cell s (row s of boundary(1)).
PauliOp vertex_operator(const ChainComplex& c, int s);

/// B_p: Z on every 1-cell in the boundary of the 2-cell p.
PauliOp plaquette_operator(const ChainComplex& c, int p);

/**
 * String operators around a plaquette p = a x b of a graph-square complex.
 *
 * R is the closed ball of radius floor(g/2) around i in the second factor
 * with edge b removed; T the analogous ball around j avoiding a.  D acts
 * with X on the (a, k) cells, k in R; C on (k, b) for k in T plus the
 * sideways boundary families.  C*D equals the product of A_s over T x R.
 */
struct DefectOps {
    PauliOp d_op, c_op;
    int p_index = 0;
    CellLabel cell_a_i, cell_j_b;  // the recorded 1-cell choices
    int edge_a = 0, edge_b = 0;    // factor edges of p
    int vertex_i = 0, vertex_j = 0;
    int radius = 0;                  // floor(girth/2)
    std::vector<int> r_set, t_set;   // ball vertex sets (centers included)
    std::vector<int> dr_edges, dt_edges;  // edge boundaries of the balls
    std::vector<int> a_product_vertices;  // 0-cells S with C*D = prod A_s
};

DefectOps defect_ops(const ChainComplex& cxc, int p_index);

/// Wilson loop: Z on the support of a 1-cycle (rejects non-cycles).
PauliOp wilson_loop(const ChainComplex& c, const std::vector<i64>& cycle);

/// Fundamental cycles of a spanning forest: a deterministic basis of the
/// cycle space, one BitVec over the edges per independent cycle.
std::vector<BitVec> cycle_basis(const Graph& g);

/// The 1-chain supported on v x c: cells (v, e) for e in the cycle c of the
/// second factor of a graph-square complex.
std::vector<i64> vertical_cycle_chain(const ChainComplex& cxc, int v,
                                      const BitVec& cycle_edges);

/// Wilson vector s(v): for each basis cycle c, the sign (-1)^<x, v x c>.
std::vector<int> wilson_vector(const ChainComplex& cxc, const BitVec& x_chain,
                               int v, const std::vector<BitVec>& basis);

/// Minimum Hamming distance between edge vectors w, w' whose Wilson vectors
/// are s and s': the minimum weight in the coset (w0 + w0') + cutspace(G),
/// by exact enumeration (guarded at |E| <= 24).
int wilson_distance(const std::vector<int>& s, const std::vector<int>& s_prime,
                    const Graph& g);

enum class RatioMode { Exact, Anneal };

struct RatioReport {
    int coboundary_weight = 0;  // |supp(delta x)|
    int min_residual_weight = 0;  // min |supp(x + y)| over cocycles y
    bool infinite = false;        // x is itself a cocycle
    double ratio = 0.0;           // coboundary_weight / min_residual_weight
    BitVec witness_y;
    bool exact = true;
};

/// Measures the "efficient delta inverse" quantity for one 1-chain x: the
/// best cocycle y minimizing |supp(x+y)|, exactly (cocycle space dim <= 24)
/// or by seeded annealing.  Report-only; no threshold is applied.
RatioReport coboundary_inverse_ratio(const ChainComplex& c, const BitVec& x_chain,
                                     RatioMode mode, std::uint64_t seed = 0);

}  // namespace qchain
