#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qchain/graph.hpp"
#include "qchain/sparse_mat.hpp"

namespace qchain {

/// One factor's contribution to a product-cell label: a vertex (kind 0) or
/// an edge (kind 1) of that factor, by index.  The degree of a cell is the
/// sum of the kinds in its label tuple.
struct FactorCell {
    int kind;  // 0 = vertex, 1 = edge
    int id;
    auto operator<=>(const FactorCell&) const = default;
};

using CellLabel = std::vector<FactorCell>;

std::string label_to_string(const CellLabel& label);
CellLabel label_from_string(const std::string& text);

/**
 * Chain complex over Z_q with sparse boundary maps.
 *
 * Spaces C_0..C_L have dims D_0..D_L; boundary(i) maps C_i -> C_{i-1} for
 * i = 1..L.  Every constructor verifies boundary(i-1)*boundary(i) = 0 mod q
 * and that cell labels are unique per degree.  Complexes built from graph
 * products keep references to their factor graphs so that the product
 * metric (cell_distance) is available.
 */
class ChainComplex {
public:
    ChainComplex(i64 q, std::vector<int> dims, std::vector<SparseMat> boundaries,
                 std::vector<std::vector<CellLabel>> labels,
                 std::vector<Graph> factors = {});

    i64 modulus() const { return q_; }
    int max_degree() const { return (int)dims_.size() - 1; }
    int dim(int degree) const;
    const std::vector<int>& dims() const { return dims_; }

    /// The boundary map C_i -> C_{i-1}; valid for 1 <= i <= max_degree().
    const SparseMat& boundary(int i) const;

    const std::vector<CellLabel>& labels(int degree) const;
    /// Index of a labeled cell within its degree, or -1.
    int cell_index(int degree, const CellLabel& label) const;

    bool has_factors() const { return !factors_.empty(); }
    const std::vector<Graph>& factors() const { return factors_; }

    nlohmann::json to_json() const;
    static ChainComplex from_json(const nlohmann::json& j);

private:
    void validate() const;

    i64 q_;
    std::vector<int> dims_;
    std::vector<SparseMat> boundaries_;  // boundaries_[i-1] = boundary(i)
    std::vector<std::vector<CellLabel>> labels_;
    std::vector<Graph> factors_;
};

/// L=1 complex of a graph: D_0 = N, D_1 = |E|, boundary = unsigned
/// incidence matrix mod q.
ChainComplex graph_complex(const Graph& g, i64 q);

/// Oriented variant: boundary of the edge (u, v) with u < v is u - v mod q.
/// Identical to graph_complex for q = 2; this is the explicit caller choice
/// that recovers cellular homology over odd moduli.
ChainComplex graph_complex_signed(const Graph& g, i64 q);

/// L=1 complex of a hypergraph given as a marked bipartite graph: degree-1
/// cells are the left (hyperedge) vertices, degree-0 cells the right ones,
/// boundary = biadjacency matrix mod q.
ChainComplex hypergraph_complex(const Graph& bipartite, i64 q);

/// The one-point complex (D = [1]); unit of the tensor product.
ChainComplex point_complex(i64 q);

/// Total complex of the bicomplex of two chain complexes: degree-j space is
/// the direct sum over i of C_i (x) C'_{j-i}, and the boundary acts as
/// d(x)id + (-1)^i id(x)d' on the (i, j-i) summand.  Labels concatenate.
ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b);

/// k-fold tensor power (left fold); k >= 1.
ChainComplex power(const ChainComplex& c, int k);

/// Betti numbers over F_p: b_i = D_i - rank(boundary_i) - rank(boundary_{i+1}).
std::vector<int> betti(const ChainComplex& c, i64 p);

/// Rational Betti numbers of the integer lift (per ringlin's rational_rank).
std::vector<int> betti_rational(const ChainComplex& c);

/// Closed deletion: removing a cell removes every higher cell incident to
/// it, transitively.  Unknown labels are rejected.
ChainComplex delete_cells(const ChainComplex& c, const std::set<CellLabel>& cells);

struct DeletionBoundReport {
    int b2_before = 0;
    int b2_after = 0;
    std::vector<int> b2_steps;  // b2 after each single deletion
    bool holds = false;         // every step changed b2 by 0 or -1
};

/// Deletes the listed 2-cells one at a time (bare cells, no closure) and
/// checks that b2 drops by 0 or 1 at each step.  Cells with higher cells
/// attached are rejected.
DeletionBoundReport deletion_b2_bound_check(const ChainComplex& c,
                                            const std::vector<CellLabel>& two_cells);

/// Product path metric between two cells of a graph-power complex: max over
/// factors of the footprint distance (vertex = itself, edge = endpoint
/// pair, set distance = min over pairs), with distinct edges sharing a
/// vertex at distance 1.
int cell_distance(const ChainComplex& c, const CellLabel& a, const CellLabel& b);

}  // namespace qchain
