#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qchain/sparse_mat.hpp"

namespace qchain {

/**
 * Simple undirected graph: vertices 0..n-1, edges as sorted (u < v) pairs
 * in lexicographic order.  No loops, no multi-edges.  An optional
 * bipartition marks vertices 0..left-1 as the left part; every edge must
 * then cross the parts.
 */
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edges,
          std::optional<int> left_size = std::nullopt);

    int vertex_count() const { return n_; }
    int edge_count() const { return (int)edges_.size(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::pair<int, int>& edge(int idx) const { return edges_[idx]; }
    std::optional<int> left_size() const { return left_; }
    bool is_bipartite_marked() const { return left_.has_value(); }

    /// Edge index of {u, v}, or -1.
    int edge_index(int u, int v) const;

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    const std::vector<int>& incident_edges(int v) const { return inc_[v]; }
    int degree(int v) const { return (int)adj_[v].size(); }
    bool is_regular(int* deg_out = nullptr) const;
    bool is_connected() const;

    /// BFS distances from src; -1 marks unreachable vertices.  An edge index
    /// may be excluded from traversal, and the search cut off at max_depth.
    std::vector<int> bfs_distances(int src, int skip_edge = -1,
                                   int max_depth = -1) const;

    /// Unsigned vertex-edge incidence matrix mod q (rows = vertices).
    SparseMat incidence(i64 q) const;

    /// Biadjacency matrix mod q for a marked bipartite graph: rows = right
    /// vertices, columns = left vertices.
    SparseMat biadjacency(i64 q) const;

    /// Text format: first line "N", then one "u v" line per edge, 0-indexed.
    void write_edge_list(std::ostream& os) const;
    static Graph read_edge_list(std::istream& is);

    /// alist parity-check interchange (bipartite graphs only): left vertices
    /// are columns, right vertices are rows.
    void write_alist(std::ostream& os) const;
    static Graph read_alist(std::istream& is);

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::optional<int> left_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> inc_;
};

/// Standard small graphs by name: k4, petersen, heawood, cycle(n),
/// complete_bipartite(a,b), grid_torus(L).  Vertex numbering is documented
/// in the README and fixed forever.
Graph named_graph(const std::string& name);

/// Simple connected d-regular graph with girth >= min_girth via the pairing
/// model with rejection; deterministic in seed.  Throws after the retry
/// budget is exhausted.
Graph random_regular(int n, int d, int min_girth, std::uint64_t seed,
                     int max_retries = 10000);

/// Simple biregular bipartite graph: n_left vertices of degree d_left,
/// n_right of degree d_right (n_left*d_left == n_right*d_right).
Graph random_biregular(int n_left, int n_right, int d_left, int d_right,
                       std::uint64_t seed, int max_retries = 10000);

/// Length of the shortest cycle; nullopt for forests.
std::optional<int> girth(const Graph& g);

struct ExpansionResult {
    i64 cut = 0;             // edges leaving the witness set
    i64 size = 0;            // |S| of the witness set
    std::vector<int> witness;  // the minimizing S (exact mode only)
    double value() const { return size == 0 ? 0.0 : (double)cut / (double)size; }
};

/// Exact expansion coefficient: min over nonempty S, |S| <= N/2, of
/// cut(S, S~)/|S|.  Requires N <= 22.  The minimum is reported as an exact
/// fraction cut/size with a lexicographically least witness.
ExpansionResult edge_expansion_exact(const Graph& g);

/// Certified lower bound lambda_2/2 for a connected d-regular graph, where
/// lambda_2 is the spectral gap of the graph Laplacian.  The eigenvalue
/// residual is subtracted so the bound stays valid under floating error.
double edge_expansion_spectral_bound(const Graph& g);

}  // namespace qchain
