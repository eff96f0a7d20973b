#include "qchain/toric.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "qchain/ringlin.hpp"
#include "qchain/rng.hpp"

namespace qchain {

PauliOp vertex_operator(const ChainComplex& c, int s) {
    if (c.max_degree() < 1)
        throw std::invalid_argument("vertex_operator: complex has no 1-cells");
    if (s < 0 || s >= c.dim(0))
        throw std::out_of_range("vertex_operator: no such 0-cell");
    std::vector<i64> x(c.dim(1), 0);
    for (const auto& e : c.boundary(1).entries())
        if (e.row == s) x[e.col] = e.val;
    return PauliOp::x_word(c.modulus(), x);
}

PauliOp plaquette_operator(const ChainComplex& c, int p) {
    if (c.max_degree() < 2)
        throw std::invalid_argument("plaquette_operator: complex has no 2-cells");
    if (p < 0 || p >= c.dim(2))
        throw std::out_of_range("plaquette_operator: no such 2-cell");
    std::vector<i64> z(c.dim(1), 0);
    for (const auto& e : c.boundary(2).entries())
        if (e.col == p) z[e.row] = e.val;
    return PauliOp::z_word(c.modulus(), z);
}

namespace {

/// Closed ball of radius `radius` around `center` with one edge removed.
std::vector<int> ball_avoiding(const Graph& g, int center, int skip_edge, int radius) {
    auto dist = g.bfs_distances(center, skip_edge, radius);
    std::vector<int> ball;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (dist[v] >= 0 && dist[v] <= radius) ball.push_back(v);
    return ball;
}

std::vector<int> edge_boundary(const Graph& g, const std::vector<int>& set) {
    std::vector<bool> in(g.vertex_count(), false);
    for (int v : set) in[v] = true;
    std::vector<int> boundary;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        if (in[u] != in[v]) boundary.push_back(e);
    }
    return boundary;
}

}  // namespace

DefectOps defect_ops(const ChainComplex& cxc, int p_index) {
    if (cxc.modulus() != 2)
        throw std::domain_error("defect_ops: q = 2 only");
    if (!cxc.has_factors() || cxc.factors().size() != 2)
        throw std::invalid_argument("defect_ops: complex is not a graph square");
    if (cxc.max_degree() < 2 || p_index < 0 || p_index >= cxc.dim(2))
        throw std::out_of_range("defect_ops: no such 2-cell");
    const Graph& g1 = cxc.factors()[0];
    const Graph& g2 = cxc.factors()[1];

    const CellLabel& plab = cxc.labels(2)[p_index];
    if (plab.size() != 2 || plab[0].kind != 1 || plab[1].kind != 1)
        throw std::invalid_argument("defect_ops: 2-cell is not edge x edge");
    const int a = plab[0].id, b = plab[1].id;

    auto g1_girth = girth(g1), g2_girth = girth(g2);
    if (!g1_girth || !g2_girth)
        throw std::invalid_argument("defect_ops: factor graph is a forest");
    const int m1 = *g1_girth / 2, m2 = *g2_girth / 2;
    if (m1 < 1 || m2 < 1)
        throw std::invalid_argument("defect_ops: girth too small to separate supports");

    // lexicographically least 1-cell choices (a, i) and (j, b)
    const int i = std::min(g2.edge(b).first, g2.edge(b).second);
    const int j = std::min(g1.edge(a).first, g1.edge(a).second);

    DefectOps ops;
    ops.p_index = p_index;
    ops.edge_a = a;
    ops.edge_b = b;
    ops.vertex_i = i;
    ops.vertex_j = j;
    ops.radius = std::min(m1, m2);
    ops.cell_a_i = {{1, a}, {0, i}};
    ops.cell_j_b = {{0, j}, {1, b}};

    ops.r_set = ball_avoiding(g2, i, b, m2);
    ops.t_set = ball_avoiding(g1, j, a, m1);
    ops.dr_edges = edge_boundary(g2, ops.r_set);
    ops.dt_edges = edge_boundary(g1, ops.t_set);

    const int ne = cxc.dim(1);
    auto cell = [&](const CellLabel& lab) {
        int idx = cxc.cell_index(1, lab);
        if (idx < 0)
            throw std::logic_error("defect_ops: missing 1-cell " + label_to_string(lab));
        return idx;
    };

    std::vector<i64> dx(ne, 0);
    for (int k : ops.r_set) dx[cell({{1, a}, {0, k}})] ^= 1;
    ops.d_op = PauliOp::x_word(2, dx);

    std::vector<i64> cx(ne, 0);
    for (int k : ops.t_set) cx[cell({{0, k}, {1, b}})] ^= 1;
    for (int c : ops.dt_edges)
        if (c != a)
            for (int k : ops.r_set) cx[cell({{1, c}, {0, k}})] ^= 1;
    for (int c : ops.dr_edges)
        if (c != b)
            for (int k : ops.t_set) cx[cell({{0, k}, {1, c}})] ^= 1;
    ops.c_op = PauliOp::x_word(2, cx);

    for (int u : ops.t_set)
        for (int v : ops.r_set) {
            CellLabel zero_cell = {{0, u}, {0, v}};
            int idx = cxc.cell_index(0, zero_cell);
            if (idx < 0)
                throw std::logic_error("defect_ops: missing 0-cell");
            ops.a_product_vertices.push_back(idx);
        }
    std::sort(ops.a_product_vertices.begin(), ops.a_product_vertices.end());
    return ops;
}

PauliOp wilson_loop(const ChainComplex& c, const std::vector<i64>& cycle) {
    if ((int)cycle.size() != c.dim(1))
        throw std::invalid_argument("wilson_loop: chain length != number of 1-cells");
    for (i64 v : c.boundary(1).apply(cycle))
        if (v != 0)
            throw std::invalid_argument("wilson_loop: chain is not a cycle");
    return PauliOp::z_word(c.modulus(), cycle);
}

std::vector<BitVec> cycle_basis(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> parent_edge(n, -1), parent(n, -1), depth(n, 0);
    std::vector<bool> seen(n, false), tree_edge(g.edge_count(), false);
    for (int root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            const auto& nbrs = g.neighbors(v);
            const auto& incs = g.incident_edges(v);
            for (std::size_t k = 0; k < nbrs.size(); ++k)
                if (!seen[nbrs[k]]) {
                    seen[nbrs[k]] = true;
                    parent[nbrs[k]] = v;
                    parent_edge[nbrs[k]] = incs[k];
                    depth[nbrs[k]] = depth[v] + 1;
                    tree_edge[incs[k]] = true;
                    queue.push_back(nbrs[k]);
                }
        }
    }
    std::vector<BitVec> basis;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (tree_edge[e]) continue;
        BitVec cyc(g.edge_count());
        cyc.set(e, true);
        auto [u, v] = g.edge(e);
        while (u != v) {
            if (depth[u] < depth[v]) std::swap(u, v);
            cyc.flip(parent_edge[u]);
            u = parent[u];
        }
        basis.push_back(std::move(cyc));
    }
    return basis;
}

std::vector<i64> vertical_cycle_chain(const ChainComplex& cxc, int v,
                                      const BitVec& cycle_edges) {
    if (!cxc.has_factors() || cxc.factors().size() != 2)
        throw std::invalid_argument("vertical_cycle_chain: complex is not a graph square");
    std::vector<i64> chain(cxc.dim(1), 0);
    for (int e = 0; e < cycle_edges.size(); ++e)
        if (cycle_edges.get(e)) {
            int idx = cxc.cell_index(1, {{0, v}, {1, e}});
            if (idx < 0) throw std::logic_error("vertical_cycle_chain: missing 1-cell");
            chain[idx] = 1;
        }
    return chain;
}

std::vector<int> wilson_vector(const ChainComplex& cxc, const BitVec& x_chain,
                               int v, const std::vector<BitVec>& basis) {
    if (x_chain.size() != cxc.dim(1))
        throw std::invalid_argument("wilson_vector: chain length != number of 1-cells");
    std::vector<int> s;
    for (const BitVec& cyc : basis) {
        auto chain = vertical_cycle_chain(cxc, v, cyc);
        int parity = 0;
        for (int idx = 0; idx < (int)chain.size(); ++idx)
            if (chain[idx] && x_chain.get(idx)) parity ^= 1;
        s.push_back(parity ? -1 : +1);
    }
    return s;
}

int wilson_distance(const std::vector<int>& s, const std::vector<int>& s_prime,
                    const Graph& g) {
    if (g.edge_count() > 24)
        throw std::invalid_argument("wilson_distance: |E| > 24, enumeration guard");
    auto basis = cycle_basis(g);
    if (s.size() != basis.size() || s_prime.size() != basis.size())
        throw std::invalid_argument("wilson_distance: vectors must have b1(G) entries");

    // pairing matrix: rows = basis cycles, cols = edges
    std::vector<SparseMat::Entry> ents;
    for (int r = 0; r < (int)basis.size(); ++r)
        for (int e = 0; e < g.edge_count(); ++e)
            if (basis[r].get(e)) ents.push_back({r, e, 1});
    SparseMat pairing((int)basis.size(), g.edge_count(), 2, std::move(ents));

    auto rep = [&](const std::vector<int>& sv) {
        std::vector<i64> target;
        for (int val : sv) target.push_back(val == -1 ? 1 : 0);
        auto w = solve_mod_p(pairing, target, 2);
        if (!w) throw std::logic_error("wilson_distance: no representative");
        return *w;
    };
    std::vector<i64> w0 = rep(s), w1 = rep(s_prime);
    BitVec base(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if ((w0[e] ^ w1[e]) & 1) base.set(e, true);

    // cut space = XOR spans of vertex incidence masks over V \ {component roots}
    std::vector<BitVec> inc(g.vertex_count(), BitVec(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) {
        inc[g.edge(e).first].flip(e);
        inc[g.edge(e).second].flip(e);
    }
    std::vector<int> gens;
    {
        std::vector<bool> root(g.vertex_count(), false);
        auto dist = g.bfs_distances(0);
        root[0] = true;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (dist[v] < 0) {
                // new component root (first unreached vertex wins)
                auto d2 = g.bfs_distances(v);
                bool fresh = true;
                for (int u = 0; u < v; ++u)
                    if (d2[u] >= 0) fresh = false;
                if (fresh) root[v] = true;
            }
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!root[v]) gens.push_back(v);
    }
    int best = base.popcount();
    BitVec cur = base;
    const std::uint64_t total = 1ull << gens.size();
    for (std::uint64_t t = 1; t < total; ++t) {
        cur ^= inc[gens[std::countr_zero(t)]];
        best = std::min(best, cur.popcount());
    }
    return best;
}

RatioReport coboundary_inverse_ratio(const ChainComplex& c, const BitVec& x_chain,
                                     RatioMode mode, std::uint64_t seed) {
    if (c.modulus() != 2)
        throw std::domain_error("coboundary_inverse_ratio: q = 2 only");
    if (c.max_degree() < 2)
        throw std::invalid_argument("coboundary_inverse_ratio: need 2-cells");
    if (x_chain.size() != c.dim(1))
        throw std::invalid_argument("coboundary_inverse_ratio: bad chain length");

    // coboundary delta = boundary(2)^T acting on 1-chains
    SparseMat delta = c.boundary(2).transpose();
    std::vector<i64> xv(c.dim(1), 0);
    for (int e = 0; e < c.dim(1); ++e) xv[e] = x_chain.get(e);
    int dweight = 0;
    for (i64 v : delta.apply(xv))
        if (v % 2) ++dweight;

    auto kernel = kernel_basis_mod_p(delta.reduced(2), 2);
    std::vector<BitVec> basis;
    for (const auto& k : kernel) {
        BitVec b(c.dim(1));
        for (int e = 0; e < c.dim(1); ++e)
            if (k[e] % 2) b.set(e, true);
        basis.push_back(std::move(b));
    }

    RatioReport rep;
    rep.coboundary_weight = dweight;
    rep.witness_y = BitVec(c.dim(1));

    if (mode == RatioMode::Exact) {
        if (basis.size() > 24)
            throw std::invalid_argument(
                "coboundary_inverse_ratio: cocycle space dim > 24, use anneal mode");
        BitVec cur = x_chain;  // x + y for y = 0
        BitVec cur_y(c.dim(1));
        int best = cur.popcount();
        BitVec best_y = cur_y;
        const std::uint64_t total = 1ull << basis.size();
        for (std::uint64_t t = 1; t < total; ++t) {
            int flip = std::countr_zero(t);
            cur ^= basis[flip];
            cur_y ^= basis[flip];
            int w = cur.popcount();
            if (w < best) {
                best = w;
                best_y = cur_y;
            }
        }
        rep.min_residual_weight = best;
        rep.witness_y = best_y;
        rep.exact = true;
    } else {
        Rng rng(seed);
        BitVec y(c.dim(1));
        auto weight_of = [&](const BitVec& yy) {
            BitVec diff = x_chain;
            diff ^= yy;
            return diff.popcount();
        };
        int best = weight_of(y);
        BitVec best_y = y;
        const int restarts = 8, sweeps = 200;
        for (int r = 0; r < restarts; ++r) {
            BitVec cand(c.dim(1));
            if (r > 0)
                for (const BitVec& b : basis)
                    if (rng.next() & 1) cand ^= b;
            int cw = weight_of(cand);
            for (int sweep = 0; sweep < sweeps; ++sweep) {
                bool improved = false;
                for (const BitVec& b : basis) {
                    BitVec trial = cand;
                    trial ^= b;
                    int tw = weight_of(trial);
                    if (tw < cw) {
                        cand = std::move(trial);
                        cw = tw;
                        improved = true;
                    }
                }
                if (!improved) break;
            }
            if (cw < best) {
                best = cw;
                best_y = cand;
            }
        }
        rep.min_residual_weight = best;
        rep.witness_y = best_y;
        rep.exact = false;
    }

    if (rep.min_residual_weight == 0) {
        rep.infinite = true;
        rep.ratio = 0.0;
    } else {
        rep.ratio = (double)rep.coboundary_weight / (double)rep.min_residual_weight;
    }
    return rep;
}

}  // namespace qchain
