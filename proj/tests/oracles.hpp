#pragma once

// Independent reference implementations used to derive expected values.
// Everything here is deliberately written the textbook way (dense arrays,
// no pivoting strategy, no shared code with the library paths it checks).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <vector>

#include "qchain/graph.hpp"
#include "qchain/sparse_mat.hpp"

namespace oracle {

using qchain::i64;

using DenseMat = std::vector<std::vector<i64>>;

inline DenseMat densify(const qchain::SparseMat& m) {
    DenseMat d(m.rows(), std::vector<i64>(m.cols(), 0));
    for (const auto& e : m.entries()) d[e.row][e.col] = e.val;
    return d;
}

/// Plain dense Gaussian elimination rank over F_p (first nonzero pivot).
inline int rank_mod_p(DenseMat a, i64 p) {
    auto norm = [p](i64 v) { return ((v % p) + p) % p; };
    for (auto& row : a)
        for (auto& v : row) v = norm(v);
    const int rows = (int)a.size();
    const int cols = rows ? (int)a[0].size() : 0;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        i64 inv = 1;
        for (i64 t = 1; t < p; ++t)
            if (norm(a[rank][col] * t) == 1) { inv = t; break; }
        for (auto& v : a[rank]) v = norm(v * inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            i64 f = a[r][col];
            for (int cc = 0; cc < cols; ++cc) a[r][cc] = norm(a[r][cc] - f * a[rank][cc]);
        }
        ++rank;
    }
    return rank;
}

/// Dense nullspace basis over F_p via reduced row echelon form.
inline std::vector<std::vector<i64>> nullspace_mod_p(DenseMat a, i64 p) {
    auto norm = [p](i64 v) { return ((v % p) + p) % p; };
    for (auto& row : a)
        for (auto& v : row) v = norm(v);
    const int rows = (int)a.size();
    const int cols = rows ? (int)a[0].size() : 0;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        i64 inv = 1;
        for (i64 t = 1; t < p; ++t)
            if (norm(a[rank][col] * t) == 1) { inv = t; break; }
        for (auto& v : a[rank]) v = norm(v * inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            i64 f = a[r][col];
            for (int cc = 0; cc < cols; ++cc) a[r][cc] = norm(a[r][cc] - f * a[rank][cc]);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<std::vector<i64>> basis;
    for (int free = 0; free < cols; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end())
            continue;
        std::vector<i64> x(cols, 0);
        x[free] = 1;
        for (int r = 0; r < rank; ++r) x[pivot_col[r]] = norm(-a[r][free]);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Cofactor-expansion determinant (n <= 8, exact in 64-bit).
inline long long det_cofactor(const DenseMat& a) {
    const int n = (int)a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    long long det = 0;
    for (int j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        DenseMat minor;
        for (int r = 1; r < n; ++r) {
            std::vector<i64> row;
            for (int c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(std::move(row));
        }
        long long term = (long long)a[0][j] * det_cofactor(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

/// Invariant factors via gcds of k x k minors (fully independent of any
/// elimination-based Smith form).  Sizes are kept tiny by the callers.
inline std::vector<long long> snf_via_minors(const DenseMat& a) {
    const int rows = (int)a.size();
    const int cols = rows ? (int)a[0].size() : 0;
    const int kmax = std::min(rows, cols);
    std::vector<long long> dk{1};  // d_0 = 1
    for (int k = 1; k <= kmax; ++k) {
        long long g = 0;
        std::vector<int> rsel(k), csel(k);
        std::iota(rsel.begin(), rsel.end(), 0);
        auto next_comb = [](std::vector<int>& idx, int n) {
            int k2 = (int)idx.size();
            int t = k2 - 1;
            while (t >= 0 && idx[t] == n - k2 + t) --t;
            if (t < 0) return false;
            ++idx[t];
            for (int s = t + 1; s < k2; ++s) idx[s] = idx[s - 1] + 1;
            return true;
        };
        do {
            std::iota(csel.begin(), csel.end(), 0);
            do {
                DenseMat sub(k, std::vector<i64>(k));
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c) sub[r][c] = a[rsel[r]][csel[c]];
                g = std::gcd(g, std::abs(det_cofactor(sub)));
            } while (next_comb(csel, cols));
        } while (next_comb(rsel, rows));
        if (g == 0) break;
        dk.push_back(g);
    }
    std::vector<long long> factors;
    for (std::size_t k = 1; k < dk.size(); ++k) factors.push_back(dk[k] / dk[k - 1]);
    return factors;
}

/// Shortest cycle by edge-removal + BFS between the endpoints.
inline std::optional<int> girth_bfs(const qchain::Graph& g) {
    int best = -1;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        auto dist = g.bfs_distances(u, e);
        if (dist[v] >= 0 && (best < 0 || dist[v] + 1 < best)) best = dist[v] + 1;
    }
    if (best < 0) return std::nullopt;
    return best;
}

/// Direct subset sweep for the expansion coefficient (no bit tricks).
inline std::pair<i64, i64> expansion_subsets(const qchain::Graph& g) {
    const int n = g.vertex_count();
    i64 best_cut = -1, best_size = 1;
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        std::vector<bool> in(n, false);
        int size = 0;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) { in[v] = true; ++size; }
        if (size > n / 2) continue;
        i64 cut = 0;
        for (auto [u, v] : g.edges())
            if (in[u] != in[v]) ++cut;
        if (best_cut < 0 || cut * best_size < best_cut * size) {
            best_cut = cut;
            best_size = size;
        }
    }
    return {best_cut, best_size};
}

}  // namespace oracle
