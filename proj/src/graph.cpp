#include "qchain/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "qchain/parallel.hpp"
#include "qchain/rng.hpp"

namespace qchain {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges,
             std::optional<int> left_size)
    : n_(n), left_(left_size) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("Graph: self-loop");
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) throw std::invalid_argument("Graph: vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("Graph: duplicate edge");
    if (left_) {
        if (*left_ < 0 || *left_ > n)
            throw std::invalid_argument("Graph: bad bipartition size");
        for (auto [u, v] : edges)
            if ((u < *left_) == (v < *left_))
                throw std::invalid_argument("Graph: edge does not cross bipartition");
    }
    edges_ = std::move(edges);
    adj_.resize(n_);
    inc_.resize(n_);
    for (int idx = 0; idx < (int)edges_.size(); ++idx) {
        auto [u, v] = edges_[idx];
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        inc_[u].push_back(idx);
        inc_[v].push_back(idx);
    }
}

int Graph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(u, v));
    if (it == edges_.end() || *it != std::pair(u, v)) return -1;
    return (int)(it - edges_.begin());
}

bool Graph::is_regular(int* deg_out) const {
    if (n_ == 0) return true;
    int d = degree(0);
    for (int v = 1; v < n_; ++v)
        if (degree(v) != d) return false;
    if (deg_out) *deg_out = d;
    return true;
}

bool Graph::is_connected() const {
    if (n_ == 0) return true;
    auto dist = bfs_distances(0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::vector<int> Graph::bfs_distances(int src, int skip_edge, int max_depth) const {
    std::vector<int> dist(n_, -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (max_depth >= 0 && dist[v] >= max_depth) continue;
        for (std::size_t k = 0; k < adj_[v].size(); ++k) {
            if (inc_[v][k] == skip_edge) continue;
            int w = adj_[v][k];
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

SparseMat Graph::incidence(i64 q) const {
    std::vector<SparseMat::Entry> ents;
    for (int idx = 0; idx < (int)edges_.size(); ++idx) {
        ents.push_back({edges_[idx].first, idx, 1});
        ents.push_back({edges_[idx].second, idx, 1});
    }
    return SparseMat(n_, (int)edges_.size(), q, std::move(ents));
}

SparseMat Graph::biadjacency(i64 q) const {
    if (!left_) throw std::invalid_argument("biadjacency: graph is not marked bipartite");
    int nl = *left_, nr = n_ - nl;
    std::vector<SparseMat::Entry> ents;
    for (auto [u, v] : edges_) ents.push_back({v - nl, u, 1});
    return SparseMat(nr, nl, q, std::move(ents));
}

void Graph::write_edge_list(std::ostream& os) const {
    os << n_ << '\n';
    for (auto [u, v] : edges_) os << u << ' ' << v << '\n';
}

Graph Graph::read_edge_list(std::istream& is) {
    int n;
    if (!(is >> n)) throw std::runtime_error("read_edge_list: missing vertex count");
    std::vector<std::pair<int, int>> edges;
    int u, v;
    while (is >> u >> v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

void Graph::write_alist(std::ostream& os) const {
    if (!left_) throw std::invalid_argument("write_alist: graph is not marked bipartite");
    int nl = *left_, nr = n_ - nl;
    std::vector<std::vector<int>> col(nl), row(nr);
    for (auto [u, v] : edges_) {
        col[u].push_back(v - nl + 1);  // alist is 1-indexed
        row[v - nl].push_back(u + 1);
    }
    int maxc = 0, maxr = 0;
    for (auto& c : col) maxc = std::max(maxc, (int)c.size());
    for (auto& r : row) maxr = std::max(maxr, (int)r.size());
    os << nl << ' ' << nr << '\n' << maxc << ' ' << maxr << '\n';
    for (int j = 0; j < nl; ++j) os << col[j].size() << (j + 1 < nl ? ' ' : '\n');
    for (int i = 0; i < nr; ++i) os << row[i].size() << (i + 1 < nr ? ' ' : '\n');
    for (auto& c : col) {
        for (std::size_t k = 0; k < c.size(); ++k) os << c[k] << (k + 1 < c.size() ? ' ' : '\n');
        if (c.empty()) os << '\n';
    }
    for (auto& r : row) {
        for (std::size_t k = 0; k < r.size(); ++k) os << r[k] << (k + 1 < r.size() ? ' ' : '\n');
        if (r.empty()) os << '\n';
    }
}

Graph Graph::read_alist(std::istream& is) {
    int nl, nr, maxc, maxr;
    if (!(is >> nl >> nr >> maxc >> maxr))
        throw std::runtime_error("read_alist: bad header");
    std::vector<int> cdeg(nl), rdeg(nr);
    for (int& d : cdeg) is >> d;
    for (int& d : rdeg) is >> d;
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < nl; ++j)
        for (int k = 0; k < cdeg[j]; ++k) {
            int r;
            is >> r;
            while (r == 0) is >> r;  // zero padding used by some writers
            edges.emplace_back(j, nl + r - 1);
        }
    if (!is) throw std::runtime_error("read_alist: truncated column lists");
    return Graph(nl + nr, std::move(edges), nl);
}

namespace {

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle(n): need n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
}

Graph petersen_graph() {
    // outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph(10, std::move(e));
}

Graph heawood_graph() {
    // 14-cycle plus chords i -- i+5 for even i
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 14; ++i) e.emplace_back(i, (i + 1) % 14);
    for (int i = 0; i < 14; i += 2) e.emplace_back(i, (i + 5) % 14);
    return Graph(14, std::move(e));
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, std::move(e));
}

Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) e.emplace_back(u, a + v);
    return Graph(a + b, std::move(e), a);
}

Graph grid_torus(int L) {
    if (L < 3) throw std::invalid_argument("grid_torus(L): need L >= 3 to stay simple");
    std::vector<std::pair<int, int>> e;
    auto id = [L](int r, int c) { return ((r % L + L) % L) * L + (c % L + L) % L; };
    for (int r = 0; r < L; ++r)
        for (int c = 0; c < L; ++c) {
            e.emplace_back(id(r, c), id(r, c + 1));
            e.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(L * L, std::move(e));
}

}  // namespace

Graph named_graph(const std::string& name) {
    if (name == "k4") return complete_graph(4);
    if (name == "petersen") return petersen_graph();
    if (name == "heawood") return heawood_graph();
    auto parse_args = [&](const std::string& head) -> std::optional<std::vector<int>> {
        if (name.rfind(head + "(", 0) != 0 || name.back() != ')') return std::nullopt;
        std::string inner = name.substr(head.size() + 1, name.size() - head.size() - 2);
        std::vector<int> args;
        std::stringstream ss(inner);
        std::string tok;
        while (std::getline(ss, tok, ',')) args.push_back(std::stoi(tok));
        return args;
    };
    if (auto a = parse_args("cycle"); a && a->size() == 1) return cycle_graph((*a)[0]);
    if (auto a = parse_args("complete_bipartite"); a && a->size() == 2)
        return complete_bipartite((*a)[0], (*a)[1]);
    if (auto a = parse_args("grid_torus"); a && a->size() == 1) return grid_torus((*a)[0]);
    throw std::invalid_argument("named_graph: unknown name '" + name + "'");
}

std::optional<int> girth(const Graph& g) {
    int best = std::numeric_limits<int>::max();
    const int n = g.vertex_count();
    for (int root = 0; root < n; ++root) {
        std::vector<int> dist(n, -1), via_edge(n, -1);
        std::deque<int> queue{root};
        dist[root] = 0;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            if (2 * dist[v] + 1 >= best) break;
            const auto& nbrs = g.neighbors(v);
            const auto& incs = g.incident_edges(v);
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                int w = nbrs[k], e = incs[k];
                if (e == via_edge[v]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    via_edge[w] = e;
                    queue.push_back(w);
                } else {
                    best = std::min(best, dist[v] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

Graph random_regular(int n, int d, int min_girth, std::uint64_t seed, int max_retries) {
    if (d < 3) throw std::invalid_argument("random_regular: need d >= 3");
    if ((long long)n * d % 2 != 0)
        throw std::invalid_argument("random_regular: n*d must be even (n=" +
                                    std::to_string(n) + ", d=" + std::to_string(d) + ")");
    Rng rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve((std::size_t)n * d);
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < d; ++k) stubs.push_back(v);
        rng.shuffle(stubs);
        std::set<std::pair<int, int>> seen;
        std::vector<std::pair<int, int>> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) { ok = false; break; }
            if (u > v) std::swap(u, v);
            if (!seen.insert({u, v}).second) { ok = false; break; }
            edges.emplace_back(u, v);
        }
        if (!ok) continue;
        Graph g(n, std::move(edges));
        if (!g.is_connected()) continue;
        auto gi = girth(g);
        if (gi && *gi < min_girth) continue;
        return g;
    }
    throw std::runtime_error("random_regular: retry budget exhausted for (n=" +
                             std::to_string(n) + ", d=" + std::to_string(d) +
                             ", min_girth=" + std::to_string(min_girth) + ")");
}

Graph random_biregular(int n_left, int n_right, int d_left, int d_right,
                       std::uint64_t seed, int max_retries) {
    if ((long long)n_left * d_left != (long long)n_right * d_right)
        throw std::invalid_argument(
            "random_biregular: degree sums differ (" + std::to_string(n_left) + "*" +
            std::to_string(d_left) + " != " + std::to_string(n_right) + "*" +
            std::to_string(d_right) + ")");
    Rng rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<int> right_stubs;
        for (int v = 0; v < n_right; ++v)
            for (int k = 0; k < d_right; ++k) right_stubs.push_back(v);
        rng.shuffle(right_stubs);
        std::set<std::pair<int, int>> seen;
        std::vector<std::pair<int, int>> edges;
        bool ok = true;
        std::size_t s = 0;
        for (int u = 0; u < n_left && ok; ++u)
            for (int k = 0; k < d_left; ++k) {
                int v = n_left + right_stubs[s++];
                if (!seen.insert({u, v}).second) { ok = false; break; }
                edges.emplace_back(u, v);
            }
        if (!ok) continue;
        return Graph(n_left + n_right, std::move(edges), n_left);
    }
    throw std::runtime_error("random_biregular: retry budget exhausted for (" +
                             std::to_string(n_left) + "," + std::to_string(n_right) +
                             "," + std::to_string(d_left) + "," + std::to_string(d_right) +
                             ")");
}

ExpansionResult edge_expansion_exact(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 22)
        throw std::invalid_argument("edge_expansion_exact: N > 22, use spectral mode");
    if (n == 0) return {};
    std::vector<std::uint32_t> adj_mask(n, 0);
    for (auto [u, v] : g.edges()) {
        adj_mask[u] |= 1u << v;
        adj_mask[v] |= 1u << u;
    }
    const int half = n / 2;

    struct Best {
        i64 cut = 0, size = 0;
        std::uint32_t mask = 0;
        bool valid = false;
    };
    auto better = [](const Best& a, const Best& b) {
        if (!b.valid) return a;
        if (!a.valid) return b;
        i64 lhs = a.cut * b.size, rhs = b.cut * a.size;
        if (lhs != rhs) return lhs < rhs ? a : b;
        return a.mask <= b.mask ? a : b;
    };
    Best best = block_reduce<Best>(
        1, 1ull << n, Best{},
        [&](std::uint64_t lo, std::uint64_t hi) {
            Best local;
            for (std::uint64_t m = lo; m < hi; ++m) {
                auto mask = (std::uint32_t)m;
                int size = std::popcount(mask);
                if (size == 0 || size > half) continue;
                i64 cut = 0;
                for (std::uint32_t rest = mask; rest;) {
                    int v = std::countr_zero(rest);
                    rest &= rest - 1;
                    cut += std::popcount(adj_mask[v] & ~mask);
                }
                Best cand{cut, size, mask, true};
                local = better(local, cand);
            }
            return local;
        },
        better);

    ExpansionResult res;
    res.cut = best.cut;
    res.size = best.size;
    for (int v = 0; v < n; ++v)
        if (best.mask >> v & 1) res.witness.push_back(v);
    return res;
}

double edge_expansion_spectral_bound(const Graph& g) {
    int d = 0;
    if (!g.is_regular(&d))
        throw std::invalid_argument("edge_expansion_spectral_bound: graph is not regular");
    const int n = g.vertex_count();
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (auto [u, v] : g.edges()) {
        lap(u, v) -= 1;
        lap(v, u) -= 1;
        lap(u, u) += 1;
        lap(v, v) += 1;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    double lambda2 = es.eigenvalues()(1);
    Eigen::VectorXd v2 = es.eigenvectors().col(1);
    double residual = (lap * v2 - lambda2 * v2).norm();
    return std::max(0.0, (lambda2 - residual) / 2.0);
}

}  // namespace qchain
