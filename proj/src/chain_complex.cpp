#include "qchain/chain_complex.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qchain/ringlin.hpp"

namespace qchain {

std::string label_to_string(const CellLabel& label) {
    std::string s = "(";
    for (std::size_t k = 0; k < label.size(); ++k) {
        s += (label[k].kind == 0 ? "v" : "e") + std::to_string(label[k].id);
        if (k + 1 < label.size()) s += ",";
    }
    return s + ")";
}

CellLabel label_from_string(const std::string& text) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw std::invalid_argument("label_from_string: want '(v0,e3,...)'");
    CellLabel label;
    std::stringstream ss(text.substr(1, text.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || (tok[0] != 'v' && tok[0] != 'e'))
            throw std::invalid_argument("label_from_string: bad component '" + tok + "'");
        label.push_back({tok[0] == 'v' ? 0 : 1, std::stoi(tok.substr(1))});
    }
    return label;
}

ChainComplex::ChainComplex(i64 q, std::vector<int> dims,
                           std::vector<SparseMat> boundaries,
                           std::vector<std::vector<CellLabel>> labels,
                           std::vector<Graph> factors)
    : q_(q),
      dims_(std::move(dims)),
      boundaries_(std::move(boundaries)),
      labels_(std::move(labels)),
      factors_(std::move(factors)) {
    validate();
}

void ChainComplex::validate() const {
    if (q_ < 2) throw std::invalid_argument("ChainComplex: modulus must be >= 2");
    if (dims_.empty()) throw std::invalid_argument("ChainComplex: no degrees");
    if (boundaries_.size() + 1 != dims_.size())
        throw std::invalid_argument("ChainComplex: boundary count mismatch");
    if (labels_.size() != dims_.size())
        throw std::invalid_argument("ChainComplex: label count mismatch");
    for (std::size_t i = 0; i < boundaries_.size(); ++i) {
        const SparseMat& b = boundaries_[i];
        if (b.modulus() != q_)
            throw std::invalid_argument("ChainComplex: boundary modulus mismatch");
        if (b.rows() != dims_[i] || b.cols() != dims_[i + 1])
            throw std::invalid_argument("ChainComplex: boundary shape mismatch");
    }
    for (std::size_t d = 0; d < labels_.size(); ++d) {
        if ((int)labels_[d].size() != dims_[d])
            throw std::invalid_argument("ChainComplex: label list length mismatch");
        std::set<CellLabel> uniq(labels_[d].begin(), labels_[d].end());
        if (uniq.size() != labels_[d].size())
            throw std::invalid_argument("ChainComplex: duplicate cell labels");
        for (const CellLabel& lab : labels_[d]) {
            int deg = 0;
            for (const FactorCell& fc : lab) deg += fc.kind;
            if (deg != (int)d)
                throw std::invalid_argument("ChainComplex: label degree mismatch");
        }
    }
    for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i)
        if (!(boundaries_[i] * boundaries_[i + 1]).is_zero())
            throw std::logic_error("ChainComplex: boundary(i)*boundary(i+1) != 0 mod q");
}

int ChainComplex::dim(int degree) const {
    if (degree < 0 || degree > max_degree()) return 0;
    return dims_[degree];
}

const SparseMat& ChainComplex::boundary(int i) const {
    if (i < 1 || i > max_degree())
        throw std::out_of_range("ChainComplex::boundary: degree out of range");
    return boundaries_[i - 1];
}

const std::vector<CellLabel>& ChainComplex::labels(int degree) const {
    if (degree < 0 || degree > max_degree())
        throw std::out_of_range("ChainComplex::labels: degree out of range");
    return labels_[degree];
}

int ChainComplex::cell_index(int degree, const CellLabel& label) const {
    if (degree < 0 || degree > max_degree()) return -1;
    const auto& ls = labels_[degree];
    auto it = std::find(ls.begin(), ls.end(), label);
    return it == ls.end() ? -1 : (int)(it - ls.begin());
}

namespace {

std::vector<std::vector<CellLabel>> graph_labels(const Graph& g) {
    std::vector<std::vector<CellLabel>> labels(2);
    for (int v = 0; v < g.vertex_count(); ++v) labels[0].push_back({{0, v}});
    for (int e = 0; e < g.edge_count(); ++e) labels[1].push_back({{1, e}});
    return labels;
}

}  // namespace

ChainComplex graph_complex(const Graph& g, i64 q) {
    return ChainComplex(q, {g.vertex_count(), g.edge_count()}, {g.incidence(q)},
                        graph_labels(g), {g});
}

ChainComplex graph_complex_signed(const Graph& g, i64 q) {
    std::vector<SparseMat::Entry> ents;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        ents.push_back({u, e, 1});
        ents.push_back({v, e, mod_reduce(-1, q)});
    }
    SparseMat inc(g.vertex_count(), g.edge_count(), q, std::move(ents));
    return ChainComplex(q, {g.vertex_count(), g.edge_count()}, {std::move(inc)},
                        graph_labels(g), {g});
}

ChainComplex hypergraph_complex(const Graph& bipartite, i64 q) {
    if (!bipartite.is_bipartite_marked())
        throw std::invalid_argument("hypergraph_complex: graph has no bipartition");
    int nl = *bipartite.left_size();
    int nr = bipartite.vertex_count() - nl;
    std::vector<std::vector<CellLabel>> labels(2);
    for (int v = 0; v < nr; ++v) labels[0].push_back({{0, v}});
    for (int e = 0; e < nl; ++e) labels[1].push_back({{1, e}});
    return ChainComplex(q, {nr, nl}, {bipartite.biadjacency(q)}, std::move(labels));
}

ChainComplex point_complex(i64 q) {
    return ChainComplex(q, {1}, {}, {{{{0, 0}}}});
}

ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("tensor_product: modulus mismatch");
    const i64 q = a.modulus();
    const int la = a.max_degree(), lb = b.max_degree();
    const int lt = la + lb;

    // block offsets: degree j is the direct sum over i of C_i (x) C'_{j-i}
    auto block_lo = [&](int j) { return std::max(0, j - lb); };
    auto block_hi = [&](int j) { return std::min(j, la); };
    std::vector<std::vector<int>> offset(lt + 1);
    std::vector<int> dims(lt + 1, 0);
    for (int j = 0; j <= lt; ++j) {
        for (int i = block_lo(j); i <= block_hi(j); ++i) {
            offset[j].push_back(dims[j]);
            dims[j] += a.dim(i) * b.dim(j - i);
        }
    }
    auto block_offset = [&](int j, int i) { return offset[j][i - block_lo(j)]; };

    std::vector<std::vector<CellLabel>> labels(lt + 1);
    for (int j = 0; j <= lt; ++j) {
        labels[j].reserve(dims[j]);
        for (int i = block_lo(j); i <= block_hi(j); ++i)
            for (const CellLabel& va : a.labels(i))
                for (const CellLabel& vb : b.labels(j - i)) {
                    CellLabel lab = va;
                    lab.insert(lab.end(), vb.begin(), vb.end());
                    labels[j].push_back(std::move(lab));
                }
    }

    std::vector<SparseMat> boundaries;
    for (int j = 1; j <= lt; ++j) {
        std::vector<SparseMat::Entry> ents;
        for (int i = block_lo(j); i <= block_hi(j); ++i) {
            const int db = b.dim(j - i);
            const int col0 = block_offset(j, i);
            if (i >= 1 && a.dim(i - 1) > 0) {
                // (d_i x) (x) id: target block (i-1, j-i) of degree j-1
                const int row0 = block_offset(j - 1, i - 1);
                for (const auto& e : a.boundary(i).entries())
                    for (int bb = 0; bb < db; ++bb)
                        ents.push_back({row0 + e.row * db + bb, col0 + e.col * db + bb,
                                        e.val});
            }
            if (j - i >= 1 && b.dim(j - i - 1) > 0) {
                // (-1)^i id (x) d'_{j-i}: target block (i, j-i-1) of degree j-1
                const int row0 = block_offset(j - 1, i);
                const int db1 = b.dim(j - i - 1);
                const i64 sign = (i % 2 == 0) ? 1 : mod_reduce(-1, q);
                for (const auto& e : b.boundary(j - i).entries())
                    for (int aa = 0; aa < a.dim(i); ++aa)
                        ents.push_back({row0 + aa * db1 + e.row, col0 + aa * db + e.col,
                                        mod_reduce(sign * e.val, q)});
            }
        }
        boundaries.emplace_back(dims[j - 1], dims[j], q, std::move(ents));
    }

    std::vector<Graph> factors;
    if (a.has_factors() && b.has_factors()) {
        factors = a.factors();
        factors.insert(factors.end(), b.factors().begin(), b.factors().end());
    }
    return ChainComplex(q, std::move(dims), std::move(boundaries), std::move(labels),
                        std::move(factors));
}

ChainComplex power(const ChainComplex& c, int k) {
    if (k < 1) throw std::invalid_argument("power: k must be >= 1");
    ChainComplex acc = c;
    for (int t = 1; t < k; ++t) acc = tensor_product(acc, c);
    return acc;
}

std::vector<int> betti(const ChainComplex& c, i64 p) {
    require_prime(p, "betti");
    const int l = c.max_degree();
    std::vector<int> ranks(l + 2, 0);  // ranks[i] = rank of boundary(i)
    for (int i = 1; i <= l; ++i) ranks[i] = rank_mod_p(c.boundary(i).reduced(p), p);
    std::vector<int> b(l + 1);
    for (int i = 0; i <= l; ++i) b[i] = c.dim(i) - ranks[i] - ranks[i + 1];
    return b;
}

std::vector<int> betti_rational(const ChainComplex& c) {
    const int l = c.max_degree();
    std::vector<int> ranks(l + 2, 0);
    for (int i = 1; i <= l; ++i) ranks[i] = rational_rank(c.boundary(i));
    std::vector<int> b(l + 1);
    for (int i = 0; i <= l; ++i) b[i] = c.dim(i) - ranks[i] - ranks[i + 1];
    return b;
}

ChainComplex delete_cells(const ChainComplex& c, const std::set<CellLabel>& cells) {
    const int l = c.max_degree();
    std::vector<std::vector<bool>> dead(l + 1);
    for (int d = 0; d <= l; ++d) dead[d].assign(c.dim(d), false);

    for (const CellLabel& lab : cells) {
        int deg = 0;
        for (const FactorCell& fc : lab) deg += fc.kind;
        int idx = c.cell_index(deg, lab);
        if (idx < 0)
            throw std::invalid_argument("delete_cells: unknown label " +
                                        label_to_string(lab));
        dead[deg][idx] = true;
    }
    // upward closure: a cell dies if any cell in its boundary died
    for (int d = 0; d < l; ++d)
        for (const auto& e : c.boundary(d + 1).entries())
            if (dead[d][e.row]) dead[d + 1][e.col] = true;

    std::vector<std::vector<int>> keep(l + 1);
    std::vector<std::vector<CellLabel>> labels(l + 1);
    for (int d = 0; d <= l; ++d)
        for (int i = 0; i < c.dim(d); ++i)
            if (!dead[d][i]) {
                keep[d].push_back(i);
                labels[d].push_back(c.labels(d)[i]);
            }
    std::vector<int> dims(l + 1);
    for (int d = 0; d <= l; ++d) dims[d] = (int)keep[d].size();
    std::vector<SparseMat> boundaries;
    for (int i = 1; i <= l; ++i)
        boundaries.push_back(c.boundary(i).restricted(keep[i - 1], keep[i]));
    return ChainComplex(c.modulus(), std::move(dims), std::move(boundaries),
                        std::move(labels), c.factors());
}

DeletionBoundReport deletion_b2_bound_check(const ChainComplex& c,
                                            const std::vector<CellLabel>& two_cells) {
    if (c.max_degree() < 2)
        throw std::invalid_argument("deletion_b2_bound_check: complex has no 2-cells");
    require_prime(c.modulus(), "deletion_b2_bound_check");
    const i64 p = c.modulus();
    const int l = c.max_degree();

    std::vector<int> live;
    for (int i = 0; i < c.dim(2); ++i) live.push_back(i);
    std::vector<bool> has_higher(c.dim(2), false);
    if (l >= 3)
        for (const auto& e : c.boundary(3).entries()) has_higher[e.row] = true;

    auto b2_of = [&](const std::vector<int>& cols) {
        std::vector<int> all_rows(c.dim(1));
        for (int i = 0; i < c.dim(1); ++i) all_rows[i] = i;
        int r2 = rank_mod_p(c.boundary(2).restricted(all_rows, cols), p);
        int r3 = 0;
        if (l >= 3) {
            std::vector<int> all_c3(c.dim(3));
            for (int i = 0; i < c.dim(3); ++i) all_c3[i] = i;
            r3 = rank_mod_p(c.boundary(3).restricted(cols, all_c3), p);
        }
        return (int)cols.size() - r2 - r3;
    };

    DeletionBoundReport rep;
    rep.b2_before = b2_of(live);
    int prev = rep.b2_before;
    rep.holds = true;
    for (const CellLabel& lab : two_cells) {
        int idx = c.cell_index(2, lab);
        if (idx < 0)
            throw std::invalid_argument("deletion_b2_bound_check: not a known 2-cell: " +
                                        label_to_string(lab));
        if (has_higher[idx])
            throw std::invalid_argument(
                "deletion_b2_bound_check: 2-cell has higher cells attached: " +
                label_to_string(lab));
        auto it = std::find(live.begin(), live.end(), idx);
        if (it == live.end())
            throw std::invalid_argument("deletion_b2_bound_check: duplicate 2-cell: " +
                                        label_to_string(lab));
        live.erase(it);
        int b2 = b2_of(live);
        rep.b2_steps.push_back(b2);
        if (b2 != prev && b2 != prev - 1) rep.holds = false;
        prev = b2;
    }
    rep.b2_after = prev;
    if (rep.b2_after < rep.b2_before - (int)two_cells.size()) rep.holds = false;
    return rep;
}

namespace {

int footprint_distance(const Graph& g, const FactorCell& a, const FactorCell& b) {
    if (a == b) return 0;
    auto verts = [&](const FactorCell& fc) -> std::vector<int> {
        if (fc.kind == 0) return {fc.id};
        auto [u, v] = g.edge(fc.id);
        return {u, v};
    };
    std::vector<int> va = verts(a), vb = verts(b);
    int best = -1;
    for (int u : va) {
        auto dist = g.bfs_distances(u);
        for (int v : vb)
            if (dist[v] >= 0 && (best < 0 || dist[v] < best)) best = dist[v];
    }
    if (best < 0) throw std::runtime_error("cell_distance: cells in different components");
    // distinct edges sharing a vertex count as distance 1, not 0
    if (best == 0 && a.kind == 1 && b.kind == 1) best = 1;
    return best;
}

}  // namespace

int cell_distance(const ChainComplex& c, const CellLabel& a, const CellLabel& b) {
    if (!c.has_factors())
        throw std::invalid_argument("cell_distance: complex has no factor references");
    const auto& fs = c.factors();
    if (a.size() != fs.size() || b.size() != fs.size())
        throw std::invalid_argument("cell_distance: label arity does not match factors");
    int dist = 0;
    for (std::size_t t = 0; t < fs.size(); ++t)
        dist = std::max(dist, footprint_distance(fs[t], a[t], b[t]));
    return dist;
}

nlohmann::json ChainComplex::to_json() const {
    nlohmann::json j;
    j["q"] = q_;
    j["dims"] = dims_;
    j["boundaries"] = nlohmann::json::array();
    for (const SparseMat& b : boundaries_) {
        nlohmann::json jb;
        jb["rows"] = b.rows();
        jb["cols"] = b.cols();
        auto ents = nlohmann::json::array();
        for (const auto& e : b.entries()) ents.push_back({e.row, e.col, e.val});
        jb["entries"] = std::move(ents);
        j["boundaries"].push_back(std::move(jb));
    }
    j["labels"] = nlohmann::json::array();
    for (const auto& degree : labels_) {
        auto jd = nlohmann::json::array();
        for (const CellLabel& lab : degree) {
            auto jl = nlohmann::json::array();
            for (const FactorCell& fc : lab) jl.push_back({fc.kind, fc.id});
            jd.push_back(std::move(jl));
        }
        j["labels"].push_back(std::move(jd));
    }
    if (!factors_.empty()) {
        j["factors"] = nlohmann::json::array();
        for (const Graph& g : factors_) {
            nlohmann::json jg;
            jg["n"] = g.vertex_count();
            auto je = nlohmann::json::array();
            for (auto [u, v] : g.edges()) je.push_back({u, v});
            jg["edges"] = std::move(je);
            if (g.left_size()) jg["left"] = *g.left_size();
            j["factors"].push_back(std::move(jg));
        }
    }
    return j;
}

ChainComplex ChainComplex::from_json(const nlohmann::json& j) {
    i64 q = j.at("q").get<i64>();
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    std::vector<SparseMat> boundaries;
    for (const auto& jb : j.at("boundaries")) {
        std::vector<SparseMat::Entry> ents;
        for (const auto& je : jb.at("entries"))
            ents.push_back({je.at(0).get<int>(), je.at(1).get<int>(), je.at(2).get<i64>()});
        boundaries.emplace_back(jb.at("rows").get<int>(), jb.at("cols").get<int>(), q,
                                std::move(ents));
    }
    std::vector<std::vector<CellLabel>> labels;
    for (const auto& jd : j.at("labels")) {
        std::vector<CellLabel> degree;
        for (const auto& jl : jd) {
            CellLabel lab;
            for (const auto& jf : jl)
                lab.push_back({jf.at(0).get<int>(), jf.at(1).get<int>()});
            degree.push_back(std::move(lab));
        }
        labels.push_back(std::move(degree));
    }
    std::vector<Graph> factors;
    if (j.contains("factors"))
        for (const auto& jg : j.at("factors")) {
            std::vector<std::pair<int, int>> edges;
            for (const auto& je : jg.at("edges"))
                edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
            std::optional<int> left;
            if (jg.contains("left")) left = jg.at("left").get<int>();
            factors.emplace_back(jg.at("n").get<int>(), std::move(edges), left);
        }
    return ChainComplex(q, std::move(dims), std::move(boundaries), std::move(labels),
                        std::move(factors));
}

}  // namespace qchain
