#include "qchain/stabilizer.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "qchain/bitvec.hpp"
#include "qchain/ringlin.hpp"

namespace qchain {

namespace {

PauliOp pauli_pow(const PauliOp& p, i64 a, i64 q) {
    a = mod_reduce(a, q);
    if (q == 2) return a ? p : PauliOp::identity(q, p.sites());
    std::vector<i64> x(p.sites()), z(p.sites());
    for (int i = 0; i < p.sites(); ++i) {
        x[i] = mod_reduce(p.x_at(i) * a, q);
        z[i] = mod_reduce(p.z_at(i) * a, q);
    }
    return PauliOp(q, std::move(x), std::move(z));
}

/// Images of the single-site generators under conjugation by the gate.
struct GateImages {
    // nullopt means the site is untouched (image = the generator itself)
    std::map<int, PauliOp> x_img, z_img;
};

GateImages images_of(const Gate& g, i64 q, int n, bool inverse) {
    GateImages im;
    if (const auto* cx = std::get_if<CxGate>(&g)) {
        i64 m = inverse ? mod_reduce(-cx->coeff, q) : mod_reduce(cx->coeff, q);
        PauliOp xc = PauliOp::x_site(q, n, cx->control);
        xc = xc * PauliOp::x_site(q, n, cx->target, m);
        im.x_img[cx->control] = xc;
        PauliOp zt = PauliOp::z_site(q, n, cx->target);
        zt = zt * PauliOp::z_site(q, n, cx->control, mod_reduce(-m, q));
        im.z_img[cx->target] = zt;
    } else if (const auto* h = std::get_if<HadamardGate>(&g)) {
        if (!inverse) {
            im.x_img[h->site] = PauliOp::z_site(q, n, h->site);
            im.z_img[h->site] = PauliOp::x_site(q, n, h->site, mod_reduce(-1, q));
        } else {
            im.x_img[h->site] = PauliOp::z_site(q, n, h->site, mod_reduce(-1, q));
            im.z_img[h->site] = PauliOp::x_site(q, n, h->site);
        }
    } else if (const auto* sc = std::get_if<ScalarGate>(&g)) {
        i64 u = inverse ? inv_mod(sc->unit, q) : mod_reduce(sc->unit, q);
        im.x_img[sc->site] = PauliOp::x_site(q, n, sc->site, u);
        im.z_img[sc->site] = PauliOp::z_site(q, n, sc->site, inv_mod(u, q));
    }
    return im;
}

}  // namespace

std::vector<int> gate_support(const Gate& g) {
    if (const auto* pe = std::get_if<PauliExpGate>(&g)) return pe->q.support();
    if (const auto* cx = std::get_if<CxGate>(&g)) {
        if (cx->control == cx->target) return {cx->control};
        return {std::min(cx->control, cx->target), std::max(cx->control, cx->target)};
    }
    if (const auto* h = std::get_if<HadamardGate>(&g)) return {h->site};
    if (const auto* sc = std::get_if<ScalarGate>(&g)) return {sc->site};
    const auto& perm = std::get<PermGate>(g).perm;
    std::vector<int> s;
    for (int i = 0; i < (int)perm.size(); ++i)
        if (perm[i] != i) s.push_back(i);
    return s;
}

PauliOp conjugate(const Gate& g, const PauliOp& p, bool inverse) {
    const i64 q = p.modulus();
    const int n = p.sites();

    if (const auto* pe = std::get_if<PauliExpGate>(&g)) {
        if (q != 2)
            throw std::domain_error("conjugate: PauliExp gates are q = 2 only");
        const PauliOp& rot = pe->q;
        if (!(rot * rot == PauliOp::identity(2, n).negated()))
            throw std::invalid_argument("conjugate: PauliExp generator must square to -1");
        if (p.commutes_with(rot)) return p;
        return inverse ? rot.negated() * p : rot * p;
    }
    if (const auto* perm = std::get_if<PermGate>(&g)) {
        const auto& pi = perm->perm;
        std::vector<i64> x(n, 0), z(n, 0);
        // forward: site i -> pi[i]; inverse: site pi[i] -> i
        for (int i = 0; i < n; ++i) {
            int dst = inverse ? (int)(std::find(pi.begin(), pi.end(), i) - pi.begin())
                              : pi[i];
            x[dst] = p.x_at(i);
            z[dst] = p.z_at(i);
        }
        return PauliOp(q, std::move(x), std::move(z), p.phase_i_power());
    }

    GateImages im = images_of(g, q, n, inverse);
    PauliOp out(q, n);
    bool first = true;
    auto mul = [&](const PauliOp& w) {
        if (first) {
            out = w;
            first = false;
        } else {
            out = out * w;
        }
    };
    for (int i = 0; i < n; ++i) {
        i64 e = p.x_at(i);
        if (e == 0) continue;
        auto it = im.x_img.find(i);
        mul(it == im.x_img.end() ? PauliOp::x_site(q, n, i, e)
                                 : pauli_pow(it->second, e, q));
    }
    for (int i = 0; i < n; ++i) {
        i64 e = p.z_at(i);
        if (e == 0) continue;
        auto it = im.z_img.find(i);
        mul(it == im.z_img.end() ? PauliOp::z_site(q, n, i, e)
                                 : pauli_pow(it->second, e, q));
    }
    if (first) out = PauliOp::identity(q, n);
    if (q == 2) {
        // reattach the input's scalar prefactor
        PauliOp phase(q, std::vector<i64>(n, 0), std::vector<i64>(n, 0),
                      p.phase_i_power());
        out = phase * out;
    }
    return out;
}

void CliffordCircuit::push_round(std::vector<Gate> gates) {
    std::set<int> seen;
    for (const Gate& g : gates)
        for (int s : gate_support(g))
            if (!seen.insert(s).second)
                throw std::invalid_argument(
                    "CliffordCircuit: overlapping gate supports within a round");
    rounds_.push_back(std::move(gates));
}

PauliOp CliffordCircuit::conjugate_through(PauliOp p, bool inverse) const {
    if (!inverse) {
        for (const auto& round : rounds_)
            for (const Gate& g : round) p = conjugate(g, p, false);
    } else {
        for (auto rit = rounds_.rbegin(); rit != rounds_.rend(); ++rit)
            for (auto git = rit->rbegin(); git != rit->rend(); ++git)
                p = conjugate(*git, p, true);
    }
    return p;
}

int CliffordCircuit::max_gate_diameter(const ChainComplex& metric_complex) const {
    const auto& cells = metric_complex.labels(1);
    int best = 0;
    for (const auto& round : rounds_)
        for (const Gate& g : round) {
            auto supp = gate_support(g);
            for (std::size_t a = 0; a < supp.size(); ++a)
                for (std::size_t b = a + 1; b < supp.size(); ++b)
                    best = std::max(best, cell_distance(metric_complex, cells[supp[a]],
                                                        cells[supp[b]]));
        }
    return best;
}

int CliffordCircuit::range(const ChainComplex& metric_complex) const {
    return depth() * max_gate_diameter(metric_complex);
}

nlohmann::json CliffordCircuit::to_json() const {
    nlohmann::json j;
    j["q"] = q_;
    j["n"] = n_;
    j["rounds"] = nlohmann::json::array();
    for (const auto& round : rounds_) {
        auto jr = nlohmann::json::array();
        for (const Gate& g : round) {
            nlohmann::json jg;
            if (const auto* pe = std::get_if<PauliExpGate>(&g)) {
                jg["kind"] = "pauli_exp";
                jg["generator"] = pe->q.to_json();
            } else if (const auto* cx = std::get_if<CxGate>(&g)) {
                jg["kind"] = "cx";
                jg["control"] = cx->control;
                jg["target"] = cx->target;
                jg["coeff"] = cx->coeff;
            } else if (const auto* h = std::get_if<HadamardGate>(&g)) {
                jg["kind"] = "hadamard";
                jg["site"] = h->site;
            } else if (const auto* sc = std::get_if<ScalarGate>(&g)) {
                jg["kind"] = "scalar";
                jg["site"] = sc->site;
                jg["unit"] = sc->unit;
            } else {
                jg["kind"] = "perm";
                jg["perm"] = std::get<PermGate>(g).perm;
            }
            jg["support"] = gate_support(g);
            jr.push_back(std::move(jg));
        }
        j["rounds"].push_back(std::move(jr));
    }
    return j;
}

StabilizerGroup::StabilizerGroup(int n, std::vector<PauliOp> generators)
    : n_(n), gens_(std::move(generators)) {
    std::vector<BitVec> rows;
    for (const PauliOp& g : gens_) {
        if (g.modulus() != 2)
            throw std::invalid_argument("StabilizerGroup: generators must have q = 2");
        if (g.sites() != n_)
            throw std::invalid_argument("StabilizerGroup: generator size mismatch");
        if (!g.is_hermitian())
            throw std::invalid_argument("StabilizerGroup: generator is not Hermitian");
        BitVec v(2 * n_);
        for (int i = 0; i < n_; ++i) {
            if (g.x_at(i)) v.set(i, true);
            if (g.z_at(i)) v.set(n_ + i, true);
        }
        rows.push_back(std::move(v));
    }
    for (std::size_t a = 0; a < gens_.size(); ++a)
        for (std::size_t b = a + 1; b < gens_.size(); ++b)
            if (!gens_[a].commutes_with(gens_[b]))
                throw std::invalid_argument("StabilizerGroup: generators do not commute");
    // independence via F_2 elimination
    std::vector<BitVec> basis;
    std::vector<int> pivots;
    for (BitVec v : rows) {
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (v.get(pivots[k])) v ^= basis[k];
        int lead = -1;
        for (int j = 0; j < 2 * n_; ++j)
            if (v.get(j)) { lead = j; break; }
        if (lead < 0)
            throw std::invalid_argument("StabilizerGroup: generators are dependent");
        basis.push_back(std::move(v));
        pivots.push_back(lead);
    }
}

namespace {

BitVec symplectic_bits(const PauliOp& p) {
    const int n = p.sites();
    BitVec v(2 * n);
    for (int i = 0; i < n; ++i) {
        if (p.x_at(i)) v.set(i, true);
        if (p.z_at(i)) v.set(n + i, true);
    }
    return v;
}

}  // namespace

int StabilizerGroup::expectation(const PauliOp& p) const {
    for (const PauliOp& g : gens_)
        if (!g.commutes_with(p)) return 0;
    // solve for a generator combination matching P's symplectic vector
    std::vector<BitVec> rows;
    std::vector<BitVec> combos;
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        rows.push_back(symplectic_bits(gens_[k]));
        BitVec c((int)gens_.size());
        c.set((int)k, true);
        combos.push_back(std::move(c));
    }
    BitVec target = symplectic_bits(p);
    BitVec combo((int)gens_.size());
    std::vector<int> pivots;
    std::vector<BitVec> basis, basis_combo;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        BitVec v = rows[k], c = combos[k];
        for (std::size_t t = 0; t < basis.size(); ++t)
            if (v.get(pivots[t])) { v ^= basis[t]; c ^= basis_combo[t]; }
        int lead = -1;
        for (int j = 0; j < v.size(); ++j)
            if (v.get(j)) { lead = j; break; }
        if (lead < 0) continue;
        basis.push_back(std::move(v));
        basis_combo.push_back(std::move(c));
        pivots.push_back(lead);
    }
    for (std::size_t t = 0; t < basis.size(); ++t)
        if (target.get(pivots[t])) { target ^= basis[t]; combo ^= basis_combo[t]; }
    if (target.any()) return 0;  // independent of the group
    PauliOp w = PauliOp::identity(2, n_);
    for (std::size_t k = 0; k < gens_.size(); ++k)
        if (combo.get((int)k)) w = w * gens_[k];
    if (w == p) return +1;
    if (w == p.negated()) return -1;
    throw std::logic_error("StabilizerGroup::expectation: phase mismatch beyond sign");
}

bool StabilizerGroup::contains(const PauliOp& p) const { return expectation(p) == +1; }

std::vector<PauliOp> StabilizerGroup::local_subgroup(const std::vector<int>& region) const {
    std::vector<bool> in_region(n_, false);
    for (int s : region) in_region[s] = true;
    std::vector<int> outside;
    for (int i = 0; i < n_; ++i)
        if (!in_region[i]) outside.push_back(i);

    // combos of generators whose symplectic vector vanishes outside the region
    const int m = (int)gens_.size();
    std::vector<BitVec> rows(m, BitVec(2 * (int)outside.size()));
    for (int k = 0; k < m; ++k)
        for (std::size_t j = 0; j < outside.size(); ++j) {
            if (gens_[k].x_at(outside[j])) rows[k].set(2 * (int)j, true);
            if (gens_[k].z_at(outside[j])) rows[k].set(2 * (int)j + 1, true);
        }
    std::vector<PauliOp> local;
    std::vector<BitVec> basis, basis_combo;
    std::vector<int> pivots;
    for (int k = 0; k < m; ++k) {
        BitVec v = rows[k];
        BitVec c(m);
        c.set(k, true);
        for (std::size_t t = 0; t < basis.size(); ++t)
            if (v.get(pivots[t])) { v ^= basis[t]; c ^= basis_combo[t]; }
        int lead = -1;
        for (int j = 0; j < v.size(); ++j)
            if (v.get(j)) { lead = j; break; }
        if (lead >= 0) {
            basis.push_back(std::move(v));
            basis_combo.push_back(std::move(c));
            pivots.push_back(lead);
            continue;
        }
        PauliOp w = PauliOp::identity(2, n_);
        for (int t = 0; t < m; ++t)
            if (c.get(t)) w = w * gens_[t];
        local.push_back(std::move(w));
    }
    return local;
}

namespace {

/// Sign-tracked canonical generating set: Gaussian elimination over the
/// symplectic bits in fixed column order, eliminating by group
/// multiplication so phases stay exact.
std::vector<PauliOp> canonical_signed_basis(std::vector<PauliOp> gens, int n) {
    std::vector<PauliOp> out;
    for (int col = 0; col < 2 * n; ++col) {
        auto bit = [&](const PauliOp& p) {
            return col < n ? p.x_at(col) != 0 : p.z_at(col - n) != 0;
        };
        int found = -1;
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (bit(gens[k])) { found = (int)k; break; }
        if (found < 0) continue;
        PauliOp piv = gens[found];
        gens.erase(gens.begin() + found);
        for (PauliOp& g : gens)
            if (bit(g)) g = g * piv;
        for (PauliOp& g : out)
            if (bit(g)) g = g * piv;
        out.push_back(std::move(piv));
    }
    // anything left reduces to a scalar; -I would mean an inconsistent group
    for (const PauliOp& g : gens)
        if (!g.is_identity())
            throw std::logic_error("canonical_signed_basis: -identity in group");
    return out;
}

}  // namespace

bool reduced_state_equal(const StabilizerGroup& g1, const StabilizerGroup& g2,
                         const std::vector<int>& region) {
    auto c1 = canonical_signed_basis(g1.local_subgroup(region), g1.sites());
    auto c2 = canonical_signed_basis(g2.local_subgroup(region), g2.sites());
    return c1 == c2;
}

namespace {

struct OneSkeleton {
    std::vector<std::pair<int, int>> edge_ends;  // per 1-cell, or (-1,-1)
    std::vector<std::vector<int>> vertex_edges;  // 1-cells at each 0-cell
};

OneSkeleton one_skeleton(const ChainComplex& c) {
    OneSkeleton sk;
    sk.edge_ends.assign(c.dim(1), {-1, -1});
    sk.vertex_edges.resize(c.dim(0));
    std::vector<std::vector<int>> ends(c.dim(1));
    for (const auto& e : c.boundary(1).entries()) ends[e.col].push_back(e.row);
    for (int j = 0; j < c.dim(1); ++j) {
        if ((int)ends[j].size() > 2)
            throw std::invalid_argument(
                "disentangle_circuit: a 1-cell with more than two boundary 0-cells; "
                "graph-like complex required");
        if (ends[j].size() == 2) sk.edge_ends[j] = {ends[j][0], ends[j][1]};
        for (int v : ends[j]) sk.vertex_edges[v].push_back(j);
    }
    return sk;
}

std::vector<int> distance2_coloring(const ChainComplex& c, const OneSkeleton& sk,
                                    int* colors_used) {
    const int nv = c.dim(0);
    std::vector<std::set<int>> near(nv);
    for (int v = 0; v < nv; ++v) {
        for (int e : sk.vertex_edges[v]) {
            auto [a, b] = sk.edge_ends[e];
            if (a >= 0) near[v].insert(a);
            if (b >= 0) near[v].insert(b);
        }
        for (int u : std::set<int>(near[v])) {
            for (int e : sk.vertex_edges[u]) {
                auto [a, b] = sk.edge_ends[e];
                if (a >= 0) near[v].insert(a);
                if (b >= 0) near[v].insert(b);
            }
        }
        near[v].erase(v);
    }
    std::vector<int> color(nv, -1);
    int cmax = 0;
    for (int v = 0; v < nv; ++v) {
        std::set<int> used;
        for (int u : near[v])
            if (color[u] >= 0) used.insert(color[u]);
        int col = 0;
        while (used.count(col)) ++col;
        color[v] = col;
        cmax = std::max(cmax, col + 1);
    }
    *colors_used = cmax;
    return color;
}

}  // namespace

DisentangleResult disentangle_circuit(const ChainComplex& c, const std::set<int>& s0) {
    if (c.modulus() != 2)
        throw std::domain_error("disentangle_circuit: q = 2 only");
    if (s0.empty())
        throw std::invalid_argument("disentangle_circuit: empty seed set");
    const int nv = c.dim(0), ne = c.dim(1);
    for (int s : s0)
        if (s < 0 || s >= nv)
            throw std::out_of_range("disentangle_circuit: seed 0-cell out of range");

    OneSkeleton sk = one_skeleton(c);
    int colors = 0;
    std::vector<int> color = distance2_coloring(c, sk, &colors);

    // vertex terms A_s as X words from the incidence rows
    std::vector<PauliOp> vertex_op(nv, PauliOp(2, ne));
    {
        std::vector<std::vector<i64>> xrows(nv, std::vector<i64>(ne, 0));
        for (const auto& e : c.boundary(1).entries())
            if (e.val % 2) xrows[e.row][e.col] = 1;
        for (int v = 0; v < nv; ++v) vertex_op[v] = PauliOp::x_word(2, xrows[v]);
    }

    // positive term list: A_s for s outside S0, every B_p, plus accumulated Z_e
    std::vector<PauliOp> terms;
    std::vector<int> term_of_vertex(nv, -1);
    for (int v = 0; v < nv; ++v)
        if (!s0.count(v)) {
            term_of_vertex[v] = (int)terms.size();
            terms.push_back(vertex_op[v]);
        }
    if (c.max_degree() >= 2)
        for (int p = 0; p < c.dim(2); ++p) {
            std::vector<i64> z(ne, 0);
            for (const auto& e : c.boundary(2).entries())
                if (e.col == p && e.val % 2) z[e.row] = 1;
            terms.push_back(PauliOp::z_word(2, z));
        }

    CliffordCircuit circuit(2, ne);
    std::vector<bool> grown(nv, false);
    int grown_count = 0;
    for (int s : s0) {
        grown[s] = true;
        ++grown_count;
    }

    int slot = 0;
    const int slot_limit = colors * (nv + 1);
    while (grown_count < nv) {
        if (slot >= slot_limit)
            throw std::runtime_error(
                "disentangle_circuit: not all 0-cells reachable from the seed set");
        const int col = slot % colors;
        ++slot;
        std::vector<Gate> gates;
        std::vector<int> claimed;
        for (int s = 0; s < nv; ++s) {
            if (!grown[s] || color[s] != col) continue;
            for (int e : sk.vertex_edges[s]) {
                auto [a, b] = sk.edge_ends[e];
                if (a < 0) continue;  // dangling 1-cell
                int far = a == s ? b : a;
                if (grown[far]) continue;
                PauliOp q = PauliOp::z_site(2, ne, e) * vertex_op[far];
                gates.push_back(PauliExpGate{std::move(q)});
                claimed.push_back(far);
            }
        }
        if (gates.empty()) continue;
        // pack into support-disjoint sub-rounds (the gates all commute)
        std::vector<std::vector<Gate>> subrounds;
        std::vector<std::set<int>> occupied;
        for (Gate& g : gates) {
            auto supp = gate_support(g);
            std::size_t placed = subrounds.size();
            for (std::size_t r = 0; r < subrounds.size(); ++r) {
                bool clash = false;
                for (int s : supp)
                    if (occupied[r].count(s)) { clash = true; break; }
                if (!clash) { placed = r; break; }
            }
            if (placed == subrounds.size()) {
                subrounds.emplace_back();
                occupied.emplace_back();
            }
            for (int s : supp) occupied[placed].insert(s);
            subrounds[placed].push_back(std::move(g));
        }
        for (auto& sub : subrounds) {
            for (const Gate& g : sub)
                for (PauliOp& t : terms) t = conjugate(g, t, false);
            circuit.push_round(std::move(sub));
        }
        for (int far : claimed) {
            grown[far] = true;
            ++grown_count;
        }
    }

    for (const PauliOp& t : terms)
        for (int i = 0; i < ne; ++i)
            if (t.x_at(i) != 0)
                throw std::logic_error(
                    "disentangle_circuit: a final term is not Z-diagonal");

    DisentangleResult res{std::move(circuit), std::move(terms), 0, colors,
                          std::move(color)};
    res.rounds_used = res.circuit.depth();
    return res;
}

StabilizerGroup ground_stabilizers(const ChainComplex& c, const std::set<int>& s0) {
    DisentangleResult d = disentangle_circuit(c, s0);
    const int ne = c.dim(1);
    std::vector<PauliOp> gens;
    for (int i = 0; i < ne; ++i)
        gens.push_back(d.circuit.conjugate_through(PauliOp::z_site(2, ne, i), true));
    return StabilizerGroup(ne, std::move(gens));
}

namespace {

std::vector<PauliOp> rows_as_x_words(const SparseMat& m) {
    std::vector<std::vector<i64>> rows(m.rows(), std::vector<i64>(m.cols(), 0));
    for (const auto& e : m.entries()) rows[e.row][e.col] = e.val;
    std::vector<PauliOp> out;
    for (auto& r : rows) out.push_back(PauliOp::x_word(m.modulus(), r));
    return out;
}

std::vector<PauliOp> rows_as_z_words(const SparseMat& m) {
    std::vector<std::vector<i64>> rows(m.rows(), std::vector<i64>(m.cols(), 0));
    for (const auto& e : m.entries()) rows[e.row][e.col] = e.val;
    std::vector<PauliOp> out;
    for (auto& r : rows) out.push_back(PauliOp::z_word(m.modulus(), r));
    return out;
}

void require_full_row_rank(const SparseMat& m, i64 q, char side) {
    if (rank_mod_p(m.reduced(q), q) == m.rows()) return;
    auto ker = kernel_basis_mod_p(m.transpose().reduced(q), q);
    std::string msg = "canonical_form: redundancy among the ";
    msg += side;
    msg += " checks; a vanishing product uses rows {";
    std::vector<i64> witness = ker.empty() ? std::vector<i64>{} : ker.front();
    bool first = true;
    for (std::size_t i = 0; i < witness.size(); ++i)
        if (witness[i] != 0) {
            if (!first) msg += ", ";
            msg += std::to_string(i);
            first = false;
        }
    msg += "}";
    throw RedundancyError(msg, side, witness);
}

}  // namespace

CanonicalFormResult canonical_form(const CssCode& code) {
    require_prime(code.q, "canonical_form");
    const i64 q = code.q;
    const int n = code.n;
    require_full_row_rank(code.h_x, q, 'X');
    require_full_row_rank(code.h_z, q, 'Z');

    CanonicalFormResult res;
    res.a_rows = rows_as_x_words(code.h_x);
    res.b_rows = rows_as_z_words(code.h_z);
    const int da = (int)res.a_rows.size();
    const int db = (int)res.b_rows.size();

    auto apply = [&](Gate g) {
        for (PauliOp& p : res.a_rows) p = conjugate(g, p, false);
        for (PauliOp& p : res.b_rows) p = conjugate(g, p, false);
        res.column_ops.push_back(std::move(g));
    };

    // reduce rows to singletons on columns [col0, col0+rows), x exponents
    auto reduce_block = [&](std::vector<PauliOp>& rows, int col0) {
        for (int r = 0; r < (int)rows.size(); ++r) {
            const int pivot = col0 + r;
            int j = -1;
            for (int t = pivot; t < n; ++t)
                if (rows[r].x_at(t) != 0) { j = t; break; }
            if (j < 0)
                throw std::logic_error("canonical_form: lost full row rank");
            if (j != pivot) {
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                std::swap(perm[j], perm[pivot]);
                apply(PermGate{std::move(perm)});
            }
            if (i64 v = rows[r].x_at(pivot); v != 1)
                apply(ScalarGate{pivot, inv_mod(v, q)});
            for (int t = 0; t < n; ++t) {
                if (t == pivot) continue;
                if (i64 v = rows[r].x_at(t); v != 0)
                    apply(CxGate{pivot, t, mod_reduce(-v, q)});
            }
        }
    };

    reduce_block(res.a_rows, 0);
    // commutation now forces the B rows off the first da qudits
    for (const PauliOp& b : res.b_rows)
        for (int t = 0; t < da; ++t)
            if (b.z_at(t) != 0)
                throw std::logic_error("canonical_form: B support on an A pivot qudit");
    if (db > 0) {
        for (int t = da; t < n; ++t) apply(HadamardGate{t});
        reduce_block(res.b_rows, da);
    }
    return res;
}

}  // namespace qchain
