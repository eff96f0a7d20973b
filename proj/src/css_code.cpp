#include "qchain/css_code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "qchain/ringlin.hpp"
#include "qchain/rng.hpp"

namespace qchain {

CssCode extract_code(std::shared_ptr<const ChainComplex> c, int q_deg) {
    const int l = c->max_degree();
    if (q_deg < 0 || q_deg > l)
        throw std::invalid_argument("extract_code: degree out of range");
    const i64 q = c->modulus();
    const int n = c->dim(q_deg);
    CssCode code;
    code.q = q;
    code.q_deg = q_deg;
    code.n = n;
    code.h_x = q_deg >= 1 ? c->boundary(q_deg) : SparseMat(0, n, q);
    code.h_z = q_deg + 1 <= l ? c->boundary(q_deg + 1).transpose() : SparseMat(0, n, q);
    code.source = std::move(c);
    if (!(code.h_x * code.h_z.transpose()).is_zero())
        throw std::logic_error("extract_code: H_X * H_Z^T != 0 mod q");
    return code;
}

CssCode extract_code(const ChainComplex& c, int q_deg) {
    return extract_code(std::make_shared<const ChainComplex>(c), q_deg);
}

namespace {

/// Rows with an invariant factor coprime to q; equals the F_q rank for
/// prime q but is also meaningful for composite q via the Smith form.
int zq_rank(const SparseMat& m, i64 q) {
    if (is_prime(q)) return rank_mod_p(m.reduced(q), q);
    int r = 0;
    for (i64 d : smith_normal_form(m))
        if (std::gcd((long long)d, (long long)q) == 1) ++r;
    return r;
}

}  // namespace

CodeParams code_params(const CssCode& code) {
    CodeParams p;
    p.n = code.n;
    p.rank_x = zq_rank(code.h_x, code.q);
    p.rank_z = zq_rank(code.h_z, code.q);
    p.redundancy_x = code.h_x.rows() - p.rank_x;
    p.redundancy_z = code.h_z.rows() - p.rank_z;
    if (is_prime(code.q)) p.k = code.n - p.rank_x - p.rank_z;
    return p;
}

namespace {

std::vector<BitVec> to_bitvec_rows(const SparseMat& m) {
    std::vector<BitVec> rows(m.rows(), BitVec(m.cols()));
    for (const auto& e : m.entries())
        if (e.val % 2) rows[e.row].flip(e.col);
    return rows;
}

/// Reduced F_2 row basis with recorded pivot columns.
struct RowBasis {
    std::vector<BitVec> rows;
    std::vector<int> pivots;

    void add(BitVec v) {
        reduce(v);
        for (int j = 0; j < v.size(); ++j)
            if (v.get(j)) {
                for (std::size_t k = 0; k < rows.size(); ++k)
                    if (rows[k].get(j)) rows[k] ^= v;
                rows.push_back(std::move(v));
                pivots.push_back(j);
                return;
            }
    }

    void reduce(BitVec& v) const {
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (v.get(pivots[k])) v ^= rows[k];
    }

    bool contains(BitVec v) const {
        reduce(v);
        return !v.any();
    }
};

}  // namespace

int distance_brute(const CssCode& code, CodeSide side, std::uint64_t budget) {
    if (code.q != 2)
        throw std::domain_error("distance_brute: q = 2 only");
    const SparseMat& opposing = side == CodeSide::Z ? code.h_x : code.h_z;
    const SparseMat& same = side == CodeSide::Z ? code.h_z : code.h_x;

    auto kernel = kernel_basis_mod_p(opposing.reduced(2), 2);
    const int dim = (int)kernel.size();
    if (dim >= 63 || (1ull << dim) > budget)
        throw std::runtime_error(
            "distance_brute: kernel enumeration needs " +
            (dim >= 63 ? std::string("2^") + std::to_string(dim)
                       : std::to_string(1ull << dim)) +
            " vectors, over the budget of " + std::to_string(budget));

    std::vector<BitVec> basis;
    for (const auto& v : kernel) {
        BitVec b(code.n);
        for (int i = 0; i < code.n; ++i)
            if (v[i] % 2) b.set(i, true);
        basis.push_back(std::move(b));
    }
    RowBasis stab;
    for (BitVec r : to_bitvec_rows(same)) stab.add(std::move(r));

    int best = -1;
    BitVec cur(code.n);
    const std::uint64_t total = 1ull << dim;
    for (std::uint64_t g = 1; g < total; ++g) {
        cur ^= basis[std::countr_zero(g)];
        int w = cur.popcount();
        if ((best < 0 || w < best) && !stab.contains(cur)) best = w;
    }
    if (best < 0)
        throw std::runtime_error("distance_brute: no logical operator (k = 0)");
    return best;
}

SyndromeReport syndrome_census(const CssCode& code) {
    if (code.q != 2) throw std::domain_error("syndrome_census: q = 2 only");
    if (!code.source)
        throw std::invalid_argument("syndrome_census: code has no source complex");
    if (code.source->dim(code.q_deg + 2) != 0)
        throw std::invalid_argument(
            "syndrome_census: C_{q_deg+2} is nonzero; the 2^{N_p-b2} count "
            "assumes no higher cells above the plaquette degree");
    SyndromeReport rep;
    rep.n_p = code.h_z.rows();
    int rank = rank_mod_p(code.h_z.reduced(2), 2);
    rep.b2 = rep.n_p - rank;
    rep.achievable_exponent = rank;
    if (rank < 63) rep.achievable_count = 1ull << rank;
    int b2_homology = betti(*code.source, 2)[code.q_deg + 1];
    if (rank != rep.n_p - b2_homology)
        throw std::logic_error("syndrome_census: rank H_Z != N_p - b2");
    rep.gap_witness.reset();
    rep.gap_distance = 0;
    rep.min_eigenvalue = -rep.n_p;
    return rep;
}

namespace {

/// Columns of the dual-check matrix of the achievable-syndrome code: entry
/// bit i of column j is (i-th kernel vector of H_Z^T)[j].
std::vector<std::uint64_t> coset_columns(const CssCode& code, int* b2_out) {
    auto dual = kernel_basis_mod_p(code.h_z.transpose().reduced(2), 2);
    const int b2 = (int)dual.size();
    if (b2 > 32)
        throw std::runtime_error("syndrome_gap: 2^" + std::to_string(b2) +
                                 " cosets; exact mode infeasible, use search mode");
    const int n_p = code.h_z.rows();
    std::vector<std::uint64_t> col(n_p, 0);
    for (int i = 0; i < b2; ++i)
        for (int j = 0; j < n_p; ++j)
            if (dual[i][j] % 2) col[j] |= 1ull << i;
    *b2_out = b2;
    return col;
}

/// Enumerate plaquette sets by increasing weight, visiting each subset's
/// (syndrome, weight, indices) until the visitor declines or the budget
/// runs out.  Returns false on budget exhaustion.
template <typename Visit>
bool enumerate_by_weight(int n_p, const std::vector<std::uint64_t>& col,
                         std::uint64_t budget, Visit visit) {
    std::vector<int> idx;
    std::uint64_t used = 0;
    for (int w = 0; w <= n_p; ++w) {
        idx.assign(w, 0);
        for (int i = 0; i < w; ++i) idx[i] = i;
        for (;;) {
            std::uint64_t syn = 0;
            for (int i : idx) syn ^= col[i];
            if (!visit(syn, w, idx)) return true;
            if (++used > budget) return false;
            // next w-combination in lexicographic order
            int t = w - 1;
            while (t >= 0 && idx[t] == n_p - w + t) --t;
            if (t < 0) break;
            ++idx[t];
            for (int s = t + 1; s < w; ++s) idx[s] = idx[s - 1] + 1;
        }
    }
    return true;
}

}  // namespace

SyndromeReport syndrome_gap(const CssCode& code, GapMode mode, std::uint64_t seed) {
    if (code.q != 2) throw std::domain_error("syndrome_gap: q = 2 only");
    SyndromeReport rep;
    rep.n_p = code.h_z.rows();
    int rank = rank_mod_p(code.h_z.reduced(2), 2);
    rep.b2 = rep.n_p - rank;
    rep.achievable_exponent = rank;
    if (rank < 63) rep.achievable_count = 1ull << rank;

    if (rep.b2 == 0) {
        rep.gap_witness = BitVec(rep.n_p);
        rep.gap_distance = 0;
        rep.min_eigenvalue = -rep.n_p;
        rep.exact = true;
        return rep;
    }

    if (mode == GapMode::Exact) {
        int b2 = 0;
        auto col = coset_columns(code, &b2);
        const std::uint64_t n_cosets = 1ull << b2;
        std::vector<int> leader_weight((std::size_t)n_cosets, -1);
        std::vector<std::vector<int>> leader((std::size_t)n_cosets);
        std::uint64_t found = 0;
        bool done = enumerate_by_weight(
            rep.n_p, col, 1ull << 26,
            [&](std::uint64_t syn, int w, const std::vector<int>& idx) {
                if (leader_weight[syn] < 0) {
                    leader_weight[syn] = w;
                    leader[syn] = idx;
                    ++found;
                }
                return found < n_cosets;
            });
        if (!done)
            throw std::runtime_error(
                "syndrome_gap: coset-leader enumeration exceeded budget; use "
                "search mode");
        int gap = 0;
        std::uint64_t argmax = 0;
        for (std::uint64_t t = 0; t < n_cosets; ++t)
            if (leader_weight[t] > gap) {
                gap = leader_weight[t];
                argmax = t;
            }
        BitVec witness(rep.n_p);
        for (int i : leader[argmax]) witness.set(i, true);
        rep.gap_witness = std::move(witness);
        rep.gap_distance = gap;
        rep.exact = true;
    } else {
        int b2 = 0;
        auto col = coset_columns(code, &b2);
        Rng rng(seed);
        int best = 0;
        BitVec best_v(rep.n_p);
        const int tries = 64;
        for (int t = 0; t < tries; ++t) {
            BitVec v(rep.n_p);
            std::uint64_t target = 0;
            for (int i = 0; i < rep.n_p; ++i)
                if (rng.next() & 1) {
                    v.set(i, true);
                    target ^= col[i];
                }
            // exact distance of v to the achievable code = leader weight of
            // its coset, found by weight-ordered search
            int dist = -1;
            bool done = enumerate_by_weight(
                rep.n_p, col, 1ull << 22,
                [&](std::uint64_t syn, int w, const std::vector<int>&) {
                    if (syn == target) {
                        dist = w;
                        return false;
                    }
                    return true;
                });
            if (!done) continue;  // could not certify this candidate
            if (dist > best) {
                best = dist;
                best_v = v;
            }
        }
        rep.gap_witness = std::move(best_v);
        rep.gap_distance = best;
        rep.exact = false;
    }
    rep.min_eigenvalue = -rep.n_p + 2 * rep.gap_distance;
    return rep;
}

EntropyBound entropy_bound(int n_p, int b2, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("entropy_bound: eps must lie in (0, 1)");
    const long double x = (long double)eps / 2.0L;
    const long double h = -x * std::log(x) - (1.0L - x) * std::log(1.0L - x);
    EntropyBound b;
    b.h_half_eps = (double)h;
    b.lhs = (double)((long double)n_p * h);
    b.rhs = (double)((long double)b2 * std::log(2.0L));
    b.holds = (long double)n_p * h < (long double)b2 * std::log(2.0L);
    return b;
}

void write_alist_matrix(std::ostream& os, const SparseMat& m) {
    const int n = m.cols(), rows = m.rows();
    std::vector<std::vector<std::pair<int, i64>>> col(n), row(rows);
    for (const auto& e : m.entries()) {
        col[e.col].push_back({e.row + 1, e.val});
        row[e.row].push_back({e.col + 1, e.val});
    }
    int maxc = 0, maxr = 0;
    for (auto& c : col) maxc = std::max(maxc, (int)c.size());
    for (auto& r : row) maxr = std::max(maxr, (int)r.size());
    const bool qary = m.modulus() != 2;
    os << n << ' ' << rows;
    if (qary) os << ' ' << m.modulus();
    os << '\n' << maxc << ' ' << maxr << '\n';
    for (int j = 0; j < n; ++j) os << col[j].size() << (j + 1 < n ? ' ' : '\n');
    for (int i = 0; i < rows; ++i) os << row[i].size() << (i + 1 < rows ? ' ' : '\n');
    auto dump = [&](const std::vector<std::pair<int, i64>>& entries) {
        for (std::size_t k = 0; k < entries.size(); ++k) {
            os << entries[k].first;
            if (qary) os << ' ' << entries[k].second;
            os << (k + 1 < entries.size() ? ' ' : '\n');
        }
        if (entries.empty()) os << '\n';
    };
    for (auto& c : col) dump(c);
    for (auto& r : row) dump(r);
}

}  // namespace qchain
