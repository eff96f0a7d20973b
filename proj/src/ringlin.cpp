#include "qchain/ringlin.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace qchain {

void SparseMat::write_text(std::ostream& os) const {
    os << rows_ << ' ' << cols_ << ' ' << q_ << '\n';
    for (const Entry& e : entries_) os << e.row << ' ' << e.col << ' ' << e.val << '\n';
}

SparseMat SparseMat::read_text(std::istream& is) {
    int rows, cols;
    i64 q;
    if (!(is >> rows >> cols >> q))
        throw std::runtime_error("SparseMat::read_text: bad header (want 'rows cols q')");
    std::vector<Entry> entries;
    int r, c;
    i64 v;
    while (is >> r >> c >> v) entries.push_back({r, c, mod_reduce(v, q)});
    return SparseMat(rows, cols, q, std::move(entries));
}

namespace {

/// Working state for Gauss-Jordan elimination over F_p with Markowitz
/// pivoting.  Rows are sparse maps col -> value; fully reduced pivot rows
/// have value 1 in their pivot column and zeros in every other pivot column.
struct Elimination {
    i64 p;
    int rows, cols;
    std::vector<std::map<int, i64>> row;
    std::vector<i64> rhs;             // optional augmented column
    bool augmented = false;
    std::vector<int> col_count;       // nonzeros per column among active rows
    std::vector<bool> active;         // row not yet chosen as pivot
    std::vector<std::pair<int, int>> pivots;  // (row, col)

    Elimination(const SparseMat& m, i64 p_) : p(p_), rows(m.rows()), cols(m.cols()) {
        row.resize(rows);
        col_count.assign(cols, 0);
        active.assign(rows, true);
        for (const auto& e : m.entries()) {
            i64 v = mod_reduce(e.val, p);
            if (v != 0) {
                row[e.row][e.col] = v;
                ++col_count[e.col];
            }
        }
    }

    void attach_rhs(const std::vector<i64>& b) {
        rhs.resize(rows);
        for (int i = 0; i < rows; ++i) rhs[i] = mod_reduce(b[i], p);
        augmented = true;
    }

    // Minimum (r_i-1)*(c_j-1) over active nonzeros, ties by (row, col).
    std::pair<int, int> select_pivot() const {
        long best_cost = std::numeric_limits<long>::max();
        std::pair<int, int> best{-1, -1};
        for (int i = 0; i < rows; ++i) {
            if (!active[i] || row[i].empty()) continue;
            long ri = (long)row[i].size() - 1;
            for (const auto& [j, v] : row[i]) {
                long cost = ri * (col_count[j] - 1);
                if (cost < best_cost ||
                    (cost == best_cost && std::pair(i, j) < best)) {
                    best_cost = cost;
                    best = {i, j};
                }
            }
        }
        return best;
    }

    void scale_row(int i, i64 factor) {
        for (auto& [j, v] : row[i]) v = mod_reduce(v * factor, p);
        if (augmented) rhs[i] = mod_reduce(rhs[i] * factor, p);
    }

    // row[dst] += coeff * row[src].  Column counts track active rows only.
    void axpy_row(int dst, i64 coeff, int src) {
        const bool counted = active[dst];
        for (const auto& [j, v] : row[src]) {
            auto it = row[dst].find(j);
            if (it == row[dst].end()) {
                i64 nv = mod_reduce(coeff * v, p);
                if (nv != 0) {
                    row[dst][j] = nv;
                    if (counted) ++col_count[j];
                }
            } else {
                it->second = mod_reduce(it->second + coeff * v, p);
                if (it->second == 0) {
                    row[dst].erase(it);
                    if (counted) --col_count[j];
                }
            }
        }
        if (augmented) rhs[dst] = mod_reduce(rhs[dst] + coeff * rhs[src], p);
    }

    void run() {
        while (true) {
            auto [pi, pj] = select_pivot();
            if (pi < 0) break;
            scale_row(pi, inv_mod(row[pi][pj], p));
            for (int i = 0; i < rows; ++i) {
                if (i == pi) continue;
                auto it = row[i].find(pj);
                if (it == row[i].end()) continue;
                axpy_row(i, mod_reduce(p - it->second, p), pi);
            }
            // retire the pivot row from further pivot selection
            active[pi] = false;
            for (const auto& [j, v] : row[pi]) --col_count[j];
            pivots.emplace_back(pi, pj);
        }
        std::sort(pivots.begin(), pivots.end(),
                  [](auto a, auto b) { return a.second < b.second; });
    }

    std::vector<std::vector<i64>> kernel_basis() const {
        std::vector<bool> is_pivot_col(cols, false);
        for (auto [i, j] : pivots) is_pivot_col[j] = true;
        std::vector<std::vector<i64>> basis;
        for (int f = 0; f < cols; ++f) {
            if (is_pivot_col[f]) continue;
            std::vector<i64> x(cols, 0);
            x[f] = 1;
            for (auto [i, j] : pivots) {
                auto it = row[i].find(f);
                if (it != row[i].end()) x[j] = mod_reduce(-it->second, p);
            }
            basis.push_back(std::move(x));
        }
        return basis;
    }
};

}  // namespace

int rank_mod_p(const SparseMat& m, i64 p) {
    require_prime(p, "rank_mod_p");
    Elimination e(m, p);
    e.run();
    return (int)e.pivots.size();
}

std::vector<std::vector<i64>> kernel_basis_mod_p(const SparseMat& m, i64 p) {
    require_prime(p, "kernel_basis_mod_p");
    Elimination e(m, p);
    e.run();
    return e.kernel_basis();
}

namespace detail {

void lex_minimize_against_kernel(std::vector<i64>& x,
                                 std::vector<std::vector<i64>> kernel, i64 p) {
    if (kernel.empty()) return;
    const int n = (int)x.size();
    // Bring the kernel basis into reduced echelon form by leading position.
    std::vector<std::vector<i64>> rref;
    std::vector<int> leads;
    for (int col = 0; col < n && rref.size() < kernel.size(); ++col) {
        int found = -1;
        for (int k = 0; k < (int)kernel.size(); ++k)
            if (!kernel[k].empty() && kernel[k][col] != 0) { found = k; break; }
        if (found < 0) continue;
        std::vector<i64> v = kernel[found];
        i64 inv = inv_mod(v[col], p);
        for (i64& c : v) c = mod_reduce(c * inv, p);
        for (auto& w : kernel) {
            if (w.empty() || w[col] == 0) continue;
            i64 c = w[col];
            for (int t = 0; t < n; ++t) w[t] = mod_reduce(w[t] - c * v[t], p);
        }
        rref.push_back(std::move(v));
        leads.push_back(col);
        kernel.erase(std::remove_if(kernel.begin(), kernel.end(),
                                    [](const std::vector<i64>& w) {
                                        return std::all_of(w.begin(), w.end(),
                                                           [](i64 c) { return c == 0; });
                                    }),
                     kernel.end());
    }
    // Zeroing x at every lead position yields the lexicographically least
    // element of the coset: any other choice raises the first differing digit.
    for (std::size_t k = 0; k < rref.size(); ++k) {
        i64 c = x[leads[k]];
        if (c == 0) continue;
        for (int t = 0; t < n; ++t) x[t] = mod_reduce(x[t] - c * rref[k][t], p);
    }
}

}  // namespace detail

std::optional<std::vector<i64>> solve_mod_p(const SparseMat& m,
                                            const std::vector<i64>& b, i64 p) {
    require_prime(p, "solve_mod_p");
    if ((int)b.size() != m.rows())
        throw std::invalid_argument("solve_mod_p: rhs length does not match rows");
    Elimination e(m, p);
    e.attach_rhs(b);
    e.run();
    for (int i = 0; i < m.rows(); ++i)
        if (e.row[i].empty() && e.rhs[i] != 0) return std::nullopt;
    std::vector<i64> x(m.cols(), 0);
    for (auto [i, j] : e.pivots) x[j] = e.rhs[i];
    detail::lex_minimize_against_kernel(x, e.kernel_basis(), p);
    return x;
}

namespace {

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("smith_normal_form: 64-bit overflow");
    return r;
}

i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("smith_normal_form: 64-bit overflow");
    return r;
}

i64 gcd_i64(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) { i64 t = a % b; a = b; b = t; }
    return a;
}

}  // namespace

std::vector<i64> smith_normal_form(const SparseMat& m, Lift lift) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<i64>> a(rows, std::vector<i64>(cols, 0));
    for (const auto& e : m.entries()) {
        i64 v = e.val;
        if (lift == Lift::Balanced && v > m.modulus() / 2) v -= m.modulus();
        a[e.row][e.col] = v;
    }

    auto row_sub = [&](int dst, i64 q, int src, int from_col) {
        for (int j = from_col; j < cols; ++j)
            a[dst][j] = checked_sub(a[dst][j], checked_mul(q, a[src][j]));
    };
    auto col_sub = [&](int dst, i64 q, int src, int from_row) {
        for (int i = from_row; i < rows; ++i)
            a[i][dst] = checked_sub(a[i][dst], checked_mul(q, a[i][src]));
    };

    int t = 0;
    const int tmax = std::min(rows, cols);
    while (t < tmax) {
        // smallest |value| nonzero in the trailing submatrix, lex tie-break
        int pi = -1, pj = -1;
        i64 best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                i64 v = a[i][j] < 0 ? -a[i][j] : a[i][j];
                if (v != 0 && (pi < 0 || v < best)) { best = v; pi = i; pj = j; }
            }
        if (pi < 0) break;
        std::swap(a[t], a[pi]);
        for (int i = t; i < rows; ++i) std::swap(a[i][t], a[i][pj]);

        bool settled = false;
        while (!settled) {
            settled = true;
            for (int i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                i64 q = a[i][t] / a[t][t];
                row_sub(i, q, t, t);
                if (a[i][t] != 0) { std::swap(a[t], a[i]); settled = false; }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                i64 q = a[t][j] / a[t][t];
                col_sub(j, q, t, t);
                if (a[t][j] != 0) {
                    for (int i = t; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    settled = false;
                }
            }
            if (!settled) continue;
            // pivot must divide the remaining submatrix
            for (int i = t + 1; i < rows && settled; ++i)
                for (int j = t + 1; j < cols && settled; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (int jj = t; jj < cols; ++jj)
                            a[t][jj] = checked_sub(a[t][jj], checked_mul(-1, a[i][jj]));
                        settled = false;
                    }
        }
        ++t;
    }

    std::vector<i64> factors;
    for (int i = 0; i < t; ++i) {
        i64 d = a[i][i] < 0 ? -a[i][i] : a[i][i];
        if (d != 0) factors.push_back(d);
    }
    // enforce the divisibility chain (pairwise gcd/lcm sweep)
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < factors.size(); ++i)
            if (factors[i + 1] % factors[i] != 0) {
                i64 g = gcd_i64(factors[i], factors[i + 1]);
                i64 l = checked_mul(factors[i] / g, factors[i + 1]);
                factors[i] = g;
                factors[i + 1] = l;
                changed = true;
            }
    }
    return factors;
}

int rational_rank(const SparseMat& m, Lift lift) {
    static const std::array<i64, 7> primes{2, 3, 5, 7, 11, 13, 10007};
    // Reductions are taken of the integer lift, not of the stored residues.
    int best = 0;
    for (i64 p : primes) {
        std::vector<SparseMat::Entry> ents;
        for (const auto& e : m.entries()) {
            i64 v = e.val;
            if (lift == Lift::Balanced && v > m.modulus() / 2) v -= m.modulus();
            v = mod_reduce(v, p);
            if (v != 0) ents.push_back({e.row, e.col, v});
        }
        SparseMat red(m.rows(), m.cols(), p, std::move(ents));
        best = std::max(best, rank_mod_p(red, p));
    }
    if (m.rows() <= 200 && m.cols() <= 200) {
        try {
            int snf_rank = (int)smith_normal_form(m, lift).size();
            if (best > snf_rank)
                throw std::logic_error("rational_rank: modular rank exceeds SNF rank");
            return snf_rank;
        } catch (const std::overflow_error&) {
            // entry growth left the 64-bit range; the multi-prime value stands
        }
    }
    return best;
}

}  // namespace qchain
