#pragma once

#include <algorithm>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "qchain/modular.hpp"

namespace qchain {

/**
 * Sparse matrix with entries in Z_q.
 *
 * Entries are kept in canonical residues {1, .., q-1}; zeros are never
 * stored and duplicate positions are summed mod q on construction.  This is
 * the home of every boundary operator: a boundary map from degree-i cells to
 * degree-(i-1) cells is a SparseMat with one column per i-cell.
 */
class SparseMat {
public:
    struct Entry {
        int row;
        int col;
        i64 val;  // in {1, .., q-1}
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    SparseMat() = default;

    SparseMat(int rows, int cols, i64 q) : rows_(rows), cols_(cols), q_(q) {
        check_shape();
    }

    SparseMat(int rows, int cols, i64 q, std::vector<Entry> entries)
        : rows_(rows), cols_(cols), q_(q) {
        check_shape();
        std::map<std::pair<int, int>, i64> acc;
        for (const Entry& e : entries) {
            if (e.row < 0 || e.row >= rows_ || e.col < 0 || e.col >= cols_)
                throw std::out_of_range("SparseMat: entry index out of bounds");
            acc[{e.row, e.col}] = mod_reduce(acc[{e.row, e.col}] + e.val, q_);
        }
        for (const auto& [rc, v] : acc)
            if (v != 0) entries_.push_back({rc.first, rc.second, v});
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    i64 modulus() const { return q_; }

    /// Entries sorted by (row, col); values in {1, .., q-1}.
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    bool is_zero() const { return entries_.empty(); }

    static SparseMat identity(int n, i64 q) {
        SparseMat m(n, n, q);
        if (q > 1)
            for (int i = 0; i < n; ++i) m.entries_.push_back({i, i, 1});
        return m;
    }

    static SparseMat zero(int rows, int cols, i64 q) { return SparseMat(rows, cols, q); }

    SparseMat transpose() const {
        std::vector<Entry> t;
        t.reserve(entries_.size());
        for (const Entry& e : entries_) t.push_back({e.col, e.row, e.val});
        return SparseMat(cols_, rows_, q_, std::move(t));
    }

    /// Reduce all entries mod p (p need not divide q); result lives over Z_p.
    SparseMat reduced(i64 p) const {
        std::vector<Entry> t;
        for (const Entry& e : entries_) {
            i64 v = mod_reduce(e.val, p);
            if (v != 0) t.push_back({e.row, e.col, v});
        }
        return SparseMat(rows_, cols_, p, std::move(t));
    }

    SparseMat operator*(const SparseMat& rhs) const {
        if (cols_ != rhs.rows_)
            throw std::invalid_argument("SparseMat: product shape mismatch");
        if (q_ != rhs.q_)
            throw std::invalid_argument("SparseMat: product modulus mismatch");
        Eigen::SparseMatrix<i64> a = to_eigen(), b = rhs.to_eigen();
        Eigen::SparseMatrix<i64> c = a * b;  // integer sums; reduced mod q below
        std::vector<Entry> t;
        for (int k = 0; k < c.outerSize(); ++k)
            for (Eigen::SparseMatrix<i64>::InnerIterator it(c, k); it; ++it) {
                i64 v = mod_reduce(it.value(), q_);
                if (v != 0) t.push_back({(int)it.row(), (int)it.col(), v});
            }
        return SparseMat(rows_, rhs.cols_, q_, std::move(t));
    }

    /// Matrix-vector product mod q.
    std::vector<i64> apply(const std::vector<i64>& x) const {
        if ((int)x.size() != cols_)
            throw std::invalid_argument("SparseMat: vector length mismatch");
        std::vector<i64> y(rows_, 0);
        for (const Entry& e : entries_)
            y[e.row] = mod_reduce(y[e.row] + e.val * mod_reduce(x[e.col], q_), q_);
        return y;
    }

    Eigen::SparseMatrix<i64> to_eigen() const {
        std::vector<Eigen::Triplet<i64>> trips;
        trips.reserve(entries_.size());
        for (const Entry& e : entries_) trips.emplace_back(e.row, e.col, e.val);
        Eigen::SparseMatrix<i64> m(rows_, cols_);
        m.setFromTriplets(trips.begin(), trips.end());
        return m;
    }

    /// Submatrix on the given (ordered) row/column index lists.
    SparseMat restricted(const std::vector<int>& keep_rows,
                         const std::vector<int>& keep_cols) const {
        std::vector<int> rmap(rows_, -1), cmap(cols_, -1);
        for (int i = 0; i < (int)keep_rows.size(); ++i) rmap[keep_rows[i]] = i;
        for (int j = 0; j < (int)keep_cols.size(); ++j) cmap[keep_cols[j]] = j;
        std::vector<Entry> t;
        for (const Entry& e : entries_)
            if (rmap[e.row] >= 0 && cmap[e.col] >= 0)
                t.push_back({rmap[e.row], cmap[e.col], e.val});
        return SparseMat((int)keep_rows.size(), (int)keep_cols.size(), q_, std::move(t));
    }

    friend bool operator==(const SparseMat& a, const SparseMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.q_ == b.q_ &&
               a.entries_ == b.entries_;
    }

    /// Text exchange format: header "rows cols q", then one "r c v" triple per line.
    void write_text(std::ostream& os) const;
    static SparseMat read_text(std::istream& is);

private:
    void check_shape() const {
        if (rows_ < 0 || cols_ < 0) throw std::invalid_argument("SparseMat: negative shape");
        if (q_ < 2) throw std::invalid_argument("SparseMat: modulus must be >= 2");
    }

    int rows_ = 0;
    int cols_ = 0;
    i64 q_ = 2;
    std::vector<Entry> entries_;  // sorted by (row, col), values nonzero
};

}  // namespace qchain
