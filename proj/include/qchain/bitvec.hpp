#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace qchain {

/// Fixed-length bit vector over F_2 backed by 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }

    bool get(int i) const { return w_[i >> 6] >> (i & 63) & 1; }
    void set(int i, bool v) {
        if (v)
            w_[i >> 6] |= 1ull << (i & 63);
        else
            w_[i >> 6] &= ~(1ull << (i & 63));
    }
    void flip(int i) { w_[i >> 6] ^= 1ull << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    int popcount() const {
        int c = 0;
        for (std::uint64_t x : w_) c += std::popcount(x);
        return c;
    }

    bool any() const {
        for (std::uint64_t x : w_)
            if (x) return true;
        return false;
    }

    /// Parity of the AND with another vector (the F_2 inner product).
    bool dot(const BitVec& o) const {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
        return std::popcount(acc) & 1;
    }

    std::vector<int> ones() const {
        std::vector<int> idx;
        for (int i = 0; i < n_; ++i)
            if (get(i)) idx.push_back(i);
        return idx;
    }

    friend bool operator==(const BitVec&, const BitVec&) = default;
    friend auto operator<=>(const BitVec& a, const BitVec& b) {
        return a.w_ <=> b.w_;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace qchain
