#pragma once

#include <cstdint>
#include <stdexcept>

namespace qchain {

using i64 = std::int64_t;

/// Reduce v into the canonical residue range [0, q).
inline i64 mod_reduce(i64 v, i64 q) {
    i64 r = v % q;
    return r < 0 ? r + q : r;
}

inline bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(i64 p, const char* where) {
    if (!is_prime(p))
        throw std::invalid_argument(std::string(where) + ": modulus " + std::to_string(p) +
                                    " is not prime");
}

/// Modular inverse for prime p (extended Euclid).
inline i64 inv_mod(i64 a, i64 p) {
    a = mod_reduce(a, p);
    if (a == 0) throw std::domain_error("inv_mod: zero has no inverse");
    i64 old_r = a, r = p;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 quo = old_r / r;
        i64 tr = old_r - quo * r; old_r = r; r = tr;
        i64 ts = old_s - quo * s; old_s = s; s = ts;
    }
    return mod_reduce(old_s, p);
}

}  // namespace qchain
