#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qchain/modular.hpp"

namespace qchain {

/**
 * Generalized Pauli word i^phase * X^x * Z^z on n qudits of dimension q,
 * stored as exponent vectors mod q.  For q = 2 the phase (a power of i) is
 * tracked exactly through products; for q > 2 only the symplectic data is
 * kept and the phase stays 0 (the commutator phase has no role in any
 * operation implemented here).
 */
class PauliOp {
public:
    PauliOp() = default;
    PauliOp(i64 q, int n) : q_(q), phase_(0), x_(n, 0), z_(n, 0) {}
    PauliOp(i64 q, std::vector<i64> x, std::vector<i64> z, int phase = 0);

    static PauliOp identity(i64 q, int n) { return PauliOp(q, n); }
    /// X^e on one site.
    static PauliOp x_site(i64 q, int n, int site, i64 e = 1);
    static PauliOp z_site(i64 q, int n, int site, i64 e = 1);
    /// X-type word from an exponent vector (zeros elsewhere implied).
    static PauliOp x_word(i64 q, const std::vector<i64>& exps);
    static PauliOp z_word(i64 q, const std::vector<i64>& exps);

    i64 modulus() const { return q_; }
    int sites() const { return (int)x_.size(); }
    const std::vector<i64>& x() const { return x_; }
    const std::vector<i64>& z() const { return z_; }
    i64 x_at(int i) const { return x_[i]; }
    i64 z_at(int i) const { return z_[i]; }
    int phase_i_power() const { return phase_; }

    bool is_identity() const;
    /// Sites where either exponent is nonzero.
    std::vector<int> support() const;
    int weight() const;

    /// Symplectic commutator exponent <x1,z2> - <z1,x2> mod q; the pair
    /// commutes iff this is 0.
    i64 symplectic_form(const PauliOp& other) const;
    bool commutes_with(const PauliOp& other) const {
        return symplectic_form(other) == 0;
    }

    PauliOp operator*(const PauliOp& other) const;

    /// q = 2 helpers.  A word is Hermitian iff phase parity matches the
    /// X/Z overlap parity; the sign is the coefficient in front of the
    /// canonical Hermitian word i^{x.z} X^x Z^z.
    bool is_hermitian() const;
    int sign() const;
    PauliOp negated() const;

    friend bool operator==(const PauliOp&, const PauliOp&) = default;

    nlohmann::json to_json() const;
    static PauliOp from_json(const nlohmann::json& j);

private:
    i64 q_ = 2;
    int phase_ = 0;  // power of i mod 4 (q = 2 only)
    std::vector<i64> x_, z_;
};

}  // namespace qchain
