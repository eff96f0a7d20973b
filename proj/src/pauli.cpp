#include "qchain/pauli.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qchain {

PauliOp::PauliOp(i64 q, std::vector<i64> x, std::vector<i64> z, int phase)
    : q_(q), phase_(((phase % 4) + 4) % 4), x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size())
        throw std::invalid_argument("PauliOp: exponent vectors differ in length");
    for (i64& v : x_) v = mod_reduce(v, q_);
    for (i64& v : z_) v = mod_reduce(v, q_);
    if (q_ != 2) phase_ = 0;
}

PauliOp PauliOp::x_site(i64 q, int n, int site, i64 e) {
    PauliOp p(q, n);
    p.x_[site] = mod_reduce(e, q);
    return p;
}

PauliOp PauliOp::z_site(i64 q, int n, int site, i64 e) {
    PauliOp p(q, n);
    p.z_[site] = mod_reduce(e, q);
    return p;
}

PauliOp PauliOp::x_word(i64 q, const std::vector<i64>& exps) {
    return PauliOp(q, exps, std::vector<i64>(exps.size(), 0));
}

PauliOp PauliOp::z_word(i64 q, const std::vector<i64>& exps) {
    return PauliOp(q, std::vector<i64>(exps.size(), 0), exps);
}

bool PauliOp::is_identity() const {
    if (phase_ != 0) return false;
    for (i64 v : x_)
        if (v) return false;
    for (i64 v : z_)
        if (v) return false;
    return true;
}

std::vector<int> PauliOp::support() const {
    std::vector<int> s;
    for (int i = 0; i < sites(); ++i)
        if (x_[i] || z_[i]) s.push_back(i);
    return s;
}

int PauliOp::weight() const { return (int)support().size(); }

i64 PauliOp::symplectic_form(const PauliOp& other) const {
    if (q_ != other.q_ || sites() != other.sites())
        throw std::invalid_argument("PauliOp: mismatched operands");
    i64 acc = 0;
    for (int i = 0; i < sites(); ++i)
        acc = mod_reduce(acc + x_[i] * other.z_[i] - z_[i] * other.x_[i], q_);
    return acc;
}

PauliOp PauliOp::operator*(const PauliOp& other) const {
    if (q_ != other.q_ || sites() != other.sites())
        throw std::invalid_argument("PauliOp: mismatched operands");
    PauliOp r(q_, sites());
    // Z^z1 X^x2 = w^{z1.x2} X^x2 Z^z1 with w = e^{2 pi i/q}; for q = 2 this
    // contributes i^{2*(z1.x2)} to the tracked phase.
    i64 cross = 0;
    for (int i = 0; i < sites(); ++i) {
        cross += z_[i] * other.x_[i];
        r.x_[i] = mod_reduce(x_[i] + other.x_[i], q_);
        r.z_[i] = mod_reduce(z_[i] + other.z_[i], q_);
    }
    if (q_ == 2) r.phase_ = (int)(((phase_ + other.phase_ + 2 * cross) % 4 + 4) % 4);
    return r;
}

bool PauliOp::is_hermitian() const {
    if (q_ != 2) throw std::domain_error("PauliOp::is_hermitian: q = 2 only");
    i64 overlap = 0;
    for (int i = 0; i < sites(); ++i) overlap += x_[i] & z_[i];
    return (phase_ & 1) == (overlap & 1);
}

int PauliOp::sign() const {
    if (!is_hermitian()) throw std::domain_error("PauliOp::sign: not Hermitian");
    i64 overlap = 0;
    for (int i = 0; i < sites(); ++i) overlap += x_[i] & z_[i];
    return ((phase_ - overlap) % 4 + 4) % 4 == 0 ? +1 : -1;
}

PauliOp PauliOp::negated() const {
    PauliOp r = *this;
    if (q_ != 2) throw std::domain_error("PauliOp::negated: q = 2 only");
    r.phase_ = (phase_ + 2) % 4;
    return r;
}

nlohmann::json PauliOp::to_json() const {
    nlohmann::json j;
    j["q"] = q_;
    j["n"] = sites();
    j["phase"] = phase_;
    auto xs = nlohmann::json::array(), zs = nlohmann::json::array();
    for (int i = 0; i < sites(); ++i) {
        if (x_[i]) xs.push_back({i, x_[i]});
        if (z_[i]) zs.push_back({i, z_[i]});
    }
    j["x"] = std::move(xs);
    j["z"] = std::move(zs);
    return j;
}

PauliOp PauliOp::from_json(const nlohmann::json& j) {
    i64 q = j.at("q").get<i64>();
    int n = j.at("n").get<int>();
    PauliOp p(q, n);
    std::vector<i64> x(n, 0), z(n, 0);
    for (const auto& e : j.at("x")) x[e.at(0).get<int>()] = e.at(1).get<i64>();
    for (const auto& e : j.at("z")) z[e.at(0).get<int>()] = e.at(1).get<i64>();
    return PauliOp(q, std::move(x), std::move(z), j.at("phase").get<int>());
}

}  // namespace qchain
