#include "qchain/dense_oracle.hpp"

#include <bit>
#include <stdexcept>

namespace qchain::dense {

namespace {

constexpr int kMaxQubits = 18;

void check_size(int n, const char* where) {
    if (n < 0 || n > kMaxQubits)
        throw std::invalid_argument(std::string(where) +
                                    ": dense oracle is limited to 18 qubits");
}

std::complex<double> i_power(int t) {
    switch (((t % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

std::uint64_t mask_of(const std::vector<i64>& exps) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] % 2) m |= 1ull << i;
    return m;
}

}  // namespace

Eigen::VectorXcd basis_state(int n, std::uint64_t index) {
    check_size(n, "basis_state");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1ll << n);
    v((Eigen::Index)index) = 1.0;
    return v;
}

Eigen::VectorXcd apply_pauli(const PauliOp& p, const Eigen::VectorXcd& v) {
    if (p.modulus() != 2) throw std::domain_error("dense::apply_pauli: q = 2 only");
    const int n = p.sites();
    check_size(n, "apply_pauli");
    const std::uint64_t xm = mask_of(p.x()), zm = mask_of(p.z());
    const std::complex<double> ph = i_power(p.phase_i_power());
    Eigen::VectorXcd w(v.size());
    for (std::uint64_t b = 0; b < (std::uint64_t)v.size(); ++b) {
        double sign = std::popcount(b & zm) & 1 ? -1.0 : 1.0;
        w((Eigen::Index)(b ^ xm)) = ph * sign * v((Eigen::Index)b);
    }
    return w;
}

Eigen::VectorXcd apply_gate(const Gate& g, const Eigen::VectorXcd& v, bool inverse) {
    const int n = (int)std::countr_zero((std::uint64_t)v.size());
    if (const auto* pe = std::get_if<PauliExpGate>(&g)) {
        Eigen::VectorXcd qv = apply_pauli(pe->q, v);
        return inverse ? ((v - qv) / std::sqrt(2.0)).eval()
                       : ((v + qv) / std::sqrt(2.0)).eval();
    }
    if (const auto* cx = std::get_if<CxGate>(&g)) {
        if (cx->coeff % 2 == 0) return v;
        Eigen::VectorXcd w(v.size());
        const std::uint64_t cm = 1ull << cx->control, tm = 1ull << cx->target;
        for (std::uint64_t b = 0; b < (std::uint64_t)v.size(); ++b)
            w((Eigen::Index)((b & cm) ? b ^ tm : b)) = v((Eigen::Index)b);
        return w;
    }
    if (const auto* h = std::get_if<HadamardGate>(&g)) {
        Eigen::VectorXcd w(v.size());
        const std::uint64_t m = 1ull << h->site;
        const double s = 1.0 / std::sqrt(2.0);
        for (std::uint64_t b = 0; b < (std::uint64_t)v.size(); ++b) {
            if (b & m) continue;
            auto lo = v((Eigen::Index)b), hi = v((Eigen::Index)(b | m));
            w((Eigen::Index)b) = s * (lo + hi);
            w((Eigen::Index)(b | m)) = s * (lo - hi);
        }
        return w;
    }
    if (const auto* sc = std::get_if<ScalarGate>(&g)) {
        if (mod_reduce(sc->unit, 2) != 1)
            throw std::domain_error("dense::apply_gate: scalar gate with q = 2");
        return v;
    }
    const auto& perm = std::get<PermGate>(g).perm;
    Eigen::VectorXcd w(v.size());
    for (std::uint64_t b = 0; b < (std::uint64_t)v.size(); ++b) {
        std::uint64_t nb = 0;
        for (int i = 0; i < n; ++i)
            if (b >> i & 1) nb |= 1ull << (inverse ? (int)(std::find(perm.begin(), perm.end(), i) - perm.begin()) : perm[i]);
        w((Eigen::Index)nb) = v((Eigen::Index)b);
    }
    return w;
}

Eigen::VectorXcd apply_circuit(const CliffordCircuit& c, Eigen::VectorXcd v,
                               bool inverse) {
    if (!inverse) {
        for (const auto& round : c.rounds())
            for (const Gate& g : round) v = apply_gate(g, v, false);
    } else {
        const auto& rounds = c.rounds();
        for (auto rit = rounds.rbegin(); rit != rounds.rend(); ++rit)
            for (auto git = rit->rbegin(); git != rit->rend(); ++git)
                v = apply_gate(*git, v, true);
    }
    return v;
}

Eigen::VectorXcd stabilizer_state(const StabilizerGroup& g) {
    const int n = g.sites();
    check_size(n, "stabilizer_state");
    const double floor_norm2 = 0.5 / std::pow(2.0, n);
    for (std::uint64_t idx = 0; idx < (1ull << n); ++idx) {
        Eigen::VectorXcd v = basis_state(n, idx);
        for (const PauliOp& gen : g.generators()) v = 0.5 * (v + apply_pauli(gen, v));
        double norm2 = v.squaredNorm();
        if (norm2 > floor_norm2) return v / std::sqrt(norm2);
    }
    throw std::logic_error("dense::stabilizer_state: empty joint eigenspace");
}

std::complex<double> expectation(const Eigen::VectorXcd& v, const PauliOp& p) {
    return v.dot(apply_pauli(p, v));  // Eigen's dot conjugates the left side
}

Eigen::MatrixXcd reduced_density(const Eigen::VectorXcd& v,
                                 const std::vector<int>& region) {
    const int n = (int)std::countr_zero((std::uint64_t)v.size());
    if ((int)region.size() > 12)
        throw std::invalid_argument("dense::reduced_density: region too large");
    std::vector<int> inside = region, outside;
    std::sort(inside.begin(), inside.end());
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(inside.begin(), inside.end(), i)) outside.push_back(i);
    const std::uint64_t din = 1ull << inside.size(), dout = 1ull << outside.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero((Eigen::Index)din, (Eigen::Index)dout);
    for (std::uint64_t b = 0; b < (std::uint64_t)v.size(); ++b) {
        std::uint64_t rin = 0, rout = 0;
        for (std::size_t k = 0; k < inside.size(); ++k)
            if (b >> inside[k] & 1) rin |= 1ull << k;
        for (std::size_t k = 0; k < outside.size(); ++k)
            if (b >> outside[k] & 1) rout |= 1ull << k;
        m((Eigen::Index)rin, (Eigen::Index)rout) = v((Eigen::Index)b);
    }
    return m * m.adjoint();
}

Eigen::MatrixXcd pauli_matrix(const PauliOp& p) {
    if (p.modulus() != 2) throw std::domain_error("dense::pauli_matrix: q = 2 only");
    if (p.sites() > 10)
        throw std::invalid_argument("dense::pauli_matrix: n > 10");
    const std::uint64_t dim = 1ull << p.sites();
    const std::uint64_t xm = mask_of(p.x()), zm = mask_of(p.z());
    const std::complex<double> ph = i_power(p.phase_i_power());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero((Eigen::Index)dim, (Eigen::Index)dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        double sign = std::popcount(b & zm) & 1 ? -1.0 : 1.0;
        m((Eigen::Index)(b ^ xm), (Eigen::Index)b) = ph * sign;
    }
    return m;
}

}  // namespace qchain::dense
