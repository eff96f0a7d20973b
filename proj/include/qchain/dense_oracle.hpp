#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qchain/pauli.hpp"
#include "qchain/stabilizer.hpp"

namespace qchain::dense {

/// Ground truth for the symbolic layer: explicit statevectors up to 18
/// qubits, explicit matrices up to 10.  Everything here is q = 2.

Eigen::VectorXcd basis_state(int n, std::uint64_t index);

Eigen::VectorXcd apply_pauli(const PauliOp& p, const Eigen::VectorXcd& v);

Eigen::VectorXcd apply_gate(const Gate& g, const Eigen::VectorXcd& v,
                            bool inverse = false);

/// U v (forward) or U^dag v (inverse) for the whole circuit.
Eigen::VectorXcd apply_circuit(const CliffordCircuit& c, Eigen::VectorXcd v,
                               bool inverse = false);

/// The joint +1 eigenvector of the group (projector applied to the first
/// basis state with nonvanishing projection).
Eigen::VectorXcd stabilizer_state(const StabilizerGroup& g);

std::complex<double> expectation(const Eigen::VectorXcd& v, const PauliOp& p);

/// rho_X for the pure state v on the given qubits (|region| <= 12).
Eigen::MatrixXcd reduced_density(const Eigen::VectorXcd& v,
                                 const std::vector<int>& region);

/// Dense matrix of a Pauli word (n <= 10).
Eigen::MatrixXcd pauli_matrix(const PauliOp& p);

}  // namespace qchain::dense
