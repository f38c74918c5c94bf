#pragma once

#include "vqesim/fcidump.hpp"
#include "vqesim/pauli.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <random>
#include <string>

namespace vqesim::testing {

inline std::filesystem::path data_path(const std::string& name) { return std::filesystem::path(VQESIM_DATA_DIR) / name; }

inline MolecularProblem fixture(const std::string& stem) { return read_fcidump(data_path(stem + ".fcidump")); }
inline ReferenceData fixture_reference(const std::string& stem) { return read_reference(data_path(stem + ".ref.json")); }

/// Textbook 2x2 Pauli matrices, kept independent of the library's kernels.
inline Eigen::Matrix2cd pauli_matrix(char axis) {
  const Complex i(0, 1);
  Eigen::Matrix2cd m;
  switch (axis) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m.setIdentity();
  }
  return m;
}

/// Kronecker product P_{n-1} x ... x P_0 (qubit 0 least significant).
inline Eigen::MatrixXcd kron_word(const PauliWord& word, int n_qubits) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = n_qubits - 1; q >= 0; --q) {
    const auto a = word.at(q);
    const Eigen::Matrix2cd p = pauli_matrix(a ? axis_char(*a) : 'I');
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block<2, 2>(2 * r, 2 * c) = out(r, c) * p;
    out = std::move(next);
  }
  return out;
}

inline Eigen::MatrixXcd dense_oracle(const QubitOperator& op, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [word, c] : op.terms()) m += c * kron_word(word, n_qubits);
  return m;
}

inline PauliWord random_word(std::mt19937_64& rng, int n_qubits) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<PauliWord::Entry> entries;
  for (int q = 0; q < n_qubits; ++q) {
    const int a = pick(rng);
    if (a) entries.emplace_back(q, static_cast<Axis>(a));
  }
  return PauliWord(std::move(entries));
}

inline QubitOperator random_operator(std::mt19937_64& rng, int n_qubits, int n_terms) {
  std::normal_distribution<double> gauss;
  QubitOperator op;
  for (int t = 0; t < n_terms; ++t) op.accumulate(random_word(rng, n_qubits), Complex(gauss(rng), gauss(rng)));
  return simplify(op);
}

/// Pauli-sum matrix of a qubit generator exponentiated densely.
inline Eigen::MatrixXcd dense_exp(const Eigen::MatrixXcd& generator) {
  // anti-Hermitian A = i H: exp(A) = V exp(i w) V^dagger
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((Complex(0, -1) * generator).eval());
  const Eigen::VectorXcd phases = (Complex(0, 1) * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace vqesim::testing
