#pragma once

#include "vqesim/pauli.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vqesim {

/// Dense amplitudes over 2^n basis states; qubit 0 is the least-significant
/// bit of the basis index.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() { return amplitudes_; }
  Complex operator[](std::uint64_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  double squared_norm() const { return amplitudes_.squaredNorm(); }

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amplitudes_;
};

/// Label "q0 q1 ... q_{n-1}" of '0'/'1' characters (spaces ignored).
StateVector basis_state(std::string_view label);
std::uint64_t basis_index(std::string_view label);

/// Pauli word reduced to bit masks: P|b> = phase * (-1)^{popcount(b & z)} |b ^ x>.
struct CompiledWord {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  Complex phase{1.0, 0.0};  // i^{#Y}

  explicit CompiledWord(const PauliWord& word);
  CompiledWord() = default;
};

/// out = P in (out may not alias in).
void apply_word(const CompiledWord& word, const Eigen::VectorXcd& in, Eigen::VectorXcd& out);

/// in-place exp(i phi P) with phi real: cos(phi) + i sin(phi) P.
void rotate(const CompiledWord& word, double phi, Eigen::VectorXcd& amplitudes);

/// exp(theta * c * P) for c = i alpha; throws std::invalid_argument when the
/// coefficient has a real part above 1e-12.
StateVector& apply_pauli_exponential(StateVector& state, const PauliTerm& term, double theta);

/// One ansatz factor exp(theta_k A) with A anti-Hermitian.
struct AnsatzStep {
  QubitOperator generator;
  std::size_t parameter = 0;
};

/// Steps act on the reference in list order: steps.front() is applied first,
/// i.e. it is the rightmost factor of the operator product. Within a step the
/// Pauli exponentials follow canonical term order.
struct AnsatzState {
  std::string reference;
  std::vector<AnsatzStep> steps;
  int n_trotter = 1;

  int n_qubits() const { return static_cast<int>(reference.size()); }
  std::size_t n_parameters() const;
};

/// Flattened ansatz: every single-word rotation in application order for one
/// Trotter slice.
struct CompiledAnsatz {
  struct Rotation {
    CompiledWord word;
    double alpha;  // generator coefficient is i*alpha
    std::size_t parameter;
  };
  int n_qubits = 0;
  std::uint64_t reference_index = 0;
  int n_trotter = 1;
  std::size_t n_parameters = 0;
  std::vector<Rotation> rotations;
};

CompiledAnsatz compile(const AnsatzState& ansatz);

StateVector& apply_ansatz(StateVector& state, const AnsatzState& ansatz, const Eigen::VectorXd& theta);
/// Prepares the ansatz state from its reference.
StateVector prepare(const CompiledAnsatz& ansatz, const Eigen::VectorXd& theta);

/// Real expectation <psi|op|psi>; throws std::domain_error if the imaginary
/// part exceeds 1e-9.
double expectation(const StateVector& state, const QubitOperator& op);

}  // namespace vqesim
