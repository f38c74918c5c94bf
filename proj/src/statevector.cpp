#include "vqesim/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace vqesim {

namespace {

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

inline double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) throw std::invalid_argument("unsupported qubit count");
  amplitudes_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
  amplitudes_(0) = 1.0;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::uint64_t>(amplitudes_.size()) != dim()) {
    throw std::invalid_argument("amplitude count does not match 2^n_qubits");
  }
}

std::uint64_t basis_index(std::string_view label) {
  std::uint64_t index = 0;
  int qubit = 0;
  for (char ch : label) {
    if (ch == ' ') continue;
    if (ch != '0' && ch != '1') throw std::invalid_argument("basis label must contain only 0 and 1");
    if (ch == '1') index |= std::uint64_t{1} << qubit;
    ++qubit;
  }
  return index;
}

StateVector basis_state(std::string_view label) {
  int n = 0;
  for (char ch : label) n += ch != ' ';
  if (n == 0) throw std::invalid_argument("empty basis label");
  StateVector state(n);
  state.amplitudes().setZero();
  state.amplitudes()(static_cast<Eigen::Index>(basis_index(label))) = 1.0;
  return state;
}

CompiledWord::CompiledWord(const PauliWord& word)
    : x(word.x_mask()), z(word.z_mask()), phase(kIPow[word.y_count() % 4]) {}

void apply_word(const CompiledWord& word, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
  const auto dim = static_cast<std::uint64_t>(in.size());
  out.resize(in.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    out(static_cast<Eigen::Index>(b ^ word.x)) = word.phase * parity_sign(b & word.z) * in(static_cast<Eigen::Index>(b));
  }
}

void rotate(const CompiledWord& word, double phi, Eigen::VectorXcd& amplitudes) {
  const double c = std::cos(phi);
  const Complex is = Complex(0, std::sin(phi)) * word.phase;
  const auto dim = static_cast<std::uint64_t>(amplitudes.size());
  Complex* psi = amplitudes.data();
  if (word.x == 0) {
    const Complex plus = c + is, minus = c - is;
    for (std::uint64_t b = 0; b < dim; ++b) psi[b] *= (std::popcount(b & word.z) & 1) ? minus : plus;
    return;
  }
  const std::uint64_t low = word.x & (~word.x + 1);
  for (std::uint64_t hi = 0; hi < dim; hi += 2 * low) {
    for (std::uint64_t b = hi; b < hi + low; ++b) {
      const std::uint64_t partner = b ^ word.x;
      const Complex u = psi[b];
      const Complex v = psi[partner];
      psi[b] = c * u + is * parity_sign(partner & word.z) * v;
      psi[partner] = c * v + is * parity_sign(b & word.z) * u;
    }
  }
}

StateVector& apply_pauli_exponential(StateVector& state, const PauliTerm& term, double theta) {
  if (std::abs(term.coefficient.real()) > 1e-12) {
    throw std::invalid_argument("Pauli exponential needs a purely imaginary coefficient");
  }
  if (term.word.max_qubit() >= state.n_qubits()) throw std::out_of_range("generator exceeds register");
  rotate(CompiledWord(term.word), theta * term.coefficient.imag(), state.amplitudes());
  return state;
}

std::size_t AnsatzState::n_parameters() const {
  std::size_t n = 0;
  for (const auto& s : steps) n = std::max(n, s.parameter + 1);
  return n;
}

CompiledAnsatz compile(const AnsatzState& ansatz) {
  if (ansatz.n_trotter < 1) throw std::invalid_argument("n_trotter must be >= 1");
  CompiledAnsatz out;
  out.n_qubits = ansatz.n_qubits();
  out.reference_index = basis_index(ansatz.reference);
  out.n_trotter = ansatz.n_trotter;
  out.n_parameters = ansatz.n_parameters();
  for (const auto& step : ansatz.steps) {
    if (step.generator.max_qubit() >= out.n_qubits) throw std::out_of_range("generator exceeds register");
    for (const auto& [word, c] : step.generator.terms()) {
      if (std::abs(c.real()) > 1e-12) throw std::invalid_argument("ansatz generator is not anti-Hermitian");
      out.rotations.push_back({CompiledWord(word), c.imag(), step.parameter});
    }
  }
  return out;
}

StateVector prepare(const CompiledAnsatz& ansatz, const Eigen::VectorXd& theta) {
  if (static_cast<std::size_t>(theta.size()) != ansatz.n_parameters) {
    throw std::invalid_argument("parameter vector has " + std::to_string(theta.size()) + " entries, ansatz needs " +
                                std::to_string(ansatz.n_parameters));
  }
  StateVector state(ansatz.n_qubits);
  state.amplitudes().setZero();
  state.amplitudes()(static_cast<Eigen::Index>(ansatz.reference_index)) = 1.0;
  const double slice = 1.0 / ansatz.n_trotter;
  for (int t = 0; t < ansatz.n_trotter; ++t) {
    for (const auto& r : ansatz.rotations) {
      rotate(r.word, theta(static_cast<Eigen::Index>(r.parameter)) * r.alpha * slice, state.amplitudes());
    }
  }
  return state;
}

StateVector& apply_ansatz(StateVector& state, const AnsatzState& ansatz, const Eigen::VectorXd& theta) {
  const CompiledAnsatz compiled = compile(ansatz);
  if (state.n_qubits() != compiled.n_qubits) throw std::invalid_argument("state and ansatz sizes differ");
  if (static_cast<std::size_t>(theta.size()) != compiled.n_parameters) {
    throw std::invalid_argument("parameter vector length does not match the ansatz");
  }
  const double slice = 1.0 / compiled.n_trotter;
  for (int t = 0; t < compiled.n_trotter; ++t) {
    for (const auto& r : compiled.rotations) {
      rotate(r.word, theta(static_cast<Eigen::Index>(r.parameter)) * r.alpha * slice, state.amplitudes());
    }
  }
  return state;
}

double expectation(const StateVector& state, const QubitOperator& op) {
  if (op.max_qubit() >= state.n_qubits()) throw std::out_of_range("operator exceeds register");
  const auto& psi = state.amplitudes();
  const auto dim = state.dim();
  Complex total = 0.0;
  for (const auto& [word, c] : op.terms()) {
    const CompiledWord w(word);
    Complex acc = 0.0;
    for (std::uint64_t b = 0; b < dim; ++b) {
      acc += std::conj(psi(static_cast<Eigen::Index>(b ^ w.x))) * parity_sign(b & w.z) *
             psi(static_cast<Eigen::Index>(b));
    }
    total += c * w.phase * acc;
  }
  if (std::abs(total.imag()) > 1e-9) {
    throw std::domain_error("expectation has imaginary part " + std::to_string(total.imag()) +
                            "; operator is not Hermitian");
  }
  return total.real();
}

}  // namespace vqesim
