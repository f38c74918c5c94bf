#include "vqesim/circuit.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace vqesim {

int GateSequence::cnot_count() const {
  int n = 0;
  for (const auto& g : gates) n += g.kind == GateKind::Cnot;
  return n;
}

int GateSequence::single_qubit_count() const { return static_cast<int>(gates.size()) - cnot_count(); }

GateSequence staircase(const PauliTerm& term, double theta) {
  if (std::abs(term.coefficient.real()) > 1e-12) {
    throw std::invalid_argument("staircase needs a purely imaginary coefficient");
  }
  const double phi = theta * term.coefficient.imag();
  GateSequence seq;
  const auto& entries = term.word.entries();
  if (entries.empty()) {
    seq.global_phase = std::exp(Complex(0, phi));
    return seq;
  }
  for (auto [q, a] : entries) {
    if (a == Axis::X) seq.gates.push_back({GateKind::H, q});
    if (a == Axis::Y) seq.gates.push_back({GateKind::RxHalfPi, q});
  }
  for (std::size_t k = 0; k + 1 < entries.size(); ++k) {
    seq.gates.push_back({GateKind::Cnot, entries[k + 1].first, entries[k].first});
  }
  seq.gates.push_back({GateKind::Rz, entries.back().first, -1, -2.0 * phi});
  for (std::size_t k = entries.size() - 1; k > 0; --k) {
    seq.gates.push_back({GateKind::Cnot, entries[k].first, entries[k - 1].first});
  }
  for (auto [q, a] : entries) {
    if (a == Axis::X) seq.gates.push_back({GateKind::H, q});
    if (a == Axis::Y) seq.gates.push_back({GateKind::RxMinusHalfPi, q});
  }
  return seq;
}

namespace {

// Applies a 2x2 unitary [[m00, m01], [m10, m11]] to one qubit.
void apply_single(Eigen::VectorXcd& psi, int qubit, Complex m00, Complex m01, Complex m10, Complex m11) {
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const auto dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t hi = 0; hi < dim; hi += 2 * bit) {
    for (std::uint64_t b = hi; b < hi + bit; ++b) {
      const auto i0 = static_cast<Eigen::Index>(b), i1 = static_cast<Eigen::Index>(b | bit);
      const Complex u = psi(i0), v = psi(i1);
      psi(i0) = m00 * u + m01 * v;
      psi(i1) = m10 * u + m11 * v;
    }
  }
}

}  // namespace

StateVector& apply_gates(StateVector& state, const GateSequence& sequence) {
  auto& psi = state.amplitudes();
  const double r = std::numbers::sqrt2 / 2.0;
  const Complex mi(0, -r);
  for (const auto& g : sequence.gates) {
    if (g.target >= state.n_qubits() || g.control >= state.n_qubits()) {
      throw std::out_of_range("gate acts outside the register");
    }
    switch (g.kind) {
      case GateKind::H: apply_single(psi, g.target, r, r, r, -r); break;
      case GateKind::RxHalfPi: apply_single(psi, g.target, r, mi, mi, r); break;
      case GateKind::RxMinusHalfPi: apply_single(psi, g.target, r, -mi, -mi, r); break;
      case GateKind::Rz: {
        const Complex e = std::exp(Complex(0, -g.angle / 2));
        apply_single(psi, g.target, e, 0.0, 0.0, std::conj(e));
        break;
      }
      case GateKind::Cnot: {
        const std::uint64_t c = std::uint64_t{1} << g.control;
        const std::uint64_t t = std::uint64_t{1} << g.target;
        const auto dim = static_cast<std::uint64_t>(psi.size());
        for (std::uint64_t b = 0; b < dim; ++b) {
          if ((b & c) && !(b & t)) std::swap(psi(static_cast<Eigen::Index>(b)), psi(static_cast<Eigen::Index>(b | t)));
        }
        break;
      }
    }
  }
  psi *= sequence.global_phase;
  return state;
}

GateCounts staircase_counts(const PauliWord& word) {
  if (word.is_identity()) return {};
  const long w = word.weight();
  long basis_changes = 0;
  for (auto [q, a] : word.entries()) basis_changes += a != Axis::Z;
  return {2 * (w - 1), 2 * basis_changes + 1, 0};
}

GateCounts count_ansatz_gates(const AnsatzState& ansatz, CountingConvention convention) {
  GateCounts total;
  if (convention == CountingConvention::PerGenerator) {
    for (const auto& step : ansatz.steps) {
      for (const auto& [word, c] : step.generator.terms()) total += staircase_counts(word);
    }
  } else {
    std::set<PauliWord> distinct;
    for (const auto& step : ansatz.steps) {
      for (const auto& [word, c] : step.generator.terms()) distinct.insert(word);
    }
    for (const auto& word : distinct) total += staircase_counts(word);
  }
  total.cnot *= ansatz.n_trotter;
  total.single_qubit *= ansatz.n_trotter;
  total.parameters = static_cast<long>(ansatz.n_parameters());
  return total;
}

GateSequence synthesize(const AnsatzState& ansatz, const Eigen::VectorXd& theta) {
  if (static_cast<std::size_t>(theta.size()) != ansatz.n_parameters()) {
    throw std::invalid_argument("parameter vector length does not match the ansatz");
  }
  GateSequence out;
  for (int t = 0; t < ansatz.n_trotter; ++t) {
    for (const auto& step : ansatz.steps) {
      const double angle = theta(static_cast<Eigen::Index>(step.parameter)) / ansatz.n_trotter;
      for (const auto& [word, c] : step.generator.terms()) {
        auto piece = staircase({c, word}, angle);
        out.gates.insert(out.gates.end(), piece.gates.begin(), piece.gates.end());
        out.global_phase *= piece.global_phase;
      }
    }
  }
  return out;
}

}  // namespace vqesim
