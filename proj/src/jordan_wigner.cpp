#include "vqesim/jordan_wigner.hpp"

#include <array>
#include <stdexcept>

namespace vqesim {

namespace {

// JW image of a single ladder operator as two weighted words.
std::array<PauliTerm, 2> ladder_image(const LadderOp& op) {
  std::vector<PauliWord::Entry> x_entries, y_entries;
  for (int k = 0; k < op.mode; ++k) {
    x_entries.emplace_back(k, Axis::Z);
    y_entries.emplace_back(k, Axis::Z);
  }
  x_entries.emplace_back(op.mode, Axis::X);
  y_entries.emplace_back(op.mode, Axis::Y);
  const Complex y_coeff = op.dagger ? Complex(0, -0.5) : Complex(0, 0.5);
  return {PauliTerm{0.5, PauliWord(std::move(x_entries))}, PauliTerm{y_coeff, PauliWord(std::move(y_entries))}};
}

}  // namespace

QubitOperator jordan_wigner(const FermionOperator& op, int n_qubits) {
  const int top = op.max_mode();
  if (top >= n_qubits) {
    throw std::out_of_range("mode " + std::to_string(top) + " exceeds " + std::to_string(n_qubits) + " qubits");
  }
  std::vector<std::array<PauliTerm, 2>> creators, annihilators;
  for (int p = 0; p < n_qubits; ++p) {
    creators.push_back(ladder_image({p, true}));
    annihilators.push_back(ladder_image({p, false}));
  }

  QubitOperator out;
  std::vector<PauliTerm> partial, next;
  for (const auto& [ops, c] : op.terms()) {
    partial.assign(1, PauliTerm{c, PauliWord{}});
    for (const auto& l : ops) {
      const auto& image = l.dagger ? creators[l.mode] : annihilators[l.mode];
      next.clear();
      for (const auto& t : partial) {
        for (const auto& f : image) next.push_back(multiply_terms(t, f));
      }
      partial.swap(next);
    }
    for (const auto& t : partial) out.accumulate(t.word, t.coefficient);
  }
  return simplify(out);
}

QubitOperator qubit_hamiltonian(const MolecularProblem& problem) {
  return jordan_wigner(build_hamiltonian(problem), problem.n_spin_orbitals());
}

std::string hartree_fock_bitstring(int n_electrons, int n_qubits) {
  if (n_qubits < 0 || n_electrons < 0 || n_electrons > n_qubits) {
    throw std::invalid_argument("cannot place " + std::to_string(n_electrons) + " electrons on " +
                                std::to_string(n_qubits) + " qubits");
  }
  return std::string(n_electrons, '1') + std::string(n_qubits - n_electrons, '0');
}

}  // namespace vqesim
