#pragma once

#include "vqesim/fermion.hpp"
#include "vqesim/pauli.hpp"

#include <string>

namespace vqesim {

/// a+_p -> 1/2 (X_p - i Y_p) Z_{p-1} ... Z_0, a_p its adjoint; qubit p is
/// spin-orbital p. Throws std::out_of_range if a mode is >= n_qubits.
QubitOperator jordan_wigner(const FermionOperator& op, int n_qubits);

/// jordan_wigner(build_hamiltonian(problem), 2 * n_orbitals).
QubitOperator qubit_hamiltonian(const MolecularProblem& problem);

/// Occupation label with the lowest n_electrons qubits set, qubit 0 first:
/// (4, 6) -> "111100".
std::string hartree_fock_bitstring(int n_electrons, int n_qubits);

}  // namespace vqesim
