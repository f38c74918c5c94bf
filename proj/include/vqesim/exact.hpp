#pragma once

#include "vqesim/pauli.hpp"
#include "vqesim/statevector.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vqesim {

enum class EigenMethod { Auto, Dense, Lanczos };

struct GroundState {
  double energy = 0.0;
  StateVector state;
  std::uint64_t dimension = 0;  // size of the diagonalized space
};

/// Lowest eigenpair of a Hermitian qubit operator, optionally restricted to
/// basis states with `particles` bits set. Auto picks dense diagonalization up
/// to dimension 2048 and Lanczos beyond. Throws std::invalid_argument for a
/// non-Hermitian input and std::runtime_error if Lanczos does not converge.
GroundState exact_ground_state(const QubitOperator& op, int n_qubits, std::optional<int> particles = std::nullopt,
                               EigenMethod method = EigenMethod::Auto);

/// Basis indices with `particles` bits set among n_qubits, ascending.
std::vector<std::uint64_t> sector_basis(int n_qubits, int particles);

/// op restricted to the span of `basis` (which must be sorted).
SparseMatrixXcd restricted_matrix(const QubitOperator& op, const std::vector<std::uint64_t>& basis);

/// Lowest eigenpair of a Hermitian sparse matrix by Lanczos with full
/// reorthogonalization, restarted from the current Ritz vector.
std::pair<double, Eigen::VectorXcd> lanczos_lowest(const SparseMatrixXcd& matrix, double tol = 1e-10,
                                                   int krylov_dim = 120, int max_restarts = 60);

/// Number of closed-shell determinants, C(n_orbitals, n_electrons/2)^2.
/// Throws std::invalid_argument for odd or out-of-range electron counts.
std::uint64_t fci_dimension(int n_orbitals, int n_electrons);

}  // namespace vqesim
