#pragma once

#include "vqesim/circuit.hpp"
#include "vqesim/fermion.hpp"
#include "vqesim/pools.hpp"
#include "vqesim/statevector.hpp"
#include "vqesim/vqe.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vqesim {

enum class AdaptPoolKind { FERMIONIC_SPIN_COMPLEMENT, QUBIT };
enum class StopReason { NORM_BELOW_EPS, MAX_ITERATIONS, VQE_FAILED };

std::string_view to_string(StopReason reason);

struct AdaptConfig {
  AdaptPoolKind pool_kind = AdaptPoolKind::FERMIONIC_SPIN_COMPLEMENT;
  int n_max_grads = 1;
  double eps_norm = 1e-3;
  int max_external_iterations = 200;
  VqeConfig vqe;

  void validate() const;
};

/// State of the ansatz after `iteration` growth steps; the gradient norm is
/// the pool screen evaluated on that state.
struct AdaptIteration {
  int iteration = 0;
  double energy = 0.0;
  double error_vs_fci = std::numeric_limits<double>::quiet_NaN();
  double grad_norm = 0.0;
  std::size_t n_params = 0;
  long cnot_count = 0;
};

struct AdaptResult {
  std::vector<std::string> chosen;
  std::vector<std::size_t> chosen_indices;
  Eigen::VectorXd theta;
  std::vector<double> energy_trace;     // entry k after k growth steps, entry 0 is the reference
  std::vector<double> grad_norm_trace;  // aligned with energy_trace
  std::vector<AdaptIteration> iterations;
  AnsatzState ansatz;
  GateCounts gate_counts;
  double energy = 0.0;
  double error_vs_fci = std::numeric_limits<double>::quiet_NaN();
  StopReason stop_reason = StopReason::MAX_ITERATIONS;
  std::string message;
};

/// g_m = <psi|[H, A_m]|psi> = 2 Re <H psi|A_m psi> for every pool generator.
Eigen::VectorXd pool_gradients(const StateVector& state, const SparseMatrixXcd& hamiltonian,
                               const GeneratorPool& pool);
Eigen::VectorXd pool_gradients(const StateVector& state, const QubitOperator& hamiltonian,
                               const GeneratorPool& pool);

/// Up to n_max_grads (index, gradient) pairs by descending |g|, skipping
/// |g| < 1e-12; ties go to the lower index.
std::vector<std::pair<std::size_t, double>> sorted_selection(const Eigen::VectorXd& gradients, int n_max_grads);

using AdaptObserver = std::function<void(const AdaptIteration&)>;

/// Grows exp(theta_k A_k) ... exp(theta_1 A_1)|HF> from the pool until the
/// gradient norm drops below eps_norm or the iteration budget is spent,
/// re-optimizing all parameters (warm start, new entries at 0) after every
/// addition. `fci_energy` only feeds the error columns.
AdaptResult adapt_vqe(const MolecularProblem& problem, const QubitOperator& hamiltonian, const GeneratorPool& pool,
                      const AdaptConfig& config, std::optional<double> fci_energy = std::nullopt,
                      const AdaptObserver& observer = {});

}  // namespace vqesim
