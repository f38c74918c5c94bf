#pragma once

#include "vqesim/optimize.hpp"
#include "vqesim/pauli.hpp"
#include "vqesim/pools.hpp"
#include "vqesim/statevector.hpp"

#include <Eigen/Dense>

#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace vqesim {

/// 1 kcal/mol in Hartree.
inline constexpr double kChemicalAccuracy = 1.5936e-3;

enum class OptimizerKind { QUASI_NEWTON, SIMPLEX };
enum class InitialGuess { ZEROS, MP2 };
enum class GradientMethod { ANALYTIC, CENTRAL_DIFF };

struct VqeConfig {
  OptimizerKind optimizer = OptimizerKind::QUASI_NEWTON;
  double tol = 1e-6;
  int max_iterations = 1000;
  InitialGuess initial_guess = InitialGuess::ZEROS;
  GradientMethod gradient = GradientMethod::ANALYTIC;
  double diff_step = 1e-5;

  void validate() const;
};

struct VqeResult {
  Eigen::VectorXd theta_opt;
  double energy = 0.0;
  std::vector<std::pair<int, double>> trace;  // (iteration, energy)
  int n_evaluations = 0;
  double error_vs_fci = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  std::string message;
};

/// One step per pool generator, parameter k on generator k, applied in pool
/// order: the ansatz is exp(theta_{K-1} G_{K-1}) ... exp(theta_0 G_0)|reference>,
/// so for UCC pools the singles act on the reference before the doubles.
AnsatzState ansatz_from_pool(const GeneratorPool& pool, const std::string& reference, int n_trotter = 1);

/// E(theta) = <psi(theta)|H|psi(theta)> for a fixed Hamiltonian and ansatz.
class EnergyObjective {
 public:
  EnergyObjective(const QubitOperator& hamiltonian, const AnsatzState& ansatz);
  EnergyObjective(std::shared_ptr<const SparseMatrixXcd> hamiltonian, CompiledAnsatz ansatz);

  std::size_t n_parameters() const { return ansatz_.n_parameters; }
  const CompiledAnsatz& ansatz() const { return ansatz_; }
  const SparseMatrixXcd& hamiltonian() const { return *hamiltonian_; }

  StateVector state(const Eigen::VectorXd& theta) const;
  double value(const Eigen::VectorXd& theta) const;
  /// Exact gradient by a backward sweep over the rotations.
  double value_and_gradient(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const;
  Eigen::VectorXd central_difference_gradient(const Eigen::VectorXd& theta, double step) const;

 private:
  std::shared_ptr<const SparseMatrixXcd> hamiltonian_;
  CompiledAnsatz ansatz_;
};

double objective(const QubitOperator& hamiltonian, const AnsatzState& ansatz, const Eigen::VectorXd& theta);

Eigen::VectorXd gradient(const EnergyObjective& objective, const Eigen::VectorXd& theta, const VqeConfig& config);

/// Runs the configured optimizer from theta0. Non-finite energies raise
/// std::runtime_error.
VqeResult minimize(const EnergyObjective& objective, const Eigen::VectorXd& theta0, const VqeConfig& config);

}  // namespace vqesim
