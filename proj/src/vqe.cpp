#include "vqesim/vqe.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace vqesim {

void VqeConfig::validate() const {
  if (!(tol > 0)) throw std::invalid_argument("VQE tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("VQE needs at least one iteration");
  if (!(diff_step > 0)) throw std::invalid_argument("finite-difference step must be positive");
}

AnsatzState ansatz_from_pool(const GeneratorPool& pool, const std::string& reference, int n_trotter) {
  AnsatzState ansatz{reference, {}, n_trotter};
  for (std::size_t k = 0; k < pool.size(); ++k) ansatz.steps.push_back({pool.generators[k].qubit, k});
  return ansatz;
}

EnergyObjective::EnergyObjective(const QubitOperator& hamiltonian, const AnsatzState& ansatz)
    : EnergyObjective(std::make_shared<const SparseMatrixXcd>(to_sparse_matrix(hamiltonian, ansatz.n_qubits())),
                      compile(ansatz)) {
  if (!hamiltonian.is_hermitian(1e-10)) throw std::invalid_argument("Hamiltonian is not Hermitian");
}

EnergyObjective::EnergyObjective(std::shared_ptr<const SparseMatrixXcd> hamiltonian, CompiledAnsatz ansatz)
    : hamiltonian_(std::move(hamiltonian)), ansatz_(std::move(ansatz)) {
  if (static_cast<std::uint64_t>(hamiltonian_->rows()) != (std::uint64_t{1} << ansatz_.n_qubits)) {
    throw std::invalid_argument("Hamiltonian and ansatz sizes differ");
  }
}

StateVector EnergyObjective::state(const Eigen::VectorXd& theta) const { return prepare(ansatz_, theta); }

double EnergyObjective::value(const Eigen::VectorXd& theta) const {
  const auto psi = prepare(ansatz_, theta);
  const Eigen::VectorXcd h_psi = *hamiltonian_ * psi.amplitudes();
  return psi.amplitudes().dot(h_psi).real();
}

double EnergyObjective::value_and_gradient(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const {
  StateVector state = prepare(ansatz_, theta);
  Eigen::VectorXcd& psi = state.amplitudes();
  Eigen::VectorXcd lambda = *hamiltonian_ * psi;
  const double energy = psi.dot(lambda).real();

  grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ansatz_.n_parameters));
  const double slice = 1.0 / ansatz_.n_trotter;
  const auto dim = static_cast<std::uint64_t>(psi.size());
  for (int t = ansatz_.n_trotter; t-- > 0;) {
    for (auto it = ansatz_.rotations.rbegin(); it != ansatz_.rotations.rend(); ++it) {
      const auto& w = it->word;
      // d/dtheta of exp(i phi P) contributes 2 Re <lambda| i alpha P |psi>
      Complex overlap = 0.0;
      for (std::uint64_t b = 0; b < dim; ++b) {
        const Complex term = std::conj(lambda(static_cast<Eigen::Index>(b ^ w.x))) * psi(static_cast<Eigen::Index>(b));
        overlap += (std::popcount(b & w.z) & 1) ? -term : term;
      }
      const double contribution = 2.0 * (Complex(0, 1) * w.phase * overlap).real() * it->alpha * slice;
      grad(static_cast<Eigen::Index>(it->parameter)) += contribution;
      const double phi = theta(static_cast<Eigen::Index>(it->parameter)) * it->alpha * slice;
      rotate(w, -phi, psi);
      rotate(w, -phi, lambda);
    }
  }
  return energy;
}

Eigen::VectorXd EnergyObjective::central_difference_gradient(const Eigen::VectorXd& theta, double step) const {
  Eigen::VectorXd grad(theta.size());
  Eigen::VectorXd shifted = theta;
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    shifted(k) = theta(k) + step;
    const double up = value(shifted);
    shifted(k) = theta(k) - step;
    const double down = value(shifted);
    shifted(k) = theta(k);
    grad(k) = (up - down) / (2.0 * step);
  }
  return grad;
}

double objective(const QubitOperator& hamiltonian, const AnsatzState& ansatz, const Eigen::VectorXd& theta) {
  return EnergyObjective(hamiltonian, ansatz).value(theta);
}

Eigen::VectorXd gradient(const EnergyObjective& objective, const Eigen::VectorXd& theta, const VqeConfig& config) {
  if (config.gradient == GradientMethod::CENTRAL_DIFF) {
    return objective.central_difference_gradient(theta, config.diff_step);
  }
  Eigen::VectorXd grad;
  objective.value_and_gradient(theta, grad);
  return grad;
}

VqeResult minimize(const EnergyObjective& objective, const Eigen::VectorXd& theta0, const VqeConfig& config) {
  config.validate();
  if (static_cast<std::size_t>(theta0.size()) != objective.n_parameters()) {
    throw std::invalid_argument("initial parameter vector has the wrong length");
  }
  const OptimizerOptions options{config.tol, config.max_iterations};
  OptimizationResult opt;
  if (config.optimizer == OptimizerKind::SIMPLEX) {
    opt = minimize_nelder_mead([&](const Eigen::VectorXd& x) { return objective.value(x); }, theta0, options);
  } else if (config.gradient == GradientMethod::ANALYTIC) {
    opt = minimize_bfgs(
        [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) { return objective.value_and_gradient(x, g); }, theta0,
        options);
  } else {
    opt = minimize_bfgs(
        [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
          g = objective.central_difference_gradient(x, config.diff_step);
          return objective.value(x);
        },
        theta0, options);
  }

  VqeResult out;
  out.theta_opt = std::move(opt.x);
  out.energy = opt.value;
  out.n_evaluations = opt.evaluations;
  out.converged = opt.converged;
  out.message = std::move(opt.message);
  for (std::size_t i = 0; i < opt.trace.size(); ++i) out.trace.emplace_back(static_cast<int>(i), opt.trace[i]);
  return out;
}

}  // namespace vqesim
