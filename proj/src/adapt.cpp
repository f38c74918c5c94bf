#include "vqesim/adapt.hpp"

#include "vqesim/jordan_wigner.hpp"
#include "vqesim/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace vqesim {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::NORM_BELOW_EPS: return "norm_below_eps";
    case StopReason::MAX_ITERATIONS: return "max_iterations";
    case StopReason::VQE_FAILED: return "vqe_failed";
  }
  return "unknown";
}

void AdaptConfig::validate() const {
  if (n_max_grads < 1) throw std::invalid_argument("n_max_grads must be >= 1");
  if (!(eps_norm > 0)) throw std::invalid_argument("eps_norm must be positive");
  if (max_external_iterations < 0) throw std::invalid_argument("max_external_iterations must be >= 0");
  vqe.validate();
}

Eigen::VectorXd pool_gradients(const StateVector& state, const SparseMatrixXcd& hamiltonian,
                               const GeneratorPool& pool) {
  const Eigen::VectorXcd& psi = state.amplitudes();
  const Eigen::VectorXcd h_psi = hamiltonian * psi;
  const auto dim = static_cast<std::uint64_t>(psi.size());
  Eigen::VectorXd grads(static_cast<Eigen::Index>(pool.size()));
  parallel_for(pool.size(), [&](std::size_t m) {
    Complex total = 0.0;
    for (const auto& [word, c] : pool.generators[m].qubit.terms()) {
      const CompiledWord w(word);
      Complex acc = 0.0;
      for (std::uint64_t b = 0; b < dim; ++b) {
        const Complex t = std::conj(h_psi(static_cast<Eigen::Index>(b ^ w.x))) * psi(static_cast<Eigen::Index>(b));
        acc += (std::popcount(b & w.z) & 1) ? -t : t;
      }
      total += c * w.phase * acc;
    }
    grads(static_cast<Eigen::Index>(m)) = 2.0 * total.real();
  });
  return grads;
}

Eigen::VectorXd pool_gradients(const StateVector& state, const QubitOperator& hamiltonian,
                               const GeneratorPool& pool) {
  if (!hamiltonian.is_hermitian(1e-10)) throw std::invalid_argument("Hamiltonian is not Hermitian");
  return pool_gradients(state, to_sparse_matrix(hamiltonian, state.n_qubits()), pool);
}

std::vector<std::pair<std::size_t, double>> sorted_selection(const Eigen::VectorXd& gradients, int n_max_grads) {
  if (n_max_grads < 1) throw std::invalid_argument("n_max_grads must be >= 1");
  std::vector<std::pair<std::size_t, double>> nonzero;
  for (Eigen::Index i = 0; i < gradients.size(); ++i) {
    if (std::abs(gradients(i)) >= 1e-12) nonzero.emplace_back(static_cast<std::size_t>(i), gradients(i));
  }
  std::stable_sort(nonzero.begin(), nonzero.end(),
                   [](const auto& a, const auto& b) { return std::abs(a.second) > std::abs(b.second); });
  if (nonzero.size() > static_cast<std::size_t>(n_max_grads)) nonzero.resize(static_cast<std::size_t>(n_max_grads));
  return nonzero;
}

AdaptResult adapt_vqe(const MolecularProblem& problem, const QubitOperator& hamiltonian, const GeneratorPool& pool,
                      const AdaptConfig& config, std::optional<double> fci_energy, const AdaptObserver& observer) {
  config.validate();
  if (pool.size() == 0) throw std::invalid_argument("ADAPT needs a nonempty pool");
  if ((config.pool_kind == AdaptPoolKind::QUBIT) != (pool.kind == PoolKind::QUBIT)) {
    throw std::invalid_argument("pool kind does not match the ADAPT configuration");
  }
  const int n_qubits = problem.n_spin_orbitals();
  if (!hamiltonian.is_hermitian(1e-10)) throw std::invalid_argument("Hamiltonian is not Hermitian");
  const auto h = std::make_shared<const SparseMatrixXcd>(to_sparse_matrix(hamiltonian, n_qubits));

  AdaptResult result;
  result.ansatz.reference = hartree_fock_bitstring(problem.n_electrons, n_qubits);
  result.theta.resize(0);

  auto error_of = [&](double e) { return fci_energy ? e - *fci_energy : std::numeric_limits<double>::quiet_NaN(); };

  for (int iteration = 0;; ++iteration) {
    const EnergyObjective objective(h, compile(result.ansatz));
    const StateVector state = objective.state(result.theta);
    const double energy = objective.value(result.theta);
    const Eigen::VectorXd grads = pool_gradients(state, *h, pool);
    const double norm = grads.norm();

    AdaptIteration row{iteration, energy, error_of(energy), norm, static_cast<std::size_t>(result.theta.size()),
                       count_ansatz_gates(result.ansatz).cnot};
    result.iterations.push_back(row);
    result.energy_trace.push_back(energy);
    result.grad_norm_trace.push_back(norm);
    result.energy = energy;
    if (observer) observer(row);

    if (norm < config.eps_norm) {
      result.stop_reason = StopReason::NORM_BELOW_EPS;
      result.message = "gradient norm below threshold";
      break;
    }
    const auto selected = sorted_selection(grads, config.n_max_grads);
    if (selected.empty()) {
      result.stop_reason = StopReason::NORM_BELOW_EPS;
      result.message = "all pool gradients vanish";
      break;
    }
    if (iteration == config.max_external_iterations) {
      result.stop_reason = StopReason::MAX_ITERATIONS;
      result.message = "external iteration limit reached";
      break;
    }

    Eigen::VectorXd warm(result.theta.size() + static_cast<Eigen::Index>(selected.size()));
    warm.head(result.theta.size()) = result.theta;
    warm.tail(static_cast<Eigen::Index>(selected.size())).setZero();
    for (const auto& [index, g] : selected) {
      result.ansatz.steps.push_back({pool.generators[index].qubit, result.chosen.size()});
      result.chosen.push_back(pool.generators[index].label);
      result.chosen_indices.push_back(index);
    }
    try {
      const EnergyObjective grown(h, compile(result.ansatz));
      VqeResult vqe = minimize(grown, warm, config.vqe);
      result.theta = std::move(vqe.theta_opt);
    } catch (const std::runtime_error& e) {
      result.stop_reason = StopReason::VQE_FAILED;
      result.message = e.what();
      result.ansatz.steps.resize(static_cast<std::size_t>(result.theta.size()));
      result.chosen.resize(static_cast<std::size_t>(result.theta.size()));
      result.chosen_indices.resize(static_cast<std::size_t>(result.theta.size()));
      break;
    }
  }
  result.gate_counts = count_ansatz_gates(result.ansatz);
  result.error_vs_fci = error_of(result.energy);
  return result;
}

}  // namespace vqesim
