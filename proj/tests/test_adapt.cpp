#include "support.hpp"

#include "vqesim/adapt.hpp"
#include "vqesim/jordan_wigner.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vqesim;
using vqesim::testing::fixture;
using vqesim::testing::fixture_reference;

namespace {

AdaptConfig tight_config(double eps) {
  AdaptConfig cfg;
  cfg.eps_norm = eps;
  cfg.vqe.tol = 1e-10;
  return cfg;
}

}  // namespace

TEST(Adapt, HugeThresholdStopsAtHartreeFock) {
  const MolecularProblem p = fixture("h4_sto3g_0.85");
  const AdaptResult r = adapt_vqe(p, qubit_hamiltonian(p), spin_complement_gsd_pool(p), tight_config(1e3),
                                  fixture_reference("h4_sto3g_0.85").fci);
  EXPECT_EQ(r.stop_reason, StopReason::NORM_BELOW_EPS);
  EXPECT_EQ(r.theta.size(), 0);
  EXPECT_EQ(r.iterations.size(), 1u);
  EXPECT_NEAR(r.energy, fixture_reference("h4_sto3g_0.85").hf, 1e-10);
  EXPECT_EQ(r.gate_counts.cnot, 0);
}

// g_m = <psi|[H, A_m]|psi> evaluated through the operator algebra.
TEST(Adapt, PoolGradientsMatchCommutatorExpectation) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss;
  const MolecularProblem p = fixture("h4_sto3g_0.85");
  const QubitOperator h = qubit_hamiltonian(p);
  const GeneratorPool pool = spin_complement_gsd_pool(p);
  Eigen::VectorXcd amps(256);
  for (auto& a : amps) a = Complex(gauss(rng), gauss(rng));
  for (const StateVector& psi : {basis_state(hartree_fock_bitstring(4, 8)), StateVector(8, amps.normalized())}) {
    const Eigen::VectorXd grads = pool_gradients(psi, h, pool);
    for (std::size_t m = 0; m < pool.size(); m += 7) {
      EXPECT_NEAR(grads(static_cast<Eigen::Index>(m)), expectation(psi, commutator(h, pool.generators[m].qubit)), 1e-10)
          << pool.generators[m].label;
    }
  }
}

TEST(Adapt, SortedSelection) {
  const Eigen::VectorXd g = (Eigen::VectorXd(5) << 0.1, -0.3, 0.3, 1e-13, 0.2).finished();
  const auto top = sorted_selection(g, 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].first, 1u);
  EXPECT_EQ(top[1].first, 2u);
  EXPECT_EQ(top[2].first, 4u);
  EXPECT_EQ(sorted_selection(g, 10).size(), 4u);
  EXPECT_TRUE(sorted_selection(Eigen::VectorXd::Zero(3), 1).empty());
  EXPECT_THROW(sorted_selection(g, 0), std::invalid_argument);
}

TEST(Adapt, H2ReachesFciWithOneOperator) {
  const MolecularProblem p = fixture("h2_sto3g_0.735");
  const AdaptResult r = adapt_vqe(p, qubit_hamiltonian(p), spin_complement_gsd_pool(p), tight_config(1e-6));
  EXPECT_EQ(r.theta.size(), 1);
  EXPECT_NEAR(r.energy, fixture_reference("h2_sto3g_0.735").fci, 1e-9);
  EXPECT_TRUE(std::isnan(r.error_vs_fci));
}

// Energies along the trace never rise by more than the optimizer tolerance.
TEST(AdaptProperty, TraceIsMonotoneAndStopIsConsistent) {
  const MolecularProblem p = fixture("h4_sto3g_0.85");
  const double fci = fixture_reference("h4_sto3g_0.85").fci;
  const QubitOperator h = qubit_hamiltonian(p);
  const GeneratorPool fermionic = spin_complement_gsd_pool(p);
  for (const bool qubit : {false, true}) {
    AdaptConfig cfg = tight_config(1e-3);
    GeneratorPool pool = fermionic;
    if (qubit) {
      pool = qubit_pool_from_fermionic(fermionic);
      cfg.pool_kind = AdaptPoolKind::QUBIT;
    }
    std::vector<AdaptIteration> observed;
    const AdaptResult r = adapt_vqe(p, h, pool, cfg, fci, [&](const AdaptIteration& it) { observed.push_back(it); });
    ASSERT_EQ(r.stop_reason, StopReason::NORM_BELOW_EPS) << r.message;
    EXPECT_LT(r.grad_norm_trace.back(), cfg.eps_norm);
    EXPECT_EQ(observed.size(), r.iterations.size());
    EXPECT_EQ(r.energy_trace.size(), static_cast<std::size_t>(r.theta.size()) + 1);
    for (std::size_t k = 1; k < r.energy_trace.size(); ++k) {
      EXPECT_LE(r.energy_trace[k], r.energy_trace[k - 1] + cfg.vqe.tol) << "step " << k;
    }
    EXPECT_GE(r.energy, fci - 1e-9);
    EXPECT_LT(r.error_vs_fci, 1e-3);
    EXPECT_EQ(r.iterations.back().cnot_count, r.gate_counts.cnot);
    EXPECT_EQ(r.chosen.size(), static_cast<std::size_t>(r.theta.size()));
    for (std::size_t k = 0; k < r.chosen.size(); ++k) EXPECT_EQ(r.chosen[k], pool.generators[r.chosen_indices[k]].label);
  }
}

TEST(Adapt, IterationLimitAndBatchSelection) {
  const MolecularProblem p = fixture("h4_sto3g_0.85");
  const QubitOperator h = qubit_hamiltonian(p);
  const GeneratorPool pool = spin_complement_gsd_pool(p);
  AdaptConfig cfg = tight_config(1e-8);
  cfg.max_external_iterations = 2;
  cfg.n_max_grads = 2;
  const AdaptResult r = adapt_vqe(p, h, pool, cfg);
  EXPECT_EQ(r.stop_reason, StopReason::MAX_ITERATIONS);
  EXPECT_EQ(r.theta.size(), 4);
  EXPECT_EQ(r.iterations.size(), 3u);
  EXPECT_EQ(r.iterations[1].n_params, 2u);
}

TEST(Adapt, RejectsMismatchedPoolKind) {
  const MolecularProblem p = fixture("h2_sto3g_0.735");
  AdaptConfig cfg;
  cfg.pool_kind = AdaptPoolKind::QUBIT;
  EXPECT_THROW(adapt_vqe(p, qubit_hamiltonian(p), spin_complement_gsd_pool(p), cfg), std::invalid_argument);
  cfg.pool_kind = AdaptPoolKind::FERMIONIC_SPIN_COMPLEMENT;
  cfg.eps_norm = 0.0;
  EXPECT_THROW(adapt_vqe(p, qubit_hamiltonian(p), spin_complement_gsd_pool(p), cfg), std::invalid_argument);
}
