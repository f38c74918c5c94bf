#include "support.hpp"

#include "vqesim/exact.hpp"
#include "vqesim/jordan_wigner.hpp"
#include "vqesim/pools.hpp"
#include "vqesim/statevector.hpp"
#include "vqesim/vqe.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vqesim;
using vqesim::testing::dense_exp;
using vqesim::testing::dense_oracle;
using vqesim::testing::fixture;
using vqesim::testing::fixture_reference;

namespace {

StateVector random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (auto& a : v) a = Complex(gauss(rng), gauss(rng));
  return StateVector(n, v.normalized());
}

}  // namespace

TEST(StateVector, BasisLabelsPutQubitZeroFirst) {
  EXPECT_EQ(basis_index("10"), 1u);
  EXPECT_EQ(basis_index("0011"), 12u);
  EXPECT_EQ(basis_index("11 00"), 3u);
  const StateVector s = basis_state("01");
  EXPECT_EQ(s[2], Complex(1.0));
  EXPECT_THROW(basis_state("012"), std::invalid_argument);
}

TEST(StateVector, PauliExponentialMatchesDenseExponential) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-2.0, 2.0);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rep % 4;
    const PauliWord w = vqesim::testing::random_word(rng, n);
    const double alpha = angle(rng), theta = angle(rng);
    StateVector psi = random_state(rng, n);
    const Eigen::VectorXcd before = psi.amplitudes();
    apply_pauli_exponential(psi, {Complex(0, alpha), w}, theta);
    const Eigen::MatrixXcd u = dense_exp(theta * Complex(0, alpha) * vqesim::testing::kron_word(w, n));
    ASSERT_LT((psi.amplitudes() - u * before).norm(), 1e-12) << w.str();
    ASSERT_NEAR(psi.squared_norm(), 1.0, 1e-12);
  }
  StateVector psi = basis_state("00");
  EXPECT_THROW(apply_pauli_exponential(psi, {Complex(0.5, 1.0), PauliWord::parse("X0")}, 0.1), std::invalid_argument);
}

TEST(StateVector, ExpectationMatchesDenseOracle) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + rep % 5;
    QubitOperator h = vqesim::testing::random_operator(rng, n, 6);
    h = (h + h.adjoint()) * Complex(0.5);
    const StateVector psi = random_state(rng, n);
    const Complex oracle = psi.amplitudes().dot(dense_oracle(h, n) * psi.amplitudes());
    EXPECT_NEAR(expectation(psi, h), oracle.real(), 1e-12);
  }
  EXPECT_THROW(expectation(basis_state("0"), QubitOperator(Complex(0, 1), PauliWord::parse("Z0"))), std::domain_error);
}

// The Pauli strings of one spin-orbital double excitation commute, so the
// product of exponentials equals exp(theta G) exactly.
TEST(StateVector, SingleExcitationGeneratorEqualsMatrixExponential) {
  const MolecularProblem p = fixture("h2_sto3g_0.735");
  const GeneratorPool pool = uccsd_pool(p);
  for (const auto& g : pool.generators) {
    AnsatzState ansatz{"1100", {{g.qubit, 0}}, 1};
    for (double theta : {0.3, -1.1}) {
      StateVector psi = basis_state("1100");
      apply_ansatz(psi, ansatz, Eigen::VectorXd::Constant(1, theta));
      const Eigen::VectorXcd oracle = dense_exp(theta * dense_oracle(g.qubit, 4)) * basis_state("1100").amplitudes();
      EXPECT_LT((psi.amplitudes() - oracle).norm(), 1e-12) << g.label;
    }
  }
}

TEST(StateVector, StepsApplyInListOrder) {
  const QubitOperator a(Complex(0, 1), PauliWord::parse("X0"));
  const QubitOperator b(Complex(0, 1), PauliWord::parse("Y0"));
  AnsatzState ansatz{"0", {{a, 0}, {b, 1}}, 1};
  const Eigen::Vector2d theta(0.4, 0.9);
  StateVector psi = basis_state("0");
  apply_ansatz(psi, ansatz, theta);
  const Eigen::MatrixXcd u = dense_exp(0.9 * dense_oracle(b, 1)) * dense_exp(0.4 * dense_oracle(a, 1));
  EXPECT_LT((psi.amplitudes() - u.col(0)).norm(), 1e-12);
}

TEST(StateVector, TrotterStepsSplitTheAngle) {
  const QubitOperator g = QubitOperator(Complex(0, 0.7), PauliWord::parse("X0 Y1")) +
                          QubitOperator(Complex(0, -0.3), PauliWord::parse("Z0 Y1"));
  AnsatzState one{"10", {{g, 0}}, 1};
  AnsatzState many{"10", {{g, 0}}, 400};
  const Eigen::VectorXd theta = Eigen::VectorXd::Constant(1, 0.8);
  StateVector a = basis_state("10"), b = basis_state("10");
  apply_ansatz(a, one, theta);
  apply_ansatz(b, many, theta);
  const Eigen::VectorXcd exact = dense_exp(0.8 * dense_oracle(g, 2)) * basis_state("10").amplitudes();
  EXPECT_LT((b.amplitudes() - exact).norm(), 5e-3);
  EXPECT_GT((a.amplitudes() - exact).norm(), (b.amplitudes() - exact).norm());
}

// Energies along random parameter vectors never fall below FCI.
TEST(SimulatorProperty, VariationalBoundAndNormPreservation) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  for (const char* stem : {"h2_sto3g_0.735", "h4_sto3g_0.85", "lih_sto3g_1.45"}) {
    const MolecularProblem p = fixture(stem);
    const double fci = fixture_reference(stem).fci;
    const GeneratorPool pool = uccsd_pool(p);
    const EnergyObjective objective(qubit_hamiltonian(p),
                                    ansatz_from_pool(pool, hartree_fock_bitstring(p.n_electrons, p.n_spin_orbitals())));
    for (int rep = 0; rep < 100; ++rep) {
      Eigen::VectorXd theta(static_cast<Eigen::Index>(pool.size()));
      for (auto& t : theta) t = angle(rng);
      const StateVector psi = objective.state(theta);
      ASSERT_LT(std::abs(1.0 - psi.squared_norm()), 1e-10) << stem;
      ASSERT_GE(objective.value(theta), fci - 1e-9) << stem;
    }
  }
}

TEST(Exact, GroundStatesMatchSidecarFci) {
  for (const char* stem : {"h2_sto3g_0.735", "h4_sto3g_0.85", "lih_sto3g_1.45", "h6_sto3g_1.00", "h2o_sto3g"}) {
    const MolecularProblem p = fixture(stem);
    const GroundState gs = exact_ground_state(qubit_hamiltonian(p), p.n_spin_orbitals(), p.n_electrons);
    EXPECT_NEAR(gs.energy, fixture_reference(stem).fci, 1e-8) << stem;
    EXPECT_NEAR(gs.state.squared_norm(), 1.0, 1e-10);
  }
}

TEST(Exact, DenseAndLanczosAgree) {
  const MolecularProblem p = fixture("h4_sto3g_0.85");
  const QubitOperator h = qubit_hamiltonian(p);
  const double dense = exact_ground_state(h, 8, 4, EigenMethod::Dense).energy;
  const double lanczos = exact_ground_state(h, 8, 4, EigenMethod::Lanczos).energy;
  EXPECT_NEAR(dense, lanczos, 1e-9);
  // Unrestricted spectrum bottom is the neutral ground state here too.
  EXPECT_LE(exact_ground_state(h, 8).energy, dense + 1e-9);
}

TEST(Exact, LanczosOnRandomSparseMatrix) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  const int n = 300;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < 3000; ++k) {
    const int r = static_cast<int>(rng() % n), c = static_cast<int>(rng() % n);
    const Complex v(gauss(rng), gauss(rng));
    m(r, c) += v;
    m(c, r) += std::conj(v);
  }
  for (int d = 0; d < n; ++d) m(d, d) = m(d, d).real();
  const SparseMatrixXcd sparse = m.sparseView();
  const auto [energy, vec] = lanczos_lowest(sparse);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  EXPECT_NEAR(energy, es.eigenvalues()(0), 1e-8);
  EXPECT_LT((m * vec - energy * vec).norm(), 1e-6);
}

TEST(Exact, SectorBasisAndDimension) {
  const auto basis = sector_basis(4, 2);
  EXPECT_EQ(basis, (std::vector<std::uint64_t>{3, 5, 6, 9, 10, 12}));
  EXPECT_EQ(fci_dimension(2, 2), 4u);
  EXPECT_EQ(fci_dimension(6, 6), 400u);
  EXPECT_EQ(fci_dimension(20, 20), 34134779536ull);
  EXPECT_THROW(fci_dimension(4, 3), std::invalid_argument);
}
