#include "support.hpp"

#include "vqesim/fermion.hpp"
#include "vqesim/jordan_wigner.hpp"
#include "vqesim/statevector.hpp"

#include <gtest/gtest.h>

using namespace vqesim;
using vqesim::testing::fixture;
using vqesim::testing::fixture_reference;

TEST(FermionOperator, NormalOrderingWithContraction) {
  const FermionOperator op = FermionOperator::annihilation(0) * FermionOperator::creation(0);
  const FermionOperator expected = FermionOperator::identity() - FermionOperator(1.0, {{0, true}, {0, false}});
  EXPECT_TRUE((op - expected).normal_ordered().empty()) << to_text(op.normal_ordered());
  EXPECT_EQ(op.normal_ordered().size(), 2u);

  const FermionOperator swapped = FermionOperator(1.0, {{0, true}, {1, true}}).normal_ordered();
  ASSERT_EQ(swapped.size(), 1u);
  EXPECT_EQ(swapped.terms().begin()->first, (LadderProduct{{1, true}, {0, true}}));
  EXPECT_DOUBLE_EQ(swapped.terms().begin()->second.real(), -1.0);

  EXPECT_TRUE(FermionOperator(1.0, {{2, true}, {2, true}}).normal_ordered().empty());
}

TEST(FermionOperator, AdjointReversesAndConjugates) {
  const FermionOperator op(Complex(0, 2), {{3, true}, {1, false}});
  const FermionOperator adj = op.adjoint();
  ASSERT_EQ(adj.size(), 1u);
  EXPECT_EQ(adj.terms().begin()->first, (LadderProduct{{1, true}, {3, false}}));
  EXPECT_EQ(adj.terms().begin()->second, Complex(0, -2));
}

// {a_p, a_q^dagger} = delta_pq and {a_p, a_q} = 0 after the mapping.
TEST(JordanWignerProperty, CanonicalAnticommutation) {
  for (int n = 1; n <= 6; ++n) {
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const QubitOperator ap = jordan_wigner(FermionOperator::annihilation(p), n);
        const QubitOperator aq = jordan_wigner(FermionOperator::annihilation(q), n);
        const QubitOperator cq = jordan_wigner(FermionOperator::creation(q), n);
        const QubitOperator mixed = ap * cq + cq * ap;
        const QubitOperator expected = p == q ? QubitOperator::identity() : QubitOperator();
        EXPECT_EQ(mixed, expected) << "n=" << n << " p=" << p << " q=" << q;
        EXPECT_TRUE((ap * aq + aq * ap).empty());
      }
    }
  }
}

TEST(JordanWigner, CreationOperatorForm) {
  const QubitOperator c2 = jordan_wigner(FermionOperator::creation(2), 3);
  const QubitOperator expected =
      QubitOperator(0.5, PauliWord::parse("Z0 Z1 X2")) + QubitOperator(Complex(0, -0.5), PauliWord::parse("Z0 Z1 Y2"));
  EXPECT_EQ(c2, expected);
  EXPECT_THROW(jordan_wigner(FermionOperator::creation(4), 3), std::out_of_range);
}

TEST(JordanWigner, NumberOperator) {
  FermionOperator number;
  for (int p = 0; p < 4; ++p) number += FermionOperator(1.0, {{p, true}, {p, false}});
  QubitOperator expected = QubitOperator::identity(2.0);
  for (int p = 0; p < 4; ++p) expected -= QubitOperator(0.5, PauliWord::single(p, Axis::Z));
  EXPECT_EQ(jordan_wigner(number, 4), expected);
}

TEST(JordanWigner, HartreeFockBitstring) {
  EXPECT_EQ(hartree_fock_bitstring(2, 4), "1100");
  EXPECT_EQ(hartree_fock_bitstring(4, 12), "111100000000");
  EXPECT_THROW(hartree_fock_bitstring(5, 4), std::invalid_argument);
}

// Coefficients from an independent Python expansion of the same FCIDUMP
// (pyscf reader, separate Pauli algebra).
TEST(JordanWigner, H2HamiltonianMatchesOracle) {
  const QubitOperator h = qubit_hamiltonian(fixture("h2_sto3g_0.735"));
  ASSERT_EQ(h.size(), 15u);
  const std::vector<std::pair<const char*, double>> oracle = {
      {"", -0.090578986088348},          {"X0 X1 Y2 Y3", -0.04523279994605786},
      {"X0 Y1 Y2 X3", 0.04523279994605786}, {"Y0 X1 X2 Y3", 0.04523279994605786},
      {"Y0 Y1 X2 X3", -0.04523279994605786}, {"Z0", 0.17218393261915566},
      {"Z0 Z1", 0.16892753870087907},    {"Z0 Z2", 0.12091263261776625},
      {"Z0 Z3", 0.1661454325638241},     {"Z1", 0.17218393261915566},
      {"Z1 Z2", 0.1661454325638241},     {"Z1 Z3", 0.12091263261776625},
      {"Z2", -0.22575349222402386},      {"Z2 Z3", 0.17464343068300442},
      {"Z3", -0.22575349222402388},
  };
  for (const auto& [word, value] : oracle) {
    const Complex c = h.coefficient(PauliWord::parse(word));
    EXPECT_NEAR(c.real(), value, 1e-12) << word;
    EXPECT_NEAR(c.imag(), 0.0, 1e-14) << word;
  }
}

TEST(JordanWigner, PauliStringCountsMatchOracle) {
  EXPECT_EQ(qubit_hamiltonian(fixture("h4_sto3g_0.85")).size(), 185u);
  EXPECT_EQ(qubit_hamiltonian(fixture("lih_sto3g_1.45")).size(), 631u);
  EXPECT_EQ(qubit_hamiltonian(fixture("h6_sto3g_1.00")).size(), 919u);
  EXPECT_EQ(qubit_hamiltonian(fixture("h2o_sto3g")).size(), 1086u);
}

TEST(MolecularProblem, HartreeFockEnergyMatchesSidecarAndDeterminant) {
  for (const char* stem : {"h2_sto3g_0.735", "lih_sto3g_1.45", "h6_sto3g_1.00", "h2o_sto3g"}) {
    const MolecularProblem p = fixture(stem);
    const double hf = hartree_fock_energy(p);
    EXPECT_NEAR(hf, fixture_reference(stem).hf, 1e-8) << stem;
    const StateVector det = basis_state(hartree_fock_bitstring(p.n_electrons, p.n_spin_orbitals()));
    EXPECT_NEAR(expectation(det, qubit_hamiltonian(p)), hf, 1e-10) << stem;
  }
}

TEST(MolecularProblem, HamiltonianIsHermitianAndSpinIntegralsFollowSpin) {
  const MolecularProblem p = fixture("lih_sto3g_1.45");
  EXPECT_TRUE(qubit_hamiltonian(p).is_hermitian(1e-12));
  EXPECT_EQ(p.spin_one_body(0, 1), 0.0);
  EXPECT_EQ(p.spin_one_body(2, 4), p.one_body(1, 2));
  EXPECT_EQ(p.spin_eri(0, 1, 1, 0), 0.0);
  EXPECT_EQ(p.spin_eri(0, 1, 0, 1), p.eri(0, 0, 0, 0));
}
