#include "support.hpp"

#include "vqesim/exact.hpp"
#include "vqesim/fcidump.hpp"
#include "vqesim/jordan_wigner.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace vqesim;
using vqesim::testing::data_path;
using vqesim::testing::fixture;
using vqesim::testing::fixture_reference;

namespace {

const char* kTwoOrbital = R"( &FCI NORB=2,NELEC=2,MS2=0,
  ORBSYM=1,1,
 &END
 0.5 1 1 1 1
 0.1 2 1 1 1
 0.2 2 1 2 1
 0.3D+00 2 2 1 1
 0.4 2 2 2 2
 -1.0 1 1 0 0
 0.05 2 1 0 0
 -0.5 2 2 0 0
 0.7 0 0 0 0
)";

std::size_t error_line(const std::string& text) {
  try {
    parse_fcidump(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

std::string strip_orbital_energies(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    double v;
    int i, j, k, l;
    if (fields >> v >> i >> j >> k >> l && i > 0 && j == 0 && k == 0 && l == 0) continue;
    out += line + "\n";
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Fcidump, ExpandsEightFoldSymmetryIntoPhysicistsOrder) {
  const MolecularProblem p = parse_fcidump(kTwoOrbital);
  EXPECT_EQ(p.n_orbitals, 2);
  EXPECT_EQ(p.n_electrons, 2);
  EXPECT_DOUBLE_EQ(p.core_energy, 0.7);
  EXPECT_DOUBLE_EQ(p.one_body(0, 1), 0.05);
  EXPECT_DOUBLE_EQ(p.one_body(1, 0), 0.05);
  // <pq|rs> = (pr|qs)
  EXPECT_DOUBLE_EQ(p.eri(0, 0, 0, 0), 0.5);
  EXPECT_DOUBLE_EQ(p.eri(1, 0, 0, 0), 0.1);  // (21|11)
  EXPECT_DOUBLE_EQ(p.eri(0, 0, 1, 0), 0.1);  // (12|11)
  EXPECT_DOUBLE_EQ(p.eri(0, 1, 1, 1), 0.0);  // (12|22) absent
  EXPECT_DOUBLE_EQ(p.eri(1, 1, 0, 0), 0.2);  // (21|21)
  EXPECT_DOUBLE_EQ(p.eri(0, 1, 1, 0), 0.2);  // (12|12)
  EXPECT_DOUBLE_EQ(p.eri(1, 0, 1, 0), 0.3);  // (22|11), D exponent
  EXPECT_DOUBLE_EQ(p.eri(0, 1, 0, 1), 0.3);
  EXPECT_DOUBLE_EQ(p.eri(1, 1, 1, 1), 0.4);
  EXPECT_NO_THROW(p.validate());
  // no orbital-energy records: closed-shell Fock diagonal
  EXPECT_NEAR(p.orbital_energies(0), -1.0 + 0.5, 1e-15);
  EXPECT_NEAR(p.orbital_energies(1), -0.5 + 2 * 0.3 - 0.2, 1e-15);
}

TEST(Fcidump, RejectsMalformedInput) {
  EXPECT_EQ(error_line(" &FCI NELEC=2,MS2=0,\n &END\n"), 2u);
  EXPECT_EQ(error_line(" &FCI NORB=2,NELEC=2,MS2=0,\n &END\n 0.1 3 1 1 1\n"), 3u);
  EXPECT_EQ(error_line(" &FCI NORB=2,NELEC=2,MS2=0,\n &END\n abc 1 1 1 1\n"), 3u);
  EXPECT_EQ(error_line(" &FCI NORB=2,NELEC=2,MS2=0,\n &END\n 0.1 1 1 1\n"), 3u);
  EXPECT_EQ(error_line(" &FCI NORB=2,NELEC=2,MS2=2,\n &END\n"), 2u);
  EXPECT_EQ(error_line(" NORB=2\n"), 1u);
  EXPECT_EQ(error_line(" &FCI NORB=2,NELEC=2,MS2=0,\n &END\n 0.1 1 1 0 0\n 0.2 1 1 0 0\n"), 4u);
  EXPECT_THROW(parse_fcidump(" &FCI NORB=2,NELEC=2,MS2=0,\n &END\n -0.5 1 0 0 0\n"), ParseError);
  EXPECT_THROW(read_fcidump("/nonexistent/file.fcidump"), ParseError);
}

TEST(FcidumpProperty, RoundTripIsExact) {
  for (const char* stem : {"h2_sto3g_0.735", "lih_sto3g_1.45", "h6_sto3g_1.00", "h2o_sto3g", "lih_631g_1.50"}) {
    const MolecularProblem a = fixture(stem);
    const MolecularProblem b = parse_fcidump(write_fcidump(a));
    ASSERT_EQ(a.n_orbitals, b.n_orbitals);
    EXPECT_EQ(a.n_electrons, b.n_electrons);
    EXPECT_NEAR(a.core_energy, b.core_energy, 1e-12);
    EXPECT_LT((a.one_body - b.one_body).cwiseAbs().maxCoeff(), 1e-12) << stem;
    EXPECT_LT((a.orbital_energies - b.orbital_energies).cwiseAbs().maxCoeff(), 1e-12) << stem;
    double worst = 0.0;
    const int n = a.n_orbitals;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) worst = std::max(worst, std::abs(a.eri(p, q, r, s) - b.eri(p, q, r, s)));
    EXPECT_LT(worst, 1e-12) << stem;
  }
}

// Canonical fixtures list the SCF orbital energies; the Fock diagonal rebuilt
// from integrals must agree with them.
TEST(Fcidump, FockDiagonalMatchesListedOrbitalEnergies) {
  for (const char* stem : {"lih_sto3g_1.45", "h6_sto3g_1.00", "h2o_sto3g"}) {
    const std::string text = slurp(data_path(std::string(stem) + ".fcidump"));
    const MolecularProblem with = parse_fcidump(text);
    const MolecularProblem without = parse_fcidump(strip_orbital_energies(text));
    EXPECT_LT((with.orbital_energies - without.orbital_energies).cwiseAbs().maxCoeff(), 1e-7) << stem;
  }
}

TEST(ActiveSpace, IdentitySpecKeepsProblem) {
  const MolecularProblem p = fixture("lih_sto3g_1.45");
  const MolecularProblem r = reduce_active_space(p, {});
  EXPECT_EQ(r.n_orbitals, p.n_orbitals);
  EXPECT_DOUBLE_EQ(r.core_energy, p.core_energy);
  EXPECT_EQ((r.one_body - p.one_body).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.eri(1, 2, 3, 4), p.eri(1, 2, 3, 4));
}

TEST(ActiveSpace, H6FreezeAndRemoveGivesEightQubits) {
  const MolecularProblem p = fixture("h6_sto3g_1.00");
  const MolecularProblem r = reduce_active_space(p, {1, 1, std::nullopt});
  EXPECT_EQ(r.n_spin_orbitals(), 8);
  EXPECT_EQ(r.n_electrons, 4);
  EXPECT_NO_THROW(r.validate());
}

TEST(ActiveSpace, FrozenCoreKeepsHartreeFockEnergy) {
  for (const char* stem : {"h6_sto3g_1.00", "lih_sto3g_1.45", "h2o_sto3g"}) {
    const MolecularProblem p = fixture(stem);
    for (int freeze = 1; freeze < p.n_occupied(); ++freeze) {
      const MolecularProblem r = reduce_active_space(p, {freeze, 1, std::nullopt});
      EXPECT_NEAR(hartree_fock_energy(r), hartree_fock_energy(p), 1e-8) << stem << " freeze " << freeze;
    }
  }
}

TEST(ActiveSpace, ReducedFciIsAboveFullFci) {
  const MolecularProblem p = fixture("h6_sto3g_1.00");
  const double full = fixture_reference("h6_sto3g_1.00").fci;
  for (const auto& [freeze, removed] : {std::pair{1, 1}, std::pair{1, 0}, std::pair{0, 1}, std::pair{2, 0}}) {
    const MolecularProblem r = reduce_active_space(p, {freeze, removed, std::nullopt});
    const double e = exact_ground_state(qubit_hamiltonian(r), r.n_spin_orbitals(), r.n_electrons).energy;
    EXPECT_GE(e, full - 1e-9) << freeze << "," << removed;
  }
}

TEST(ActiveSpace, RejectsImpossibleSelections) {
  const MolecularProblem p = fixture("h6_sto3g_1.00");
  EXPECT_THROW(reduce_active_space(p, {3, 0, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(reduce_active_space(p, {0, 6, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(reduce_active_space(p, {0, 4, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(reduce_active_space(p, {-1, 0, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(reduce_active_space(p, {0, 0, std::pair{1.9, 0.01}}), std::invalid_argument);
}

TEST(ActiveSpace, NoonThresholdsSelectOrbitals) {
  MolecularProblem p = fixture("lih_631g_1.50");
  const ReferenceData ref = fixture_reference("lih_631g_1.50");
  ASSERT_TRUE(ref.noons.has_value());
  p.occupations = ref.noons;
  const MolecularProblem r = reduce_active_space(p, {0, 0, std::pair{1.99, 1e-3}});
  EXPECT_EQ(r.n_electrons, 2);
  EXPECT_EQ(r.n_orbitals, 5);  // 1.96, 0.036, 0.0014, 0.0012, 0.0012
}

TEST(Reference, SidecarFields) {
  EXPECT_EQ(reference_path_for("dir/x_1.0.fcidump"), std::filesystem::path("dir/x_1.0.ref.json"));
  const ReferenceData ref = fixture_reference("lih_sto3g_1.45");
  EXPECT_EQ(ref.basis, "sto-3g");
  EXPECT_LT(ref.fci, ref.mp2);
  EXPECT_LT(ref.mp2, ref.hf);
  EXPECT_FALSE(ref.noons.has_value());
}
