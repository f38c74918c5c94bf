#pragma once

#include "vqesim/fermion.hpp"
#include "vqesim/pauli.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace vqesim {

enum class PoolKind { UCCSD, QUCCSD, UCCGSD, KUPCCGSD, SPIN_COMPLEMENT_GSD, QUBIT };

std::string_view to_string(PoolKind kind);

/// One anti-Hermitian generator A (the ansatz factor is exp(theta A)).
///
/// `fermionic` is the normal-ordered excitation operator; for QUCCSD it is the
/// parent fermionic generator (kept for MP2 projection) and for QUBIT pools it
/// is empty. `qubit` is what the simulator applies.
struct PoolGenerator {
  std::string label;
  FermionOperator fermionic;
  QubitOperator qubit;
};

struct GeneratorPool {
  PoolKind kind = PoolKind::UCCSD;
  int k = 0;  // replica count, KUPCCGSD only
  int n_qubits = 0;
  std::vector<PoolGenerator> generators;

  std::size_t size() const { return generators.size(); }
  std::vector<std::string> labels() const;
};

// Spin-adapted pools. Every generator is T - T+ normal-ordered and scaled to
// unit coefficient norm; generators that vanish are dropped.

/// Occupied -> virtual singlet singles and the two singlet couplings of each
/// spatial double (i <= j, a <= b). Closed shell only.
GeneratorPool uccsd_pool(const MolecularProblem& problem);

/// UCCSD index set built from Z-free qubit ladders (X -+ iY)/2.
GeneratorPool quccsd_pool(const MolecularProblem& problem);

/// Singlet singles and doubles over all spatial orbitals.
GeneratorPool uccgsd_pool(const MolecularProblem& problem);

/// k replicas of spin-orbital generalized singles plus paired doubles
/// moving an alpha-beta pair between spatial orbitals.
GeneratorPool kupccgsd_pool(const MolecularProblem& problem, int k);

/// Generalized excitations summed with their alpha <-> beta complement;
/// duplicates up to sign removed. Fermionic ADAPT pool.
GeneratorPool spin_complement_gsd_pool(const MolecularProblem& problem);

/// Splits each generator into Pauli strings, strips Z factors, keeps i*P for
/// each distinct X/Y skeleton P in order of first appearance.
GeneratorPool qubit_pool_from_fermionic(const GeneratorPool& pool);

/// Spin-orbital MP2 double amplitude for the excitation a+_a a+_b a_i a_j.
struct Mp2Amplitude {
  int a, b, i, j;
  double value;
};

/// theta_abij = (<ij|ba> - <ij|ab>) / (e_i + e_j - e_a - e_b) for i < j
/// occupied and a < b virtual spin orbitals, zeros dropped. A denominator below
/// 1e-8 in magnitude yields 0 and a warning.
std::vector<Mp2Amplitude> mp2_spin_amplitudes(const MolecularProblem& problem);

/// Projects the MP2 doubles operator onto each generator of a UCCSD or
/// QUCCSD pool; singles get 0.
Eigen::VectorXd mp2_amplitudes(const MolecularProblem& problem, const GeneratorPool& pool);

}  // namespace vqesim
