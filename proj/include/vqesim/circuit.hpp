#pragma once

#include "vqesim/pauli.hpp"
#include "vqesim/statevector.hpp"

#include <vector>

namespace vqesim {

enum class GateKind {
  H,          // Hadamard
  RxHalfPi,   // Rx(pi/2), maps Y into Z under conjugation
  RxMinusHalfPi,
  Cnot,
  Rz,         // exp(-i angle Z / 2)
};

struct Gate {
  GateKind kind;
  int target;
  int control = -1;  // CNOT only
  double angle = 0.0;  // Rz only
};

struct GateSequence {
  std::vector<Gate> gates;
  Complex global_phase{1.0, 0.0};  // carried by identity words

  int cnot_count() const;
  int single_qubit_count() const;
};

/// exp(theta * i alpha * P) as basis changes, a CNOT ladder onto the last
/// qubit of P, Rz(-2 theta alpha), the reverse ladder and basis undo.
/// The identity word yields an empty sequence with a global phase.
GateSequence staircase(const PauliTerm& term, double theta);

StateVector& apply_gates(StateVector& state, const GateSequence& sequence);

struct GateCounts {
  long cnot = 0;
  long single_qubit = 0;
  long parameters = 0;

  GateCounts& operator+=(const GateCounts& o) {
    cnot += o.cnot;
    single_qubit += o.single_qubit;
    parameters += o.parameters;
    return *this;
  }
  friend GateCounts operator+(GateCounts a, const GateCounts& b) { return a += b; }
  bool operator==(const GateCounts&) const = default;
};

/// CNOT and single-qubit gates of the staircase for one word.
GateCounts staircase_counts(const PauliWord& word);

enum class CountingConvention {
  PerGenerator,   // every Pauli string of every generator gets its own staircase
  SharedStrings,  // each distinct string across the whole ansatz is counted once
};

/// Staircase totals times n_trotter; `parameters` is the distinct parameter
/// count.
GateCounts count_ansatz_gates(const AnsatzState& ansatz,
                              CountingConvention convention = CountingConvention::PerGenerator);

/// Synthesizes every rotation of the ansatz (in application order) at the
/// given parameters.
GateSequence synthesize(const AnsatzState& ansatz, const Eigen::VectorXd& theta);

}  // namespace vqesim
