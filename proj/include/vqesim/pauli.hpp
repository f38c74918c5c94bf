#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vqesim {

using Complex = std::complex<double>;
using SparseMatrixXcd = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Default magnitude below which operator terms are dropped.
inline constexpr double kPruneTolerance = 1e-12;

/// Pauli axis. The numeric order X < Y < Z is part of the canonical term order.
enum class Axis : std::uint8_t { X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);

/// Tensor product of non-identity Pauli factors, stored sparsely as
/// (qubit, axis) pairs sorted by qubit. The empty word is the identity.
///
/// Comparison is lexicographic over the (qubit, axis) sequence; this is the
/// canonical ordering of terms inside a QubitOperator.
class PauliWord {
 public:
  using Entry = std::pair<int, Axis>;

  PauliWord() = default;
  /// Entries may come in any order; throws std::invalid_argument on a
  /// repeated or negative qubit index.
  explicit PauliWord(std::vector<Entry> entries);

  static PauliWord single(int qubit, Axis axis);
  /// Parses "X0 Z1 Y3"; an empty string (or "I") is the identity.
  static PauliWord parse(std::string_view text);

  const std::vector<Entry>& entries() const { return entries_; }
  int weight() const { return static_cast<int>(entries_.size()); }
  bool is_identity() const { return entries_.empty(); }
  /// Highest qubit index touched, or -1 for the identity.
  int max_qubit() const { return entries_.empty() ? -1 : entries_.back().first; }
  std::optional<Axis> at(int qubit) const;

  /// Same word with every Z factor removed.
  PauliWord without_z() const;

  /// Qubits carrying X or Y.
  std::uint64_t x_mask() const;
  /// Qubits carrying Z or Y.
  std::uint64_t z_mask() const;
  int y_count() const;

  std::string str() const;

  auto operator<=>(const PauliWord&) const = default;
  bool operator==(const PauliWord&) const = default;

 private:
  std::vector<Entry> entries_;
};

struct PauliTerm {
  Complex coefficient{1.0, 0.0};
  PauliWord word;

  bool operator==(const PauliTerm&) const = default;
};

/// Matrix product a*b as a single term (phase folded into the coefficient).
PauliTerm multiply_terms(const PauliTerm& a, const PauliTerm& b);

bool words_commute(const PauliWord& a, const PauliWord& b);

/// Complex-weighted sum of Pauli words with like terms merged.
///
/// Arithmetic operators return operators pruned at kPruneTolerance. The raw
/// accumulate() path skips pruning so large sums can be assembled first and
/// pruned once with simplify().
class QubitOperator {
 public:
  using TermMap = std::map<PauliWord, Complex>;

  QubitOperator() = default;
  QubitOperator(const PauliTerm& term);  // NOLINT(google-explicit-constructor)
  QubitOperator(Complex coefficient, const PauliWord& word);

  static QubitOperator identity(Complex coefficient = 1.0);

  /// Adds coefficient to the word without pruning.
  void accumulate(const PauliWord& word, Complex coefficient);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  Complex coefficient(const PauliWord& word) const;
  int max_qubit() const;

  QubitOperator adjoint() const;
  bool is_hermitian(double tol = 1e-10) const;
  bool is_anti_hermitian(double tol = 1e-10) const;
  /// Sum of |c|^2 over terms.
  double squared_norm() const;

  QubitOperator& operator+=(const QubitOperator& other);
  QubitOperator& operator-=(const QubitOperator& other);
  QubitOperator& operator*=(Complex scalar);

  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) { return a += b; }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) { return a -= b; }
  friend QubitOperator operator*(QubitOperator a, Complex s) { return a *= s; }
  friend QubitOperator operator*(Complex s, QubitOperator a) { return a *= s; }
  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);

  bool operator==(const QubitOperator&) const = default;

 private:
  void prune(double tol);
  TermMap terms_;

  friend QubitOperator simplify(const QubitOperator&, double);
};

/// Merges like terms, drops |c| <= tol. Term order is the canonical map order.
QubitOperator simplify(const QubitOperator& op, double tol = kPruneTolerance);

/// ab - ba.
QubitOperator commutator(const QubitOperator& a, const QubitOperator& b);

/// Sparse 2^n x 2^n embedding with qubit 0 as the least-significant bit of
/// the basis index. Throws std::out_of_range naming the first qubit >= n.
SparseMatrixXcd to_sparse_matrix(const QubitOperator& op, int n_qubits);
Eigen::MatrixXcd to_matrix(const QubitOperator& op, int n_qubits);

/// One term per line: "(<re>,<im>) X0 Z1 Y3". The identity word prints nothing
/// after the coefficient.
std::string to_text(const QubitOperator& op);
QubitOperator parse_qubit_operator(std::string_view text);

}  // namespace vqesim
