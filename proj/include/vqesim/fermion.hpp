#pragma once

#include "vqesim/pauli.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vqesim {

/// a_p (dagger == false) or a_p^dagger on spin-orbital p.
struct LadderOp {
  int mode = 0;
  bool dagger = false;

  auto operator<=>(const LadderOp&) const = default;
};

/// Product of ladder operators written left to right; the rightmost factor
/// acts first.
using LadderProduct = std::vector<LadderOp>;

/// Complex-weighted sum of ladder-operator products. Products are stored as
/// written; call normal_ordered() to obtain a canonical form.
class FermionOperator {
 public:
  using TermMap = std::map<LadderProduct, Complex>;

  FermionOperator() = default;
  FermionOperator(Complex coefficient, LadderProduct ops);

  static FermionOperator identity(Complex coefficient = 1.0);
  static FermionOperator creation(int mode) { return {1.0, {{mode, true}}}; }
  static FermionOperator annihilation(int mode) { return {1.0, {{mode, false}}}; }

  void accumulate(const LadderProduct& ops, Complex coefficient);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  int max_mode() const;

  FermionOperator adjoint() const;
  /// Creators left of annihilators, each group sorted by descending mode.
  /// Products with a repeated creator or annihilator vanish and are removed.
  FermionOperator normal_ordered(double tol = kPruneTolerance) const;
  double squared_norm() const;

  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator-=(const FermionOperator& other);
  FermionOperator& operator*=(Complex scalar);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) { return a -= b; }
  friend FermionOperator operator*(FermionOperator a, Complex s) { return a *= s; }
  friend FermionOperator operator*(Complex s, FermionOperator a) { return a *= s; }
  friend FermionOperator operator*(const FermionOperator& a, const FermionOperator& b);

 private:
  TermMap terms_;
};

std::string to_text(const FermionOperator& op);

/// Dense rank-4 tensor of doubles, row-major in (p, q, r, s).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }
  double& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }
  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }

 private:
  std::size_t index(int p, int q, int r, int s) const {
    return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
  }
  int n_ = 0;
  std::vector<double> data_;
};

/// Closed-shell molecular Hamiltonian in a spatial orbital basis.
///
/// Two-electron integrals are kept in physicists' order,
/// eri(p,q,r,s) = <pq|rs> = (pr|qs). Spin orbitals interleave alpha and beta:
/// spin-orbital 2p is p-alpha, 2p+1 is p-beta.
struct MolecularProblem {
  int n_orbitals = 0;  // spatial
  int n_electrons = 0;
  double core_energy = 0.0;
  Eigen::MatrixXd one_body;  // h(p,q), spatial
  Tensor4 eri;               // <pq|rs>, spatial
  Eigen::VectorXd orbital_energies;          // spatial
  std::optional<Eigen::VectorXd> occupations;  // natural-orbital occupation numbers

  int n_spin_orbitals() const { return 2 * n_orbitals; }
  int n_occupied() const { return n_electrons / 2; }

  /// Spin-orbital one-body integral h_pq.
  double spin_one_body(int p, int q) const;
  /// Spin-orbital <pq|rs>.
  double spin_eri(int p, int q, int r, int s) const;

  /// Throws std::invalid_argument if h or <pq|rs> break the real
  /// eight-fold symmetry beyond tol, or sizes disagree.
  void validate(double tol = 1e-10) const;
};

/// Fock diagonal f_pp for the closed-shell determinant occupying the lowest
/// n_electrons/2 spatial orbitals.
Eigen::VectorXd fock_diagonal(const MolecularProblem& problem);

/// Energy of that determinant, core energy included.
double hartree_fock_energy(const MolecularProblem& problem);

/// H = core + sum h_pq a+_p a_q + 1/2 sum <pq|rs> a+_p a+_q a_s a_r
/// over spin orbitals. Validates integral symmetry first.
FermionOperator build_hamiltonian(const MolecularProblem& problem);

}  // namespace vqesim
