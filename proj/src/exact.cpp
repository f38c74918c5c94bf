#include "vqesim/exact.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace vqesim {

namespace {

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

struct MaskGroup {
  std::vector<std::pair<std::uint64_t, Complex>> z_terms;  // (z mask, coefficient * i^#Y)
};

std::map<std::uint64_t, MaskGroup> group_by_flip(const QubitOperator& op) {
  std::map<std::uint64_t, MaskGroup> groups;
  for (const auto& [word, c] : op.terms()) {
    groups[word.x_mask()].z_terms.emplace_back(word.z_mask(), c * kIPow[word.y_count() % 4]);
  }
  return groups;
}

}  // namespace

std::vector<std::uint64_t> sector_basis(int n_qubits, int particles) {
  if (particles < 0 || particles > n_qubits) throw std::invalid_argument("particle number out of range");
  std::vector<std::uint64_t> basis;
  if (particles == 0) return {0};
  // Gosper's hack enumerates fixed-popcount words in increasing order.
  std::uint64_t v = (std::uint64_t{1} << particles) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n_qubits;
  while (v < limit) {
    basis.push_back(v);
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
  return basis;
}

SparseMatrixXcd restricted_matrix(const QubitOperator& op, const std::vector<std::uint64_t>& basis) {
  const auto groups = group_by_flip(op);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index col = 0; col < dim; ++col) {
    const std::uint64_t b = basis[static_cast<std::size_t>(col)];
    for (const auto& [x, group] : groups) {
      const std::uint64_t target = b ^ x;
      auto it = std::lower_bound(basis.begin(), basis.end(), target);
      if (it == basis.end() || *it != target) continue;
      Complex value = 0.0;
      for (const auto& [z, c] : group.z_terms) value += (std::popcount(b & z) & 1) ? -c : c;
      if (std::abs(value) > 0.0) triplets.emplace_back(static_cast<int>(it - basis.begin()), col, value);
    }
  }
  SparseMatrixXcd m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

std::pair<double, Eigen::VectorXcd> lanczos_lowest(const SparseMatrixXcd& matrix, double tol, int krylov_dim,
                                                   int max_restarts) {
  const Eigen::Index n = matrix.rows();
  if (n == 0) throw std::invalid_argument("empty matrix");
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = Complex(gauss(rng), 0.0);
  start.normalize();

  const Eigen::Index m = std::min<Eigen::Index>(krylov_dim, n);
  Eigen::MatrixXcd basis(n, m);
  double ritz_value = 0.0;
  for (int restart = 0; restart <= max_restarts; ++restart) {
    std::vector<double> diag, offdiag;
    basis.col(0) = start;
    Eigen::Index k = 0;
    bool invariant = false;
    for (; k < m; ++k) {
      Eigen::VectorXcd w = matrix * basis.col(k);
      diag.push_back(basis.col(k).dot(w).real());
      // two passes of classical Gram-Schmidt against the whole basis
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
      }
      const double beta = w.norm();
      if (k + 1 == m) {
        offdiag.push_back(beta);
        break;
      }
      if (beta < 1e-12) {
        offdiag.push_back(0.0);
        invariant = true;
        break;
      }
      offdiag.push_back(beta);
      basis.col(k + 1) = w / beta;
    }
    const Eigen::Index size = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      tri(i, i) = diag[static_cast<std::size_t>(i)];
      if (i + 1 < size) tri(i, i + 1) = tri(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
    const Eigen::VectorXd y = solver.eigenvectors().col(0);
    ritz_value = solver.eigenvalues()(0);
    Eigen::VectorXcd ritz = basis.leftCols(size) * y.cast<Complex>();
    ritz.normalize();
    const double residual = (matrix * ritz - ritz_value * ritz).norm();
    if (invariant || residual < tol * std::max(1.0, std::abs(ritz_value))) return {ritz_value, ritz};
    start = ritz;
  }
  throw std::runtime_error("Lanczos did not converge");
}

GroundState exact_ground_state(const QubitOperator& op, int n_qubits, std::optional<int> particles,
                               EigenMethod method) {
  if (!op.is_hermitian(1e-10)) throw std::invalid_argument("exact_ground_state needs a Hermitian operator");
  if (op.max_qubit() >= n_qubits) throw std::out_of_range("operator exceeds register");
  if (n_qubits > 26) throw std::invalid_argument("register too large for the exact solver");

  std::vector<std::uint64_t> basis;
  if (particles) {
    basis = sector_basis(n_qubits, *particles);
  } else {
    basis.resize(std::size_t{1} << n_qubits);
    for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
  }
  const SparseMatrixXcd h = particles ? restricted_matrix(op, basis) : to_sparse_matrix(op, n_qubits);
  const auto dim = static_cast<Eigen::Index>(basis.size());

  bool dense = method == EigenMethod::Dense || (method == EigenMethod::Auto && dim <= 2048);
  double energy = 0.0;
  Eigen::VectorXcd vec;
  if (dense) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver{Eigen::MatrixXcd(h)};
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    energy = solver.eigenvalues()(0);
    vec = solver.eigenvectors().col(0);
  } else {
    std::tie(energy, vec) = lanczos_lowest(h);
  }

  GroundState out{energy, StateVector(n_qubits), static_cast<std::uint64_t>(dim)};
  auto& amp = out.state.amplitudes();
  amp.setZero();
  for (Eigen::Index i = 0; i < dim; ++i) amp(static_cast<Eigen::Index>(basis[static_cast<std::size_t>(i)])) = vec(i);
  return out;
}

std::uint64_t fci_dimension(int n_orbitals, int n_electrons) {
  if (n_electrons % 2 != 0) throw std::invalid_argument("closed-shell dimension needs an even electron count");
  if (n_orbitals < 0 || n_electrons < 0 || n_electrons > 2 * n_orbitals) {
    throw std::invalid_argument("electron count out of range");
  }
  const int k = n_electrons / 2;
  std::uint64_t binom = 1;
  for (int i = 1; i <= k; ++i) binom = binom * static_cast<std::uint64_t>(n_orbitals - k + i) / i;
  return binom * binom;
}

}  // namespace vqesim
