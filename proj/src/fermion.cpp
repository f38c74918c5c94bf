#include "vqesim/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vqesim {

FermionOperator::FermionOperator(Complex coefficient, LadderProduct ops) {
  if (std::abs(coefficient) > kPruneTolerance) terms_.emplace(std::move(ops), coefficient);
}

FermionOperator FermionOperator::identity(Complex coefficient) { return {coefficient, {}}; }

void FermionOperator::accumulate(const LadderProduct& ops, Complex coefficient) {
  auto [it, inserted] = terms_.try_emplace(ops, coefficient);
  if (!inserted) it->second += coefficient;
}

int FermionOperator::max_mode() const {
  int m = -1;
  for (const auto& [ops, c] : terms_) {
    for (const auto& op : ops) m = std::max(m, op.mode);
  }
  return m;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto& [ops, c] : terms_) {
    LadderProduct rev(ops.rbegin(), ops.rend());
    for (auto& op : rev) op.dagger = !op.dagger;
    out.accumulate(rev, std::conj(c));
  }
  return out;
}

namespace {

// Bubble-sorts one product into normal order, emitting contraction terms
// into `pending` as they appear.
void normal_order_term(LadderProduct ops, Complex c, std::vector<std::pair<LadderProduct, Complex>>& pending,
                       FermionOperator::TermMap& done) {
  const auto n = ops.size();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j > 0; --j) {
      auto& left = ops[j - 1];
      auto& right = ops[j];
      // target order: creators first, then descending mode within each group
      bool swap = false;
      if (!left.dagger && right.dagger) {
        swap = true;
        if (left.mode == right.mode) {
          // a_p a+_p = 1 - a+_p a_p
          LadderProduct contracted;
          contracted.reserve(n - 2);
          for (std::size_t k = 0; k < n; ++k) {
            if (k != j - 1 && k != j) contracted.push_back(ops[k]);
          }
          pending.emplace_back(std::move(contracted), c);
        }
      } else if (left.dagger == right.dagger) {
        if (left.mode == right.mode) return;  // a+_p a+_p = 0
        swap = left.mode < right.mode;
      }
      if (!swap) break;
      std::swap(left, right);
      c = -c;
    }
  }
  auto [it, inserted] = done.try_emplace(std::move(ops), c);
  if (!inserted) it->second += c;
}

}  // namespace

FermionOperator FermionOperator::normal_ordered(double tol) const {
  std::vector<std::pair<LadderProduct, Complex>> pending(terms_.begin(), terms_.end());
  TermMap done;
  while (!pending.empty()) {
    auto [ops, c] = std::move(pending.back());
    pending.pop_back();
    normal_order_term(std::move(ops), c, pending, done);
  }
  FermionOperator out;
  for (auto& [ops, c] : done) {
    if (std::abs(c) > tol) out.terms_.emplace(ops, c);
  }
  return out;
}

double FermionOperator::squared_norm() const {
  double s = 0.0;
  for (const auto& [ops, c] : terms_) s += std::norm(c);
  return s;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  for (const auto& [ops, c] : other.terms_) accumulate(ops, c);
  std::erase_if(terms_, [](const auto& t) { return std::abs(t.second) <= kPruneTolerance; });
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& other) {
  return *this += other * Complex(-1.0);
}

FermionOperator& FermionOperator::operator*=(Complex scalar) {
  for (auto& [ops, c] : terms_) c *= scalar;
  std::erase_if(terms_, [](const auto& t) { return std::abs(t.second) <= kPruneTolerance; });
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out;
  for (const auto& [oa, ca] : a.terms_) {
    for (const auto& [ob, cb] : b.terms_) {
      LadderProduct ops = oa;
      ops.insert(ops.end(), ob.begin(), ob.end());
      out.accumulate(ops, ca * cb);
    }
  }
  return out;
}

std::string to_text(const FermionOperator& op) {
  std::string out;
  char buf[96];
  for (const auto& [ops, c] : op.terms()) {
    std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", c.real(), c.imag());
    out += buf;
    for (const auto& l : ops) {
      out += ' ';
      out += std::to_string(l.mode);
      if (l.dagger) out += '^';
    }
    out += '\n';
  }
  return out;
}

double MolecularProblem::spin_one_body(int p, int q) const {
  if ((p & 1) != (q & 1)) return 0.0;
  return one_body(p >> 1, q >> 1);
}

double MolecularProblem::spin_eri(int p, int q, int r, int s) const {
  // <pq|rs> needs spin(p) == spin(r) and spin(q) == spin(s)
  if ((p & 1) != (r & 1) || (q & 1) != (s & 1)) return 0.0;
  return eri(p >> 1, q >> 1, r >> 1, s >> 1);
}

void MolecularProblem::validate(double tol) const {
  const int n = n_orbitals;
  if (n <= 0) throw std::invalid_argument("problem has no orbitals");
  if (one_body.rows() != n || one_body.cols() != n || eri.dim() != n) {
    throw std::invalid_argument("integral array sizes disagree with orbital count");
  }
  if (orbital_energies.size() != n) throw std::invalid_argument("orbital energy count mismatch");
  if (n_electrons < 0 || n_electrons > 2 * n) throw std::invalid_argument("electron count out of range");
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (std::abs(one_body(p, q) - one_body(q, p)) > tol) {
        throw std::invalid_argument("one-body integrals not symmetric at (" + std::to_string(p) + "," +
                                    std::to_string(q) + ")");
      }
    }
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = eri(p, q, r, s);
          const double images[] = {eri(q, p, s, r), eri(r, s, p, q), eri(r, q, p, s), eri(p, s, r, q)};
          for (double w : images) {
            if (std::abs(v - w) > tol) {
              throw std::invalid_argument("two-body integrals break permutational symmetry at <" +
                                          std::to_string(p) + std::to_string(q) + "|" + std::to_string(r) +
                                          std::to_string(s) + ">");
            }
          }
        }
}

Eigen::VectorXd fock_diagonal(const MolecularProblem& problem) {
  const int n = problem.n_orbitals;
  const int n_occ = problem.n_occupied();
  Eigen::VectorXd f(n);
  for (int p = 0; p < n; ++p) {
    double v = problem.one_body(p, p);
    for (int i = 0; i < n_occ; ++i) v += 2.0 * problem.eri(p, i, p, i) - problem.eri(p, i, i, p);
    f(p) = v;
  }
  return f;
}

double hartree_fock_energy(const MolecularProblem& problem) {
  double e = problem.core_energy;
  const int n_occ = problem.n_occupied();
  for (int i = 0; i < n_occ; ++i) {
    e += 2.0 * problem.one_body(i, i);
    for (int j = 0; j < n_occ; ++j) e += 2.0 * problem.eri(i, j, i, j) - problem.eri(i, j, j, i);
  }
  if (problem.n_electrons % 2 == 1) {
    // singly occupied alpha orbital on top of the closed shell
    const int a = n_occ;
    e += problem.one_body(a, a);
    for (int j = 0; j < n_occ; ++j) e += 2.0 * problem.eri(a, j, a, j) - problem.eri(a, j, j, a);
  }
  return e;
}

FermionOperator build_hamiltonian(const MolecularProblem& problem) {
  problem.validate();
  const int n = problem.n_spin_orbitals();
  FermionOperator h = FermionOperator::identity(problem.core_energy);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const double v = problem.spin_one_body(p, q);
      if (v != 0.0) h.accumulate({{p, true}, {q, false}}, v);
    }
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (r == s) continue;
          const double v = problem.spin_eri(p, q, r, s);
          if (v != 0.0) h.accumulate({{p, true}, {q, true}, {s, false}, {r, false}}, 0.5 * v);
        }
    }
  return h;
}

}  // namespace vqesim
