#include "vqesim/pools.hpp"

#include "vqesim/jordan_wigner.hpp"
#include "vqesim/log.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace vqesim {

namespace {

int alpha(int p) { return 2 * p; }
int beta(int p) { return 2 * p + 1; }

LadderOp cre(int mode) { return {mode, true}; }
LadderOp ann(int mode) { return {mode, false}; }

struct Excitation {
  LadderProduct ops;
  double weight;
};

// T - T+, normal-ordered and scaled to unit coefficient norm. Empty if null.
FermionOperator anti_hermitian_generator(const std::vector<Excitation>& excitations) {
  FermionOperator t;
  for (const auto& e : excitations) t.accumulate(e.ops, e.weight);
  FermionOperator g = (t - t.adjoint()).normal_ordered();
  const double norm = std::sqrt(g.squared_norm());
  if (norm < 1e-10) return {};
  return g * Complex(1.0 / norm);
}

std::string orbital_pair(int p, int q) { return std::to_string(p) + "," + std::to_string(q); }

void push_generator(GeneratorPool& pool, std::string label, FermionOperator g) {
  if (g.empty()) return;
  QubitOperator q = jordan_wigner(g, pool.n_qubits);
  pool.generators.push_back({std::move(label), std::move(g), std::move(q)});
}

// Singlet couplings of the double excitation (p,q) -> (r,s) on spatial
// orbitals, written as a+_r a_p a+_s a_q products.
std::array<std::vector<Excitation>, 2> singlet_doubles(int p, int q, int r, int s) {
  const int pa = alpha(p), pb = beta(p), qa = alpha(q), qb = beta(q);
  const int ra = alpha(r), rb = beta(r), sa = alpha(s), sb = beta(s);
  auto term = [](int r_, int p_, int s_, int q_, double w) {
    return Excitation{{cre(r_), ann(p_), cre(s_), ann(q_)}, w};
  };
  std::vector<Excitation> coupled = {
      term(ra, pa, sa, qa, 2.0), term(rb, pb, sb, qb, 2.0), term(ra, pa, sb, qb, 1.0),
      term(rb, pb, sa, qa, 1.0), term(ra, pb, sb, qa, 1.0), term(rb, pa, sa, qb, 1.0),
  };
  std::vector<Excitation> open = {
      term(ra, pa, sb, qb, 1.0), term(rb, pb, sa, qa, 1.0), term(ra, pb, sb, qa, -1.0),
      term(rb, pa, sa, qb, -1.0),
  };
  return {coupled, open};
}

std::vector<Excitation> singlet_single(int from, int to) {
  return {{{cre(alpha(to)), ann(alpha(from))}, 1.0}, {{cre(beta(to)), ann(beta(from))}, 1.0}};
}

void require_closed_shell(const MolecularProblem& problem) {
  problem.validate();
  if (problem.n_electrons % 2 != 0) {
    throw std::invalid_argument("spin-adapted pools need an even electron count");
  }
}

bool warn_if_trivial(const MolecularProblem& problem, std::string_view what) {
  if (problem.n_electrons == 0 || problem.n_electrons == problem.n_spin_orbitals()) {
    warn(std::string(what) + " pool is empty: no occupied-to-virtual excitations");
    return true;
  }
  return false;
}

QubitOperator qubit_ladder(const LadderOp& op) {
  QubitOperator out(0.5, PauliWord::single(op.mode, Axis::X));
  out += QubitOperator(op.dagger ? Complex(0, -0.5) : Complex(0, 0.5), PauliWord::single(op.mode, Axis::Y));
  return out;
}

}  // namespace

std::string_view to_string(PoolKind kind) {
  switch (kind) {
    case PoolKind::UCCSD: return "uccsd";
    case PoolKind::QUCCSD: return "quccsd";
    case PoolKind::UCCGSD: return "uccgsd";
    case PoolKind::KUPCCGSD: return "k-upccgsd";
    case PoolKind::SPIN_COMPLEMENT_GSD: return "spin-complement-gsd";
    case PoolKind::QUBIT: return "qubit";
  }
  return "unknown";
}

std::vector<std::string> GeneratorPool::labels() const {
  std::vector<std::string> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(g.label);
  return out;
}

GeneratorPool uccsd_pool(const MolecularProblem& problem) {
  require_closed_shell(problem);
  GeneratorPool pool{PoolKind::UCCSD, 0, problem.n_spin_orbitals(), {}};
  if (warn_if_trivial(problem, "UCCSD")) return pool;
  const int n_occ = problem.n_occupied();
  const int n = problem.n_orbitals;

  for (int i = 0; i < n_occ; ++i) {
    for (int a = n_occ; a < n; ++a) {
      push_generator(pool, "S " + std::to_string(i) + "->" + std::to_string(a),
                     anti_hermitian_generator(singlet_single(i, a)));
    }
  }
  for (int i = 0; i < n_occ; ++i)
    for (int j = i; j < n_occ; ++j)
      for (int a = n_occ; a < n; ++a)
        for (int b = a; b < n; ++b) {
          auto [coupled, open] = singlet_doubles(i, j, a, b);
          const auto tag = orbital_pair(i, j) + "->" + orbital_pair(a, b);
          push_generator(pool, "DA " + tag, anti_hermitian_generator(coupled));
          push_generator(pool, "DB " + tag, anti_hermitian_generator(open));
        }
  return pool;
}

GeneratorPool quccsd_pool(const MolecularProblem& problem) {
  GeneratorPool pool = uccsd_pool(problem);
  pool.kind = PoolKind::QUCCSD;
  for (auto& g : pool.generators) {
    QubitOperator q;
    for (const auto& [ops, c] : g.fermionic.terms()) {
      QubitOperator product = QubitOperator::identity(c);
      for (const auto& op : ops) product = product * qubit_ladder(op);
      q += product;
    }
    g.qubit = std::move(q);
  }
  return pool;
}

GeneratorPool uccgsd_pool(const MolecularProblem& problem) {
  require_closed_shell(problem);
  const int n = problem.n_orbitals;
  GeneratorPool pool{PoolKind::UCCGSD, 0, problem.n_spin_orbitals(), {}};
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      push_generator(pool, "S " + std::to_string(p) + "->" + std::to_string(q),
                     anti_hermitian_generator(singlet_single(p, q)));
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) pairs.emplace_back(p, q);
  for (std::size_t x = 0; x < pairs.size(); ++x) {
    for (std::size_t y = x; y < pairs.size(); ++y) {
      auto [p, q] = pairs[x];
      auto [r, s] = pairs[y];
      auto [coupled, open] = singlet_doubles(p, q, r, s);
      const auto tag = orbital_pair(p, q) + "->" + orbital_pair(r, s);
      push_generator(pool, "DA " + tag, anti_hermitian_generator(coupled));
      push_generator(pool, "DB " + tag, anti_hermitian_generator(open));
    }
  }
  return pool;
}

GeneratorPool kupccgsd_pool(const MolecularProblem& problem, int k) {
  if (k < 1) throw std::invalid_argument("k-UpCCGSD needs k >= 1");
  problem.validate();
  const int n = problem.n_orbitals;
  GeneratorPool pool{PoolKind::KUPCCGSD, k, problem.n_spin_orbitals(), {}};
  for (int rep = 1; rep <= k; ++rep) {
    const std::string prefix = "k" + std::to_string(rep) + " ";
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        for (int spin = 0; spin < 2; ++spin) {
          const int from = 2 * p + spin, to = 2 * q + spin;
          push_generator(pool,
                         prefix + "S " + std::to_string(p) + (spin ? "b" : "a") + "->" + std::to_string(q) +
                             (spin ? "b" : "a"),
                         anti_hermitian_generator({{{cre(to), ann(from)}, 1.0}}));
        }
      }
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        push_generator(pool, prefix + "P " + std::to_string(p) + "->" + std::to_string(q),
                       anti_hermitian_generator(
                           {{{cre(alpha(q)), cre(beta(q)), ann(beta(p)), ann(alpha(p))}, 1.0}}));
      }
    }
  }
  return pool;
}

GeneratorPool spin_complement_gsd_pool(const MolecularProblem& problem) {
  problem.validate();
  const int n = problem.n_orbitals;
  GeneratorPool pool{PoolKind::SPIN_COMPLEMENT_GSD, 0, problem.n_spin_orbitals(), {}};

  // Generators are unit-norm, so "equal up to a scalar" means equal up to sign.
  std::set<std::vector<std::pair<LadderProduct, long long>>> seen;
  auto fingerprint = [](const FermionOperator& g, double sign) {
    std::vector<std::pair<LadderProduct, long long>> key;
    for (const auto& [ops, c] : g.terms()) key.emplace_back(ops, std::llround(sign * c.real() * 1e9));
    return key;
  };
  auto add_unique = [&](std::string label, FermionOperator g) {
    if (g.empty()) return;
    auto key = fingerprint(g, 1.0);
    if (seen.contains(key) || seen.contains(fingerprint(g, -1.0))) return;
    seen.insert(std::move(key));
    push_generator(pool, std::move(label), std::move(g));
  };

  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      add_unique("S " + std::to_string(p) + "->" + std::to_string(q),
                 anti_hermitian_generator(singlet_single(p, q)));
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) pairs.emplace_back(p, q);
  auto term = [](int r_, int p_, int s_, int q_) {
    return Excitation{{cre(r_), ann(p_), cre(s_), ann(q_)}, 1.0};
  };
  for (std::size_t x = 0; x < pairs.size(); ++x) {
    for (std::size_t y = x; y < pairs.size(); ++y) {
      auto [p, q] = pairs[x];
      auto [r, s] = pairs[y];
      const int pa = alpha(p), pb = beta(p), qa = alpha(q), qb = beta(q);
      const int ra = alpha(r), rb = beta(r), sa = alpha(s), sb = beta(s);
      const auto tag = orbital_pair(p, q) + "->" + orbital_pair(r, s);
      add_unique("DA " + tag, anti_hermitian_generator({term(ra, pa, sa, qa), term(rb, pb, sb, qb)}));
      add_unique("DB " + tag, anti_hermitian_generator({term(ra, pa, sb, qb), term(rb, pb, sa, qa)}));
      add_unique("DC " + tag, anti_hermitian_generator({term(ra, pb, sb, qa), term(rb, pa, sa, qb)}));
    }
  }
  return pool;
}

GeneratorPool qubit_pool_from_fermionic(const GeneratorPool& pool) {
  GeneratorPool out{PoolKind::QUBIT, 0, pool.n_qubits, {}};
  std::set<PauliWord> seen;
  for (const auto& g : pool.generators) {
    for (const auto& [word, c] : g.qubit.terms()) {
      PauliWord skeleton = word.without_z();
      if (skeleton.is_identity() || !seen.insert(skeleton).second) continue;
      out.generators.push_back({skeleton.str(), {}, QubitOperator(Complex(0, 1), skeleton)});
    }
  }
  return out;
}

std::vector<Mp2Amplitude> mp2_spin_amplitudes(const MolecularProblem& problem) {
  const int n_so = problem.n_spin_orbitals();
  const int n_e = problem.n_electrons;
  auto eps = [&](int p) { return problem.orbital_energies(p >> 1); };
  std::vector<Mp2Amplitude> out;
  for (int i = 0; i < n_e; ++i)
    for (int j = i + 1; j < n_e; ++j)
      for (int a = n_e; a < n_so; ++a)
        for (int b = a + 1; b < n_so; ++b) {
          const double numerator = problem.spin_eri(i, j, b, a) - problem.spin_eri(i, j, a, b);
          if (numerator == 0.0) continue;
          const double denominator = eps(i) + eps(j) - eps(a) - eps(b);
          if (std::abs(denominator) < 1e-8) {
            warn("degenerate MP2 denominator for " + std::to_string(i) + "," + std::to_string(j) + "->" +
                 std::to_string(a) + "," + std::to_string(b) + "; amplitude set to 0");
            continue;
          }
          out.push_back({a, b, i, j, numerator / denominator});
        }
  return out;
}

Eigen::VectorXd mp2_amplitudes(const MolecularProblem& problem, const GeneratorPool& pool) {
  if (pool.kind != PoolKind::UCCSD && pool.kind != PoolKind::QUCCSD) {
    throw std::invalid_argument("MP2 guesses are defined for UCCSD and QUCCSD pools only");
  }
  FermionOperator t;
  for (const auto& amp : mp2_spin_amplitudes(problem)) {
    t.accumulate({cre(amp.a), cre(amp.b), ann(amp.i), ann(amp.j)}, amp.value);
  }
  const FermionOperator g = (t - t.adjoint()).normal_ordered();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pool.size()));
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const auto& gen = pool.generators[k];
    if (gen.label.starts_with("S ")) continue;
    double overlap = 0.0;
    for (const auto& [ops, c] : gen.fermionic.terms()) {
      auto it = g.terms().find(ops);
      if (it != g.terms().end()) overlap += (std::conj(c) * it->second).real();
    }
    theta(static_cast<Eigen::Index>(k)) = overlap;
  }
  return theta;
}

}  // namespace vqesim
