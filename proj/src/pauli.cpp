#include "vqesim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vqesim {

namespace {

// Single-qubit product a*b = phase * axis; identity encoded as 0.
struct AxisProduct {
  Complex phase;
  std::uint8_t axis;
};

AxisProduct multiply_axes(Axis a, Axis b) {
  const auto ia = static_cast<std::uint8_t>(a);
  const auto ib = static_cast<std::uint8_t>(b);
  if (ia == ib) return {1.0, 0};
  const bool cyclic = (ib + 3 - ia) % 3 == 1;  // XY, YZ, ZX
  return {cyclic ? Complex(0, 1) : Complex(0, -1), static_cast<std::uint8_t>(ia ^ ib)};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("bad number '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  return '?';
}

PauliWord::PauliWord(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].first < 0) throw std::invalid_argument("negative qubit index");
    if (i > 0 && entries_[i].first == entries_[i - 1].first) {
      throw std::invalid_argument("repeated qubit " + std::to_string(entries_[i].first) +
                                  " in Pauli word");
    }
  }
}

PauliWord PauliWord::single(int qubit, Axis axis) { return PauliWord({{qubit, axis}}); }

PauliWord PauliWord::parse(std::string_view text) {
  std::vector<Entry> entries;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "I") continue;
    Axis axis;
    switch (token[0]) {
      case 'X': axis = Axis::X; break;
      case 'Y': axis = Axis::Y; break;
      case 'Z': axis = Axis::Z; break;
      default: throw std::invalid_argument("bad Pauli factor '" + token + "'");
    }
    int qubit = -1;
    const char* first = token.data() + 1;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, qubit);
    if (first == last || ec != std::errc() || ptr != last) {
      throw std::invalid_argument("bad Pauli factor '" + token + "'");
    }
    entries.emplace_back(qubit, axis);
  }
  return PauliWord(std::move(entries));
}

std::optional<Axis> PauliWord::at(int qubit) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), qubit,
                             [](const Entry& e, int q) { return e.first < q; });
  if (it != entries_.end() && it->first == qubit) return it->second;
  return std::nullopt;
}

PauliWord PauliWord::without_z() const {
  PauliWord out;
  for (const auto& e : entries_) {
    if (e.second != Axis::Z) out.entries_.push_back(e);
  }
  return out;
}

std::uint64_t PauliWord::x_mask() const {
  std::uint64_t mask = 0;
  for (auto [q, a] : entries_) {
    if (a != Axis::Z) mask |= std::uint64_t{1} << q;
  }
  return mask;
}

std::uint64_t PauliWord::z_mask() const {
  std::uint64_t mask = 0;
  for (auto [q, a] : entries_) {
    if (a != Axis::X) mask |= std::uint64_t{1} << q;
  }
  return mask;
}

int PauliWord::y_count() const {
  return static_cast<int>(
      std::count_if(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second == Axis::Y; }));
}

std::string PauliWord::str() const {
  std::string out;
  for (auto [q, a] : entries_) {
    if (!out.empty()) out += ' ';
    out += axis_char(a);
    out += std::to_string(q);
  }
  return out;
}

PauliTerm multiply_terms(const PauliTerm& a, const PauliTerm& b) {
  PauliTerm out;
  out.coefficient = a.coefficient * b.coefficient;
  std::vector<PauliWord::Entry> entries;
  const auto& ea = a.word.entries();
  const auto& eb = b.word.entries();
  entries.reserve(ea.size() + eb.size());
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
      entries.push_back(ea[i++]);
    } else if (i == ea.size() || eb[j].first < ea[i].first) {
      entries.push_back(eb[j++]);
    } else {
      auto prod = multiply_axes(ea[i].second, eb[j].second);
      out.coefficient *= prod.phase;
      if (prod.axis != 0) entries.emplace_back(ea[i].first, static_cast<Axis>(prod.axis));
      ++i;
      ++j;
    }
  }
  out.word = PauliWord(std::move(entries));
  return out;
}

bool words_commute(const PauliWord& a, const PauliWord& b) {
  int anticommuting = 0;
  for (auto [q, axis] : a.entries()) {
    auto other = b.at(q);
    if (other && *other != axis) ++anticommuting;
  }
  return anticommuting % 2 == 0;
}

QubitOperator::QubitOperator(const PauliTerm& term) : QubitOperator(term.coefficient, term.word) {}

QubitOperator::QubitOperator(Complex coefficient, const PauliWord& word) {
  if (std::abs(coefficient) > kPruneTolerance) terms_.emplace(word, coefficient);
}

QubitOperator QubitOperator::identity(Complex coefficient) { return {coefficient, PauliWord{}}; }

void QubitOperator::accumulate(const PauliWord& word, Complex coefficient) {
  auto [it, inserted] = terms_.try_emplace(word, coefficient);
  if (!inserted) it->second += coefficient;
}

Complex QubitOperator::coefficient(const PauliWord& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? Complex{} : it->second;
}

int QubitOperator::max_qubit() const {
  int m = -1;
  for (const auto& [w, c] : terms_) m = std::max(m, w.max_qubit());
  return m;
}

QubitOperator QubitOperator::adjoint() const {
  QubitOperator out = *this;
  for (auto& [w, c] : out.terms_) c = std::conj(c);
  return out;
}

bool QubitOperator::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& t) { return std::abs(t.second.imag()) <= tol; });
}

bool QubitOperator::is_anti_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& t) { return std::abs(t.second.real()) <= tol; });
}

double QubitOperator::squared_norm() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += std::norm(c);
  return s;
}

void QubitOperator::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& t) { return std::abs(t.second) <= tol; });
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& other) {
  for (const auto& [w, c] : other.terms_) accumulate(w, c);
  prune(kPruneTolerance);
  return *this;
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& other) {
  for (const auto& [w, c] : other.terms_) accumulate(w, -c);
  prune(kPruneTolerance);
  return *this;
}

QubitOperator& QubitOperator::operator*=(Complex scalar) {
  for (auto& [w, c] : terms_) c *= scalar;
  prune(kPruneTolerance);
  return *this;
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  QubitOperator out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      auto t = multiply_terms({ca, wa}, {cb, wb});
      out.accumulate(t.word, t.coefficient);
    }
  }
  out.prune(kPruneTolerance);
  return out;
}

QubitOperator simplify(const QubitOperator& op, double tol) {
  QubitOperator out = op;
  out.prune(tol);
  return out;
}

QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) {
  // Only anticommuting pairs survive: [P,Q] = 2PQ when PQ = -QP.
  QubitOperator out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      if (words_commute(wa, wb)) continue;
      auto t = multiply_terms({ca, wa}, {cb, wb});
      out.accumulate(t.word, 2.0 * t.coefficient);
    }
  }
  return simplify(out);
}

SparseMatrixXcd to_sparse_matrix(const QubitOperator& op, int n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) throw std::out_of_range("qubit count out of range");
  for (const auto& [w, c] : op.terms()) {
    if (w.max_qubit() >= n_qubits) {
      throw std::out_of_range("operator touches qubit " + std::to_string(w.max_qubit()) +
                              " but only " + std::to_string(n_qubits) + " qubits requested");
    }
  }
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(op.size() * dim);
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& [w, c] : op.terms()) {
    const auto x = w.x_mask();
    const auto z = w.z_mask();
    const Complex phase = c * kIPow[w.y_count() % 4];
    for (std::uint64_t col = 0; col < dim; ++col) {
      const double sign = (std::popcount(col & z) & 1) ? -1.0 : 1.0;
      triplets.emplace_back(static_cast<int>(col ^ x), static_cast<int>(col), sign * phase);
    }
  }
  SparseMatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(Complex(0.0), 0.0);
  return m;
}

Eigen::MatrixXcd to_matrix(const QubitOperator& op, int n_qubits) {
  return Eigen::MatrixXcd(to_sparse_matrix(op, n_qubits));
}

std::string to_text(const QubitOperator& op) {
  std::string out;
  char buf[96];
  for (const auto& [w, c] : op.terms()) {
    std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", c.real(), c.imag());
    out += buf;
    if (!w.is_identity()) {
      out += ' ';
      out += w.str();
    }
    out += '\n';
  }
  return out;
}

QubitOperator parse_qubit_operator(std::string_view text) {
  QubitOperator out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    try {
      if (line.front() != '(') throw std::invalid_argument("expected '('");
      auto comma = line.find(',');
      auto close = line.find(')');
      if (comma == std::string_view::npos || close == std::string_view::npos || comma > close) {
        throw std::invalid_argument("malformed coefficient");
      }
      Complex c(parse_double(line.substr(1, comma - 1)),
                parse_double(line.substr(comma + 1, close - comma - 1)));
      out.accumulate(PauliWord::parse(line.substr(close + 1)), c);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return simplify(out);
}

}  // namespace vqesim
