#include "vqesim/fcidump.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace vqesim {

namespace {

constexpr double kConsistencyTol = 1e-10;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

// Pulls integer KEY=value pairs out of the namelist header.
std::map<std::string, long> parse_header(const std::string& header) {
  std::map<std::string, long> fields;
  std::string cleaned = header;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::string token;
  std::string pending_key;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) {
      if (!pending_key.empty()) {
        try {
          fields[pending_key] = std::stol(token);
        } catch (const std::exception&) {
        }
        pending_key.clear();
      }
      continue;
    }
    std::string key = upper(token.substr(0, eq));
    std::string value = token.substr(eq + 1);
    if (value.empty()) {
      pending_key = key;  // "NORB= 4"
      continue;
    }
    pending_key.clear();
    try {
      fields[key] = std::stol(value);
    } catch (const std::exception&) {
      // ORBSYM and friends carry lists; only the scalar fields matter here
    }
  }
  return fields;
}

class SymmetricStore {
 public:
  explicit SymmetricStore(int n) : chem_(n), set_(static_cast<std::size_t>(n) * n * n * n, false), n_(n) {}

  void assign(int i, int j, int k, int l, double value, std::size_t line) {
    const int images[8][4] = {{i, j, k, l}, {j, i, k, l}, {i, j, l, k}, {j, i, l, k},
                              {k, l, i, j}, {l, k, i, j}, {k, l, j, i}, {l, k, j, i}};
    for (const auto& im : images) {
      const std::size_t idx = ((static_cast<std::size_t>(im[0]) * n_ + im[1]) * n_ + im[2]) * n_ + im[3];
      if (set_[idx] && std::abs(chem_(im[0], im[1], im[2], im[3]) - value) > kConsistencyTol) {
        throw ParseError("two-electron integral (" + std::to_string(i + 1) + " " + std::to_string(j + 1) + "|" +
                             std::to_string(k + 1) + " " + std::to_string(l + 1) +
                             ") contradicts an earlier symmetry-equivalent entry",
                         line);
      }
      chem_(im[0], im[1], im[2], im[3]) = value;
      set_[idx] = true;
    }
  }

  const Tensor4& chem() const { return chem_; }

 private:
  Tensor4 chem_;
  std::vector<bool> set_;
  int n_;
};

double parse_value(std::string token, std::size_t line) {
  std::replace(token.begin(), token.end(), 'D', 'E');
  std::replace(token.begin(), token.end(), 'd', 'e');
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad numeric value '" + token + "'", line);
  }
}

}  // namespace

MolecularProblem parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  std::string header;
  bool header_closed = false;
  bool header_started = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string u = upper(line);
    if (!header_started) {
      if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (u.find("&FCI") == std::string::npos) throw ParseError("expected '&FCI' namelist header", line_no);
      header_started = true;
    }
    header += line + " ";
    if (u.find("&END") != std::string::npos || u.find('/') != std::string::npos) {
      header_closed = true;
      break;
    }
  }
  if (!header_closed) throw ParseError("unterminated namelist header", line_no);
  auto pos = upper(header).find("&FCI");
  auto fields = parse_header(header.substr(pos + 4));
  for (const char* key : {"NORB", "NELEC"}) {
    if (!fields.contains(key)) throw ParseError(std::string("header is missing ") + key, line_no);
  }
  const long norb = fields["NORB"];
  const long nelec = fields["NELEC"];
  if (norb <= 0 || norb > 64) throw ParseError("NORB out of range", line_no);
  if (nelec < 0 || nelec > 2 * norb) throw ParseError("NELEC out of range", line_no);
  if (fields.contains("MS2") && fields["MS2"] != nelec % 2) {
    throw ParseError("only MS2 = NELEC mod 2 is supported", line_no);
  }

  const int n = static_cast<int>(norb);
  SymmetricStore store(n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  std::vector<bool> h_set(static_cast<std::size_t>(n) * n, false);
  Eigen::VectorXd energies = Eigen::VectorXd::Zero(n);
  std::vector<bool> energy_set(static_cast<std::size_t>(n), false);
  double core = 0.0;
  bool core_set = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields_in(line);
    std::string value_token;
    if (!(fields_in >> value_token)) continue;
    long idx[4];
    for (long& v : idx) {
      if (!(fields_in >> v)) throw ParseError("expected a value followed by four indices", line_no);
    }
    std::string extra;
    if (fields_in >> extra) throw ParseError("unexpected trailing field '" + extra + "'", line_no);
    const double value = parse_value(value_token, line_no);
    for (long v : idx) {
      if (v < 0 || v > norb) throw ParseError("orbital index " + std::to_string(v) + " exceeds NORB", line_no);
    }
    const int i = static_cast<int>(idx[0]) - 1, j = static_cast<int>(idx[1]) - 1;
    const int k = static_cast<int>(idx[2]) - 1, l = static_cast<int>(idx[3]) - 1;
    if (idx[0] == 0 && idx[1] == 0 && idx[2] == 0 && idx[3] == 0) {
      if (core_set && std::abs(core - value) > kConsistencyTol) throw ParseError("conflicting core energy", line_no);
      core = value;
      core_set = true;
    } else if (idx[1] == 0 && idx[2] == 0 && idx[3] == 0) {
      if (energy_set[i] && std::abs(energies(i) - value) > kConsistencyTol) {
        throw ParseError("conflicting orbital energy", line_no);
      }
      energies(i) = value;
      energy_set[i] = true;
    } else if (idx[2] == 0 && idx[3] == 0) {
      if (idx[0] == 0 || idx[1] == 0) throw ParseError("malformed one-electron record", line_no);
      for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
        const auto slot = static_cast<std::size_t>(a) * n + b;
        if (h_set[slot] && std::abs(h(a, b) - value) > kConsistencyTol) {
          throw ParseError("one-electron integral contradicts an earlier entry", line_no);
        }
        h(a, b) = value;
        h_set[slot] = true;
      }
    } else {
      if (idx[0] == 0 || idx[1] == 0 || idx[2] == 0 || idx[3] == 0) {
        throw ParseError("malformed two-electron record", line_no);
      }
      store.assign(i, j, k, l, value, line_no);
    }
  }

  MolecularProblem problem;
  problem.n_orbitals = n;
  problem.n_electrons = static_cast<int>(nelec);
  problem.core_energy = core;
  problem.one_body = h;
  problem.eri = Tensor4(n);
  const Tensor4& chem = store.chem();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) problem.eri(p, q, r, s) = chem(p, r, q, s);

  const auto n_energies = std::count(energy_set.begin(), energy_set.end(), true);
  if (n_energies == n) {
    problem.orbital_energies = energies;
  } else if (n_energies == 0) {
    problem.orbital_energies = Eigen::VectorXd::Zero(n);
    problem.orbital_energies = fock_diagonal(problem);
  } else {
    throw ParseError("orbital energies present for only some orbitals", 0);
  }
  return problem;
}

MolecularProblem read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_fcidump(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

std::string write_fcidump(const MolecularProblem& problem) {
  const int n = problem.n_orbitals;
  std::string out = " &FCI NORB=" + std::to_string(n) + ",NELEC=" + std::to_string(problem.n_electrons) +
                    ",MS2=" + std::to_string(problem.n_electrons % 2) + ",\n  ORBSYM=";
  for (int p = 0; p < n; ++p) out += "1,";
  out += "\n  ISYM=1,\n &END\n";
  char buf[128];
  auto record = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%24.16e %4d %4d %4d %4d\n", v, i, j, k, l);
    out += buf;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
          if (k * (k + 1) / 2 + l > i * (i + 1) / 2 + j) continue;
          const double v = problem.eri(i, k, j, l);  // (ij|kl)
          if (v != 0.0) record(v, i + 1, j + 1, k + 1, l + 1);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      if (problem.one_body(i, j) != 0.0) record(problem.one_body(i, j), i + 1, j + 1, 0, 0);
    }
  for (int i = 0; i < n; ++i) record(problem.orbital_energies(i), i + 1, 0, 0, 0);
  record(problem.core_energy, 0, 0, 0, 0);
  return out;
}

MolecularProblem reduce_active_space(const MolecularProblem& problem, const ActiveSpaceSpec& spec) {
  const int n = problem.n_orbitals;
  std::vector<int> frozen, active;
  if (spec.noon_thresholds) {
    if (!problem.occupations) throw std::invalid_argument("NOON selection needs natural-orbital occupations");
    const auto [upper_bound, lower_bound] = *spec.noon_thresholds;
    for (int p = 0; p < n; ++p) {
      const double occ = (*problem.occupations)(p);
      if (occ > upper_bound) {
        frozen.push_back(p);
      } else if (occ >= lower_bound) {
        active.push_back(p);
      }
    }
  } else {
    if (spec.n_frozen < 0 || spec.n_removed < 0) throw std::invalid_argument("negative active-space counts");
    if (spec.n_frozen + spec.n_removed > n) throw std::invalid_argument("active space removes every orbital");
    for (int p = 0; p < spec.n_frozen; ++p) frozen.push_back(p);
    for (int p = spec.n_frozen; p < n - spec.n_removed; ++p) active.push_back(p);
  }

  const int n_occ = problem.n_occupied();
  for (int f : frozen) {
    if (f >= n_occ) throw std::invalid_argument("cannot freeze unoccupied orbital " + std::to_string(f));
  }
  const int electrons = problem.n_electrons - 2 * static_cast<int>(frozen.size());
  const int n_active = static_cast<int>(active.size());
  if (electrons <= 0) throw std::invalid_argument("active space has no electrons left");
  if (2 * n_active < electrons) throw std::invalid_argument("active space has fewer spin orbitals than electrons");
  for (int p = 0; p < n_occ; ++p) {
    const bool kept = std::find(frozen.begin(), frozen.end(), p) != frozen.end() ||
                      std::find(active.begin(), active.end(), p) != active.end();
    if (!kept) throw std::invalid_argument("cannot remove occupied orbital " + std::to_string(p));
  }

  const auto& g = problem.eri;
  MolecularProblem out;
  out.n_orbitals = n_active;
  out.n_electrons = electrons;
  out.core_energy = problem.core_energy;
  for (int i : frozen) {
    out.core_energy += 2.0 * problem.one_body(i, i);
    for (int j : frozen) out.core_energy += 2.0 * g(i, j, i, j) - g(i, j, j, i);
  }
  out.one_body.resize(n_active, n_active);
  out.eri = Tensor4(n_active);
  out.orbital_energies.resize(n_active);
  if (problem.occupations) out.occupations = Eigen::VectorXd(n_active);
  for (int a = 0; a < n_active; ++a) {
    const int p = active[static_cast<std::size_t>(a)];
    out.orbital_energies(a) = problem.orbital_energies(p);
    if (out.occupations) (*out.occupations)(a) = (*problem.occupations)(p);
    for (int b = 0; b < n_active; ++b) {
      const int q = active[static_cast<std::size_t>(b)];
      double v = problem.one_body(p, q);
      for (int i : frozen) v += 2.0 * g(p, i, q, i) - g(p, i, i, q);
      out.one_body(a, b) = v;
      for (int c = 0; c < n_active; ++c)
        for (int d = 0; d < n_active; ++d) {
          out.eri(a, b, c, d) = g(p, q, active[static_cast<std::size_t>(c)], active[static_cast<std::size_t>(d)]);
        }
    }
  }
  return out;
}

ReferenceData read_reference(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  ReferenceData ref;
  try {
    ref.hf = j.at("hf").get<double>();
    ref.mp2 = j.at("mp2").get<double>();
    ref.fci = j.at("fci").get<double>();
    ref.geometry = j.value("geometry", "");
    ref.basis = j.value("basis", "");
    if (j.contains("noons")) {
      auto v = j.at("noons").get<std::vector<double>>();
      ref.noons = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  return ref;
}

std::filesystem::path reference_path_for(const std::filesystem::path& fcidump) {
  auto p = fcidump;
  p.replace_extension(".ref.json");
  return p;
}

}  // namespace vqesim
