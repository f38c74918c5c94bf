#include "cli.hpp"

#include "vqesim/adapt.hpp"
#include "vqesim/circuit.hpp"
#include "vqesim/exact.hpp"
#include "vqesim/fcidump.hpp"
#include "vqesim/jordan_wigner.hpp"
#include "vqesim/pools.hpp"
#include "vqesim/vqe.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <glob.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqesim::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Failure in the input or the run configuration (exit code 2).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string ansatz = "uccsd";
  int k = 1;
  std::string pool = "fermionic";
  std::string guess = "zeros";
  std::string optimizer = "quasi-newton";
  double tol = 1e-6;
  double eps_norm = 1e-3;
  int n_max_grads = 1;
  std::optional<int> max_iter;
  int trotter = 1;
  int freeze = 0;
  int remove_virtual = 0;
  std::string convention = "per-generator";
  std::string out_dir;
};

json manifest(const std::string& command, const Options& o) {
  json m;
  m["command"] = command;
  m["input"] = o.input;
  if (command == "vqe" || command == "scan" || command == "count-gates") {
    m["ansatz"] = o.ansatz;
    if (o.ansatz == "k-upccgsd") m["k"] = o.k;
    m["n_trotter"] = o.trotter;
  }
  m["transform"] = "jw";
  m["active_space"] = {{"freeze", o.freeze}, {"remove_virtual", o.remove_virtual}};
  if (command == "vqe" || command == "scan" || command == "adapt") {
    m["optimizer"] = {{"kind", o.optimizer}, {"tol", o.tol}};
    if (command != "adapt") m["optimizer"]["guess"] = o.guess;
    if (command != "adapt" && o.max_iter) m["optimizer"]["max_iterations"] = *o.max_iter;
  }
  if (command == "adapt") {
    m["adapt"] = {{"pool", o.pool}, {"eps_norm", o.eps_norm}, {"n_max_grads", o.n_max_grads}};
    if (o.max_iter) m["adapt"]["max_external_iterations"] = *o.max_iter;
  }
  if (command == "count-gates") m["convention"] = o.convention;
  m["output_directory"] = o.out_dir;
  return m;
}

json envelope(const std::string& command, const Options& o) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["manifest"] = manifest(command, o);
  return doc;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const GateCounts& g) {
  return {{"cnot", g.cnot}, {"single_qubit", g.single_qubit}, {"parameters", g.parameters}};
}

json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

struct Loaded {
  MolecularProblem full;
  MolecularProblem active;
  std::optional<ReferenceData> reference;
};

Loaded load(const std::string& path, const Options& o) {
  Loaded l;
  l.full = read_fcidump(path);
  const fs::path ref = reference_path_for(path);
  if (fs::exists(ref)) {
    l.reference = read_reference(ref);
    if (l.reference->noons && l.reference->noons->size() == l.full.n_orbitals) l.full.occupations = l.reference->noons;
  }
  try {
    l.active = reduce_active_space(l.full, {o.freeze, o.remove_virtual, std::nullopt});
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return l;
}

/// Full-space FCI energy: the sidecar value when present, else the oracle.
double full_space_fci(const Loaded& l) {
  if (l.reference) return l.reference->fci;
  return exact_ground_state(qubit_hamiltonian(l.full), l.full.n_spin_orbitals(), l.full.n_electrons).energy;
}

GeneratorPool make_pool(const MolecularProblem& problem, const Options& o) {
  if (o.ansatz == "uccsd") return uccsd_pool(problem);
  if (o.ansatz == "quccsd") return quccsd_pool(problem);
  if (o.ansatz == "uccgsd") return uccgsd_pool(problem);
  if (o.ansatz == "k-upccgsd") return kupccgsd_pool(problem, o.k);
  if (o.ansatz == "spin-complement-gsd") return spin_complement_gsd_pool(problem);
  throw InputError("unknown ansatz " + o.ansatz);
}

VqeConfig vqe_config(const Options& o, bool inner) {
  VqeConfig cfg;
  cfg.tol = o.tol;
  cfg.optimizer = o.optimizer == "simplex" ? OptimizerKind::SIMPLEX : OptimizerKind::QUASI_NEWTON;
  cfg.initial_guess = o.guess == "mp2" ? InitialGuess::MP2 : InitialGuess::ZEROS;
  if (o.max_iter && !inner) cfg.max_iterations = *o.max_iter;
  return cfg;
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  std::ofstream f(fs::path(dir) / name);
  if (!f) throw InputError("cannot write " + (fs::path(dir) / name).string());
  f << text;
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct VqeRun {
  VqeResult result;
  GateCounts per_generator;
  GateCounts shared;
  double fci = 0.0;
  double hf = 0.0;
  int n_qubits = 0;
};

VqeRun run_vqe(const Loaded& l, const Options& o) {
  const MolecularProblem& p = l.active;
  const GeneratorPool pool = make_pool(p, o);
  if (pool.size() == 0) throw InputError("the " + o.ansatz + " pool is empty for this problem");
  const VqeConfig cfg = vqe_config(o, false);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  Eigen::VectorXd theta0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pool.size()));
  if (cfg.initial_guess == InitialGuess::MP2) {
    if (pool.kind != PoolKind::UCCSD && pool.kind != PoolKind::QUCCSD) {
      throw InputError("--guess mp2 needs --ansatz uccsd or quccsd");
    }
    theta0 = mp2_amplitudes(p, pool);
  }

  const AnsatzState ansatz = ansatz_from_pool(pool, hartree_fock_bitstring(p.n_electrons, p.n_spin_orbitals()), o.trotter);
  const EnergyObjective objective(qubit_hamiltonian(p), ansatz);

  VqeRun run;
  run.result = minimize(objective, theta0, cfg);
  run.fci = full_space_fci(l);
  run.result.error_vs_fci = run.result.energy - run.fci;
  run.hf = hartree_fock_energy(p);
  run.per_generator = count_ansatz_gates(ansatz, CountingConvention::PerGenerator);
  run.shared = count_ansatz_gates(ansatz, CountingConvention::SharedStrings);
  run.n_qubits = p.n_spin_orbitals();
  return run;
}

int cmd_fci(const Options& o, std::ostream& out) {
  const Loaded l = load(o.input, o);
  const QubitOperator h = qubit_hamiltonian(l.active);
  const GroundState gs = exact_ground_state(h, l.active.n_spin_orbitals(), l.active.n_electrons);
  json doc = envelope("fci", o);
  doc["fci_energy"] = gs.energy;
  doc["hf_energy"] = hartree_fock_energy(l.active);
  doc["dimension"] = fci_dimension(l.active.n_orbitals, l.active.n_electrons);
  doc["n_qubits"] = l.active.n_spin_orbitals();
  doc["n_electrons"] = l.active.n_electrons;
  doc["pauli_strings"] = h.size();
  if (l.reference) doc["reference_fci"] = l.reference->fci;
  const std::string text = doc.dump(2) + "\n";
  out << text;
  write_file(o.out_dir, "fci.json", text);
  return kExitOk;
}

int cmd_dimension(int n_orbitals, int n_electrons, std::ostream& out) {
  std::uint64_t dim = 0;
  try {
    dim = fci_dimension(n_orbitals, n_electrons);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["manifest"] = {{"command", "dimension"}, {"n_orbitals", n_orbitals}, {"n_electrons", n_electrons}};
  doc["dimension"] = dim;
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_vqe(const Options& o, std::ostream& out) {
  const Loaded l = load(o.input, o);
  const VqeRun run = run_vqe(l, o);
  const VqeResult& r = run.result;

  json doc = envelope("vqe", o);
  doc["result"] = {{"energy", r.energy},
                   {"fci_energy", run.fci},
                   {"error_vs_fci", r.error_vs_fci},
                   {"hf_energy", run.hf},
                   {"n_qubits", run.n_qubits},
                   {"n_parameters", r.theta_opt.size()},
                   {"n_evaluations", r.n_evaluations},
                   {"converged", r.converged},
                   {"message", r.message},
                   {"theta", to_json(r.theta_opt)}};
  json gates = envelope("vqe", o);
  gates["gate_counts"] = {{"per_generator", to_json(run.per_generator)}, {"shared_strings", to_json(run.shared)}};
  doc["gate_counts"] = gates["gate_counts"];

  std::ostringstream csv;
  csv << "iteration,energy\n";
  for (const auto& [it, e] : r.trace) csv << it << ',' << csv_number(e) << '\n';

  const std::string text = doc.dump(2) + "\n";
  out << text;
  write_file(o.out_dir, "vqe.json", text);
  write_file(o.out_dir, "vqe_trace.csv", csv.str());
  write_file(o.out_dir, "gates.json", gates.dump(2) + "\n");
  return r.converged ? kExitOk : kExitNotConverged;
}

int cmd_adapt(const Options& o, std::ostream& out) {
  const Loaded l = load(o.input, o);
  const MolecularProblem& p = l.active;

  GeneratorPool pool = spin_complement_gsd_pool(p);
  AdaptConfig cfg;
  if (o.pool == "qubit") {
    pool = qubit_pool_from_fermionic(pool);
    cfg.pool_kind = AdaptPoolKind::QUBIT;
  }
  if (pool.size() == 0) throw InputError("the operator pool is empty for this problem");
  cfg.eps_norm = o.eps_norm;
  cfg.n_max_grads = o.n_max_grads;
  if (o.max_iter) cfg.max_external_iterations = *o.max_iter;
  cfg.vqe = vqe_config(o, true);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  const double fci = full_space_fci(l);
  const AdaptResult r = adapt_vqe(p, qubit_hamiltonian(p), pool, cfg, fci);

  std::ostringstream csv;
  csv << "iteration,energy,error_vs_fci,grad_norm,n_params,cnot_count\n";
  for (const auto& row : r.iterations) {
    csv << row.iteration << ',' << csv_number(row.energy) << ',' << csv_number(row.error_vs_fci) << ','
        << csv_number(row.grad_norm) << ',' << row.n_params << ',' << row.cnot_count << '\n';
  }

  json doc = envelope("adapt", o);
  doc["result"] = {{"energy", r.energy},
                   {"fci_energy", fci},
                   {"error_vs_fci", finite_or_null(r.error_vs_fci)},
                   {"n_parameters", r.theta.size()},
                   {"stop_reason", to_string(r.stop_reason)},
                   {"message", r.message},
                   {"pool_size", pool.size()},
                   {"chosen", r.chosen},
                   {"theta", to_json(r.theta)},
                   {"energy_trace", r.energy_trace},
                   {"grad_norm_trace", r.grad_norm_trace}};
  doc["gate_counts"] = {{"per_generator", to_json(r.gate_counts)},
                        {"shared_strings", to_json(count_ansatz_gates(r.ansatz, CountingConvention::SharedStrings))}};

  const std::string text = doc.dump(2) + "\n";
  out << text;
  write_file(o.out_dir, "adapt.json", text);
  write_file(o.out_dir, "adapt_trace.csv", csv.str());
  switch (r.stop_reason) {
    case StopReason::NORM_BELOW_EPS: return kExitOk;
    case StopReason::MAX_ITERATIONS: return kExitNotConverged;
    case StopReason::VQE_FAILED: return kExitSolver;
  }
  return kExitSolver;
}

int cmd_count_gates(const Options& o, std::ostream& out) {
  const Loaded l = load(o.input, o);
  const MolecularProblem& p = l.active;
  const GeneratorPool pool = make_pool(p, o);
  const AnsatzState ansatz = ansatz_from_pool(pool, hartree_fock_bitstring(p.n_electrons, p.n_spin_orbitals()), o.trotter);
  const auto convention =
      o.convention == "shared-strings" ? CountingConvention::SharedStrings : CountingConvention::PerGenerator;

  json doc = envelope("count-gates", o);
  doc["n_qubits"] = p.n_spin_orbitals();
  doc["pool_size"] = pool.size();
  doc["hamiltonian_pauli_strings"] = qubit_hamiltonian(p).size();
  doc["gate_counts"] = to_json(count_ansatz_gates(ansatz, convention));
  const std::string text = doc.dump(2) + "\n";
  out << text;
  write_file(o.out_dir, "gates.json", text);
  return kExitOk;
}

int cmd_dump(const Options& o, std::ostream& out) {
  const Loaded l = load(o.input, o);
  const std::string text = to_text(qubit_hamiltonian(l.active));
  out << text;
  write_file(o.out_dir, "hamiltonian.txt", text);
  return kExitOk;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> paths;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  }
  ::globfree(&g);
  std::sort(paths.begin(), paths.end());
  return paths;
}

/// "h6_sto3g_1.25.fcidump" -> "1.25"
std::string bond_label(const std::string& path) {
  const std::string stem = fs::path(path).stem().string();
  const auto cut = stem.rfind('_');
  return cut == std::string::npos ? stem : stem.substr(cut + 1);
}

int cmd_scan(const std::string& pattern, const Options& o, std::ostream& out, std::ostream& err) {
  const auto files = expand_glob(pattern);
  if (files.empty()) throw InputError("no files match " + pattern);

  std::ostringstream csv;
  csv << "bond_label,energy,error\n";
  int status = kExitOk;
  for (const auto& file : files) {
    Options per_file = o;
    per_file.input = file;
    try {
      const VqeRun run = run_vqe(load(file, per_file), per_file);
      csv << bond_label(file) << ',' << csv_number(run.result.energy) << ',' << csv_number(run.result.error_vs_fci)
          << '\n';
      if (!run.result.converged) {
        err << "warning: " << file << ": optimizer did not converge\n";
        status = std::max(status, kExitNotConverged);
      }
    } catch (const InputError& e) {
      err << "error: " << file << ": " << e.what() << "\n";
      status = std::max(status, kExitInput);
    } catch (const ParseError& e) {
      err << "error: " << file << ": " << e.what() << "\n";
      status = std::max(status, kExitInput);
    } catch (const std::invalid_argument& e) {
      err << "error: " << file << ": " << e.what() << "\n";
      status = std::max(status, kExitInput);
    } catch (const std::exception& e) {
      err << "error: " << file << ": " << e.what() << "\n";
      status = std::max(status, kExitSolver);
    }
  }
  out << csv.str();
  write_file(o.out_dir, "scan.csv", csv.str());
  json doc = envelope("scan", o);
  doc["manifest"]["input"] = pattern;
  doc["files"] = files;
  write_file(o.out_dir, "scan.json", doc.dump(2) + "\n");
  return status;
}

void add_active_space(CLI::App* cmd, Options& o) {
  cmd->add_option("--freeze", o.freeze, "Lowest spatial orbitals kept doubly occupied")->check(CLI::NonNegativeNumber);
  cmd->add_option("--remove-virtual", o.remove_virtual, "Highest spatial orbitals removed")
      ->check(CLI::NonNegativeNumber);
}

void add_ansatz(CLI::App* cmd, Options& o) {
  cmd->add_option("--ansatz", o.ansatz, "Generator family")
      ->check(CLI::IsMember({"uccsd", "quccsd", "uccgsd", "k-upccgsd", "spin-complement-gsd"}));
  cmd->add_option("--k", o.k, "Replica count for k-upccgsd")->check(CLI::PositiveNumber);
  cmd->add_option("--trotter", o.trotter, "Trotter steps")->check(CLI::PositiveNumber);
}

void add_guess(CLI::App* cmd, Options& o) {
  cmd->add_option("--guess", o.guess, "Initial parameters")->check(CLI::IsMember({"zeros", "mp2"}));
}

void add_optimizer(CLI::App* cmd, Options& o) {
  cmd->add_option("--optimizer", o.optimizer, "Classical optimizer")
      ->check(CLI::IsMember({"quasi-newton", "simplex"}));
  cmd->add_option("--tol", o.tol, "Optimizer tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statevector VQE, UCC and ADAPT-VQE for small molecules", "vqesim"};
  app.require_subcommand(1);
  Options o;
  std::string pattern;
  int dim_orbitals = 0;
  int dim_electrons = 0;

  auto* fci = app.add_subcommand("fci", "Exact ground state of an FCIDUMP Hamiltonian");
  fci->add_option("fcidump", o.input)->required();
  add_active_space(fci, o);

  auto* dimension = app.add_subcommand("dimension", "Closed-shell determinant count");
  dimension->add_option("n_orbitals", dim_orbitals)->required();
  dimension->add_option("n_electrons", dim_electrons)->required();

  auto* vqe = app.add_subcommand("vqe", "Fixed-ansatz VQE");
  vqe->add_option("fcidump", o.input)->required();
  add_ansatz(vqe, o);
  add_guess(vqe, o);
  add_optimizer(vqe, o);
  vqe->add_option("--max-iter", o.max_iter, "Optimizer iteration limit")->check(CLI::PositiveNumber);
  add_active_space(vqe, o);

  auto* adapt = app.add_subcommand("adapt", "ADAPT-VQE");
  adapt->add_option("fcidump", o.input)->required();
  adapt->add_option("--pool", o.pool, "Operator pool")->check(CLI::IsMember({"fermionic", "qubit"}));
  adapt->add_option("--eps-norm", o.eps_norm, "Gradient-norm threshold")->check(CLI::PositiveNumber);
  adapt->add_option("--n-max-grads", o.n_max_grads, "Operators added per iteration")->check(CLI::PositiveNumber);
  adapt->add_option("--max-iter", o.max_iter, "External iteration limit")->check(CLI::NonNegativeNumber);
  add_optimizer(adapt, o);
  add_active_space(adapt, o);

  auto* count = app.add_subcommand("count-gates", "Staircase gate counts of a fixed ansatz");
  count->add_option("fcidump", o.input)->required();
  add_ansatz(count, o);
  count->add_option("--convention", o.convention, "CNOT counting convention")
      ->check(CLI::IsMember({"per-generator", "shared-strings"}));
  add_active_space(count, o);

  auto* scan = app.add_subcommand("scan", "VQE over every FCIDUMP matching a glob");
  scan->add_option("pattern", pattern, "Glob, quoted")->required();
  add_ansatz(scan, o);
  add_guess(scan, o);
  add_optimizer(scan, o);
  scan->add_option("--max-iter", o.max_iter, "Optimizer iteration limit")->check(CLI::PositiveNumber);
  add_active_space(scan, o);

  auto* dump = app.add_subcommand("dump", "Print the Jordan-Wigner qubit Hamiltonian");
  dump->add_option("fcidump", o.input)->required();
  add_active_space(dump, o);

  for (auto* cmd : {fci, vqe, adapt, count, scan, dump}) cmd->add_option("--out", o.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*fci) return cmd_fci(o, out);
    if (*dimension) return cmd_dimension(dim_orbitals, dim_electrons, out);
    if (*vqe) return cmd_vqe(o, out);
    if (*adapt) return cmd_adapt(o, out);
    if (*count) return cmd_count_gates(o, out);
    if (*scan) return cmd_scan(pattern, o, out, err);
    if (*dump) return cmd_dump(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitInput;
}

}  // namespace vqesim::cli
