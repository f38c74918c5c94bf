#pragma once

#include "vqesim/fermion.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace vqesim {

/// Malformed FCIDUMP input; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses FCIDUMP text. Two-electron records are chemists' (ij|kl) and are
/// expanded over the eight-fold symmetry; records "e i 0 0 0" carry orbital
/// energies, otherwise the closed-shell Fock diagonal is used.
MolecularProblem parse_fcidump(std::string_view text);
MolecularProblem read_fcidump(const std::filesystem::path& path);

/// Writes every symmetry-unique integral plus orbital energies at full
/// double precision.
std::string write_fcidump(const MolecularProblem& problem);

struct ActiveSpaceSpec {
  int n_frozen = 0;   // lowest orbitals kept doubly occupied
  int n_removed = 0;  // highest orbitals deleted
  /// NOON mode: freeze orbitals with occupation above first, remove those
  /// below second. Overrides the counts.
  std::optional<std::pair<double, double>> noon_thresholds;
};

/// Folds frozen orbitals into the core energy and one-body term and drops
/// removed virtuals. Throws std::invalid_argument when no active electrons
/// or too few active spin orbitals remain.
MolecularProblem reduce_active_space(const MolecularProblem& problem, const ActiveSpaceSpec& spec);

/// Contents of the `<name>.ref.json` sidecar.
struct ReferenceData {
  double hf = 0.0;
  double mp2 = 0.0;
  double fci = 0.0;
  std::string geometry;
  std::string basis;
  std::optional<Eigen::VectorXd> noons;  // natural-orbital fixtures only
};

ReferenceData read_reference(const std::filesystem::path& path);

/// Sidecar path for a given FCIDUMP: "x.fcidump" -> "x.ref.json".
std::filesystem::path reference_path_for(const std::filesystem::path& fcidump);

}  // namespace vqesim
