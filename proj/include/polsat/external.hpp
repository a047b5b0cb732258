#pragma once

#include <chrono>
#include <filesystem>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <vector>

#include "polsat/formula.hpp"
#include "polsat/run_record.hpp"
#include "polsat/syntax.hpp"

namespace polsat {

/// An executable honouring the solver contract: it receives the formula as
/// its only argument and prints `sat` or `unsat` on the first stdout line,
/// optionally followed by an evidence line.
struct ExternalSolverSpec {
  std::filesystem::path path;
  std::string name;  // basename of path
  Dialect dialect = Dialect::standard();
  std::chrono::duration<double> timeout_grace = std::chrono::seconds(1);

  static ExternalSolverSpec from_path(std::filesystem::path path);

  friend bool operator==(const ExternalSolverSpec&, const ExternalSolverSpec&) = default;
};

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered list of registered external solvers, persisted as one absolute
/// path per line.
class Registry {
 public:
  Registry() = default;
  explicit Registry(std::vector<ExternalSolverSpec> solvers);

  const std::vector<ExternalSolverSpec>& solvers() const noexcept { return solvers_; }
  bool contains(const std::filesystem::path& path) const;
  /// Appends unless present; returns whether it was appended.
  bool add(ExternalSolverSpec spec);

  /// Missing file loads as an empty registry.
  static Registry load(const std::filesystem::path& file);
  void save(const std::filesystem::path& file) const;

  friend bool operator==(const Registry&, const Registry&) = default;

 private:
  std::vector<ExternalSolverSpec> solvers_;
};

/// `$POLSAT_REGISTRY`, else `$XDG_CONFIG_HOME/polsat/solvers`, else
/// `$HOME/.config/polsat/solvers`.
std::filesystem::path default_registry_path();

struct Registration {
  Registry registry;
  bool added = false;
  std::string message;  // `<path> is added.` or a duplicate warning
};

/// Registers the executable at `solver` (as typed by the user) and saves
/// the registry. Throws RegistryError when the path is missing or not
/// executable. Registering a path twice leaves the registry unchanged.
Registration register_solver(const std::string& solver, const std::filesystem::path& registry_file);

/// Runs one external solver on `f`. Never throws: spawn failures and
/// unreadable output become Unknown(solver-error).
RunRecord invoke(const ExternalSolverSpec& spec, const Formula& f, std::chrono::duration<double> timeout,
                 std::stop_token stop = {});

/// Verdict from raw solver stdout per the contract above.
Verdict parse_solver_output(std::string_view output);

}  // namespace polsat
