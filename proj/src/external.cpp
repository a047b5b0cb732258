#include "polsat/external.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include "polsat/process.hpp"

namespace polsat {

namespace fs = std::filesystem;

ExternalSolverSpec ExternalSolverSpec::from_path(fs::path path) {
  ExternalSolverSpec spec;
  spec.name = path.filename().string();
  spec.path = std::move(path);
  if (spec.name.empty()) throw RegistryError("solver path '" + spec.path.string() + "' has no file name");
  return spec;
}

Registry::Registry(std::vector<ExternalSolverSpec> solvers) {
  for (auto& s : solvers) add(std::move(s));
}

bool Registry::contains(const fs::path& path) const {
  return std::any_of(solvers_.begin(), solvers_.end(), [&](const auto& s) { return s.path == path; });
}

bool Registry::add(ExternalSolverSpec spec) {
  if (contains(spec.path)) return false;
  solvers_.push_back(std::move(spec));
  return true;
}

Registry Registry::load(const fs::path& file) {
  Registry r;
  std::ifstream in(file);
  if (!in) return r;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    r.add(ExternalSolverSpec::from_path(line));
  }
  return r;
}

void Registry::save(const fs::path& file) const {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw RegistryError("cannot write registry " + file.string());
    for (const auto& s : solvers_) out << s.path.string() << '\n';
    if (!out) throw RegistryError("cannot write registry " + file.string());
  }
  fs::rename(tmp, file);
}

fs::path default_registry_path() {
  if (const char* explicit_path = std::getenv("POLSAT_REGISTRY"); explicit_path && *explicit_path)
    return explicit_path;
  if (const char* xdg = std::getenv("XDG_CONFIG_HOME"); xdg && *xdg) return fs::path(xdg) / "polsat" / "solvers";
  if (const char* home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".config" / "polsat" / "solvers";
  return fs::path(".polsat_solvers");
}

Registration register_solver(const std::string& solver, const fs::path& registry_file) {
  std::error_code ec;
  if (!fs::is_regular_file(solver, ec)) throw RegistryError(solver + ": no such file");
  if (::access(solver.c_str(), X_OK) != 0) throw RegistryError(solver + ": not executable");

  Registration result;
  result.registry = Registry::load(registry_file);
  auto spec = ExternalSolverSpec::from_path(fs::absolute(solver).lexically_normal());
  result.added = result.registry.add(std::move(spec));
  if (result.added) {
    result.registry.save(registry_file);
    result.message = solver + " is added.";
  } else {
    result.message = "warning: " + solver + " is already registered";
  }
  return result;
}

Verdict parse_solver_output(std::string_view output) {
  auto take_line = [&output]() {
    auto nl = output.find('\n');
    auto line = output.substr(0, nl);
    output = nl == std::string_view::npos ? std::string_view{} : output.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return std::string(line);
  };
  // The verdict line is matched exactly (modulo case and a CRLF ending).
  auto first = take_line();
  std::transform(first.begin(), first.end(), first.begin(), [](unsigned char c) { return std::tolower(c); });
  if (first == "unsat") return Verdict::unsat();
  if (first != "sat") return Verdict::solver_error("unrecognised output '" + first + "'");

  auto verdict = Verdict::sat();
  // The second line is evidence only if it reads as evidence; solvers that
  // print other information there (e.g. `from <name>`) are still accepted.
  if (!output.empty()) {
    auto second = take_line();
    try {
      verdict.set_evidence(parse_evidence(second));
    } catch (const EvidenceError&) {
    }
  }
  return verdict;
}

RunRecord invoke(const ExternalSolverSpec& spec, const Formula& f, std::chrono::duration<double> timeout,
                 std::stop_token stop) {
  RunRecord record;
  record.solver = spec.name;
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(timeout);
  auto outcome = run_process({spec.path.string(), render(f, spec.dialect)}, deadline, std::move(stop),
                             spec.timeout_grace);
  record.elapsed = outcome.elapsed;
  switch (outcome.status) {
    case ProcessOutcome::Status::SpawnFailed:
      record.verdict = Verdict::solver_error(outcome.error);
      break;
    case ProcessOutcome::Status::TimedOut:
      record.verdict = Verdict::timeout();
      record.elapsed = timeout.count();
      break;
    case ProcessOutcome::Status::Cancelled:
      record.verdict = Verdict::cancelled();
      break;
    case ProcessOutcome::Status::Exited:
      record.verdict = parse_solver_output(outcome.output);
      break;
  }
  return record;
}

}  // namespace polsat
