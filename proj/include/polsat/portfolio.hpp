#pragma once

#include <map>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <variant>
#include <vector>

#include "polsat/external.hpp"
#include "polsat/formula.hpp"
#include "polsat/run_record.hpp"

namespace polsat {

enum class InternalStrategy { Tableau, Lasso, Shortcut };

/// A solver the portfolio can run: one of the in-process procedures or a
/// registered executable.
struct SolverSpec {
  std::string name;
  std::variant<InternalStrategy, ExternalSolverSpec> kind;
  bool supports_evidence = true;

  static SolverSpec internal(InternalStrategy strategy);
  static SolverSpec external(ExternalSolverSpec spec);
};

/// `tableau`, `lasso` and `shortcut`, in that order.
std::vector<SolverSpec> internal_solvers();

/// Internal solvers followed by every registered external solver.
std::vector<SolverSpec> default_solvers(const Registry& registry);

struct PortfolioResult {
  Verdict verdict;
  std::string winner;  // "none" when nothing definitive arrived
  double elapsed = 0.0;
  std::vector<RunRecord> records;
};

class PortfolioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Runs one solver to completion, its deadline, or until `stop`.
/// A solver still running at the deadline is charged exactly `timeout`.
RunRecord run_solver(const SolverSpec& solver, const Formula& f, double timeout, std::stop_token stop = {});

/// Starts every solver at once; the first Sat/Unsat wins and the rest are
/// cancelled (ties go to the lower index). With `want_evidence`, a Sat
/// without evidence keeps the evidence-capable solvers running until one
/// of them supplies a lasso or the timeout hits. Evidence is checked with
/// eval() and dropped when it does not satisfy `f`.
///
/// Throws PortfolioError when `solvers` is empty or names repeat.
PortfolioResult race(const Formula& f, const std::vector<SolverSpec>& solvers, double timeout,
                     bool want_evidence = false);

/// Runs every solver to completion or its own timeout, concurrently and
/// without cancellation. Records come back fastest first.
std::vector<RunRecord> run_all(const Formula& f, const std::vector<SolverSpec>& solvers, double timeout);

struct ConsistencyReport {
  /// Solver names per definitive verdict label (`sat` / `unsat`).
  std::map<std::string, std::vector<std::string>> by_verdict;
  /// Solvers whose Sat evidence fails eval() against the formula.
  std::vector<std::string> invalid_evidence;

  bool conflict() const { return by_verdict.size() > 1; }
  bool consistent() const { return !conflict() && invalid_evidence.empty(); }
};

/// Cross-checks run_all() records. Unknown verdicts never conflict.
ConsistencyReport arbitrate(const std::vector<RunRecord>& records, const Formula& f);

}  // namespace polsat
