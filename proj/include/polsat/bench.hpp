#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polsat/portfolio.hpp"

namespace polsat {

enum class BenchMode {
  Race,      // one portfolio race per formula
  Separate,  // every solver on every formula, no cancellation
};

/// Results for one input line.
struct FormulaOutcome {
  std::size_t index = 0;  // 1-based among formula lines
  std::string text;
  std::string error;  // parse error; records empty when set
  /// Separate mode: one record per solver. Race mode: a single record
  /// whose `solver` is the race winner ("none" if nobody answered).
  std::vector<RunRecord> records;
};

struct SolverTotal {
  std::string solver;
  double seconds = 0.0;  // timeouts charged at the full timeout
  std::size_t solved = 0;
};

struct BenchReport {
  /// Name the race-mode totals are reported under.
  static constexpr std::string_view kPortfolioName = "polsat";

  double timeout = 60.0;
  std::optional<std::uint64_t> seed;
  BenchMode mode = BenchMode::Separate;
  std::vector<std::string> solvers;
  std::vector<FormulaOutcome> formulas;

  /// Per-solver totals, fastest first (ties by name).
  std::vector<SolverTotal> totals() const;
  /// Seconds charged per solver, in input order; parse errors excluded.
  std::map<std::string, std::vector<double>> times() const;
};

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formula lines of a benchmark file: blank lines and `#` comments skipped.
std::vector<std::string> read_formula_file(const std::filesystem::path& path);

BenchReport run_formulas(const std::vector<std::string>& formulas, const std::vector<SolverSpec>& solvers,
                         double timeout, BenchMode mode);

/// Runs every formula in `path` (one after another, so timings do not
/// contend) and writes the report to `output`.
BenchReport run_file(const std::filesystem::path& path, const std::vector<SolverSpec>& solvers,
                     double timeout = 60.0, BenchMode mode = BenchMode::Separate,
                     const std::filesystem::path& output = "output.txt");

/// The output.txt layout: header, one tab-separated line per formula
/// result (`index verdict solver seconds`), then the totals block.
void write_report(const BenchReport& report, std::ostream& out);

/// Console summary: `<solver>\t<seconds>s` fastest first, then
/// `The generated file is <name>.`
std::vector<std::string> summary_lines(const BenchReport& report, const std::string& output_name = "output.txt");

/// Per solver: solved-instance times sorted ascending, then prefix-summed.
/// Unsolved instances are left out.
using CactusSeries = std::map<std::string, std::vector<double>>;
CactusSeries cactus(const BenchReport& report);

/// Two columns per solver block: instances solved, cumulative seconds.
void write_cactus(const CactusSeries& series, std::ostream& out);

/// Seconds with at most four decimals, trailing zeros dropped (`0.0026`).
std::string format_seconds(double seconds);

}  // namespace polsat
