#include "polsat/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "polsat/syntax.hpp"

namespace polsat {

namespace {

bool solved(const RunRecord& r) { return r.verdict.is_definitive(); }

std::string fixed6(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", seconds);
  return buf;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string format_seconds(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", seconds < 0 ? 0.0 : seconds);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::map<std::string, std::vector<double>> BenchReport::times() const {
  std::map<std::string, std::vector<double>> out;
  for (const auto& name : solvers) out[name];
  for (const auto& f : formulas) {
    if (!f.error.empty()) continue;
    for (const auto& r : f.records) {
      const std::string key = mode == BenchMode::Race ? std::string(kPortfolioName) : r.solver;
      out[key].push_back(std::min(r.elapsed, timeout));
    }
  }
  return out;
}

std::vector<SolverTotal> BenchReport::totals() const {
  std::map<std::string, SolverTotal> acc;
  for (const auto& name : solvers) acc[name].solver = name;
  for (const auto& f : formulas) {
    if (!f.error.empty()) continue;
    for (const auto& r : f.records) {
      const std::string key = mode == BenchMode::Race ? std::string(kPortfolioName) : r.solver;
      auto& t = acc[key];
      t.solver = key;
      t.seconds += std::min(r.elapsed, timeout);
      if (solved(r)) ++t.solved;
    }
  }
  std::vector<SolverTotal> out;
  for (auto& [_, t] : acc) out.push_back(t);
  std::stable_sort(out.begin(), out.end(), [](const SolverTotal& a, const SolverTotal& b) {
    return a.seconds < b.seconds;
  });
  return out;
}

std::vector<std::string> read_formula_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BenchError("cannot read formula file " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

BenchReport run_formulas(const std::vector<std::string>& formulas, const std::vector<SolverSpec>& solvers,
                         double timeout, BenchMode mode) {
  BenchReport report;
  report.timeout = timeout;
  report.mode = mode;
  if (mode == BenchMode::Race) {
    report.solvers = {std::string(BenchReport::kPortfolioName)};
  } else {
    for (const auto& s : solvers) report.solvers.push_back(s.name);
  }

  std::size_t index = 0;
  for (const auto& text : formulas) {
    FormulaOutcome outcome;
    outcome.index = ++index;
    outcome.text = text;
    try {
      const auto f = parse(text);
      if (mode == BenchMode::Race) {
        auto result = race(f, solvers, timeout);
        outcome.records.push_back({result.winner, result.verdict, result.elapsed});
      } else {
        // run_all returns fastest first; keep the configured solver order.
        auto records = run_all(f, solvers, timeout);
        for (const auto& s : solvers)
          for (auto& r : records)
            if (r.solver == s.name) outcome.records.push_back(std::move(r));
      }
    } catch (const ParseError& e) {
      outcome.error = e.what();
    }
    report.formulas.push_back(std::move(outcome));
  }
  return report;
}

BenchReport run_file(const std::filesystem::path& path, const std::vector<SolverSpec>& solvers, double timeout,
                     BenchMode mode, const std::filesystem::path& output) {
  auto report = run_formulas(read_formula_file(path), solvers, timeout, mode);
  std::ofstream out(output, std::ios::trunc);
  if (!out) throw BenchError("cannot write " + output.string());
  write_report(report, out);
  return report;
}

void write_report(const BenchReport& report, std::ostream& out) {
  out << "# polsat benchmark report\n";
  out << "timeout\t" << format_seconds(report.timeout) << "\n";
  out << "seed\t" << (report.seed ? std::to_string(*report.seed) : std::string("-")) << "\n";
  out << "mode\t" << (report.mode == BenchMode::Race ? "race" : "separate") << "\n";
  out << "solvers\t" << join(report.solvers, ',') << "\n";
  out << "formulas\t" << report.formulas.size() << "\n";
  out << "# index\tverdict\tsolver\tseconds\n";
  for (const auto& f : report.formulas) {
    if (!f.error.empty()) {
      out << f.index << "\terror\t-\t" << fixed6(0) << "\n";
      out << "# " << f.index << ": " << f.error << "\n";
      continue;
    }
    for (const auto& r : f.records)
      out << f.index << '\t' << r.verdict.label() << '\t' << r.solver << '\t' << fixed6(r.elapsed) << "\n";
  }
  out << "# totals: solver\tseconds\tsolved\n";
  for (const auto& t : report.totals()) out << t.solver << '\t' << fixed6(t.seconds) << '\t' << t.solved << "\n";
}

std::vector<std::string> summary_lines(const BenchReport& report, const std::string& output_name) {
  std::vector<std::string> lines;
  for (const auto& t : report.totals()) lines.push_back(t.solver + "\t" + format_seconds(t.seconds) + "s");
  lines.push_back("The generated file is " + output_name + ".");
  return lines;
}

CactusSeries cactus(const BenchReport& report) {
  CactusSeries series;
  for (const auto& name : report.solvers) series[name];
  for (const auto& f : report.formulas) {
    if (!f.error.empty()) continue;
    for (const auto& r : f.records) {
      if (!solved(r)) continue;
      const std::string key = report.mode == BenchMode::Race ? std::string(BenchReport::kPortfolioName) : r.solver;
      series[key].push_back(r.elapsed);
    }
  }
  for (auto& [_, times] : series) {
    std::sort(times.begin(), times.end());
    double sum = 0;
    for (auto& t : times) t = (sum += t);
  }
  return series;
}

void write_cactus(const CactusSeries& series, std::ostream& out) {
  for (const auto& [solver, points] : series) {
    out << "# " << solver << "\n";
    for (std::size_t i = 0; i < points.size(); ++i) out << (i + 1) << '\t' << fixed6(points[i]) << "\n";
    out << "\n";
  }
}

}  // namespace polsat
