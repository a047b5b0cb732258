// polsat: portfolio LTL satisfiability checker, command-line front end.
//
// argv is parsed by hand: the single-dash long flags (-sm, -add) are part of
// the established interface and do not fit a getopt-style parser.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "polsat/bench.hpp"
#include "polsat/external.hpp"
#include "polsat/portfolio.hpp"
#include "polsat/syntax.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kTimeout = 2;

constexpr const char* kUsageText =
    "usage: polsat [-e] [-s] [-t seconds] [formula]\n"
    "       polsat -sm <file> [-t seconds]\n"
    "       polsat -add <solverpath> [formula]\n"
    "\n"
    "  -e           print an evidence lasso for satisfiable formulas\n"
    "  -s           run every solver to completion and compare the results\n"
    "  -sm <file>   check every formula in <file>, write output.txt\n"
    "  -add <path>  register an external solver executable\n"
    "  -t <secs>    per-solver timeout (default 60)\n"
    "\n"
    "Without a formula, one line is read from standard input.\n";

struct Options {
  bool evidence = false;
  bool separate = false;
  std::optional<std::string> batch_file;
  std::optional<std::string> add_path;
  double timeout = 60.0;
  std::optional<std::string> formula;
};

struct UsageError {
  std::string message;
};

Options parse_args(int argc, char** argv) {
  Options opt;
  auto value = [&](int& i, const std::string& flag) -> std::string {
    if (i + 1 >= argc) throw UsageError{flag + " needs an argument"};
    return argv[++i];
  };
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "-e") {
      opt.evidence = true;
    } else if (arg == "-s") {
      opt.separate = true;
    } else if (arg == "-sm") {
      opt.batch_file = value(i, arg);
    } else if (arg == "-add") {
      opt.add_path = value(i, arg);
    } else if (arg == "-t") {
      const auto text = value(i, arg);
      char* end = nullptr;
      opt.timeout = std::strtod(text.c_str(), &end);
      if (end == text.c_str() || *end != '\0' || !(opt.timeout > 0)) throw UsageError{"bad timeout: " + text};
    } else if (arg == "-h" || arg == "--help") {
      throw UsageError{};
    } else if (arg.size() > 1 && arg[0] == '-' && arg != "--") {
      // a formula may start with '-' only as "->", which never parses anyway
      throw UsageError{"unknown flag " + arg};
    } else {
      if (arg == "--") {
        if (++i >= argc) break;
      }
      if (opt.formula) throw UsageError{"more than one formula given"};
      opt.formula = argv[i];
    }
  }
  if (opt.batch_file && opt.formula) throw UsageError{"-sm does not take a formula argument"};
  return opt;
}

std::vector<polsat::SolverSpec> solvers() {
  return polsat::default_solvers(polsat::Registry::load(polsat::default_registry_path()));
}

int check_one(const polsat::Formula& f, const Options& opt) {
  auto result = polsat::race(f, solvers(), opt.timeout, opt.evidence);
  std::cout << result.verdict.label() << "\n";
  if (opt.evidence && result.verdict.evidence()) std::cout << polsat::print_evidence(*result.verdict.evidence()) << "\n";
  std::cout << "from " << result.winner << "\n";
  std::cout << "eclipse time: " << polsat::format_seconds(result.elapsed) << "s\n";
  return result.verdict.is_definitive() ? kOk : kTimeout;
}

int check_all(const polsat::Formula& f, const Options& opt) {
  const auto records = polsat::run_all(f, solvers(), opt.timeout);
  bool any = false;
  for (const auto& r : records) {
    std::cout << r.solver << ": " << r.verdict.label() << "\t" << polsat::format_seconds(r.elapsed) << "s\n";
    if (opt.evidence && r.evidence()) std::cout << r.solver << " evidence: " << polsat::print_evidence(*r.evidence()) << "\n";
    any = any || r.verdict.is_definitive();
  }
  const auto report = polsat::arbitrate(records, f);
  if (report.conflict()) {
    std::cout << "conflict:";
    for (const auto& [label, names] : report.by_verdict) {
      std::cout << " " << label << " from";
      for (const auto& n : names) std::cout << " " << n;
      std::cout << ";";
    }
    std::cout << "\n";
  }
  for (const auto& n : report.invalid_evidence) std::cout << "invalid evidence from " << n << "\n";
  return any ? kOk : kTimeout;
}

int run_batch(const Options& opt) {
  const auto report = polsat::run_file(*opt.batch_file, solvers(), opt.timeout, polsat::BenchMode::Separate);
  for (const auto& line : polsat::summary_lines(report)) std::cout << line << "\n";
  return kOk;
}

int run(const Options& opt) {
  if (opt.add_path) {
    auto reg = polsat::register_solver(*opt.add_path, polsat::default_registry_path());
    std::cout << reg.message << "\n";
  }
  if (opt.batch_file) return run_batch(opt);

  std::string text;
  if (opt.formula) {
    text = *opt.formula;
  } else {
    std::cout << "please input the formula:" << std::endl;
    if (!std::getline(std::cin, text)) {
      std::cerr << "polsat: no formula given\n";
      return kUsage;
    }
  }
  const auto f = polsat::parse(text);
  return opt.separate ? check_all(f, opt) : check_one(f, opt);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(parse_args(argc, argv));
  } catch (const UsageError& e) {
    if (!e.message.empty()) std::cerr << "polsat: " << e.message << "\n";
    std::cerr << kUsageText;
    return kUsage;
  } catch (const polsat::ParseError& e) {
    std::cerr << "polsat: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "polsat: " << e.what() << "\n";
    return kUsage;
  }
}
