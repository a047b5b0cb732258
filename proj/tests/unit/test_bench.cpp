#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "paths.hpp"
#include "polsat/bench.hpp"
#include "polsat/engine.hpp"
#include "polsat/generators.hpp"
#include "polsat/syntax.hpp"

using namespace polsat;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
  auto p = fs::temp_directory_path() / ("polsat-bench-" + std::to_string(::getpid()) + "-" + name);
  std::ofstream(p) << content;
  return p;
}

SolverSpec stub(const std::string& name) { return SolverSpec::external(ExternalSolverSpec::from_path(paths::stub(name))); }

RunRecord rec(std::string solver, Verdict v, double t) { return {std::move(solver), std::move(v), t}; }

}  // namespace

TEST_CASE("format_seconds") {
  CHECK(format_seconds(0.001) == "0.001");
  CHECK(format_seconds(0.0026) == "0.0026");
  CHECK(format_seconds(0.57) == "0.57");
  CHECK(format_seconds(2) == "2");
  CHECK(format_seconds(0.00001) == "0");
  CHECK(format_seconds(9.56) == "9.56");
}

TEST_CASE("formula file reading skips blanks and comments") {
  auto p = temp_file("read", "# header\n\na U b\n   \n  # indented comment\nG p  \n");
  CHECK(read_formula_file(p) == std::vector<std::string>{"a U b", "G p"});
  fs::remove(p);
  CHECK_THROWS_AS(read_formula_file("/no/such/file"), BenchError);
}

TEST_CASE("totals and cactus on a hand-made report") {
  BenchReport r;
  r.timeout = 5;
  r.solvers = {"a", "b"};
  r.formulas.push_back({1, "f1", "", {rec("a", Verdict::sat(), 3), rec("b", Verdict::sat(), 0.5)}});
  r.formulas.push_back({2, "f2", "", {rec("a", Verdict::unsat(), 1), rec("b", Verdict::timeout(), 5)}});
  r.formulas.push_back({3, "f3", "", {rec("a", Verdict::sat(), 2), rec("b", Verdict::unsat(), 0.25)}});
  r.formulas.push_back({4, "bad", "syntax error", {}});

  auto totals = r.totals();
  REQUIRE(totals.size() == 2);
  // b's timeout is charged at 5, still ahead of a
  CHECK(totals[0].solver == "b");
  CHECK(totals[0].seconds == 5.75);
  CHECK(totals[0].solved == 2);
  CHECK(totals[1].solver == "a");
  CHECK(totals[1].seconds == 6);
  CHECK(totals[1].solved == 3);

  auto c = cactus(r);
  CHECK(c["a"] == std::vector<double>{1, 3, 6});
  // the timeout is left out of the series but counted in the total
  CHECK(c["b"] == std::vector<double>{0.25, 0.75});

  std::ostringstream out;
  write_cactus(c, out);
  CHECK(out.str() == "# a\n1\t1.000000\n2\t3.000000\n3\t6.000000\n\n# b\n1\t0.250000\n2\t0.750000\n\n");

  CHECK(cactus(BenchReport{}).empty());
}

TEST_CASE("report layout") {
  BenchReport r;
  r.timeout = 60;
  r.seed = 9;
  r.solvers = {"tableau", "lasso"};
  r.formulas.push_back({1, "a U b", "", {rec("tableau", Verdict::sat(), 0.25), rec("lasso", Verdict::sat(), 0.125)}});
  r.formulas.push_back({2, "a U", "syntax error at position 4", {}});
  std::ostringstream out;
  write_report(r, out);
  CHECK(out.str() ==
        "# polsat benchmark report\n"
        "timeout\t60\n"
        "seed\t9\n"
        "mode\tseparate\n"
        "solvers\ttableau,lasso\n"
        "formulas\t2\n"
        "# index\tverdict\tsolver\tseconds\n"
        "1\tsat\ttableau\t0.250000\n"
        "1\tsat\tlasso\t0.125000\n"
        "2\terror\t-\t0.000000\n"
        "# 2: syntax error at position 4\n"
        "# totals: solver\tseconds\tsolved\n"
        "lasso\t0.125000\t1\n"
        "tableau\t0.250000\t1\n");
  CHECK(summary_lines(r) == std::vector<std::string>{"lasso\t0.125s", "tableau\t0.25s", "The generated file is output.txt."});
}

TEST_CASE("empty file gives an empty report") {
  auto in = temp_file("empty", "");
  auto out = fs::temp_directory_path() / ("polsat-bench-out-" + std::to_string(::getpid()));
  auto r = run_file(in, internal_solvers(), 60, BenchMode::Separate, out);
  CHECK(r.formulas.empty());
  for (const auto& t : r.totals()) CHECK(t.seconds == 0);
  CHECK(r.totals().size() == 3);
  CHECK(fs::exists(out));
  fs::remove(in);
  fs::remove(out);
}

TEST_CASE("parse errors are per line, not fatal") {
  auto r = run_formulas({"a U b", "a U", "G p"}, internal_solvers(), 10, BenchMode::Separate);
  REQUIRE(r.formulas.size() == 3);
  CHECK(r.formulas[0].error.empty());
  CHECK_FALSE(r.formulas[1].error.empty());
  CHECK(r.formulas[1].records.empty());
  CHECK(r.formulas[2].records.size() == 3);
}

TEST_CASE("a formula every solver times out on costs exactly the timeout") {
  for (auto mode : {BenchMode::Separate, BenchMode::Race}) {
    auto r = run_formulas({"a U b", "G p"}, {stub("sleeper")}, 0.2, mode);
    auto totals = r.totals();
    REQUIRE(totals.size() == 1);
    CHECK(totals[0].seconds == 0.4);
    CHECK(totals[0].solved == 0);
    CHECK(cactus(r).begin()->second.empty());
  }
}

TEST_CASE("aggregation identity and determinism") {
  std::vector<std::string> formulas;
  for (std::uint64_t s = 0; s < 20; ++s) formulas.push_back(render(gen_random(12, 3, s)));
  auto a = run_formulas(formulas, internal_solvers(), 10, BenchMode::Separate);
  auto b = run_formulas(formulas, internal_solvers(), 10, BenchMode::Separate);
  for (const auto& t : a.totals()) {
    double sum = 0;
    for (const auto& f : a.formulas)
      for (const auto& r : f.records)
        if (r.solver == t.solver) sum += std::min(r.elapsed, a.timeout);
    CHECK(t.seconds == doctest::Approx(sum));
    CHECK(t.solved <= a.formulas.size());
  }
  for (std::size_t i = 0; i < formulas.size(); ++i)
    for (std::size_t k = 0; k < a.formulas[i].records.size(); ++k)
      CHECK(a.formulas[i].records[k].verdict.same_answer(b.formulas[i].records[k].verdict));
}

TEST_CASE("race mode reports under the portfolio name") {
  auto r = run_formulas({"a U b"}, internal_solvers(), 10, BenchMode::Race);
  REQUIRE(r.solvers == std::vector<std::string>{"polsat"});
  REQUIRE(r.formulas[0].records.size() == 1);
  CHECK(r.formulas[0].records[0].verdict.is_sat());
  CHECK(r.totals()[0].solver == "polsat");
  CHECK(r.totals()[0].solved == 1);
}

TEST_CASE("gen_random") {
  CHECK(gen_random(100, 3, 7) == gen_random(100, 3, 7));
  CHECK(gen_random(100, 3, 7) != gen_random(100, 3, 8));
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto f = gen_random(150, 3, s);
    CHECK(f.size() >= 135);
    CHECK(f.size() <= 165);
  }
  std::set<Op> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    seen.insert(f.op());
    if (is_unary(f.op())) walk(f.child());
    if (is_binary(f.op())) {
      walk(f.lhs());
      walk(f.rhs());
    }
  };
  for (std::uint64_t s = 0; s < 20; ++s) walk(gen_random(100, 3, s));
  CHECK(seen.size() == 13);  // every operator and both constants
  CHECK_THROWS(gen_random(0, 3, 1));
  CHECK_THROWS(gen_random(5, 0, 1));
  // 500 formulas at each benchmark length are valid inputs
  for (int len : {100, 125, 150, 175, 200})
    for (std::uint64_t s = 0; s < 500; ++s) {
      const auto f = gen_random(len, 3, s);
      REQUIRE(parse(render(f)) == f);
    }
}

TEST_CASE("gen_conjunction") {
  CHECK(pattern_library().size() >= 10);
  for (const auto& p : pattern_library()) {
    std::string text(p.shape);
    for (std::size_t k; (k = text.find('{')) != std::string::npos;) text.erase(k, 1).erase(k + 1, 1);
    CAPTURE(text);
    CHECK_NOTHROW(parse(text));
    CHECK_FALSE(parse(text).is(Op::And));
  }
  CHECK_FALSE(gen_conjunction(1, 3).is(Op::And));
  CHECK(gen_conjunction(5, 3) == gen_conjunction(5, 3));
  for (int n = 1; n <= 20; ++n)
    for (std::uint64_t s = 0; s < 25; ++s) {
      auto f = gen_conjunction(n, s);
      CHECK(parse(render(f)) == f);
      // n patterns joined by n-1 top-level conjunctions
      int spine = 0;
      for (Formula g = f; g.is(Op::And); g = g.lhs()) ++spine;
      CHECK(spine == n - 1);
    }
}

TEST_CASE("gen_O1") {
  CHECK(gen_O1(1) == parse("((a1)|(b1)) & ((G c)&(X !c))"));
  CHECK(gen_O1(100) == parse(paths::slurp(paths::fixture("o1_100.ltl"))));
  CHECK_THROWS(gen_O1(0));
}
