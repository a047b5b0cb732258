#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "polsat/generators.hpp"
#include "polsat/normalize.hpp"
#include "polsat/syntax.hpp"

using namespace polsat;

namespace {

bool only_core(const Formula& f, bool nnf_form) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Prop: return true;
    case Op::Implies:
    case Op::Iff:
    case Op::Globally:
    case Op::Finally: return false;
    case Op::Not: return nnf_form ? f.child().is(Op::Prop) : only_core(f.child(), nnf_form);
    case Op::Next: return only_core(f.child(), nnf_form);
    default: return only_core(f.lhs(), nnf_form) && only_core(f.rhs(), nnf_form);
  }
}

const std::vector<std::string> kProps = {"p0", "p1", "p2"};

}  // namespace

TEST_CASE("desugar") {
  CHECK(desugar(parse("F p")) == until(tt(), prop("p")));
  CHECK(desugar(parse("G p")) == release(ff(), prop("p")));
  CHECK(desugar(parse("a")) == prop("a"));
  CHECK(desugar(parse("a -> b")) == disj(negate(prop("a")), prop("b")));
  CHECK(desugar(parse("a <-> b")) ==
        conj(disj(negate(prop("a")), prop("b")), disj(prop("a"), negate(prop("b")))));
}

TEST_CASE("nnf") {
  CHECK(nnf(parse("!(a U b)")) == release(negate(prop("a")), negate(prop("b"))));
  CHECK(nnf(parse("!(a R b)")) == until(negate(prop("a")), negate(prop("b"))));
  CHECK(nnf(parse("!!p")) == prop("p"));
  CHECK(nnf(parse("!X p")) == next(negate(prop("p"))));
  CHECK(nnf(parse("!(a & b)")) == disj(negate(prop("a")), negate(prop("b"))));
  CHECK(nnf(parse("!true")) == ff());
  CHECK(nnf(parse("!G p")) == until(tt(), negate(prop("p"))));
}

TEST_CASE("closure") {
  auto c = closure(parse("a U b"));
  REQUIRE(c.size() == 3);
  CHECK(c[0] == parse("a U b"));
  CHECK(c[1] == prop("a"));
  CHECK(c[2] == prop("b"));
  CHECK(closure(prop("p")) == std::vector<Formula>{prop("p")});
  // shared subformulas appear once, at first appearance
  auto d = closure(nnf(parse("(a U b) & X (a U b)")));
  CHECK(d.size() == 5);
}

TEST_CASE("closure is no larger than the formula") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto f = nnf(gen_random(1 + static_cast<int>(seed % 40), 3, seed));
    CHECK(closure(f).size() <= f.size());
  }
}

TEST_CASE("normal forms are idempotent and keep only core operators") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto f = gen_random(1 + static_cast<int>(seed % 30), 3, seed);
    auto d = desugar(f);
    auto n = nnf(f);
    CHECK(desugar(d) == d);
    CHECK(nnf(n) == n);
    CHECK(only_core(d, false));
    CHECK(only_core(n, true));
  }
}

TEST_CASE("normal forms preserve semantics on random formula/word pairs") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    auto f = gen_random(1 + static_cast<int>(rng() % 25), 3, rng());
    auto w = oracle::random_lasso(rng, kProps, 3, 3);
    const bool expect = oracle::satisfies(w, f);
    CHECK(oracle::satisfies(w, desugar(f)) == expect);
    CHECK(oracle::satisfies(w, nnf(f)) == expect);
    CHECK(eval(w, desugar(f)) == expect);
    CHECK(eval(w, nnf(f)) == expect);
  }
}

TEST_CASE("iff desugars identically on {a,b}^w") {
  LassoWord w{{}, {{"a", "b"}}};
  auto f = parse("a <-> b");
  CHECK(eval(w, f));
  CHECK(eval(w, desugar(f)) == eval(w, f));
}
