#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polsat/formula.hpp"

namespace polsat {

/// Random formula with exactly `length` AST nodes over propositions
/// p0 .. p{nvars-1}. Operators are drawn uniformly from
/// {!, &, |, X, U, R, G, F, ->, <->}; leaves are propositions, or a constant
/// with probability 1/20. Same arguments, same formula.
Formula gen_random(int length, int nvars, std::uint64_t seed);

/// One entry of the built-in specification pattern library. `shape` uses
/// `{p}`, `{q}`, `{r}`, `{s}`, `{t}` as proposition placeholders.
struct SpecPattern {
  std::string_view name;
  std::string_view shape;
};

const std::vector<SpecPattern>& pattern_library();

/// Conjunction of `n` patterns drawn from pattern_library(). Each
/// placeholder either reuses an already chosen proposition or takes a
/// fresh one, by a seeded coin flip.
Formula gen_conjunction(int n, std::uint64_t seed);

/// (a1 | b1) & ... & (an | bn) & ((G c) & (X !c)), left-nested like the
/// published O1 listing. Unsatisfiable for every n.
Formula gen_O1(int n);

}  // namespace polsat
