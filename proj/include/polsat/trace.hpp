#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polsat/formula.hpp"

namespace polsat {

/// Propositions that hold at one position; everything else is false.
using State = std::set<std::string>;

/// The ultimately periodic word prefix · loop^ω.
struct LassoWord {
  std::vector<State> prefix;
  std::vector<State> loop;  // never empty

  std::size_t length() const noexcept { return prefix.size() + loop.size(); }
  /// State at absolute position `i` of the infinite word.
  const State& at(std::size_t i) const;

  friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

class EvidenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact satisfaction check: w ⊨ f over the infinite word, not a bounded
/// unrolling. Throws std::invalid_argument when w.loop is empty.
bool eval(const LassoWord& w, const Formula& f);

/// Truth value of `f` at every position 0 .. w.length()-1.
std::vector<bool> eval_positions(const LassoWord& w, const Formula& f);

/// Text form: states are space-separated true propositions, states are
/// joined by `,`, the prefix is followed by `;` and the loop is wrapped in
/// parentheses. `(b)` is b^ω; `a;(a b)` is {a}·{a,b}^ω.
std::string print_evidence(const LassoWord& w);
LassoWord parse_evidence(std::string_view text);

}  // namespace polsat
