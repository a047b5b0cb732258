#include <algorithm>
#include <map>
#include <set>

#include "polsat/engine.hpp"
#include "polsat/normalize.hpp"

namespace polsat {

namespace {

// A literal set: name -> polarity. Kept as an ordered set of pairs so that
// sets can be deduplicated inside a family.
using Literal = std::pair<std::string, bool>;
using Obligation = std::set<Literal>;
using Family = std::set<Obligation>;

struct TooLarge {};

Family obligations(const Formula& f) {
  switch (f.op()) {
    case Op::True: return {Obligation{}};
    case Op::False: return {};
    case Op::Prop: return {Obligation{{f.name(), true}}};
    case Op::Not: return {Obligation{{f.child().name(), false}}};
    case Op::Next: return obligations(f.child());
    case Op::Until:
    case Op::Release: return obligations(f.rhs());
    case Op::Or: {
      auto out = obligations(f.lhs());
      auto r = obligations(f.rhs());
      out.insert(r.begin(), r.end());
      if (out.size() > kMaxObligations) throw TooLarge{};
      return out;
    }
    case Op::And: {
      auto l = obligations(f.lhs());
      auto r = obligations(f.rhs());
      if (l.size() * r.size() > kMaxObligations) throw TooLarge{};
      Family out;
      for (const auto& a : l)
        for (const auto& b : r) {
          Obligation u = a;
          u.insert(b.begin(), b.end());
          out.insert(std::move(u));
        }
      return out;
    }
    default:
      throw std::logic_error("obligations() expects negation normal form");
  }
}

bool consistent(const Obligation& o) {
  for (auto it = o.begin(); it != o.end(); ++it) {
    auto nx = std::next(it);
    if (nx != o.end() && nx->first == it->first) return false;
  }
  return true;
}

}  // namespace

std::optional<LassoWord> sat_shortcut(const Formula& f) {
  Family family;
  try {
    family = obligations(nnf(f));
  } catch (const TooLarge&) {
    return std::nullopt;
  }
  for (const auto& o : family) {
    if (!consistent(o)) continue;
    State state;
    for (const auto& [name, positive] : o)
      if (positive) state.insert(name);
    LassoWord candidate{{}, {state}};
    if (eval(candidate, f)) return candidate;
  }
  return std::nullopt;
}

}  // namespace polsat
