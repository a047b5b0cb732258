#pragma once
// Test-side reference machinery. Nothing here calls into the evaluator or
// the engines under test: semantics are decided by walking the lasso's
// position graph directly, so agreement with the library is meaningful.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "polsat/formula.hpp"
#include "polsat/trace.hpp"

namespace oracle {

using polsat::Formula;
using polsat::LassoWord;
using polsat::Op;

// Positions 0..n-1, succ(n-1) = |prefix|. At most 64 positions.
class Lasso {
 public:
  explicit Lasso(const LassoWord& w) : word_(w), n_(w.length()), start_(w.prefix.size()) {}

  std::size_t succ(std::size_t i) const { return i + 1 < n_ ? i + 1 : start_; }

  // Bitmask of positions where f holds.
  std::uint64_t holds(const Formula& f) const {
    const std::uint64_t all = n_ == 64 ? ~0ull : (1ull << n_) - 1;
    auto bit = [](std::uint64_t m, std::size_t i) { return (m >> i) & 1; };
    switch (f.op()) {
      case Op::True: return all;
      case Op::False: return 0;
      case Op::Prop: {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < n_; ++i)
          if (word_.at(i).contains(f.name())) m |= 1ull << i;
        return m;
      }
      case Op::Not: return all & ~holds(f.child());
      case Op::And: return holds(f.lhs()) & holds(f.rhs());
      case Op::Or: return holds(f.lhs()) | holds(f.rhs());
      case Op::Implies: return (all & ~holds(f.lhs())) | holds(f.rhs());
      case Op::Iff: {
        auto a = holds(f.lhs()), b = holds(f.rhs());
        return all & ~(a ^ b);
      }
      case Op::Next: {
        auto a = holds(f.child());
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < n_; ++i)
          if (bit(a, succ(i))) m |= 1ull << i;
        return m;
      }
      case Op::Finally: return until_mask(all, holds(f.child()));
      case Op::Globally: return all & ~until_mask(all, all & ~holds(f.child()));
      case Op::Until: return until_mask(holds(f.lhs()), holds(f.rhs()));
      case Op::Release: return all & ~until_mask(all & ~holds(f.lhs()), all & ~holds(f.rhs()));
    }
    return 0;
  }

  bool satisfies(const Formula& f) const { return holds(f) & 1; }

 private:
  // From each position, walk forward n steps (enough to visit every
  // position reachable from it) looking for b with a holding before.
  std::uint64_t until_mask(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      std::size_t j = i;
      for (std::size_t step = 0; step <= n_; ++step) {
        if ((b >> j) & 1) {
          m |= 1ull << i;
          break;
        }
        if (!((a >> j) & 1)) break;
        j = succ(j);
      }
    }
    return m;
  }

  const LassoWord& word_;
  std::size_t n_;
  std::size_t start_;
};

inline bool satisfies(const LassoWord& w, const Formula& f) { return Lasso(w).satisfies(f); }

// Every state over `props`.
inline std::vector<polsat::State> all_states(const std::vector<std::string>& props) {
  std::vector<polsat::State> out;
  for (std::size_t mask = 0; mask < (1u << props.size()); ++mask) {
    polsat::State s;
    for (std::size_t k = 0; k < props.size(); ++k)
      if (mask >> k & 1) s.insert(props[k]);
    out.push_back(std::move(s));
  }
  return out;
}

// Every lasso with |prefix| <= max_prefix and 1 <= |loop| <= max_loop.
inline std::vector<LassoWord> all_lassos(const std::vector<std::string>& props, std::size_t max_prefix,
                                         std::size_t max_loop) {
  const auto states = all_states(props);
  std::vector<std::vector<polsat::State>> seqs[8];
  seqs[0] = {{}};
  for (std::size_t len = 1; len <= std::max(max_prefix, max_loop); ++len)
    for (const auto& s : seqs[len - 1])
      for (const auto& st : states) {
        auto t = s;
        t.push_back(st);
        seqs[len].push_back(std::move(t));
      }
  std::vector<LassoWord> out;
  for (std::size_t p = 0; p <= max_prefix; ++p)
    for (std::size_t l = 1; l <= max_loop; ++l)
      for (const auto& pre : seqs[p])
        for (const auto& loop : seqs[l]) out.push_back({pre, loop});
  return out;
}

// Exhaustive formula enumeration by AST size over a fixed grammar.
struct Grammar {
  std::vector<Formula> leaves;
  std::vector<Op> unary;
  std::vector<Op> binary;
};

// by_size[k] = every formula of exactly k nodes, k = 1..max_size.
inline std::vector<std::vector<Formula>> enumerate(const Grammar& g, std::size_t max_size) {
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  by_size[1] = g.leaves;
  for (std::size_t k = 2; k <= max_size; ++k) {
    for (Op op : g.unary)
      for (const auto& c : by_size[k - 1]) by_size[k].push_back(Formula::unary(op, c));
    for (Op op : g.binary)
      for (std::size_t l = 1; l + 1 < k; ++l)
        for (const auto& a : by_size[l])
          for (const auto& b : by_size[k - 1 - l]) by_size[k].push_back(Formula::binary(op, a, b));
  }
  return by_size;
}

inline LassoWord random_lasso(std::mt19937_64& rng, const std::vector<std::string>& props, std::size_t max_prefix,
                              std::size_t max_loop) {
  auto state = [&] {
    polsat::State s;
    for (const auto& p : props)
      if (rng() & 1) s.insert(p);
    return s;
  };
  LassoWord w;
  const auto np = std::uniform_int_distribution<std::size_t>(0, max_prefix)(rng);
  const auto nl = std::uniform_int_distribution<std::size_t>(1, max_loop)(rng);
  for (std::size_t i = 0; i < np; ++i) w.prefix.push_back(state());
  for (std::size_t i = 0; i < nl; ++i) w.loop.push_back(state());
  return w;
}

}  // namespace oracle
