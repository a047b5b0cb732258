#include "polsat/generators.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "polsat/syntax.hpp"

namespace polsat {

namespace {

constexpr Op kRandomOps[] = {Op::Not,     Op::And,      Op::Or,      Op::Next,    Op::Until,
                             Op::Release, Op::Globally, Op::Finally, Op::Implies, Op::Iff};

class RandomFormula {
 public:
  RandomFormula(int nvars, std::uint64_t seed) : nvars_(nvars), rng_(seed) {}

  Formula build(int size) {
    if (size <= 1) return leaf();
    if (size == 2) return Formula::unary(pick_unary(), build(1));
    const Op op = kRandomOps[uniform(0, 9)];
    if (is_unary(op)) return Formula::unary(op, build(size - 1));
    const int left = uniform(1, size - 2);
    auto l = build(left);
    auto r = build(size - 1 - left);
    return Formula::binary(op, std::move(l), std::move(r));
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Op pick_unary() {
    constexpr Op unary[] = {Op::Not, Op::Next, Op::Globally, Op::Finally};
    return unary[uniform(0, 3)];
  }

  Formula leaf() {
    if (uniform(0, 19) == 0) return uniform(0, 1) ? tt() : ff();
    return prop("p" + std::to_string(uniform(0, nvars_ - 1)));
  }

  int nvars_;
  std::mt19937_64 rng_;
};

}  // namespace

Formula gen_random(int length, int nvars, std::uint64_t seed) {
  if (length < 1 || nvars < 1) throw std::invalid_argument("gen_random needs length >= 1 and nvars >= 1");
  return RandomFormula(nvars, seed).build(length);
}

// Shapes follow the classic property specification patterns (global scope
// unless the name says otherwise).
const std::vector<SpecPattern>& pattern_library() {
  static const std::vector<SpecPattern> patterns = {
      {"absence", "G !{p}"},
      {"existence", "F {p}"},
      {"universality", "G {p}"},
      {"response", "G ({p} -> F {s})"},
      {"precedence", "(!{p} U {s}) | G !{p}"},
      {"response-chain", "G (({s} & X F {t}) -> X F ({t} & F {p}))"},
      {"precedence-chain", "F {p} -> (!{p} U ({s} & !{p} & X (!{p} U {t})))"},
      {"absence-before", "F {r} -> (!{p} U {r})"},
      {"existence-after", "G !{q} | F ({q} & F {p})"},
      {"universality-between", "G (({q} & !{r} & F {r}) -> ({p} U {r}))"},
      {"response-after", "G ({q} -> G ({p} -> F {s}))"},
      {"absence-after", "G ({q} -> G !{p})"},
      {"recurrence", "G F {p}"},
      {"stability", "F G {p}"},
  };
  return patterns;
}

Formula gen_conjunction(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_conjunction needs n >= 1");
  std::mt19937_64 rng(seed);
  const auto& library = pattern_library();
  std::vector<std::string> used;
  auto choose_prop = [&]() -> std::string {
    if (!used.empty() && std::uniform_int_distribution<int>(0, 1)(rng) == 0)
      return used[std::uniform_int_distribution<std::size_t>(0, used.size() - 1)(rng)];
    used.push_back("p" + std::to_string(used.size() + 1));
    return used.back();
  };

  std::string text;
  for (int i = 0; i < n; ++i) {
    const auto& pattern = library[std::uniform_int_distribution<std::size_t>(0, library.size() - 1)(rng)];
    std::map<char, std::string> binding;
    std::string instance;
    for (std::size_t k = 0; k < pattern.shape.size(); ++k) {
      if (pattern.shape[k] == '{' && k + 2 < pattern.shape.size() && pattern.shape[k + 2] == '}') {
        char slot = pattern.shape[k + 1];
        auto it = binding.find(slot);
        if (it == binding.end()) it = binding.emplace(slot, choose_prop()).first;
        instance += it->second;
        k += 2;
      } else {
        instance += pattern.shape[k];
      }
    }
    if (i) text += " & ";
    text += "(" + instance + ")";
  }
  return parse(text);
}

Formula gen_O1(int n) {
  if (n < 1) throw std::invalid_argument("gen_O1 needs n >= 1");
  auto clause = [](int i) { return disj(prop("a" + std::to_string(i)), prop("b" + std::to_string(i))); };
  Formula f = clause(1);
  for (int i = 2; i <= n; ++i) f = conj(std::move(f), clause(i));
  auto c = prop("c");
  return conj(std::move(f), conj(globally(c), next(negate(c))));
}

}  // namespace polsat
