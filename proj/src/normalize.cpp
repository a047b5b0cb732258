#include "polsat/normalize.hpp"

#include <unordered_set>

namespace polsat {

Formula desugar(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Prop:
      return f;
    case Op::Not: return negate(desugar(f.child()));
    case Op::Next: return next(desugar(f.child()));
    case Op::Globally: return release(ff(), desugar(f.child()));
    case Op::Finally: return until(tt(), desugar(f.child()));
    case Op::And: return conj(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Or: return disj(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Until: return until(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Release: return release(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Implies: return disj(negate(desugar(f.lhs())), desugar(f.rhs()));
    case Op::Iff: {
      auto l = desugar(f.lhs());
      auto r = desugar(f.rhs());
      return conj(disj(negate(l), r), disj(l, negate(r)));
    }
  }
  return f;
}

namespace {

// Input is already desugared.
Formula push_negations(const Formula& f, bool negated) {
  switch (f.op()) {
    case Op::True: return negated ? ff() : f;
    case Op::False: return negated ? tt() : f;
    case Op::Prop: return negated ? negate(f) : f;
    case Op::Not: return push_negations(f.child(), !negated);
    case Op::Next: return next(push_negations(f.child(), negated));
    case Op::And: {
      auto l = push_negations(f.lhs(), negated);
      auto r = push_negations(f.rhs(), negated);
      return negated ? disj(std::move(l), std::move(r)) : conj(std::move(l), std::move(r));
    }
    case Op::Or: {
      auto l = push_negations(f.lhs(), negated);
      auto r = push_negations(f.rhs(), negated);
      return negated ? conj(std::move(l), std::move(r)) : disj(std::move(l), std::move(r));
    }
    case Op::Until: {
      auto l = push_negations(f.lhs(), negated);
      auto r = push_negations(f.rhs(), negated);
      return negated ? release(std::move(l), std::move(r)) : until(std::move(l), std::move(r));
    }
    case Op::Release: {
      auto l = push_negations(f.lhs(), negated);
      auto r = push_negations(f.rhs(), negated);
      return negated ? until(std::move(l), std::move(r)) : release(std::move(l), std::move(r));
    }
    default:
      return push_negations(desugar(f), negated);
  }
}

void collect(const Formula& f, std::unordered_set<Formula>& seen, std::vector<Formula>& out) {
  if (!seen.insert(f).second) return;
  out.push_back(f);
  if (is_unary(f.op())) {
    collect(f.child(), seen, out);
  } else if (is_binary(f.op())) {
    collect(f.lhs(), seen, out);
    collect(f.rhs(), seen, out);
  }
}

}  // namespace

Formula nnf(const Formula& f) { return push_negations(desugar(f), false); }

std::vector<Formula> closure(const Formula& f) {
  std::unordered_set<Formula> seen;
  std::vector<Formula> out;
  collect(f, seen, out);
  return out;
}

}  // namespace polsat
