#pragma once

#include <vector>

#include "polsat/formula.hpp"

namespace polsat {

/// Rewrites Implies, Iff, Globally and Finally into the core operators:
/// `a -> b` = `!a | b`, `a <-> b` = `(!a | b) & (a | !b)`,
/// `G a` = `false R a`, `F a` = `true U a`.
Formula desugar(const Formula& f);

/// Negation normal form of desugar(f). Negations end up directly above
/// propositions; `!(a U b)` becomes `!a R !b` and vice versa.
Formula nnf(const Formula& f);

/// Subformulas of `f`, each once, in order of first appearance in a
/// left-to-right preorder traversal. `f` itself comes first.
std::vector<Formula> closure(const Formula& f);

}  // namespace polsat
