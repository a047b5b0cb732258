#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stop_token>

#include "polsat/formula.hpp"
#include "polsat/trace.hpp"
#include "polsat/verdict.hpp"

namespace polsat {

using Clock = std::chrono::steady_clock;

/// Resource limits for one check. The stop token is polled at every
/// expansion step so a cancelled check returns within milliseconds.
struct Budget {
  std::size_t node_limit = 1'000'000;
  Clock::time_point deadline = Clock::time_point::max();
  std::stop_token stop;

  static Budget with_timeout(std::chrono::duration<double> timeout, std::stop_token stop = {});
};

/// Complete tableau decision procedure.
///
/// Builds the graph of tableau states on the fly (a state is the set of
/// formulas that must hold at a position; its successors come from the
/// X-obligations of each consistent expansion) and runs Tarjan's SCC
/// algorithm over it. A completed SCC with an internal edge is accepting
/// when no Until formula is postponed on every one of its internal edges;
/// the DFS path to it plus a covering cycle is returned as evidence.
///
/// Returns Sat with evidence, Unsat when the reachable graph has no
/// accepting SCC, or Unknown(timeout / cancelled) when the budget runs out.
/// Deterministic: the same formula always yields the same evidence.
Verdict tableau_check(const Formula& f, const Budget& budget = {});

/// Iterative-deepening search for an accepting lasso of at most
/// `max_depth` tableau transitions. `budget.node_limit` caps the number of
/// search steps. Never proves unsatisfiability.
std::optional<LassoWord> lasso_search(const Formula& f, int max_depth, const Budget& budget = {});

/// Syntactic quick check: builds candidate literal sets ("obligations")
/// and returns the first one that, repeated forever, satisfies `f`
/// according to eval(). Gives up above kMaxObligations candidates.
std::optional<LassoWord> sat_shortcut(const Formula& f);

inline constexpr std::size_t kMaxObligations = 4096;

}  // namespace polsat
