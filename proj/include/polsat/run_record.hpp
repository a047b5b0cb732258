#pragma once

#include <string>

#include "polsat/verdict.hpp"

namespace polsat {

/// Outcome of one solver on one formula. `elapsed` is wall-clock seconds;
/// a solver stopped by its timeout is charged exactly the timeout.
struct RunRecord {
  std::string solver;
  Verdict verdict;
  double elapsed = 0.0;

  const LassoWord* evidence() const noexcept { return verdict.evidence(); }
};

}  // namespace polsat
