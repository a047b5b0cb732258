#pragma once

#include <chrono>
#include <stop_token>
#include <string>
#include <vector>

#include "polsat/engine.hpp"

namespace polsat {

struct ProcessOutcome {
  enum class Status { Exited, TimedOut, Cancelled, SpawnFailed };

  Status status = Status::Exited;
  int exit_code = 0;         // valid for Exited; -signal when killed by a signal
  std::string output;        // captured stdout
  std::string error;         // spawn failure message
  double elapsed = 0.0;      // seconds
};

/// Runs `argv[0]` with the given arguments in its own process group,
/// capturing stdout. stdin and stderr are /dev/null.
///
/// When `deadline` passes or `stop` is requested the whole group gets
/// SIGTERM, then SIGKILL once `grace` has elapsed. The child is always
/// reaped before this returns.
ProcessOutcome run_process(const std::vector<std::string>& argv, Clock::time_point deadline, std::stop_token stop,
                           std::chrono::duration<double> grace = std::chrono::seconds(1));

}  // namespace polsat
