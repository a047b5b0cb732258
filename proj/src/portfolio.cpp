#include "polsat/portfolio.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "polsat/engine.hpp"

namespace polsat {

namespace {

constexpr int kLassoDepth = 20;
constexpr std::size_t kLassoSteps = 200'000;

std::string_view strategy_name(InternalStrategy s) {
  switch (s) {
    case InternalStrategy::Tableau: return "tableau";
    case InternalStrategy::Lasso: return "lasso";
    case InternalStrategy::Shortcut: return "shortcut";
  }
  return "internal";
}

Verdict run_internal(InternalStrategy strategy, const Formula& f, const Budget& budget) {
  switch (strategy) {
    case InternalStrategy::Tableau:
      return tableau_check(f, budget);
    case InternalStrategy::Lasso: {
      if (auto w = lasso_search(f, kLassoDepth, budget)) return Verdict::sat(std::move(*w));
      if (budget.stop.stop_requested()) return Verdict::cancelled();
      if (Clock::now() >= budget.deadline) return Verdict::timeout();
      return Verdict::solver_error("no lasso found up to depth " + std::to_string(kLassoDepth));
    }
    case InternalStrategy::Shortcut:
      if (auto w = sat_shortcut(f)) return Verdict::sat(std::move(*w));
      return Verdict::solver_error("no obligation set confirmed");
  }
  return Verdict::solver_error("unknown strategy");
}

struct Completion {
  std::size_t index;
  RunRecord record;
};

// Single-consumer queue of finished workers.
class CompletionQueue {
 public:
  void push(Completion c) {
    {
      std::lock_guard lock(mutex_);
      items_.push_back(std::move(c));
    }
    ready_.notify_one();
  }

  /// Everything queued once at least one item is available, or nothing if
  /// the deadline passes first.
  std::vector<Completion> wait_batch(Clock::time_point deadline) {
    std::unique_lock lock(mutex_);
    ready_.wait_until(lock, deadline, [this] { return !items_.empty(); });
    return std::exchange(items_, {});
  }

  std::vector<Completion> drain() {
    std::lock_guard lock(mutex_);
    return std::exchange(items_, {});
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::vector<Completion> items_;
};

void check_solvers(const std::vector<SolverSpec>& solvers) {
  if (solvers.empty()) throw PortfolioError("no solvers configured");
  std::set<std::string> names;
  for (const auto& s : solvers)
    if (!names.insert(s.name).second) throw PortfolioError("duplicate solver name '" + s.name + "'");
}

}  // namespace

SolverSpec SolverSpec::internal(InternalStrategy strategy) {
  return {std::string(strategy_name(strategy)), strategy, true};
}

SolverSpec SolverSpec::external(ExternalSolverSpec spec) {
  std::string name = spec.name;
  return {std::move(name), std::move(spec), true};
}

std::vector<SolverSpec> internal_solvers() {
  return {SolverSpec::internal(InternalStrategy::Tableau), SolverSpec::internal(InternalStrategy::Lasso),
          SolverSpec::internal(InternalStrategy::Shortcut)};
}

std::vector<SolverSpec> default_solvers(const Registry& registry) {
  auto out = internal_solvers();
  std::set<std::string> names;
  for (const auto& s : out) names.insert(s.name);
  for (const auto& ext : registry.solvers()) {
    auto spec = SolverSpec::external(ext);
    // Two registered paths may share a basename; keep names unique.
    for (int k = 2; names.contains(spec.name); ++k) spec.name = ext.name + "#" + std::to_string(k);
    names.insert(spec.name);
    out.push_back(std::move(spec));
  }
  return out;
}

RunRecord run_solver(const SolverSpec& solver, const Formula& f, double timeout, std::stop_token stop) {
  const auto start = Clock::now();
  const std::chrono::duration<double> limit(timeout);
  RunRecord record;
  if (const auto* ext = std::get_if<ExternalSolverSpec>(&solver.kind)) {
    record = invoke(*ext, f, limit, std::move(stop));
  } else {
    auto budget = Budget::with_timeout(limit, std::move(stop));
    const auto strategy = std::get<InternalStrategy>(solver.kind);
    if (strategy == InternalStrategy::Lasso) budget.node_limit = kLassoSteps;
    record.verdict = run_internal(strategy, f, budget);
    record.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  }
  record.solver = solver.name;
  // A race stops its workers at the shared deadline, so a cancel that lands
  // after the timeout is the timeout.
  const bool timed_out = record.verdict.is_unknown() &&
                         (record.verdict.reason() == UnknownReason::Timeout ||
                          (record.verdict.reason() == UnknownReason::Cancelled && record.elapsed >= timeout));
  if (timed_out || (record.elapsed > timeout && !record.verdict.is_unknown())) {
    record.verdict = Verdict::timeout();
    record.elapsed = timeout;
  }
  return record;
}

PortfolioResult race(const Formula& f, const std::vector<SolverSpec>& solvers, double timeout, bool want_evidence) {
  check_solvers(solvers);
  if (!(timeout > 0)) throw PortfolioError("timeout must be positive");

  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(timeout));
  const std::size_t n = solvers.size();
  CompletionQueue queue;
  std::vector<std::optional<RunRecord>> done(n);
  std::optional<std::size_t> winner;
  std::optional<std::size_t> evidence_from;

  auto accept = [&](std::vector<Completion> batch) {
    for (auto& c : batch) {
      if (const auto* w = c.record.evidence(); w && !eval(*w, f)) c.record.verdict.drop_evidence();
      done[c.index] = std::move(c.record);
    }
  };

  {
    std::vector<std::jthread> workers;
    workers.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      workers.emplace_back([&, i](std::stop_token stop) {
        queue.push({i, run_solver(solvers[i], f, timeout, stop)});
      });

    std::size_t finished = 0;
    while (finished < n) {
      auto batch = queue.wait_batch(deadline);
      if (batch.empty()) break;
      finished += batch.size();
      accept(std::move(batch));

      if (!winner) {
        for (std::size_t i = 0; i < n && !winner; ++i)
          if (done[i] && done[i]->verdict.is_definitive()) winner = i;
        if (!winner) continue;
        const auto& v = done[*winner]->verdict;
        if (!want_evidence || !v.is_sat() || v.evidence()) break;
        for (std::size_t i = 0; i < n; ++i)
          if (!solvers[i].supports_evidence) workers[i].request_stop();
      }
      for (std::size_t i = 0; i < n && !evidence_from; ++i)
        if (done[i] && done[i]->verdict.is_sat() && done[i]->evidence()) evidence_from = i;
      if (evidence_from) break;
    }
    for (auto& w : workers) w.request_stop();
  }
  accept(queue.drain());

  PortfolioResult result;
  for (auto& r : done)
    if (r) result.records.push_back(*r);
  if (!winner) {
    result.verdict = Verdict::timeout();
    result.winner = "none";
    result.elapsed = timeout;
    return result;
  }
  const std::size_t from = evidence_from.value_or(*winner);
  result.verdict = done[from]->verdict;
  result.winner = done[from]->solver;
  result.elapsed = done[from]->elapsed;
  return result;
}

std::vector<RunRecord> run_all(const Formula& f, const std::vector<SolverSpec>& solvers, double timeout) {
  check_solvers(solvers);
  std::vector<RunRecord> records(solvers.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < solvers.size(); ++i)
      workers.emplace_back([&, i] { records[i] = run_solver(solvers[i], f, timeout); });
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const RunRecord& a, const RunRecord& b) { return a.elapsed < b.elapsed; });
  return records;
}

ConsistencyReport arbitrate(const std::vector<RunRecord>& records, const Formula& f) {
  ConsistencyReport report;
  for (const auto& r : records) {
    if (!r.verdict.is_definitive()) continue;
    report.by_verdict[std::string(r.verdict.label())].push_back(r.solver);
    if (const auto* w = r.evidence(); w && !eval(*w, f)) report.invalid_evidence.push_back(r.solver);
  }
  return report;
}

}  // namespace polsat
