#include <algorithm>
#include <queue>
#include <unordered_map>

#include "polsat/engine.hpp"
#include "tableau_graph.hpp"

namespace polsat {

using detail::Edge;
using detail::Interrupted;
using detail::TableauGraph;

Budget Budget::with_timeout(std::chrono::duration<double> timeout, std::stop_token stop) {
  Budget b;
  b.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(timeout);
  b.stop = std::move(stop);
  return b;
}

namespace {

bool disjoint_from(const std::vector<int>& sorted, int value) {
  return !std::binary_search(sorted.begin(), sorted.end(), value);
}

/// Accepting-SCC search over the tableau graph (iterative Tarjan).
class SccSearch {
 public:
  explicit SccSearch(TableauGraph& g) : g_(g) {}

  std::optional<LassoWord> run() {
    visit(g_.root());
    while (!frames_.empty()) {
      auto& frame = frames_.back();
      const int v = frame.node;
      const auto& out = g_.edges(v);
      if (frame.next_edge < out.size()) {
        const int w = out[frame.next_edge++].target;
        ensure(w);
        if (index_[w] < 0) {
          visit(w);
        } else if (on_stack_[w]) {
          lowlink_[v] = std::min(lowlink_[v], index_[w]);
        }
        continue;
      }
      if (lowlink_[v] == index_[v]) {
        if (auto word = close_scc(v)) return word;
      }
      frames_.pop_back();
      if (!frames_.empty()) {
        int parent = frames_.back().node;
        lowlink_[parent] = std::min(lowlink_[parent], lowlink_[v]);
      }
    }
    return std::nullopt;
  }

 private:
  struct Frame {
    int node;
    std::size_t next_edge = 0;
  };

  void ensure(int node) {
    auto need = static_cast<std::size_t>(node) + 1;
    if (index_.size() < need) {
      index_.resize(need, -1);
      lowlink_.resize(need, -1);
      on_stack_.resize(need, 0);
      scc_id_.resize(need, -1);
    }
  }

  void visit(int node) {
    ensure(node);
    index_[node] = lowlink_[node] = counter_++;
    stack_.push_back(node);
    on_stack_[node] = 1;
    frames_.push_back({node});
  }

  std::optional<LassoWord> close_scc(int root) {
    std::vector<int> members;
    int w;
    do {
      w = stack_.back();
      stack_.pop_back();
      on_stack_[w] = 0;
      scc_id_[w] = scc_count_;
      members.push_back(w);
    } while (w != root);
    const int id = scc_count_++;

    // Postponed on every internal edge => that eventuality is never met.
    bool has_internal = false;
    std::vector<int> always_postponed;
    for (int m : members) {
      for (const auto& e : g_.edges(m)) {
        if (scc_id_[e.target] != id) continue;
        if (!has_internal) {
          always_postponed = e.postponed;
          has_internal = true;
        } else {
          std::vector<int> keep;
          std::set_intersection(always_postponed.begin(), always_postponed.end(), e.postponed.begin(),
                                e.postponed.end(), std::back_inserter(keep));
          always_postponed = std::move(keep);
        }
      }
    }
    if (!has_internal || !always_postponed.empty()) return std::nullopt;

    std::vector<const Edge*> prefix;
    for (std::size_t i = 0; i + 1 < frames_.size(); ++i) {
      const auto& out = g_.edges(frames_[i].node);
      prefix.push_back(&out[frames_[i].next_edge - 1]);
    }
    return g_.word(prefix, covering_cycle(root, id, members));
  }

  // Shortest path of internal edges from `from` to `to`; at least one edge.
  std::vector<const Edge*> path(int from, int to, int scc) {
    std::unordered_map<int, const Edge*> via;
    std::unordered_map<int, int> parent;
    std::queue<int> queue;
    queue.push(from);
    bool found = false;
    const Edge* last = nullptr;
    int last_source = -1;
    while (!queue.empty() && !found) {
      int u = queue.front();
      queue.pop();
      for (const auto& e : g_.edges(u)) {
        if (scc_id_[e.target] != scc) continue;
        if (e.target == to) {
          last = &e;
          last_source = u;
          found = true;
          break;
        }
        if (e.target == from || via.contains(e.target)) continue;
        via[e.target] = &e;
        parent[e.target] = u;
        queue.push(e.target);
      }
    }
    std::vector<const Edge*> out{last};
    for (int u = last_source; u != from; u = parent[u]) out.push_back(via[u]);
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::vector<const Edge*> covering_cycle(int root, int scc, const std::vector<int>& members) {
    std::vector<int> pending;
    for (int m : members)
      for (const auto& e : g_.edges(m))
        if (scc_id_[e.target] == scc) pending.insert(pending.end(), e.postponed.begin(), e.postponed.end());
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());

    std::vector<const Edge*> cycle;
    int at = root;
    auto take = [&](const std::vector<const Edge*>& steps) {
      for (const auto* e : steps) {
        std::erase_if(pending, [e](int u) { return disjoint_from(e->postponed, u); });
        cycle.push_back(e);
      }
      if (!steps.empty()) at = steps.back()->target;
    };
    while (!pending.empty()) {
      const int u = pending.front();
      // Some internal edge does not postpone u; walk to it and take it.
      for (int m : members) {
        const Edge* hit = nullptr;
        for (const auto& e : g_.edges(m))
          if (scc_id_[e.target] == scc && disjoint_from(e.postponed, u)) hit = &e;
        if (!hit) continue;
        if (m != at) take(path(at, m, scc));
        take({hit});
        break;
      }
    }
    if (cycle.empty() || at != root) take(path(at, root, scc));
    return cycle;
  }

  TableauGraph& g_;
  std::vector<Frame> frames_;
  std::vector<int> stack_;
  std::vector<int> index_;
  std::vector<int> lowlink_;
  std::vector<char> on_stack_;
  std::vector<int> scc_id_;
  int counter_ = 0;
  int scc_count_ = 0;
};

class DepthSearch {
 public:
  DepthSearch(TableauGraph& g, std::size_t step_limit) : g_(g), step_limit_(step_limit) {}

  std::optional<LassoWord> run(int max_depth) {
    for (int depth = 1; depth <= max_depth; ++depth) {
      nodes_ = {g_.root()};
      edges_.clear();
      truncated_ = false;
      if (auto w = dfs(static_cast<std::size_t>(depth))) return w;
      // Every simple path was explored in full; deeper bounds add nothing.
      if (!truncated_) break;
    }
    return std::nullopt;
  }

 private:
  std::optional<LassoWord> dfs(std::size_t depth) {
    g_.poll();
    if (++steps_ > step_limit_) throw Interrupted{UnknownReason::Timeout};
    const auto& out = g_.edges(nodes_.back());
    for (const auto& e : out) {
      auto hit = std::find(nodes_.begin(), nodes_.end(), e.target);
      if (hit != nodes_.end()) {
        auto start = static_cast<std::size_t>(hit - nodes_.begin());
        std::vector<const Edge*> loop(edges_.begin() + static_cast<std::ptrdiff_t>(start), edges_.end());
        loop.push_back(&e);
        if (accepting(loop)) {
          std::vector<const Edge*> prefix(edges_.begin(), edges_.begin() + static_cast<std::ptrdiff_t>(start));
          return g_.word(prefix, loop);
        }
        continue;
      }
      if (edges_.size() + 1 >= depth) {
        truncated_ = true;
        continue;
      }
      nodes_.push_back(e.target);
      edges_.push_back(&e);
      auto found = dfs(depth);
      nodes_.pop_back();
      edges_.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  }

  static bool accepting(const std::vector<const Edge*>& loop) {
    std::vector<int> common = loop.front()->postponed;
    for (std::size_t i = 1; i < loop.size() && !common.empty(); ++i) {
      std::vector<int> keep;
      std::set_intersection(common.begin(), common.end(), loop[i]->postponed.begin(), loop[i]->postponed.end(),
                            std::back_inserter(keep));
      common = std::move(keep);
    }
    return common.empty();
  }

  TableauGraph& g_;
  std::size_t step_limit_;
  std::size_t steps_ = 0;
  bool truncated_ = false;
  std::vector<int> nodes_;
  std::vector<const Edge*> edges_;
};

}  // namespace

Verdict tableau_check(const Formula& f, const Budget& budget) {
  try {
    TableauGraph graph(f, budget);
    if (auto word = SccSearch(graph).run()) return Verdict::sat(std::move(*word));
    return Verdict::unsat();
  } catch (const Interrupted& stop) {
    return stop.reason == UnknownReason::Cancelled ? Verdict::cancelled() : Verdict::timeout();
  }
}

std::optional<LassoWord> lasso_search(const Formula& f, int max_depth, const Budget& budget) {
  try {
    TableauGraph graph(f, budget);
    return DepthSearch(graph, budget.node_limit).run(max_depth);
  } catch (const Interrupted&) {
    return std::nullopt;
  }
}

}  // namespace polsat
