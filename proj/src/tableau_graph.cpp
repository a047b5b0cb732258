#include "tableau_graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "polsat/normalize.hpp"

namespace polsat::detail {

std::size_t FormulaTable::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.op);
  for (int v : {k.lhs, k.rhs, k.prop}) h = h * 1000003u ^ static_cast<std::size_t>(v + 1);
  return h;
}

int FormulaTable::make(Op op, int lhs, int rhs, int prop) {
  Key key{op, lhs, rhs, prop};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  Entry e{op, lhs, rhs, prop, is_temporal(op)};
  if (lhs >= 0) e.temporal = e.temporal || entries_[static_cast<std::size_t>(lhs)].temporal;
  if (rhs >= 0) e.temporal = e.temporal || entries_[static_cast<std::size_t>(rhs)].temporal;
  int id = static_cast<int>(entries_.size());
  entries_.push_back(e);
  index_.emplace(key, id);
  return id;
}

int FormulaTable::intern(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return make(f.op(), -1, -1, -1);
    case Op::Prop: {
      auto [it, inserted] = prop_index_.try_emplace(f.name(), static_cast<int>(props_.size()));
      if (inserted) props_.push_back(f.name());
      return make(Op::Prop, -1, -1, it->second);
    }
    case Op::Not:
    case Op::Next:
      return make(f.op(), intern(f.child()), -1, -1);
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::Release: {
      int l = intern(f.lhs());
      int r = intern(f.rhs());
      return make(f.op(), l, r, -1);
    }
    default:
      throw std::invalid_argument("formula table expects negation normal form");
  }
}

int FormulaTable::negation(int id) {
  const Entry e = entries_[static_cast<std::size_t>(id)];
  switch (e.op) {
    case Op::True: return make(Op::False, -1, -1, -1);
    case Op::False: return make(Op::True, -1, -1, -1);
    case Op::Prop: return make(Op::Not, id, -1, -1);
    case Op::Not: return e.lhs;
    case Op::And: {
      int l = negation(e.lhs);
      int r = negation(e.rhs);
      return make(Op::Or, l, r, -1);
    }
    case Op::Or: {
      int l = negation(e.lhs);
      int r = negation(e.rhs);
      return make(Op::And, l, r, -1);
    }
    default:
      throw std::logic_error("negation() is only defined on propositional formulas");
  }
}

namespace {

std::string key_of(const std::vector<int>& ids) {
  return std::string(reinterpret_cast<const char*>(ids.data()), ids.size() * sizeof(int));
}

}  // namespace

/// Enumerates the consistent expansions of one state.
///
/// Non-branching formulas are saturated first; branching ones (temporal
/// disjunctions, Until, Release) are deferred and split one at a time.
/// Purely propositional disjunctions never branch: they are collected as
/// constraints and solved together at each leaf.
class Expander {
 public:
  explicit Expander(TableauGraph& graph) : g_(graph), t_(graph.table_) {
    assignment_.assign(t_.prop_count(), -1);
  }

  std::vector<Edge> run(const std::vector<int>& formulas) {
    branch(formulas, {});
    return std::move(out_);
  }

 private:
  struct Checkpoint {
    std::size_t assigned, marks, constraints, next, postponed;
  };

  Checkpoint save() const {
    return {assign_trail_.size(), mark_trail_.size(), constraints_.size(), next_.size(), postponed_.size()};
  }

  void restore(const Checkpoint& c) {
    while (assign_trail_.size() > c.assigned) {
      assignment_[static_cast<std::size_t>(assign_trail_.back())] = -1;
      assign_trail_.pop_back();
    }
    while (mark_trail_.size() > c.marks) {
      marked_[static_cast<std::size_t>(mark_trail_.back())] = 0;
      mark_trail_.pop_back();
    }
    constraints_.resize(c.constraints);
    while (next_.size() > c.next) {
      --next_count_[static_cast<std::size_t>(next_.back())];
      next_.pop_back();
    }
    while (postponed_.size() > c.postponed) {
      --postponed_count_[static_cast<std::size_t>(postponed_.back())];
      postponed_.pop_back();
    }
  }

  static void bump(std::vector<int>& counts, int id) {
    if (static_cast<std::size_t>(id) >= counts.size()) counts.resize(static_cast<std::size_t>(id) + 16, 0);
    ++counts[static_cast<std::size_t>(id)];
  }

  void push_next(int id) {
    next_.push_back(id);
    bump(next_count_, id);
  }

  void push_postponed(int id) {
    postponed_.push_back(id);
    bump(postponed_count_, id);
  }

  // Some collected constraint is already false under the partial assignment.
  bool refuted() const {
    for (int c : constraints_)
      if (value(c) == 0) return true;
    return false;
  }

  static bool covered(const std::vector<int>& ids, const std::vector<int>& counts) {
    for (int id : ids)
      if (static_cast<std::size_t>(id) >= counts.size() || counts[static_cast<std::size_t>(id)] == 0) return false;
    return true;
  }

  // Obligations only grow further down a branch. Once an edge already
  // emitted asks for no more than this branch has committed to (in both
  // successor formulas and postponed eventualities), every leaf below is
  // redundant: whatever continues from the bigger successor also continues
  // from the smaller one.
  bool dominated() const {
    for (const auto& [next, postponed] : emitted_)
      if (covered(next, next_count_) && covered(postponed, postponed_count_)) return true;
    return false;
  }

  bool marked(int id) const {
    return static_cast<std::size_t>(id) < marked_.size() && marked_[static_cast<std::size_t>(id)];
  }

  void mark(int id) {
    if (static_cast<std::size_t>(id) >= marked_.size()) marked_.resize(t_.size() + 16, 0);
    marked_[static_cast<std::size_t>(id)] = 1;
    mark_trail_.push_back(id);
  }

  bool assign(int prop, bool value) {
    auto& slot = assignment_[static_cast<std::size_t>(prop)];
    if (slot >= 0) return slot == static_cast<int8_t>(value);
    slot = static_cast<int8_t>(value);
    assign_trail_.push_back(prop);
    return true;
  }

  // Already known to hold in the current branch.
  bool holds(int id) const {
    if (marked(id)) return true;
    const Entry& e = t_[id];
    if (e.op == Op::True) return true;
    if (e.op == Op::Prop) return assignment_[static_cast<std::size_t>(e.prop)] == 1;
    if (e.op == Op::Not) return assignment_[static_cast<std::size_t>(t_[e.lhs].prop)] == 0;
    return false;
  }

  struct Alternative {
    std::vector<int> add;
    bool carry = false;     // id itself goes to the next state
    bool postpone = false;  // and counts as a postponed eventuality
  };

  void branch(std::vector<int> work, std::vector<int> deferred) {
    while (true) {
      g_.poll();
      if (work.empty()) {
        if (dominated() || refuted()) return;
        if (deferred.empty()) {
          leaf();
          return;
        }
        int id = deferred.front();
        deferred.erase(deferred.begin());
        if (marked(id)) continue;
        const Entry e = t_[id];
        std::vector<Alternative> alternatives;
        switch (e.op) {
          case Op::Or:
            if (holds(e.lhs) || holds(e.rhs)) {
              mark(id);
              continue;
            }
            alternatives.push_back({{e.lhs}});
            alternatives.push_back({{e.rhs}});
            if (!t_[e.lhs].temporal) alternatives.back().add.push_back(t_.negation(e.lhs));
            break;
          case Op::Until:
            if (holds(e.rhs)) {
              mark(id);
              continue;
            }
            alternatives.push_back({{e.rhs}});
            alternatives.push_back({{e.lhs}, true, true});
            if (!t_[e.rhs].temporal) alternatives.back().add.push_back(t_.negation(e.rhs));
            break;
          case Op::Release:
            if (holds(e.lhs)) {
              mark(id);
              work.push_back(e.rhs);
              continue;
            }
            alternatives.push_back({{e.rhs, e.lhs}});
            alternatives.push_back({{e.rhs}, true, false});
            if (!t_[e.lhs].temporal) alternatives.back().add.push_back(t_.negation(e.lhs));
            break;
          default:
            throw std::logic_error("unexpected deferred formula");
        }
        for (const auto& alt : alternatives) {
          auto cp = save();
          mark(id);
          if (alt.carry) push_next(id);
          if (alt.postpone) push_postponed(id);
          auto w = work;
          w.insert(w.end(), alt.add.begin(), alt.add.end());
          branch(std::move(w), deferred);
          restore(cp);
        }
        return;
      }

      int id = work.back();
      work.pop_back();
      if (marked(id)) continue;
      const Entry e = t_[id];
      switch (e.op) {
        case Op::True:
          mark(id);
          break;
        case Op::False:
          return;
        case Op::Prop:
          mark(id);
          if (!assign(e.prop, true)) return;
          break;
        case Op::Not:
          mark(id);
          if (!assign(t_[e.lhs].prop, false)) return;
          break;
        case Op::And:
          mark(id);
          work.push_back(e.rhs);
          work.push_back(e.lhs);
          break;
        case Op::Or:
          if (e.temporal) {
            deferred.push_back(id);
          } else {
            mark(id);
            constraints_.push_back(id);
          }
          break;
        case Op::Next:
          mark(id);
          push_next(e.lhs);
          break;
        case Op::Until:
          deferred.push_back(id);
          break;
        case Op::Release:
          if (t_[e.lhs].op == Op::False) {
            mark(id);
            push_next(id);
            work.push_back(e.rhs);
          } else {
            deferred.push_back(id);
          }
          break;
        default:
          throw std::logic_error("formula outside negation normal form");
      }
    }
  }

  // Three-valued: 0 false, 1 true, 2 undetermined.
  int value(int id) const {
    const Entry& e = t_[id];
    switch (e.op) {
      case Op::True: return 1;
      case Op::False: return 0;
      case Op::Prop: {
        auto a = assignment_[static_cast<std::size_t>(e.prop)];
        return a < 0 ? 2 : a;
      }
      case Op::Not: {
        auto a = assignment_[static_cast<std::size_t>(t_[e.lhs].prop)];
        return a < 0 ? 2 : 1 - a;
      }
      case Op::And: {
        int l = value(e.lhs);
        if (l == 0) return 0;
        int r = value(e.rhs);
        if (r == 0) return 0;
        return (l == 1 && r == 1) ? 1 : 2;
      }
      case Op::Or: {
        int l = value(e.lhs);
        if (l == 1) return 1;
        int r = value(e.rhs);
        if (r == 1) return 1;
        return (l == 0 && r == 0) ? 0 : 2;
      }
      default:
        throw std::logic_error("temporal formula in a propositional constraint");
    }
  }

  int unassigned_prop(int id) const {
    const Entry& e = t_[id];
    switch (e.op) {
      case Op::Prop: return assignment_[static_cast<std::size_t>(e.prop)] < 0 ? e.prop : -1;
      case Op::Not: return unassigned_prop(e.lhs);
      case Op::And:
      case Op::Or: {
        if (value(e.lhs) == 2) return unassigned_prop(e.lhs);
        if (value(e.rhs) == 2) return unassigned_prop(e.rhs);
        return -1;
      }
      default: return -1;
    }
  }

  // Small DPLL over the collected constraints; extends assignment_.
  bool solve() {
    g_.poll();
    int pick = -1;
    for (int c : constraints_) {
      int v = value(c);
      if (v == 0) return false;
      if (v == 2 && pick < 0) pick = unassigned_prop(c);
    }
    if (pick < 0) return true;
    for (bool value : {false, true}) {
      auto mark_point = assign_trail_.size();
      assign(pick, value);
      if (solve()) return true;
      while (assign_trail_.size() > mark_point) {
        assignment_[static_cast<std::size_t>(assign_trail_.back())] = -1;
        assign_trail_.pop_back();
      }
    }
    return false;
  }

  void leaf() {
    auto mark_point = assign_trail_.size();
    if (!solve()) return;
    std::vector<int> next = next_;
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<int> postponed = postponed_;
    std::sort(postponed.begin(), postponed.end());
    postponed.erase(std::unique(postponed.begin(), postponed.end()), postponed.end());

    auto key = key_of(next);
    key.push_back('|');
    key += key_of(postponed);
    if (seen_.insert(std::move(key)).second) {
      std::vector<int> essential = next;
      std::erase_if(essential, [this](int id) { return t_[id].op == Op::True; });
      emitted_.emplace_back(std::move(essential), postponed);
      Edge edge;
      edge.postponed = std::move(postponed);
      for (std::size_t p = 0; p < assignment_.size(); ++p)
        if (assignment_[p] == 1) edge.true_props.push_back(static_cast<int>(p));
      edge.target = g_.intern_state(std::move(next));
      out_.push_back(std::move(edge));
    }
    while (assign_trail_.size() > mark_point) {
      assignment_[static_cast<std::size_t>(assign_trail_.back())] = -1;
      assign_trail_.pop_back();
    }
  }

  TableauGraph& g_;
  FormulaTable& t_;
  std::vector<int8_t> assignment_;
  std::vector<int> assign_trail_;
  std::vector<char> marked_;
  std::vector<int> mark_trail_;
  std::vector<int> constraints_;
  std::vector<int> next_;
  std::vector<int> postponed_;
  std::vector<int> next_count_;
  std::vector<int> postponed_count_;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> emitted_;
  std::vector<Edge> out_;
  std::unordered_set<std::string> seen_;
};

TableauGraph::TableauGraph(const Formula& f, const Budget& budget) : budget_(budget) {
  root_ = intern_state({table_.intern(nnf(f))});
}

int TableauGraph::intern_state(std::vector<int> formulas) {
  // `true` constrains nothing; dropping it lets X true share a node with
  // the empty obligation set.
  std::erase_if(formulas, [this](int id) { return table_[id].op == Op::True; });
  auto [it, inserted] = state_index_.try_emplace(key_of(formulas), static_cast<int>(states_.size()));
  if (inserted) {
    states_.push_back(std::move(formulas));
    edges_.emplace_back();
    expanded_.push_back(0);
  }
  return it->second;
}

const std::vector<Edge>& TableauGraph::edges(int node) {
  auto n = static_cast<std::size_t>(node);
  if (!expanded_[n]) {
    if (++expansions_ > budget_.node_limit) throw Interrupted{UnknownReason::Timeout};
    auto out = Expander(*this).run(states_[n]);
    edges_[n] = std::move(out);
    expanded_[n] = 1;
  }
  return edges_[n];
}

void TableauGraph::poll() {
  if (budget_.stop.stop_requested()) throw Interrupted{UnknownReason::Cancelled};
  if ((++poll_counter_ & 0xff) == 0 && Clock::now() >= budget_.deadline)
    throw Interrupted{UnknownReason::Timeout};
}

LassoWord TableauGraph::word(const std::vector<const Edge*>& prefix, const std::vector<const Edge*>& loop) const {
  auto to_state = [this](const Edge* e) {
    State s;
    for (int p : e->true_props) s.insert(table_.prop_name(p));
    return s;
  };
  LassoWord w;
  for (const auto* e : prefix) w.prefix.push_back(to_state(e));
  for (const auto* e : loop) w.loop.push_back(to_state(e));
  return w;
}

}  // namespace polsat::detail
