#pragma once

// Shared machinery of tableau_check() and lasso_search(): interned NNF
// formulas and the lazily expanded graph of tableau states.

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "polsat/engine.hpp"

namespace polsat::detail {

/// Thrown out of the expansion when the budget runs out.
struct Interrupted {
  UnknownReason reason;
};

struct Entry {
  Op op;
  int lhs = -1;
  int rhs = -1;
  int prop = -1;
  bool temporal = false;
};

/// Hash-consed NNF formulas with dense ids.
class FormulaTable {
 public:
  int intern(const Formula& nnf_formula);
  /// NNF of the negation of a formula without temporal operators.
  int negation(int id);

  const Entry& operator[](int id) const { return entries_[static_cast<std::size_t>(id)]; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t prop_count() const noexcept { return props_.size(); }
  const std::string& prop_name(int prop) const { return props_[static_cast<std::size_t>(prop)]; }

 private:
  int make(Op op, int lhs, int rhs, int prop);

  struct Key {
    Op op;
    int lhs, rhs, prop;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::vector<Entry> entries_;
  std::unordered_map<Key, int, KeyHash> index_;
  std::vector<std::string> props_;
  std::unordered_map<std::string, int> prop_index_;
};

/// One consistent expansion of a state: the literals chosen at this
/// position, the successor state, and the Until formulas it postpones.
struct Edge {
  int target;
  std::vector<int> postponed;   // sorted Until ids
  std::vector<int> true_props;  // sorted prop ids
};

/// Tableau states (a state is a sorted set of formula ids) with lazily
/// computed outgoing edges.
class TableauGraph {
 public:
  TableauGraph(const Formula& f, const Budget& budget);

  int root() const noexcept { return root_; }
  std::size_t node_count() const noexcept { return states_.size(); }
  const std::vector<int>& state(int node) const { return states_[static_cast<std::size_t>(node)]; }

  /// Outgoing edges of `node`, expanding it on first use.
  const std::vector<Edge>& edges(int node);

  /// Polls the stop token and the deadline; throws Interrupted.
  void poll();

  /// Lasso word reading the literals along the two edge sequences.
  LassoWord word(const std::vector<const Edge*>& prefix, const std::vector<const Edge*>& loop) const;

 private:
  int intern_state(std::vector<int> formulas);

  FormulaTable table_;
  const Budget& budget_;
  // Deques keep references stable while expansion adds states.
  std::deque<std::vector<int>> states_;
  std::deque<std::vector<Edge>> edges_;
  std::vector<char> expanded_;
  std::unordered_map<std::string, int> state_index_;
  int root_ = 0;
  std::uint32_t poll_counter_ = 0;
  std::size_t expansions_ = 0;

  friend class Expander;
};

}  // namespace polsat::detail
