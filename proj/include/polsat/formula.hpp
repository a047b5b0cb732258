#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace polsat {

/// Node kinds of the LTL syntax tree. Implies/Iff/Globally/Finally are
/// derived operators and disappear after desugar().
enum class Op : std::uint8_t {
  True,
  False,
  Prop,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Until,
  Release,
  Globally,
  Finally,
};

bool is_unary(Op op) noexcept;
bool is_binary(Op op) noexcept;
bool is_temporal(Op op) noexcept;

/// True when `name` matches `[a-zA-Z_][a-zA-Z0-9_]*` and is not a keyword.
bool is_valid_prop_name(std::string_view name) noexcept;
bool is_reserved_word(std::string_view word) noexcept;

/// Immutable LTL formula with structural equality.
///
/// Copies share the underlying tree. Every node caches its hash and its
/// node count, so equality on unequal formulas is usually decided by the
/// hash alone.
class Formula {
 public:
  /// Default-constructed formula is `true`.
  Formula();

  Op op() const noexcept;
  /// Proposition name; empty for every other node kind.
  const std::string& name() const noexcept;
  /// Operand of a unary node, left operand of a binary node.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& child() const { return lhs(); }

  std::size_t hash() const noexcept;
  /// Number of AST nodes.
  std::size_t size() const noexcept;
  /// Whether any Next/Until/Release/Globally/Finally occurs.
  bool has_temporal() const noexcept;

  bool is(Op op) const noexcept { return this->op() == op; }
  bool is_literal() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend bool operator!=(const Formula& a, const Formula& b) noexcept { return !(a == b); }

  // Constructors. prop() throws std::invalid_argument on invalid names.
  static Formula tt();
  static Formula ff();
  static Formula prop(std::string name);
  static Formula unary(Op op, Formula operand);
  static Formula binary(Op op, Formula lhs, Formula rhs);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Formula tt() { return Formula::tt(); }
inline Formula ff() { return Formula::ff(); }
inline Formula prop(std::string name) { return Formula::prop(std::move(name)); }
inline Formula negate(Formula f) { return Formula::unary(Op::Not, std::move(f)); }
inline Formula next(Formula f) { return Formula::unary(Op::Next, std::move(f)); }
inline Formula globally(Formula f) { return Formula::unary(Op::Globally, std::move(f)); }
inline Formula finally(Formula f) { return Formula::unary(Op::Finally, std::move(f)); }
inline Formula conj(Formula l, Formula r) { return Formula::binary(Op::And, std::move(l), std::move(r)); }
inline Formula disj(Formula l, Formula r) { return Formula::binary(Op::Or, std::move(l), std::move(r)); }
inline Formula implies(Formula l, Formula r) { return Formula::binary(Op::Implies, std::move(l), std::move(r)); }
inline Formula iff(Formula l, Formula r) { return Formula::binary(Op::Iff, std::move(l), std::move(r)); }
inline Formula until(Formula l, Formula r) { return Formula::binary(Op::Until, std::move(l), std::move(r)); }
inline Formula release(Formula l, Formula r) { return Formula::binary(Op::Release, std::move(l), std::move(r)); }

}  // namespace polsat

template <>
struct std::hash<polsat::Formula> {
  std::size_t operator()(const polsat::Formula& f) const noexcept { return f.hash(); }
};
