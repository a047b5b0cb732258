#include "polsat/formula.hpp"

#include <array>
#include <stdexcept>

namespace polsat {

struct Formula::Node {
  Op op;
  std::string name;
  Formula lhs_child;
  Formula rhs_child;
  std::size_t hash;
  std::size_t size;
  bool temporal;
};

namespace {

constexpr std::array<std::string_view, 10> kReserved = {
    "true", "TRUE", "false", "FALSE", "X", "U", "R", "V", "G", "F"};

std::size_t mix(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool is_unary(Op op) noexcept {
  return op == Op::Not || op == Op::Next || op == Op::Globally || op == Op::Finally;
}

bool is_binary(Op op) noexcept {
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
    case Op::Until:
    case Op::Release:
      return true;
    default:
      return false;
  }
}

bool is_temporal(Op op) noexcept {
  switch (op) {
    case Op::Next:
    case Op::Until:
    case Op::Release:
    case Op::Globally:
    case Op::Finally:
      return true;
    default:
      return false;
  }
}

bool is_reserved_word(std::string_view word) noexcept {
  for (auto r : kReserved)
    if (r == word) return true;
  return false;
}

bool is_valid_prop_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  for (char c : name)
    if (!alpha(c) && !digit(c)) return false;
  return !is_reserved_word(name);
}

Formula::Formula() : Formula(tt()) {}

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::name() const noexcept { return node_->name; }

const Formula& Formula::lhs() const {
  if (!is_unary(op()) && !is_binary(op())) throw std::logic_error("formula has no operand");
  return node_->lhs_child;
}

const Formula& Formula::rhs() const {
  if (!is_binary(op())) throw std::logic_error("formula has no right operand");
  return node_->rhs_child;
}

std::size_t Formula::hash() const noexcept { return node_->hash; }
std::size_t Formula::size() const noexcept { return node_->size; }
bool Formula::has_temporal() const noexcept { return node_->temporal; }

bool Formula::is_literal() const noexcept {
  return op() == Op::Prop || (op() == Op::Not && node_->lhs_child.op() == Op::Prop);
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op || x.size != y.size) return false;
  switch (x.op) {
    case Op::True:
    case Op::False:
      return true;
    case Op::Prop:
      return x.name == y.name;
    default:
      if (is_unary(x.op)) return x.lhs_child == y.lhs_child;
      return x.lhs_child == y.lhs_child && x.rhs_child == y.rhs_child;
  }
}

// Leaves hold null children; lhs()/rhs() refuse to hand them out.
Formula Formula::tt() {
  static const Formula node(std::make_shared<const Node>(
      Node{Op::True, {}, Formula(nullptr), Formula(nullptr), mix(0, static_cast<std::size_t>(Op::True)), 1, false}));
  return node;
}

Formula Formula::ff() {
  static const Formula node(std::make_shared<const Node>(
      Node{Op::False, {}, Formula(nullptr), Formula(nullptr), mix(0, static_cast<std::size_t>(Op::False)), 1, false}));
  return node;
}

Formula Formula::prop(std::string name) {
  if (!is_valid_prop_name(name)) throw std::invalid_argument("invalid proposition name '" + name + "'");
  auto h = mix(static_cast<std::size_t>(Op::Prop), std::hash<std::string>{}(name));
  return Formula(std::make_shared<const Node>(Node{Op::Prop, std::move(name), Formula(nullptr), Formula(nullptr), h, 1, false}));
}

Formula Formula::unary(Op op, Formula operand) {
  if (!is_unary(op)) throw std::invalid_argument("not a unary operator");
  auto h = mix(static_cast<std::size_t>(op) * 31, operand.hash());
  auto size = operand.size() + 1;
  bool temporal = is_temporal(op) || operand.has_temporal();
  return Formula(std::make_shared<const Node>(Node{op, {}, std::move(operand), Formula(nullptr), h, size, temporal}));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  if (!is_binary(op)) throw std::invalid_argument("not a binary operator");
  auto h = mix(mix(static_cast<std::size_t>(op) * 131, lhs.hash()), rhs.hash());
  auto size = lhs.size() + rhs.size() + 1;
  bool temporal = is_temporal(op) || lhs.has_temporal() || rhs.has_temporal();
  return Formula(
      std::make_shared<const Node>(Node{op, {}, std::move(lhs), std::move(rhs), h, size, temporal}));
}

}  // namespace polsat
