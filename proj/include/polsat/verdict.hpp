#pragma once

#include <optional>
#include <string>
#include <variant>

#include "polsat/trace.hpp"

namespace polsat {

enum class UnknownReason { Timeout, Cancelled, SolverError };

/// Answer of one solver: Sat (possibly with a witnessing lasso), Unsat, or
/// Unknown with a reason.
class Verdict {
 public:
  struct Sat {
    std::optional<LassoWord> evidence;
  };
  struct Unsat {};
  struct Unknown {
    UnknownReason reason = UnknownReason::SolverError;
    std::string detail;
  };

  Verdict() : value_(Unknown{}) {}

  static Verdict sat(std::optional<LassoWord> evidence = std::nullopt) { return Verdict(Sat{std::move(evidence)}); }
  static Verdict unsat() { return Verdict(Unsat{}); }
  static Verdict timeout() { return Verdict(Unknown{UnknownReason::Timeout, {}}); }
  static Verdict cancelled() { return Verdict(Unknown{UnknownReason::Cancelled, {}}); }
  static Verdict solver_error(std::string detail) {
    return Verdict(Unknown{UnknownReason::SolverError, std::move(detail)});
  }

  bool is_sat() const noexcept { return std::holds_alternative<Sat>(value_); }
  bool is_unsat() const noexcept { return std::holds_alternative<Unsat>(value_); }
  bool is_unknown() const noexcept { return std::holds_alternative<Unknown>(value_); }
  bool is_definitive() const noexcept { return !is_unknown(); }

  /// Evidence of a Sat verdict; nullptr otherwise or when absent.
  const LassoWord* evidence() const noexcept;
  void set_evidence(LassoWord w);
  void drop_evidence();

  /// Precondition: is_unknown().
  UnknownReason reason() const { return std::get<Unknown>(value_).reason; }
  const std::string& detail() const { return std::get<Unknown>(value_).detail; }

  /// `sat`, `unsat` or `unknown`.
  std::string_view label() const noexcept;
  /// label() plus the unknown reason, e.g. `unknown (timeout)`.
  std::string describe() const;

  /// Compares kinds and reasons; evidence is ignored.
  bool same_answer(const Verdict& other) const noexcept;

 private:
  explicit Verdict(std::variant<Sat, Unsat, Unknown> v) : value_(std::move(v)) {}
  std::variant<Sat, Unsat, Unknown> value_;
};

}  // namespace polsat
