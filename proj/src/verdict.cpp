#include "polsat/verdict.hpp"

namespace polsat {

const LassoWord* Verdict::evidence() const noexcept {
  if (auto* s = std::get_if<Sat>(&value_); s && s->evidence) return &*s->evidence;
  return nullptr;
}

void Verdict::set_evidence(LassoWord w) {
  if (auto* s = std::get_if<Sat>(&value_)) s->evidence = std::move(w);
}

void Verdict::drop_evidence() {
  if (auto* s = std::get_if<Sat>(&value_)) s->evidence.reset();
}

std::string_view Verdict::label() const noexcept {
  if (is_sat()) return "sat";
  if (is_unsat()) return "unsat";
  return "unknown";
}

std::string Verdict::describe() const {
  if (!is_unknown()) return std::string(label());
  const auto& u = std::get<Unknown>(value_);
  switch (u.reason) {
    case UnknownReason::Timeout: return "unknown (timeout)";
    case UnknownReason::Cancelled: return "unknown (cancelled)";
    case UnknownReason::SolverError:
      return u.detail.empty() ? "unknown (solver error)" : "unknown (solver error: " + u.detail + ")";
  }
  return "unknown";
}

bool Verdict::same_answer(const Verdict& other) const noexcept {
  if (value_.index() != other.value_.index()) return false;
  if (is_unknown()) return reason() == other.reason();
  return true;
}

}  // namespace polsat
