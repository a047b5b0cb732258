#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polsat/formula.hpp"

namespace polsat {

/// Thrown by parse(). `position` is the 1-based character offset of the
/// offending token (one past the end of input for premature end).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::string expected, std::string found);

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

/// Surface spelling used by render(). Each field picks one alternative;
/// parse() accepts all of them regardless.
struct Dialect {
  enum class NotSym { Bang, Tilde } not_sym = NotSym::Bang;
  enum class AndSym { Amp, AmpAmp } and_sym = AndSym::Amp;
  enum class OrSym { Bar, BarBar } or_sym = OrSym::Bar;
  enum class ReleaseSym { R, V } release_sym = ReleaseSym::R;
  enum class GloballySym { G, Box } globally_sym = GloballySym::G;
  enum class FinallySym { F, Diamond } finally_sym = FinallySym::F;
  enum class ConstCase { Lower, Upper } const_case = ConstCase::Lower;

  /// `!`, `&`, `|`, `R`, `G`, `F`, `true`, `false`.
  static Dialect standard() { return {}; }
  /// `~`, `&&`, `||`, `V`, `[]`, `<>`, `TRUE`, `FALSE`.
  static Dialect alternate();
  /// All 128 combinations of the independent spelling choices.
  static std::vector<Dialect> all();

  std::string_view spelling(Op op) const;

  friend bool operator==(const Dialect&, const Dialect&) = default;
};

Formula parse(std::string_view text);

/// Fully parenthesised text, e.g. `(a U b)` or `([] p)`.
std::string render(const Formula& f, const Dialect& dialect = Dialect::standard());

}  // namespace polsat
