#include "polsat/syntax.hpp"

#include <optional>

namespace polsat {

namespace {

std::string describe_error(std::size_t position, const std::string& expected, const std::string& found) {
  return "syntax error at position " + std::to_string(position) + ": expected " + expected + ", found " +
         found;
}

enum class Tok {
  End,
  LParen,
  RParen,
  Ident,
  True,
  False,
  Not,
  Next,
  Globally,
  Finally,
  Until,
  Release,
  And,
  Or,
  Implies,
  Iff,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t position;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, {}, text_.size() + 1});
        return out;
      }
      out.push_back(next_token());
    }
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
  static bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  Token take(Tok kind, std::size_t len) {
    Token t{kind, text_.substr(pos_, len), pos_ + 1};
    pos_ += len;
    return t;
  }

  Token next_token() {
    const char c = text_[pos_];
    if (static_cast<unsigned char>(c) >= 0x80)
      throw ParseError(pos_ + 1, "an ASCII character", "a non-ASCII byte");
    // Longest match first: `<->` before `<>`, `&&` before `&`, ...
    if (starts_with("<->")) return take(Tok::Iff, 3);
    if (starts_with("<>")) return take(Tok::Finally, 2);
    if (starts_with("->")) return take(Tok::Implies, 2);
    if (starts_with("[]")) return take(Tok::Globally, 2);
    if (starts_with("&&")) return take(Tok::And, 2);
    if (starts_with("||")) return take(Tok::Or, 2);
    switch (c) {
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      case '!':
      case '~': return take(Tok::Not, 1);
      case '&': return take(Tok::And, 1);
      case '|': return take(Tok::Or, 1);
      default: break;
    }
    if (ident_start(c)) {
      std::size_t len = 1;
      while (pos_ + len < text_.size() && ident_char(text_[pos_ + len])) ++len;
      auto word = text_.substr(pos_, len);
      if (word == "true" || word == "TRUE") return take(Tok::True, len);
      if (word == "false" || word == "FALSE") return take(Tok::False, len);
      if (word == "X") return take(Tok::Next, len);
      if (word == "G") return take(Tok::Globally, len);
      if (word == "F") return take(Tok::Finally, len);
      if (word == "U") return take(Tok::Until, len);
      if (word == "R" || word == "V") return take(Tok::Release, len);
      return take(Tok::Ident, len);
    }
    throw ParseError(pos_ + 1, "a formula token", "'" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Precedence, loosest first: <->, ->, |, &, {U, R}, unary.
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula run() {
    auto f = parse_iff();
    if (peek().kind != Tok::End) fail("an operator or end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[index_]; }
  const Token& advance() { return tokens_[index_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++index_;
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const auto& t = peek();
    std::string found;
    if (t.kind == Tok::End)
      found = "end of input";
    else if (t.kind == Tok::Until || t.kind == Tok::Release)
      found = "reserved word '" + std::string(t.text) + "'";
    else
      found = "'" + std::string(t.text) + "'";
    throw ParseError(t.position, expected, found);
  }

  Formula parse_iff() {
    auto lhs = parse_implies();
    if (accept(Tok::Iff)) return iff(std::move(lhs), parse_iff());
    return lhs;
  }

  Formula parse_implies() {
    auto lhs = parse_or();
    if (accept(Tok::Implies)) return implies(std::move(lhs), parse_implies());
    return lhs;
  }

  Formula parse_or() {
    auto lhs = parse_and();
    while (accept(Tok::Or)) lhs = disj(std::move(lhs), parse_and());
    return lhs;
  }

  Formula parse_and() {
    auto lhs = parse_binary_temporal();
    while (accept(Tok::And)) lhs = conj(std::move(lhs), parse_binary_temporal());
    return lhs;
  }

  Formula parse_binary_temporal() {
    auto lhs = parse_unary();
    if (accept(Tok::Until)) return until(std::move(lhs), parse_binary_temporal());
    if (accept(Tok::Release)) return release(std::move(lhs), parse_binary_temporal());
    return lhs;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not: advance(); return negate(parse_unary());
      case Tok::Next: advance(); return next(parse_unary());
      case Tok::Globally: advance(); return globally(parse_unary());
      case Tok::Finally: advance(); return finally(parse_unary());
      default: return parse_atom();
    }
  }

  Formula parse_atom() {
    const auto& t = peek();
    switch (t.kind) {
      case Tok::True: advance(); return tt();
      case Tok::False: advance(); return ff();
      case Tok::Ident: advance(); return prop(std::string(t.text));
      case Tok::LParen: {
        advance();
        auto inner = parse_iff();
        if (!accept(Tok::RParen)) fail("')'");
        return inner;
      }
      default: fail("a formula");
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

void render_into(const Formula& f, const Dialect& d, std::string& out) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      out += d.spelling(f.op());
      return;
    case Op::Prop:
      out += f.name();
      return;
    default:
      break;
  }
  out += '(';
  if (is_unary(f.op())) {
    out += d.spelling(f.op());
    out += ' ';
    render_into(f.child(), d, out);
  } else {
    render_into(f.lhs(), d, out);
    out += ' ';
    out += d.spelling(f.op());
    out += ' ';
    render_into(f.rhs(), d, out);
  }
  out += ')';
}

}  // namespace

ParseError::ParseError(std::size_t position, std::string expected, std::string found)
    : std::runtime_error(describe_error(position, expected, found)),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Dialect Dialect::alternate() {
  Dialect d;
  d.not_sym = NotSym::Tilde;
  d.and_sym = AndSym::AmpAmp;
  d.or_sym = OrSym::BarBar;
  d.release_sym = ReleaseSym::V;
  d.globally_sym = GloballySym::Box;
  d.finally_sym = FinallySym::Diamond;
  d.const_case = ConstCase::Upper;
  return d;
}

std::vector<Dialect> Dialect::all() {
  std::vector<Dialect> out;
  for (unsigned bits = 0; bits < 128; ++bits) {
    Dialect d;
    d.not_sym = (bits & 1) ? NotSym::Tilde : NotSym::Bang;
    d.and_sym = (bits & 2) ? AndSym::AmpAmp : AndSym::Amp;
    d.or_sym = (bits & 4) ? OrSym::BarBar : OrSym::Bar;
    d.release_sym = (bits & 8) ? ReleaseSym::V : ReleaseSym::R;
    d.globally_sym = (bits & 16) ? GloballySym::Box : GloballySym::G;
    d.finally_sym = (bits & 32) ? FinallySym::Diamond : FinallySym::F;
    d.const_case = (bits & 64) ? ConstCase::Upper : ConstCase::Lower;
    out.push_back(d);
  }
  return out;
}

std::string_view Dialect::spelling(Op op) const {
  switch (op) {
    case Op::True: return const_case == ConstCase::Lower ? "true" : "TRUE";
    case Op::False: return const_case == ConstCase::Lower ? "false" : "FALSE";
    case Op::Prop: return {};
    case Op::Not: return not_sym == NotSym::Bang ? "!" : "~";
    case Op::And: return and_sym == AndSym::Amp ? "&" : "&&";
    case Op::Or: return or_sym == OrSym::Bar ? "|" : "||";
    case Op::Implies: return "->";
    case Op::Iff: return "<->";
    case Op::Next: return "X";
    case Op::Until: return "U";
    case Op::Release: return release_sym == ReleaseSym::R ? "R" : "V";
    case Op::Globally: return globally_sym == GloballySym::G ? "G" : "[]";
    case Op::Finally: return finally_sym == FinallySym::F ? "F" : "<>";
  }
  return {};
}

Formula parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

std::string render(const Formula& f, const Dialect& dialect) {
  std::string out;
  render_into(f, dialect, out);
  return out;
}

}  // namespace polsat
