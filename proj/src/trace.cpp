#include "polsat/trace.hpp"

#include <sstream>

namespace polsat {

const State& LassoWord::at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  return loop[(i - prefix.size()) % loop.size()];
}

namespace {

using Values = std::vector<char>;

class Evaluator {
 public:
  explicit Evaluator(const LassoWord& w) : word_(w), n_(w.length()), loop_start_(w.prefix.size()) {}

  Values run(const Formula& f) {
    Values out(n_, 0);
    switch (f.op()) {
      case Op::True:
        out.assign(n_, 1);
        break;
      case Op::False:
        break;
      case Op::Prop:
        for (std::size_t i = 0; i < n_; ++i) out[i] = word_.at(i).contains(f.name());
        break;
      case Op::Not: {
        auto a = run(f.child());
        for (std::size_t i = 0; i < n_; ++i) out[i] = !a[i];
        break;
      }
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff: {
        auto a = run(f.lhs());
        auto b = run(f.rhs());
        for (std::size_t i = 0; i < n_; ++i) out[i] = combine(f.op(), a[i], b[i]);
        break;
      }
      case Op::Next: {
        auto a = run(f.child());
        for (std::size_t i = 0; i < n_; ++i) out[i] = a[succ(i)];
        break;
      }
      case Op::Until:
        out = least_fixpoint(run(f.lhs()), run(f.rhs()));
        break;
      case Op::Finally:
        out = least_fixpoint(Values(n_, 1), run(f.child()));
        break;
      case Op::Release:
        out = greatest_fixpoint(run(f.lhs()), run(f.rhs()));
        break;
      case Op::Globally:
        out = greatest_fixpoint(Values(n_, 0), run(f.child()));
        break;
    }
    return out;
  }

 private:
  std::size_t succ(std::size_t i) const { return i + 1 < n_ ? i + 1 : loop_start_; }

  static char combine(Op op, char a, char b) {
    switch (op) {
      case Op::And: return a && b;
      case Op::Or: return a || b;
      case Op::Implies: return !a || b;
      default: return a == b;
    }
  }

  // a U b: smallest solution of v[i] = b[i] | (a[i] & v[succ i]).
  Values least_fixpoint(const Values& a, const Values& b) const {
    Values v(n_, 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = n_; k-- > 0;) {
        char x = b[k] || (a[k] && v[succ(k)]);
        if (x != v[k]) {
          v[k] = x;
          changed = true;
        }
      }
    }
    return v;
  }

  // a R b: largest solution of v[i] = b[i] & (a[i] | v[succ i]).
  Values greatest_fixpoint(const Values& a, const Values& b) const {
    Values v(n_, 1);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = n_; k-- > 0;) {
        char x = b[k] && (a[k] || v[succ(k)]);
        if (x != v[k]) {
          v[k] = x;
          changed = true;
        }
      }
    }
    return v;
  }

  const LassoWord& word_;
  std::size_t n_;
  std::size_t loop_start_;
};

void print_states(std::ostringstream& os, const std::vector<State>& states) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) os << ',';
    bool first = true;
    for (const auto& p : states[i]) {
      if (!first) os << ' ';
      os << p;
      first = false;
    }
  }
}

std::vector<State> parse_states(std::string_view text) {
  std::vector<State> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    State state;
    std::size_t i = 0;
    while (i < piece.size()) {
      if (piece[i] == ' ' || piece[i] == '\t') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < piece.size() && piece[j] != ' ' && piece[j] != '\t') ++j;
      auto name = std::string(piece.substr(i, j - i));
      if (!is_valid_prop_name(name)) throw EvidenceError("invalid proposition '" + name + "' in evidence");
      state.insert(std::move(name));
      i = j;
    }
    out.push_back(std::move(state));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<bool> eval_positions(const LassoWord& w, const Formula& f) {
  if (w.loop.empty()) throw std::invalid_argument("lasso word has an empty loop");
  auto values = Evaluator(w).run(f);
  return {values.begin(), values.end()};
}

bool eval(const LassoWord& w, const Formula& f) {
  if (w.loop.empty()) throw std::invalid_argument("lasso word has an empty loop");
  return Evaluator(w).run(f).front();
}

std::string print_evidence(const LassoWord& w) {
  std::ostringstream os;
  if (!w.prefix.empty()) {
    print_states(os, w.prefix);
    os << ';';
  }
  os << '(';
  print_states(os, w.loop);
  os << ')';
  return os.str();
}

LassoWord parse_evidence(std::string_view text) {
  text = trim(text);
  LassoWord w;
  auto semi = text.find(';');
  std::string_view loop_part = text;
  if (semi != std::string_view::npos) {
    w.prefix = parse_states(text.substr(0, semi));
    loop_part = trim(text.substr(semi + 1));
  }
  if (loop_part.size() < 2 || loop_part.front() != '(' || loop_part.back() != ')')
    throw EvidenceError("malformed evidence '" + std::string(text) + "': loop must be parenthesised");
  auto inner = loop_part.substr(1, loop_part.size() - 2);
  if (inner.find_first_of("();") != std::string_view::npos)
    throw EvidenceError("malformed evidence '" + std::string(text) + "'");
  w.loop = parse_states(inner);
  return w;
}

}  // namespace polsat
