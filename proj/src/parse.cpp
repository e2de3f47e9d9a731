#include "fo2/parse.hpp"

#include <vector>

namespace fo2 {

ParseError::ParseError(std::size_t pos, std::string exp)
    : std::runtime_error("parse error at position " + std::to_string(pos) +
                         ": expected " + exp),
      position(pos),
      expected(std::move(exp)) {}

FragmentError::FragmentError(std::size_t pos, std::string what_arg)
    : std::runtime_error(what_arg + " (position " + std::to_string(pos) + ")"),
      position(pos) {}

namespace {

constexpr char32_t kForAll = U'∀';
constexpr char32_t kExists = U'∃';
constexpr char32_t kNot = U'¬';
constexpr char32_t kAnd = U'∧';
constexpr char32_t kOr = U'∨';
constexpr char32_t kArrow = U'→';
constexpr char32_t kDArrow = U'↔';
constexpr char32_t kSupset = U'⊃';

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> cps;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    std::size_t extra = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xe0) == 0xc0) {
      cp = c & 0x1f;
      extra = 1;
    } else if ((c & 0xf0) == 0xe0) {
      cp = c & 0x0f;
      extra = 2;
    } else if ((c & 0xf8) == 0xf0) {
      cp = c & 0x07;
      extra = 3;
    } else {
      throw ParseError(cps.size(), "valid UTF-8");
    }
    if (i + extra >= text.size() && extra > 0) throw ParseError(cps.size(), "valid UTF-8");
    for (std::size_t k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xc0) != 0x80) throw ParseError(cps.size(), "valid UTF-8");
      cp = (cp << 6) | (cc & 0x3f);
    }
    cps.push_back(cp);
    i += extra + 1;
  }
  return cps;
}

bool is_lower(char32_t c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char32_t c) { return c >= 'A' && c <= 'Z'; }

class Parser {
 public:
  Parser(std::vector<char32_t> cps, Dialect dialect)
      : cps_(std::move(cps)), dialect_(dialect) {}

  Formula run() {
    skip_ws();
    if (at_end()) throw ParseError(pos_, "a formula");
    Formula f = parse_iff();
    skip_ws();
    if (!at_end()) throw ParseError(pos_, "end of input");
    return f;
  }

 private:
  std::vector<char32_t> cps_;
  Dialect dialect_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= cps_.size(); }
  char32_t peek() const { return at_end() ? 0 : cps_[pos_]; }

  void skip_ws() {
    while (!at_end()) {
      char32_t c = cps_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == U' ') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns true and consumes if the next token is the given operator:
  // its Unicode spelling, its ASCII spelling, or (liberal dialect only) the
  // `extra` variant symbol.
  bool eat_op(char32_t uni, std::string_view ascii, char32_t extra = 0) {
    skip_ws();
    if (at_end()) return false;
    char32_t c = peek();
    if (c == uni || (extra != 0 && c == extra && dialect_ == Dialect::Liberal)) {
      ++pos_;
      return true;
    }
    if (pos_ + ascii.size() <= cps_.size()) {
      for (std::size_t k = 0; k < ascii.size(); ++k)
        if (cps_[pos_ + k] != static_cast<char32_t>(ascii[k])) return false;
      pos_ += ascii.size();
      return true;
    }
    return false;
  }

  Formula parse_iff() {
    Formula l = parse_implies();
    if (eat_iff()) {
      Formula r = dialect_ == Dialect::Liberal ? parse_iff() : parse_implies();
      if (dialect_ == Dialect::Strict && peek_iff())
        throw ParseError(pos_, "parentheses (<-> is non-associative)");
      return iff(std::move(l), std::move(r));
    }
    return l;
  }

  bool peek_iff() {
    std::size_t saved = pos_;
    bool hit = eat_iff();
    pos_ = saved;
    return hit;
  }
  bool eat_iff() { return eat_op(kDArrow, "<->"); }

  Formula parse_implies() {
    Formula l = parse_or();
    if (eat_implies()) {
      Formula r = dialect_ == Dialect::Liberal ? parse_implies() : parse_or();
      if (dialect_ == Dialect::Strict && peek_implies())
        throw ParseError(pos_, "parentheses (-> is non-associative)");
      return implies(std::move(l), std::move(r));
    }
    return l;
  }

  bool peek_implies() {
    std::size_t saved = pos_;
    bool hit = eat_implies();
    pos_ = saved;
    return hit;
  }
  bool eat_implies() { return eat_op(kArrow, "->", kSupset); }

  Formula parse_or() {
    Formula l = parse_and();
    while (eat_op(kOr, "|")) l = disj(std::move(l), parse_and());
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (eat_op(kAnd, "&")) l = conj(std::move(l), parse_unary());
    return l;
  }

  Formula parse_unary() {
    skip_ws();
    if (at_end()) throw ParseError(pos_, "a formula");
    char32_t c = peek();
    if (c == kNot || c == '~') {
      ++pos_;
      return neg(parse_unary());
    }
    if (c == kForAll || c == kExists || c == 'A' || c == 'E') {
      bool universal = c == kForAll || c == 'A';
      ++pos_;
      skip_ws();
      char32_t v = peek();
      if (v == 'x' || v == 'y') {
        ++pos_;
        Formula body = parse_unary();
        return universal ? forall(static_cast<char>(v), std::move(body))
                         : exists(static_cast<char>(v), std::move(body));
      }
      if (is_lower(v))
        throw FragmentError(pos_, std::string("quantified variable '") +
                                      static_cast<char>(v) +
                                      "' outside the two-variable alphabet {x, y}");
      throw ParseError(pos_, "a variable (x or y)");
    }
    if (c == '(') {
      ++pos_;
      Formula f = parse_iff();
      skip_ws();
      if (peek() != ')') throw ParseError(pos_, ")");
      ++pos_;
      return f;
    }
    if (is_upper(c)) return parse_atom();
    if (is_lower(c)) throw ParseError(pos_, "a formula (a term cannot stand alone)");
    throw ParseError(pos_, "a formula");
  }

  Term parse_term() {
    skip_ws();
    char32_t c = peek();
    if (!is_lower(c)) throw ParseError(pos_, "a term (variable or constant)");
    ++pos_;
    return Term{static_cast<char>(c)};
  }

  Formula parse_atom() {
    char32_t p = peek();
    // 'A' and 'E' never reach here: they are consumed as quantifiers above.
    ++pos_;
    std::vector<Term> args;
    if (peek() == '(') {
      ++pos_;
      args.push_back(parse_term());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        if (args.size() == 2) throw ParseError(pos_, ") (atoms take at most 2 arguments)");
        args.push_back(parse_term());
        skip_ws();
      }
      if (peek() != ')') throw ParseError(pos_, ") or ,");
      ++pos_;
    } else {
      while (!at_end() && is_lower(peek()) && args.size() < 2) {
        args.push_back(Term{static_cast<char>(peek())});
        ++pos_;
      }
      if (args.empty()) throw ParseError(pos_, "a term after predicate");
      if (!at_end() && is_lower(peek()))
        throw ParseError(pos_, "an operator (atoms take at most 2 arguments)");
    }
    char pred = static_cast<char>(p);
    return args.size() == 1 ? atom(pred, args[0]) : atom(pred, args[0], args[1]);
  }
};

Formula parse_codepoints(std::vector<char32_t> cps, Dialect dialect) {
  return Parser(std::move(cps), dialect).run();
}

}  // namespace

Formula parse(std::string_view text, Dialect dialect) {
  std::vector<char32_t> cps = decode_utf8(text);
  // Equality is banned from the fragment outright, so it is screened before
  // parsing; no accepted token contains '='.
  for (std::size_t i = 0; i < cps.size(); ++i)
    if (cps[i] == '=')
      throw FragmentError(i, "equality is not part of the fragment");
  if (dialect == Dialect::Strict) return parse_codepoints(cps, dialect);
  try {
    return parse_codepoints(cps, dialect);
  } catch (const ParseError& first) {
    // Single-insertion parenthesis repair: exactly one missing closer or one
    // missing opener.  Anything else re-raises the original error.
    long depth = 0;
    long min_depth = 0;
    for (char32_t c : cps) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth < min_depth) min_depth = depth;
    }
    if (depth == 1 && min_depth >= 0) {
      std::vector<char32_t> repaired = cps;
      repaired.push_back(')');
      try {
        return parse_codepoints(std::move(repaired), dialect);
      } catch (const ParseError&) {
        throw first;
      }
    }
    if (depth == -1 && min_depth == -1) {
      std::vector<char32_t> repaired;
      repaired.push_back('(');
      repaired.insert(repaired.end(), cps.begin(), cps.end());
      try {
        return parse_codepoints(std::move(repaired), dialect);
      } catch (const ParseError&) {
        throw first;
      }
    }
    throw;
  }
}

}  // namespace fo2
