// Formula parsing.  Two dialects share one grammar and differ in tolerance:
//
//   Strict  : the published grammar exactly.  Unicode and ASCII operator
//             spellings are both canonical; -> and <-> are non-associative
//             (a chain without parentheses is an error).
//   Liberal : adds cosmetic variants (⊃ for →), right-associates -> and <->
//             chains, and attempts a single-parenthesis repair (one missing
//             closer appended or one missing opener prepended).  It never
//             invents operands.
//
// Precedence, tightest first: ¬, ∧, ∨, →, ↔.  Quantifiers bind like ¬ (the
// smallest following formula).  ∧ and ∨ associate to the left in both
// dialects.  Atoms accept juxtaposed terms (Rxy) and argument lists (R(x,y)).
//
// Positions in errors are codepoint indices into the input.

#ifndef FO2_PARSE_HPP
#define FO2_PARSE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fo2/formula.hpp"

namespace fo2 {

enum class Dialect { Strict, Liberal };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::string expected);
  std::size_t position;
  std::string expected;
};

// A lexical violation of the fragment itself: a quantifier over a variable
// outside {x, y}, or an equality symbol anywhere.
class FragmentError : public std::runtime_error {
 public:
  FragmentError(std::size_t position, std::string what_arg);
  std::size_t position;
};

Formula parse(std::string_view text, Dialect dialect);

}  // namespace fo2

#endif
