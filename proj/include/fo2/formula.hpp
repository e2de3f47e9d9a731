// ============================================================================
// fo2/formula.hpp — AST for the two-variable fragment of first-order logic
// ============================================================================
//
// Design notes:
//
//   Formulas are immutable trees shared via shared_ptr<const Node>; copying a
//   Formula is a pointer copy, so records and worker threads can share them
//   freely.  Structural equality and ordering are provided as free functions.
//
//   Node kinds:
//     Atom    : predicate symbol applied to 1 or 2 terms
//     Not     : child
//     And/Or/Implies/Iff : left, right
//     ForAll/Exists      : bound variable + body
//
//   Symbol alphabets are single characters and disjoint by construction:
//     variables   'x', 'y'           (the fragment's only variable names)
//     constants   other lowercase letters
//     predicates  uppercase letters except 'A' and 'E', which are the ASCII
//                 quantifier prefixes and would make `Ax`-style text ambiguous
//
//   Equality and function symbols have no representation at all; the parser
//   rejects them at the token level, so no downstream code needs to consider
//   them.  A quantifier node can carry a non-{x,y} variable only if built
//   directly through the factories; check_wf reports that as a violation
//   rather than the factories throwing, so diagnostic tooling can inspect
//   such terms.
// ============================================================================

#ifndef FO2_FORMULA_HPP
#define FO2_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fo2 {

enum class Kind { Atom, Not, And, Or, Implies, Iff, ForAll, Exists };

struct Term {
  char sym;

  bool is_variable() const { return sym == 'x' || sym == 'y'; }
  bool is_constant() const { return !is_variable(); }
  bool operator==(const Term&) const = default;
};

inline Term var(char v) { return Term{v}; }
inline Term constant(char c) { return Term{c}; }

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  char pred = 0;            // Atom
  std::vector<Term> args;   // Atom: 1 or 2 entries
  char bound = 0;           // ForAll/Exists
  Formula left, right;      // children; Not/quantifiers use left only
};

Formula atom(char pred, Term t);
Formula atom(char pred, Term t1, Term t2);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula forall(char v, Formula body);
Formula exists(char v, Formula body);

bool equal(const Formula& a, const Formula& b);

std::set<char> free_vars(const Formula& f);

// The symbol inventory a formula set is read against.  The three alphabets
// are disjoint; arity is a function of the symbol.
struct Signature {
  std::set<char> unary;
  std::set<char> binary;
  std::set<char> constants;

  bool contains_predicate(char p) const {
    return unary.count(p) > 0 || binary.count(p) > 0;
  }
  void merge(const Signature& other);
  bool operator==(const Signature&) const = default;
};

// Collects each symbol with the arity of its first occurrence; a symbol later
// used at the other arity is reported in `conflicts` (and kept at its first
// arity).
Signature signature_of(const std::vector<Formula>& formulas,
                       std::vector<char>* conflicts = nullptr);

// Every predicate and constant the formula mentions, as one flat set
// (variables excluded).  Handy for subject-matter overlap checks.
std::set<char> all_symbols(const Formula& f);

struct WfViolation {
  enum class Kind { UnknownSymbol, ArityMismatch, UnboundVariable, ThirdVariable };
  Kind kind;
  char symbol;          // offending predicate/constant/variable
  std::string message;  // human-readable description
};

struct WfReport {
  std::vector<WfViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Empty report iff f is a closed formula over sig with consistent arities.
WfReport check_wf(const Formula& f, const Signature& sig);

}  // namespace fo2

#endif
