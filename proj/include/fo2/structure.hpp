// ============================================================================
// fo2/structure.hpp — finite structures and Tarskian evaluation
// ============================================================================
//
// A FiniteStructure interprets constants and predicates over a finite domain
// of non-negative integers.  Evaluation is the exact, solver-free decision
// procedure for "is this formula true here" and, through check_countermodel,
// for "does this structure witness the invalidity of an argument".
//
// Structures may interpret more symbols than a formula uses (extras are
// ignored); a symbol the formula needs but the structure lacks raises
// MissingInterpretation.  A predicate interpreted at the wrong arity raises
// ExtensionArityError.
// ============================================================================

#ifndef FO2_STRUCTURE_HPP
#define FO2_STRUCTURE_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fo2/formula.hpp"

namespace fo2 {

struct FiniteStructure {
  std::vector<int> domain;  // distinct non-negative integers
  std::map<char, int> constants;
  std::map<char, std::set<int>> unary;
  std::map<char, std::set<std::pair<int, int>>> binary;

  bool in_domain(int e) const;
  // Empty list iff the structure satisfies its own invariants (non-empty
  // domain, distinct elements, every value inside the domain).
  std::vector<std::string> integrity_problems() const;
};

struct Assignment {
  std::optional<int> x;
  std::optional<int> y;

  int get(char v) const;
  Assignment with(char v, int e) const;
};

class EvalError : public std::runtime_error {
 public:
  EvalError(char symbol, const std::string& what_arg)
      : std::runtime_error(what_arg), symbol(symbol) {}
  char symbol;
};

class MissingInterpretation : public EvalError {
 public:
  explicit MissingInterpretation(char symbol)
      : EvalError(symbol, std::string("Missing interpretation for: ") + symbol) {}
};

class ExtensionArityError : public EvalError {
 public:
  ExtensionArityError(char symbol, const std::string& what_arg)
      : EvalError(symbol, what_arg) {}
};

bool eval(const Formula& f, const FiniteStructure& m, const Assignment& a);

// Convenience for closed formulas.
bool eval_closed(const Formula& f, const FiniteStructure& m);

struct CountermodelVerdict {
  bool accepted = false;
  std::vector<std::size_t> failing_premises;  // indices of premises false in m
  bool conclusion_true = false;
};

// Accepted iff every premise is true in m and the conclusion is false.
CountermodelVerdict check_countermodel(const std::vector<Formula>& premises,
                                       const Formula& conclusion,
                                       const FiniteStructure& m);

// Renames domain elements through the permutation perm (element e becomes
// perm[index_of(e)] over the canonical order); used by isomorphism tests.
FiniteStructure permute_structure(const FiniteStructure& m, const std::vector<int>& perm);

// Grows m to exactly `size` elements on domain 0..size-1: the original
// elements are renamed onto a prefix in ascending order, and the remaining
// slots are filled with clones of the last original, each clone related to
// everything (other clones and itself included) exactly as its original is.
// The language has no equality, so clones are indistinguishable from their
// original and every closed formula keeps its truth value.  Throws
// std::invalid_argument when m is larger than `size` or fails its own
// integrity check.
FiniteStructure pad_structure(const FiniteStructure& m, std::size_t size);

}  // namespace fo2

#endif
