// Canonical formula rendering.  Three styles:
//
//   Unicode  : "∀x(Fx → Gx)"   the display form used in prompts
//   Ascii    : "Ax(Fx -> Gx)"  7-bit form used in stored records
//   SmtAtoms : "(forall ((x U)) (=> (F x) (G x)))"  SMT-LIB term text
//
// Unicode and Ascii round-trip through the strict parser; SmtAtoms is
// one-way (consumed by the solver layer).  Parenthesization is canonical:
// every child that is itself a binary connective is parenthesized, which
// makes reprints byte-stable and independent of associativity conventions.

#ifndef FO2_PRINT_HPP
#define FO2_PRINT_HPP

#include <cstdint>
#include <string>

#include "fo2/formula.hpp"

namespace fo2 {

enum class PrintStyle { Unicode, Ascii, SmtAtoms };

std::string print(const Formula& f, PrintStyle style);

// Stable across runs and platforms: FNV-1a over the Ascii rendering.
std::uint64_t ast_hash(const Formula& f);

// Total order on formulas via their Ascii rendering; used wherever a
// deterministic iteration order over formula collections is needed.
bool formula_less(const Formula& a, const Formula& b);

}  // namespace fo2

#endif
