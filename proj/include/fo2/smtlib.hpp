// ============================================================================
// fo2/smtlib.hpp — SMT-LIB v2 script emission
// ============================================================================
//
// Renders a closed formula set over a signature into a complete SMT-LIB
// script: sort and symbol declarations, one assertion per formula, and a
// final check-sat.  With a domain bound n the sort is pinned to an
// enumerated carrier u0..u{n-1} (pairwise distinct, jointly exhaustive), and
// extraction adds a single get-value command probing every atom over the
// carrier, which is how bounded models come back without parsing arbitrary
// solver model syntax.
//
// Output is byte-identical for identical input; iteration follows the
// signature's sorted symbol order and probes are emitted constants first,
// then unary and binary extensions in row-major element order.
// ============================================================================

#ifndef FO2_SMTLIB_HPP
#define FO2_SMTLIB_HPP

#include <optional>
#include <string>
#include <vector>

#include "fo2/formula.hpp"

namespace fo2 {

std::string emit_smtlib(const std::vector<Formula>& formulas, const Signature& sig,
                        std::optional<int> domain_bound = std::nullopt,
                        bool extract = false);

// The get-value probe terms for a carrier of size n, in emission order:
// "(= a u0)" ... then "(F u0)" ... then "(R u0 u0)" ...  Grading code uses
// the same order to read the solver's answers back positionally.
std::vector<std::string> probe_terms(const Signature& sig, int domain_bound);

}  // namespace fo2

#endif
