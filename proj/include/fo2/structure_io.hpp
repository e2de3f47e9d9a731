// ============================================================================
// fo2/structure_io.hpp — candidate-structure text format
// ============================================================================
//
// Parses the structure text that countermodel answers arrive in and renders
// structures back out.  Two input shapes are accepted:
//
//   Sectioned ("Required Format"):
//       Domain: [0, 1, 2]
//       Constants: "a": 0
//       Monadic predicates: "F": [0, 2]
//       Binary predicates: "R": [[0, 1], [2, 0]]
//
//   Compact:
//       F={0}, G={0,1}, a=1
//
// Parsing is two-phase.  parse_structure_text is lenient and syntactic: it
// collects per-symbol raw entries (with the section they appeared under) and
// never decides arity questions.  resolve_structure then binds the raw
// entries against the symbols an argument actually needs, which is where
// missing interpretations, wrong-shape extensions, and out-of-domain values
// are detected.  Symbols the argument does not mention are ignored entirely,
// however malformed.  When the same symbol is given twice, the last
// occurrence wins (answers sometimes revise themselves mid-text).
//
// A declared domain is used verbatim; the fallback domain applies only when
// the text declares none.
// ============================================================================

#ifndef FO2_STRUCTURE_IO_HPP
#define FO2_STRUCTURE_IO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fo2/structure.hpp"

namespace fo2 {

struct RawEntry {
  enum class Section { None, Constants, Monadic, Binary };
  enum class Shape { Int, IntList, PairList, EmptyList, Bad };
  char symbol = 0;
  Section section = Section::None;
  Shape shape = Shape::Bad;
  long long scalar = 0;
  std::vector<int> ints;
  std::vector<std::pair<int, int>> pairs;
  std::string raw;  // original value text, for diagnostics
};

struct RawStructure {
  std::optional<std::vector<int>> domain;
  std::vector<RawEntry> entries;
  bool saw_section_header = false;

  bool any_content() const { return domain.has_value() || !entries.empty(); }
};

RawStructure parse_structure_text(std::string_view text);

struct ResolveOutcome {
  enum class Status { Ok, Missing, Malformed, DomainViolation };
  Status status = Status::Ok;
  FiniteStructure structure;
  char symbol = 0;      // offending symbol for Missing/Malformed
  std::string message;  // diagnostic detail
};

ResolveOutcome resolve_structure(const RawStructure& raw, const Signature& needed,
                                 const std::vector<int>& fallback_domain);

// The sectioned format, one section per line, suitable for display.
std::string to_required_format(const FiniteStructure& m);

}  // namespace fo2

#endif
