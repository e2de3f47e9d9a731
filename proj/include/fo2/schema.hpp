// The sentence schema inventory: each schema pairs a surface template with
// a formula template over typed word slots.  Filling the slots from a
// lexicon yields a SentenceRecord whose surface text, symbolization key,
// and formula were produced together and therefore cannot drift apart.
//
// The catalogue is fixed at 32 types: 30 core types ranging from atomic
// sentences through nested and back-referencing quantification, plus two
// used by argument construction (an exclusive domain partition and a
// doubly nested conditional).  Formula shapes worth noting:
//
//   *_back types pair the two relation directions, e.g. some_some_back is
//       ExEy((Px & Qy) & (Txy & Tyx))
//   three-slot chains rebind x inside the relative clause, e.g.
//       all_all_all is Ax(Px -> Ay((Qy & Ax(Rx -> Tyx)) -> Txy))
//   no_* types are negated existentials, not universals over negations.
//
// Each template was checked against small hand-built structures when it
// was authored; test_schema pins both the surfaces and the formulas.

#ifndef FO2_SCHEMA_HPP
#define FO2_SCHEMA_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo2/formula.hpp"
#include "fo2/lexicon.hpp"

namespace fo2 {

enum class SchemaType {
  AtomicMonadic,
  AtomicDyadic,
  Negation,
  UnivAffirmative,
  PartAffirmative,
  UnivNegative,
  PartNegative,
  OnlyRestrictor,
  NameAll,
  NameSome,
  AllAll,
  AllAllAll,
  AllAllBack,
  AllSome,
  AllSomeBack,
  SomeAll,
  SomeAllBack,
  SomeSome,
  SomeSomeBack,
  SomeSomeSome,
  NoAll,
  NoSome,
  NoSomeBack,
  RevSomeAll,
  RevNoAll,
  SomeSelf,
  ConjunctionSimple,
  DisjunctionSimple,
  ConditionalIfThen,
  BiconditionalJustInCase,
  DomainPartition,
  ConditionalNestedOnlyIf,
};

// All 32 types in catalogue order: the 30 core types first, then the two
// argument-construction types.  Corpus generation strides this order, so
// the first 30 emissions of a run cover exactly the core inventory.
const std::vector<SchemaType>& all_schema_types();

// Stable identifier, e.g. "quantified_some_some_back"; round-trips through
// schema_type_from_name, which throws SchemaError for unknown names.
const char* schema_type_name(SchemaType type);
SchemaType schema_type_from_name(const std::string& name);

// Word classes the schema's slots draw from, in filling order.
const std::vector<WordKind>& schema_slots(SchemaType type);

// Index pairs that must be filled with different symbols (name pairs such
// as "Hazel kicked Lewis", and the three nouns of a domain partition).
const std::vector<std::pair<int, int>>& schema_distinct_slots(SchemaType type);

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// A filling symbol's word class does not match its slot (or a distinctness
// requirement is violated).
class SlotTypeError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};
// A verb of the wrong arity was supplied for a verb slot.
class ArityError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

struct SentenceRecord {
  std::string id;                  // assigned when stored; empty until then
  std::string surface;
  std::map<char, std::string> soa; // symbol -> gloss, exactly formula's symbols
  Formula formula;
  std::uint64_t hash = 0;          // ast_hash(formula)
  SchemaType type = SchemaType::AtomicMonadic;
  Language language = Language::English;
  std::string counterpart_id;      // record of the other language, same formula
};

// Realizes one schema instance.  `filling` lists one lexicon symbol per
// slot.  The result has no id/counterpart yet; corpus generation assigns
// both.  Throws SlotTypeError/ArityError on ill-typed fillings.
SentenceRecord instantiate(SchemaType type, const std::vector<char>& filling,
                           const Lexicon& lex);

}  // namespace fo2

#endif
