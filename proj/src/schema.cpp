#include "fo2/schema.hpp"

#include <cctype>

#include "fo2/print.hpp"

namespace fo2 {

namespace {

struct SchemaInfo {
  SchemaType type;
  const char* name;
  std::vector<WordKind> slots;
  std::vector<std::pair<int, int>> distinct;
};

// Catalogue order is load-bearing: corpus generation strides it, and the
// two argument-construction types sit after the 30 core types so a
// 30-emission run is exactly one sentence per core type.
const std::vector<SchemaInfo>& catalogue() {
  using K = WordKind;
  static const std::vector<SchemaInfo> table = {
      {SchemaType::AtomicMonadic, "atomic_monadic", {K::Name, K::Intransitive}, {}},
      {SchemaType::AtomicDyadic, "atomic_dyadic", {K::Name, K::Transitive, K::Name}, {{0, 2}}},
      {SchemaType::Negation, "negation", {K::Name, K::Adjective}, {}},
      {SchemaType::UnivAffirmative, "quantified_universal_affirmative", {K::Noun, K::Adjective}, {}},
      {SchemaType::PartAffirmative, "quantified_particular_affirmative", {K::Noun, K::Intransitive}, {}},
      {SchemaType::UnivNegative, "quantified_universal_negative", {K::Noun, K::Transitive, K::Name}, {}},
      {SchemaType::PartNegative, "quantified_particular_negative", {K::Noun, K::Transitive, K::Name}, {}},
      {SchemaType::OnlyRestrictor, "quantified_only_restrictor", {K::Noun, K::Intransitive}, {}},
      {SchemaType::NameAll, "quantified_name_all", {K::Name, K::Transitive, K::Noun}, {}},
      {SchemaType::NameSome, "quantified_name_some", {K::Name, K::Transitive, K::Noun}, {}},
      {SchemaType::AllAll, "quantified_all_all", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::AllAllAll, "quantified_all_all_all", {K::Noun, K::Transitive, K::Noun, K::Noun}, {}},
      {SchemaType::AllAllBack, "quantified_all_all_back", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::AllSome, "quantified_all_some", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::AllSomeBack, "quantified_all_some_back", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::SomeAll, "quantified_some_all", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::SomeAllBack, "quantified_some_all_back", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::SomeSome, "quantified_some_some", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::SomeSomeBack, "quantified_some_some_back", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::SomeSomeSome, "quantified_some_some_some", {K::Noun, K::Transitive, K::Noun, K::Noun}, {}},
      {SchemaType::NoAll, "quantified_no_all", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::NoSome, "quantified_no_some", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::NoSomeBack, "quantified_no_some_back", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::RevSomeAll, "quantified_rev_some_all", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::RevNoAll, "quantified_rev_no_all", {K::Noun, K::Transitive, K::Noun}, {}},
      {SchemaType::SomeSelf, "quantified_some_self", {K::Noun, K::Transitive}, {}},
      {SchemaType::ConjunctionSimple, "conjunction_simple",
       {K::Name, K::Transitive, K::Name, K::Noun, K::Transitive}, {{0, 2}}},
      {SchemaType::DisjunctionSimple, "disjunction_simple",
       {K::Name, K::Intransitive, K::Noun, K::Transitive}, {}},
      {SchemaType::ConditionalIfThen, "conditional_if_then", {K::Name, K::Noun, K::Name}, {{0, 2}}},
      {SchemaType::BiconditionalJustInCase, "biconditional_just_in_case",
       {K::Name, K::Adjective, K::Noun, K::Transitive, K::Name}, {}},
      {SchemaType::DomainPartition, "domain_partition", {K::Noun, K::Noun, K::Noun},
       {{0, 1}, {0, 2}, {1, 2}}},
      {SchemaType::ConditionalNestedOnlyIf, "conditional_nested_only_if",
       {K::Name, K::Intransitive, K::Noun, K::Adjective, K::Noun, K::Transitive, K::Name},
       {}},
  };
  return table;
}

const SchemaInfo& info_for(SchemaType type) {
  return catalogue()[static_cast<std::size_t>(type)];
}

std::string sentence_case(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

void check_filling(const SchemaInfo& info, const std::vector<char>& filling,
                   const Lexicon& lex) {
  if (filling.size() != info.slots.size()) {
    throw SlotTypeError(std::string(info.name) + ": expected " +
                        std::to_string(info.slots.size()) + " slot fillers, got " +
                        std::to_string(filling.size()));
  }
  for (std::size_t i = 0; i < filling.size(); ++i) {
    if (!lex.has(filling[i])) {
      throw SlotTypeError(std::string(info.name) + ": symbol '" +
                          std::string(1, filling[i]) + "' is not in the " +
                          language_name(lex.language()) + " lexicon");
    }
    WordKind got = lex.entry(filling[i]).kind;
    WordKind want = info.slots[i];
    if (got == want) continue;
    bool both_verbs =
        (got == WordKind::Intransitive || got == WordKind::Transitive) &&
        (want == WordKind::Intransitive || want == WordKind::Transitive);
    std::string detail = std::string(info.name) + " slot " + std::to_string(i) +
                         ": wants " + word_kind_name(want) + ", '" +
                         std::string(1, filling[i]) + "' is " + word_kind_name(got);
    if (both_verbs) throw ArityError(detail);
    throw SlotTypeError(detail);
  }
  for (auto [i, j] : info.distinct) {
    if (filling[i] == filling[j]) {
      throw SlotTypeError(std::string(info.name) + ": slots " + std::to_string(i) +
                          " and " + std::to_string(j) + " must differ");
    }
  }
}

}  // namespace

const std::vector<SchemaType>& all_schema_types() {
  static const std::vector<SchemaType> types = [] {
    std::vector<SchemaType> v;
    for (const SchemaInfo& info : catalogue()) v.push_back(info.type);
    return v;
  }();
  return types;
}

const char* schema_type_name(SchemaType type) { return info_for(type).name; }

SchemaType schema_type_from_name(const std::string& name) {
  for (const SchemaInfo& info : catalogue()) {
    if (name == info.name) return info.type;
  }
  throw SchemaError("unknown sentence type '" + name + "'");
}

const std::vector<WordKind>& schema_slots(SchemaType type) {
  return info_for(type).slots;
}

const std::vector<std::pair<int, int>>& schema_distinct_slots(SchemaType type) {
  return info_for(type).distinct;
}

SentenceRecord instantiate(SchemaType type, const std::vector<char>& filling,
                           const Lexicon& lex) {
  const SchemaInfo& info = info_for(type);
  check_filling(info, filling, lex);

  auto word = [&](int i) -> const LexEntry& { return lex.entry(filling[i]); };
  auto base = [&](int i) { return word(i).base; };
  auto pl = [&](int i) { return word(i).plural; };
  auto past = [&](int i) { return word(i).past; };
  auto at = [&](int i, Term t) { return atom(filling[i], t); };
  auto at2 = [&](int i, Term t1, Term t2) { return atom(filling[i], t1, t2); };
  auto cn = [&](int i) { return constant(filling[i]); };
  Term x = var('x');
  Term y = var('y');

  std::string surface;
  Formula f;
  switch (type) {
    case SchemaType::AtomicMonadic:
      surface = base(0) + " " + past(1) + ".";
      f = at(1, cn(0));
      break;
    case SchemaType::AtomicDyadic:
      surface = base(0) + " " + past(1) + " " + base(2) + ".";
      f = at2(1, cn(0), cn(2));
      break;
    case SchemaType::Negation:
      surface = base(0) + " isn't " + base(1) + ".";
      f = neg(at(1, cn(0)));
      break;
    case SchemaType::UnivAffirmative:
      surface = "All " + pl(0) + " are " + base(1) + ".";
      f = forall('x', implies(at(0, x), at(1, x)));
      break;
    case SchemaType::PartAffirmative:
      surface = "A " + base(0) + " will " + base(1) + ".";
      f = exists('x', conj(at(0, x), at(1, x)));
      break;
    case SchemaType::UnivNegative:
      surface = "No " + pl(0) + " " + past(1) + " " + base(2) + ".";
      f = neg(exists('x', conj(at(0, x), at2(1, x, cn(2)))));
      break;
    case SchemaType::PartNegative:
      surface = "Not all " + pl(0) + " " + past(1) + " " + base(2) + ".";
      f = neg(forall('x', implies(at(0, x), at2(1, x, cn(2)))));
      break;
    case SchemaType::OnlyRestrictor:
      surface = "Only " + pl(0) + " will " + base(1) + ".";
      f = forall('x', implies(at(1, x), at(0, x)));
      break;
    case SchemaType::NameAll:
      surface = base(0) + " " + past(1) + " every " + base(2) + ".";
      f = forall('x', implies(at(2, x), at2(1, cn(0), x)));
      break;
    case SchemaType::NameSome:
      surface = base(0) + " " + past(1) + " a " + base(2) + ".";
      f = exists('x', conj(at(2, x), at2(1, cn(0), x)));
      break;
    case SchemaType::AllAll:
      surface = "Every " + base(0) + " " + past(1) + " every " + base(2) + ".";
      f = forall('x', implies(at(0, x), forall('y', implies(at(2, y), at2(1, x, y)))));
      break;
    case SchemaType::AllAllAll:
      surface = "Every " + base(0) + " " + past(1) + " every " + base(2) +
                " that " + past(1) + " every " + base(3) + ".";
      f = forall('x', implies(at(0, x),
              forall('y', implies(conj(at(2, y),
                  forall('x', implies(at(3, x), at2(1, y, x)))), at2(1, x, y)))));
      break;
    case SchemaType::AllAllBack:
      surface = "Every " + base(0) + " " + past(1) + " every " + base(2) +
                " that " + past(1) + " it.";
      f = forall('x', implies(at(0, x),
              forall('y', implies(conj(at(2, y), at2(1, y, x)), at2(1, x, y)))));
      break;
    case SchemaType::AllSome:
      surface = "Every " + base(0) + " " + past(1) + " a " + base(2) + ".";
      f = forall('x', implies(at(0, x), exists('y', conj(at(2, y), at2(1, x, y)))));
      break;
    case SchemaType::AllSomeBack:
      surface = "Every " + base(0) + " " + past(1) + " a " + base(2) +
                " that " + past(1) + " it.";
      f = forall('x', implies(at(0, x),
              exists('y', conj(conj(at(2, y), at2(1, y, x)), at2(1, x, y)))));
      break;
    case SchemaType::SomeAll:
      surface = "A " + base(0) + " " + past(1) + " every " + base(2) + ".";
      f = exists('x', conj(at(0, x), forall('y', implies(at(2, y), at2(1, x, y)))));
      break;
    case SchemaType::SomeAllBack:
      surface = "A " + base(0) + " " + past(1) + " every " + base(2) +
                " that " + past(1) + " it.";
      f = exists('x', conj(at(0, x),
              forall('y', implies(conj(at(2, y), at2(1, y, x)), at2(1, x, y)))));
      break;
    case SchemaType::SomeSome:
      surface = "A " + base(0) + " " + past(1) + " a " + base(2) + ".";
      f = exists('x', exists('y', conj(conj(at(0, x), at(2, y)), at2(1, x, y))));
      break;
    case SchemaType::SomeSomeBack:
      surface = "A " + base(0) + " " + past(1) + " a " + base(2) +
                " that " + past(1) + " it.";
      f = exists('x', exists('y', conj(conj(at(0, x), at(2, y)),
                                       conj(at2(1, x, y), at2(1, y, x)))));
      break;
    case SchemaType::SomeSomeSome:
      surface = "A " + base(0) + " " + past(1) + " a " + base(2) +
                " that " + past(1) + " a " + base(3) + ".";
      f = exists('x', conj(at(0, x),
              exists('y', conj(conj(at(2, y),
                  exists('x', conj(at(3, x), at2(1, y, x)))), at2(1, x, y)))));
      break;
    case SchemaType::NoAll:
      surface = "No " + pl(0) + " " + past(1) + " every " + base(2) + ".";
      f = neg(exists('x', conj(at(0, x),
              forall('y', implies(at(2, y), at2(1, x, y))))));
      break;
    case SchemaType::NoSome:
      surface = "No " + pl(0) + " " + past(1) + " a " + base(2) + ".";
      f = neg(exists('x', conj(at(0, x), exists('y', conj(at(2, y), at2(1, x, y))))));
      break;
    case SchemaType::NoSomeBack:
      surface = "No " + pl(0) + " " + past(1) + " a " + base(2) +
                " that " + past(1) + " it.";
      f = neg(exists('x', conj(at(0, x),
              exists('y', conj(conj(at(2, y), at2(1, y, x)), at2(1, x, y))))));
      break;
    case SchemaType::RevSomeAll:
      surface = "There is a " + base(0) + " that every " + base(2) + " " + past(1) + ".";
      f = exists('x', conj(at(0, x), forall('y', implies(at(2, y), at2(1, y, x)))));
      break;
    case SchemaType::RevNoAll:
      surface = "There is not a " + base(0) + " that every " + base(2) + " " + past(1) + ".";
      f = neg(exists('x', conj(at(0, x),
              forall('y', implies(at(2, y), at2(1, y, x))))));
      break;
    case SchemaType::SomeSelf:
      surface = "A " + base(0) + " " + past(1) + " itself.";
      f = exists('x', conj(at(0, x), at2(1, x, x)));
      break;
    case SchemaType::ConjunctionSimple:
      surface = base(0) + " " + past(1) + " " + base(2) + " and not all " +
                pl(3) + " " + past(4) + " " + base(2) + ".";
      f = conj(at2(1, cn(0), cn(2)),
               neg(forall('x', implies(at(3, x), at2(4, x, cn(2))))));
      break;
    case SchemaType::DisjunctionSimple:
      surface = base(0) + " " + past(1) + " or a " + base(2) + " " + past(3) +
                " " + base(0) + ".";
      f = disj(at(1, cn(0)), exists('x', conj(at(2, x), at2(3, x, cn(0)))));
      break;
    case SchemaType::ConditionalIfThen:
      surface = "If " + base(0) + " is a " + base(1) + ", then " + base(2) +
                " isn't a " + base(1) + ".";
      f = implies(at(1, cn(0)), neg(at(1, cn(2))));
      break;
    case SchemaType::BiconditionalJustInCase:
      surface = base(0) + " is " + base(1) + " just in case every " + base(2) +
                " " + past(3) + " " + base(4) + ".";
      f = iff(at(1, cn(0)), forall('x', implies(at(2, x), at2(3, x, cn(4)))));
      break;
    case SchemaType::DomainPartition:
      surface = "Everything is a " + base(0) + ", a " + base(1) + ", or a " +
                base(2) + " (exclusively), and there's at least one of each.";
      f = conj(
          forall('x', conj(disj(disj(at(0, x), at(1, x)), at(2, x)),
                           conj(conj(neg(conj(at(0, x), at(1, x))),
                                     neg(conj(at(0, x), at(2, x)))),
                                neg(conj(at(1, x), at(2, x)))))),
          conj(conj(exists('x', at(0, x)), exists('x', at(1, x))),
               exists('x', at(2, x))));
      break;
    case SchemaType::ConditionalNestedOnlyIf:
      surface = "If " + base(0) + " will " + base(1) + ", then every " + base(2) +
                " is " + base(3) + " only if every " + base(4) + " " + past(5) +
                " " + base(6) + ".";
      f = implies(at(1, cn(0)),
                  implies(forall('x', implies(at(2, x), at(3, x))),
                          forall('x', implies(at(4, x), at2(5, x, cn(6))))));
      break;
  }

  SentenceRecord rec;
  rec.surface = sentence_case(surface);
  rec.formula = f;
  rec.hash = ast_hash(f);
  rec.type = type;
  rec.language = lex.language();

  Signature used = signature_of({f});
  for (char s : used.constants) rec.soa[s] = lex.entry(s).gloss;
  for (char s : used.unary) rec.soa[s] = lex.entry(s).gloss;
  for (char s : used.binary) rec.soa[s] = lex.entry(s).gloss;

  // Templates are authored by hand; a malformed one is a programming error,
  // not a data error, so fail loudly rather than return a poisoned record.
  if (!check_wf(f, lex.signature()).ok()) {
    throw std::logic_error(std::string(info.name) + ": template produced an ill-formed formula");
  }
  return rec;
}

}  // namespace fo2
