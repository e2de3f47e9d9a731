#include "doctest.h"
#include "fo2/structure_io.hpp"

using namespace fo2;

namespace {

Signature sig_fga() {
  Signature sig;
  sig.unary = {'F', 'G'};
  sig.constants = {'a'};
  return sig;
}

}  // namespace

TEST_CASE("sectioned text parses and resolves") {
  const char* text =
      "Domain: [0, 1]\n"
      "Constants: \"a\": 1\n"
      "Monadic predicates: \"F\": [0], \"G\": [0, 1]\n"
      "Binary predicates:\n";
  RawStructure raw = parse_structure_text(text);
  CHECK(raw.saw_section_header);
  REQUIRE(raw.domain.has_value());
  CHECK(*raw.domain == std::vector<int>{0, 1});

  ResolveOutcome out = resolve_structure(raw, sig_fga(), {0, 1, 2});
  REQUIRE(out.status == ResolveOutcome::Status::Ok);
  CHECK(out.structure.domain == std::vector<int>{0, 1});
  CHECK(out.structure.constants.at('a') == 1);
  CHECK(out.structure.unary.at('F') == std::set<int>{0});
  CHECK(out.structure.unary.at('G') == std::set<int>{0, 1});
}

TEST_CASE("compact braces text parses and resolves") {
  RawStructure raw = parse_structure_text("F={0}, G={0,1}, a=1");
  ResolveOutcome out = resolve_structure(raw, sig_fga(), {0, 1});
  REQUIRE(out.status == ResolveOutcome::Status::Ok);
  CHECK(out.structure.unary.at('F') == std::set<int>{0});
  CHECK(out.structure.unary.at('G') == std::set<int>{0, 1});
  CHECK(out.structure.constants.at('a') == 1);
  // No declared domain, so the fallback applies.
  CHECK(out.structure.domain == std::vector<int>{0, 1});
}

TEST_CASE("section entries spread over lines with bullets and curly quotes") {
  const char* text =
      "Domain: [0, 1, 2]\n"
      "Constants:\n"
      "- “a”: 0\n"
      "Monadic predicates:\n"
      "* F: [0, 2]\n"
      "* G: []\n"
      "Binary predicates:\n"
      "- R: [[0, 1], [2, 0]]\n";
  Signature sig;
  sig.unary = {'F', 'G'};
  sig.binary = {'R'};
  sig.constants = {'a'};
  ResolveOutcome out = resolve_structure(parse_structure_text(text), sig, {0, 1, 2});
  REQUIRE(out.status == ResolveOutcome::Status::Ok);
  CHECK(out.structure.unary.at('F') == std::set<int>{0, 2});
  CHECK(out.structure.unary.at('G').empty());
  CHECK(out.structure.binary.at('R') ==
        std::set<std::pair<int, int>>{{0, 1}, {2, 0}});
}

TEST_CASE("the last occurrence of a symbol wins") {
  RawStructure raw = parse_structure_text("F={0}, G={0}\nF={1}, a=0");
  ResolveOutcome out = resolve_structure(raw, sig_fga(), {0, 1});
  REQUIRE(out.status == ResolveOutcome::Status::Ok);
  CHECK(out.structure.unary.at('F') == std::set<int>{1});
}

TEST_CASE("a declared domain is taken verbatim even when it differs from the fallback") {
  RawStructure raw = parse_structure_text("Domain: [0, 1]\nF={0}, G={0}, a=0");
  ResolveOutcome out = resolve_structure(raw, sig_fga(), {0, 1, 2});
  REQUIRE(out.status == ResolveOutcome::Status::Ok);
  CHECK(out.structure.domain == std::vector<int>{0, 1});
}

TEST_CASE("missing interpretation names the symbol") {
  RawStructure raw = parse_structure_text("F={0}, a=0");
  ResolveOutcome out = resolve_structure(raw, sig_fga(), {0, 1});
  REQUIRE(out.status == ResolveOutcome::Status::Missing);
  CHECK(out.symbol == 'G');
  CHECK(out.message == "Missing interpretation for: G");
}

TEST_CASE("binary predicate with a flat list is malformed") {
  Signature sig;
  sig.binary = {'R'};
  RawStructure raw = parse_structure_text("R: [0, 1]");
  ResolveOutcome out = resolve_structure(raw, sig, {0, 1});
  REQUIRE(out.status == ResolveOutcome::Status::Malformed);
  CHECK(out.symbol == 'R');
  CHECK(out.message.find("Binary predicate 'R' must be a list of pairs") == 0);
}

TEST_CASE("monadic predicate with pairs is malformed") {
  Signature sig;
  sig.unary = {'F'};
  ResolveOutcome out =
      resolve_structure(parse_structure_text("F: [[0, 1]]"), sig, {0, 1});
  REQUIRE(out.status == ResolveOutcome::Status::Malformed);
  CHECK(out.symbol == 'F');
}

TEST_CASE("constant bound to a list is malformed") {
  Signature sig;
  sig.constants = {'a'};
  ResolveOutcome out =
      resolve_structure(parse_structure_text("a: [0, 1]"), sig, {0, 1});
  REQUIRE(out.status == ResolveOutcome::Status::Malformed);
  CHECK(out.symbol == 'a');
}

TEST_CASE("out-of-domain values are domain violations") {
  Signature sig;
  sig.unary = {'F'};
  ResolveOutcome out = resolve_structure(parse_structure_text("F: [0, 5]"), sig, {0, 1});
  CHECK(out.status == ResolveOutcome::Status::DomainViolation);

  Signature sigc;
  sigc.constants = {'a'};
  out = resolve_structure(parse_structure_text("a: 9"), sigc, {0, 1, 2});
  CHECK(out.status == ResolveOutcome::Status::DomainViolation);
}

TEST_CASE("symbols the argument never mentions are ignored however malformed") {
  Signature sig;
  sig.unary = {'F'};
  RawStructure raw = parse_structure_text("F: [0]\nQ: [[[[0]]]]\nZ: what");
  ResolveOutcome out = resolve_structure(raw, sig, {0, 1});
  CHECK(out.status == ResolveOutcome::Status::Ok);
}

TEST_CASE("empty text resolves to missing, not a crash") {
  RawStructure raw = parse_structure_text("");
  CHECK_FALSE(raw.any_content());
  ResolveOutcome out = resolve_structure(raw, sig_fga(), {0, 1});
  CHECK(out.status == ResolveOutcome::Status::Missing);
}

TEST_CASE("required-format rendering is sectioned and stable") {
  FiniteStructure m;
  m.domain = {0, 1, 2};
  m.constants['a'] = 0;
  m.unary['F'] = {0, 2};
  m.binary['R'] = {{0, 1}, {2, 0}};
  std::string text = to_required_format(m);
  CHECK(text ==
        "Domain: [0, 1, 2]\n"
        "Constants: \"a\": 0\n"
        "Monadic predicates: \"F\": [0, 2]\n"
        "Binary predicates: \"R\": [[0, 1], [2, 0]]\n");

  // Rendering feeds back through the parser to the same structure.
  Signature sig;
  sig.unary = {'F'};
  sig.binary = {'R'};
  sig.constants = {'a'};
  ResolveOutcome out = resolve_structure(parse_structure_text(text), sig, {9});
  REQUIRE(out.status == ResolveOutcome::Status::Ok);
  CHECK(out.structure.domain == m.domain);
  CHECK(out.structure.constants == m.constants);
  CHECK(out.structure.unary == m.unary);
  CHECK(out.structure.binary == m.binary);
}
