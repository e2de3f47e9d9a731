#include "doctest.h"
#include "fo2/parse.hpp"
#include "fo2/print.hpp"

using namespace fo2;

namespace {

Formula fx() { return atom('F', var('x')); }
Formula gx() { return atom('G', var('x')); }

}  // namespace

TEST_CASE("strict parse of a universal conditional") {
  Formula f = parse("∀x(Fx → Gx)", Dialect::Strict);
  CHECK(equal(f, forall('x', implies(fx(), gx()))));
}

TEST_CASE("strict parse of a nested two-variable existential") {
  Formula got = parse("∃x∃y((Nx ∧ My) ∧ (Rxy ∧ Ryx))", Dialect::Strict);
  Formula want = exists(
      'x', exists('y', conj(conj(atom('N', var('x')), atom('M', var('y'))),
                            conj(atom('R', var('x'), var('y')),
                                 atom('R', var('y'), var('x'))))));
  CHECK(equal(got, want));
}

TEST_CASE("ascii spellings are accepted in strict mode too") {
  CHECK(equal(parse("Ax(Fx -> Gx)", Dialect::Strict),
              forall('x', implies(fx(), gx()))));
  CHECK(equal(parse("Ex Fx", Dialect::Strict), exists('x', fx())));
  CHECK(equal(parse("~Fx & Gx", Dialect::Strict), conj(neg(fx()), gx())));
  CHECK(equal(parse("Fx | Gx", Dialect::Strict), disj(fx(), gx())));
  CHECK(equal(parse("Fx <-> Gx", Dialect::Strict), iff(fx(), gx())));
}

TEST_CASE("liberal notation variants normalize to one AST") {
  Formula f = parse("~P(c,c) & R(x,y)", Dialect::Liberal);
  Formula want = conj(neg(atom('P', constant('c'), constant('c'))),
                      atom('R', var('x'), var('y')));
  CHECK(equal(f, want));

  CHECK(equal(parse("Fx ⊃ Gx", Dialect::Liberal), implies(fx(), gx())));
  CHECK(equal(parse("G(a)", Dialect::Liberal), atom('G', constant('a'))));
}

TEST_CASE("precedence: negation, conjunction, disjunction, conditional, biconditional") {
  Formula f = parse("~Fx & Gx | Hx -> Ix <-> Jx", Dialect::Liberal);
  Formula want = iff(implies(disj(conj(neg(fx()), gx()), atom('H', var('x'))),
                             atom('I', var('x'))),
                     atom('J', var('x')));
  CHECK(equal(f, want));
}

TEST_CASE("conjunction and disjunction associate to the left") {
  CHECK(equal(parse("Fx & Gx & Hx", Dialect::Strict),
              conj(conj(fx(), gx()), atom('H', var('x')))));
  CHECK(equal(parse("Fx | Gx | Hx", Dialect::Strict),
              disj(disj(fx(), gx()), atom('H', var('x')))));
}

TEST_CASE("conditional chains: rejected strict, right-associated liberal") {
  CHECK_THROWS_AS(parse("Fx -> Gx -> Hx", Dialect::Strict), ParseError);
  CHECK(equal(parse("Fx -> Gx -> Hx", Dialect::Liberal),
              implies(fx(), implies(gx(), atom('H', var('x'))))));
  CHECK_THROWS_AS(parse("Fx <-> Gx <-> Hx", Dialect::Strict), ParseError);
  CHECK(equal(parse("Fx <-> Gx <-> Hx", Dialect::Liberal),
              iff(fx(), iff(gx(), atom('H', var('x'))))));
}

TEST_CASE("quantifier scope is the smallest following formula") {
  // ∀x Fx ∧ Gx parses as (∀x Fx) ∧ Gx, like negation would.
  Formula f = parse("∀x Fx ∧ Gx", Dialect::Strict);
  CHECK(equal(f, conj(forall('x', fx()), gx())));
}

TEST_CASE("third variable raises a fragment violation") {
  CHECK_THROWS_AS(parse("∀x∀y∀z Rxy", Dialect::Strict), FragmentError);
  CHECK_THROWS_AS(parse("Az(Fz -> Gz)", Dialect::Liberal), FragmentError);
}

TEST_CASE("equality raises a fragment violation") {
  CHECK_THROWS_AS(parse("∀x(x = x)", Dialect::Strict), FragmentError);
  CHECK_THROWS_AS(parse("Fa = Ga", Dialect::Liberal), FragmentError);
}

TEST_CASE("malformed input raises a parse error with a position") {
  try {
    parse("Fx &", Dialect::Strict);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
  CHECK_THROWS_AS(parse("(Fx -> Gx", Dialect::Strict), ParseError);
  CHECK_THROWS_AS(parse("R(x,y,x)", Dialect::Liberal), ParseError);
  CHECK_THROWS_AS(parse("Fx Gx", Dialect::Strict), ParseError);
}

TEST_CASE("liberal mode repairs a single missing parenthesis") {
  CHECK(equal(parse("(Fx -> Gx", Dialect::Liberal), implies(fx(), gx())));
  CHECK(equal(parse("Fx -> Gx)", Dialect::Liberal), implies(fx(), gx())));
  // Two insertions would be needed; repair refuses to guess that far.
  CHECK_THROWS_AS(parse("((Fx -> Gx", Dialect::Liberal), ParseError);
}

TEST_CASE("redundant parentheses are transparent") {
  CHECK(equal(parse("((Fx))", Dialect::Liberal), fx()));
  CHECK(equal(parse("(∀x(Fx → Gx))", Dialect::Strict),
              forall('x', implies(fx(), gx()))));
}

TEST_CASE("round-trip: print then strict parse is the identity") {
  std::vector<Formula> cases = {
      forall('x', implies(fx(), gx())),
      exists('x', exists('y', conj(conj(atom('N', var('x')), atom('M', var('y'))),
                                   conj(atom('R', var('x'), var('y')),
                                        atom('R', var('y'), var('x')))))),
      neg(exists('x', conj(fx(), neg(gx())))),
      forall('x', implies(fx(), forall('y', implies(gx(), atom('R', var('x'), var('y')))))),
      iff(atom('F', constant('a')), disj(gx(), atom('H', constant('b')))),
  };
  for (const Formula& f : cases) {
    CAPTURE(print(f, PrintStyle::Unicode));
    CHECK(equal(parse(print(f, PrintStyle::Unicode), Dialect::Strict), f));
    CHECK(equal(parse(print(f, PrintStyle::Ascii), Dialect::Strict), f));
  }
}

TEST_CASE("parse-print normalization is idempotent") {
  for (const char* text : {"((Fx))", "~(Fx)", "F(a)", "∀x((Fx → Gx))"}) {
    Formula f = parse(text, Dialect::Liberal);
    std::string printed = print(f, PrintStyle::Unicode);
    CHECK(equal(parse(printed, Dialect::Strict), f));
    CHECK(print(parse(printed, Dialect::Strict), PrintStyle::Unicode) == printed);
  }
}
