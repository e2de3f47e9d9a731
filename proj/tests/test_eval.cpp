#include <map>

#include "doctest.h"
#include "fo2/parse.hpp"
#include "fo2/structure.hpp"
#include "fo2/util.hpp"

using namespace fo2;

namespace {

FiniteStructure example_structure() {
  // Domain {0,1}, F = {0}, G = {0,1}, a = 1.
  FiniteStructure m;
  m.domain = {0, 1};
  m.constants['a'] = 1;
  m.unary['F'] = {0};
  m.unary['G'] = {0, 1};
  return m;
}

// Independent game-tree evaluation used to cross-check eval: quantifiers are
// expanded into explicit move lists and folded, atoms are looked up directly.
bool game_eval(const Formula& f, const FiniteStructure& m, std::map<char, int> env) {
  switch (f->kind) {
    case Kind::Atom: {
      std::vector<int> elems;
      for (const Term& t : f->args) {
        if (t.is_variable())
          elems.push_back(env.at(t.sym));
        else
          elems.push_back(m.constants.at(t.sym));
      }
      if (elems.size() == 1) return m.unary.at(f->pred).count(elems[0]) > 0;
      return m.binary.at(f->pred).count({elems[0], elems[1]}) > 0;
    }
    case Kind::Not:
      return !game_eval(f->left, m, env);
    case Kind::And:
      return game_eval(f->left, m, env) && game_eval(f->right, m, env);
    case Kind::Or:
      return game_eval(f->left, m, env) || game_eval(f->right, m, env);
    case Kind::Implies:
      return !game_eval(f->left, m, env) || game_eval(f->right, m, env);
    case Kind::Iff:
      return game_eval(f->left, m, env) == game_eval(f->right, m, env);
    case Kind::ForAll:
    case Kind::Exists: {
      std::vector<bool> moves;
      for (int e : m.domain) {
        std::map<char, int> next = env;
        next[f->bound] = e;
        moves.push_back(game_eval(f->left, m, next));
      }
      if (f->kind == Kind::ForAll) {
        for (bool b : moves)
          if (!b) return false;
        return true;
      }
      for (bool b : moves)
        if (b) return true;
      return false;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("evaluation over the two-element example structure") {
  FiniteStructure m = example_structure();
  CHECK_FALSE(eval_closed(parse("Fa", Dialect::Strict), m));
  CHECK(eval_closed(parse("∀x(Fx → Gx)", Dialect::Strict), m));
  CHECK(eval_closed(parse("Ga", Dialect::Strict), m));
}

TEST_CASE("evaluation of a mutual-relation existential") {
  FiniteStructure m;
  m.domain = {0, 1};
  m.unary['N'] = {0};
  m.unary['M'] = {1};
  m.binary['R'] = {{0, 1}, {1, 0}};
  CHECK(eval_closed(parse("∃x∃y((Nx ∧ My) ∧ (Rxy ∧ Ryx))", Dialect::Strict), m));
  m.binary['R'] = {{0, 1}};
  CHECK_FALSE(eval_closed(parse("∃x∃y((Nx ∧ My) ∧ (Rxy ∧ Ryx))", Dialect::Strict), m));
}

TEST_CASE("free variables read the assignment") {
  FiniteStructure m = example_structure();
  Assignment a;
  a.x = 0;
  CHECK(eval(parse("Fx", Dialect::Strict), m, a));
  a.x = 1;
  CHECK_FALSE(eval(parse("Fx", Dialect::Strict), m, a));
}

TEST_CASE("missing interpretations are reported by symbol") {
  FiniteStructure m = example_structure();
  try {
    eval_closed(parse("∃x Hx ∨ ∀x Hx", Dialect::Strict), m);
    FAIL("expected MissingInterpretation");
  } catch (const MissingInterpretation& e) {
    CHECK(e.symbol == 'H');
    CHECK(std::string(e.what()) == "Missing interpretation for: H");
  }
  CHECK_THROWS_AS(eval_closed(parse("Fb", Dialect::Strict), m), MissingInterpretation);
}

TEST_CASE("predicate interpreted at the wrong arity is an extension error") {
  FiniteStructure m = example_structure();
  CHECK_THROWS_AS(eval_closed(parse("∃x∃y Fxy", Dialect::Strict), m),
                  ExtensionArityError);
}

TEST_CASE("countermodel check accepts the example and attributes failures") {
  FiniteStructure m = example_structure();
  std::vector<Formula> premises = {parse("∀x(Fx → Gx)", Dialect::Strict),
                                   parse("Ga", Dialect::Strict)};
  Formula conclusion = parse("Fa", Dialect::Strict);

  CHECK(check_countermodel(premises, conclusion, m).accepted);

  SUBCASE("conclusion made true") {
    m.constants['a'] = 0;
    CountermodelVerdict v = check_countermodel(premises, conclusion, m);
    CHECK_FALSE(v.accepted);
    CHECK(v.conclusion_true);
    CHECK(v.failing_premises.empty());
  }
  SUBCASE("second premise made false") {
    m.unary['G'] = {0};
    CountermodelVerdict v = check_countermodel(premises, conclusion, m);
    CHECK_FALSE(v.accepted);
    CHECK(v.failing_premises == std::vector<std::size_t>{1});
  }
}

TEST_CASE("structure integrity detects out-of-domain values") {
  FiniteStructure m = example_structure();
  CHECK(m.integrity_problems().empty());
  m.unary['F'].insert(7);
  CHECK_FALSE(m.integrity_problems().empty());
}

TEST_CASE("evaluation agrees with independent game-tree evaluation") {
  // A randomized sweep of closed formulas over a fixed signature.
  std::vector<const char*> texts = {
      "∀x(Fx → Gx)",
      "∃x(Fx ∧ ¬Gx)",
      "∀x(Fx → ∃y Rxy)",
      "∃x∃y(Rxy ∧ Ryx)",
      "∀x∀y(Rxy → Ryx)",
      "∀x(Fx → ∀y(Gy → Rxy))",
      "Fa ∨ ¬Ga",
      "∃x(Fx ∧ ∃y((Gy ∧ Rxy) ∧ ∃x(Fx ∧ Ryx)))",
      "∀x((Fx ∨ Gx) ↔ ¬∃y Ryx)",
  };
  SplitMix64 rng(20260822);
  for (int trial = 0; trial < 60; ++trial) {
    FiniteStructure m;
    int n = 1 + static_cast<int>(rng.below(3));
    for (int e = 0; e < n; ++e) m.domain.push_back(e);
    m.constants['a'] = static_cast<int>(rng.below(n));
    for (char p : {'F', 'G'}) {
      std::set<int> ext;
      for (int e = 0; e < n; ++e)
        if (rng.below(2)) ext.insert(e);
      m.unary[p] = ext;
    }
    std::set<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rng.below(2)) rel.insert({i, j});
    m.binary['R'] = rel;

    for (const char* text : texts) {
      Formula f = parse(text, Dialect::Strict);
      CAPTURE(text);
      CHECK(eval_closed(f, m) == game_eval(f, m, {}));
    }
  }
}

TEST_CASE("countermodel acceptance is invariant under domain relabeling") {
  std::vector<Formula> premises = {parse("∀x(Fx → Gx)", Dialect::Strict),
                                   parse("Ga", Dialect::Strict)};
  Formula conclusion = parse("Fa", Dialect::Strict);
  FiniteStructure m;
  m.domain = {0, 1, 2};
  m.constants['a'] = 1;
  m.unary['F'] = {0};
  m.unary['G'] = {0, 1};
  REQUIRE(check_countermodel(premises, conclusion, m).accepted);

  std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& perm : perms) {
    FiniteStructure renamed = permute_structure(m, perm);
    CAPTURE(perm[0]);
    CHECK(check_countermodel(premises, conclusion, renamed).accepted);
  }
}
