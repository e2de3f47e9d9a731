#include "doctest.h"
#include "fo2/enumerate.hpp"
#include "fo2/parse.hpp"
#include "fo2/smtlib.hpp"
#include "fo2/solver.hpp"
#include "fo2/util.hpp"

using namespace fo2;

namespace {

Formula f(const char* text) { return parse(text, Dialect::Strict); }

SolverSession& shared_session() {
  static SolverSession session;
  return session;
}

}  // namespace

TEST_CASE("script emission is complete and deterministic") {
  Signature sig;
  sig.unary = {'F'};
  sig.constants = {'a'};
  std::string script = emit_smtlib({f("Fa")}, sig);
  CHECK(script.find("(declare-sort U 0)") != std::string::npos);
  CHECK(script.find("(declare-fun F (U) Bool)") != std::string::npos);
  CHECK(script.find("(declare-const a U)") != std::string::npos);
  CHECK(script.find("(assert (F a))") != std::string::npos);
  CHECK(script.find("(check-sat)") != std::string::npos);
  CHECK(script == emit_smtlib({f("Fa")}, sig));

  std::string empty = emit_smtlib({}, sig);
  CHECK(empty.find("(assert") == std::string::npos);
  CHECK(empty.find("(check-sat)") != std::string::npos);
}

TEST_CASE("bounded scripts pin the carrier and probe every atom") {
  Signature sig;
  sig.unary = {'F'};
  sig.binary = {'R'};
  sig.constants = {'a'};
  std::string script = emit_smtlib({f("Fa")}, sig, 2, true);
  CHECK(script.find("(declare-const u0 U)") != std::string::npos);
  CHECK(script.find("(declare-const u1 U)") != std::string::npos);
  CHECK(script.find("(assert (distinct u0 u1))") != std::string::npos);
  CHECK(script.find("(assert (forall ((x U)) (or (= x u0) (= x u1))))") !=
        std::string::npos);
  CHECK(script.find("(get-value ((= a u0) (= a u1) (F u0) (F u1) (R u0 u0) (R u0 u1) "
                    "(R u1 u0) (R u1 u1)))") != std::string::npos);

  // A one-element carrier needs no distinctness and a plain closure axiom.
  std::string tiny = emit_smtlib({}, sig, 1);
  CHECK(tiny.find("distinct") == std::string::npos);
  CHECK(tiny.find("(assert (forall ((x U)) (= x u0)))") != std::string::npos);
}

TEST_CASE("a contradiction is unsat") {
  Signature sig;
  sig.unary = {'F'};
  sig.constants = {'a'};
  SolverVerdict v = shared_session().check_sat({f("Fa"), f("¬Fa")}, sig);
  CHECK(v.status == SatStatus::Unsat);
  CHECK_FALSE(v.model.has_value());
  CHECK_FALSE(v.backend.empty());
}

TEST_CASE("a bare existential is sat with a one-element extracted model") {
  Signature sig;
  sig.unary = {'F'};
  SolverVerdict v = shared_session().check_sat({f("∃x Fx")}, sig);
  REQUIRE(v.status == SatStatus::Sat);
  REQUIRE(v.model.has_value());
  CHECK(v.model->domain == std::vector<int>{0});
  CHECK(v.model->unary.at('F') == std::set<int>{0});
}

TEST_CASE("modus ponens entails, with no countermodel") {
  EntailmentVerdict v = shared_session().entails({f("∀x(Fx → Gx)"), f("Fa")}, f("Ga"));
  CHECK(v.answer == Entailed::Yes);
  CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("the converse direction does not entail and yields a checked witness") {
  std::vector<Formula> premises = {f("∀x(Fx → Gx)"), f("Ga")};
  EntailmentVerdict v = shared_session().entails(premises, f("Fa"));
  REQUIRE(v.answer == Entailed::No);
  REQUIRE(v.witness.has_value());
  CHECK(check_countermodel(premises, f("Fa"), *v.witness).accepted);
}

TEST_CASE("a theorem is entailed by nothing at all") {
  EntailmentVerdict v = shared_session().entails({}, f("∀x(Fx ∨ ¬Fx)"));
  CHECK(v.answer == Entailed::Yes);
}

TEST_CASE("equivalence by quantifier duality; inequivalence of the converse") {
  Signature sig;
  sig.unary = {'F', 'G'};
  SolverSession& s = shared_session();
  CHECK(s.equivalent(f("∀x(Fx → Gx)"), f("¬∃x(Fx ∧ ¬Gx)"), sig) == Entailed::Yes);
  CHECK(s.equivalent(f("∀x(Fx → Gx)"), f("∀x(Gx → Fx)"), sig) == Entailed::No);
  CHECK(s.equivalent(f("∀x(Fx → Gx)"), f("∀x(Fx → Gx)"), sig) == Entailed::Yes);
}

TEST_CASE("two-variable rebinding formulas go through the SMT path intact") {
  // The solver sees nested quantifiers reusing x; scoping must survive the
  // translation.
  std::vector<Formula> fs = {f("∃x(Fx ∧ ∃y((Gy ∧ Rxy) ∧ ∃x(Fx ∧ Ryx)))")};
  Signature sig = signature_of(fs);
  SolverVerdict v = shared_session().check_sat(fs, sig);
  REQUIRE(v.status == SatStatus::Sat);
  REQUIRE(v.model.has_value());
  CHECK(eval_closed(fs[0], *v.model));
}

TEST_CASE("verdicts agree with the enumeration oracle on random small formula sets") {
  // Signatures stay inside the enumeration budget at size 3.
  std::vector<const char*> pool = {
      "∀x(Fx → Gx)",     "∃x(Fx ∧ ¬Gx)",      "∀x(Fx → ∃y Rxy)",
      "∃x∃y(Rxy ∧ Ryx)", "¬∃x Fx",            "∀x∀y(Rxy → Ryx)",
      "∃x(Gx ∧ ∀y ¬Rxy)", "∀x(Gx → ∀y(Fy → Rxy))", "Fa ∧ ¬Ga",
      "∃x(Fx ∧ Rxa)",    "∀x Rxx",            "¬∃x Rxa",
  };
  Signature sig;
  sig.unary = {'F', 'G'};
  sig.binary = {'R'};
  sig.constants = {'a'};

  SplitMix64 rng(414243);
  SolverSession& session = shared_session();
  int sat_seen = 0, unsat_seen = 0;
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Formula> fs;
    int k = 2 + static_cast<int>(rng.below(3));
    for (int i = 0; i < k; ++i) fs.push_back(f(pool[rng.below(pool.size())]));

    SolverVerdict v = session.check_sat(fs, sig);
    bool small_model = first_model(fs, sig, 3).has_value();
    CAPTURE(trial);
    if (small_model) {
      ++sat_seen;
      CHECK(v.status == SatStatus::Sat);
    }
    if (v.status == SatStatus::Unsat) {
      ++unsat_seen;
      CHECK_FALSE(small_model);
    }
  }
  // The sweep must exercise both directions to mean anything.
  CHECK(sat_seen > 0);
  CHECK(unsat_seen > 0);
}

TEST_CASE("entailment is preserved under consistent premise growth") {
  SolverSession& s = shared_session();
  std::vector<Formula> premises = {f("∀x(Fx → Gx)"), f("Fa")};
  REQUIRE(s.entails(premises, f("Ga")).answer == Entailed::Yes);
  for (const char* extra : {"∃x Rxa", "∀x(Gx → ∃y Rxy)", "¬Fb"}) {
    std::vector<Formula> grown = premises;
    grown.push_back(f(extra));
    Signature sig = signature_of(grown);
    REQUIRE(s.check_sat(grown, sig).status == SatStatus::Sat);
    CHECK(s.entails(grown, f("Ga")).answer != Entailed::No);
  }
}

TEST_CASE("a timed-out query reports unknown and the session recovers") {
  SolverConfig config;
  config.timeout_ms = 1;
  SolverSession session(config);
  Signature sig;
  sig.unary = {'F', 'G'};
  std::vector<Formula> hard = {f("∀x(Fx → Gx)"), f("∃x Fx")};
  SolverVerdict v = session.check_sat(hard, sig);
  CHECK(v.status == SatStatus::Unknown);

  // Same session, sane deadline: the child is respawned transparently.
  session.set_timeout_ms(30000);
  CHECK(session.check_sat(hard, sig).status == SatStatus::Sat);
}

TEST_CASE("raw scripts get one response unit per command") {
  std::vector<std::string> r = shared_session().run_script(
      "(reset)\n(declare-sort U 0)\n(declare-fun F (U) Bool)\n"
      "(assert (exists ((x U)) (F x)))\n(check-sat)\n");
  REQUIRE(r.size() == 5);
  CHECK(r[0] == "success");
  CHECK(r[4] == "sat");
}
