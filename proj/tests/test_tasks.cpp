#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fo2/enumerate.hpp"
#include "fo2/parse.hpp"
#include "fo2/print.hpp"
#include "fo2/structure_io.hpp"
#include "fo2/tasks.hpp"

using namespace fo2;

namespace {

SolverSession& shared_session() {
  static SolverSession session;
  return session;
}

Formula f(const char* text) { return parse(text, Dialect::Strict); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// A grading fixture around the classic universal-affirmative pair; two
// predicates and one constant is below the shipped budget, which grading
// does not care about.
TaskItem sym_task() {
  TaskItem t;
  t.id = "t-sym-test";
  t.kind = TaskKind::Symbolization;
  t.language = Language::English;
  t.template_id = "symbolization-v1";
  t.symbolization = SymbolizationPayload{
      "All monkeys are happy.",
      {{'F', "[1] is a monkey"}, {'G', "[1] is happy"}},
      f("Ax(Fx -> Gx)")};
  return t;
}

// Premises "all monkeys are happy" and "Hazel is happy" against the
// undistributed conclusion "Hazel is a monkey".
TaskItem cm_task() {
  FiniteStructure seed;
  seed.domain = {0, 1};
  seed.unary['F'] = {0};
  seed.unary['G'] = {0, 1};
  seed.constants['a'] = 1;
  TaskItem t;
  t.id = "t-cm-test";
  t.kind = TaskKind::Countermodel;
  t.language = Language::Neutral;
  t.template_id = "countermodel-v1";
  t.countermodel = CountermodelPayload{
      {f("Ax(Fx -> Gx)"), f("Ga")}, f("Fa"), pad_structure(seed, 3)};
  return t;
}

TaskItem val_task(std::set<int> gold) {
  TaskItem t;
  t.id = "t-val-test";
  t.kind = TaskKind::Validity;
  t.language = Language::English;
  t.template_id = "validity-v1";
  ValidityPayload p;
  p.premises = {"All monkeys are happy.", "Hazel is a monkey."};
  p.premise_formulas = {f("Ax(Fx -> Gx)"), f("Fa")};
  for (int i = 1; i <= 6; ++i) {
    p.candidates.push_back("Candidate number " + std::to_string(i) + ".");
    p.candidate_formulas.push_back(f(i % 2 == 0 ? "Ga" : "Fa"));
  }
  p.gold = std::move(gold);
  t.validity = std::move(p);
  return t;
}

}  // namespace

TEST_CASE("built-in prompt templates match the shipped files") {
  const std::string dir = std::string(FO2_SOURCE_DIR) + "/data/prompts/";
  CHECK(prompt_template("symbolization-v1") == slurp(dir + "symbolization.txt"));
  CHECK(prompt_template("validity-v1") == slurp(dir + "validity.txt"));
  CHECK(prompt_template("countermodel-v1") == slurp(dir + "countermodel.txt"));
  CHECK_THROWS_AS(prompt_template("no-such-template"), std::invalid_argument);
}

TEST_CASE("structure padding clones the last element faithfully") {
  FiniteStructure m;
  m.domain = {0, 1};
  m.unary['F'] = {0};
  m.unary['G'] = {0, 1};
  m.binary['R'] = {{0, 1}, {1, 1}};
  m.constants['a'] = 1;

  FiniteStructure grown = pad_structure(m, 3);
  CHECK(grown.domain == std::vector<int>{0, 1, 2});
  CHECK(grown.unary['F'] == std::set<int>{0});
  CHECK(grown.unary['G'] == std::set<int>{0, 1, 2});
  CHECK(grown.binary['R'] ==
        std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}});
  CHECK(grown.constants['a'] == 1);

  SUBCASE("truth values survive the padding") {
    for (const char* text :
         {"Ax(Fx -> Gx)", "Ex(Gx & ~Fx)", "AxEy(Rxy)", "ExAy(Rxy)", "Raa", "Fa",
          "Ax(Rxa -> Ey(Ryx & Gy))", "~Ex(Fx & Rxx)"}) {
      Formula formula = f(text);
      CHECK_MESSAGE(eval_closed(formula, m) == eval_closed(formula, grown), text);
    }
  }

  SUBCASE("a full-size structure is only renamed") {
    FiniteStructure sparse;
    sparse.domain = {5, 7, 9};
    sparse.unary['F'] = {7};
    sparse.constants['a'] = 9;
    FiniteStructure renamed = pad_structure(sparse, 3);
    CHECK(renamed.domain == std::vector<int>{0, 1, 2});
    CHECK(renamed.unary['F'] == std::set<int>{1});
    CHECK(renamed.constants['a'] == 2);
  }

  SUBCASE("shrinking is refused") {
    FiniteStructure wide;
    wide.domain = {0, 1, 2, 3};
    CHECK_THROWS_AS(pad_structure(wide, 3), std::invalid_argument);
  }
}

TEST_CASE("symbolization grading walks parse, match, key, and equivalence") {
  TaskItem task = sym_task();

  SUBCASE("the gold reprint is an exact match") {
    Verdict v = grade_symbolization(task, "Ax(Fx -> Gx)", shared_session());
    CHECK(v.correct);
    CHECK(v.category == "correct");
    CHECK(v.detail == "exact match");
  }

  SUBCASE("cosmetic variants are exact matches after parsing") {
    for (const char* variant :
         {"∀x(Fx → Gx)", "∀x(F(x) ⊃ G(x))", "Ax(Fx ⊃ Gx)", "  ∀x ( Fx → Gx )  "}) {
      Verdict v = grade_symbolization(task, variant, shared_session());
      CHECK_MESSAGE(v.correct, variant);
      CHECK(v.detail == "exact match");
    }
  }

  SUBCASE("a contraposed rewrite is correct by equivalence") {
    Verdict v = grade_symbolization(task, "~Ex(Fx & ~Gx)", shared_session());
    CHECK(v.correct);
    CHECK(v.category == "correct");
    CHECK(v.detail == "equivalent to the gold formula");
  }

  SUBCASE("the converse is not logically equivalent") {
    Verdict v = grade_symbolization(task, "Ax(Gx -> Fx)", shared_session());
    CHECK_FALSE(v.correct);
    CHECK(v.category == "Not logically equivalent");

    // The enumeration oracle confirms the verdict: some structure separates
    // the two formulas.
    Signature sig;
    sig.unary = {'F', 'G'};
    CHECK(first_model({neg(iff(f("Ax(Fx -> Gx)"), f("Ax(Gx -> Fx)")))}, sig, 2)
              .has_value());
  }

  SUBCASE("a truncated formula fails to parse") {
    Verdict v = grade_symbolization(task, "∀x(Fx →", shared_session());
    CHECK_FALSE(v.correct);
    CHECK(v.category == "Failed to parse");
  }

  SUBCASE("symbols outside the key are flagged") {
    Verdict v = grade_symbolization(task, "Ax(Fx -> Hx)", shared_session());
    CHECK_FALSE(v.correct);
    CHECK(v.category == "unknown symbol");

    Verdict constant = grade_symbolization(task, "Fa", shared_session());
    CHECK(constant.category == "unknown symbol");
  }

  SUBCASE("arity abuse outranks the open variable it drags in") {
    Verdict v = grade_symbolization(task, "Ax(Fxy -> Gx)", shared_session());
    CHECK_FALSE(v.correct);
    CHECK(v.category == "arity mismatch");
  }

  SUBCASE("an open variable is flagged") {
    Verdict v = grade_symbolization(task, "Fx", shared_session());
    CHECK_FALSE(v.correct);
    CHECK(v.category == "unbound variable");
  }

  SUBCASE("a dead backend yields ungraded, not wrong") {
    SolverConfig config;
    config.timeout_ms = 0;
    SolverSession hopeless(config);
    Verdict v = grade_symbolization(task, "~Ex(Fx & ~Gx)", hopeless);
    CHECK_FALSE(v.correct);
    CHECK(v.category == "ungraded — backend error");
  }
}

TEST_CASE("countermodel grading evaluates the answered structure") {
  TaskItem task = cm_task();

  SUBCASE("the compact classic answer is accepted") {
    Verdict v = grade_countermodel(task, "F={0}, G={0,1}, a=1");
    CHECK(v.correct);
    CHECK(v.category == "accepted");
  }

  SUBCASE("a declared two-element domain is taken verbatim") {
    Verdict v = grade_countermodel(task, "Domain: [0, 1]\nF={0}, G={0,1}, a=1");
    CHECK(v.correct);
    CHECK(v.category == "accepted");
  }

  SUBCASE("the stored reference witness grades accepted") {
    Verdict v = grade_countermodel(task, to_required_format(task.countermodel->witness));
    CHECK(v.correct);
  }

  SUBCASE("a structure that breaks a premise is rejected with evidence") {
    Verdict v = grade_countermodel(task, "F={0}, G={0}, a=1");
    CHECK_FALSE(v.correct);
    CHECK(v.category == "Not a countermodel");
    CHECK(v.detail == "false premises: 2");
  }

  SUBCASE("a structure where the conclusion holds is rejected") {
    Verdict v = grade_countermodel(task, "F={0,1}, G={0,1}, a=1");
    CHECK_FALSE(v.correct);
    CHECK(v.category == "Not a countermodel");
    CHECK(v.detail == "the conclusion is true");
  }

  SUBCASE("omitting a symbol names it") {
    Verdict v = grade_countermodel(task, "F={0}, G={0,1}");
    CHECK_FALSE(v.correct);
    CHECK(v.category == "Missing interpretation for: a");
  }

  SUBCASE("prose with no structure reads as missing interpretations") {
    Verdict v = grade_countermodel(task, "I believe the argument is valid.");
    CHECK_FALSE(v.correct);
    CHECK(v.category.rfind("Missing interpretation for: ", 0) == 0);
  }

  SUBCASE("an out-of-domain element is a domain violation") {
    Verdict v = grade_countermodel(task, "F={5}, G={0,1}, a=1");
    CHECK_FALSE(v.correct);
    CHECK(v.category == "domain violation");
  }

  SUBCASE("a binary extension given as bare numbers is malformed") {
    TaskItem relational;
    relational.id = "t-cm-rel";
    relational.kind = TaskKind::Countermodel;
    relational.language = Language::Neutral;
    relational.template_id = "countermodel-v1";
    FiniteStructure witness;
    witness.domain = {0, 1, 2};
    witness.binary['R'] = {{0, 1}};
    witness.constants['a'] = 2;
    relational.countermodel =
        CountermodelPayload{{f("ExEy(Rxy)")}, f("Raa"), witness};
    REQUIRE(check_task(relational).empty());

    Verdict v = grade_countermodel(
        relational, "Domain: [0, 1, 2]\nConstants: \"a\": 2\nBinary predicates: \"R\": [0, 1]");
    CHECK_FALSE(v.correct);
    CHECK(v.category == "malformed extension");
  }
}

TEST_CASE("validity grading compares index sets") {
  TaskItem task = val_task({3});

  auto grade = [&](const char* text) { return grade_validity(task, text); };

  CHECK(grade("3").correct);
  CHECK(grade("3").category == "correct");
  CHECK(grade("The answer is 3.").correct);
  CHECK(grade("{3}").correct);

  CHECK(grade("2, 3").category == "superset");
  CHECK(grade("2").category == "disjoint/other");
  CHECK(grade("none").category == "empty-vs-nonempty");
  CHECK(grade("None of the statements follow.").category == "empty-vs-nonempty");
  CHECK(grade("42").category == "Failed to parse");
  CHECK(grade("7").category == "Failed to parse");
  CHECK(grade("I am not sure.").category == "Failed to parse");
  CHECK(grade("").category == "Failed to parse");

  SUBCASE("a multi-member gold set grades subsets") {
    TaskItem wide = val_task({2, 3});
    CHECK(grade_validity(wide, "2 and 3").correct);
    CHECK(grade_validity(wide, "3").category == "subset");
    CHECK(grade_validity(wide, "1, 2, 3").category == "superset");
    CHECK(grade_validity(wide, "1, 4").category == "disjoint/other");
  }
}

TEST_CASE("rendering fills the templates deterministically") {
  SUBCASE("symbolization shows the worked example and the key") {
    TaskItem task = sym_task();
    std::string prompt = render(task);
    CHECK(prompt.find("Every linguist admires Charlie.") != std::string::npos);
    CHECK(prompt.find("∀x(Lx → Rxc)") != std::string::npos);
    CHECK(prompt.find("Sentence: All monkeys are happy.") != std::string::npos);
    CHECK(prompt.find("- F: \"[1] is a monkey\"") != std::string::npos);
    CHECK(prompt.find("- G: \"[1] is happy\"") != std::string::npos);
    CHECK(prompt.find("{sentence}") == std::string::npos);
    CHECK(render(task) == prompt);
  }

  SUBCASE("validity numbers all six candidates") {
    TaskItem task = val_task({3});
    std::string prompt = render(task);
    CHECK(prompt.find("Which, if any, of the following statements must be true") !=
          std::string::npos);
    CHECK(prompt.find("All monkeys are happy. Hazel is a monkey.") !=
          std::string::npos);
    for (int i = 1; i <= 6; ++i) {
      CHECK(prompt.find(std::to_string(i) + ". Candidate number " +
                        std::to_string(i) + ".") != std::string::npos);
    }
    CHECK(prompt.find("{candidates}") == std::string::npos);
  }

  SUBCASE("countermodel lists the argument and the required format") {
    TaskItem task = cm_task();
    std::string prompt = render(task);
    CHECK(prompt.find("Required Format") != std::string::npos);
    CHECK(prompt.find("Use the fixed domain [0, 1, 2].") != std::string::npos);
    CHECK(prompt.find("∀x(Fx → Gx),\nGa\n⊨ Fa") != std::string::npos);
  }
}

// Corpus, families, and the assembled set are shared across subcases; doctest
// re-enters the test body per subcase and the solver work is too slow to redo.
struct EvalFixture {
  std::vector<SentencePair> corpus;
  std::vector<ArgumentFamily> families;
  EvalSetShape shape;
  std::vector<TaskItem> tasks;
};

static const EvalFixture& eval_fixture() {
  static const EvalFixture fixture = [] {
    EvalFixture out;
    const Lexicon& en = Lexicon::builtin(Language::English);
    const Lexicon& ca = Lexicon::builtin(Language::Carroll);
    out.corpus = generate_corpus(1200, 77, en, ca);
    out.families.push_back(build_family(out.corpus, en, 4242, 0, shared_session()));
    out.families.push_back(build_family(out.corpus, en, 4242, 1, shared_session()));
    out.shape.symbolization_pairs = 4;
    out.shape.validity_families = 2;
    out.shape.countermodel_families = 2;
    out.tasks = build_eval_set(out.corpus, out.families, 99, out.shape);
    return out;
  }();
  return fixture;
}

TEST_CASE("eval sets assemble with the requested shape and survive audit") {
  const std::vector<SentencePair>& corpus = eval_fixture().corpus;
  const std::vector<ArgumentFamily>& families = eval_fixture().families;
  const EvalSetShape& shape = eval_fixture().shape;
  const std::vector<TaskItem>& tasks = eval_fixture().tasks;
  REQUIRE(tasks.size() == 14);

  SUBCASE("ids, kinds, and languages follow the layout") {
    CHECK(tasks[0].id == "t-sym-0001");
    CHECK(tasks[7].id == "t-sym-0008");
    CHECK(tasks[8].id == "t-val-0001");
    CHECK(tasks[11].id == "t-val-0004");
    CHECK(tasks[12].id == "t-cm-0001");
    CHECK(tasks[13].id == "t-cm-0002");
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(tasks[i].kind == TaskKind::Symbolization);
      CHECK(tasks[i].language ==
            (i % 2 == 0 ? Language::English : Language::Carroll));
    }
    for (std::size_t i = 8; i < 12; ++i) {
      CHECK(tasks[i].kind == TaskKind::Validity);
      CHECK(tasks[i].language ==
            (i % 2 == 0 ? Language::English : Language::Carroll));
    }
    for (std::size_t i = 12; i < 14; ++i) {
      CHECK(tasks[i].kind == TaskKind::Countermodel);
      CHECK(tasks[i].language == Language::Neutral);
    }
  }

  SUBCASE("language counterparts share their logical content") {
    for (std::size_t i = 0; i + 1 < 8; i += 2) {
      REQUIRE(tasks[i].symbolization.has_value());
      REQUIRE(tasks[i + 1].symbolization.has_value());
      CHECK(equal(tasks[i].symbolization->gold, tasks[i + 1].symbolization->gold));
      CHECK(tasks[i].symbolization->sentence != tasks[i + 1].symbolization->sentence);
    }
    for (std::size_t i = 8; i + 1 < 12; i += 2) {
      REQUIRE(tasks[i].validity.has_value());
      REQUIRE(tasks[i + 1].validity.has_value());
      CHECK(tasks[i].validity->gold == tasks[i + 1].validity->gold);
      for (std::size_t c = 0; c < 6; ++c) {
        CHECK(equal(tasks[i].validity->candidate_formulas[c],
                    tasks[i + 1].validity->candidate_formulas[c]));
      }
    }
  }

  SUBCASE("every item passes its structural checks and the solver audit") {
    for (const TaskItem& task : tasks) {
      for (const std::string& problem : check_task(task)) {
        FAIL_CHECK(problem);
      }
      for (const std::string& problem : audit_task(task, shared_session())) {
        FAIL_CHECK(problem);
      }
    }
  }

  SUBCASE("the same inputs rebuild the same lines") {
    std::vector<TaskItem> again = build_eval_set(corpus, families, 99, shape);
    REQUIRE(again.size() == tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      CHECK(task_line(again[i]) == task_line(tasks[i]));
    }
  }

  SUBCASE("task lines round-trip") {
    for (const TaskItem& task : tasks) {
      std::string line = task_line(task);
      TaskItem back = parse_task_line(line);
      CHECK(task_line(back) == line);
      CHECK(render(back) == render(task));
    }
    CHECK_THROWS_AS(parse_task_line("not json at all"), std::invalid_argument);
    CHECK_THROWS_AS(parse_task_line("{\"id\":\"x\"}"), std::invalid_argument);
  }

  SUBCASE("shortfalls raise InsufficientPool with the counts") {
    EvalSetShape huge = shape;
    huge.symbolization_pairs = 1000000;
    try {
      build_eval_set(corpus, families, 99, huge);
      FAIL("expected InsufficientPool");
    } catch (const InsufficientPool& e) {
      CHECK(e.kind == "symbolization");
      CHECK(e.needed == 1000000);
      CHECK(e.available < 1200);
      CHECK(e.available > 0);
    }
    EvalSetShape starved = shape;
    starved.validity_families = 50;
    CHECK_THROWS_AS(build_eval_set(corpus, families, 99, starved),
                    InsufficientPool);
  }
}
