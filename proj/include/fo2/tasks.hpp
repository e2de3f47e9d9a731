// ============================================================================
// fo2/tasks.hpp — task instantiation and grading
// ============================================================================
//
// Turns stored sentences and argument families into the three task kinds,
// renders them as prompts, and grades candidate answers:
//
//   symbolization : translate one sentence into a formula, given its
//                   symbolization key.  Graded by liberal parse, then exact
//                   AST match, then solver equivalence against the gold
//                   formula.
//   validity      : pick which of six candidate conclusions follow from a
//                   premise set.  Graded by comparing the answered index
//                   set with the gold set.
//   countermodel  : refute an invalid argument with a structure over the
//                   fixed domain [0, 1, 2].  Graded by parsing the
//                   structure and re-evaluating the argument in it; any
//                   genuine countermodel is accepted, not just the stored
//                   reference.
//
// Grading verdicts carry a category from a closed per-kind taxonomy:
//
//   symbolization : correct | Not logically equivalent | Failed to parse |
//                   arity mismatch | unknown symbol | unbound variable |
//                   ungraded — backend error
//   countermodel  : accepted | Not a countermodel |
//                   Missing interpretation for: X | malformed extension |
//                   domain violation
//   validity      : correct | superset | subset | disjoint/other |
//                   empty-vs-nonempty | Failed to parse
//
// Every incorrect verdict has exactly one category, so per-category counts
// add up to the number of incorrect answers.
// ============================================================================

#ifndef FO2_TASKS_HPP
#define FO2_TASKS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo2/arguments.hpp"
#include "fo2/corpus.hpp"
#include "fo2/solver.hpp"
#include "fo2/structure.hpp"

namespace fo2 {

enum class TaskKind { Symbolization, Validity, Countermodel };

const char* task_kind_name(TaskKind kind);
TaskKind task_kind_from(const std::string& text);  // throws std::invalid_argument

struct SymbolizationPayload {
  std::string sentence;             // surface text to translate
  std::map<char, std::string> soa;  // symbolization key: symbol -> gloss
  Formula gold;
};

struct ValidityPayload {
  std::vector<std::string> premises;    // surface texts
  std::vector<std::string> candidates;  // exactly 6 surface texts
  std::vector<Formula> premise_formulas;
  std::vector<Formula> candidate_formulas;
  std::set<int> gold;  // 1-based candidate indices; singleton for shipped items
};

struct CountermodelPayload {
  std::vector<Formula> premises;
  Formula conclusion;
  FiniteStructure witness;  // reference countermodel over exactly [0, 1, 2]
};

// One renderable problem.  Exactly one payload is engaged, matching `kind`;
// countermodel items are language-neutral (they show bare formulas).
struct TaskItem {
  std::string id;  // t-sym-0001 / t-val-0001 / t-cm-0001
  TaskKind kind = TaskKind::Symbolization;
  Language language = Language::Neutral;
  std::string template_id;
  std::optional<SymbolizationPayload> symbolization;
  std::optional<ValidityPayload> validity;
  std::optional<CountermodelPayload> countermodel;
};

struct Verdict {
  bool correct = false;
  std::string category;  // from the taxonomy in the banner above
  std::string detail;    // evidence: failing premises, parse position, answer set
};

// The built-in prompt template for one template id ("symbolization-v1",
// "validity-v1", "countermodel-v1").  The same texts are shipped as files
// under data/prompts/; a test keeps the two in sync.  Throws
// std::invalid_argument for unknown ids.
const std::string& prompt_template(const std::string& template_id);

// The full prompt for a task: its template with every placeholder filled.
// A pure function of the task, so re-rendering is byte-identical.
std::string render(const TaskItem& task);

// Grades a formula-text answer to a symbolization task.  The pipeline is
// liberal parse, exact AST match (fast accept), well-formedness against the
// task's symbolization key, then solver equivalence with the gold formula.
// A solver that cannot answer yields "ungraded — backend error", never a
// wrong-answer category.
Verdict grade_symbolization(const TaskItem& task, const std::string& response,
                            SolverSession& session);

// Grades a structure-text answer to a countermodel task.  The text is
// parsed into domain, constants, and extensions; the structure must
// interpret every symbol the argument uses and respect arities, and is then
// re-evaluated against the argument.  A declared domain is taken verbatim
// even when it differs from the prompt's fixed [0, 1, 2] (any genuine
// finite countermodel proves invalidity); the fixed domain applies when the
// answer declares none.  No solver involved: acceptance is decided by
// direct evaluation, and agrees with check_countermodel by construction.
Verdict grade_countermodel(const TaskItem& task, const std::string& response);

// Grades an index-set answer to a validity task.  The response may list
// indices in any punctuation ("3", "2, 3", "{2,3}") or be "none" for the
// empty set; anything else, or an index outside 1..6, fails to parse.
Verdict grade_validity(const TaskItem& task, const std::string& response);

// A store cannot supply enough qualifying material for the requested set.
class InsufficientPool : public std::runtime_error {
 public:
  InsufficientPool(const std::string& kind_label, std::size_t needed_count,
                   std::size_t available_count);
  std::string kind;
  std::size_t needed;
  std::size_t available;
};

// How many of each kind build_eval_set emits.  The defaults are the shipped
// composition: 600 symbolization and 600 validity tasks (half English, half
// Carroll, the same underlying item in both), and 300 language-neutral
// countermodel tasks.
struct EvalSetShape {
  std::size_t symbolization_pairs = 300;   // 2 tasks per pair
  std::size_t validity_families = 300;     // 2 tasks per family
  std::size_t countermodel_families = 300; // 1 task per family
};

// Builds the evaluation set.  Symbolization draws corpus pairs whose
// formula uses 3-4 predicates and 1-2 constants (compound sentences, not
// one-predicate atoms); validity pairs each family's premises with its gold
// conclusion and five certified distractors, the gold position uniformly
// drawn per family under the seed; countermodel reuses each family's
// starred distractor, its stored witness inflated onto exactly [0, 1, 2].
// Deterministic in (corpus, families, seed, shape).  Throws
// InsufficientPool when the corpus or family list is too small.
std::vector<TaskItem> build_eval_set(const std::vector<SentencePair>& corpus,
                                     const std::vector<ArgumentFamily>& families,
                                     std::uint64_t seed,
                                     const EvalSetShape& shape = {});

// Structural invariants of one task: payload engaged and matching the kind,
// validity has exactly 6 candidates and a non-empty gold set inside 1..6,
// countermodel is language-neutral with its witness on exactly [0, 1, 2]
// and genuinely refuting, symbolization stays within the 3-4 predicate and
// 1-2 constant budget with a key covering exactly the formula's symbols.
// Empty list means sound.
std::vector<std::string> check_task(const TaskItem& task);

// Semantic re-audit of one task with a live solver: validity tasks re-derive
// the gold set by entailment over all six candidates and prove the five
// non-gold candidates pairwise non-equivalent; symbolization tasks re-grade
// their own gold formula; countermodel witnesses are re-evaluated.  Empty
// list means the task withstands regeneration.
std::vector<std::string> audit_task(const TaskItem& task, SolverSession& session);

// One task as a single JSON line (id, kind, language, template, payload,
// gold); see docs/file-formats.md.  parse_task_line inverts it and throws
// std::invalid_argument on malformed input.
std::string task_line(const TaskItem& task);
TaskItem parse_task_line(const std::string& line);

}  // namespace fo2

#endif
