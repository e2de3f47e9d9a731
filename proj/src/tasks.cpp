#include "fo2/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "json.hpp"

#include "fo2/parse.hpp"
#include "fo2/print.hpp"
#include "fo2/structure_io.hpp"
#include "fo2/util.hpp"

namespace fo2 {

namespace {

using nlohmann::ordered_json;

// The built-in copies of the data/prompts/ files; test_tasks diffs them
// against the files so the two cannot drift apart.

const std::string kSymbolizationTemplate =
    R"tmpl(Your task is to translate the provided sentence into formal predicate logic, using the abbreviations provided.

Instructions
- Use only the abbreviations given.
- Return a single well-formed formula in standard predicate logic syntax.
- Use standard logical symbols:
  - Quantifiers: ∀, ∃
  - Connectives: ¬, ∧, ∨, →, ↔
- Do not include any explanation or extra text, just the formula.

Example

Sentence: Every linguist admires Charlie.
Abbreviations:
- L: "[1] is a linguist"
- R: "[1] admires [2]"
- c: "Charlie"
Translation: ∀x(Lx → Rxc)

----------------------------------------

Task

Sentence: {sentence}
Abbreviations:
{abbreviations}
)tmpl";

const std::string kValidityTemplate =
    R"tmpl(Your task is to solve a logical reasoning problem. Use any approach you find effective, but clearly and explicitly state your final answer.

Task

Consider the following situation:

{premises}

Which, if any, of the following statements must be true in this situation?

{candidates}
)tmpl";

const std::string kCountermodelTemplate =
    R"tmpl(Show that the provided argument is invalid by giving a countermodel, one where all premises are true and the conclusion is false.

Instructions
1. Provide assignments for all constants and predicates used in the argument.
2. Respect predicate arity:
   - Monadic predicates take one argument (e.g., Mx).
   - Binary predicates take two arguments (e.g., Pxy).
3. Use the fixed domain [0, 1, 2].

Required Format
- Domain: [0, 1, 2]
- Constants: "a": 0
- Monadic predicates: "F": [0, 2]
- Binary predicates: "R": [[0, 1], [2, 0]]

----------------------------------------

Argument

{premises}
⊨ {conclusion}
)tmpl";

std::string fill(std::string text,
                 const std::vector<std::pair<std::string, std::string>>& values) {
  for (const auto& [key, value] : values) {
    const std::string needle = "{" + key + "}";
    std::size_t pos = text.find(needle);
    while (pos != std::string::npos) {
      text.replace(pos, needle.size(), value);
      pos = text.find(needle, pos + value.size());
    }
  }
  return text;
}

// Arity is recoverable from the key itself: lowercase symbols are constants
// and a gloss mentioning "[2]" marks a binary predicate.
Signature soa_signature(const std::map<char, std::string>& soa) {
  Signature sig;
  for (const auto& [symbol, gloss] : soa) {
    if (std::islower(static_cast<unsigned char>(symbol))) {
      sig.constants.insert(symbol);
    } else if (gloss.find("[2]") != std::string::npos) {
      sig.binary.insert(symbol);
    } else {
      sig.unary.insert(symbol);
    }
  }
  return sig;
}

const SymbolizationPayload& symbolization_of(const TaskItem& task) {
  if (task.kind != TaskKind::Symbolization || !task.symbolization) {
    throw std::invalid_argument("task " + task.id + " is not a symbolization task");
  }
  return *task.symbolization;
}

const ValidityPayload& validity_of(const TaskItem& task) {
  if (task.kind != TaskKind::Validity || !task.validity) {
    throw std::invalid_argument("task " + task.id + " is not a validity task");
  }
  return *task.validity;
}

const CountermodelPayload& countermodel_of(const TaskItem& task) {
  if (task.kind != TaskKind::Countermodel || !task.countermodel) {
    throw std::invalid_argument("task " + task.id + " is not a countermodel task");
  }
  return *task.countermodel;
}

std::string show_set(const std::set<int>& s) {
  std::string out = "{";
  for (int i : s) {
    if (out.size() > 1) out += ",";
    out += std::to_string(i);
  }
  return out + "}";
}

// Indices in any punctuation, or a bare "none".  A number outside 1..6
// (including multi-digit run-ons like "12") makes the whole answer
// unreadable rather than silently dropping pieces of it.
std::optional<std::set<int>> parse_answer_set(const std::string& text) {
  std::set<int> indices;
  bool any_digits = false;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      any_digits = true;
      if (j - i > 1) return std::nullopt;
      int value = text[i] - '0';
      if (value < 1 || value > 6) return std::nullopt;
      indices.insert(value);
      i = j;
    } else {
      ++i;
    }
  }
  if (any_digits) return indices;
  std::string lower;
  for (char c : text) lower += char(std::tolower(static_cast<unsigned char>(c)));
  if (lower.find("none") != std::string::npos) return std::set<int>{};
  return std::nullopt;
}

std::string trimmed_echo(const std::string& text) {
  std::string echo = text.substr(0, 60);
  for (char& c : echo) {
    if (c == '\n' || c == '\t') c = ' ';
  }
  if (text.size() > 60) echo += "...";
  return echo;
}

const std::vector<int>& fixed_domain() {
  static const std::vector<int> domain = {0, 1, 2};
  return domain;
}

}  // namespace

const char* task_kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::Symbolization: return "symbolization";
    case TaskKind::Validity: return "validity";
    case TaskKind::Countermodel: return "countermodel";
  }
  return "?";
}

TaskKind task_kind_from(const std::string& text) {
  for (TaskKind k : {TaskKind::Symbolization, TaskKind::Validity,
                     TaskKind::Countermodel}) {
    if (text == task_kind_name(k)) return k;
  }
  throw std::invalid_argument("unknown task kind '" + text + "'");
}

const std::string& prompt_template(const std::string& template_id) {
  if (template_id == "symbolization-v1") return kSymbolizationTemplate;
  if (template_id == "validity-v1") return kValidityTemplate;
  if (template_id == "countermodel-v1") return kCountermodelTemplate;
  throw std::invalid_argument("unknown prompt template '" + template_id + "'");
}

std::string render(const TaskItem& task) {
  switch (task.kind) {
    case TaskKind::Symbolization: {
      const SymbolizationPayload& p = symbolization_of(task);
      std::string abbreviations;
      for (const auto& [symbol, gloss] : p.soa) {
        if (!abbreviations.empty()) abbreviations += "\n";
        abbreviations += "- ";
        abbreviations += symbol;
        abbreviations += ": \"" + gloss + "\"";
      }
      return fill(prompt_template(task.template_id),
                  {{"sentence", p.sentence}, {"abbreviations", abbreviations}});
    }
    case TaskKind::Validity: {
      const ValidityPayload& p = validity_of(task);
      std::string premises;
      for (const std::string& s : p.premises) {
        if (!premises.empty()) premises += " ";
        premises += s;
      }
      std::string candidates;
      for (std::size_t i = 0; i < p.candidates.size(); ++i) {
        if (!candidates.empty()) candidates += "\n";
        candidates += std::to_string(i + 1) + ". " + p.candidates[i];
      }
      return fill(prompt_template(task.template_id),
                  {{"premises", premises}, {"candidates", candidates}});
    }
    case TaskKind::Countermodel: {
      const CountermodelPayload& p = countermodel_of(task);
      std::string premises;
      for (const Formula& f : p.premises) {
        if (!premises.empty()) premises += ",\n";
        premises += print(f, PrintStyle::Unicode);
      }
      return fill(prompt_template(task.template_id),
                  {{"premises", premises},
                   {"conclusion", print(p.conclusion, PrintStyle::Unicode)}});
    }
  }
  throw std::invalid_argument("task " + task.id + " has an unknown kind");
}

Verdict grade_symbolization(const TaskItem& task, const std::string& response,
                            SolverSession& session) {
  const SymbolizationPayload& p = symbolization_of(task);
  Formula answered;
  try {
    answered = parse(response, Dialect::Liberal);
  } catch (const ParseError& e) {
    return {false, "Failed to parse",
            "codepoint " + std::to_string(e.position) + ": expected " + e.expected};
  } catch (const FragmentError& e) {
    return {false, "Failed to parse", e.what()};
  }
  if (equal(answered, p.gold)) return {true, "correct", "exact match"};

  Signature sig = soa_signature(p.soa);
  WfReport wf = check_wf(answered, sig);
  if (!wf.ok()) {
    // Priority when several problems coexist: symbols outside the key win
    // over arity, arity over open variables.
    for (WfViolation::Kind want :
         {WfViolation::Kind::UnknownSymbol, WfViolation::Kind::ArityMismatch,
          WfViolation::Kind::UnboundVariable, WfViolation::Kind::ThirdVariable}) {
      for (const WfViolation& v : wf.violations) {
        if (v.kind != want) continue;
        switch (want) {
          case WfViolation::Kind::UnknownSymbol:
            return {false, "unknown symbol", v.message};
          case WfViolation::Kind::ArityMismatch:
            return {false, "arity mismatch", v.message};
          case WfViolation::Kind::UnboundVariable:
            return {false, "unbound variable", v.message};
          case WfViolation::Kind::ThirdVariable:
            return {false, "Failed to parse", v.message};
        }
      }
    }
  }

  switch (session.equivalent(answered, p.gold, sig)) {
    case Entailed::Yes:
      return {true, "correct", "equivalent to the gold formula"};
    case Entailed::No:
      return {false, "Not logically equivalent",
              "parsed as " + print(answered, PrintStyle::Ascii)};
    case Entailed::Unknown:
      break;
  }
  return {false, "ungraded — backend error", "equivalence query unresolved"};
}

Verdict grade_countermodel(const TaskItem& task, const std::string& response) {
  const CountermodelPayload& p = countermodel_of(task);
  std::vector<Formula> all = p.premises;
  all.push_back(p.conclusion);
  Signature sig = signature_of(all);

  RawStructure raw = parse_structure_text(response);
  ResolveOutcome out = resolve_structure(raw, sig, fixed_domain());
  switch (out.status) {
    case ResolveOutcome::Status::Missing:
      return {false, std::string("Missing interpretation for: ") + out.symbol,
              out.message};
    case ResolveOutcome::Status::Malformed:
      return {false, "malformed extension", out.message};
    case ResolveOutcome::Status::DomainViolation:
      return {false, "domain violation", out.message};
    case ResolveOutcome::Status::Ok:
      break;
  }

  CountermodelVerdict cv;
  try {
    cv = check_countermodel(p.premises, p.conclusion, out.structure);
  } catch (const EvalError& e) {
    return {false, "ungraded — backend error", e.what()};
  }
  if (cv.accepted) {
    return {true, "accepted", "all premises true, conclusion false"};
  }
  std::string detail;
  if (!cv.failing_premises.empty()) {
    detail = "false premises:";
    for (std::size_t i : cv.failing_premises) detail += " " + std::to_string(i + 1);
  }
  if (cv.conclusion_true) {
    if (!detail.empty()) detail += "; ";
    detail += "the conclusion is true";
  }
  return {false, "Not a countermodel", detail};
}

Verdict grade_validity(const TaskItem& task, const std::string& response) {
  const ValidityPayload& p = validity_of(task);
  std::optional<std::set<int>> answered = parse_answer_set(response);
  if (!answered) {
    return {false, "Failed to parse",
            "no readable index set in: " + trimmed_echo(response)};
  }
  const std::set<int>& got = *answered;
  std::string detail = "answered " + show_set(got) + ", gold " + show_set(p.gold);
  if (got == p.gold) return {true, "correct", detail};
  if (got.empty() != p.gold.empty()) {
    return {false, "empty-vs-nonempty", detail};
  }
  if (std::includes(got.begin(), got.end(), p.gold.begin(), p.gold.end())) {
    return {false, "superset", detail};
  }
  if (std::includes(p.gold.begin(), p.gold.end(), got.begin(), got.end())) {
    return {false, "subset", detail};
  }
  return {false, "disjoint/other", detail};
}

InsufficientPool::InsufficientPool(const std::string& kind_label,
                                   std::size_t needed_count,
                                   std::size_t available_count)
    : std::runtime_error("insufficient pool for " + kind_label + " tasks: need " +
                         std::to_string(needed_count) + ", have " +
                         std::to_string(available_count)),
      kind(kind_label),
      needed(needed_count),
      available(available_count) {}

std::vector<TaskItem> build_eval_set(const std::vector<SentencePair>& corpus,
                                     const std::vector<ArgumentFamily>& families,
                                     std::uint64_t seed,
                                     const EvalSetShape& shape) {
  std::vector<TaskItem> tasks;
  char buf[32];

  std::vector<const SentencePair*> qualifying;
  for (const SentencePair& pair : corpus) {
    Signature sig = signature_of({pair.english.formula});
    std::size_t predicates = sig.unary.size() + sig.binary.size();
    std::size_t constants = sig.constants.size();
    if (predicates >= 3 && predicates <= 4 && constants >= 1 && constants <= 2) {
      qualifying.push_back(&pair);
    }
  }
  if (qualifying.size() < shape.symbolization_pairs) {
    throw InsufficientPool("symbolization", shape.symbolization_pairs,
                           qualifying.size());
  }
  if (families.size() < shape.validity_families) {
    throw InsufficientPool("validity", shape.validity_families, families.size());
  }
  if (families.size() < shape.countermodel_families) {
    throw InsufficientPool("countermodel", shape.countermodel_families,
                           families.size());
  }

  SplitMix64 picker = derived_stream(seed, "task-sym", 0);
  picker.shuffle(qualifying);
  std::size_t serial = 0;
  for (std::size_t j = 0; j < shape.symbolization_pairs; ++j) {
    for (const SentenceRecord* rec :
         {&qualifying[j]->english, &qualifying[j]->carroll}) {
      TaskItem t;
      std::snprintf(buf, sizeof buf, "t-sym-%04zu", ++serial);
      t.id = buf;
      t.kind = TaskKind::Symbolization;
      t.language = rec->language;
      t.template_id = "symbolization-v1";
      t.symbolization = SymbolizationPayload{rec->surface, rec->soa, rec->formula};
      tasks.push_back(std::move(t));
    }
  }

  serial = 0;
  for (std::size_t j = 0; j < shape.validity_families; ++j) {
    const ArgumentFamily& family = families[j];
    std::size_t gold_position = derived_stream(seed, "task-goldpos", j).below(6);
    std::vector<const SentencePair*> order;
    for (const SentencePair& d : family.distractors) order.push_back(&d);
    order.insert(order.begin() + long(gold_position), &family.conclusion);

    for (Language lang : {Language::English, Language::Carroll}) {
      TaskItem t;
      std::snprintf(buf, sizeof buf, "t-val-%04zu", ++serial);
      t.id = buf;
      t.kind = TaskKind::Validity;
      t.language = lang;
      t.template_id = "validity-v1";
      ValidityPayload p;
      for (const SentencePair& premise : family.premises) {
        const SentenceRecord& rec =
            lang == Language::English ? premise.english : premise.carroll;
        p.premises.push_back(rec.surface);
        p.premise_formulas.push_back(rec.formula);
      }
      for (const SentencePair* candidate : order) {
        const SentenceRecord& rec =
            lang == Language::English ? candidate->english : candidate->carroll;
        p.candidates.push_back(rec.surface);
        p.candidate_formulas.push_back(rec.formula);
      }
      p.gold = {int(gold_position) + 1};
      t.validity = std::move(p);
      tasks.push_back(std::move(t));
    }
  }

  serial = 0;
  for (std::size_t j = 0; j < shape.countermodel_families; ++j) {
    const ArgumentFamily& family = families[j];
    TaskItem t;
    std::snprintf(buf, sizeof buf, "t-cm-%04zu", ++serial);
    t.id = buf;
    t.kind = TaskKind::Countermodel;
    t.language = Language::Neutral;
    t.template_id = "countermodel-v1";
    CountermodelPayload p;
    for (const SentencePair& premise : family.premises) {
      p.premises.push_back(premise.english.formula);
    }
    p.conclusion = family.distractors[family.countermodel_index].english.formula;
    p.witness =
        pad_structure(family.distractor_witnesses[family.countermodel_index], 3);
    if (!check_countermodel(p.premises, p.conclusion, p.witness).accepted) {
      throw std::logic_error("eval set: inflated witness stopped refuting " + t.id);
    }
    t.countermodel = std::move(p);
    tasks.push_back(std::move(t));
  }

  return tasks;
}

std::vector<std::string> check_task(const TaskItem& task) {
  std::vector<std::string> problems;
  int engaged = int(task.symbolization.has_value()) + int(task.validity.has_value()) +
                int(task.countermodel.has_value());
  if (engaged != 1) {
    problems.push_back(task.id + ": " + std::to_string(engaged) +
                       " payloads engaged, want exactly 1");
  }

  switch (task.kind) {
    case TaskKind::Symbolization: {
      if (!task.symbolization) {
        problems.push_back(task.id + ": symbolization payload missing");
        break;
      }
      const SymbolizationPayload& p = *task.symbolization;
      if (task.language == Language::Neutral) {
        problems.push_back(task.id + ": symbolization cannot be language-neutral");
      }
      Signature sig = soa_signature(p.soa);
      std::size_t predicates = sig.unary.size() + sig.binary.size();
      std::size_t constants = sig.constants.size();
      if (predicates < 3 || predicates > 4 || constants < 1 || constants > 2) {
        problems.push_back(task.id + ": key has " + std::to_string(predicates) +
                           " predicates and " + std::to_string(constants) +
                           " constants, want 3-4 and 1-2");
      }
      std::set<char> keyed;
      for (const auto& [symbol, gloss] : p.soa) keyed.insert(symbol);
      if (keyed != all_symbols(p.gold)) {
        problems.push_back(task.id + ": key does not match the formula's symbols");
      }
      WfReport wf = check_wf(p.gold, sig);
      if (!wf.ok()) {
        problems.push_back(task.id + ": gold formula ill-formed against its key: " +
                           wf.violations.front().message);
      }
      break;
    }
    case TaskKind::Validity: {
      if (!task.validity) {
        problems.push_back(task.id + ": validity payload missing");
        break;
      }
      const ValidityPayload& p = *task.validity;
      if (task.language == Language::Neutral) {
        problems.push_back(task.id + ": validity cannot be language-neutral");
      }
      if (p.candidates.size() != 6 || p.candidate_formulas.size() != 6) {
        problems.push_back(task.id + ": want exactly 6 candidates, have " +
                           std::to_string(p.candidates.size()) + " surfaces and " +
                           std::to_string(p.candidate_formulas.size()) + " formulas");
      }
      if (p.premises.empty() || p.premises.size() != p.premise_formulas.size()) {
        problems.push_back(task.id + ": premise surfaces and formulas mismatched");
      }
      if (p.gold.empty()) {
        problems.push_back(task.id + ": gold set empty");
      }
      for (int g : p.gold) {
        if (g < 1 || g > 6) {
          problems.push_back(task.id + ": gold index " + std::to_string(g) +
                             " outside 1..6");
        }
      }
      break;
    }
    case TaskKind::Countermodel: {
      if (!task.countermodel) {
        problems.push_back(task.id + ": countermodel payload missing");
        break;
      }
      const CountermodelPayload& p = *task.countermodel;
      if (task.language != Language::Neutral) {
        problems.push_back(task.id + ": countermodel tasks must be language-neutral");
      }
      if (p.premises.empty()) {
        problems.push_back(task.id + ": no premises");
      }
      std::vector<int> domain = p.witness.domain;
      std::sort(domain.begin(), domain.end());
      if (domain != fixed_domain()) {
        problems.push_back(task.id + ": witness domain is not [0, 1, 2]");
        break;
      }
      try {
        if (!check_countermodel(p.premises, p.conclusion, p.witness).accepted) {
          problems.push_back(task.id + ": stored witness does not refute the argument");
        }
      } catch (const EvalError& e) {
        problems.push_back(task.id + ": stored witness unusable: " + e.what());
      }
      break;
    }
  }
  return problems;
}

std::vector<std::string> audit_task(const TaskItem& task, SolverSession& session) {
  std::vector<std::string> problems = check_task(task);
  if (!problems.empty()) return problems;

  switch (task.kind) {
    case TaskKind::Symbolization: {
      Verdict v = grade_symbolization(
          task, print(task.symbolization->gold, PrintStyle::Ascii), session);
      if (!v.correct) {
        problems.push_back(task.id + ": gold reprint graded '" + v.category + "'");
      }
      break;
    }
    case TaskKind::Validity: {
      const ValidityPayload& p = *task.validity;
      std::set<int> derived;
      bool unresolved = false;
      for (std::size_t i = 0; i < p.candidate_formulas.size(); ++i) {
        switch (session.entails(p.premise_formulas, p.candidate_formulas[i]).answer) {
          case Entailed::Yes:
            derived.insert(int(i) + 1);
            break;
          case Entailed::No:
            break;
          case Entailed::Unknown:
            problems.push_back(task.id + ": entailment unresolved for candidate " +
                               std::to_string(i + 1));
            unresolved = true;
            break;
        }
      }
      if (!unresolved && derived != p.gold) {
        problems.push_back(task.id + ": regeneration yields gold " +
                           show_set(derived) + ", stored " + show_set(p.gold));
      }
      for (std::size_t i = 0; i < p.candidate_formulas.size(); ++i) {
        for (std::size_t j = i + 1; j < p.candidate_formulas.size(); ++j) {
          if (p.gold.count(int(i) + 1) > 0 || p.gold.count(int(j) + 1) > 0) continue;
          Signature sig =
              signature_of({p.candidate_formulas[i], p.candidate_formulas[j]});
          if (session.equivalent(p.candidate_formulas[i], p.candidate_formulas[j],
                                 sig) != Entailed::No) {
            problems.push_back(task.id + ": candidates " + std::to_string(i + 1) +
                               " and " + std::to_string(j + 1) +
                               " not provably distinct");
          }
        }
      }
      break;
    }
    case TaskKind::Countermodel: {
      const CountermodelPayload& p = *task.countermodel;
      EntailmentVerdict ev = session.entails(p.premises, p.conclusion);
      if (ev.answer == Entailed::Yes) {
        problems.push_back(task.id + ": conclusion is entailed, task unrefutable");
      } else if (ev.answer == Entailed::Unknown) {
        problems.push_back(task.id + ": entailment unresolved");
      }
      break;
    }
  }
  return problems;
}

std::string task_line(const TaskItem& task) {
  ordered_json j;
  j["id"] = task.id;
  j["kind"] = task_kind_name(task.kind);
  j["language"] = language_name(task.language);
  j["template"] = task.template_id;
  ordered_json payload = ordered_json::object();
  ordered_json gold;
  switch (task.kind) {
    case TaskKind::Symbolization: {
      const SymbolizationPayload& p = symbolization_of(task);
      payload["sentence"] = p.sentence;
      ordered_json soa = ordered_json::object();
      for (const auto& [symbol, gloss] : p.soa) soa[std::string(1, symbol)] = gloss;
      payload["soa"] = soa;
      gold = print(p.gold, PrintStyle::Ascii);
      break;
    }
    case TaskKind::Validity: {
      const ValidityPayload& p = validity_of(task);
      payload["premises"] = p.premises;
      ordered_json premise_formulas = ordered_json::array();
      for (const Formula& f : p.premise_formulas) {
        premise_formulas.push_back(print(f, PrintStyle::Ascii));
      }
      payload["premise_formulas"] = premise_formulas;
      payload["candidates"] = p.candidates;
      ordered_json candidate_formulas = ordered_json::array();
      for (const Formula& f : p.candidate_formulas) {
        candidate_formulas.push_back(print(f, PrintStyle::Ascii));
      }
      payload["candidate_formulas"] = candidate_formulas;
      gold = ordered_json::array();
      for (int g : p.gold) gold.push_back(g);
      break;
    }
    case TaskKind::Countermodel: {
      const CountermodelPayload& p = countermodel_of(task);
      ordered_json premises = ordered_json::array();
      for (const Formula& f : p.premises) {
        premises.push_back(print(f, PrintStyle::Ascii));
      }
      payload["premises"] = premises;
      payload["conclusion"] = print(p.conclusion, PrintStyle::Ascii);
      payload["domain"] = fixed_domain();
      gold = to_required_format(p.witness);
      break;
    }
  }
  j["payload"] = payload;
  j["gold"] = gold;
  return j.dump();
}

TaskItem parse_task_line(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("task line: not valid JSON: ") + e.what());
  }
  try {
    TaskItem t;
    t.id = j.at("id").get<std::string>();
    t.kind = task_kind_from(j.at("kind").get<std::string>());
    t.language = language_from(j.at("language").get<std::string>());
    t.template_id = j.at("template").get<std::string>();
    const ordered_json& payload = j.at("payload");
    switch (t.kind) {
      case TaskKind::Symbolization: {
        SymbolizationPayload p;
        p.sentence = payload.at("sentence").get<std::string>();
        for (const auto& [key, value] : payload.at("soa").items()) {
          if (key.size() != 1) {
            throw std::invalid_argument("task line: key symbol '" + key +
                                        "' is not a single character");
          }
          p.soa[key[0]] = value.get<std::string>();
        }
        p.gold = parse(j.at("gold").get<std::string>(), Dialect::Strict);
        t.symbolization = std::move(p);
        break;
      }
      case TaskKind::Validity: {
        ValidityPayload p;
        p.premises = payload.at("premises").get<std::vector<std::string>>();
        for (const auto& text : payload.at("premise_formulas")) {
          p.premise_formulas.push_back(parse(text.get<std::string>(), Dialect::Strict));
        }
        p.candidates = payload.at("candidates").get<std::vector<std::string>>();
        for (const auto& text : payload.at("candidate_formulas")) {
          p.candidate_formulas.push_back(
              parse(text.get<std::string>(), Dialect::Strict));
        }
        for (const auto& g : j.at("gold")) p.gold.insert(g.get<int>());
        t.validity = std::move(p);
        break;
      }
      case TaskKind::Countermodel: {
        CountermodelPayload p;
        for (const auto& text : payload.at("premises")) {
          p.premises.push_back(parse(text.get<std::string>(), Dialect::Strict));
        }
        p.conclusion = parse(payload.at("conclusion").get<std::string>(), Dialect::Strict);
        std::vector<int> domain = payload.at("domain").get<std::vector<int>>();
        if (domain != fixed_domain()) {
          throw std::invalid_argument("task line: domain is not [0, 1, 2]");
        }
        std::vector<Formula> all = p.premises;
        all.push_back(p.conclusion);
        RawStructure raw = parse_structure_text(j.at("gold").get<std::string>());
        ResolveOutcome out = resolve_structure(raw, signature_of(all), fixed_domain());
        if (out.status != ResolveOutcome::Status::Ok) {
          throw std::invalid_argument("task line: stored witness unusable: " +
                                      out.message);
        }
        p.witness = std::move(out.structure);
        t.countermodel = std::move(p);
        break;
      }
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("task line: missing or mistyped field: ") +
                                e.what());
  } catch (const ParseError& e) {
    throw std::invalid_argument("task line: stored formula unreadable: " +
                                std::string(e.what()));
  } catch (const FragmentError& e) {
    throw std::invalid_argument("task line: stored formula outside the fragment: " +
                                std::string(e.what()));
  } catch (const LexiconError& e) {
    throw std::invalid_argument(std::string("task line: ") + e.what());
  }
}

}  // namespace fo2
