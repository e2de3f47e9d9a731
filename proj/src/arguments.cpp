#include "fo2/arguments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <iterator>
#include <map>
#include <set>
#include <utility>

#include "fo2/enumerate.hpp"
#include "fo2/print.hpp"
#include "fo2/structure_io.hpp"
#include "fo2/util.hpp"

namespace fo2 {

namespace {

std::vector<Formula> formulas_of(const std::vector<SentenceRecord>& records) {
  std::vector<Formula> out;
  out.reserve(records.size());
  for (const SentenceRecord& r : records) out.push_back(r.formula);
  return out;
}

std::set<char> symbol_union(const std::vector<SentenceRecord>& records) {
  std::set<char> out;
  for (const SentenceRecord& r : records) {
    std::set<char> s = all_symbols(r.formula);
    out.insert(s.begin(), s.end());
  }
  return out;
}

bool within(const std::set<char>& symbols, const std::set<char>& inventory) {
  return std::includes(inventory.begin(), inventory.end(), symbols.begin(),
                       symbols.end());
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

Certificate stamp_certificate(const std::string& backend,
                              const std::vector<Formula>& premises,
                              const Formula& conclusion, bool entailed,
                              const FiniteStructure* witness, double elapsed) {
  Certificate cert;
  cert.backend = backend;
  for (const Formula& p : premises) cert.query_hashes.push_back(to_hex(ast_hash(p)));
  cert.query_hashes.push_back(to_hex(ast_hash(conclusion)));
  cert.verdict = entailed ? "entailed" : "non-entailed";
  cert.elapsed_seconds = elapsed;
  std::string blob = cert.backend;
  blob += '\n';
  for (const std::string& h : cert.query_hashes) {
    blob += h;
    blob += '\n';
  }
  blob += cert.verdict;
  blob += '\n';
  if (witness != nullptr) blob += to_required_format(*witness);
  cert.digest = to_hex(fnv1a64(blob));
  return cert;
}

}  // namespace

RetryBudgetExhausted::RetryBudgetExhausted(int attempt_count)
    : std::runtime_error("retry budget exhausted after " +
                         std::to_string(attempt_count) + " attempts"),
      attempts(attempt_count) {}

NoConclusionFound::NoConclusionFound(std::size_t pool_size)
    : std::runtime_error("no admissible conclusion among " +
                         std::to_string(pool_size) + " pool candidates") {}

InsufficientDistractors::InsufficientDistractors(std::size_t found_count,
                                                 std::size_t requested_count)
    : std::runtime_error("only " + std::to_string(found_count) + " of " +
                         std::to_string(requested_count) +
                         " distractors could be certified"),
      found(found_count),
      requested(requested_count) {}

CertificationFailed::CertificationFailed(const std::string& reason)
    : std::runtime_error("certification failed: " + reason) {}

std::vector<SentenceRecord> sample_premises(const std::vector<SentenceRecord>& corpus,
                                            int k, std::uint64_t seed,
                                            SolverSession& session,
                                            int retry_budget) {
  if (k < 3 || k > 5) throw std::invalid_argument("premise count must be 3, 4, or 5");
  if (corpus.size() < static_cast<std::size_t>(k))
    throw std::invalid_argument("corpus has fewer sentences than the premise count");
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    SplitMix64 rng = derived_stream(seed, "premises", static_cast<std::uint64_t>(attempt));
    std::vector<std::size_t> picked;
    std::set<std::size_t> seen;
    while (picked.size() < static_cast<std::size_t>(k)) {
      std::size_t i = static_cast<std::size_t>(rng.below(corpus.size()));
      if (seen.insert(i).second) picked.push_back(i);
    }
    std::vector<SentenceRecord> premises;
    for (std::size_t i : picked) premises.push_back(corpus[i]);
    std::vector<Formula> fs = formulas_of(premises);
    if (session.check_sat(fs, signature_of(fs)).status == SatStatus::Sat)
      return premises;
  }
  throw RetryBudgetExhausted(retry_budget);
}

namespace {

// Size of the smallest premise subset that entails the conclusion, as a
// fraction of the premise count.  Subsets up to smallest_untried - 1 are
// already known not to entail; the full set is known to entail, so 1.0 is
// the fallback when every proper subset misses (or answers unknown, which
// conservatively counts as a miss).
double smallest_fraction(const std::vector<Formula>& premises,
                         const Formula& conclusion, std::size_t smallest_untried,
                         SolverSession& session) {
  const std::size_t k = premises.size();
  for (std::size_t s = smallest_untried; s < k; ++s) {
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != s) continue;
      std::vector<Formula> subset;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) subset.push_back(premises[i]);
      if (session.entails(subset, conclusion).answer == Entailed::Yes)
        return static_cast<double>(s) / static_cast<double>(k);
    }
  }
  return 1.0;
}

}  // namespace

ConclusionResult find_valid_conclusion(const std::vector<SentenceRecord>& premises,
                                       const std::vector<SentenceRecord>& pool,
                                       SolverSession& session) {
  if (premises.empty() || premises.size() > 16)
    throw std::invalid_argument("premise list must hold 1 to 16 sentences");
  const std::vector<Formula> pf = formulas_of(premises);
  const std::set<char> inventory = symbol_union(premises);
  std::set<std::uint64_t> premise_hashes;
  std::vector<Formula> partition;
  for (const SentenceRecord& p : premises) {
    premise_hashes.insert(p.hash);
    if (p.type == SchemaType::DomainPartition) partition.push_back(p.formula);
  }
  const std::size_t k = premises.size();
  const std::size_t trivial_cap = k / 5;  // largest subset size the filters sweep

  for (const SentenceRecord& cand : pool) {
    if (premise_hashes.count(cand.hash) > 0) continue;
    if (!within(all_symbols(cand.formula), inventory)) continue;
    if (session.entails(pf, cand.formula).answer != Entailed::Yes) continue;
    // Each triviality filter needs a definite "no"; an unknown cannot
    // certify nontriviality, so it skips the candidate too.
    if (session.entails({}, cand.formula).answer != Entailed::No) continue;
    if (!partition.empty() &&
        session.entails(partition, cand.formula).answer != Entailed::No)
      continue;
    bool one_premise_does_it = false;
    if (trivial_cap >= 1) {
      for (const Formula& p : pf) {
        if (session.entails({p}, cand.formula).answer != Entailed::No) {
          one_premise_does_it = true;
          break;
        }
      }
    }
    if (one_premise_does_it) continue;

    ConclusionResult result;
    result.conclusion = cand;
    result.report.is_theorem = false;
    result.report.from_domain_constraints_only = false;
    result.report.smallest_entailing_subset_fraction =
        smallest_fraction(pf, cand.formula, trivial_cap + 1, session);
    return result;
  }
  throw NoConclusionFound(pool.size());
}

std::vector<SentenceRecord> build_distractors(const std::vector<SentenceRecord>& premises,
                                              const SentenceRecord* conclusion,
                                              const std::vector<SentenceRecord>& pool,
                                              std::size_t n, SolverSession& session,
                                              std::vector<FiniteStructure>* witnesses) {
  const std::vector<Formula> pf = formulas_of(premises);
  std::set<char> inventory = symbol_union(premises);
  std::set<char> gold_symbols;
  if (conclusion != nullptr) {
    gold_symbols = all_symbols(conclusion->formula);
    inventory.insert(gold_symbols.begin(), gold_symbols.end());
  }
  std::set<std::uint64_t> taken;
  for (const SentenceRecord& p : premises) taken.insert(p.hash);
  if (conclusion != nullptr) taken.insert(conclusion->hash);

  struct Ranked {
    const SentenceRecord* rec;
    int type_mismatch;   // 0 when the sentence type matches the conclusion's
    std::size_t shared;  // symbols in common with the conclusion
    std::size_t order;   // position in the pool, the final tiebreak
  };
  std::vector<Ranked> ranked;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const SentenceRecord& cand = pool[i];
    if (taken.count(cand.hash) > 0) continue;
    std::set<char> syms = all_symbols(cand.formula);
    if (!within(syms, inventory)) continue;
    std::size_t shared = 0;
    if (conclusion != nullptr) {
      for (char sym : syms) shared += gold_symbols.count(sym);
      if (shared == 0) continue;  // must touch the gold conclusion's subject matter
    }
    int type_mismatch =
        (conclusion == nullptr || cand.type == conclusion->type) ? 0 : 1;
    ranked.push_back({&cand, type_mismatch, shared, i});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.type_mismatch != b.type_mismatch) return a.type_mismatch < b.type_mismatch;
    if (a.shared != b.shared) return a.shared > b.shared;
    return a.order < b.order;
  });

  std::vector<SentenceRecord> chosen;
  std::vector<FiniteStructure> models;
  for (const Ranked& r : ranked) {
    if (chosen.size() == n) break;
    EntailmentVerdict verdict = session.entails(pf, r.rec->formula);
    if (verdict.answer != Entailed::No || !verdict.witness) continue;
    if (!check_countermodel(pf, r.rec->formula, *verdict.witness).accepted) continue;
    bool duplicate = false;
    for (const SentenceRecord& c : chosen) {
      Signature sig = signature_of({r.rec->formula, c.formula});
      // Distinctness must be provable; equivalent or unknown both disqualify.
      if (session.equivalent(r.rec->formula, c.formula, sig) != Entailed::No) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    chosen.push_back(*r.rec);
    models.push_back(*verdict.witness);
  }
  if (chosen.size() < n) throw InsufficientDistractors(chosen.size(), n);
  if (witnesses != nullptr) *witnesses = std::move(models);
  return chosen;
}

Argument certify_argument(const Argument& argument, const SentenceResolver& resolve,
                          SolverSession& session) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SentenceRecord> premises;
  SentenceRecord conclusion;
  try {
    for (const std::string& id : argument.premise_ids) premises.push_back(resolve(id));
    conclusion = resolve(argument.conclusion_id);
  } catch (const std::exception& e) {
    throw CertificationFailed(std::string("unresolvable sentence id: ") + e.what());
  }
  if (premises.size() < 3 || premises.size() > 5)
    throw CertificationFailed("premise count out of range");
  for (const SentenceRecord& r : premises)
    if (r.language != argument.language)
      throw CertificationFailed("premise language differs from the argument's");
  if (conclusion.language != argument.language)
    throw CertificationFailed("conclusion language differs from the argument's");

  const std::vector<Formula> pf = formulas_of(premises);
  EntailmentVerdict verdict = session.entails(pf, conclusion.formula);
  if (verdict.answer == Entailed::Unknown)
    throw CertificationFailed("solver verdict unknown");
  if (argument.valid) {
    if (verdict.answer != Entailed::Yes)
      throw CertificationFailed("stored validity contradicted by the solver");
    if (argument.witness)
      throw CertificationFailed("valid argument carries a witness");
  } else {
    if (verdict.answer != Entailed::No)
      throw CertificationFailed("stored invalidity contradicted by the solver");
    if (!argument.witness)
      throw CertificationFailed("invalid argument lacks a witness");
    if (argument.witness->domain.size() > 3)
      throw CertificationFailed("witness domain larger than 3");
    try {
      if (!check_countermodel(pf, conclusion.formula, *argument.witness).accepted)
        throw CertificationFailed("stored witness fails re-evaluation");
    } catch (const EvalError& e) {
      throw CertificationFailed(std::string("stored witness unusable: ") + e.what());
    }
  }

  Argument out = argument;
  const FiniteStructure* witness = argument.valid ? nullptr : &*argument.witness;
  out.certificate = stamp_certificate(session.backend(), pf, conclusion.formula,
                                      argument.valid, witness, seconds_since(start));
  return out;
}

namespace {

// Palette shapes, each three unary predicates plus one transitive verb.
// That is 3n + n^2 = 18 extension bits at domain size 3, comfortably inside
// the enumeration oracle's default budget of 24.
struct PaletteShape {
  int nouns;
  int adjectives;
  int intransitives;
  int transitives;
};

constexpr PaletteShape kShapes[] = {
    {2, 1, 0, 1},  // two kinds and a quality
    {2, 0, 1, 1},  // two kinds and an activity
    {3, 0, 0, 1},  // three kinds: domain partitions become possible
    {1, 1, 1, 1},  // one kind, one quality, one activity
};

void pick_into(SplitMix64& stream, std::vector<char> options, int count,
               std::set<char>& palette) {
  for (int i = 0; i < count; ++i) {
    std::size_t j = static_cast<std::size_t>(stream.below(options.size()));
    palette.insert(options[j]);
    options.erase(options.begin() + static_cast<std::ptrdiff_t>(j));
  }
}

}  // namespace

ArgumentFamily build_family(const std::vector<SentencePair>& corpus,
                            const Lexicon& english, std::uint64_t seed,
                            std::uint64_t family_index, SolverSession& session,
                            const FamilyConfig& config) {
  if (corpus.empty()) throw std::invalid_argument("corpus is empty");
  if (config.distractor_count == 0)
    throw std::invalid_argument("distractor count must be positive");
  std::map<std::string, const SentencePair*> by_english_id;
  for (const SentencePair& pair : corpus) by_english_id[pair.english.id] = &pair;

  SplitMix64 stream = derived_stream(seed, "family", family_index);
  for (int attempt = 0; attempt < config.retry_budget; ++attempt) {
    const PaletteShape& shape =
        kShapes[static_cast<std::size_t>(stream.below(std::size(kShapes)))];
    std::set<char> palette;
    pick_into(stream, english.symbols(WordKind::Noun), shape.nouns, palette);
    pick_into(stream, english.symbols(WordKind::Adjective), shape.adjectives, palette);
    pick_into(stream, english.symbols(WordKind::Intransitive), shape.intransitives,
              palette);
    pick_into(stream, english.symbols(WordKind::Transitive), shape.transitives,
              palette);
    pick_into(stream, english.symbols(WordKind::Name), 2, palette);

    std::vector<SentenceRecord> eligible;
    for (const SentencePair& pair : corpus)
      if (within(all_symbols(pair.english.formula), palette))
        eligible.push_back(pair.english);
    const int k = 3 + static_cast<int>(stream.below(3));
    if (eligible.size() <
        static_cast<std::size_t>(k) + config.distractor_count + 2)
      continue;

    std::vector<SentenceRecord> premises;
    try {
      premises = sample_premises(eligible, k, stream.next(), session, 24);
    } catch (const RetryBudgetExhausted&) {
      continue;
    }
    std::set<std::uint64_t> premise_hashes;
    for (const SentenceRecord& p : premises) premise_hashes.insert(p.hash);
    std::vector<SentenceRecord> pool;
    for (const SentenceRecord& r : eligible)
      if (premise_hashes.count(r.hash) == 0) pool.push_back(r);
    stream.shuffle(pool);

    ConclusionResult found;
    try {
      found = find_valid_conclusion(premises, pool, session);
    } catch (const NoConclusionFound&) {
      continue;
    }
    std::vector<FiniteStructure> witnesses;
    std::vector<SentenceRecord> distractors;
    try {
      distractors = build_distractors(premises, &found.conclusion, pool,
                                      config.distractor_count, session, &witnesses);
    } catch (const InsufficientDistractors&) {
      continue;
    }

    // Certify both arguments now; a solver hiccup here retries the attempt
    // rather than shipping an unbacked verdict.
    const std::vector<Formula> pf = formulas_of(premises);
    auto valid_start = std::chrono::steady_clock::now();
    if (session.entails(pf, found.conclusion.formula).answer != Entailed::Yes)
      continue;
    double valid_elapsed = seconds_since(valid_start);
    // The starred distractor becomes a stored invalid argument, whose witness
    // must fit in three elements; the rest may carry any finite witness.
    std::vector<std::size_t> small_enough;
    for (std::size_t i = 0; i < witnesses.size(); ++i)
      if (witnesses[i].domain.size() <= 3) small_enough.push_back(i);
    if (small_enough.empty()) continue;
    const std::size_t starred =
        small_enough[static_cast<std::size_t>(stream.below(small_enough.size()))];
    auto invalid_start = std::chrono::steady_clock::now();
    if (session.entails(pf, distractors[starred].formula).answer != Entailed::No)
      continue;
    double invalid_elapsed = seconds_since(invalid_start);
    if (!check_countermodel(pf, distractors[starred].formula, witnesses[starred])
             .accepted)
      continue;

    ArgumentFamily family;
    for (const SentenceRecord& p : premises)
      family.premises.push_back(*by_english_id.at(p.id));
    family.conclusion = *by_english_id.at(found.conclusion.id);
    for (const SentenceRecord& d : distractors)
      family.distractors.push_back(*by_english_id.at(d.id));
    family.distractor_witnesses = std::move(witnesses);
    family.report = found.report;
    family.countermodel_index = starred;
    family.valid_certificate = stamp_certificate(
        session.backend(), pf, found.conclusion.formula, true, nullptr, valid_elapsed);
    family.invalid_certificate = stamp_certificate(
        session.backend(), pf, distractors[starred].formula, false,
        &family.distractor_witnesses[starred], invalid_elapsed);
    return family;
  }
  throw RetryBudgetExhausted(config.retry_budget);
}

std::vector<std::string> audit_family(const ArgumentFamily& family) {
  std::vector<std::string> problems;
  if (family.premises.size() < 3 || family.premises.size() > 5)
    problems.push_back("premise count out of range");
  if (family.distractors.size() != family.distractor_witnesses.size())
    problems.push_back("distractor and witness counts differ");
  if (family.countermodel_index >= family.distractors.size())
    problems.push_back("countermodel index out of range");

  std::vector<Formula> pf;
  for (const SentencePair& p : family.premises) {
    pf.push_back(p.english.formula);
    if (!equal(p.english.formula, p.carroll.formula))
      problems.push_back("premise counterparts disagree on the formula: " +
                         p.english.id);
  }
  if (!equal(family.conclusion.english.formula, family.conclusion.carroll.formula))
    problems.push_back("conclusion counterparts disagree on the formula");

  std::vector<Formula> refutation = pf;
  refutation.push_back(neg(family.conclusion.english.formula));
  try {
    if (!no_model_up_to(refutation, signature_of(refutation), 3))
      problems.push_back("enumeration found a countermodel to the valid argument");
  } catch (const BoundTooLarge& e) {
    problems.push_back(std::string("signature too wide for the oracle: ") + e.what());
  }

  for (std::size_t i = 0;
       i < family.distractors.size() && i < family.distractor_witnesses.size(); ++i) {
    const SentencePair& d = family.distractors[i];
    if (!equal(d.english.formula, d.carroll.formula))
      problems.push_back("distractor counterparts disagree on the formula: " +
                         d.english.id);
    const FiniteStructure& w = family.distractor_witnesses[i];
    // Only the starred witness backs a stored invalid argument, so only it
    // must fit in three elements; every witness must be genuine.
    if (i == family.countermodel_index && w.domain.size() > 3)
      problems.push_back("starred witness domain larger than 3: " + d.english.id);
    try {
      if (!check_countermodel(pf, d.english.formula, w).accepted)
        problems.push_back("witness fails re-evaluation: " + d.english.id);
    } catch (const EvalError& e) {
      problems.push_back("witness unusable for " + d.english.id + ": " + e.what());
    }
  }
  return problems;
}

}  // namespace fo2
