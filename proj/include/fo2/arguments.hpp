// ============================================================================
// fo2/arguments.hpp — argument assembly with machine-checked certificates
// ============================================================================
//
// Builds multi-premise arguments out of corpus sentences.  A valid argument
// couples 3 to 5 jointly satisfiable premises with a conclusion they entail;
// an invalid one couples the same premises with a conclusion they do not,
// plus a small finite structure witnessing the gap.  Every verdict comes
// from the solver, and the certificate stapled to an argument records which
// queries were asked and how they came out.
//
// Triviality filters keep the entailments earned:
//
//   * theorems (entailed by the empty premise set) are rejected;
//   * conclusions the domain-partition premises entail on their own are
//     rejected, so "everything is exclusively one of three kinds" can never
//     do all the work;
//   * for 5-premise arguments, conclusions any single premise entails are
//     rejected (no subset of at most a fifth of the premises may suffice;
//     for 3 or 4 premises the only such subset is the empty set, which the
//     theorem filter already covers);
//   * candidate conclusions and distractors must stay within the premises'
//     symbol inventory, which both keeps them on topic and keeps the joint
//     signature small enough for the enumeration oracle to audit.
//
// The nontriviality report quantifies the outcome: its fraction is the size
// of the smallest premise subset that still entails the conclusion, divided
// by the premise count, found by exhaustive subset sweep (premise counts
// are tiny).  Admitted arguments always score above 0.2.
//
// Verification fails closed throughout.  A solver "unknown", a missing or
// corrupted witness, or an unresolvable sentence id never degrades into a
// guess; it surfaces as CertificationFailed or skips the candidate.
// ============================================================================

#ifndef FO2_ARGUMENTS_HPP
#define FO2_ARGUMENTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo2/corpus.hpp"
#include "fo2/lexicon.hpp"
#include "fo2/schema.hpp"
#include "fo2/solver.hpp"
#include "fo2/structure.hpp"

namespace fo2 {

// Which queries backed a verdict.  The digest fingerprints everything except
// elapsed_seconds, so re-certifying the same argument with the same backend
// reproduces it bit for bit no matter how long the solver took.
struct Certificate {
  std::string backend;
  std::vector<std::string> query_hashes;  // premise hashes in order, then conclusion
  std::string verdict;                    // "entailed" or "non-entailed"
  double elapsed_seconds = 0;
  std::string digest;
};

struct NontrivialityReport {
  bool is_theorem = false;
  bool from_domain_constraints_only = false;
  // |smallest entailing premise subset| / |premises|, in (0, 1].
  double smallest_entailing_subset_fraction = 1.0;
};

struct Argument {
  std::string id;                        // assigned by the store; empty until then
  std::vector<std::string> premise_ids;  // 3 to 5 sentence ids, all one language
  std::string conclusion_id;
  bool valid = true;
  Language language = Language::English;
  Certificate certificate;
  std::optional<FiniteStructure> witness;  // countermodel; present iff not valid
};

class RetryBudgetExhausted : public std::runtime_error {
 public:
  explicit RetryBudgetExhausted(int attempt_count);
  int attempts;
};

class NoConclusionFound : public std::runtime_error {
 public:
  explicit NoConclusionFound(std::size_t pool_size);
};

class InsufficientDistractors : public std::runtime_error {
 public:
  InsufficientDistractors(std::size_t found_count, std::size_t requested_count);
  std::size_t found;
  std::size_t requested;
};

class CertificationFailed : public std::runtime_error {
 public:
  explicit CertificationFailed(const std::string& reason);
};

// Draws k (3 to 5) distinct sentences whose formulas the solver certifies as
// jointly satisfiable.  Each retry rolls a fresh draw from its own derived
// stream; after retry_budget failed draws, throws RetryBudgetExhausted.
std::vector<SentenceRecord> sample_premises(const std::vector<SentenceRecord>& corpus,
                                            int k, std::uint64_t seed,
                                            SolverSession& session,
                                            int retry_budget = 64);

struct ConclusionResult {
  SentenceRecord conclusion;
  NontrivialityReport report;
};

// First pool member (in pool order) that the premises entail and that clears
// every triviality filter listed in the banner.  Works for any non-empty
// premise list (the subset cap is |premises| / 5, so below five premises
// only the theorem filter bites); stored arguments pin the count to 3 to 5
// at sampling and certification time.  Throws NoConclusionFound when the
// pool has no admissible member.
ConclusionResult find_valid_conclusion(const std::vector<SentenceRecord>& premises,
                                       const std::vector<SentenceRecord>& pool,
                                       SolverSession& session);

// Picks n pool members the premises provably do not entail, each carrying a
// solver-extracted countermodel (re-checked by direct evaluation; sizes are
// capped by the session's witness bound) and pairwise non-equivalent.
// Candidates sharing the conclusion's sentence type come first, then those
// sharing more of its symbols.  Pass conclusion = nullptr when no valid
// conclusion constrains the choice (the symbol rules then fall back to the
// premises alone).  When witnesses is non-null it receives one countermodel
// per returned distractor, in step.
std::vector<SentenceRecord> build_distractors(const std::vector<SentenceRecord>& premises,
                                              const SentenceRecord* conclusion,
                                              const std::vector<SentenceRecord>& pool,
                                              std::size_t n, SolverSession& session,
                                              std::vector<FiniteStructure>* witnesses = nullptr);

using SentenceResolver = std::function<const SentenceRecord&(const std::string& id)>;

// Re-runs the entailment behind an argument and re-evaluates its witness,
// then returns a copy carrying a fresh certificate.  Any mismatch with the
// stored validity, an unknown solver verdict, a missing or failing witness,
// or an unresolvable id throws CertificationFailed.
Argument certify_argument(const Argument& argument, const SentenceResolver& resolve,
                          SolverSession& session);

// One argument family: shared premises, the entailed conclusion, and the
// distractor slate, all as counterpart pairs so either language can be
// rendered.  distractor_witnesses runs in step with distractors; the member
// at countermodel_index stars as the stored invalid argument's conclusion
// and is always backed by a witness of at most three elements.
struct ArgumentFamily {
  std::vector<SentencePair> premises;
  SentencePair conclusion;
  std::vector<SentencePair> distractors;
  std::vector<FiniteStructure> distractor_witnesses;
  NontrivialityReport report;
  std::size_t countermodel_index = 0;
  Certificate valid_certificate;    // premises entail the conclusion
  Certificate invalid_certificate;  // premises do not entail the starred distractor
};

struct FamilyConfig {
  std::size_t distractor_count = 5;
  // Full assembly attempts (palette, premises, conclusion, distractors)
  // before giving up on this family index.
  int retry_budget = 40;
};

// Assembles one family from the corpus.  Each attempt draws a small symbol
// palette (three unary predicates, one binary, two names), restricts the
// corpus to sentences inside it, and runs the sample/conclude/distract
// pipeline; palettes keep every family inside the enumeration oracle's
// default budget at domain size 3.  Deterministic in (seed, family_index):
// worker scheduling cannot change what any family sees.  One caveat: the
// solver's verdicts are stable, but the models it prints drift with the
// context's earlier queries, so byte-identical witnesses call for a session
// with no prior history (generation dedicates a fresh one per family).
// Throws RetryBudgetExhausted when no attempt survives every filter.
ArgumentFamily build_family(const std::vector<SentencePair>& corpus,
                            const Lexicon& english, std::uint64_t seed,
                            std::uint64_t family_index, SolverSession& session,
                            const FamilyConfig& config = {});

// Solver-free cross-checks on an assembled family: the enumeration oracle
// finds no countermodel to the valid argument at domain sizes 1 to 3, every
// distractor witness re-evaluates as a genuine countermodel (the starred
// one within three elements), counterpart records agree on their formulas,
// and the counts are in range.  Returns human-readable problems; empty
// means the audit passed.
std::vector<std::string> audit_family(const ArgumentFamily& family);

}  // namespace fo2

#endif
