// ============================================================================
// fo2/store.hpp — append-only record store and result reporting
// ============================================================================
//
// Persistence for the whole pipeline: five JSONL tables under one directory,
// each keyed by id and only ever appended to.
//
//   sentences.jsonl   one realized sentence per line (both languages)
//   arguments.jsonl   one argument family per line, premises by sentence id
//   tasks.jsonl       evaluation items, via task_line / parse_task_line
//   responses.jsonl   raw model output, stored verbatim before any parsing
//   verdicts.jsonl    grading outcomes, denormalized for reporting
//
// The store keeps every table in memory (the shipped dataset is a few
// thousand rows) and writes each appended record through to disk before
// returning, so an interrupted run leaves a loadable prefix and a resumed
// run can skip what is already present.  Appends serialize through one
// internal mutex: concurrent workers hand finished records to the store
// one at a time.  Reads after loading need no lock; callers that mix
// appending and reading coordinate through the run loop, which they
// already do.
//
// Referential integrity is checked on demand, not on load: check_integrity
// verifies that family premises, conclusions, and distractors resolve to
// stored sentences, counterpart links land on the opposite language, and
// verdicts point at stored responses and tasks.  Loading tolerates a store
// with missing tables (a generate-only directory has no responses yet).
//
// Report aggregation lives here too, because it reads only the verdict
// table: one row per (model, task kind, language) with an accuracy figure
// and a histogram over error categories.  Every row obeys the conservation
// law total = correct + sum(histogram); build_report cannot produce a row
// that violates it, and render_report recomputes the sum as a guard.
// ============================================================================

#ifndef FO2_STORE_HPP
#define FO2_STORE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo2/arguments.hpp"
#include "fo2/corpus.hpp"
#include "fo2/tasks.hpp"

namespace fo2 {

// An assembled family plus its table key (a%06zu, assigned on append).
struct FamilyRecord {
  std::string id;
  ArgumentFamily family;
};

// One raw model completion.  text is byte-for-byte what the endpoint
// returned; attempts counts requests actually issued, retries included.
struct ResponseRecord {
  std::string id;  // r%06zu, assigned on append
  std::string task_id;
  std::string model;
  std::string text;
  double elapsed_seconds = 0;
  int attempts = 1;
};

// One graded response.  Kind, language, and model are copied in from the
// task and response so reports aggregate from this table alone.
struct VerdictRecord {
  std::string id;  // v%06zu, assigned on append
  std::string response_id;
  std::string task_id;
  std::string model;
  TaskKind kind = TaskKind::Symbolization;
  Language language = Language::English;
  bool correct = false;
  std::string category;
  std::string detail;
};

class StoreError : public std::runtime_error {
 public:
  explicit StoreError(const std::string& what) : std::runtime_error(what) {}
};

class RecordStore {
 public:
  // Opens (creating the directory if needed) and loads every table that
  // exists.  Malformed lines throw StoreError naming the file and line.
  explicit RecordStore(const std::string& directory);

  const std::string& directory() const { return directory_; }

  const std::vector<SentencePair>& pairs() const { return pairs_; }
  const std::vector<FamilyRecord>& families() const { return families_; }
  const std::vector<TaskItem>& tasks() const { return tasks_; }
  const std::vector<ResponseRecord>& responses() const { return responses_; }
  const std::vector<VerdictRecord>& verdicts() const { return verdicts_; }

  // Lookups by id; throw StoreError when absent.
  const SentenceRecord& sentence(const std::string& id) const;
  const TaskItem& task(const std::string& id) const;

  // Resume support: has the task already been answered by this model, and
  // has the response already been graded?
  bool has_response(const std::string& task_id, const std::string& model) const;
  bool has_verdict(const std::string& response_id) const;

  // Appenders.  Each writes the serialized line to disk and flushes before
  // returning; the ones returning a string assign and return the record id.
  void put_pair(const SentencePair& pair);
  std::string put_family(const ArgumentFamily& family);
  void put_task(const TaskItem& task);
  std::string put_response(ResponseRecord record);
  std::string put_verdict(VerdictRecord record);

  // Cross-table reference checks; empty means consistent.
  std::vector<std::string> check_integrity() const;

 private:
  void load();
  void append_line(const std::string& table, const std::string& line);
  void index_pair(const SentencePair& pair);

  std::string directory_;
  std::mutex write_mutex_;
  std::vector<SentencePair> pairs_;
  std::vector<FamilyRecord> families_;
  std::vector<TaskItem> tasks_;
  std::vector<ResponseRecord> responses_;
  std::vector<VerdictRecord> verdicts_;
  std::map<std::string, std::size_t> sentence_index_;  // id -> pairs_ slot
  std::map<std::string, std::size_t> task_index_;
  std::map<std::string, std::size_t> response_index_;
  std::map<std::string, std::size_t> verdict_by_response_;
};

// Row codecs, one JSON object per line.  parse_* throw std::invalid_argument
// on malformed input.  Families serialize sentences by id, so parsing one
// needs a resolver from an English sentence id to its stored pair.
std::string sentence_row(const SentenceRecord& rec);
SentenceRecord parse_sentence_row(const std::string& line);
std::string family_row(const FamilyRecord& rec);
FamilyRecord parse_family_row(
    const std::string& line,
    const std::function<const SentencePair&(const std::string&)>& pair_of);
std::string response_row(const ResponseRecord& rec);
ResponseRecord parse_response_row(const std::string& line);
std::string verdict_row(const VerdictRecord& rec);
VerdictRecord parse_verdict_row(const std::string& line);

// One aggregate line of the final report.  The histogram covers error
// categories only; correct answers are counted in `correct`.
struct ReportRow {
  std::string model;
  TaskKind kind = TaskKind::Symbolization;
  Language language = Language::English;
  std::size_t total = 0;
  std::size_t correct = 0;
  std::map<std::string, std::size_t> histogram;

  double accuracy() const {
    return total == 0 ? 0.0 : double(correct) / double(total);
  }
};

// Aggregates verdicts into rows sorted by model, then kind, then language.
std::vector<ReportRow> build_report(const std::vector<VerdictRecord>& verdicts);

// Plain-text table with per-category error percentages, and the same data
// as a JSON array for downstream tooling.
std::string render_report(const std::vector<ReportRow>& rows);
std::string report_json(const std::vector<ReportRow>& rows);

}  // namespace fo2

#endif
