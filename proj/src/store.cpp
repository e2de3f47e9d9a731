#include "fo2/store.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include "fo2/parse.hpp"
#include "fo2/print.hpp"
#include "fo2/structure_io.hpp"
#include "json.hpp"

namespace fo2 {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string counted_id(char prefix, std::size_t ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%06zu", prefix, ordinal);
  return buf;
}

Formula parse_stored_formula(const std::string& text, const std::string& where) {
  try {
    return parse(text, Dialect::Strict);
  } catch (const ParseError&) {
    throw std::invalid_argument(where + ": stored formula unreadable: " + text);
  } catch (const FragmentError&) {
    throw std::invalid_argument(where + ": stored formula outside the fragment: " + text);
  }
}

ordered_json soa_json(const std::map<char, std::string>& soa) {
  ordered_json out = ordered_json::object();
  for (const auto& [symbol, gloss] : soa) out[std::string(1, symbol)] = gloss;
  return out;
}

std::map<char, std::string> soa_from_json(const ordered_json& j, const std::string& where) {
  std::map<char, std::string> out;
  for (const auto& [key, gloss] : j.items()) {
    if (key.size() != 1) throw std::invalid_argument(where + ": bad key symbol " + key);
    out[key[0]] = gloss.get<std::string>();
  }
  return out;
}

ordered_json certificate_json(const Certificate& cert) {
  return ordered_json{{"backend", cert.backend},
                      {"query_hashes", cert.query_hashes},
                      {"verdict", cert.verdict},
                      {"elapsed_seconds", cert.elapsed_seconds},
                      {"digest", cert.digest}};
}

Certificate certificate_from_json(const ordered_json& j) {
  Certificate cert;
  cert.backend = j.at("backend").get<std::string>();
  cert.query_hashes = j.at("query_hashes").get<std::vector<std::string>>();
  cert.verdict = j.at("verdict").get<std::string>();
  cert.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  cert.digest = j.at("digest").get<std::string>();
  return cert;
}

FiniteStructure witness_from_text(const std::string& text,
                                  const std::vector<Formula>& refuted,
                                  const std::string& where) {
  RawStructure raw = parse_structure_text(text);
  ResolveOutcome out = resolve_structure(raw, signature_of(refuted), {0, 1, 2});
  if (out.status != ResolveOutcome::Status::Ok) {
    throw std::invalid_argument(where + ": stored witness unusable: " + out.message);
  }
  return out.structure;
}

}  // namespace

// ---------------------------------------------------------------------------
// row codecs
// ---------------------------------------------------------------------------

std::string sentence_row(const SentenceRecord& rec) {
  ordered_json j{{"id", rec.id},
                 {"surface", rec.surface},
                 {"soa", soa_json(rec.soa)},
                 {"formula", print(rec.formula, PrintStyle::Ascii)},
                 {"type", schema_type_name(rec.type)},
                 {"language", language_name(rec.language)},
                 {"counterpart", rec.counterpart_id}};
  return j.dump();
}

SentenceRecord parse_sentence_row(const std::string& line) {
  try {
    ordered_json j = ordered_json::parse(line);
    SentenceRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.surface = j.at("surface").get<std::string>();
    rec.soa = soa_from_json(j.at("soa"), "sentence row");
    rec.formula = parse_stored_formula(j.at("formula").get<std::string>(), "sentence row");
    rec.hash = ast_hash(rec.formula);
    rec.type = schema_type_from_name(j.at("type").get<std::string>());
    rec.language = language_from(j.at("language").get<std::string>());
    rec.counterpart_id = j.at("counterpart").get<std::string>();
    return rec;
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("sentence row: not a valid record: " + line);
  }
}

std::string family_row(const FamilyRecord& rec) {
  const ArgumentFamily& fam = rec.family;
  ordered_json premises = ordered_json::array();
  for (const SentencePair& p : fam.premises) premises.push_back(p.english.id);
  ordered_json distractors = ordered_json::array();
  ordered_json witnesses = ordered_json::array();
  for (std::size_t i = 0; i < fam.distractors.size(); ++i) {
    distractors.push_back(fam.distractors[i].english.id);
    witnesses.push_back(to_required_format(fam.distractor_witnesses[i]));
  }
  ordered_json j{
      {"id", rec.id},
      {"premises", premises},
      {"conclusion", fam.conclusion.english.id},
      {"distractors", distractors},
      {"witnesses", witnesses},
      {"countermodel_index", fam.countermodel_index},
      {"report",
       ordered_json{{"is_theorem", fam.report.is_theorem},
                    {"from_domain_constraints_only", fam.report.from_domain_constraints_only},
                    {"smallest_entailing_subset_fraction",
                     fam.report.smallest_entailing_subset_fraction}}},
      {"valid_certificate", certificate_json(fam.valid_certificate)},
      {"invalid_certificate", certificate_json(fam.invalid_certificate)}};
  return j.dump();
}

FamilyRecord parse_family_row(
    const std::string& line,
    const std::function<const SentencePair&(const std::string&)>& pair_of) {
  try {
    ordered_json j = ordered_json::parse(line);
    FamilyRecord rec;
    rec.id = j.at("id").get<std::string>();
    ArgumentFamily& fam = rec.family;
    for (const auto& id : j.at("premises")) {
      fam.premises.push_back(pair_of(id.get<std::string>()));
    }
    fam.conclusion = pair_of(j.at("conclusion").get<std::string>());
    const auto& distractors = j.at("distractors");
    const auto& witnesses = j.at("witnesses");
    if (distractors.size() != witnesses.size()) {
      throw std::invalid_argument("family row: distractor and witness counts differ");
    }
    std::vector<Formula> premise_formulas;
    for (const SentencePair& p : fam.premises) premise_formulas.push_back(p.english.formula);
    for (std::size_t i = 0; i < distractors.size(); ++i) {
      fam.distractors.push_back(pair_of(distractors[i].get<std::string>()));
      std::vector<Formula> refuted = premise_formulas;
      refuted.push_back(fam.distractors.back().english.formula);
      fam.distractor_witnesses.push_back(
          witness_from_text(witnesses[i].get<std::string>(), refuted, "family row"));
    }
    fam.countermodel_index = j.at("countermodel_index").get<std::size_t>();
    if (fam.countermodel_index >= fam.distractors.size()) {
      throw std::invalid_argument("family row: countermodel_index out of range");
    }
    const auto& report = j.at("report");
    fam.report.is_theorem = report.at("is_theorem").get<bool>();
    fam.report.from_domain_constraints_only =
        report.at("from_domain_constraints_only").get<bool>();
    fam.report.smallest_entailing_subset_fraction =
        report.at("smallest_entailing_subset_fraction").get<double>();
    fam.valid_certificate = certificate_from_json(j.at("valid_certificate"));
    fam.invalid_certificate = certificate_from_json(j.at("invalid_certificate"));
    return rec;
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("family row: not a valid record: " + line);
  }
}

std::string response_row(const ResponseRecord& rec) {
  ordered_json j{{"id", rec.id},
                 {"task", rec.task_id},
                 {"model", rec.model},
                 {"text", rec.text},
                 {"elapsed_seconds", rec.elapsed_seconds},
                 {"attempts", rec.attempts}};
  return j.dump();
}

ResponseRecord parse_response_row(const std::string& line) {
  try {
    ordered_json j = ordered_json::parse(line);
    ResponseRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.task_id = j.at("task").get<std::string>();
    rec.model = j.at("model").get<std::string>();
    rec.text = j.at("text").get<std::string>();
    rec.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    rec.attempts = j.at("attempts").get<int>();
    return rec;
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("response row: not a valid record: " + line);
  }
}

std::string verdict_row(const VerdictRecord& rec) {
  ordered_json j{{"id", rec.id},
                 {"response", rec.response_id},
                 {"task", rec.task_id},
                 {"model", rec.model},
                 {"kind", task_kind_name(rec.kind)},
                 {"language", language_name(rec.language)},
                 {"correct", rec.correct},
                 {"category", rec.category},
                 {"detail", rec.detail}};
  return j.dump();
}

VerdictRecord parse_verdict_row(const std::string& line) {
  try {
    ordered_json j = ordered_json::parse(line);
    VerdictRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.response_id = j.at("response").get<std::string>();
    rec.task_id = j.at("task").get<std::string>();
    rec.model = j.at("model").get<std::string>();
    rec.kind = task_kind_from(j.at("kind").get<std::string>());
    rec.language = language_from(j.at("language").get<std::string>());
    rec.correct = j.at("correct").get<bool>();
    rec.category = j.at("category").get<std::string>();
    rec.detail = j.at("detail").get<std::string>();
    return rec;
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("verdict row: not a valid record: " + line);
  }
}

// ---------------------------------------------------------------------------
// RecordStore
// ---------------------------------------------------------------------------

RecordStore::RecordStore(const std::string& directory) : directory_(directory) {
  std::filesystem::create_directories(directory_);
  load();
}

void RecordStore::load() {
  auto each_line = [&](const char* table, const std::function<void(const std::string&)>& take) {
    std::filesystem::path path = std::filesystem::path(directory_) / table;
    std::ifstream in(path);
    if (!in.good()) return;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      try {
        take(line);
      } catch (const std::invalid_argument& e) {
        throw StoreError(path.string() + ":" + std::to_string(number) + ": " + e.what());
      }
    }
  };

  // Sentences arrive as flat records; pairs are stitched back together by
  // following counterpart links, keeping the English record's file order.
  std::map<std::string, SentenceRecord> loose;
  std::vector<std::string> english_order;
  each_line("sentences.jsonl", [&](const std::string& line) {
    SentenceRecord rec = parse_sentence_row(line);
    if (rec.language == Language::English) english_order.push_back(rec.id);
    if (!loose.emplace(rec.id, std::move(rec)).second) {
      throw std::invalid_argument("duplicate sentence id");
    }
  });
  for (const std::string& id : english_order) {
    const SentenceRecord& english = loose.at(id);
    auto counterpart = loose.find(english.counterpart_id);
    if (counterpart == loose.end()) {
      throw StoreError("sentences.jsonl: " + id + " has no counterpart record " +
                       english.counterpart_id);
    }
    index_pair(SentencePair{english, counterpart->second});
  }
  if (pairs_.size() * 2 != loose.size()) {
    throw StoreError("sentences.jsonl: " + std::to_string(loose.size()) +
                     " records do not stitch into language pairs");
  }

  each_line("arguments.jsonl", [&](const std::string& line) {
    families_.push_back(parse_family_row(
        line, [&](const std::string& id) -> const SentencePair& {
          auto slot = sentence_index_.find(id);
          if (slot == sentence_index_.end() || pairs_[slot->second].english.id != id) {
            throw std::invalid_argument("unknown English sentence id " + id);
          }
          return pairs_[slot->second];
        }));
  });
  each_line("tasks.jsonl", [&](const std::string& line) {
    task_index_.emplace(parse_task_line(line).id, tasks_.size());
    tasks_.push_back(parse_task_line(line));
  });
  each_line("responses.jsonl", [&](const std::string& line) {
    ResponseRecord rec = parse_response_row(line);
    response_index_.emplace(rec.task_id + "\x1f" + rec.model, responses_.size());
    responses_.push_back(std::move(rec));
  });
  each_line("verdicts.jsonl", [&](const std::string& line) {
    VerdictRecord rec = parse_verdict_row(line);
    verdict_by_response_.emplace(rec.response_id, verdicts_.size());
    verdicts_.push_back(std::move(rec));
  });
}

void RecordStore::append_line(const std::string& table, const std::string& line) {
  std::filesystem::path path = std::filesystem::path(directory_) / table;
  std::ofstream out(path, std::ios::app);
  out << line << '\n';
  out.flush();
  if (!out.good()) throw StoreError("cannot append to " + path.string());
}

void RecordStore::index_pair(const SentencePair& pair) {
  sentence_index_.emplace(pair.english.id, pairs_.size());
  sentence_index_.emplace(pair.carroll.id, pairs_.size());
  pairs_.push_back(pair);
}

const SentenceRecord& RecordStore::sentence(const std::string& id) const {
  auto slot = sentence_index_.find(id);
  if (slot == sentence_index_.end()) throw StoreError("no sentence " + id);
  const SentencePair& pair = pairs_[slot->second];
  return pair.english.id == id ? pair.english : pair.carroll;
}

const TaskItem& RecordStore::task(const std::string& id) const {
  auto slot = task_index_.find(id);
  if (slot == task_index_.end()) throw StoreError("no task " + id);
  return tasks_[slot->second];
}

bool RecordStore::has_response(const std::string& task_id, const std::string& model) const {
  return response_index_.count(task_id + "\x1f" + model) > 0;
}

bool RecordStore::has_verdict(const std::string& response_id) const {
  return verdict_by_response_.count(response_id) > 0;
}

void RecordStore::put_pair(const SentencePair& pair) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  if (pair.english.language != Language::English ||
      pair.carroll.language != Language::Carroll) {
    throw StoreError("pair languages must be English and Carroll, in that order");
  }
  if (pair.english.counterpart_id != pair.carroll.id ||
      pair.carroll.counterpart_id != pair.english.id) {
    throw StoreError("pair counterpart links do not match: " + pair.english.id);
  }
  if (sentence_index_.count(pair.english.id) || sentence_index_.count(pair.carroll.id)) {
    throw StoreError("duplicate sentence id " + pair.english.id);
  }
  append_line("sentences.jsonl", sentence_row(pair.english));
  append_line("sentences.jsonl", sentence_row(pair.carroll));
  index_pair(pair);
}

std::string RecordStore::put_family(const ArgumentFamily& family) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  FamilyRecord rec{counted_id('a', families_.size() + 1), family};
  append_line("arguments.jsonl", family_row(rec));
  families_.push_back(rec);
  return rec.id;
}

void RecordStore::put_task(const TaskItem& task) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  if (task.id.empty()) throw StoreError("task has no id");
  if (task_index_.count(task.id)) throw StoreError("duplicate task id " + task.id);
  append_line("tasks.jsonl", task_line(task));
  task_index_.emplace(task.id, tasks_.size());
  tasks_.push_back(task);
}

std::string RecordStore::put_response(ResponseRecord record) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  record.id = counted_id('r', responses_.size() + 1);
  append_line("responses.jsonl", response_row(record));
  response_index_.emplace(record.task_id + "\x1f" + record.model, responses_.size());
  std::string id = record.id;
  responses_.push_back(std::move(record));
  return id;
}

std::string RecordStore::put_verdict(VerdictRecord record) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  record.id = counted_id('v', verdicts_.size() + 1);
  append_line("verdicts.jsonl", verdict_row(record));
  verdict_by_response_.emplace(record.response_id, verdicts_.size());
  std::string id = record.id;
  verdicts_.push_back(std::move(record));
  return id;
}

std::vector<std::string> RecordStore::check_integrity() const {
  std::vector<std::string> problems;
  auto sentence_exists = [&](const std::string& id) {
    return sentence_index_.count(id) > 0;
  };

  for (const SentencePair& pair : pairs_) {
    if (pair.english.counterpart_id != pair.carroll.id ||
        pair.carroll.counterpart_id != pair.english.id) {
      problems.push_back("pair " + pair.english.id + ": counterpart links broken");
    }
  }
  for (const FamilyRecord& rec : families_) {
    auto check_ref = [&](const std::string& role, const std::string& id) {
      if (!sentence_exists(id)) {
        problems.push_back(rec.id + ": " + role + " " + id + " not in sentence table");
      }
    };
    for (const SentencePair& p : rec.family.premises) check_ref("premise", p.english.id);
    check_ref("conclusion", rec.family.conclusion.english.id);
    for (const SentencePair& d : rec.family.distractors) check_ref("distractor", d.english.id);
  }
  for (const ResponseRecord& rec : responses_) {
    if (!task_index_.count(rec.task_id)) {
      problems.push_back(rec.id + ": task " + rec.task_id + " not in task table");
    }
  }
  for (const VerdictRecord& rec : verdicts_) {
    auto response = std::find_if(responses_.begin(), responses_.end(),
                                 [&](const ResponseRecord& r) { return r.id == rec.response_id; });
    if (response == responses_.end()) {
      problems.push_back(rec.id + ": response " + rec.response_id + " not in response table");
      continue;
    }
    if (response->model != rec.model) {
      problems.push_back(rec.id + ": model disagrees with response " + rec.response_id);
    }
    auto slot = task_index_.find(rec.task_id);
    if (slot == task_index_.end()) {
      problems.push_back(rec.id + ": task " + rec.task_id + " not in task table");
      continue;
    }
    const TaskItem& task = tasks_[slot->second];
    if (task.kind != rec.kind || task.language != rec.language) {
      problems.push_back(rec.id + ": kind or language disagrees with task " + rec.task_id);
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------
// reporting
// ---------------------------------------------------------------------------

std::vector<ReportRow> build_report(const std::vector<VerdictRecord>& verdicts) {
  std::map<std::tuple<std::string, int, int>, ReportRow> rows;
  for (const VerdictRecord& v : verdicts) {
    auto key = std::make_tuple(v.model, int(v.kind), int(v.language));
    ReportRow& row = rows[key];
    row.model = v.model;
    row.kind = v.kind;
    row.language = v.language;
    row.total += 1;
    if (v.correct) {
      row.correct += 1;
    } else {
      row.histogram[v.category] += 1;
    }
  }
  std::vector<ReportRow> out;
  for (auto& [key, row] : rows) out.push_back(std::move(row));
  return out;
}

std::string render_report(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-20s %-14s %-9s %7s %8s %9s\n", "model", "task",
                "language", "total", "correct", "accuracy");
  out << buf;
  out << std::string(72, '-') << '\n';
  for (const ReportRow& row : rows) {
    std::size_t errors = 0;
    for (const auto& [category, count] : row.histogram) errors += count;
    if (row.correct + errors != row.total) {
      throw StoreError("report row violates conservation for model " + row.model);
    }
    std::snprintf(buf, sizeof buf, "%-20s %-14s %-9s %7zu %8zu %9.3f\n", row.model.c_str(),
                  task_kind_name(row.kind), language_name(row.language), row.total,
                  row.correct, row.accuracy());
    out << buf;
    for (const auto& [category, count] : row.histogram) {
      std::snprintf(buf, sizeof buf, "    %6zu (%5.1f%%)  %s\n", count,
                    100.0 * double(count) / double(errors), category.c_str());
      out << buf;
    }
  }
  return out.str();
}

std::string report_json(const std::vector<ReportRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const ReportRow& row : rows) {
    ordered_json histogram = ordered_json::object();
    for (const auto& [category, count] : row.histogram) histogram[category] = count;
    out.push_back(ordered_json{{"model", row.model},
                               {"kind", task_kind_name(row.kind)},
                               {"language", language_name(row.language)},
                               {"total", row.total},
                               {"correct", row.correct},
                               {"accuracy", row.accuracy()},
                               {"histogram", histogram}});
  }
  return out.dump(2);
}

}  // namespace fo2
