#include "fo2/lexicon.hpp"

#include <fstream>
#include <sstream>

namespace fo2 {

const char* language_code(Language lang) {
  switch (lang) {
    case Language::English: return "en";
    case Language::Carroll: return "ca";
    case Language::Neutral: return "nt";
  }
  return "?";
}

const char* language_name(Language lang) {
  switch (lang) {
    case Language::English: return "english";
    case Language::Carroll: return "carroll";
    case Language::Neutral: return "neutral";
  }
  return "?";
}

Language language_from(const std::string& text) {
  if (text == "en" || text == "english") return Language::English;
  if (text == "ca" || text == "carroll") return Language::Carroll;
  if (text == "nt" || text == "neutral") return Language::Neutral;
  throw LexiconError("unknown language '" + text + "'");
}

const char* word_kind_name(WordKind kind) {
  switch (kind) {
    case WordKind::Name: return "name";
    case WordKind::Noun: return "noun";
    case WordKind::Adjective: return "adjective";
    case WordKind::Intransitive: return "intransitive";
    case WordKind::Transitive: return "transitive";
  }
  return "?";
}

namespace {

WordKind word_kind_from(const std::string& text, const std::string& where) {
  for (WordKind k : {WordKind::Name, WordKind::Noun, WordKind::Adjective,
                     WordKind::Intransitive, WordKind::Transitive}) {
    if (text == word_kind_name(k)) return k;
  }
  throw LexiconError(where + ": unknown word kind '" + text + "'");
}

// One row of the builtin tables below; "-" marks an unused form, matching
// the file format so the shipped .tsv files and these tables stay diffable.
struct Row {
  const char* kind;
  char symbol;
  const char* base;
  const char* plural;
  const char* past;
  const char* gloss;
};

constexpr Row kEnglishRows[] = {
    {"name", 'a', "Hazel", "-", "-", "Hazel"},
    {"name", 'b', "Lewis", "-", "-", "Lewis"},
    {"name", 'c', "Alfred", "-", "-", "Alfred"},
    {"noun", 'F', "monkey", "monkeys", "-", "[1] is a monkey"},
    {"noun", 'M', "donkey", "donkeys", "-", "[1] is a donkey"},
    {"noun", 'N', "human", "humans", "-", "[1] is a human"},
    {"noun", 'B', "bird", "birds", "-", "[1] is a bird"},
    {"adjective", 'G', "happy", "-", "-", "[1] is happy"},
    {"adjective", 'S', "asleep", "-", "-", "[1] is asleep"},
    {"adjective", 'T', "angry", "-", "-", "[1] is angry"},
    {"intransitive", 'D', "drink", "-", "drank", "[1] will drink"},
    {"intransitive", 'W', "run", "-", "ran", "[1] will run"},
    {"intransitive", 'L', "laugh", "-", "laughed", "[1] will laugh"},
    {"transitive", 'R', "chase", "-", "chased", "[1] chased [2]"},
    {"transitive", 'K', "kick", "-", "kicked", "[1] kicked [2]"},
    {"transitive", 'C', "see", "-", "saw", "[1] saw [2]"},
};

constexpr Row kCarrollRows[] = {
    {"name", 'a', "Bungo", "-", "-", "Bungo"},
    {"name", 'b', "Rafin", "-", "-", "Rafin"},
    {"name", 'c', "Zindle", "-", "-", "Zindle"},
    {"noun", 'F', "rath", "raths", "-", "[1] is a rath"},
    {"noun", 'M', "tove", "toves", "-", "[1] is a tove"},
    {"noun", 'N', "borogove", "borogoves", "-", "[1] is a borogove"},
    {"noun", 'B', "jubjub", "jubjubs", "-", "[1] is a jubjub"},
    {"adjective", 'G', "uffish", "-", "-", "[1] is uffish"},
    {"adjective", 'S', "mimsy", "-", "-", "[1] is mimsy"},
    {"adjective", 'T', "frumious", "-", "-", "[1] is frumious"},
    {"intransitive", 'D', "gyre", "-", "gyred", "[1] will gyre"},
    {"intransitive", 'W', "whiffle", "-", "whiffled", "[1] will whiffle"},
    {"intransitive", 'L', "gimble", "-", "gimbled", "[1] will gimble"},
    {"transitive", 'R', "snicker-snack", "-", "snicker-snacked", "[1] snicker-snacked [2]"},
    {"transitive", 'K', "galumph over", "-", "galumphed over", "[1] galumphed over [2]"},
    {"transitive", 'C', "chortle at", "-", "chortled at", "[1] chortled at [2]"},
};

std::string defield(const std::string& raw) { return raw == "-" ? "" : raw; }

LexEntry entry_from_row(const Row& row) {
  LexEntry e;
  e.kind = word_kind_from(row.kind, "builtin lexicon");
  e.symbol = row.symbol;
  e.base = row.base;
  e.plural = defield(row.plural);
  e.past = defield(row.past);
  e.gloss = row.gloss;
  return e;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

Lexicon Lexicon::builtin(Language lang) {
  if (lang == Language::Neutral) {
    throw LexiconError("no lexicon exists for the neutral language");
  }
  Lexicon lex;
  lex.lang_ = lang;
  const Row* rows = lang == Language::English ? kEnglishRows : kCarrollRows;
  for (std::size_t i = 0; i < std::size(kEnglishRows); ++i) {
    lex.entries_.push_back(entry_from_row(rows[i]));
  }
  lex.index_and_validate();
  return lex;
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError(path + ": cannot open");

  Lexicon lex;
  bool language_seen = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string where = path + ":" + std::to_string(line_no);

    std::vector<std::string> fields = split_tabs(line);
    if (!language_seen) {
      if (fields.size() != 2 || fields[0] != "language") {
        throw LexiconError(where + ": expected 'language<TAB><name>' first");
      }
      lex.lang_ = language_from(fields[1]);
      language_seen = true;
      continue;
    }
    if (fields.size() != 6) {
      throw LexiconError(where + ": expected 6 tab-separated fields, got " +
                         std::to_string(fields.size()));
    }
    LexEntry e;
    e.kind = word_kind_from(fields[0], where);
    if (fields[1].size() != 1) {
      throw LexiconError(where + ": symbol must be a single character");
    }
    e.symbol = fields[1][0];
    e.base = fields[2];
    e.plural = defield(fields[3]);
    e.past = defield(fields[4]);
    e.gloss = fields[5];
    lex.entries_.push_back(e);
  }
  if (!language_seen) throw LexiconError(path + ": missing language line");
  lex.index_and_validate();
  return lex;
}

const LexEntry& Lexicon::entry(char symbol) const {
  auto it = by_symbol_.find(symbol);
  if (it == by_symbol_.end()) {
    throw LexiconError(std::string("no entry for symbol '") + symbol + "'");
  }
  return entries_[it->second];
}

const std::vector<char>& Lexicon::symbols(WordKind kind) const {
  return by_kind_[static_cast<std::size_t>(kind)];
}

Signature Lexicon::signature() const {
  Signature sig;
  for (const LexEntry& e : entries_) {
    switch (e.kind) {
      case WordKind::Name: sig.constants.insert(e.symbol); break;
      case WordKind::Transitive: sig.binary.insert(e.symbol); break;
      default: sig.unary.insert(e.symbol); break;
    }
  }
  return sig;
}

void Lexicon::index_and_validate() {
  std::map<std::string, char> word_owner;
  std::size_t names = 0;
  std::size_t predicates = 0;

  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const LexEntry& e = entries_[i];
    std::string who = std::string("entry '") + e.symbol + "' (" + e.base + ")";

    if (e.kind == WordKind::Name) {
      ++names;
      if (e.symbol < 'a' || e.symbol > 'z' || e.symbol == 'x' || e.symbol == 'y') {
        throw LexiconError(who + ": name symbols are lowercase letters other than x/y");
      }
    } else {
      ++predicates;
      if (e.symbol < 'A' || e.symbol > 'Z' || e.symbol == 'A' || e.symbol == 'E') {
        throw LexiconError(who + ": predicate symbols are uppercase letters other than A/E");
      }
    }

    if (!by_symbol_.emplace(e.symbol, i).second) {
      throw LexiconError(who + ": symbol assigned twice");
    }
    if (e.base.empty()) throw LexiconError(who + ": empty word");
    if (!word_owner.emplace(e.base, e.symbol).second) {
      throw LexiconError(who + ": word also mapped to '" +
                         std::string(1, word_owner[e.base]) + "'");
    }

    bool wants_plural = e.kind == WordKind::Noun;
    bool wants_past = e.kind == WordKind::Intransitive || e.kind == WordKind::Transitive;
    if (wants_plural != !e.plural.empty()) {
      throw LexiconError(who + (wants_plural ? ": missing plural form"
                                             : ": plural form not applicable"));
    }
    if (wants_past != !e.past.empty()) {
      throw LexiconError(who + (wants_past ? ": missing past form"
                                           : ": past form not applicable"));
    }

    if (e.gloss.empty()) throw LexiconError(who + ": missing gloss");
    bool has1 = e.gloss.find("[1]") != std::string::npos;
    bool has2 = e.gloss.find("[2]") != std::string::npos;
    if (e.kind == WordKind::Name) {
      if (has1 || has2) throw LexiconError(who + ": name glosses take no placeholders");
    } else if (e.kind == WordKind::Transitive) {
      if (!has1 || !has2) throw LexiconError(who + ": transitive gloss needs [1] and [2]");
    } else {
      if (!has1 || has2) throw LexiconError(who + ": unary gloss needs [1] only");
    }

    by_kind_[static_cast<std::size_t>(e.kind)].push_back(e.symbol);
  }

  if (names != 3) {
    throw LexiconError("expected exactly 3 names, got " + std::to_string(names));
  }
  if (predicates != 13) {
    throw LexiconError("expected exactly 13 predicates, got " + std::to_string(predicates));
  }
}

}  // namespace fo2
