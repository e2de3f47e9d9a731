// Bilingual word lists backing the sentence generator.
//
// A lexicon maps single-character logical symbols to words of one surface
// language: 3 proper names to constants and 13 predicates to nouns,
// adjectives, and verbs.  The two shipped languages (controlled English and
// a Carroll-style nonce vocabulary) use the same symbol inventory, so a
// sentence and its other-language counterpart share one formula.
//
// Inflected forms (plural, past) are stored per entry rather than derived
// by rule: nonce words do not decline predictably, and the English list is
// small enough to spell out.  Each entry also carries the gloss string used
// in symbolization keys, with "[1]"/"[2]" marking argument positions.

#ifndef FO2_LEXICON_HPP
#define FO2_LEXICON_HPP

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo2/formula.hpp"

namespace fo2 {

// Neutral marks language-independent artifacts (countermodel tasks work on
// bare formulas); no lexicon exists for it.
enum class Language { English, Carroll, Neutral };

// Short tag used in record ids and file names ("en"/"ca").
const char* language_code(Language lang);
// Full lowercase name used in stored records and lexicon files.
const char* language_name(Language lang);
// Accepts either the code or the full name; throws LexiconError otherwise.
Language language_from(const std::string& text);

enum class WordKind { Name, Noun, Adjective, Intransitive, Transitive };

const char* word_kind_name(WordKind kind);

struct LexEntry {
  WordKind kind;
  char symbol;        // constant (lowercase) or predicate (uppercase)
  std::string base;   // name / noun singular / adjective / verb base form
  std::string plural; // nouns only, empty otherwise
  std::string past;   // verbs only, empty otherwise
  std::string gloss;  // symbolization-key text, "[1]"/"[2]" placeholders
};

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Lexicon {
 public:
  // The word lists shipped with the generator.  Both languages cover the
  // same symbols, so counterpart sentences differ only in surface text.
  static Lexicon builtin(Language lang);

  // Reads the tab-separated format described in docs/file-formats.md and
  // validates the same shape invariants the builtin lists satisfy.
  static Lexicon load(const std::string& path);

  Language language() const { return lang_; }

  bool has(char symbol) const { return by_symbol_.count(symbol) > 0; }
  const LexEntry& entry(char symbol) const;

  // Symbols of one word class, in a fixed order shared by both languages.
  const std::vector<char>& symbols(WordKind kind) const;

  // All entries in that same fixed order, names first.
  const std::vector<LexEntry>& entries() const { return entries_; }

  // The symbol inventory as the logic layer sees it: names as constants,
  // nouns/adjectives/intransitives as unary, transitives as binary.
  Signature signature() const;

 private:
  Lexicon() = default;
  void index_and_validate();

  Language lang_ = Language::English;
  std::vector<LexEntry> entries_;
  std::map<char, std::size_t> by_symbol_;
  std::array<std::vector<char>, 5> by_kind_;
};

}  // namespace fo2

#endif
