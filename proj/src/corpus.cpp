#include "fo2/corpus.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "fo2/parse.hpp"
#include "fo2/print.hpp"
#include "fo2/util.hpp"

namespace fo2 {

LexiconExhausted::LexiconExhausted(std::size_t achieved_count,
                                   std::size_t requested_count)
    : std::runtime_error("lexicon exhausted after " +
                         std::to_string(achieved_count) + " of " +
                         std::to_string(requested_count) + " sentence pairs"),
      achieved(achieved_count),
      requested(requested_count) {}

namespace {

// Every admissible filling of one schema, in odometer order (leftmost slot
// slowest).  Spaces are small (tens to a few thousand entries), so listing
// them up front makes "this type is spent" a simple counter comparison.
std::vector<std::string> filling_space(SchemaType type, const Lexicon& lex) {
  const std::vector<WordKind>& slots = schema_slots(type);
  const auto& distinct = schema_distinct_slots(type);
  std::vector<std::string> out;
  std::string current(slots.size(), ' ');

  auto admissible = [&]() {
    for (auto [i, j] : distinct) {
      if (current[i] == current[j]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t slot) -> void {
    if (slot == slots.size()) {
      if (admissible()) out.push_back(current);
      return;
    }
    for (char sym : lex.symbols(slots[slot])) {
      current[slot] = sym;
      self(self, slot + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::string format_id(std::size_t ordinal, Language lang) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "s%06zu-%s", ordinal, language_code(lang));
  return buf;
}

}  // namespace

std::vector<SentencePair> generate_corpus(std::size_t count, std::uint64_t seed,
                                          const Lexicon& english,
                                          const Lexicon& carroll) {
  if (count == 0) throw std::invalid_argument("corpus size must be positive");
  if (english.language() != Language::English ||
      carroll.language() != Language::Carroll) {
    throw std::invalid_argument("generate_corpus wants (english, carroll) lexicons");
  }

  const std::vector<SchemaType>& order = all_schema_types();
  std::vector<std::vector<std::string>> spaces;
  std::vector<std::set<std::string>> used(order.size());
  for (SchemaType type : order) spaces.push_back(filling_space(type, english));

  std::unordered_set<std::uint64_t> seen_hashes;
  std::vector<SentencePair> pairs;
  pairs.reserve(count);

  std::size_t spent_streak = 0;  // consecutive schedule slots yielding nothing
  for (std::uint64_t slot = 0; pairs.size() < count; ++slot) {
    if (spent_streak >= order.size()) {
      throw LexiconExhausted(pairs.size(), count);
    }
    std::size_t which = slot % order.size();
    SchemaType type = order[which];
    const std::vector<std::string>& space = spaces[which];
    std::set<std::string>& taken = used[which];
    if (taken.size() == space.size()) {
      ++spent_streak;
      continue;
    }

    SplitMix64 rng = derived_stream(seed, "corpus", slot);
    std::string filling;
    for (int attempt = 0; attempt < 64 && filling.empty(); ++attempt) {
      const std::string& candidate = space[rng.below(space.size())];
      if (!taken.count(candidate)) filling = candidate;
    }
    if (filling.empty()) {
      // Dense region: fall back to the first untried filling in space order.
      for (const std::string& candidate : space) {
        if (!taken.count(candidate)) {
          filling = candidate;
          break;
        }
      }
    }

    taken.insert(filling);
    std::vector<char> symbols(filling.begin(), filling.end());
    SentenceRecord en = instantiate(type, symbols, english);
    if (!seen_hashes.insert(en.hash).second) {
      // Distinct fillings of one type realize distinct formulas, so a hash
      // repeat can only mean two types collided; drop the later one.
      ++spent_streak;
      continue;
    }
    SentenceRecord ca = instantiate(type, symbols, carroll);

    std::size_t ordinal = pairs.size() + 1;
    en.id = format_id(ordinal, Language::English);
    ca.id = format_id(ordinal, Language::Carroll);
    en.counterpart_id = ca.id;
    ca.counterpart_id = en.id;
    pairs.push_back(SentencePair{std::move(en), std::move(ca)});
    spent_streak = 0;
  }
  return pairs;
}

std::string corpus_line(const SentenceRecord& rec) {
  std::string soa;
  for (const auto& [sym, gloss] : rec.soa) {
    if (!soa.empty()) soa += "; ";
    soa += sym;
    soa += ": ";
    soa += gloss;
  }
  std::string line;
  line += "id=" + rec.id;
  line += "\tsurface=" + rec.surface;
  line += "\tsoa=" + soa;
  line += "\tformula=" + print(rec.formula, PrintStyle::Ascii);
  line += "\ttype=";
  line += schema_type_name(rec.type);
  line += "\tlanguage=";
  line += language_name(rec.language);
  line += "\tcounterpart_id=" + rec.counterpart_id;
  return line;
}

SentenceRecord parse_corpus_line(const std::string& line) {
  auto bad = [&](const std::string& why) {
    return std::invalid_argument("corpus line: " + why);
  };

  std::map<std::string, std::string> fields;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t tab = line.find('\t', start);
    std::string piece = line.substr(
        start, tab == std::string::npos ? std::string::npos : tab - start);
    std::size_t eq = piece.find('=');
    if (eq == std::string::npos) throw bad("field without '=': " + piece);
    fields[piece.substr(0, eq)] = piece.substr(eq + 1);
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  for (const char* key :
       {"id", "surface", "soa", "formula", "type", "language", "counterpart_id"}) {
    if (!fields.count(key)) throw bad(std::string("missing field ") + key);
  }

  SentenceRecord rec;
  rec.id = fields["id"];
  rec.surface = fields["surface"];
  rec.counterpart_id = fields["counterpart_id"];
  rec.type = schema_type_from_name(fields["type"]);
  rec.language = language_from(fields["language"]);
  rec.formula = parse(fields["formula"], Dialect::Strict);
  rec.hash = ast_hash(rec.formula);

  const std::string& soa = fields["soa"];
  std::size_t pos = 0;
  while (pos < soa.size()) {
    std::size_t end = soa.find("; ", pos);
    std::string entry =
        soa.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (entry.size() < 3 || entry[1] != ':' || entry[2] != ' ') {
      throw bad("soa entry is not 'X: gloss': " + entry);
    }
    rec.soa[entry[0]] = entry.substr(3);
    if (end == std::string::npos) break;
    pos = end + 2;
  }
  return rec;
}

}  // namespace fo2
