// Corpus generation: a deterministic stream of counterpart sentence pairs.
//
// Generation strides the schema catalogue so every type appears early and
// evenly, fills slots from seeded per-pair streams (worker scheduling can
// never affect what a given pair sees), and deduplicates by formula hash.
// A pair's two records share one formula, so the English and Carroll sides
// are deduplicated together.
//
// When random draws keep hitting duplicates the generator sweeps the
// type's whole filling space before declaring it spent; only when every
// type is spent does it give up, reporting how many pairs it did produce.

#ifndef FO2_CORPUS_HPP
#define FO2_CORPUS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo2/lexicon.hpp"
#include "fo2/schema.hpp"

namespace fo2 {

struct SentencePair {
  SentenceRecord english;
  SentenceRecord carroll;
};

class LexiconExhausted : public std::runtime_error {
 public:
  LexiconExhausted(std::size_t achieved_count, std::size_t requested_count);
  std::size_t achieved;
  std::size_t requested;
};

// Produces exactly `count` pairs with ids s000001-en/-ca onward, cross
// linked as counterparts.  Byte-identical for identical inputs.  Throws
// LexiconExhausted when dedup leaves fewer than `count` realizable pairs,
// and std::invalid_argument for count == 0.
std::vector<SentencePair> generate_corpus(std::size_t count, std::uint64_t seed,
                                          const Lexicon& english,
                                          const Lexicon& carroll);

// One record as a single tab-separated key=value line (the sidecar corpus
// format; see docs/file-formats.md).  Fields: id, surface, soa, formula
// (ASCII style), type, language, counterpart_id.
std::string corpus_line(const SentenceRecord& rec);

// Inverse of corpus_line; throws std::invalid_argument on malformed lines.
SentenceRecord parse_corpus_line(const std::string& line);

}  // namespace fo2

#endif
