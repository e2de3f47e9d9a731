// Small shared utilities: a stable hash, hex rendering, and a deterministic
// RNG whose output is identical across platforms and standard libraries
// (std::mt19937 distributions are implementation-defined, which would break
// byte-identical regeneration).

#ifndef FO2_UTIL_HPP
#define FO2_UTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fo2 {

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(std::uint64_t v);

// SplitMix64: tiny, fast, and fully specified, so sequences are reproducible
// everywhere.  Used both directly and to seed derived per-item streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, n) by rejection, bias-free.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// A stream keyed by (seed, purpose, index).  Items drawn from different
// streams are independent of each other's consumption, which keeps parallel
// pipelines deterministic: worker scheduling cannot change what any one item
// sees.
inline SplitMix64 derived_stream(std::uint64_t seed, std::string_view purpose,
                                 std::uint64_t index) {
  std::uint64_t s = seed ^ fnv1a64(purpose) ^ (index * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
  SplitMix64 warmup(s);
  warmup.next();
  return warmup;
}

}  // namespace fo2

#endif
