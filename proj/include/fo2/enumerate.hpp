// ============================================================================
// fo2/enumerate.hpp — brute-force model enumeration over small domains
// ============================================================================
//
// Streams every finite structure over canonical domains {0}, {0,1}, ...,
// {0..max-1} that satisfies a given formula set.  This is the independent
// oracle the solver backend is cross-checked against, and the search used to
// attach small witnesses to invalid arguments.
//
// Enumeration order is deterministic and part of the contract the tests pin:
//
//   * domain sizes ascending;
//   * for each size, constant assignments advance as an odometer over
//     alphabetically sorted constants, leftmost digit slowest;
//   * for each constant assignment, a single predicate-extension counter runs
//     from 0 upward.  Alphabetically earlier predicates occupy HIGHER bits
//     (unary block before binary block), so e.g. over {F, G} at size 1 the
//     counter visits F={},G={} then F={},G={0} then F={0},G={} then
//     F={0},G={0}.  Within a unary field, element e is bit e; within a binary
//     field, pair (i, j) is bit i*n + j.
//
// The counter has u*n + b*n^2 bits.  Construction refuses signatures whose
// bit count at the largest requested size exceeds the budget (24 bits by
// default, i.e. 2^24 candidate extension vectors per constant assignment);
// constants do not count against the budget.
// ============================================================================

#ifndef FO2_ENUMERATE_HPP
#define FO2_ENUMERATE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo2/formula.hpp"
#include "fo2/structure.hpp"

namespace fo2 {

class BoundTooLarge : public std::runtime_error {
 public:
  BoundTooLarge(int bits, int max_bits)
      : std::runtime_error("enumeration space needs " + std::to_string(bits) +
                           " extension bits, budget is " + std::to_string(max_bits)),
        bits(bits),
        max_bits(max_bits) {}
  int bits;
  int max_bits;
};

class ModelEnumerator {
 public:
  static constexpr int kDefaultMaxBits = 24;

  // Throws BoundTooLarge if the extension counter at max_domain_size would
  // exceed max_bits bits.
  ModelEnumerator(std::vector<Formula> formulas, Signature sig, int max_domain_size,
                  int max_bits = kDefaultMaxBits);

  // Next satisfying structure in enumeration order, or nullopt when the
  // stream is exhausted.
  std::optional<FiniteStructure> next();

 private:
  struct Field {
    char symbol;
    bool is_binary;
    int offset;  // low bit index of this predicate's extension field
  };

  void enter_size(int n);
  bool advance();  // steps the (constants, mask) odometer; false when size done
  bool satisfies_all() const;
  bool eval_node(const Node* f, int ex, int ey) const;
  FiniteStructure materialize() const;

  std::vector<Formula> formulas_;
  Signature sig_;
  int max_size_;

  std::vector<char> const_symbols_;  // sorted
  std::vector<Field> fields_;        // unary block then binary block, both sorted

  int size_ = 0;  // current domain size; 0 before the first enter_size
  int bits_ = 0;
  std::uint64_t mask_ = 0;
  std::vector<int> const_elems_;  // parallel to const_symbols_
  bool fresh_ = true;             // current candidate not yet examined
  bool done_ = false;
};

// First satisfying structure at any domain size <= max_domain_size.
std::optional<FiniteStructure> first_model(const std::vector<Formula>& formulas,
                                           const Signature& sig, int max_domain_size);

// True when no domain of size <= max_domain_size satisfies the set.
bool no_model_up_to(const std::vector<Formula>& formulas, const Signature& sig,
                    int max_domain_size);

}  // namespace fo2

#endif
