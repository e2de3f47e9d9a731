#include "fo2/enumerate.hpp"

#include <algorithm>

namespace fo2 {

ModelEnumerator::ModelEnumerator(std::vector<Formula> formulas, Signature sig,
                                 int max_domain_size, int max_bits)
    : formulas_(std::move(formulas)), sig_(std::move(sig)), max_size_(max_domain_size) {
  int u = static_cast<int>(sig_.unary.size());
  int b = static_cast<int>(sig_.binary.size());
  int worst = u * max_size_ + b * max_size_ * max_size_;
  if (worst > max_bits) throw BoundTooLarge(worst, max_bits);
  const_symbols_.assign(sig_.constants.begin(), sig_.constants.end());
  if (max_size_ >= 1) enter_size(1);
  else done_ = true;
}

void ModelEnumerator::enter_size(int n) {
  size_ = n;
  fields_.clear();
  // Lay fields out from the high end: earlier predicate = higher bits.
  int u = static_cast<int>(sig_.unary.size());
  int b = static_cast<int>(sig_.binary.size());
  bits_ = u * n + b * n * n;
  int next_high = bits_;
  for (char p : sig_.unary) {
    next_high -= n;
    fields_.push_back({p, false, next_high});
  }
  for (char p : sig_.binary) {
    next_high -= n * n;
    fields_.push_back({p, true, next_high});
  }
  mask_ = 0;
  const_elems_.assign(const_symbols_.size(), 0);
  fresh_ = true;
}

bool ModelEnumerator::advance() {
  if (fresh_) {
    fresh_ = false;
    return true;
  }
  ++mask_;
  if (bits_ < 64 && mask_ < (std::uint64_t{1} << bits_)) return true;
  mask_ = 0;
  // Carry into the constants odometer, rightmost digit fastest.
  for (int i = static_cast<int>(const_elems_.size()) - 1; i >= 0; --i) {
    if (++const_elems_[i] < size_) return true;
    const_elems_[i] = 0;
  }
  return false;
}

std::optional<FiniteStructure> ModelEnumerator::next() {
  while (!done_) {
    if (!advance()) {
      if (size_ >= max_size_) {
        done_ = true;
        break;
      }
      enter_size(size_ + 1);
      continue;
    }
    if (satisfies_all()) return materialize();
  }
  return std::nullopt;
}

bool ModelEnumerator::satisfies_all() const {
  for (const Formula& f : formulas_)
    if (!eval_node(f.get(), -1, -1)) return false;
  return true;
}

bool ModelEnumerator::eval_node(const Node* f, int ex, int ey) const {
  switch (f->kind) {
    case Kind::Atom: {
      int elems[2] = {0, 0};
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        char s = f->args[i].sym;
        if (s == 'x')
          elems[i] = ex;
        else if (s == 'y')
          elems[i] = ey;
        else {
          auto it = std::find(const_symbols_.begin(), const_symbols_.end(), s);
          elems[i] = const_elems_[it - const_symbols_.begin()];
        }
      }
      for (const Field& field : fields_) {
        if (field.symbol != f->pred) continue;
        int bit = field.is_binary ? field.offset + elems[0] * size_ + elems[1]
                                  : field.offset + elems[0];
        return (mask_ >> bit) & 1;
      }
      return false;  // unreachable when formulas are closed over sig
    }
    case Kind::Not:
      return !eval_node(f->left.get(), ex, ey);
    case Kind::And:
      return eval_node(f->left.get(), ex, ey) && eval_node(f->right.get(), ex, ey);
    case Kind::Or:
      return eval_node(f->left.get(), ex, ey) || eval_node(f->right.get(), ex, ey);
    case Kind::Implies:
      return !eval_node(f->left.get(), ex, ey) || eval_node(f->right.get(), ex, ey);
    case Kind::Iff:
      return eval_node(f->left.get(), ex, ey) == eval_node(f->right.get(), ex, ey);
    case Kind::ForAll:
      for (int e = 0; e < size_; ++e) {
        bool ok = f->bound == 'x' ? eval_node(f->left.get(), e, ey)
                                  : eval_node(f->left.get(), ex, e);
        if (!ok) return false;
      }
      return true;
    case Kind::Exists:
      for (int e = 0; e < size_; ++e) {
        bool ok = f->bound == 'x' ? eval_node(f->left.get(), e, ey)
                                  : eval_node(f->left.get(), ex, e);
        if (ok) return true;
      }
      return false;
  }
  return false;
}

FiniteStructure ModelEnumerator::materialize() const {
  FiniteStructure m;
  for (int e = 0; e < size_; ++e) m.domain.push_back(e);
  for (std::size_t i = 0; i < const_symbols_.size(); ++i)
    m.constants[const_symbols_[i]] = const_elems_[i];
  for (const Field& field : fields_) {
    if (field.is_binary) {
      auto& ext = m.binary[field.symbol];
      for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j)
          if ((mask_ >> (field.offset + i * size_ + j)) & 1) ext.insert({i, j});
    } else {
      auto& ext = m.unary[field.symbol];
      for (int e = 0; e < size_; ++e)
        if ((mask_ >> (field.offset + e)) & 1) ext.insert(e);
    }
  }
  return m;
}

std::optional<FiniteStructure> first_model(const std::vector<Formula>& formulas,
                                           const Signature& sig, int max_domain_size) {
  ModelEnumerator it(formulas, sig, max_domain_size);
  return it.next();
}

bool no_model_up_to(const std::vector<Formula>& formulas, const Signature& sig,
                    int max_domain_size) {
  return !first_model(formulas, sig, max_domain_size).has_value();
}

}  // namespace fo2
