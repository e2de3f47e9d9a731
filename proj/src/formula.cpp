#include "fo2/formula.hpp"

#include <stdexcept>

#include "fo2/util.hpp"

namespace fo2 {

std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

namespace {

Formula make(Kind k, Formula l, Formula r, char bound = 0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->left = std::move(l);
  n->right = std::move(r);
  n->bound = bound;
  return n;
}

}  // namespace

Formula atom(char pred, Term t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->pred = pred;
  n->args = {t};
  return n;
}

Formula atom(char pred, Term t1, Term t2) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->pred = pred;
  n->args = {t1, t2};
  return n;
}

Formula neg(Formula f) { return make(Kind::Not, std::move(f), nullptr); }
Formula conj(Formula a, Formula b) { return make(Kind::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return make(Kind::Or, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) { return make(Kind::Implies, std::move(a), std::move(b)); }
Formula iff(Formula a, Formula b) { return make(Kind::Iff, std::move(a), std::move(b)); }
Formula forall(char v, Formula body) { return make(Kind::ForAll, std::move(body), nullptr, v); }
Formula exists(char v, Formula body) { return make(Kind::Exists, std::move(body), nullptr, v); }

bool equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Atom:
      return a->pred == b->pred && a->args == b->args;
    case Kind::Not:
      return equal(a->left, b->left);
    case Kind::ForAll:
    case Kind::Exists:
      return a->bound == b->bound && equal(a->left, b->left);
    default:
      return equal(a->left, b->left) && equal(a->right, b->right);
  }
}

namespace {

void free_vars_rec(const Formula& f, std::set<char>& bound, std::set<char>& out) {
  switch (f->kind) {
    case Kind::Atom:
      for (const Term& t : f->args)
        if (t.is_variable() && bound.count(t.sym) == 0) out.insert(t.sym);
      return;
    case Kind::Not:
      free_vars_rec(f->left, bound, out);
      return;
    case Kind::ForAll:
    case Kind::Exists: {
      bool was_bound = bound.count(f->bound) > 0;
      bound.insert(f->bound);
      free_vars_rec(f->left, bound, out);
      if (!was_bound) bound.erase(f->bound);
      return;
    }
    default:
      free_vars_rec(f->left, bound, out);
      free_vars_rec(f->right, bound, out);
      return;
  }
}

}  // namespace

std::set<char> free_vars(const Formula& f) {
  std::set<char> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

void Signature::merge(const Signature& other) {
  unary.insert(other.unary.begin(), other.unary.end());
  binary.insert(other.binary.begin(), other.binary.end());
  constants.insert(other.constants.begin(), other.constants.end());
}

namespace {

void collect_symbols(const Formula& f, Signature& sig, std::vector<char>* conflicts) {
  switch (f->kind) {
    case Kind::Atom: {
      bool is_binary = f->args.size() == 2;
      std::set<char>& home = is_binary ? sig.binary : sig.unary;
      std::set<char>& other = is_binary ? sig.unary : sig.binary;
      if (other.count(f->pred) > 0) {
        if (conflicts) conflicts->push_back(f->pred);
      } else {
        home.insert(f->pred);
      }
      for (const Term& t : f->args)
        if (t.is_constant()) sig.constants.insert(t.sym);
      return;
    }
    case Kind::Not:
    case Kind::ForAll:
    case Kind::Exists:
      collect_symbols(f->left, sig, conflicts);
      return;
    default:
      collect_symbols(f->left, sig, conflicts);
      collect_symbols(f->right, sig, conflicts);
      return;
  }
}

}  // namespace

Signature signature_of(const std::vector<Formula>& formulas, std::vector<char>* conflicts) {
  Signature sig;
  for (const Formula& f : formulas) collect_symbols(f, sig, conflicts);
  return sig;
}

std::set<char> all_symbols(const Formula& f) {
  Signature sig = signature_of({f});
  std::set<char> out = sig.constants;
  out.insert(sig.unary.begin(), sig.unary.end());
  out.insert(sig.binary.begin(), sig.binary.end());
  return out;
}

namespace {

void check_wf_rec(const Formula& f, const Signature& sig, std::set<char>& bound,
                  WfReport& report) {
  switch (f->kind) {
    case Kind::Atom: {
      std::size_t arity = f->args.size();
      bool known_unary = sig.unary.count(f->pred) > 0;
      bool known_binary = sig.binary.count(f->pred) > 0;
      if (!known_unary && !known_binary) {
        report.violations.push_back({WfViolation::Kind::UnknownSymbol, f->pred,
                                     std::string("unknown predicate ") + f->pred});
      } else if ((arity == 1 && !known_unary) || (arity == 2 && !known_binary)) {
        report.violations.push_back(
            {WfViolation::Kind::ArityMismatch, f->pred,
             std::string("predicate ") + f->pred + " used with " +
                 std::to_string(arity) + " argument(s)"});
      }
      for (const Term& t : f->args) {
        if (t.is_variable()) {
          if (bound.count(t.sym) == 0)
            report.violations.push_back({WfViolation::Kind::UnboundVariable, t.sym,
                                         std::string("unbound variable ") + t.sym});
        } else if (sig.constants.count(t.sym) == 0) {
          report.violations.push_back({WfViolation::Kind::UnknownSymbol, t.sym,
                                       std::string("unknown constant ") + t.sym});
        }
      }
      return;
    }
    case Kind::Not:
      check_wf_rec(f->left, sig, bound, report);
      return;
    case Kind::ForAll:
    case Kind::Exists: {
      if (f->bound != 'x' && f->bound != 'y') {
        report.violations.push_back({WfViolation::Kind::ThirdVariable, f->bound,
                                     std::string("quantifier binds variable ") +
                                         f->bound + " outside {x, y}"});
      }
      bool was_bound = bound.count(f->bound) > 0;
      bound.insert(f->bound);
      check_wf_rec(f->left, sig, bound, report);
      if (!was_bound) bound.erase(f->bound);
      return;
    }
    default:
      check_wf_rec(f->left, sig, bound, report);
      check_wf_rec(f->right, sig, bound, report);
      return;
  }
}

}  // namespace

WfReport check_wf(const Formula& f, const Signature& sig) {
  WfReport report;
  if (!f) throw std::invalid_argument("check_wf: null formula");
  std::set<char> bound;
  check_wf_rec(f, sig, bound, report);
  return report;
}

}  // namespace fo2
