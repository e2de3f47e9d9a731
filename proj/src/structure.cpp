#include "fo2/structure.hpp"

#include <algorithm>

namespace fo2 {

bool FiniteStructure::in_domain(int e) const {
  return std::find(domain.begin(), domain.end(), e) != domain.end();
}

std::vector<std::string> FiniteStructure::integrity_problems() const {
  std::vector<std::string> problems;
  if (domain.empty()) problems.push_back("domain is empty");
  std::set<int> seen;
  for (int e : domain) {
    if (e < 0) problems.push_back("domain element " + std::to_string(e) + " is negative");
    if (!seen.insert(e).second)
      problems.push_back("domain element " + std::to_string(e) + " repeated");
  }
  for (const auto& [c, e] : constants) {
    if (!in_domain(e))
      problems.push_back(std::string("constant ") + c + " maps outside the domain");
  }
  for (const auto& [p, ext] : unary) {
    for (int e : ext)
      if (!in_domain(e))
        problems.push_back(std::string("predicate ") + p + " contains " +
                           std::to_string(e) + " outside the domain");
  }
  for (const auto& [p, ext] : binary) {
    for (const auto& [e1, e2] : ext)
      if (!in_domain(e1) || !in_domain(e2))
        problems.push_back(std::string("predicate ") + p + " contains a pair outside the domain");
  }
  for (const auto& [p, ext] : unary) {
    (void)ext;
    if (binary.count(p) > 0)
      problems.push_back(std::string("predicate ") + p + " interpreted at both arities");
  }
  return problems;
}

int Assignment::get(char v) const {
  const std::optional<int>& slot = v == 'x' ? x : y;
  if (!slot) throw EvalError(v, std::string("variable ") + v + " has no value");
  return *slot;
}

Assignment Assignment::with(char v, int e) const {
  Assignment out = *this;
  (v == 'x' ? out.x : out.y) = e;
  return out;
}

namespace {

int term_value(const Term& t, const FiniteStructure& m, const Assignment& a) {
  if (t.is_variable()) return a.get(t.sym);
  auto it = m.constants.find(t.sym);
  if (it == m.constants.end()) throw MissingInterpretation(t.sym);
  return it->second;
}

}  // namespace

bool eval(const Formula& f, const FiniteStructure& m, const Assignment& a) {
  switch (f->kind) {
    case Kind::Atom: {
      if (f->args.size() == 1) {
        auto it = m.unary.find(f->pred);
        if (it == m.unary.end()) {
          if (m.binary.count(f->pred) > 0)
            throw ExtensionArityError(f->pred, std::string("predicate ") + f->pred +
                                                   " interpreted as binary but used with 1 argument");
          throw MissingInterpretation(f->pred);
        }
        return it->second.count(term_value(f->args[0], m, a)) > 0;
      }
      auto it = m.binary.find(f->pred);
      if (it == m.binary.end()) {
        if (m.unary.count(f->pred) > 0)
          throw ExtensionArityError(f->pred, std::string("predicate ") + f->pred +
                                                 " interpreted as unary but used with 2 arguments");
        throw MissingInterpretation(f->pred);
      }
      return it->second.count({term_value(f->args[0], m, a),
                               term_value(f->args[1], m, a)}) > 0;
    }
    case Kind::Not:
      return !eval(f->left, m, a);
    case Kind::And:
      return eval(f->left, m, a) && eval(f->right, m, a);
    case Kind::Or:
      return eval(f->left, m, a) || eval(f->right, m, a);
    case Kind::Implies:
      return !eval(f->left, m, a) || eval(f->right, m, a);
    case Kind::Iff:
      return eval(f->left, m, a) == eval(f->right, m, a);
    case Kind::ForAll:
      for (int e : m.domain)
        if (!eval(f->left, m, a.with(f->bound, e))) return false;
      return true;
    case Kind::Exists:
      for (int e : m.domain)
        if (eval(f->left, m, a.with(f->bound, e))) return true;
      return false;
  }
  return false;  // unreachable
}

bool eval_closed(const Formula& f, const FiniteStructure& m) {
  return eval(f, m, Assignment{});
}

CountermodelVerdict check_countermodel(const std::vector<Formula>& premises,
                                       const Formula& conclusion,
                                       const FiniteStructure& m) {
  CountermodelVerdict verdict;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (!eval_closed(premises[i], m)) verdict.failing_premises.push_back(i);
  }
  verdict.conclusion_true = eval_closed(conclusion, m);
  verdict.accepted = verdict.failing_premises.empty() && !verdict.conclusion_true;
  return verdict;
}

FiniteStructure permute_structure(const FiniteStructure& m, const std::vector<int>& perm) {
  std::map<int, int> rename;
  for (std::size_t i = 0; i < m.domain.size(); ++i) rename[m.domain[i]] = perm.at(i);
  FiniteStructure out;
  out.domain = perm;
  for (const auto& [c, e] : m.constants) out.constants[c] = rename.at(e);
  for (const auto& [p, ext] : m.unary) {
    std::set<int> renamed;
    for (int e : ext) renamed.insert(rename.at(e));
    out.unary[p] = std::move(renamed);
  }
  for (const auto& [p, ext] : m.binary) {
    std::set<std::pair<int, int>> renamed;
    for (const auto& [e1, e2] : ext) renamed.insert({rename.at(e1), rename.at(e2)});
    out.binary[p] = std::move(renamed);
  }
  return out;
}

FiniteStructure pad_structure(const FiniteStructure& m, std::size_t size) {
  std::vector<std::string> problems = m.integrity_problems();
  if (!problems.empty()) {
    throw std::invalid_argument("pad_structure: " + problems.front());
  }
  if (m.domain.size() > size) {
    throw std::invalid_argument("pad_structure: structure has " +
                                std::to_string(m.domain.size()) +
                                " elements, target is " + std::to_string(size));
  }
  std::vector<int> sorted = m.domain;
  std::sort(sorted.begin(), sorted.end());
  std::map<int, int> rename;
  for (std::size_t i = 0; i < sorted.size(); ++i) rename[sorted[i]] = int(i);

  const int original_count = int(m.domain.size());
  // Clones copy the last original; root() folds them back for lookups.
  auto root = [original_count](int e) {
    return e < original_count ? e : original_count - 1;
  };

  FiniteStructure out;
  for (std::size_t e = 0; e < size; ++e) out.domain.push_back(int(e));
  for (const auto& [c, e] : m.constants) out.constants[c] = rename.at(e);
  for (const auto& [p, ext] : m.unary) {
    std::set<int> renamed;
    for (int e : ext) renamed.insert(rename.at(e));
    std::set<int> grown;
    for (int e : out.domain) {
      if (renamed.count(root(e)) > 0) grown.insert(e);
    }
    out.unary[p] = std::move(grown);
  }
  for (const auto& [p, ext] : m.binary) {
    std::set<std::pair<int, int>> renamed;
    for (const auto& [e1, e2] : ext) renamed.insert({rename.at(e1), rename.at(e2)});
    std::set<std::pair<int, int>> grown;
    for (int e1 : out.domain) {
      for (int e2 : out.domain) {
        if (renamed.count({root(e1), root(e2)}) > 0) grown.insert({e1, e2});
      }
    }
    out.binary[p] = std::move(grown);
  }
  return out;
}

}  // namespace fo2
