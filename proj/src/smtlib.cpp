#include "fo2/smtlib.hpp"

#include <sstream>

#include "fo2/print.hpp"

namespace fo2 {

namespace {

std::string elem(int i) { return "u" + std::to_string(i); }

}  // namespace

std::vector<std::string> probe_terms(const Signature& sig, int n) {
  std::vector<std::string> probes;
  for (char c : sig.constants)
    for (int e = 0; e < n; ++e)
      probes.push_back(std::string("(= ") + c + " " + elem(e) + ")");
  for (char p : sig.unary)
    for (int e = 0; e < n; ++e)
      probes.push_back(std::string("(") + p + " " + elem(e) + ")");
  for (char p : sig.binary)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        probes.push_back(std::string("(") + p + " " + elem(i) + " " + elem(j) + ")");
  return probes;
}

std::string emit_smtlib(const std::vector<Formula>& formulas, const Signature& sig,
                        std::optional<int> domain_bound, bool extract) {
  std::ostringstream os;
  os << "(set-logic UF)\n";
  os << "(set-option :produce-models true)\n";
  os << "(declare-sort U 0)\n";
  if (domain_bound) {
    int n = *domain_bound;
    for (int e = 0; e < n; ++e) os << "(declare-const " << elem(e) << " U)\n";
    if (n >= 2) {
      os << "(assert (distinct";
      for (int e = 0; e < n; ++e) os << " " << elem(e);
      os << "))\n";
    }
    if (n == 1) {
      os << "(assert (forall ((x U)) (= x u0)))\n";
    } else {
      os << "(assert (forall ((x U)) (or";
      for (int e = 0; e < n; ++e) os << " (= x " << elem(e) << ")";
      os << ")))\n";
    }
  }
  for (char c : sig.constants) os << "(declare-const " << c << " U)\n";
  for (char p : sig.unary) os << "(declare-fun " << p << " (U) Bool)\n";
  for (char p : sig.binary) os << "(declare-fun " << p << " (U U) Bool)\n";
  for (const Formula& f : formulas)
    os << "(assert " << print(f, PrintStyle::SmtAtoms) << ")\n";
  os << "(check-sat)\n";
  if (extract && domain_bound) {
    std::vector<std::string> probes = probe_terms(sig, *domain_bound);
    if (!probes.empty()) {
      os << "(get-value (";
      bool first = true;
      for (const std::string& probe : probes) {
        os << (first ? "" : " ") << probe;
        first = false;
      }
      os << "))\n";
    }
  }
  return os.str();
}

}  // namespace fo2
