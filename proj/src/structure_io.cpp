#include "fo2/structure_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace fo2 {

namespace {

// A parsed bracket value: either an integer or a nested list.
struct ValueNode {
  bool is_int = false;
  long long value = 0;
  std::vector<ValueNode> items;
};

struct ValueParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_open() {
    char c = text[pos];
    return c == '[' || c == '{' || c == '(';
  }

  static char closer(char open) {
    return open == '[' ? ']' : open == '{' ? '}' : ')';
  }

  std::optional<ValueNode> parse_value() {
    skip_ws();
    if (pos >= text.size()) return std::nullopt;
    char c = text[pos];
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      if (c == '-') ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start + (c == '-' ? 1u : 0u)) return std::nullopt;
      ValueNode n;
      n.is_int = true;
      n.value = std::stoll(std::string(text.substr(start, pos - start)));
      return n;
    }
    if (at_open()) {
      char close = closer(c);
      ++pos;
      ValueNode n;
      skip_ws();
      if (pos < text.size() && text[pos] == close) {
        ++pos;
        return n;
      }
      while (true) {
        auto item = parse_value();
        if (!item) return std::nullopt;
        n.items.push_back(std::move(*item));
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == close) {
          ++pos;
          return n;
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }
};

// Splits on commas that sit outside any bracket pair.
std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[' || c == '{' || c == '(') ++depth;
    if (c == ']' || c == '}' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Drops list bullets and surrounding quote marks (ASCII and typographic).
std::string strip_decor(std::string s) {
  static const std::vector<std::string> kPrefixes = {"- ", "* ", "• ", "– "};
  std::string t = strip(s);
  for (const auto& p : kPrefixes) {
    if (t.rfind(p, 0) == 0) {
      t = strip(t.substr(p.size()));
      break;
    }
  }
  return t;
}

std::string remove_quotes(std::string s) {
  static const std::vector<std::string> kQuotes = {"\"", "'", "`", "“", "”",
                                                  "‘", "’"};
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    bool matched = false;
    for (const auto& q : kQuotes) {
      if (s.compare(i, q.size(), q) == 0) {
        i += q.size();
        matched = true;
        break;
      }
    }
    if (!matched) out += s[i++];
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Recognizes a section header at the start of the (decorated-stripped)
// line; returns the content after the colon.
bool match_section(const std::string& line, RawEntry::Section& section, bool& is_domain,
                   std::string& content) {
  std::string low = lower(line);
  struct Key {
    const char* text;
    RawEntry::Section section;
    bool domain;
  };
  static const Key kKeys[] = {
      {"domain", RawEntry::Section::None, true},
      {"constants", RawEntry::Section::Constants, false},
      {"constant", RawEntry::Section::Constants, false},
      {"monadic predicates", RawEntry::Section::Monadic, false},
      {"monadic predicate", RawEntry::Section::Monadic, false},
      {"unary predicates", RawEntry::Section::Monadic, false},
      {"unary predicate", RawEntry::Section::Monadic, false},
      {"binary predicates", RawEntry::Section::Binary, false},
      {"binary predicate", RawEntry::Section::Binary, false},
  };
  for (const Key& k : kKeys) {
    std::size_t len = std::strlen(k.text);
    if (low.rfind(k.text, 0) == 0) {
      std::size_t after = len;
      while (after < line.size() && std::isspace(static_cast<unsigned char>(line[after])))
        ++after;
      if (after < line.size() && (line[after] == ':' || line[after] == '=')) {
        section = k.section;
        is_domain = k.domain;
        content = line.substr(after + 1);
        return true;
      }
    }
  }
  return false;
}

void classify_entry(RawEntry& entry, const std::string& value_text) {
  entry.raw = strip(value_text);
  ValueParser vp{entry.raw};
  auto v = vp.parse_value();
  if (v) {
    vp.skip_ws();
    if (vp.pos != entry.raw.size()) v.reset();
  }
  if (!v) {
    entry.shape = RawEntry::Shape::Bad;
    return;
  }
  if (v->is_int) {
    entry.shape = RawEntry::Shape::Int;
    entry.scalar = v->value;
    return;
  }
  if (v->items.empty()) {
    entry.shape = RawEntry::Shape::EmptyList;
    return;
  }
  bool all_ints = std::all_of(v->items.begin(), v->items.end(),
                              [](const ValueNode& n) { return n.is_int; });
  if (all_ints) {
    entry.shape = RawEntry::Shape::IntList;
    for (const ValueNode& n : v->items) entry.ints.push_back(static_cast<int>(n.value));
    return;
  }
  bool all_pairs = std::all_of(v->items.begin(), v->items.end(), [](const ValueNode& n) {
    return !n.is_int && n.items.size() == 2 && n.items[0].is_int && n.items[1].is_int;
  });
  if (all_pairs) {
    entry.shape = RawEntry::Shape::PairList;
    for (const ValueNode& n : v->items)
      entry.pairs.push_back({static_cast<int>(n.items[0].value),
                             static_cast<int>(n.items[1].value)});
    return;
  }
  entry.shape = RawEntry::Shape::Bad;
}

void parse_assignments(const std::string& content, RawEntry::Section section,
                       RawStructure& out) {
  for (const std::string& piece_raw : split_top_level(content)) {
    std::string piece = strip(piece_raw);
    if (piece.empty()) continue;
    std::string unquoted = remove_quotes(piece);
    // Expect: symbol [:=] value
    std::size_t sep = unquoted.find_first_of(":=");
    if (sep == std::string::npos) continue;
    std::string sym_text = strip(unquoted.substr(0, sep));
    std::string value_text = unquoted.substr(sep + 1);
    if (sym_text.size() != 1 || !std::isalpha(static_cast<unsigned char>(sym_text[0])))
      continue;
    RawEntry entry;
    entry.symbol = sym_text[0];
    entry.section = section;
    classify_entry(entry, value_text);
    out.entries.push_back(std::move(entry));
  }
}

void parse_domain(const std::string& content, RawStructure& out) {
  std::vector<int> elems;
  std::string cur;
  for (char c : content + ",") {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      cur += c;
    } else {
      if (!cur.empty() && cur != "-") elems.push_back(std::stoi(cur));
      cur.clear();
    }
  }
  out.domain = std::move(elems);
}

}  // namespace

RawStructure parse_structure_text(std::string_view text) {
  RawStructure out;
  RawEntry::Section current = RawEntry::Section::None;
  bool current_is_domain = false;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    std::string stripped = strip_decor(line);
    if (stripped.empty()) continue;
    RawEntry::Section section;
    bool is_domain = false;
    std::string content;
    if (match_section(stripped, section, is_domain, content)) {
      out.saw_section_header = true;
      current = section;
      content = strip(content);
      // A bare "Domain:" header leaves the value for the following line.
      current_is_domain = is_domain && content.empty();
      if (content.empty()) continue;
      if (is_domain) {
        parse_domain(content, out);
      } else {
        parse_assignments(content, section, out);
      }
      continue;
    }
    if (current_is_domain) {
      parse_domain(stripped, out);
      current_is_domain = false;
      continue;
    }
    parse_assignments(stripped, current, out);
  }
  return out;
}

namespace {

const RawEntry* last_entry_for(const RawStructure& raw, char symbol) {
  const RawEntry* found = nullptr;
  for (const RawEntry& e : raw.entries)
    if (e.symbol == symbol) found = &e;
  return found;
}

bool in(const std::vector<int>& domain, int e) {
  return std::find(domain.begin(), domain.end(), e) != domain.end();
}

}  // namespace

ResolveOutcome resolve_structure(const RawStructure& raw, const Signature& needed,
                                 const std::vector<int>& fallback_domain) {
  ResolveOutcome out;
  std::vector<int> domain = raw.domain ? *raw.domain : fallback_domain;
  if (domain.empty()) {
    out.status = ResolveOutcome::Status::DomainViolation;
    out.message = "domain is empty";
    return out;
  }
  std::set<int> seen;
  for (int e : domain) {
    if (e < 0) {
      out.status = ResolveOutcome::Status::DomainViolation;
      out.message = "domain element " + std::to_string(e) + " is negative";
      return out;
    }
    if (!seen.insert(e).second) {
      out.status = ResolveOutcome::Status::DomainViolation;
      out.message = "domain element " + std::to_string(e) + " repeated";
      return out;
    }
  }
  out.structure.domain = domain;

  for (char c : needed.constants) {
    const RawEntry* e = last_entry_for(raw, c);
    if (!e) {
      out.status = ResolveOutcome::Status::Missing;
      out.symbol = c;
      out.message = std::string("Missing interpretation for: ") + c;
      return out;
    }
    long long value = 0;
    if (e->shape == RawEntry::Shape::Int) {
      value = e->scalar;
    } else if (e->shape == RawEntry::Shape::IntList && e->ints.size() == 1) {
      value = e->ints[0];
    } else {
      out.status = ResolveOutcome::Status::Malformed;
      out.symbol = c;
      out.message = std::string("Constant '") + c + "' must be a single domain element, got " + e->raw;
      return out;
    }
    if (!in(domain, static_cast<int>(value))) {
      out.status = ResolveOutcome::Status::DomainViolation;
      out.symbol = c;
      out.message = std::string("constant ") + c + " = " + std::to_string(value) +
                    " is outside the domain";
      return out;
    }
    out.structure.constants[c] = static_cast<int>(value);
  }

  for (char p : needed.unary) {
    const RawEntry* e = last_entry_for(raw, p);
    if (!e) {
      out.status = ResolveOutcome::Status::Missing;
      out.symbol = p;
      out.message = std::string("Missing interpretation for: ") + p;
      return out;
    }
    std::set<int> ext;
    if (e->shape == RawEntry::Shape::IntList) {
      ext.insert(e->ints.begin(), e->ints.end());
    } else if (e->shape == RawEntry::Shape::Int) {
      ext.insert(static_cast<int>(e->scalar));
    } else if (e->shape == RawEntry::Shape::EmptyList) {
      // empty extension
    } else {
      out.status = ResolveOutcome::Status::Malformed;
      out.symbol = p;
      out.message = std::string("Monadic predicate '") + p +
                    "' must be a list of domain elements, got " + e->raw;
      return out;
    }
    for (int v : ext) {
      if (!in(domain, v)) {
        out.status = ResolveOutcome::Status::DomainViolation;
        out.symbol = p;
        out.message = std::string("predicate ") + p + " contains " + std::to_string(v) +
                      " outside the domain";
        return out;
      }
    }
    out.structure.unary[p] = std::move(ext);
  }

  for (char p : needed.binary) {
    const RawEntry* e = last_entry_for(raw, p);
    if (!e) {
      out.status = ResolveOutcome::Status::Missing;
      out.symbol = p;
      out.message = std::string("Missing interpretation for: ") + p;
      return out;
    }
    std::set<std::pair<int, int>> ext;
    if (e->shape == RawEntry::Shape::PairList) {
      ext.insert(e->pairs.begin(), e->pairs.end());
    } else if (e->shape == RawEntry::Shape::EmptyList) {
      // empty extension
    } else {
      out.status = ResolveOutcome::Status::Malformed;
      out.symbol = p;
      out.message = std::string("Binary predicate '") + p + "' must be a list of pairs, got " +
                    e->raw;
      return out;
    }
    for (const auto& [v1, v2] : ext) {
      if (!in(domain, v1) || !in(domain, v2)) {
        out.status = ResolveOutcome::Status::DomainViolation;
        out.symbol = p;
        out.message = std::string("predicate ") + p + " contains a pair outside the domain";
        return out;
      }
    }
    out.structure.binary[p] = std::move(ext);
  }

  return out;
}

std::string to_required_format(const FiniteStructure& m) {
  std::ostringstream os;
  os << "Domain: [";
  for (std::size_t i = 0; i < m.domain.size(); ++i)
    os << (i ? ", " : "") << m.domain[i];
  os << "]\n";
  os << "Constants:";
  {
    bool first = true;
    for (const auto& [c, e] : m.constants) {
      os << (first ? " " : ", ") << '"' << c << "\": " << e;
      first = false;
    }
  }
  os << "\n";
  os << "Monadic predicates:";
  {
    bool first = true;
    for (const auto& [p, ext] : m.unary) {
      os << (first ? " " : ", ") << '"' << p << "\": [";
      bool inner_first = true;
      for (int e : ext) {
        os << (inner_first ? "" : ", ") << e;
        inner_first = false;
      }
      os << ']';
      first = false;
    }
  }
  os << "\n";
  os << "Binary predicates:";
  {
    bool first = true;
    for (const auto& [p, ext] : m.binary) {
      os << (first ? " " : ", ") << '"' << p << "\": [";
      bool inner_first = true;
      for (const auto& [e1, e2] : ext) {
        os << (inner_first ? "" : ", ") << '[' << e1 << ", " << e2 << ']';
        inner_first = false;
      }
      os << ']';
      first = false;
    }
  }
  os << "\n";
  return os.str();
}

}  // namespace fo2
