#include "fo2/print.hpp"

#include "fo2/util.hpp"

namespace fo2 {

namespace {

const char* op_text(Kind k, PrintStyle style) {
  bool uni = style == PrintStyle::Unicode;
  switch (k) {
    case Kind::And:
      return uni ? " ∧ " : " & ";
    case Kind::Or:
      return uni ? " ∨ " : " | ";
    case Kind::Implies:
      return uni ? " → " : " -> ";
    case Kind::Iff:
      return uni ? " ↔ " : " <-> ";
    default:
      return "";
  }
}

bool is_binary_connective(const Formula& f) {
  switch (f->kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

void render(const Formula& f, PrintStyle style, std::string& out) {
  bool uni = style == PrintStyle::Unicode;
  switch (f->kind) {
    case Kind::Atom:
      out += f->pred;
      for (const Term& t : f->args) out += t.sym;
      return;
    case Kind::Not:
      out += uni ? "¬" : "~";
      if (is_binary_connective(f->left)) {
        out += '(';
        render(f->left, style, out);
        out += ')';
      } else {
        render(f->left, style, out);
      }
      return;
    case Kind::ForAll:
    case Kind::Exists: {
      out += f->kind == Kind::ForAll ? (uni ? "∀" : "A") : (uni ? "∃" : "E");
      out += f->bound;
      const Formula& body = f->left;
      if (is_binary_connective(body)) {
        out += '(';
        render(body, style, out);
        out += ')';
      } else if (body->kind == Kind::ForAll || body->kind == Kind::Exists) {
        render(body, style, out);
      } else {
        out += ' ';
        render(body, style, out);
      }
      return;
    }
    default: {
      auto child = [&](const Formula& c) {
        if (is_binary_connective(c)) {
          out += '(';
          render(c, style, out);
          out += ')';
        } else {
          render(c, style, out);
        }
      };
      child(f->left);
      out += op_text(f->kind, style);
      child(f->right);
      return;
    }
  }
}

void render_smt(const Formula& f, std::string& out) {
  switch (f->kind) {
    case Kind::Atom:
      out += '(';
      out += f->pred;
      for (const Term& t : f->args) {
        out += ' ';
        out += t.sym;
      }
      out += ')';
      return;
    case Kind::Not:
      out += "(not ";
      render_smt(f->left, out);
      out += ')';
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      const char* op = f->kind == Kind::And ? "and"
                       : f->kind == Kind::Or ? "or"
                       : f->kind == Kind::Implies ? "=>"
                                                  : "=";
      out += '(';
      out += op;
      out += ' ';
      render_smt(f->left, out);
      out += ' ';
      render_smt(f->right, out);
      out += ')';
      return;
    }
    case Kind::ForAll:
    case Kind::Exists:
      out += f->kind == Kind::ForAll ? "(forall ((" : "(exists ((";
      out += f->bound;
      out += " U)) ";
      render_smt(f->left, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print(const Formula& f, PrintStyle style) {
  std::string out;
  if (style == PrintStyle::SmtAtoms) {
    render_smt(f, out);
  } else {
    render(f, style, out);
  }
  return out;
}

std::uint64_t ast_hash(const Formula& f) { return fnv1a64(print(f, PrintStyle::Ascii)); }

bool formula_less(const Formula& a, const Formula& b) {
  return print(a, PrintStyle::Ascii) < print(b, PrintStyle::Ascii);
}

}  // namespace fo2
