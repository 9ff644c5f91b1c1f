#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "degnli/error.hpp"
#include "degnli/term.hpp"
#include "degnli/typecheck.hpp"

namespace degnli {

// ---------------------------------------------------------------------------
// Canonical text form: prefix s-expressions.
//   (exists ((d (meas length))) (and (tall john d) (lt (theta tall U) d)))
// Connectives: not/and/or/imp; comparisons lt/le/=; arithmetic +/-;
// (theta pred class); (qty 6 foot) for unit-tagged literals; (lam (x ty) b)
// for abstractions.  Atoms: numbers are exact rationals ("1828.8", "9144/5");
// identifiers are variables when bound, constants otherwise.
// ---------------------------------------------------------------------------

inline std::string format_type(const TypePtr& t) { return t->str(); }

inline std::string format_term(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Var:
    case TermKind::Const:
      return t->name();
    case TermKind::Top:
      return "(top)";
    case TermKind::Bot:
      return "(bot)";
    case TermKind::Not:
      return "(not " + format_term(t->kid(0)) + ")";
    case TermKind::And:
      return "(and " + format_term(t->kid(0)) + " " + format_term(t->kid(1)) + ")";
    case TermKind::Or:
      return "(or " + format_term(t->kid(0)) + " " + format_term(t->kid(1)) + ")";
    case TermKind::Imp:
      return "(imp " + format_term(t->kid(0)) + " " + format_term(t->kid(1)) + ")";
    case TermKind::Exists:
    case TermKind::Forall: {
      std::string head = t->kind() == TermKind::Exists ? "exists" : "forall";
      return "(" + head + " ((" + t->name() + " " + format_type(t->type()) + ")) " +
             format_term(t->kid(0)) + ")";
    }
    case TermKind::Abs:
      return "(lam (" + t->name() + " " + format_type(t->type()) + ") " +
             format_term(t->kid(0)) + ")";
    case TermKind::App: {
      // Flatten the application spine into (head a1 a2 ...).
      std::vector<TermPtr> rev_args;
      TermPtr cur = t;
      while (cur->kind() == TermKind::App) {
        rev_args.push_back(cur->kid(1));
        cur = cur->kid(0);
      }
      std::string out = "(" + format_term(cur);
      for (auto it = rev_args.rbegin(); it != rev_args.rend(); ++it)
        out += " " + format_term(*it);
      return out + ")";
    }
    case TermKind::Cmp: {
      std::string head = t->rel() == CmpRel::Lt ? "lt" : t->rel() == CmpRel::Le ? "le" : "=";
      return "(" + head + " " + format_term(t->kid(0)) + " " + format_term(t->kid(1)) + ")";
    }
    case TermKind::NumLit:
      if (t->unit().empty()) return t->value().str();
      return "(qty " + t->value().str() + " " + t->unit() + ")";
    case TermKind::Threshold:
      return "(theta " + t->name() + " " + format_term(t->kid(0)) + ")";
    case TermKind::Sum:
      return "(+ " + format_term(t->kid(0)) + " " + format_term(t->kid(1)) + ")";
    case TermKind::Diff:
      return "(- " + format_term(t->kid(0)) + " " + format_term(t->kid(1)) + ")";
  }
  throw Error("unreachable term kind in format_term");
}

// ---------------------------------------------------------------------------
// Reader
// ---------------------------------------------------------------------------

namespace sexp {

struct Node {
  bool is_atom = false;
  std::string atom;
  std::vector<Node> kids;
};

inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ';')) {
    if (s[i] == ';') {  // line comment
      while (i < s.size() && s[i] != '\n') ++i;
    } else {
      ++i;
    }
  }
}

inline Node parse_node(const std::string& s, std::size_t& i) {
  skip_ws(s, i);
  if (i >= s.size()) throw FormatError("unexpected end of input");
  if (s[i] == '(') {
    ++i;
    Node n;
    while (true) {
      skip_ws(s, i);
      if (i >= s.size()) throw FormatError("unterminated list");
      if (s[i] == ')') { ++i; return n; }
      n.kids.push_back(parse_node(s, i));
    }
  }
  if (s[i] == ')') throw FormatError("unexpected ')'");
  Node n;
  n.is_atom = true;
  std::size_t start = i;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
         s[i] != ')' && s[i] != ';')
    ++i;
  n.atom = s.substr(start, i - start);
  return n;
}

inline Node parse(const std::string& s) {
  std::size_t i = 0;
  Node n = parse_node(s, i);
  skip_ws(s, i);
  if (i != s.size()) throw FormatError("trailing input after term: " + s.substr(i));
  return n;
}

inline bool is_number(const std::string& a) {
  if (a.empty()) return false;
  std::size_t i = a[0] == '-' ? 1 : 0;
  if (i >= a.size() || !std::isdigit(static_cast<unsigned char>(a[i]))) return false;
  bool seen_sep = false;
  for (; i < a.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(a[i]))) continue;
    if ((a[i] == '.' || a[i] == '/') && !seen_sep) { seen_sep = true; continue; }
    return false;
  }
  return true;
}

}  // namespace sexp

class TermReader {
 public:
  // `signature` maps constant names to types; unseen constants are inferred
  // (entities in argument position, Prop-valued predicates in head position).
  explicit TermReader(std::map<std::string, TypePtr> signature = {})
      : sig_(std::move(signature)) {}

  TermPtr read(const std::string& text) {
    sexp::Node n = sexp::parse(text);
    std::map<std::string, TypePtr> env;
    return term(n, env, nullptr);
  }

  const std::map<std::string, TypePtr>& signature() const { return sig_; }

 private:
  TypePtr read_type(const sexp::Node& n) {
    if (n.is_atom) {
      if (n.atom == "ent") return SemType::entity();
      if (n.atom == "prop") return SemType::prop();
      if (n.atom == "count") return SemType::count();
      throw FormatError("unknown sort: " + n.atom);
    }
    if (n.kids.size() == 2 && n.kids[0].is_atom && n.kids[0].atom == "meas" &&
        n.kids[1].is_atom)
      return SemType::measure(n.kids[1].atom);
    if (n.kids.size() == 3 && n.kids[0].is_atom && n.kids[0].atom == "fun")
      return SemType::fun(read_type(n.kids[1]), read_type(n.kids[2]));
    throw FormatError("malformed sort expression");
  }

  TermPtr atom_term(const std::string& a, std::map<std::string, TypePtr>& env,
                    const TypePtr& expected) {
    if (sexp::is_number(a)) {
      TypePtr ty = expected && expected->kind() == SemType::Degree ? expected
                                                                   : SemType::count();
      return Term::num(Rational::parse(a), ty);
    }
    auto ev = env.find(a);
    if (ev != env.end()) return Term::var(a, ev->second);
    auto sv = sig_.find(a);
    if (sv != sig_.end()) return Term::constant(a, sv->second);
    TypePtr ty = expected ? expected : SemType::entity();
    sig_[a] = ty;
    return Term::constant(a, ty);
  }

  std::pair<std::string, TypePtr> read_binder(const sexp::Node& n) {
    // (x sort) or ((x sort)) for the quantifier binder-list form.
    const sexp::Node* b = &n;
    if (!n.is_atom && n.kids.size() == 1 && !n.kids[0].is_atom) b = &n.kids[0];
    if (b->is_atom || b->kids.size() != 2 || !b->kids[0].is_atom)
      throw FormatError("malformed binder");
    return {b->kids[0].atom, read_type(b->kids[1])};
  }

  TermPtr term(const sexp::Node& n, std::map<std::string, TypePtr>& env,
               const TypePtr& expected) {
    if (n.is_atom) return atom_term(n.atom, env, expected);
    if (n.kids.empty()) throw FormatError("empty list");
    const sexp::Node& head = n.kids[0];
    if (head.is_atom) {
      const std::string& h = head.atom;
      auto arity = [&](std::size_t k) {
        if (n.kids.size() != k + 1)
          throw FormatError(h + " expects " + std::to_string(k) + " arguments");
      };
      if (h == "top") { arity(0); return Term::top(); }
      if (h == "bot") { arity(0); return Term::bot(); }
      if (h == "not") { arity(1); return Term::negate(term(n.kids[1], env, nullptr)); }
      if (h == "and" || h == "or" || h == "imp") {
        if (n.kids.size() < 3) throw FormatError(h + " expects at least 2 arguments");
        // Right-associative chains: (and a b c) == (and a (and b c)).
        std::vector<TermPtr> parts;
        for (std::size_t i = 1; i < n.kids.size(); ++i)
          parts.push_back(term(n.kids[i], env, nullptr));
        TermPtr acc = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;)
          acc = h == "and"  ? Term::conj(parts[i], acc)
                : h == "or" ? Term::disj(parts[i], acc)
                            : Term::imp(parts[i], acc);
        return acc;
      }
      if (h == "exists" || h == "forall" || h == "lam") {
        arity(2);
        auto [name, ty] = read_binder(n.kids[1]);
        auto saved = env.find(name) != env.end() ? std::optional<TypePtr>(env[name])
                                                 : std::nullopt;
        env[name] = ty;
        TermPtr body = term(n.kids[2], env, nullptr);
        if (saved) env[name] = *saved; else env.erase(name);
        if (h == "exists") return Term::exists(name, ty, body);
        if (h == "forall") return Term::forall(name, ty, body);
        return Term::abs(name, ty, body);
      }
      if (h == "lt" || h == "le" || h == "=" || h == "+" || h == "-") {
        arity(2);
        // Read the side with independent type information first so a bare
        // numeral on the other side picks up the right degree sort.
        bool second_first = n.kids[1].is_atom && sexp::is_number(n.kids[1].atom) &&
                            !(n.kids[2].is_atom && sexp::is_number(n.kids[2].atom));
        TermPtr a, b;
        if (second_first) {
          b = term(n.kids[2], env, nullptr);
          a = term(n.kids[1], env, infer_degree(b));
        } else {
          a = term(n.kids[1], env, nullptr);
          b = term(n.kids[2], env, infer_degree(a));
        }
        if (h == "lt") return Term::lt(a, b);
        if (h == "le") return Term::le(a, b);
        if (h == "=") return Term::eq(a, b);
        if (h == "+") return Term::sum(a, b);
        return Term::diff(a, b);
      }
      if (h == "theta") {
        arity(2);
        if (!n.kids[1].is_atom) throw FormatError("theta expects a predicate name");
        TermPtr cls = term(n.kids[2], env, SemType::entity());
        TypePtr ty = theta_sort(n.kids[1].atom, expected);
        return Term::theta(n.kids[1].atom, cls, ty);
      }
      if (h == "qty") {
        arity(2);
        if (!n.kids[1].is_atom || !sexp::is_number(n.kids[1].atom) || !n.kids[2].is_atom)
          throw FormatError("qty expects a number and a unit name");
        TypePtr ty = expected && expected->kind() == SemType::Degree
                         ? expected
                         : SemType::measure(unit_dim(n.kids[2].atom));
        return Term::num(Rational::parse(n.kids[1].atom), ty, n.kids[2].atom);
      }
      if (h == "const") {
        arity(2);
        if (!n.kids[1].is_atom) throw FormatError("const expects a name");
        return Term::constant(n.kids[1].atom, read_type(n.kids[2]));
      }
    }
    // Application spine: (head a1 a2 ...).
    TermPtr f = head.is_atom ? head_term(head.atom, n, env) : term(head, env, nullptr);
    for (std::size_t i = 1; i < n.kids.size(); ++i) {
      TypePtr want;
      TypePtr ft = try_type(f);
      if (ft && ft->kind() == SemType::Fun) want = ft->arg();
      f = Term::app(f, term(n.kids[i], env, want));
    }
    return f;
  }

  // Predicate in head position with no declared type: infer
  // arg-types -> prop from the spelled-out arguments.
  TermPtr head_term(const std::string& name, const sexp::Node& n,
                    std::map<std::string, TypePtr>& env) {
    auto ev = env.find(name);
    if (ev != env.end()) return Term::var(name, ev->second);
    auto sv = sig_.find(name);
    if (sv != sig_.end()) return Term::constant(name, sv->second);
    // Two-pass: read the arguments against a scratch copy of the signature
    // to learn their types, then declare the predicate.
    std::vector<TypePtr> arg_types;
    {
      TermReader scratch(sig_);
      for (std::size_t i = 1; i < n.kids.size(); ++i) {
        TermPtr a = scratch.term(n.kids[i], env, nullptr);
        TypePtr ty = try_type(a);
        if (!ty) throw FormatError("cannot infer argument type for predicate " + name);
        arg_types.push_back(ty);
      }
    }
    TypePtr ty = SemType::prop();
    for (auto it = arg_types.rbegin(); it != arg_types.rend(); ++it)
      ty = SemType::fun(*it, ty);
    sig_[name] = ty;
    return Term::constant(name, ty);
  }

  // Best-effort type of an already-built subterm (enough for inference).
  static TypePtr try_type(const TermPtr& t) {
    switch (t->kind()) {
      case TermKind::Var:
      case TermKind::Const:
      case TermKind::NumLit:
      case TermKind::Threshold:
        return t->type();
      case TermKind::Sum:
      case TermKind::Diff:
        return try_type(t->kid(0));
      case TermKind::App: {
        TypePtr f = try_type(t->kid(0));
        return f && f->kind() == SemType::Fun ? f->res() : nullptr;
      }
      case TermKind::Abs: {
        TypePtr b = try_type(t->kid(0));
        return b ? SemType::fun(t->type(), b) : nullptr;
      }
      default:
        return SemType::prop();
    }
  }

  static TypePtr infer_degree(const TermPtr& t) {
    TypePtr ty = try_type(t);
    return ty && ty->kind() == SemType::Degree ? ty : nullptr;
  }

  TypePtr theta_sort(const std::string& pred, const TypePtr& expected) {
    if (expected && expected->kind() == SemType::Degree) return expected;
    auto sv = sig_.find(pred);
    if (sv != sig_.end()) {
      // pred : ent -> degree -> prop; the threshold shares the degree sort.
      TypePtr ty = sv->second;
      if (ty->kind() == SemType::Fun && ty->res()->kind() == SemType::Fun &&
          ty->res()->arg()->kind() == SemType::Degree)
        return ty->res()->arg();
    }
    if (pred == "many" || pred == "few" || pred == "afew") return SemType::count();
    throw FormatError("cannot infer degree sort of theta " + pred +
                      "; declare the predicate in the signature");
  }

  std::string unit_dim(const std::string& unit) {
    // Only needed when a qty literal appears with no contextual sort.
    if (unit == "mm" || unit == "cm" || unit == "m" || unit == "inch" || unit == "inches" ||
        unit == "in" || unit == "foot" || unit == "feet" || unit == "ft")
      return "length";
    if (unit == "g" || unit == "gram" || unit == "grams" || unit == "kg" ||
        unit == "kilogram" || unit == "kilograms")
      return "weight";
    if (unit == "year" || unit == "years") return "age";
    throw FormatError("cannot infer dimension of unit " + unit);
  }

  std::map<std::string, TypePtr> sig_;
};

// Reads the canonical text form of a closed formula; `signature` may declare
// degree predicates (e.g. tall : (fun ent (fun (meas length) prop))) that the
// text applies.
inline TermPtr read_term(const std::string& text,
                         std::map<std::string, TypePtr> signature = {}) {
  return TermReader(std::move(signature)).read(text);
}

inline TermPtr read_formula(const std::string& text,
                            std::map<std::string, TypePtr> signature = {}) {
  TermPtr t = read_term(text, std::move(signature));
  check_formula(t);
  return t;
}

}  // namespace degnli
