#pragma once

#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "degnli/rational.hpp"
#include "degnli/sorts.hpp"

namespace degnli {

class Term;
using TermPtr = std::shared_ptr<const Term>;

// One AST houses lambda terms, first-order formulas and arithmetic degree
// terms; the Formula/ArithTerm distinctions are enforced by type_check and
// the well-formedness checks, not by separate classes.
enum class TermKind {
  Var,        // typed variable
  Const,      // typed constant (entities, predicates, protocol defaults)
  Abs,        // lambda abstraction
  App,        // application
  Top,        // placeholder truth, eliminated by simplify
  Bot,
  Not,
  And,
  Or,
  Imp,
  Exists,     // typed first-order quantifiers
  Forall,
  Cmp,        // comparison atom; canonical orientation: only <, <=, = stored
  NumLit,     // exact numeric degree literal, optionally carrying a unit
  Threshold,  // theta_{pred}(class): contextual standard degree, uninterpreted
  Sum,        // degree addition
  Diff,       // degree subtraction
};

enum class CmpRel { Lt, Le, Eq };

class Term {
 public:
  TermKind kind() const { return kind_; }
  const std::string& name() const { return name_; }     // Var/Const/Abs/quants/Threshold
  const TypePtr& type() const { return type_; }         // Var/Const/NumLit/Threshold; binder type for Abs/quants
  const std::vector<TermPtr>& kids() const { return kids_; }
  const TermPtr& kid(std::size_t i) const { return kids_[i]; }
  const Rational& value() const { return value_; }      // NumLit
  const std::string& unit() const { return unit_; }     // NumLit; empty once normalized
  CmpRel rel() const { return rel_; }                   // Cmp

  bool is_binder() const {
    return kind_ == TermKind::Abs || kind_ == TermKind::Exists || kind_ == TermKind::Forall;
  }
  bool is_quantifier() const {
    return kind_ == TermKind::Exists || kind_ == TermKind::Forall;
  }
  bool is_arith() const {
    return kind_ == TermKind::NumLit || kind_ == TermKind::Threshold ||
           kind_ == TermKind::Sum || kind_ == TermKind::Diff;
  }

  static TermPtr var(std::string name, TypePtr type) {
    auto t = node(TermKind::Var);
    t->name_ = std::move(name);
    t->type_ = std::move(type);
    return t;
  }
  static TermPtr constant(std::string name, TypePtr type) {
    auto t = node(TermKind::Const);
    t->name_ = std::move(name);
    t->type_ = std::move(type);
    return t;
  }
  static TermPtr abs(std::string var, TypePtr var_type, TermPtr body) {
    auto t = node(TermKind::Abs);
    t->name_ = std::move(var);
    t->type_ = std::move(var_type);
    t->kids_ = {std::move(body)};
    return t;
  }
  static TermPtr app(TermPtr f, TermPtr a) {
    auto t = node(TermKind::App);
    t->kids_ = {std::move(f), std::move(a)};
    return t;
  }
  static TermPtr app(TermPtr f, std::initializer_list<TermPtr> args) {
    TermPtr t = std::move(f);
    for (const TermPtr& a : args) t = app(t, a);
    return t;
  }
  static TermPtr top() {
    static TermPtr t = node(TermKind::Top);
    return t;
  }
  static TermPtr bot() {
    static TermPtr t = node(TermKind::Bot);
    return t;
  }
  static TermPtr negate(TermPtr a) {
    auto t = node(TermKind::Not);
    t->kids_ = {std::move(a)};
    return t;
  }
  static TermPtr conj(TermPtr a, TermPtr b) { return binary(TermKind::And, std::move(a), std::move(b)); }
  static TermPtr disj(TermPtr a, TermPtr b) { return binary(TermKind::Or, std::move(a), std::move(b)); }
  static TermPtr imp(TermPtr a, TermPtr b) { return binary(TermKind::Imp, std::move(a), std::move(b)); }
  // Biconditional as the conjunction of two implications (the connective set
  // is fixed; the prover and printers never need a primitive iff).
  static TermPtr iff(TermPtr a, TermPtr b) {
    return conj(imp(a, b), imp(std::move(b), std::move(a)));
  }
  static TermPtr exists(std::string var, TypePtr var_type, TermPtr body) {
    return quant(TermKind::Exists, std::move(var), std::move(var_type), std::move(body));
  }
  static TermPtr forall(std::string var, TypePtr var_type, TermPtr body) {
    return quant(TermKind::Forall, std::move(var), std::move(var_type), std::move(body));
  }

  // Comparisons normalize to canonical orientation: a > b is stored as b < a,
  // a >= b as b <= a. Only Lt/Le/Eq ever appear in an AST.
  static TermPtr lt(TermPtr a, TermPtr b) { return cmp(CmpRel::Lt, std::move(a), std::move(b)); }
  static TermPtr le(TermPtr a, TermPtr b) { return cmp(CmpRel::Le, std::move(a), std::move(b)); }
  static TermPtr gt(TermPtr a, TermPtr b) { return cmp(CmpRel::Lt, std::move(b), std::move(a)); }
  static TermPtr ge(TermPtr a, TermPtr b) { return cmp(CmpRel::Le, std::move(b), std::move(a)); }
  static TermPtr eq(TermPtr a, TermPtr b) { return cmp(CmpRel::Eq, std::move(a), std::move(b)); }

  static TermPtr num(Rational value, TypePtr degree_type, std::string unit = "") {
    auto t = node(TermKind::NumLit);
    t->value_ = value;
    t->type_ = std::move(degree_type);
    t->unit_ = std::move(unit);
    return t;
  }
  static TermPtr count_num(std::int64_t n) { return num(Rational(n), SemType::count()); }

  static TermPtr theta(std::string pred, TermPtr comparison_class, TypePtr degree_type) {
    auto t = node(TermKind::Threshold);
    t->name_ = std::move(pred);
    t->type_ = std::move(degree_type);
    t->kids_ = {std::move(comparison_class)};
    return t;
  }
  static TermPtr sum(TermPtr a, TermPtr b) { return binary(TermKind::Sum, std::move(a), std::move(b)); }
  static TermPtr diff(TermPtr a, TermPtr b) { return binary(TermKind::Diff, std::move(a), std::move(b)); }

  // Generic node constructor for traversals that rebuild a term with
  // replaced children while keeping every other field intact.
  static TermPtr make(TermKind kind, std::string name, TypePtr type,
                      std::vector<TermPtr> kids, Rational value, std::string unit,
                      CmpRel rel) {
    auto t = node(kind);
    t->name_ = std::move(name);
    t->type_ = std::move(type);
    t->kids_ = std::move(kids);
    t->value_ = std::move(value);
    t->unit_ = std::move(unit);
    t->rel_ = rel;
    return t;
  }

 private:
  static std::shared_ptr<Term> node(TermKind k) {
    auto t = std::make_shared<Term>();
    t->kind_ = k;
    return t;
  }
  static TermPtr binary(TermKind k, TermPtr a, TermPtr b) {
    auto t = node(k);
    t->kids_ = {std::move(a), std::move(b)};
    return t;
  }
  static TermPtr quant(TermKind k, std::string var, TypePtr var_type, TermPtr body) {
    auto t = node(k);
    t->name_ = std::move(var);
    t->type_ = std::move(var_type);
    t->kids_ = {std::move(body)};
    return t;
  }
  static TermPtr cmp(CmpRel rel, TermPtr a, TermPtr b) {
    auto t = node(TermKind::Cmp);
    t->rel_ = rel;
    t->kids_ = {std::move(a), std::move(b)};
    return t;
  }

  TermKind kind_ = TermKind::Top;
  std::string name_;
  TypePtr type_;
  std::vector<TermPtr> kids_;
  Rational value_;
  std::string unit_;
  CmpRel rel_ = CmpRel::Lt;

  friend class std::shared_ptr<Term>;

 public:
  Term() = default;  // for make_shared only; use the factories
};

// Structural equality including bound-variable names (alpha_eq lives in
// reduce.hpp and ignores them).
inline bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind() != b->kind()) return false;
  if (a->name() != b->name()) return false;
  if (a->kind() == TermKind::Cmp && a->rel() != b->rel()) return false;
  if (a->kind() == TermKind::NumLit &&
      (a->value() != b->value() || a->unit() != b->unit())) return false;
  if ((a->type() == nullptr) != (b->type() == nullptr)) return false;
  if (a->type() && !type_eq(a->type(), b->type())) return false;
  if (a->kids().size() != b->kids().size()) return false;
  for (std::size_t i = 0; i < a->kids().size(); ++i)
    if (!term_eq(a->kid(i), b->kid(i))) return false;
  return true;
}

inline void free_vars_into(const TermPtr& t, std::set<std::string>& bound,
                           std::set<std::string>& out) {
  switch (t->kind()) {
    case TermKind::Var:
      if (!bound.count(t->name())) out.insert(t->name());
      return;
    case TermKind::Abs:
    case TermKind::Exists:
    case TermKind::Forall: {
      bool fresh = bound.insert(t->name()).second;
      free_vars_into(t->kid(0), bound, out);
      if (fresh) bound.erase(t->name());
      return;
    }
    default:
      for (const TermPtr& k : t->kids()) free_vars_into(k, bound, out);
  }
}

inline std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  free_vars_into(t, bound, out);
  return out;
}

inline bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

}  // namespace degnli
