#pragma once

#include <map>
#include <string>
#include <vector>

#include "degnli/kb.hpp"
#include "degnli/term.hpp"
#include "degnli/typecheck.hpp"

namespace degnli {

// --------------------------------------------------------------------------
// Scale axioms, instantiated per problem from the predicates its formulas
// actually use.
//
//   closure(P):       forall x d1 d2. P(x,d1) and d2 <= d1  ->  P(x,d2)
//   antonym(N, P):    forall x d.     N(x,d) <-> not P(x,d)
//
// Downward closure holds only for positive poles ("tall to degree d" means
// the subject's extent reaches d, so every smaller degree also qualifies).
// A negative pole is upward closed instead; its behaviour follows from the
// antonym axiom, so emitting closure for it would be unsound and it gets
// none.  Thresholds are uninterpreted constants and get no axioms at all.
// --------------------------------------------------------------------------

namespace detail {

// Gradable predicate constants used in a formula: name -> degree sort.
inline void collect_gradables(const TermPtr& t, const KB& kb,
                              std::map<std::string, TypePtr>& out) {
  if (!t) return;
  if (t->kind() == TermKind::Const && kb.is_gradable(t->name())) {
    const TypePtr& ty = t->type();
    if (ty && ty->kind() == SemType::Fun && ty->arg()->kind() == SemType::Entity &&
        ty->res()->kind() == SemType::Fun && ty->res()->arg()->kind() == SemType::Degree &&
        ty->res()->res()->kind() == SemType::Prop)
      out.emplace(t->name(), ty->res()->arg());
  }
  for (const TermPtr& k : t->kids()) collect_gradables(k, kb, out);
}

inline TermPtr gradable_const(const std::string& name, const TypePtr& sort) {
  return Term::constant(
      name, SemType::fun(SemType::entity(), SemType::fun(sort, SemType::prop())));
}

}  // namespace detail

struct Axiom {
  std::string name;
  TermPtr formula;
};

// Signature of a problem: every gradable predicate occurring in any of the
// formulas, with negative poles pulling in their positive partners (the
// antonym axiom mentions both sides).
inline std::map<std::string, TypePtr> gradable_signature(const std::vector<TermPtr>& formulas,
                                                         const KB& kb) {
  std::map<std::string, TypePtr> sig;
  for (const TermPtr& f : formulas) detail::collect_gradables(f, kb, sig);
  std::map<std::string, TypePtr> extra;
  for (const auto& [name, sort] : sig)
    if (kb.is_negative(name)) extra.emplace(kb.positive_pole(name), sort);
  sig.insert(extra.begin(), extra.end());
  return sig;
}

inline Axiom closure_axiom(const std::string& pred, const TypePtr& sort) {
  TermPtr p = detail::gradable_const(pred, sort);
  TermPtr x = Term::var("x", SemType::entity());
  TermPtr d1 = Term::var("d1", sort);
  TermPtr d2 = Term::var("d2", sort);
  TermPtr body = Term::imp(Term::conj(Term::app(p, {x, d1}), Term::le(d2, d1)),
                           Term::app(p, {x, d2}));
  TermPtr f = Term::forall("x", SemType::entity(),
                           Term::forall("d1", sort, Term::forall("d2", sort, body)));
  return {"closure(" + pred + ")", f};
}

inline Axiom antonym_axiom(const std::string& neg, const std::string& pos,
                           const TypePtr& sort) {
  TermPtr n = detail::gradable_const(neg, sort);
  TermPtr p = detail::gradable_const(pos, sort);
  TermPtr x = Term::var("x", SemType::entity());
  TermPtr d = Term::var("d", sort);
  TermPtr napp = Term::app(n, {x, d});
  TermPtr papp = Term::app(p, {x, d});
  TermPtr body = Term::conj(Term::imp(napp, Term::negate(papp)),
                            Term::imp(Term::negate(papp), napp));
  TermPtr f = Term::forall("x", SemType::entity(), Term::forall("d", sort, body));
  return {"antonym(" + neg + "," + pos + ")", f};
}

// The axioms licensed by a set of formulas: one closure axiom per used
// positive pole (including "many", whose closure makes counting downward
// monotone), and one antonym axiom per used negative pole.  Deterministic
// order (sorted by predicate name).
inline std::vector<Axiom> instantiate_axioms(const std::vector<TermPtr>& formulas,
                                             const KB& kb) {
  std::map<std::string, TypePtr> sig = gradable_signature(formulas, kb);
  std::vector<Axiom> out;
  for (const auto& [name, sort] : sig) {
    if (kb.is_negative(name)) continue;
    out.push_back(closure_axiom(name, sort));
  }
  for (const auto& [name, sort] : sig) {
    if (!kb.is_negative(name)) continue;
    out.push_back(antonym_axiom(name, kb.positive_pole(name), sort));
  }
  for (const Axiom& a : out) check_formula(a.formula);
  return out;
}

}  // namespace degnli
