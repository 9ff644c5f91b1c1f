#pragma once

#include <string>
#include <vector>

#include "degnli/error.hpp"
#include "degnli/reduce.hpp"
#include "degnli/term.hpp"

namespace degnli {

namespace detail {

inline void flatten_conj(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->kind() == TermKind::And) {
    flatten_conj(t->kid(0), out);
    flatten_conj(t->kid(1), out);
  } else {
    out.push_back(t);
  }
}

inline TermPtr rebuild_conj(const std::vector<TermPtr>& conjs) {
  if (conjs.empty()) return Term::top();
  TermPtr acc = conjs.back();
  for (std::size_t i = conjs.size() - 1; i-- > 0;) acc = Term::conj(conjs[i], acc);
  return acc;
}

// If `lit` is an equation pinning variable `var` to a term not containing it,
// returns that term.
inline TermPtr pins_variable(const TermPtr& lit, const std::string& var) {
  if (lit->kind() != TermKind::Cmp || lit->rel() != CmpRel::Eq) return nullptr;
  const TermPtr& a = lit->kid(0);
  const TermPtr& b = lit->kid(1);
  if (a->kind() == TermKind::Var && a->name() == var && !free_vars(b).count(var)) return b;
  if (b->kind() == TermKind::Var && b->name() == var && !free_vars(a).count(var)) return a;
  return nullptr;
}

inline bool is_zero_literal(const TermPtr& t) {
  return t->kind() == TermKind::NumLit && t->unit().empty() && t->value().is_zero();
}

// Local rules; assumes children are already simplified.
inline TermPtr simp_node(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::And: {
      const TermPtr& a = t->kid(0);
      const TermPtr& b = t->kid(1);
      if (a->kind() == TermKind::Bot || b->kind() == TermKind::Bot) return Term::bot();
      if (a->kind() == TermKind::Top) return b;
      if (b->kind() == TermKind::Top) return a;
      return t;
    }
    case TermKind::Or: {
      const TermPtr& a = t->kid(0);
      const TermPtr& b = t->kid(1);
      if (a->kind() == TermKind::Top || b->kind() == TermKind::Top) return Term::top();
      if (a->kind() == TermKind::Bot) return b;
      if (b->kind() == TermKind::Bot) return a;
      return t;
    }
    case TermKind::Not: {
      const TermPtr& a = t->kid(0);
      if (a->kind() == TermKind::Top) return Term::bot();
      if (a->kind() == TermKind::Bot) return Term::top();
      if (a->kind() == TermKind::Not) return a->kid(0);
      return t;
    }
    case TermKind::Imp: {
      const TermPtr& a = t->kid(0);
      const TermPtr& b = t->kid(1);
      if (a->kind() == TermKind::Top) return b;
      if (a->kind() == TermKind::Bot) return Term::top();
      if (b->kind() == TermKind::Top) return Term::top();
      return t;
    }
    case TermKind::Cmp: {
      const TermPtr& a = t->kid(0);
      const TermPtr& b = t->kid(1);
      if (a->kind() == TermKind::NumLit && b->kind() == TermKind::NumLit &&
          a->unit().empty() && b->unit().empty()) {
        bool holds = t->rel() == CmpRel::Lt   ? a->value() < b->value()
                     : t->rel() == CmpRel::Le ? a->value() <= b->value()
                                              : a->value() == b->value();
        return holds ? Term::top() : Term::bot();
      }
      if (term_eq(a, b)) {
        if (t->rel() == CmpRel::Lt) return Term::bot();
        return Term::top();  // x = x, x <= x
      }
      return t;
    }
    case TermKind::Sum:
    case TermKind::Diff: {
      const TermPtr& a = t->kid(0);
      const TermPtr& b = t->kid(1);
      if (a->kind() == TermKind::NumLit && b->kind() == TermKind::NumLit &&
          a->unit().empty() && b->unit().empty()) {
        Rational v = t->kind() == TermKind::Sum ? a->value() + b->value()
                                                : a->value() - b->value();
        return Term::num(v, a->type());
      }
      if (is_zero_literal(b)) return a;
      if (t->kind() == TermKind::Sum && is_zero_literal(a)) return b;
      return t;
    }
    case TermKind::Exists: {
      const TermPtr& body = t->kid(0);
      if (!free_vars(body).count(t->name())) return body;
      std::vector<TermPtr> conjs;
      flatten_conj(body, conjs);
      for (std::size_t i = 0; i < conjs.size(); ++i) {
        if (TermPtr pinned = pins_variable(conjs[i], t->name())) {
          std::vector<TermPtr> rest;
          for (std::size_t j = 0; j < conjs.size(); ++j)
            if (j != i) rest.push_back(subst(conjs[j], t->name(), pinned));
          return rebuild_conj(rest);
        }
      }
      return t;
    }
    case TermKind::Forall: {
      const TermPtr& body = t->kid(0);
      if (!free_vars(body).count(t->name())) return body;
      if (body->kind() != TermKind::Imp) return t;
      std::vector<TermPtr> conjs;
      flatten_conj(body->kid(0), conjs);
      for (std::size_t i = 0; i < conjs.size(); ++i) {
        if (TermPtr pinned = pins_variable(conjs[i], t->name())) {
          std::vector<TermPtr> rest;
          for (std::size_t j = 0; j < conjs.size(); ++j)
            if (j != i) rest.push_back(subst(conjs[j], t->name(), pinned));
          TermPtr cons = subst(body->kid(1), t->name(), pinned);
          if (rest.empty()) return cons;
          return Term::imp(rebuild_conj(rest), cons);
        }
      }
      return t;
    }
    default:
      return t;
  }
}

inline TermPtr simplify_pass(const TermPtr& t) {
  std::vector<TermPtr> kids;
  kids.reserve(t->kids().size());
  for (const TermPtr& k : t->kids()) kids.push_back(simplify_pass(k));
  return simp_node(rebuild(t, std::move(kids)));
}

}  // namespace detail

// Truth-preserving logical cleanup: unit/absorption laws for the
// connectives, double-negation elimination, constant folding of ground
// comparisons and arithmetic, unused-quantifier elimination, and one-point
// elimination of pinned quantified variables.  Runs bottom-up passes to a
// fixpoint.
inline TermPtr simplify(const TermPtr& t) {
  TermPtr cur = t;
  for (int round = 0; round < 100; ++round) {
    TermPtr next = detail::simplify_pass(cur);
    if (term_eq(next, cur)) return cur;
    cur = next;
  }
  throw RewriteLoop("simplify did not reach a fixpoint within 100 passes");
}

}  // namespace degnli
