#pragma once

#include <map>
#include <string>

#include "degnli/error.hpp"
#include "degnli/term.hpp"

namespace degnli {

namespace detail {

inline TypePtr type_check_rec(const TermPtr& t, std::map<std::string, TypePtr>& env,
                              std::map<std::string, TypePtr>& consts) {
  switch (t->kind()) {
    case TermKind::Var: {
      auto it = env.find(t->name());
      if (it != env.end()) {
        if (!type_eq(it->second, t->type()))
          throw TypeMismatch("variable " + t->name() + " occurs as " + t->type()->str() +
                             " where binder gave " + it->second->str());
        return it->second;
      }
      if (!t->type()) throw TypeMismatch("untyped free variable " + t->name());
      return t->type();
    }
    case TermKind::Const: {
      if (!t->type()) throw TypeMismatch("untyped constant " + t->name());
      auto [it, fresh] = consts.emplace(t->name(), t->type());
      if (!fresh && !type_eq(it->second, t->type()))
        throw TypeMismatch("constant " + t->name() + " used at both " + it->second->str() +
                           " and " + t->type()->str());
      return t->type();
    }
    case TermKind::Abs: {
      auto saved = env.find(t->name()) != env.end()
                       ? std::optional<TypePtr>(env[t->name()])
                       : std::nullopt;
      env[t->name()] = t->type();
      TypePtr body = type_check_rec(t->kid(0), env, consts);
      if (saved) env[t->name()] = *saved; else env.erase(t->name());
      return SemType::fun(t->type(), body);
    }
    case TermKind::App: {
      TypePtr f = type_check_rec(t->kid(0), env, consts);
      TypePtr a = type_check_rec(t->kid(1), env, consts);
      if (f->kind() != SemType::Fun)
        throw TypeMismatch("application of non-function of type " + f->str());
      if (!type_eq(f->arg(), a))
        throw TypeMismatch("argument type " + a->str() + " where " + f->arg()->str() +
                           " expected");
      return f->res();
    }
    case TermKind::Top:
    case TermKind::Bot:
      return SemType::prop();
    case TermKind::Not: {
      if (type_check_rec(t->kid(0), env, consts)->kind() != SemType::Prop)
        throw TypeMismatch("negation of non-proposition");
      return SemType::prop();
    }
    case TermKind::And:
    case TermKind::Or:
    case TermKind::Imp: {
      for (const TermPtr& k : t->kids())
        if (type_check_rec(k, env, consts)->kind() != SemType::Prop)
          throw TypeMismatch("connective over non-proposition");
      return SemType::prop();
    }
    case TermKind::Exists:
    case TermKind::Forall: {
      auto saved = env.find(t->name()) != env.end()
                       ? std::optional<TypePtr>(env[t->name()])
                       : std::nullopt;
      env[t->name()] = t->type();
      TypePtr body = type_check_rec(t->kid(0), env, consts);
      if (saved) env[t->name()] = *saved; else env.erase(t->name());
      if (body->kind() != SemType::Prop) throw TypeMismatch("quantifier over non-proposition");
      return SemType::prop();
    }
    case TermKind::Cmp: {
      TypePtr l = type_check_rec(t->kid(0), env, consts);
      TypePtr r = type_check_rec(t->kid(1), env, consts);
      if (t->rel() == CmpRel::Eq && l->kind() == SemType::Entity &&
          r->kind() == SemType::Entity)
        return SemType::prop();
      if (l->kind() != SemType::Degree || r->kind() != SemType::Degree)
        throw TypeMismatch("comparison over non-degrees (" + l->str() + ", " + r->str() + ")");
      if (!type_eq(l, r)) throw SortClash("comparison mixes " + l->str() + " and " + r->str());
      return SemType::prop();
    }
    case TermKind::NumLit: {
      if (!t->type() || t->type()->kind() != SemType::Degree)
        throw TypeMismatch("numeric literal with non-degree type");
      if (t->type()->is_count() && !t->value().is_integer())
        throw SortClash("non-integer count literal " + t->value().str());
      return t->type();
    }
    case TermKind::Threshold: {
      if (type_check_rec(t->kid(0), env, consts)->kind() != SemType::Entity)
        throw TypeMismatch("threshold comparison class must be an entity");
      if (!t->type() || t->type()->kind() != SemType::Degree)
        throw TypeMismatch("threshold with non-degree type");
      return t->type();
    }
    case TermKind::Sum:
    case TermKind::Diff: {
      TypePtr l = type_check_rec(t->kid(0), env, consts);
      TypePtr r = type_check_rec(t->kid(1), env, consts);
      if (l->kind() != SemType::Degree || r->kind() != SemType::Degree)
        throw TypeMismatch("arithmetic over non-degrees");
      if (!type_eq(l, r)) throw SortClash("arithmetic mixes " + l->str() + " and " + r->str());
      return l;
    }
  }
  throw Error("unreachable term kind");
}

}  // namespace detail

// Checks a term against the simply-typed discipline and returns its type.
// `env` supplies types for free variables; constants must be used at one
// type throughout (this is where predicate-arity sort clashes surface).
inline TypePtr type_check(const TermPtr& t, std::map<std::string, TypePtr> env = {}) {
  std::map<std::string, TypePtr> consts;
  return detail::type_check_rec(t, env, consts);
}

// A Formula is a closed, Prop-typed, beta-normal term.
inline bool is_beta_normal(const TermPtr& t) {
  if (t->kind() == TermKind::App && t->kid(0)->kind() == TermKind::Abs) return false;
  for (const TermPtr& k : t->kids())
    if (!is_beta_normal(k)) return false;
  return true;
}

inline void check_formula(const TermPtr& t) {
  if (!is_closed(t)) {
    std::string names;
    for (const std::string& v : free_vars(t)) names += " " + v;
    throw TypeMismatch("formula has free variables:" + names);
  }
  if (!is_beta_normal(t)) throw TypeMismatch("formula is not beta-normal");
  if (type_check(t)->kind() != SemType::Prop) throw TypeMismatch("formula is not Prop-typed");
}

}  // namespace degnli
