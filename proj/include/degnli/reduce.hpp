#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "degnli/error.hpp"
#include "degnli/term.hpp"

namespace degnli {

namespace detail {

inline void all_names(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind() == TermKind::Var || t->kind() == TermKind::Const || t->is_binder())
    out.insert(t->name());
  for (const TermPtr& k : t->kids()) all_names(k, out);
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

inline TermPtr rebuild(const TermPtr& t, std::vector<TermPtr> kids) {
  bool same = kids.size() == t->kids().size();
  if (same)
    for (size_t i = 0; i < kids.size(); ++i)
      if (kids[i] != t->kid(i)) { same = false; break; }
  if (same) return t;
  return Term::make(t->kind(), t->name(), t->type(), std::move(kids), t->value(), t->unit(),
                    t->rel());
}

}  // namespace detail

// Renames the binder of `t` (an Abs/Exists/Forall) to `fresh`, which must not
// occur in the body.
TermPtr subst(const TermPtr& t, const std::string& name, const TermPtr& value);

inline TermPtr rename_binder(const TermPtr& t, const std::string& fresh) {
  return Term::make(t->kind(), fresh, t->type(),
                    {subst(t->kid(0), t->name(), Term::var(fresh, t->type()))}, t->value(),
                    t->unit(), t->rel());
}

// Capture-avoiding substitution of `value` for free occurrences of `name`.
inline TermPtr subst(const TermPtr& t, const std::string& name, const TermPtr& value) {
  switch (t->kind()) {
    case TermKind::Var:
      return t->name() == name ? value : t;
    case TermKind::Const:
    case TermKind::Top:
    case TermKind::Bot:
    case TermKind::NumLit:
      return t;
    default:
      break;
  }
  if (t->is_binder()) {
    if (t->name() == name) return t;  // shadowed
    std::set<std::string> fv = free_vars(value);
    if (fv.count(t->name())) {
      std::set<std::string> avoid = fv;
      detail::all_names(t->kid(0), avoid);
      avoid.insert(name);
      return subst(rename_binder(t, detail::fresh_name(t->name(), avoid)), name, value);
    }
  }
  std::vector<TermPtr> kids;
  kids.reserve(t->kids().size());
  for (const TermPtr& k : t->kids()) kids.push_back(subst(k, name, value));
  return detail::rebuild(t, std::move(kids));
}

// Normal-order beta reduction to beta-normal form.  Terms are simply typed,
// so this terminates; `fuel` guards against accidental ill-typed loops.
inline TermPtr beta_reduce(const TermPtr& t, int* fuel = nullptr) {
  int local_fuel = 1000000;
  if (!fuel) fuel = &local_fuel;
  if (--*fuel <= 0) throw RewriteLoop("beta reduction exceeded step budget");
  if (t->kind() == TermKind::App) {
    TermPtr f = beta_reduce(t->kid(0), fuel);
    if (f->kind() == TermKind::Abs)
      return beta_reduce(subst(f->kid(0), f->name(), t->kid(1)), fuel);
    TermPtr a = beta_reduce(t->kid(1), fuel);
    return detail::rebuild(t, {f, a});
  }
  std::vector<TermPtr> kids;
  kids.reserve(t->kids().size());
  for (const TermPtr& k : t->kids()) kids.push_back(beta_reduce(k, fuel));
  return detail::rebuild(t, std::move(kids));
}

namespace detail {

inline bool alpha_eq_rec(const TermPtr& a, const TermPtr& b, std::map<std::string, int>& ma,
                         std::map<std::string, int>& mb, int& counter) {
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case TermKind::Var: {
      auto ia = ma.find(a->name());
      auto ib = mb.find(b->name());
      if ((ia != ma.end()) != (ib != mb.end())) return false;
      if (ia != ma.end()) return ia->second == ib->second;
      return a->name() == b->name() && type_eq(a->type(), b->type());
    }
    case TermKind::Const:
      return a->name() == b->name() && type_eq(a->type(), b->type());
    case TermKind::NumLit:
      return a->value() == b->value() && a->unit() == b->unit() &&
             type_eq(a->type(), b->type());
    case TermKind::Threshold:
      if (a->name() != b->name() || !type_eq(a->type(), b->type())) return false;
      break;
    case TermKind::Cmp:
      if (a->rel() != b->rel()) return false;
      break;
    default:
      break;
  }
  if (a->is_binder()) {
    if (!type_eq(a->type(), b->type())) return false;
    int id = counter++;
    auto sa = ma.find(a->name()) != ma.end() ? std::optional<int>(ma[a->name()])
                                             : std::nullopt;
    auto sb = mb.find(b->name()) != mb.end() ? std::optional<int>(mb[b->name()])
                                             : std::nullopt;
    ma[a->name()] = id;
    mb[b->name()] = id;
    bool ok = alpha_eq_rec(a->kid(0), b->kid(0), ma, mb, counter);
    if (sa) ma[a->name()] = *sa; else ma.erase(a->name());
    if (sb) mb[b->name()] = *sb; else mb.erase(b->name());
    return ok;
  }
  if (a->kids().size() != b->kids().size()) return false;
  for (size_t i = 0; i < a->kids().size(); ++i)
    if (!alpha_eq_rec(a->kid(i), b->kid(i), ma, mb, counter)) return false;
  return true;
}

}  // namespace detail

// Structural equality up to renaming of bound variables.
inline bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  std::map<std::string, int> ma, mb;
  int counter = 0;
  return detail::alpha_eq_rec(a, b, ma, mb, counter);
}

}  // namespace degnli
