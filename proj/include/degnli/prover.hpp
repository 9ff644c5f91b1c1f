#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "degnli/axioms.hpp"
#include "degnli/error.hpp"
#include "degnli/format.hpp"
#include "degnli/linarith.hpp"
#include "degnli/rational.hpp"
#include "degnli/reduce.hpp"
#include "degnli/simplify.hpp"
#include "degnli/sorts.hpp"
#include "degnli/term.hpp"

namespace degnli {

// ---------------------------------------------------------------------------
// Refutation prover for the first-order fragment produced by the semantics:
// quantifiers over entities and degrees, predicate atoms, and comparison
// atoms over linear degree terms.  Formulas are normalized (simplify -> NNF
// -> skolemization), then a free-variable tableau searches for a closed
// tree.  Branches close by unifying complementary literals (with a linear
// extension so V+k unifies against ground degree terms) or by detecting an
// infeasible set of ground comparison literals with the difference-bound
// solver.  Universals are expanded with fresh free variables under a
// per-branch budget, wrapped in iterative deepening.  A successful
// refutation yields a certificate: the normalized inputs plus the ground
// instances of universals that were actually used.  The certificate can be
// replayed by a much simpler ground tableau with no unification.
// ---------------------------------------------------------------------------

struct ProverOptions {
  int gamma_depth = 3;             // max instantiations per universal per branch
  std::int64_t step_budget = 400000;  // expansion steps per refutation attempt
};

struct Certificate {
  std::vector<TermPtr> inputs;     // normalized (NNF, skolemized) inputs
  std::vector<TermPtr> instances;  // ground instances of universal formulas
};

struct ProveOutcome {
  bool proved = false;
  bool budget_hit = false;         // a deepening level aborted on the step budget
  int depth_used = 0;              // gamma depth of the successful level (0 if none)
  std::int64_t steps = 0;          // steps spent across all levels
  Certificate certificate;         // meaningful only when proved
};

namespace detail {

// ---- normalization --------------------------------------------------------

inline TermPtr nnf(const TermPtr& t, bool positive) {
  switch (t->kind()) {
    case TermKind::Not:
      return nnf(t->kid(0), !positive);
    case TermKind::And:
    case TermKind::Or: {
      bool conj = (t->kind() == TermKind::And) == positive;
      TermPtr a = nnf(t->kid(0), positive);
      TermPtr b = nnf(t->kid(1), positive);
      return conj ? Term::conj(a, b) : Term::disj(a, b);
    }
    case TermKind::Imp:
      if (positive) return Term::disj(nnf(t->kid(0), false), nnf(t->kid(1), true));
      return Term::conj(nnf(t->kid(0), true), nnf(t->kid(1), false));
    case TermKind::Forall:
    case TermKind::Exists: {
      bool universal = (t->kind() == TermKind::Forall) == positive;
      TermPtr body = nnf(t->kid(0), positive);
      return universal ? Term::forall(t->name(), t->type(), body)
                       : Term::exists(t->name(), t->type(), body);
    }
    case TermKind::Top:
      return positive ? t : Term::bot();
    case TermKind::Bot:
      return positive ? t : Term::top();
    default:
      return positive ? t : Term::negate(t);
  }
}

// Existentials become applications of fresh function constants to the
// enclosing universal variables; universal binders are renamed to globally
// unique names so instantiation can never capture.
inline TermPtr skolemize(const TermPtr& t, std::vector<TermPtr>& universals,
                         int& counter) {
  switch (t->kind()) {
    case TermKind::And:
    case TermKind::Or: {
      TermPtr a = skolemize(t->kid(0), universals, counter);
      TermPtr b = skolemize(t->kid(1), universals, counter);
      return t->kind() == TermKind::And ? Term::conj(a, b) : Term::disj(a, b);
    }
    case TermKind::Forall: {
      std::string fresh = "u" + std::to_string(counter++);
      TermPtr v = Term::var(fresh, t->type());
      TermPtr body = subst(t->kid(0), t->name(), v);
      universals.push_back(v);
      TermPtr out = skolemize(body, universals, counter);
      universals.pop_back();
      return Term::forall(fresh, t->type(), out);
    }
    case TermKind::Exists: {
      TypePtr sk_type = t->type();
      for (std::size_t i = universals.size(); i-- > 0;)
        sk_type = SemType::fun(universals[i]->type(), sk_type);
      TermPtr sk = Term::constant("sk" + std::to_string(counter++), sk_type);
      for (const TermPtr& u : universals) sk = Term::app(sk, u);
      return skolemize(subst(t->kid(0), t->name(), sk), universals, counter);
    }
    default:
      return t;  // literals: NNF guarantees no quantifier below Not or atoms
  }
}

inline TermPtr normalize_input(const TermPtr& f, int& counter) {
  std::vector<TermPtr> universals;
  return skolemize(nnf(simplify(f), true), universals, counter);
}

// ---- substitutions and unification ----------------------------------------

using Subst = std::map<std::string, TermPtr>;

inline bool is_fvar(const TermPtr& t) {
  return t->kind() == TermKind::Var && t->name().rfind("_V", 0) == 0;
}

inline TermPtr walk_var(TermPtr t, const Subst& s) {
  while (t->kind() == TermKind::Var) {
    auto it = s.find(t->name());
    if (it == s.end()) return t;
    t = it->second;
  }
  return t;
}

inline TermPtr substitute(const TermPtr& t, const Subst& s) {
  if (t->kind() == TermKind::Var) {
    auto it = s.find(t->name());
    return it == s.end() ? t : substitute(it->second, s);
  }
  if (t->kids().empty()) return t;
  std::vector<TermPtr> kids;
  kids.reserve(t->kids().size());
  for (std::size_t i = 0; i < t->kids().size(); ++i) kids.push_back(substitute(t->kid(i), s));
  return rebuild(t, std::move(kids));
}

inline bool contains_fvar(const TermPtr& t, const Subst& s) {
  TermPtr w = t->kind() == TermKind::Var ? walk_var(t, s) : t;
  if (is_fvar(w)) return true;
  for (std::size_t i = 0; i < w->kids().size(); ++i)
    if (contains_fvar(w->kid(i), s)) return true;
  return false;
}

inline bool occurs(const std::string& v, const TermPtr& t, const Subst& s) {
  TermPtr w = t->kind() == TermKind::Var ? walk_var(t, s) : t;
  if (w->kind() == TermKind::Var && w->name() == v) return true;
  for (std::size_t i = 0; i < w->kids().size(); ++i)
    if (occurs(v, w->kid(i), s)) return true;
  return false;
}

// Linear view of a degree term: opaque base plus rational offset.  A null
// base stands for the number zero, so a literal is (null, value).
struct LinView {
  TermPtr base;
  Rational off;
};

inline LinView lin_view(const TermPtr& t0, const Subst& s) {
  TermPtr t = t0->kind() == TermKind::Var ? walk_var(t0, s) : t0;
  if (t->kind() == TermKind::NumLit) return {nullptr, t->value()};
  if (t->kind() == TermKind::Sum || t->kind() == TermKind::Diff) {
    TermPtr a = t->kid(0)->kind() == TermKind::Var ? walk_var(t->kid(0), s) : t->kid(0);
    TermPtr b = t->kid(1)->kind() == TermKind::Var ? walk_var(t->kid(1), s) : t->kid(1);
    if (b->kind() == TermKind::NumLit) {
      LinView v = lin_view(a, s);
      v.off = t->kind() == TermKind::Sum ? v.off + b->value() : v.off - b->value();
      return v;
    }
    if (t->kind() == TermKind::Sum && a->kind() == TermKind::NumLit) {
      LinView v = lin_view(b, s);
      v.off = v.off + a->value();
      return v;
    }
  }
  return {t, Rational(0)};
}

// Result type of a term standing for a degree or entity.
inline TypePtr value_type(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Var:
    case TermKind::Const:
    case TermKind::NumLit:
    case TermKind::Threshold:
      return t->type();
    case TermKind::Sum:
    case TermKind::Diff:
      return value_type(t->kid(0));
    case TermKind::App: {
      TermPtr f = t;
      int depth = 0;
      while (f->kind() == TermKind::App) {
        f = f->kid(0);
        ++depth;
      }
      TypePtr ty = value_type(f);
      while (depth-- > 0 && ty && ty->kind() == SemType::Fun) ty = ty->res();
      return ty;
    }
    default:
      return nullptr;
  }
}

// Constant-fold degree arithmetic on numerals (1750 - 50 becomes 1700), so
// that ground instances close under plain term equality during replay.
inline TermPtr fold_numerals(const TermPtr& t) {
  if (t->kids().empty()) return t;
  std::vector<TermPtr> kids;
  kids.reserve(t->kids().size());
  for (const TermPtr& k : t->kids()) kids.push_back(fold_numerals(k));
  if ((t->kind() == TermKind::Sum || t->kind() == TermKind::Diff) &&
      kids[0]->kind() == TermKind::NumLit && kids[1]->kind() == TermKind::NumLit) {
    Rational v = t->kind() == TermKind::Sum ? kids[0]->value() + kids[1]->value()
                                            : kids[0]->value() - kids[1]->value();
    return Term::num(v, kids[0]->type());
  }
  return rebuild(t, std::move(kids));
}

inline TermPtr lin_build(const TermPtr& base, const Rational& off, const TypePtr& sort) {
  if (!base) return Term::num(off, sort);
  if (off == Rational(0)) return base;
  if (off > Rational(0)) return Term::sum(base, Term::num(off, sort));
  return Term::diff(base, Term::num(Rational(0) - off, sort));
}

inline bool unify_into(const TermPtr& a0, const TermPtr& b0, Subst& s);

inline bool bind_fvar(const TermPtr& v, const TermPtr& t, Subst& s) {
  if (t->kind() == TermKind::Var && t->name() == v->name()) return true;
  if (occurs(v->name(), t, s)) return false;
  s[v->name()] = t;
  return true;
}

// Unification over atom arguments.  Degree terms get a linear treatment so
// that a free variable with an offset (V+k or V-k) binds against any ground
// degree term; everything else is rigid first-order unification.
inline bool unify_into(const TermPtr& a0, const TermPtr& b0, Subst& s) {
  TermPtr a = a0->kind() == TermKind::Var ? walk_var(a0, s) : a0;
  TermPtr b = b0->kind() == TermKind::Var ? walk_var(b0, s) : b0;
  if (a == b) return true;
  if (is_fvar(a)) return bind_fvar(a, b, s);
  if (is_fvar(b)) return bind_fvar(b, a, s);

  bool linear = a->kind() == TermKind::NumLit || b->kind() == TermKind::NumLit ||
                a->kind() == TermKind::Sum || b->kind() == TermKind::Sum ||
                a->kind() == TermKind::Diff || b->kind() == TermKind::Diff;
  if (linear) {
    LinView la = lin_view(a, s);
    LinView lb = lin_view(b, s);
    if (la.base && is_fvar(la.base)) {
      TypePtr sort = la.base->type();
      TermPtr rhs = lin_build(lb.base, lb.off - la.off, sort);
      return !(lb.base && occurs(la.base->name(), lb.base, s)) &&
             bind_fvar(la.base, rhs, s);
    }
    if (lb.base && is_fvar(lb.base)) {
      TypePtr sort = lb.base->type();
      TermPtr rhs = lin_build(la.base, la.off - lb.off, sort);
      return !(la.base && occurs(lb.base->name(), la.base, s)) &&
             bind_fvar(lb.base, rhs, s);
    }
    if (!la.base && !lb.base) return la.off == lb.off;
    if (la.base && lb.base) return la.off == lb.off && unify_into(la.base, lb.base, s);
    return false;
  }

  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case TermKind::Const:
      return a->name() == b->name() && type_eq(a->type(), b->type());
    case TermKind::Var:
      return a->name() == b->name();
    case TermKind::Threshold:
      return a->name() == b->name() && unify_into(a->kid(0), b->kid(0), s);
    case TermKind::Cmp:
      return a->rel() == b->rel() && unify_into(a->kid(0), b->kid(0), s) &&
             unify_into(a->kid(1), b->kid(1), s);
    case TermKind::App:
      return unify_into(a->kid(0), b->kid(0), s) && unify_into(a->kid(1), b->kid(1), s);
    case TermKind::Top:
    case TermKind::Bot:
      return true;
    default:
      return false;  // binders and connectives never occur inside atoms
  }
}

// ---- tableau ---------------------------------------------------------------

struct Lit {
  TermPtr atom;
  bool pos;
};

struct GammaEntry {
  TermPtr universal;  // a Forall node
  int remaining;      // instantiations left on this branch
};

struct TabBranch {
  std::vector<TermPtr> todo;
  std::vector<Lit> lits;
  std::vector<GammaEntry> gammas;
  int deferrals = 3;         // times this branch may step aside for its siblings
  std::size_t scanned = 0;   // literals already covered by closure-pair scans
  std::size_t gamma_next = 0;  // round-robin pointer into gammas
};

struct BudgetHit {};

// Comparison literals with every free variable resolved feed the
// difference-bound solver; an infeasible set closes the branch.
inline bool arith_closed(const std::vector<Lit>& lits, const Subst& s) {
  ArithSolver solver;
  bool any = false;
  for (const Lit& l : lits) {
    if (l.atom->kind() != TermKind::Cmp) continue;
    if (contains_fvar(l.atom, s)) continue;
    TermPtr lhs = substitute(l.atom->kid(0), s);
    TermPtr rhs = substitute(l.atom->kid(1), s);
    TypePtr sort = value_type(lhs);
    if (!sort || sort->kind() != SemType::Degree) continue;
    switch (l.atom->rel()) {
      case CmpRel::Lt:
        if (l.pos) solver.add_le(lhs, rhs, true);
        else solver.add_le(rhs, lhs, false);
        break;
      case CmpRel::Le:
        if (l.pos) solver.add_le(lhs, rhs, false);
        else solver.add_le(rhs, lhs, true);
        break;
      case CmpRel::Eq:
        if (l.pos) solver.add_eq(lhs, rhs);
        else continue;  // degree disequality carries no bound information
        break;
    }
    any = true;
  }
  return any && !solver.feasible();
}

class Tableau {
 public:
  explicit Tableau(ProverOptions opts) : opts_(opts) {}

  ProveOutcome refute(const std::vector<TermPtr>& inputs) {
    ProveOutcome out;
    int counter = 0;
    std::vector<TermPtr> prepared;
    prepared.reserve(inputs.size());
    for (const TermPtr& f : inputs) prepared.push_back(normalize_input(f, counter));
    out.certificate.inputs = prepared;

    for (int depth = 1; depth <= opts_.gamma_depth; ++depth) {
      steps_ = 0;
      fvar_counter_ = 0;
      trail_.clear();
      depth_ = depth;
      TabBranch root;
      for (std::size_t i = prepared.size(); i-- > 0;) root.todo.push_back(prepared[i]);
      std::vector<TabBranch> open;
      open.push_back(std::move(root));
      bool proved = false;
      bool hit = false;
      try {
        Subst s;
        proved = search(std::move(open), std::move(s));
      } catch (const BudgetHit&) {
        hit = true;
      }
      out.steps += steps_;
      if (hit) {
        out.budget_hit = true;
        break;  // deeper levels would only blow the same budget
      }
      if (proved) {
        out.proved = true;
        out.depth_used = depth;
        out.certificate.instances = ground_instances();
        break;
      }
    }
    return out;
  }

 private:
  ProverOptions opts_;
  std::int64_t steps_ = 0;
  int fvar_counter_ = 0;
  int depth_ = 1;
  std::vector<TermPtr> trail_;  // gamma instances, still holding free variables
  Subst final_subst_;

  void tick() {
    if (++steps_ > opts_.step_budget) throw BudgetHit{};
  }

  // Replace any free variable left unbound by the final substitution with a
  // canonical constant of its sort; an unconstrained instance holds for any
  // value, so one witness per sort suffices.
  TermPtr close_term(const TermPtr& t) const {
    TermPtr g = substitute(t, final_subst_);
    std::set<std::string> resid;
    collect_fvars(g, resid);
    for (const std::string& name : resid) {
      TermPtr v = find_fvar(g, name);
      if (v) g = subst_var(g, name, Term::constant("arb", v->type()));
    }
    return fold_numerals(g);
  }

  static void collect_fvars(const TermPtr& t, std::set<std::string>& out) {
    if (t->kind() == TermKind::Var && t->name().rfind("_V", 0) == 0) out.insert(t->name());
    for (std::size_t i = 0; i < t->kids().size(); ++i) collect_fvars(t->kid(i), out);
  }

  static TermPtr find_fvar(const TermPtr& t, const std::string& name) {
    if (t->kind() == TermKind::Var && t->name() == name) return t;
    for (std::size_t i = 0; i < t->kids().size(); ++i)
      if (TermPtr r = find_fvar(t->kid(i), name)) return r;
    return nullptr;
  }

  static TermPtr subst_var(const TermPtr& t, const std::string& name, const TermPtr& v) {
    Subst one;
    one[name] = v;
    return substitute(t, one);
  }

  std::vector<TermPtr> ground_instances() const {
    std::vector<TermPtr> out;
    out.reserve(trail_.size());
    for (const TermPtr& t : trail_) out.push_back(close_term(t));
    return out;
  }

  bool search(std::vector<TabBranch> open, Subst s) {
    tick();
    if (open.empty()) {
      final_subst_ = std::move(s);
      return true;
    }
    TabBranch br = std::move(open.back());
    open.pop_back();

    if (!br.todo.empty()) {
      TermPtr f = br.todo.back();
      br.todo.pop_back();
      switch (f->kind()) {
        case TermKind::Top:
          open.push_back(std::move(br));
          return search(std::move(open), std::move(s));
        case TermKind::Bot:
          return search(std::move(open), std::move(s));
        case TermKind::And: {
          br.todo.push_back(f->kid(1));
          br.todo.push_back(f->kid(0));
          open.push_back(std::move(br));
          return search(std::move(open), std::move(s));
        }
        case TermKind::Or: {
          TabBranch right = br;
          right.todo.push_back(f->kid(1));
          br.todo.push_back(f->kid(0));
          open.push_back(std::move(right));
          open.push_back(std::move(br));
          return search(std::move(open), std::move(s));
        }
        case TermKind::Forall: {
          br.gammas.push_back({f, depth_});
          open.push_back(std::move(br));
          return search(std::move(open), std::move(s));
        }
        case TermKind::Not: {
          if (f->kid(0)->kind() == TermKind::Top)
            return search(std::move(open), std::move(s));
          if (f->kid(0)->kind() == TermKind::Bot) {
            open.push_back(std::move(br));
            return search(std::move(open), std::move(s));
          }
          return add_literal(std::move(open), std::move(br), std::move(s),
                             {f->kid(0), false});
        }
        default:
          return add_literal(std::move(open), std::move(br), std::move(s), {f, true});
      }
    }

    // Saturated.  The substitution cannot change while this branch stays on
    // top of the stack, so closure is only re-attempted on literals added
    // since the last scan (a deferral resets the watermark: siblings may
    // have ground our variables in the meantime).  Closing a branch
    // discards its remaining content, which also means re-trying an old
    // pair after a gamma expansion could never reach a new state.
    if (br.scanned < br.lits.size()) {
      if (arith_closed(br.lits, s)) return search(std::move(open), std::move(s));
      for (std::size_t i = 0; i < br.lits.size(); ++i) {
        for (std::size_t j = std::max(i + 1, br.scanned); j < br.lits.size(); ++j) {
          if (br.lits[i].pos == br.lits[j].pos) continue;
          if (br.lits[i].atom->kind() != br.lits[j].atom->kind()) continue;
          tick();
          Subst trial = s;
          if (unify_into(br.lits[i].atom, br.lits[j].atom, trial)) {
            if (search(open, std::move(trial))) return true;
          }
        }
      }
      // Reflexivity: a negated equation whose sides unify closes the branch.
      for (std::size_t j = br.scanned; j < br.lits.size(); ++j) {
        const Lit& lj = br.lits[j];
        if (lj.pos || lj.atom->kind() != TermKind::Cmp || lj.atom->rel() != CmpRel::Eq)
          continue;
        tick();
        Subst trial = s;
        if (unify_into(lj.atom->kid(0), lj.atom->kid(1), trial)) {
          if (search(open, std::move(trial))) return true;
        }
      }
      br.scanned = br.lits.size();
    }

    if (br.deferrals > 0 && !open.empty() && has_open_cmp(br, s)) {
      TabBranch deferred = std::move(br);
      deferred.deferrals--;
      deferred.scanned = 0;
      std::vector<TabBranch> reordered;
      reordered.reserve(open.size() + 1);
      reordered.push_back(std::move(deferred));
      for (TabBranch& o : open) reordered.push_back(std::move(o));
      return search(std::move(reordered), std::move(s));
    }

    // Instantiating a universal with fresh variables commits to nothing
    // (the variables unify with anything later), so gamma is not a choice
    // point: fire the next universal with budget left, round robin, and let
    // the expansion continue.  Backtracking happens only over closures.
    // A consecutive forall prefix is instantiated in one step — the budget
    // counts whole-prefix instances per branch, and partially instantiated
    // prefixes never pile up.
    for (std::size_t k = 0; k < br.gammas.size(); ++k) {
      std::size_t g = (br.gamma_next + k) % br.gammas.size();
      if (br.gammas[g].remaining <= 0) continue;
      TermPtr inst = br.gammas[g].universal;
      while (inst->kind() == TermKind::Forall) {
        TermPtr fv = Term::var("_V" + std::to_string(fvar_counter_++), inst->type());
        inst = subst(inst->kid(0), inst->name(), fv);
      }
      br.gammas[g].remaining--;
      br.gamma_next = g + 1;
      br.todo.push_back(inst);
      trail_.push_back(inst);
      open.push_back(std::move(br));
      if (search(std::move(open), std::move(s))) return true;
      trail_.pop_back();
      return false;
    }
    return false;
  }

  static bool has_open_cmp(const TabBranch& br, const Subst& s) {
    for (const Lit& l : br.lits)
      if (l.atom->kind() == TermKind::Cmp && contains_fvar(l.atom, s)) return true;
    return false;
  }

  bool add_literal(std::vector<TabBranch> open, TabBranch br, Subst s, Lit lit) {
    for (const Lit& prev : br.lits) {
      if (prev.pos != lit.pos) {
        if (term_eq(substitute(prev.atom, s), substitute(lit.atom, s)))
          return search(std::move(open), std::move(s));  // branch closes outright
      } else if (term_eq(prev.atom, lit.atom)) {
        open.push_back(std::move(br));
        return search(std::move(open), std::move(s));  // duplicate literal
      }
    }
    br.lits.push_back(std::move(lit));
    open.push_back(std::move(br));
    return search(std::move(open), std::move(s));
  }
};

// ---- certificate replay ----------------------------------------------------

// Ground tableau over the certificate formulas: alpha/beta expansion, exact
// complementary literals, and difference-bound infeasibility only.
// Universals are inert (their needed instances are listed explicitly), so
// the procedure always terminates.
class Replay {
 public:
  bool closed(const Certificate& cert) {
    steps_ = 0;
    std::vector<TermPtr> todo;
    for (const TermPtr& f : cert.inputs) todo.push_back(f);
    for (const TermPtr& f : cert.instances) todo.push_back(f);
    std::vector<Lit> lits;
    try {
      return close(std::move(todo), std::move(lits));
    } catch (const BudgetHit&) {
      return false;
    }
  }

 private:
  std::int64_t steps_ = 0;

  bool close(std::vector<TermPtr> todo, std::vector<Lit> lits) {
    if (++steps_ > 2000000) throw BudgetHit{};
    while (!todo.empty()) {
      TermPtr f = todo.back();
      todo.pop_back();
      switch (f->kind()) {
        case TermKind::Top:
        case TermKind::Forall:  // inert: instances are separate inputs
          continue;
        case TermKind::Bot:
          return true;
        case TermKind::And:
          todo.push_back(f->kid(0));
          todo.push_back(f->kid(1));
          continue;
        case TermKind::Or: {
          std::vector<TermPtr> right = todo;
          right.push_back(f->kid(1));
          todo.push_back(f->kid(0));
          return close(std::move(todo), lits) && close(std::move(right), std::move(lits));
        }
        case TermKind::Exists:
          return false;  // normalized certificates are skolemized
        case TermKind::Not: {
          if (f->kid(0)->kind() == TermKind::Top) return true;
          if (f->kid(0)->kind() == TermKind::Bot) continue;
          if (literal_closes({f->kid(0), false}, lits)) return true;
          continue;
        }
        default:
          if (literal_closes({f, true}, lits)) return true;
          continue;
      }
    }
    Subst empty;
    return arith_closed(lits, empty);
  }

  static bool literal_closes(Lit lit, std::vector<Lit>& lits) {
    if (!lit.pos && lit.atom->kind() == TermKind::Cmp && lit.atom->rel() == CmpRel::Eq &&
        term_eq(lit.atom->kid(0), lit.atom->kid(1)))
      return true;  // a negated reflexive equation is false on its own
    for (const Lit& prev : lits)
      if (prev.pos != lit.pos && term_eq(prev.atom, lit.atom)) return true;
    lits.push_back(std::move(lit));
    return false;
  }
};

}  // namespace detail

using detail::Subst;

inline ProveOutcome refute(const std::vector<TermPtr>& inputs, ProverOptions opts = {}) {
  detail::Tableau tab(opts);
  return tab.refute(inputs);
}

inline bool validate_certificate(const Certificate& cert) {
  detail::Replay r;
  return r.closed(cert);
}

// ---- entailment decisions ---------------------------------------------------

enum class Answer { Yes, No, Unknown };

inline const char* answer_name(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    default: return "unknown";
  }
}

struct Decision {
  Answer answer = Answer::Unknown;
  ProveOutcome forward;   // refutation of premises + axioms + not(hypothesis)
  ProveOutcome backward;  // refutation of premises + axioms + hypothesis
  std::vector<Axiom> axioms;
};

// Three-way entailment: prove the hypothesis from the premises under the
// degree axioms; failing that, prove its negation; otherwise unknown.
inline Decision decide(const std::vector<TermPtr>& premises, const TermPtr& hypothesis,
                       const KB& kb, ProverOptions opts = {}) {
  Decision d;
  std::vector<TermPtr> sig_formulas = premises;
  sig_formulas.push_back(hypothesis);
  d.axioms = instantiate_axioms(sig_formulas, kb);

  std::vector<TermPtr> forward = premises;
  forward.push_back(Term::negate(hypothesis));
  for (const Axiom& ax : d.axioms) forward.push_back(ax.formula);
  d.forward = refute(forward, opts);
  if (d.forward.proved) {
    d.answer = Answer::Yes;
    return d;
  }

  std::vector<TermPtr> backward = premises;
  backward.push_back(hypothesis);
  for (const Axiom& ax : d.axioms) backward.push_back(ax.formula);
  d.backward = refute(backward, opts);
  if (d.backward.proved) d.answer = Answer::No;
  return d;
}

}  // namespace degnli
