#pragma once

// Deterministic random generators shared by the property-test suites and the
// acceptance runner.  Everything is seeded explicitly so failures reproduce.

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "degnli/rational.hpp"
#include "degnli/sorts.hpp"
#include "degnli/term.hpp"

namespace degnli::testgen {

struct Rng {
  std::mt19937 eng;
  explicit Rng(unsigned seed) : eng(seed) {}
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(eng); }
  bool coin() { return pick(2) == 0; }
  Rational rat() {
    int num = pick(41) - 20;
    int den = 1 + pick(4);
    return Rational(num, den);
  }
  std::int64_t small_int() { return pick(21); }
};

// ---------------------------------------------------------------------------
// Random simply-typed lambda terms (for beta-reduction properties).
// ---------------------------------------------------------------------------

struct TypedGen {
  Rng& rng;
  int counter = 0;
  std::vector<std::pair<std::string, TypePtr>> env;

  explicit TypedGen(Rng& r) : rng(r) {}

  std::vector<TypePtr> arg_pool() const {
    return {SemType::entity(), SemType::prop(), SemType::count(),
            SemType::measure("length"), SemType::fun(SemType::entity(), SemType::prop())};
  }

  TermPtr leaf(const TypePtr& ty) {
    std::vector<TermPtr> opts;
    for (const auto& [name, vty] : env)
      if (type_eq(vty, ty)) opts.push_back(Term::var(name, vty));
    switch (ty->kind()) {
      case SemType::Prop:
        opts.push_back(Term::top());
        opts.push_back(Term::bot());
        break;
      case SemType::Entity:
        opts.push_back(Term::constant("c" + std::to_string(rng.pick(3)), ty));
        break;
      case SemType::Degree:
        if (ty->is_count())
          opts.push_back(Term::num(Rational(rng.small_int()), ty));
        else
          opts.push_back(Term::num(rng.rat(), ty));
        break;
      case SemType::Fun: {
        std::string v = "v" + std::to_string(counter++);
        env.emplace_back(v, ty->arg());
        TermPtr body = leaf(ty->res());
        env.pop_back();
        opts.push_back(Term::abs(v, ty->arg(), body));
        break;
      }
    }
    return opts[rng.pick(static_cast<int>(opts.size()))];
  }

  TermPtr gen(const TypePtr& ty, int depth) {
    if (depth <= 0 || rng.pick(4) == 0) return leaf(ty);
    // Candidate constructions by result type.
    int choice = rng.pick(ty->kind() == SemType::Prop ? 4 : ty->kind() == SemType::Fun ? 3 : 2);
    if (choice == 0) return leaf(ty);
    if (choice == 1) {  // application
      TypePtr arg = arg_pool()[rng.pick(5)];
      TermPtr f = gen(SemType::fun(arg, ty), depth - 1);
      TermPtr a = gen(arg, depth - 1);
      return Term::app(f, a);
    }
    if (ty->kind() == SemType::Fun && choice == 2) {
      std::string v = "v" + std::to_string(counter++);
      env.emplace_back(v, ty->arg());
      TermPtr body = gen(ty->res(), depth - 1);
      env.pop_back();
      return Term::abs(v, ty->arg(), body);
    }
    if (ty->kind() == SemType::Prop) {
      switch (choice) {
        case 2: {
          int op = rng.pick(4);
          TermPtr a = gen(SemType::prop(), depth - 1);
          TermPtr b = gen(SemType::prop(), depth - 1);
          if (op == 0) return Term::conj(a, b);
          if (op == 1) return Term::disj(a, b);
          if (op == 2) return Term::imp(a, b);
          return Term::negate(a);
        }
        case 3: {
          std::string v = "v" + std::to_string(counter++);
          TypePtr vt = rng.coin() ? SemType::entity() : SemType::measure("length");
          env.emplace_back(v, vt);
          TermPtr body = gen(SemType::prop(), depth - 1);
          env.pop_back();
          return rng.coin() ? Term::exists(v, vt, body) : Term::forall(v, vt, body);
        }
      }
    }
    return leaf(ty);
  }
};

inline TermPtr random_typed_term(Rng& rng, const TypePtr& ty, int depth = 4) {
  TypedGen g(rng);
  return g.gen(ty, depth);
}

// ---------------------------------------------------------------------------
// Random closed first-order formulas (for printer/reader round trips,
// simplify truth-preservation and prover/oracle cross-checks).  Signature:
//   p : ent -> prop              q : ent -> prop
//   tall : ent -> (meas length) -> prop
//   many : ent -> count -> prop
//   entity constants a, b; threshold theta_tall(U).
// ---------------------------------------------------------------------------

inline std::map<std::string, TypePtr> formula_signature() {
  TypePtr ent = SemType::entity();
  TypePtr prop = SemType::prop();
  TypePtr len = SemType::measure("length");
  TypePtr cnt = SemType::count();
  return {
      {"p", SemType::fun(ent, prop)},
      {"q", SemType::fun(ent, prop)},
      {"tall", SemType::fun(ent, SemType::fun(len, prop))},
      {"many", SemType::fun(ent, SemType::fun(cnt, prop))},
      {"a", ent},
      {"b", ent},
      {"U", ent},
  };
}

struct FormulaGen {
  Rng& rng;
  std::vector<std::pair<std::string, TypePtr>> env;  // bound variables
  int counter = 0;

  explicit FormulaGen(Rng& r) : rng(r) {}

  std::vector<TermPtr> vars_of(const TypePtr& ty) {
    std::vector<TermPtr> out;
    for (const auto& [name, vty] : env)
      if (type_eq(vty, ty)) out.push_back(Term::var(name, vty));
    return out;
  }

  TermPtr entity() {
    auto vs = vars_of(SemType::entity());
    if (!vs.empty() && rng.coin()) return vs[rng.pick(static_cast<int>(vs.size()))];
    return Term::constant(rng.coin() ? "a" : "b", SemType::entity());
  }

  // A degree term that is not a bare literal (so the reader can always infer
  // sorts from one side of a comparison).
  TermPtr anchored_degree(const TypePtr& ty, int depth) {
    auto vs = vars_of(ty);
    TermPtr base;
    if (!vs.empty() && rng.pick(3) != 0) {
      base = vs[rng.pick(static_cast<int>(vs.size()))];
    } else {
      base = Term::theta(ty->is_count() ? "many" : "tall", entity(), ty);
    }
    if (depth > 0 && rng.pick(3) == 0) {
      TermPtr lit = ty->is_count() ? Term::num(Rational(rng.small_int()), ty)
                                   : Term::num(rng.rat(), ty);
      return rng.coin() ? Term::sum(base, lit) : Term::diff(base, lit);
    }
    return base;
  }

  TermPtr degree(const TypePtr& ty, int depth) {
    if (rng.pick(3) == 0)
      return ty->is_count() ? Term::num(Rational(rng.small_int()), ty)
                            : Term::num(rng.rat(), ty);
    return anchored_degree(ty, depth);
  }

  TermPtr atom(int depth) {
    switch (rng.pick(5)) {
      case 0:
        return Term::app(Term::constant("p", SemType::fun(SemType::entity(), SemType::prop())),
                         entity());
      case 1:
        return Term::app(Term::constant("q", SemType::fun(SemType::entity(), SemType::prop())),
                         entity());
      case 2: {
        TypePtr len = SemType::measure("length");
        return Term::app(
            Term::app(Term::constant("tall", SemType::fun(SemType::entity(),
                                                          SemType::fun(len, SemType::prop()))),
                      entity()),
            degree(len, depth));
      }
      case 3: {
        TypePtr cnt = SemType::count();
        return Term::app(
            Term::app(Term::constant("many", SemType::fun(SemType::entity(),
                                                          SemType::fun(cnt, SemType::prop()))),
                      entity()),
            degree(cnt, depth));
      }
      default: {
        TypePtr ty = rng.coin() ? static_cast<TypePtr>(SemType::measure("length"))
                                : static_cast<TypePtr>(SemType::count());
        TermPtr l = anchored_degree(ty, depth);
        TermPtr r = degree(ty, depth);
        int rel = rng.pick(3);
        if (rel == 0) return Term::lt(l, r);
        if (rel == 1) return Term::le(l, r);
        return rng.coin() ? Term::eq(l, r) : Term::eq(entity(), entity());
      }
    }
  }

  TermPtr gen(int depth) {
    if (depth <= 0) return atom(depth);
    switch (rng.pick(7)) {
      case 0:
        return atom(depth);
      case 1:
        return Term::negate(gen(depth - 1));
      case 2:
        return Term::conj(gen(depth - 1), gen(depth - 1));
      case 3:
        return Term::disj(gen(depth - 1), gen(depth - 1));
      case 4:
        return Term::imp(gen(depth - 1), gen(depth - 1));
      default: {
        std::string v = "x" + std::to_string(counter++);
        TypePtr ty;
        switch (rng.pick(3)) {
          case 0: ty = SemType::entity(); break;
          case 1: ty = SemType::measure("length"); break;
          default: ty = SemType::count(); break;
        }
        env.emplace_back(v, ty);
        TermPtr body = gen(depth - 1);
        env.pop_back();
        return rng.coin() ? Term::exists(v, ty, body) : Term::forall(v, ty, body);
      }
    }
  }
};

inline TermPtr random_formula(Rng& rng, int depth = 4) {
  FormulaGen g(rng);
  return g.gen(depth);
}

}  // namespace degnli::testgen
