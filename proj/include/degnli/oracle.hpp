#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "degnli/error.hpp"
#include "degnli/kb.hpp"
#include "degnli/prover.hpp"
#include "degnli/rational.hpp"
#include "degnli/sorts.hpp"
#include "degnli/term.hpp"

namespace degnli {

// ---------------------------------------------------------------------------
// Independent finite-model enumeration, used to cross-check the refutation
// prover.  Models have a two-element entity domain.  Gradable predicates are
// represented by per-element cutoffs on the positive pole — P(e, d) holds
// iff d <= cutoff(e), with "no cutoff" meaning never — so downward closure
// holds by construction, and negative poles are evaluated as the negation of
// their positive partner, so the antonym biconditional holds by
// construction.  Thresholds are free per-(name, element) choices from a
// per-sort parameter grid: every literal in the input, those literals
// shifted by every additive offset in the input, midpoints of adjacent
// values, and two values beyond each extreme (so two entities can hold
// distinct out-of-range cutoffs).  Degree quantifiers range over a finer
// grid: the parameter grid plus midpoints of its adjacent values and one
// value beyond each extreme, so every order-region determined by literals
// and model-chosen parameters has a representative.  Count-sorted grids
// keep only integers (adjacent integers leave no strict in-between region).
// Models are addressed by index (mixed-radix digits), which makes
// exhaustive search and deterministic sampling trivial.
// ---------------------------------------------------------------------------

struct OracleModel {
  std::map<std::string, int> entity;                 // entity constant -> element
  std::map<std::string, std::array<bool, 2>> unary;  // plain ent -> prop
  std::map<std::string, std::array<bool, 4>> binary; // ent -> ent -> prop
  std::map<std::string, std::array<int, 2>> cutoff;  // positive pole -> grid index, -1 = never
  std::map<std::string, std::array<int, 2>> theta;   // threshold name -> grid index
};

class GroundOracle {
 public:
  GroundOracle(const std::vector<TermPtr>& formulas, const KB& kb) : kb_(kb) {
    for (const TermPtr& f : formulas) collect(f);
    build_grids();
    build_dims();
  }

  static std::string sort_key(const TypePtr& ty) {
    return ty->is_count() ? "count" : "m:" + ty->dimension();
  }

  const std::vector<Rational>& grid(const std::string& key) const {
    auto it = grids_.find(key);
    if (it == grids_.end()) throw OracleError("no degree grid for sort " + key);
    return it->second;
  }

  const std::vector<Rational>& param_grid(const std::string& key) const {
    auto it = param_grids_.find(key);
    if (it == param_grids_.end()) throw OracleError("no degree grid for sort " + key);
    return it->second;
  }

  std::uint64_t model_count() const { return count_; }

  OracleModel model_at(std::uint64_t idx) const {
    OracleModel m;
    for (const Dim& d : dims_) {
      std::uint64_t digit = idx % d.card;
      idx /= d.card;
      switch (d.what) {
        case Dim::EntityConst:
          m.entity[d.name] = static_cast<int>(digit);
          break;
        case Dim::Unary:
          m.unary[d.name] = {(digit & 1) != 0, (digit & 2) != 0};
          break;
        case Dim::Binary:
          m.binary[d.name] = {(digit & 1) != 0, (digit & 2) != 0, (digit & 4) != 0,
                              (digit & 8) != 0};
          break;
        case Dim::Cutoff:
          m.cutoff[d.name][d.elem] = static_cast<int>(digit) - 1;
          break;
        case Dim::Theta:
          m.theta[d.name][d.elem] = static_cast<int>(digit);
          break;
      }
    }
    return m;
  }

  bool eval(const TermPtr& formula, const OracleModel& m) const {
    Env env;
    return eval_formula(formula, m, env);
  }

  // Exhaustive satisfiability of the conjunction over the whole model space.
  bool satisfiable(const std::vector<TermPtr>& formulas) const {
    if (count_ > cap_) throw OracleError("model space too large: " + std::to_string(count_));
    for (std::uint64_t i = 0; i < count_; ++i) {
      OracleModel m = model_at(i);
      bool all = true;
      for (const TermPtr& f : formulas) {
        if (!eval(f, m)) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  }

  void set_cap(std::uint64_t cap) { cap_ = cap; }

 private:
  struct Dim {
    enum What { EntityConst, Unary, Binary, Cutoff, Theta };
    What what;
    std::string name;
    int elem;
    std::uint64_t card;
  };

  struct Env {
    std::vector<std::pair<std::string, int>> ents;
    std::vector<std::pair<std::string, Rational>> degs;
  };

  KB kb_;
  std::set<std::string> entity_consts_;
  std::set<std::string> unary_, binary_;
  std::map<std::string, std::string> poles_;   // positive pole -> sort key
  std::map<std::string, std::string> thetas_;  // threshold name -> sort key
  std::map<std::string, std::set<Rational>> literals_;
  std::map<std::string, std::set<Rational>> offsets_;
  std::map<std::string, std::vector<Rational>> param_grids_;  // cutoff/threshold values
  std::map<std::string, std::vector<Rational>> grids_;        // quantifier ranges
  std::vector<Dim> dims_;
  std::uint64_t count_ = 1;
  std::uint64_t cap_ = 50000000;

  void ensure_sort(const std::string& key) {
    literals_.try_emplace(key);
    offsets_.try_emplace(key);
  }

  void note_predicate(const std::string& name, const TypePtr& ty) {
    if (ty->kind() != SemType::Fun || ty->arg()->kind() != SemType::Entity) return;
    const TypePtr& r = ty->res();
    if (r->kind() == SemType::Prop) {
      unary_.insert(name);
    } else if (r->kind() == SemType::Fun && r->res()->kind() == SemType::Prop) {
      if (r->arg()->kind() == SemType::Entity) {
        binary_.insert(name);
      } else if (r->arg()->kind() == SemType::Degree) {
        std::string pos =
            kb_.is_negative(name) ? kb_.positive_pole(name) : name;
        std::string key = sort_key(r->arg());
        poles_[pos] = key;
        ensure_sort(key);
      }
    }
  }

  void collect(const TermPtr& t) {
    switch (t->kind()) {
      case TermKind::Const:
        if (t->type()->kind() == SemType::Entity) entity_consts_.insert(t->name());
        else note_predicate(t->name(), t->type());
        return;
      case TermKind::Threshold: {
        std::string key = sort_key(t->type());
        thetas_[t->name()] = key;
        ensure_sort(key);
        collect(t->kid(0));
        return;
      }
      case TermKind::NumLit: {
        std::string key = sort_key(t->type());
        ensure_sort(key);
        literals_[key].insert(t->value());
        return;
      }
      case TermKind::Sum:
      case TermKind::Diff:
        for (std::size_t i = 0; i < t->kids().size(); ++i) {
          const TermPtr& k = t->kid(i);
          if (k->kind() == TermKind::NumLit) {
            std::string key = sort_key(k->type());
            ensure_sort(key);
            offsets_[key].insert(k->value());
          }
          collect(k);
        }
        return;
      case TermKind::Forall:
      case TermKind::Exists:
        if (t->type()->kind() == SemType::Degree) ensure_sort(sort_key(t->type()));
        collect(t->kid(0));
        return;
      default:
        for (std::size_t i = 0; i < t->kids().size(); ++i) collect(t->kid(i));
        return;
    }
  }

  static bool is_integer(const Rational& r) { return r == Rational(r.floor()); }

  static void add_midpoints(std::set<Rational>& g) {
    std::vector<Rational> sorted(g.begin(), g.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      g.insert((sorted[i] + sorted[i + 1]) / Rational(2));
  }

  static void keep_integers(std::set<Rational>& g) {
    std::set<Rational> ints;
    for (const Rational& v : g)
      if (is_integer(v)) ints.insert(v);
    g = std::move(ints);
    if (g.empty()) {
      g.insert(Rational(0));
      g.insert(Rational(1));
    }
  }

  void build_grids() {
    for (const auto& [key, lits] : literals_) {
      std::set<Rational> p = lits;
      if (p.empty()) p.insert(Rational(0));
      std::vector<Rational> base(p.begin(), p.end());
      for (const Rational& k : offsets_[key]) {
        for (const Rational& v : base) {
          p.insert(v + k);
          p.insert(v - k);
        }
      }
      add_midpoints(p);
      p.insert(*p.begin() - Rational(1));
      p.insert(*p.begin() - Rational(2));
      p.insert(*p.rbegin() + Rational(1));
      p.insert(*p.rbegin() + Rational(2));
      if (key == "count") keep_integers(p);
      param_grids_[key] = std::vector<Rational>(p.begin(), p.end());

      std::set<Rational> q = p;
      add_midpoints(q);
      q.insert(*q.begin() - Rational(1));
      q.insert(*q.rbegin() + Rational(1));
      // Terms like d+k move every breakpoint by -k, so close the quantifier
      // range under the collected offsets once more.
      std::vector<Rational> qbase(q.begin(), q.end());
      for (const Rational& k : offsets_[key]) {
        for (const Rational& v : qbase) {
          q.insert(v + k);
          q.insert(v - k);
        }
      }
      if (key == "count") keep_integers(q);
      grids_[key] = std::vector<Rational>(q.begin(), q.end());
    }
  }

  void build_dims() {
    for (const std::string& c : entity_consts_)
      dims_.push_back({Dim::EntityConst, c, 0, 2});
    for (const std::string& p : unary_) dims_.push_back({Dim::Unary, p, 0, 4});
    for (const std::string& p : binary_) dims_.push_back({Dim::Binary, p, 0, 16});
    for (const auto& [pole, key] : poles_) {
      std::uint64_t card = param_grids_.at(key).size() + 1;
      dims_.push_back({Dim::Cutoff, pole, 0, card});
      dims_.push_back({Dim::Cutoff, pole, 1, card});
    }
    for (const auto& [name, key] : thetas_) {
      std::uint64_t card = param_grids_.at(key).size();
      dims_.push_back({Dim::Theta, name, 0, card});
      dims_.push_back({Dim::Theta, name, 1, card});
    }
    count_ = 1;
    for (const Dim& d : dims_) {
      if (count_ > (std::uint64_t(1) << 62) / d.card)
        throw OracleError("model space overflow");
      count_ *= d.card;
    }
  }

  // ---- evaluation ----------------------------------------------------------

  int eval_entity(const TermPtr& t, const OracleModel& m, const Env& env) const {
    if (t->kind() == TermKind::Var) {
      for (std::size_t i = env.ents.size(); i-- > 0;)
        if (env.ents[i].first == t->name()) return env.ents[i].second;
      throw OracleError("unbound entity variable " + t->name());
    }
    if (t->kind() == TermKind::Const) {
      auto it = m.entity.find(t->name());
      if (it == m.entity.end()) throw OracleError("unknown entity constant " + t->name());
      return it->second;
    }
    throw OracleError("unsupported entity term");
  }

  Rational eval_degree(const TermPtr& t, const OracleModel& m, const Env& env) const {
    switch (t->kind()) {
      case TermKind::Var:
        for (std::size_t i = env.degs.size(); i-- > 0;)
          if (env.degs[i].first == t->name()) return env.degs[i].second;
        throw OracleError("unbound degree variable " + t->name());
      case TermKind::NumLit:
        return t->value();
      case TermKind::Threshold: {
        const std::string& key = thetas_.at(t->name());
        int e = eval_entity(t->kid(0), m, env);
        return param_grids_.at(key)[m.theta.at(t->name())[e]];
      }
      case TermKind::Sum:
        return eval_degree(t->kid(0), m, env) + eval_degree(t->kid(1), m, env);
      case TermKind::Diff:
        return eval_degree(t->kid(0), m, env) - eval_degree(t->kid(1), m, env);
      default:
        throw OracleError("unsupported degree term");
    }
  }

  bool gradable_holds(const std::string& name, int e, const Rational& d,
                      const OracleModel& m) const {
    std::string pos = kb_.is_negative(name) ? kb_.positive_pole(name) : name;
    const std::string& key = poles_.at(pos);
    int ci = m.cutoff.at(pos)[e];
    bool holds = ci >= 0 && d <= param_grids_.at(key)[static_cast<std::size_t>(ci)];
    return kb_.is_negative(name) ? !holds : holds;
  }

  bool eval_atom(const TermPtr& t, const OracleModel& m, const Env& env) const {
    std::vector<TermPtr> args;
    TermPtr head = t;
    while (head->kind() == TermKind::App) {
      args.push_back(head->kid(1));
      head = head->kid(0);
    }
    if (head->kind() != TermKind::Const) throw OracleError("atom without constant head");
    std::reverse(args.begin(), args.end());
    if (args.size() == 1) {
      int e = eval_entity(args[0], m, env);
      auto it = m.unary.find(head->name());
      if (it == m.unary.end()) throw OracleError("unknown predicate " + head->name());
      return it->second[static_cast<std::size_t>(e)];
    }
    if (args.size() == 2) {
      TypePtr second = detail::value_type(args[1]);
      int e0 = eval_entity(args[0], m, env);
      if (second && second->kind() == SemType::Entity) {
        int e1 = eval_entity(args[1], m, env);
        return m.binary.at(head->name())[static_cast<std::size_t>(e0 * 2 + e1)];
      }
      Rational d = eval_degree(args[1], m, env);
      return gradable_holds(head->name(), e0, d, m);
    }
    throw OracleError("unsupported atom arity");
  }

  bool eval_formula(const TermPtr& t, const OracleModel& m, Env& env) const {
    switch (t->kind()) {
      case TermKind::Top:
        return true;
      case TermKind::Bot:
        return false;
      case TermKind::Not:
        return !eval_formula(t->kid(0), m, env);
      case TermKind::And:
        return eval_formula(t->kid(0), m, env) && eval_formula(t->kid(1), m, env);
      case TermKind::Or:
        return eval_formula(t->kid(0), m, env) || eval_formula(t->kid(1), m, env);
      case TermKind::Imp:
        return !eval_formula(t->kid(0), m, env) || eval_formula(t->kid(1), m, env);
      case TermKind::Forall:
      case TermKind::Exists: {
        bool all = t->kind() == TermKind::Forall;
        if (t->type()->kind() == SemType::Entity) {
          for (int v = 0; v < 2; ++v) {
            env.ents.emplace_back(t->name(), v);
            bool r = eval_formula(t->kid(0), m, env);
            env.ents.pop_back();
            if (r != all) return !all;
          }
          return all;
        }
        if (t->type()->kind() == SemType::Degree) {
          for (const Rational& v : grids_.at(sort_key(t->type()))) {
            env.degs.emplace_back(t->name(), v);
            bool r = eval_formula(t->kid(0), m, env);
            env.degs.pop_back();
            if (r != all) return !all;
          }
          return all;
        }
        throw OracleError("unsupported quantifier sort");
      }
      case TermKind::Cmp: {
        TypePtr ty = detail::value_type(t->kid(0));
        if (ty && ty->kind() == SemType::Entity) {
          if (t->rel() != CmpRel::Eq) throw OracleError("entity order comparison");
          return eval_entity(t->kid(0), m, env) == eval_entity(t->kid(1), m, env);
        }
        Rational a = eval_degree(t->kid(0), m, env);
        Rational b = eval_degree(t->kid(1), m, env);
        switch (t->rel()) {
          case CmpRel::Lt: return a < b;
          case CmpRel::Le: return a <= b;
          case CmpRel::Eq: return a == b;
        }
        return false;
      }
      case TermKind::App:
        return eval_atom(t, m, env);
      default:
        throw OracleError("unsupported formula node");
    }
  }
};

// Ground-truth entailment over the enumerated model class: entailed when no
// model satisfies the premises and the negated hypothesis, contradicted when
// no model satisfies the premises and the hypothesis, otherwise compatible
// with both.
inline Answer oracle_decide(const std::vector<TermPtr>& premises, const TermPtr& hypothesis,
                            const KB& kb) {
  std::vector<TermPtr> all = premises;
  all.push_back(hypothesis);
  GroundOracle oracle(all, kb);
  std::vector<TermPtr> counter = premises;
  counter.push_back(Term::negate(hypothesis));
  if (!oracle.satisfiable(counter)) return Answer::Yes;
  std::vector<TermPtr> consistent = premises;
  consistent.push_back(hypothesis);
  if (!oracle.satisfiable(consistent)) return Answer::No;
  return Answer::Unknown;
}

}  // namespace degnli
