#pragma once

#include <map>
#include <string>
#include <vector>

#include "degnli/format.hpp"
#include "degnli/rational.hpp"
#include "degnli/term.hpp"

namespace degnli {

// --------------------------------------------------------------------------
// Feasibility of a conjunction of order constraints over degree terms.
//
// Every degree term the fragment produces is a base plus a rational offset:
// a numeric literal (base: the zero anchor), a threshold or skolem constant,
// or such a base shifted by a literal (d - 3, theta + 5).  Constraints
// a <= b then become difference bounds base_a - base_b <= c and infeasibility
// is a negative cycle in the bound graph (Bellman-Ford), where a zero-weight
// cycle containing a strict edge also counts.  Count-sorted bases range over
// the integers, so strict bounds on them tighten to non-strict ones one unit
// down before cycle detection; that tightening is what refutes, e.g.,
// 10 < d and d < 11 for a count degree d.
// --------------------------------------------------------------------------
class ArithSolver {
 public:
  // Assert a <= b (or a < b when strict).  Both sides must be ground degree
  // terms of the same sort.
  void add_le(const TermPtr& a, const TermPtr& b, bool strict) {
    const bool integral = is_count_sorted(a) && is_count_sorted(b);
    auto [u, cu] = normalize(a);
    auto [v, cv] = normalize(b);
    // u + cu <= v + cv  =>  u - v <= cv - cu.
    Rational w = cv - cu;
    bool s = strict;
    if (integral) {
      // Integer-valued difference: u - v < w  =>  u - v <= ceil(w) - 1;
      // u - v <= w  =>  u - v <= floor(w).
      w = s ? Rational(w.ceil() - 1) : Rational(w.floor());
      s = false;
    }
    edges_.push_back({u, v, w, s});
  }

  void add_eq(const TermPtr& a, const TermPtr& b) {
    add_le(a, b, false);
    add_le(b, a, false);
  }

  std::size_t size() const { return edges_.size(); }

  // True when some assignment of rationals to the bases satisfies every
  // constraint (count bases integral).
  bool feasible() const {
    const int n = static_cast<int>(names_.size()) + 1;  // node 0: zero anchor
    // Distances as (weight, strict-count): lexicographic so that a cycle of
    // total weight zero with a strict edge still registers as negative.
    std::vector<Rational> dist(n, Rational(0));
    std::vector<int> strict(n, 0);
    auto relax = [&](const Edge& e) {
      // Constraint e.u - e.v <= w: dist[u] candidate = dist[v] + w.
      Rational cand = dist[e.v] + e.w;
      int cs = strict[e.v] + (e.strict ? 1 : 0);
      if (cand < dist[e.u] || (cand == dist[e.u] && cs > strict[e.u])) {
        dist[e.u] = cand;
        strict[e.u] = cs;
        return true;
      }
      return false;
    };
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (const Edge& e : edges_) changed = relax(e) || changed;
      if (!changed) return true;
    }
    for (const Edge& e : edges_)
      if (relax(e)) return false;  // still relaxing after n rounds: negative cycle
    return true;
  }

 private:
  struct Edge {
    int u, v;  // u - v <= w
    Rational w;
    bool strict;
  };

  static bool is_count_sorted(const TermPtr& t) {
    const TypePtr ty = degree_type(t);
    return ty && ty->is_count();
  }

  static TypePtr degree_type(const TermPtr& t) {
    switch (t->kind()) {
      case TermKind::NumLit:
      case TermKind::Threshold:
      case TermKind::Var:
      case TermKind::Const:
        return t->type();
      case TermKind::Sum:
      case TermKind::Diff:
        return degree_type(t->kid(0));
      case TermKind::App: {
        // Skolem function application: result sort from the function type.
        TypePtr f = nullptr;
        const Term* spine = t.get();
        int depth = 0;
        while (spine->kind() == TermKind::App) {
          spine = spine->kid(0).get();
          ++depth;
        }
        f = spine->type();
        for (int i = 0; i < depth && f && f->kind() == SemType::Fun; ++i) f = f->res();
        return f;
      }
      default:
        return nullptr;
    }
  }

  // Base node and offset: t == base + offset.
  std::pair<int, Rational> normalize(const TermPtr& t) {
    if (t->kind() == TermKind::NumLit) return {0, t->value()};
    if (t->kind() == TermKind::Sum) {
      if (t->kid(1)->kind() == TermKind::NumLit) {
        auto [b, c] = normalize(t->kid(0));
        return {b, c + t->kid(1)->value()};
      }
      if (t->kid(0)->kind() == TermKind::NumLit) {
        auto [b, c] = normalize(t->kid(1));
        return {b, c + t->kid(0)->value()};
      }
    }
    if (t->kind() == TermKind::Diff && t->kid(1)->kind() == TermKind::NumLit) {
      auto [b, c] = normalize(t->kid(0));
      return {b, c - t->kid(1)->value()};
    }
    return {node(format_term(t)), Rational(0)};
  }

  int node(const std::string& key) {
    auto it = names_.find(key);
    if (it != names_.end()) return it->second;
    int id = static_cast<int>(names_.size()) + 1;
    names_.emplace(key, id);
    return id;
  }

  std::map<std::string, int> names_;
  std::vector<Edge> edges_;
};

}  // namespace degnli
