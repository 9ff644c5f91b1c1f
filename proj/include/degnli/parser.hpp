#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "degnli/derivation.hpp"
#include "degnli/lexicon.hpp"

namespace degnli {

// Ambiguity policy: the chart keeps one best item per (span, category), and
// the two strategies break ties between bracketings in opposite directions —
// Left prefers left-branching trees (small right subtrees), Right prefers
// right-branching.  Everything else is deterministic.
enum class Strategy { Left, Right };

inline std::string strategy_name(Strategy s) { return s == Strategy::Left ? "left" : "right"; }

namespace detail {

struct ChartItem {
  TreePtr tree;
  bool from_comp = false;  // produced by a composition rule
  int coercions = 0;       // featured argument slots filled by bare categories
  long long score = 0;     // sum of disfavored-child widths; lower is better
  int unaries = 0;
};

inline std::string tree_signature(const TreePtr& t) {
  if (t->is_leaf()) return t->token() + ":" + t->entry().semkey;
  std::string s = "(" + rule_name(t->rule()) + " " + tree_signature(t->left());
  if (t->right()) s += " " + tree_signature(t->right());
  return s + ")";
}

// Ranking within a (span, category) cell.  Application-produced items beat
// composition-produced ones: the latter are usable in fewer contexts (see the
// normal-form filter below), so whenever both derive the same category the
// application item is safe to keep.  Next fewest feature coercions — a bare
// atom serving a featured argument slot is a last resort, e.g. a bare-N name
// should not pass as a degree nominal when a plain NP reading exists.  Then
// the strategy score, fewest unary steps, and finally a total order on trees.
inline bool item_better(const ChartItem& a, const ChartItem& b) {
  if (a.from_comp != b.from_comp) return !a.from_comp;
  if (a.coercions != b.coercions) return a.coercions < b.coercions;
  if (a.score != b.score) return a.score < b.score;
  if (a.unaries != b.unaries) return a.unaries < b.unaries;
  return tree_signature(a.tree) < tree_signature(b.tree);
}

// Number of featured atoms in `pattern` matched by bare atoms in `actual`.
// Both categories have already unified, so their shapes agree.
inline int coercion_cost(const CatPtr& pattern, const CatPtr& actual) {
  if (!pattern || !actual) return 0;
  if (pattern->kind() == Category::Atom) {
    if (actual->kind() != Category::Atom) return 0;
    return (!pattern->feature().empty() && actual->feature().empty()) ? 1 : 0;
  }
  if (actual->kind() != Category::Slash) return 0;
  return coercion_cost(pattern->result(), actual->result()) +
         coercion_cost(pattern->argument(), actual->argument());
}

// Coercions introduced by one binary step: the functor's requirement is the
// pattern, the category that fills it is the actual.
inline int rule_coercions(Rule rule, const CatPtr& l, const CatPtr& r) {
  switch (rule) {
    case Rule::FwdApp: return coercion_cost(l->argument(), r);
    case Rule::BwdApp: return coercion_cost(r->argument(), l);
    case Rule::FwdComp: return coercion_cost(l->argument(), r->result());
    case Rule::BwdComp: return coercion_cost(r->argument(), l->result());
    default: return 0;
  }
}

using Cell = std::map<std::string, ChartItem>;

inline void cell_insert(Cell& cell, ChartItem item) {
  const std::string key = item.tree->cat()->str();
  auto it = cell.find(key);
  if (it == cell.end() || item_better(item, it->second)) cell[key] = std::move(item);
}

inline void unary_closure(Cell& cell) {
  // Bare nominals lift to NP.  One pass suffices: NP does not lift further.
  std::vector<ChartItem> lifted;
  for (const auto& [key, item] : cell) {
    const CatPtr& c = item.tree->cat();
    if (c->kind() == Category::Atom && c->base() == "N" && c->feature().empty()) {
      ChartItem up;
      up.tree = apply_rule(Rule::LexRaise, item.tree);
      up.from_comp = item.from_comp;
      up.coercions = item.coercions;
      up.score = item.score;
      up.unaries = item.unaries + 1;
      lifted.push_back(std::move(up));
    }
  }
  for (ChartItem& item : lifted) cell_insert(cell, std::move(item));
}

}  // namespace detail

// CKY over the merged token sequence.  Returns the ranked list of root
// derivations (category S[dcl] over the full span); with one best item per
// category this is at most one tree.  Throws LexiconError on a token with no
// lexical entry.
inline std::vector<TreePtr> parse(const std::vector<std::string>& tokens,
                                  const Lexicon& lexicon,
                                  Strategy strategy = Strategy::Left) {
  const std::size_t n = tokens.size();
  if (n == 0) return {};
  // chart[start][len - 1]
  std::vector<std::vector<detail::Cell>> chart(n, std::vector<detail::Cell>(n));

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LexEntry> entries = lexicon.entries(tokens[i]);
    if (entries.empty()) throw LexiconError("no lexical entry for token: " + tokens[i]);
    for (const LexEntry& e : entries) {
      detail::ChartItem item;
      item.tree = DerivTree::leaf(tokens[i], e);
      detail::cell_insert(chart[i][0], std::move(item));
    }
    detail::unary_closure(chart[i][0]);
  }

  static const Rule kBinary[] = {Rule::FwdApp, Rule::BwdApp, Rule::FwdComp, Rule::BwdComp};
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t start = 0; start + len <= n; ++start) {
      detail::Cell& cell = chart[start][len - 1];
      for (std::size_t lw = 1; lw < len; ++lw) {
        const detail::Cell& lcell = chart[start][lw - 1];
        const detail::Cell& rcell = chart[start + lw][len - lw - 1];
        const long long penalty =
            static_cast<long long>(strategy == Strategy::Left ? len - lw : lw);
        for (const auto& [lk, li] : lcell) {
          for (const auto& [rk, ri] : rcell) {
            for (Rule rule : kBinary) {
              // Normal-form filter: a composition output may not serve as the
              // functor of a further rule in the same direction.  This prunes
              // the spurious rebracketings composition would otherwise create
              // while keeping every derivable (span, category) reachable.
              if ((rule == Rule::FwdApp || rule == Rule::FwdComp) && li.from_comp) continue;
              if ((rule == Rule::BwdApp || rule == Rule::BwdComp) && ri.from_comp) continue;
              auto cat = combine(rule, li.tree->cat(), ri.tree->cat());
              if (!cat) continue;
              detail::ChartItem item;
              item.tree = DerivTree::node(rule, *cat, li.tree, ri.tree);
              item.from_comp = rule == Rule::FwdComp || rule == Rule::BwdComp;
              item.coercions = li.coercions + ri.coercions +
                               detail::rule_coercions(rule, li.tree->cat(), ri.tree->cat());
              item.score = li.score + ri.score + penalty;
              item.unaries = li.unaries + ri.unaries;
              detail::cell_insert(cell, std::move(item));
            }
          }
        }
      }
      detail::unary_closure(cell);
    }
  }

  std::vector<TreePtr> roots;
  const CatPtr root_cat = Category::atom("S", "dcl");
  for (const auto& [key, item] : chart[0][n - 1])
    if (cat_eq(item.tree->cat(), root_cat)) roots.push_back(item.tree);
  return roots;
}

inline std::optional<TreePtr> parse_best(const std::vector<std::string>& tokens,
                                         const Lexicon& lexicon,
                                         Strategy strategy = Strategy::Left) {
  auto roots = parse(tokens, lexicon, strategy);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

}  // namespace degnli
