#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "degnli/category.hpp"
#include "degnli/error.hpp"

namespace degnli {

// Derivation rules.  The binary combinators are function application and
// order-1 harmonic composition; LexRaise is the unary N -> NP type change for
// bare nominals (proper names and bare plurals); UnaryFeature relabels a
// node's category in place (used by tree rewrites, not by the parser).
enum class Rule {
  Lexical,
  FwdApp,    // X/Y  Y   => X
  BwdApp,    // Y    X\Y => X
  FwdComp,   // X/Y  Y/Z => X/Z
  BwdComp,   // Y\Z  X\Y => X\Z
  LexRaise,  // N    => NP
  UnaryFeature,
};

inline std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Lexical: return "lex";
    case Rule::FwdApp: return "fwd-app";
    case Rule::BwdApp: return "bwd-app";
    case Rule::FwdComp: return "fwd-comp";
    case Rule::BwdComp: return "bwd-comp";
    case Rule::LexRaise: return "lex-raise";
    case Rule::UnaryFeature: return "unary-feature";
  }
  return "?";
}

// One lexicon row: a surface form (one or more tokens; multi-token surfaces
// are merged into one hyphenated token before parsing), its category, and the
// key that selects its meaning template.  Entries with `empty = true` have no
// surface realization and are introduced by tree rewrites.
struct LexEntry {
  std::vector<std::string> surface;
  CatPtr cat;
  std::string semkey;
  bool empty = false;

  std::string surface_str() const {
    std::string s;
    for (std::size_t i = 0; i < surface.size(); ++i) {
      if (i) s += ' ';
      s += surface[i];
    }
    return s;
  }
};

class DerivTree;
using TreePtr = std::shared_ptr<const DerivTree>;

class DerivTree {
 public:
  Rule rule() const { return rule_; }
  const CatPtr& cat() const { return cat_; }
  const std::string& token() const { return token_; }  // leaves only
  const LexEntry& entry() const { return entry_; }     // leaves only
  const TreePtr& left() const { return left_; }
  const TreePtr& right() const { return right_; }
  bool is_leaf() const { return rule_ == Rule::Lexical; }

  static TreePtr leaf(const std::string& token, const LexEntry& entry) {
    auto t = std::make_shared<DerivTree>();
    t->rule_ = Rule::Lexical;
    t->cat_ = entry.cat;
    t->token_ = token;
    t->entry_ = entry;
    return t;
  }

  static TreePtr node(Rule rule, CatPtr cat, TreePtr left, TreePtr right = nullptr) {
    auto t = std::make_shared<DerivTree>();
    t->rule_ = rule;
    t->cat_ = std::move(cat);
    t->left_ = std::move(left);
    t->right_ = std::move(right);
    return t;
  }

  DerivTree() = default;

 private:
  Rule rule_ = Rule::Lexical;
  CatPtr cat_;
  std::string token_;
  LexEntry entry_;
  TreePtr left_, right_;
};

// --------------------------------------------------------------------------
// Combinators
// --------------------------------------------------------------------------

// Result category of applying `rule` to child categories, or nullopt if the
// rule does not fire.  Unary rules take only `l`.
inline std::optional<CatPtr> combine(Rule rule, const CatPtr& l, const CatPtr& r) {
  switch (rule) {
    case Rule::FwdApp: {
      if (l->kind() != Category::Slash || !l->forward()) return std::nullopt;
      if (!unify(l->argument(), r)) return std::nullopt;
      return l->result();
    }
    case Rule::BwdApp: {
      if (r->kind() != Category::Slash || r->forward()) return std::nullopt;
      if (!unify(r->argument(), l)) return std::nullopt;
      return r->result();
    }
    case Rule::FwdComp: {
      if (l->kind() != Category::Slash || !l->forward()) return std::nullopt;
      if (r->kind() != Category::Slash || !r->forward()) return std::nullopt;
      if (!unify(l->argument(), r->result())) return std::nullopt;
      return Category::slash(l->result(), true, r->argument());
    }
    case Rule::BwdComp: {
      if (l->kind() != Category::Slash || l->forward()) return std::nullopt;
      if (r->kind() != Category::Slash || r->forward()) return std::nullopt;
      if (!unify(r->argument(), l->result())) return std::nullopt;
      return Category::slash(r->result(), false, l->argument());
    }
    case Rule::LexRaise: {
      // Only bare nominals lift; featured ones (N[num], N[deg], ...) serve
      // dedicated argument slots and never act as noun phrases themselves.
      if (l->kind() != Category::Atom || l->base() != "N" || !l->feature().empty())
        return std::nullopt;
      return Category::atom("NP");
    }
    default:
      return std::nullopt;
  }
}

// Convenience constructors that compute the node category.
inline TreePtr apply_rule(Rule rule, const TreePtr& l, const TreePtr& r = nullptr) {
  auto cat = combine(rule, l->cat(), r ? r->cat() : nullptr);
  if (!cat)
    throw ParseFailure("rule " + rule_name(rule) + " does not apply to " + l->cat()->str() +
                       (r ? " and " + r->cat()->str() : ""));
  return DerivTree::node(rule, *cat, l, r);
}

// --------------------------------------------------------------------------
// Derivation well-formedness
// --------------------------------------------------------------------------

// True iff every node's category follows from its children by its rule.
// UnaryFeature nodes may carry any category (they record an explicit relabel).
inline bool check_derivation(const TreePtr& t) {
  if (!t || !t->cat()) return false;
  switch (t->rule()) {
    case Rule::Lexical:
      return !t->left() && !t->right() && cat_eq(t->cat(), t->entry().cat);
    case Rule::UnaryFeature:
      return t->left() && !t->right() && check_derivation(t->left());
    case Rule::LexRaise: {
      if (!t->left() || t->right()) return false;
      auto c = combine(Rule::LexRaise, t->left()->cat(), nullptr);
      return c && cat_eq(*c, t->cat()) && check_derivation(t->left());
    }
    default: {
      if (!t->left() || !t->right()) return false;
      auto c = combine(t->rule(), t->left()->cat(), t->right()->cat());
      return c && cat_eq(*c, t->cat()) && check_derivation(t->left()) &&
             check_derivation(t->right());
    }
  }
}

// Left-to-right sequence of leaf tokens.  Empty-element leaves (inserted by
// tree rewrites) contribute nothing.
inline void yield_into(const TreePtr& t, std::vector<std::string>& out) {
  if (!t) return;
  if (t->is_leaf()) {
    if (!t->entry().empty) out.push_back(t->token());
    return;
  }
  yield_into(t->left(), out);
  yield_into(t->right(), out);
}

inline std::vector<std::string> yield(const TreePtr& t) {
  std::vector<std::string> out;
  yield_into(t, out);
  return out;
}

// Rebuild a tree bottom-up, recomputing every internal category from the
// (possibly relabeled) children.  Used after rewrites that change leaf
// categories.  Throws ParseFailure if some rule no longer applies.
inline TreePtr recompute_categories(const TreePtr& t) {
  if (!t) return t;
  if (t->is_leaf()) return t;
  TreePtr l = recompute_categories(t->left());
  TreePtr r = t->right() ? recompute_categories(t->right()) : nullptr;
  if (t->rule() == Rule::UnaryFeature) return DerivTree::node(Rule::UnaryFeature, t->cat(), l);
  return apply_rule(t->rule(), l, r);
}

// Tree rendering for the CLI and debugging: one node per line, indented.
inline void render_tree_into(const TreePtr& t, std::string& out, int indent) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  if (t->is_leaf()) {
    out += t->cat()->str() + "  " + (t->entry().empty ? "(" + t->token() + ")" : t->token()) +
           "  [" + t->entry().semkey + "]\n";
    return;
  }
  out += t->cat()->str() + "  <" + rule_name(t->rule()) + ">\n";
  render_tree_into(t->left(), out, indent + 1);
  if (t->right()) render_tree_into(t->right(), out, indent + 1);
}

inline std::string render_tree(const TreePtr& t) {
  std::string out;
  render_tree_into(t, out, 0);
  return out;
}

}  // namespace degnli
