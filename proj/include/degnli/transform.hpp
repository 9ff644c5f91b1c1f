#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "degnli/derivation.hpp"
#include "degnli/error.hpp"
#include "degnli/lexicon.hpp"

namespace degnli {

// --------------------------------------------------------------------------
// Token rewrites (before parsing)
// --------------------------------------------------------------------------

using MergeSpan = std::pair<std::vector<std::string>, std::string>;

// Join adjacent tokens matching a declared multi-token surface into one
// token.  Greedy leftmost scan, longest span first; matching ignores case and
// the result uses the span's canonical (declared) joined form.
inline std::vector<std::string> merge_multiword(const std::vector<std::string>& tokens,
                                                const std::vector<MergeSpan>& spans) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const MergeSpan* hit = nullptr;
    for (const MergeSpan& span : spans) {
      const auto& words = span.first;
      if (words.size() < 2 || i + words.size() > tokens.size()) continue;
      bool match = true;
      for (std::size_t k = 0; k < words.size(); ++k)
        if (lower(tokens[i + k]) != lower(words[k])) {
          match = false;
          break;
        }
      if (match) {
        hit = &span;
        break;
      }
    }
    if (hit) {
      out.push_back(hit->second);
      i += hit->first.size();
    } else {
      out.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

// Comparative clausal tails ("... taller than Alex is") strand a final
// copula; drop it so the complement parses as a plain NP.
inline std::vector<std::string> drop_clausal_tail(std::vector<std::string> tokens) {
  if (tokens.size() < 2) return tokens;
  const std::string last = lower(tokens.back());
  if (last != "is" && last != "are" && last != "was" && last != "were" && last != "does" &&
      last != "do" && last != "did")
    return tokens;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const std::string t = lower(tokens[i]);
    if (t == "than" || t == "as") {
      tokens.pop_back();
      return tokens;
    }
  }
  return tokens;
}

// --------------------------------------------------------------------------
// Tree rewrites
// --------------------------------------------------------------------------

// A named tree rewrite; apply_all runs the set in name order to a fixpoint.
struct TreeRule {
  std::string name;
  std::function<TreePtr(const TreePtr&, const Lexicon&)> fn;
};

namespace detail {

// The lexical head of a subtree: the functor side of each application.
inline const LexEntry* head_entry(const TreePtr& t) {
  if (!t) return nullptr;
  switch (t->rule()) {
    case Rule::Lexical: return &t->entry();
    case Rule::FwdApp:
    case Rule::FwdComp: return head_entry(t->left());
    case Rule::BwdApp:
    case Rule::BwdComp: return head_entry(t->right());
    default: return head_entry(t->left());
  }
}

inline std::string head_class(const TreePtr& t) {
  const LexEntry* e = head_entry(t);
  return e ? parse_semkey(e->semkey).cls : "";
}

// Walk down a gradable-predicate projection: through right-attached
// complements ("than Bob", "as Chris") and the equative marker, to the
// gradable adjective leaf.  Null when the subtree is not such a projection.
inline const DerivTree* projection_leaf(const TreePtr& t) {
  if (!t) return nullptr;
  if (t->is_leaf())
    return parse_semkey(t->entry().semkey).cls == "adj" ? t.get() : nullptr;
  if (t->rule() == Rule::BwdApp) return projection_leaf(t->left());
  if (t->rule() == Rule::FwdApp && head_class(t->left()) == "as-mark")
    return projection_leaf(t->right());
  return nullptr;
}

inline bool contains_as_mark(const TreePtr& t) {
  if (!t) return false;
  if (t->is_leaf()) return parse_semkey(t->entry().semkey).cls == "as-mark";
  return contains_as_mark(t->left()) || contains_as_mark(t->right());
}

// True when the parent edge already saturates the projection's degree slot:
// a measure adjunct, a degree-bound adjunct, an intensifier, or an already
// inserted marker sits to its left.
inline bool degree_slot_filled(const TreePtr& parent) {
  const std::string cls = head_class(parent->left());
  return cls == "meas" || cls == "degcmp" || cls == "very" || cls == "dgr" || cls == "eqt" ||
         cls == "pos";
}

inline TreePtr wrap_with_marker(const TreePtr& proj, const Lexicon& lexicon) {
  std::string key;
  if (contains_as_mark(proj)) {
    key = "eqt";
  } else {
    const DerivTree* leaf = projection_leaf(proj);
    key = parse_semkey(leaf->entry().semkey).form == "cmp" ? "dgr" : "pos";
  }
  LexEntry entry = lexicon.entry_by_semkey(key);
  TreePtr marker = DerivTree::leaf(key, entry);
  return apply_rule(Rule::FwdApp, marker, proj);
}

inline TreePtr insert_markers_walk(const TreePtr& t, const Lexicon& lexicon) {
  if (!t || t->is_leaf()) return t;
  TreePtr l = insert_markers_walk(t->left(), lexicon);
  TreePtr r = t->right() ? insert_markers_walk(t->right(), lexicon) : nullptr;
  TreePtr node = (l.get() == t->left().get() && r.get() == (t->right() ? t->right().get() : nullptr))
                     ? t
                     : DerivTree::node(t->rule(), t->cat(), l, r);
  // A right child that is a maximal gradable projection gets a marker,
  // unless the edge into this node continues the projection (equative "as")
  // or the projection's degree slot is already filled.  Left edges of
  // backward applications continue the projection and are never sites.
  if (node->right()) {
    const TreePtr& c = node->right();
    const bool continues = node->rule() == Rule::FwdApp && head_class(node->left()) == "as-mark";
    if (!continues && node->rule() == Rule::FwdApp && projection_leaf(c) &&
        !degree_slot_filled(node))
      return DerivTree::node(node->rule(), node->cat(), node->left(),
                             wrap_with_marker(c, lexicon));
  }
  return node;
}

}  // namespace detail

// Insert the empty degree markers dgr / eqt / pos above each maximal
// gradable-predicate projection whose degree slot is not already filled by an
// overt adjunct ("2 inches", "more than 4 feet", "very") or an earlier pass.
// Equative projections (containing "as") get eqt; otherwise the adjective's
// form picks dgr (comparative) or pos (base).
inline TreePtr insert_degree_markers(const TreePtr& t, const Lexicon& lexicon) {
  if (!t) return t;
  TreePtr out = detail::insert_markers_walk(t, lexicon);
  // A bare projection at the root (no clause around it) is still marked.
  if (detail::projection_leaf(out)) out = detail::wrap_with_marker(out, lexicon);
  return out;
}

// Relabel every attributive adjective leaf N/N as N[adj]/N and recompute all
// parent categories.
inline TreePtr refeature_attributive(const TreePtr& t, const Lexicon& lexicon) {
  (void)lexicon;
  std::function<TreePtr(const TreePtr&)> walk = [&](const TreePtr& node) -> TreePtr {
    if (!node) return node;
    if (node->is_leaf()) {
      static const CatPtr plain = parse_category("N/N");
      if (cat_eq(node->cat(), plain)) {
        LexEntry e = node->entry();
        e.cat = parse_category("N[adj]/N");
        return DerivTree::leaf(node->token(), e);
      }
      return node;
    }
    TreePtr l = walk(node->left());
    TreePtr r = node->right() ? walk(node->right()) : nullptr;
    if (l.get() == node->left().get() && r.get() == (node->right() ? node->right().get() : nullptr))
      return node;
    return DerivTree::node(node->rule(), node->cat(), l, r);
  };
  TreePtr relabeled = walk(t);
  if (relabeled.get() == t.get()) return t;
  return recompute_categories(relabeled);
}

inline std::vector<TreeRule> builtin_tree_rules() {
  return {
      {"insert-degree-markers", insert_degree_markers},
      {"refeature-attributive", refeature_attributive},
  };
}

// Run the rule set in name order, repeating until no rule changes the tree.
// Trees are small, so change detection by structural signature is fine.
inline TreePtr apply_all(const TreePtr& tree, const Lexicon& lexicon,
                         std::vector<TreeRule> rules = builtin_tree_rules()) {
  std::stable_sort(rules.begin(), rules.end(),
                   [](const TreeRule& a, const TreeRule& b) { return a.name < b.name; });
  TreePtr cur = tree;
  for (int pass = 0; pass < 100; ++pass) {
    bool changed = false;
    for (const TreeRule& rule : rules) {
      TreePtr next = rule.fn(cur, lexicon);
      if (next.get() != cur.get() && render_tree(next) != render_tree(cur)) {
        cur = next;
        changed = true;
      } else {
        cur = next;
      }
    }
    if (!changed) return cur;
  }
  throw RewriteLoop("tree rewrites did not reach a fixpoint within 100 passes");
}

// --------------------------------------------------------------------------
// Rule files: `name<TAB>pattern<TAB>action`
// --------------------------------------------------------------------------
//
// Patterns are space-separated constraints on one node: `cat=<category>`,
// `tok=<token>`, `key=<semantic-key>`; all must hold.  Actions:
//   relabel <category>   change the matched node's category (parents are
//                        recomputed)
//   insert <semkey>      wrap the matched node under an empty element with
//                        that key (skipped when already present)
//   merge [<joined>]     token rewrite; the pattern is the literal token
//                        sequence, joined with '-' unless <joined> is given
struct TransformRuleSet {
  std::vector<TreeRule> tree_rules;
  std::vector<MergeSpan> merges;
};

namespace detail {

struct NodePattern {
  std::optional<CatPtr> cat;
  std::optional<std::string> tok, key;

  bool matches(const TreePtr& t) const {
    if (cat && !cat_eq(*cat, t->cat())) return false;
    if (tok && (!t->is_leaf() || t->token() != *tok)) return false;
    if (key && (!t->is_leaf() || t->entry().semkey != *key)) return false;
    return true;
  }
};

inline NodePattern parse_node_pattern(const std::string& text) {
  NodePattern p;
  std::istringstream in(text);
  std::string part;
  while (in >> part) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw FormatError("rule pattern constraint must be key=value: " + part);
    const std::string k = part.substr(0, eq), v = part.substr(eq + 1);
    if (k == "cat")
      p.cat = parse_category(v);
    else if (k == "tok")
      p.tok = v;
    else if (k == "key")
      p.key = v;
    else
      throw FormatError("unknown rule pattern constraint: " + k);
  }
  if (!p.cat && !p.tok && !p.key) throw FormatError("empty rule pattern");
  return p;
}

// Rewrite the first matching node (pre-order); returns null when no match.
inline TreePtr rewrite_first(const TreePtr& t, const NodePattern& pat,
                             const std::function<TreePtr(const TreePtr&)>& act) {
  if (!t) return nullptr;
  if (pat.matches(t)) {
    TreePtr out = act(t);
    if (out) return out;
  }
  if (t->is_leaf()) return nullptr;
  if (TreePtr l = rewrite_first(t->left(), pat, act))
    return DerivTree::node(t->rule(), t->cat(), l, t->right());
  if (t->right())
    if (TreePtr r = rewrite_first(t->right(), pat, act))
      return DerivTree::node(t->rule(), t->cat(), t->left(), r);
  return nullptr;
}

}  // namespace detail

inline TransformRuleSet load_transform_rules(const std::string& text) {
  TransformRuleSet out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 3)
      throw FormatError("rule line " + std::to_string(lineno) +
                        ": expected 3 tab-separated columns");
    const std::string name = cols[0], pattern = cols[1], action = cols[2];
    std::istringstream act(action);
    std::string verb, arg;
    act >> verb;
    std::getline(act, arg);
    while (!arg.empty() && arg.front() == ' ') arg.erase(arg.begin());

    if (verb == "merge") {
      std::vector<std::string> words;
      std::istringstream pw(pattern);
      std::string w;
      while (pw >> w) words.push_back(w);
      if (words.size() < 2)
        throw FormatError("rule line " + std::to_string(lineno) +
                          ": merge needs at least two tokens");
      out.merges.emplace_back(words, arg.empty() ? Lexicon::join_key(words) : arg);
    } else if (verb == "relabel") {
      CatPtr cat = parse_category(arg);
      detail::NodePattern pat = detail::parse_node_pattern(pattern);
      out.tree_rules.push_back({name, [pat, cat](const TreePtr& t, const Lexicon&) {
                                  auto act = [&](const TreePtr& n) -> TreePtr {
                                    if (cat_eq(n->cat(), cat)) return nullptr;
                                    if (n->is_leaf()) {
                                      LexEntry e = n->entry();
                                      e.cat = cat;
                                      return DerivTree::leaf(n->token(), e);
                                    }
                                    return DerivTree::node(Rule::UnaryFeature, cat, n);
                                  };
                                  TreePtr r = detail::rewrite_first(t, pat, act);
                                  return r ? recompute_categories(r) : t;
                                }});
    } else if (verb == "insert") {
      detail::NodePattern pat = detail::parse_node_pattern(pattern);
      const std::string semkey = arg;
      if (semkey.empty())
        throw FormatError("rule line " + std::to_string(lineno) + ": insert needs a key");
      out.tree_rules.push_back(
          {name, [pat, semkey](const TreePtr& t, const Lexicon& lexicon) {
             auto marked = [&semkey](const TreePtr& n) {
               return !n->is_leaf() && n->left() && n->left()->is_leaf() &&
                      n->left()->entry().semkey == semkey;
             };
             // Refuse nodes that are the marker leaf or already wrapped, so
             // repeated passes reach a fixpoint.
             auto act = [&](const TreePtr& n) -> TreePtr {
               if (n->is_leaf() && n->entry().semkey == semkey) return nullptr;
               if (marked(n)) return nullptr;
               LexEntry e = lexicon.entry_by_semkey(semkey);
               TreePtr leaf = DerivTree::leaf(parse_semkey(semkey).cls, e);
               return apply_rule(Rule::FwdApp, leaf, n);
             };
             std::function<TreePtr(const TreePtr&)> walk = [&](const TreePtr& node) -> TreePtr {
               if (!node || node->is_leaf()) return nullptr;
               // The wrapped original sits as the marker's right child and
               // still matches its own pattern; skip it.
               if (node->left() && !marked(node) && pat.matches(node->left()))
                 if (TreePtr nl = act(node->left()))
                   return DerivTree::node(node->rule(), node->cat(), nl, node->right());
               if (node->right() && !marked(node) && pat.matches(node->right()))
                 if (TreePtr nr = act(node->right()))
                   return DerivTree::node(node->rule(), node->cat(), node->left(), nr);
               if (TreePtr l = walk(node->left()))
                 return DerivTree::node(node->rule(), node->cat(), l, node->right());
               if (node->right())
                 if (TreePtr r = walk(node->right()))
                   return DerivTree::node(node->rule(), node->cat(), node->left(), r);
               return nullptr;
             };
             if (pat.matches(t))
               if (TreePtr r = act(t)) return r;
             TreePtr r = walk(t);
             return r ? r : t;
           }});
    } else {
      throw FormatError("rule line " + std::to_string(lineno) + ": unknown action " + verb);
    }
  }
  return out;
}

inline TransformRuleSet load_transform_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open rule file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_transform_rules(buf.str());
}

// --------------------------------------------------------------------------
// Front-end helpers
// --------------------------------------------------------------------------

// Token pipeline: declared multi-token merges, then clausal-tail cleanup.
inline std::vector<std::string> prepare_tokens(const std::vector<std::string>& tokens,
                                               const Lexicon& lexicon,
                                               const std::vector<MergeSpan>& extra_merges = {}) {
  std::vector<MergeSpan> spans = lexicon.merge_spans();
  spans.insert(spans.end(), extra_merges.begin(), extra_merges.end());
  std::stable_sort(spans.begin(), spans.end(), [](const MergeSpan& a, const MergeSpan& b) {
    return a.first.size() > b.first.size();
  });
  return drop_clausal_tail(merge_multiword(tokens, spans));
}

}  // namespace degnli
