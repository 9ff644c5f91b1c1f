#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degnli/defaults.hpp"
#include "degnli/kb.hpp"
#include "degnli/parser.hpp"
#include "degnli/reduce.hpp"
#include "degnli/simplify.hpp"
#include "degnli/templates.hpp"
#include "degnli/tokenizer.hpp"
#include "degnli/transform.hpp"
#include "degnli/typecheck.hpp"
#include "degnli/units.hpp"

namespace degnli {

// --------------------------------------------------------------------------
// Meaning assignment over derivation trees
// --------------------------------------------------------------------------

namespace detail {

// The clause's predicative adjective leaf (attributive ones keep their own
// local context and do not anchor the clause).
inline const DerivTree* find_pred_adj_leaf(const TreePtr& t) {
  if (!t) return nullptr;
  if (t->is_leaf()) {
    const std::string cls = parse_semkey(t->entry().semkey).cls;
    return cls == "adj" || cls == "adjplain" ? t.get() : nullptr;
  }
  if (const DerivTree* l = find_pred_adj_leaf(t->left())) return l;
  return find_pred_adj_leaf(t->right());
}

inline std::optional<Rational> cardinal_of(const TreePtr& t) {
  if (!t || !t->is_leaf()) return std::nullopt;
  const SemKey key = parse_semkey(t->entry().semkey);
  if (key.cls != "num") return std::nullopt;
  return Rational::parse(key.lemma);
}

}  // namespace detail

// Assigns a meaning term to every node: templates at the leaves, function
// application along the tree (the functor side applies), function
// composition for the composition rules, and quantifier lifting at LexRaise.
// Measure words receive their cardinal sibling's value so the measure
// literal can be built in place.
inline TermPtr assign(const TreePtr& t, const TemplateSet& templates, const KB& kb,
                      std::optional<AdjContext> inherited = std::nullopt) {
  std::optional<AdjContext> ctx = inherited;
  if (const DerivTree* anchor = detail::find_pred_adj_leaf(t))
    ctx = adj_context_of(anchor->entry(), kb);

  switch (t->rule()) {
    case Rule::Lexical: {
      std::optional<AdjContext> own = adj_context_of(t->entry(), kb);
      return templates.build(t->entry(), own ? own : ctx, std::nullopt, kb);
    }
    case Rule::FwdApp:
      return Term::app(assign(t->left(), templates, kb, ctx),
                       assign(t->right(), templates, kb, ctx));
    case Rule::BwdApp: {
      const TreePtr& functor = t->right();
      if (functor->is_leaf()) {
        const std::string cls = parse_semkey(functor->entry().semkey).cls;
        if (cls == "unit" || cls == "meas") {
          std::optional<Rational> k = detail::cardinal_of(t->left());
          if (!k)
            throw TypeMismatch("measure word without a cardinal sibling: " +
                               functor->entry().semkey);
          TermPtr f = templates.build(functor->entry(), ctx, k, kb);
          return Term::app(f, assign(t->left(), templates, kb, ctx));
        }
      }
      return Term::app(assign(functor, templates, kb, ctx),
                       assign(t->left(), templates, kb, ctx));
    }
    case Rule::FwdComp: {
      // X/Y Y/Z: lam z . l(r(z))
      TermPtr l = assign(t->left(), templates, kb, ctx);
      TermPtr r = assign(t->right(), templates, kb, ctx);
      TypePtr rt = type_check(r);
      if (rt->kind() != SemType::Fun) throw TypeMismatch("composition over a non-function");
      return Term::abs("z", rt->arg(),
                       Term::app(l, Term::app(r, Term::var("z", rt->arg()))));
    }
    case Rule::BwdComp: {
      // Y\Z X\Y: lam z . r(l(z))
      TermPtr l = assign(t->left(), templates, kb, ctx);
      TermPtr r = assign(t->right(), templates, kb, ctx);
      TypePtr lt = type_check(l);
      if (lt->kind() != SemType::Fun) throw TypeMismatch("composition over a non-function");
      return Term::abs("z", lt->arg(),
                       Term::app(r, Term::app(l, Term::var("z", lt->arg()))));
    }
    case Rule::LexRaise: {
      TermPtr n = assign(t->left(), templates, kb, ctx);
      TypePtr nt = type_check(n);
      if (nt->kind() == SemType::Entity) return tpl::eta_entity(n);
      if (nt->kind() == SemType::Fun && nt->arg()->kind() == SemType::Entity &&
          nt->res()->kind() == SemType::Prop) {
        // Bare nominal: lam F1 F2 . exists x . N(x) /\ (F1(x) /\ F2(x))
        const TypePtr E = SemType::entity(), P = SemType::prop();
        const TypePtr EP = SemType::fun(E, P);
        const TermPtr x = Term::var("x", E);
        return Term::abs(
            "F1", EP,
            Term::abs("F2", EP,
                      Term::exists("x", E,
                                   Term::conj(Term::app(n, x),
                                              Term::conj(Term::app(Term::var("F1", EP), x),
                                                         Term::app(Term::var("F2", EP), x))))));
      }
      throw TypeMismatch("cannot lift nominal of type " + nt->str());
    }
    case Rule::UnaryFeature:
      return assign(t->left(), templates, kb, ctx);
  }
  throw TypeMismatch("unhandled derivation rule");
}

// --------------------------------------------------------------------------
// Sentence-to-logical-form front end
// --------------------------------------------------------------------------

// Everything needed to interpret the fragment; defaults give the built-in
// grammar.  Members are plain values so a caller can swap any of them.
struct Fragment {
  Lexicon lexicon;
  TemplateSet templates;
  KB kb;
  std::vector<TreeRule> tree_rules;
  std::vector<MergeSpan> extra_merges;

  static Fragment standard() {
    Fragment f;
    f.lexicon = default_lexicon();
    f.kb = KB::defaults();
    f.tree_rules = builtin_tree_rules();
    return f;
  }
};

struct Analysis {
  std::vector<std::string> tokens;   // after merging and tail cleanup
  TreePtr derivation;                // parser output
  TreePtr transformed;               // after tree rewrites
  TermPtr raw;                       // composed term before reduction
  TermPtr lf;                        // beta-normal, unit-normalized, simplified
};

inline Analysis analyze(const std::string& sentence, const Fragment& fragment,
                        Strategy strategy = Strategy::Left) {
  Analysis a;
  a.tokens = prepare_tokens(tokenize(sentence), fragment.lexicon, fragment.extra_merges);
  std::vector<TreePtr> roots = parse(a.tokens, fragment.lexicon, strategy);
  if (roots.empty()) throw ParseFailure("no parse: " + sentence);
  a.derivation = roots.front();
  a.transformed = apply_all(a.derivation, fragment.lexicon, fragment.tree_rules);
  a.raw = assign(a.transformed, fragment.templates, fragment.kb);
  TermPtr reduced = beta_reduce(a.raw);
  reduced = normalize_units(reduced, fragment.kb.units());
  a.lf = simplify(reduced);
  check_formula(a.lf);
  return a;
}

inline TermPtr sentence_lf(const std::string& sentence, const Fragment& fragment,
                           Strategy strategy = Strategy::Left) {
  return analyze(sentence, fragment, strategy).lf;
}

// Negation at the sentence level, simplified.
inline TermPtr negate_sentence(const TermPtr& f) { return simplify(Term::negate(f)); }

}  // namespace degnli
