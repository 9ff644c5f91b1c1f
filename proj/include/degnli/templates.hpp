#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "degnli/format.hpp"
#include "degnli/kb.hpp"
#include "degnli/lexicon.hpp"
#include "degnli/term.hpp"

namespace degnli {

// --------------------------------------------------------------------------
// Adjective context
// --------------------------------------------------------------------------

// Degree-protocol entries (copulas, markers, comparison complements, measure
// adjuncts) are dimension-parametric: their meanings mention the scale of
// the one gradable (or plain) adjective in whose clause they sit.  The
// context carries that scale.
struct AdjContext {
  std::string pred;   // predicate used in the logical form (lemma)
  std::string pole;   // positive pole of the scale; pred itself when positive
  bool negative = false;
  bool gradable = true;
  std::string form;   // "base" or "cmp"
  TypePtr degree;     // degree sort of the scale
};

inline std::optional<AdjContext> adj_context_of(const LexEntry& entry, const KB& kb) {
  const SemKey key = parse_semkey(entry.semkey);
  if (key.cls == "adj" || key.cls == "nadj") {
    AdjContext c;
    c.pred = key.lemma;
    c.pole = kb.positive_pole(key.lemma);
    c.negative = kb.is_negative(key.lemma);
    c.form = key.form.empty() ? "base" : key.form;
    c.degree = kb.degree_sort(key.lemma);
    return c;
  }
  if (key.cls == "adjplain" || key.cls == "nadjplain") {
    AdjContext c;
    c.pred = key.lemma;
    c.pole = key.lemma;
    c.gradable = false;
    c.form = "base";
    c.degree = SemType::count();
    return c;
  }
  return std::nullopt;
}

// --------------------------------------------------------------------------
// Native meaning templates
// --------------------------------------------------------------------------

namespace tpl {

using T = TermPtr;

inline T v(const std::string& n, const TypePtr& ty) { return Term::var(n, ty); }
inline T cn(const std::string& n, const TypePtr& ty) { return Term::constant(n, ty); }
inline T lam(const std::string& n, const TypePtr& ty, const T& b) {
  return Term::abs(n, ty, b);
}

// Shared protocol types over a degree sort D.
struct Proto {
  TypePtr D, E, P, EP, DP, EDP, HT, IT, JT, GQ, ADJ, VP, TV;
  explicit Proto(const TypePtr& degree) {
    D = degree;
    E = SemType::entity();
    P = SemType::prop();
    EP = SemType::fun(E, P);
    DP = SemType::fun(D, P);
    EDP = SemType::fun(E, DP);
    HT = SemType::fun(EDP, SemType::fun(D, P));
    IT = SemType::fun(EP, SemType::fun(P, SemType::fun(P, EP)));
    JT = SemType::fun(DP, P);
    GQ = SemType::fun(EP, SemType::fun(EP, P));
    ADJ = SemType::fun(
        D, SemType::fun(
               D, SemType::fun(D, SemType::fun(HT, SemType::fun(IT, SemType::fun(
                                                                        JT, SemType::fun(GQ, P)))))));
    VP = SemType::fun(GQ, P);
    TV = SemType::fun(GQ, VP);
  }
};

inline T comparison_class() { return cn("U", SemType::entity()); }

inline T theta_of(const AdjContext& ctx) {
  return Term::theta(ctx.pole, comparison_class(), ctx.degree);
}

// lam w:E . top  — the trivial restrictor handed to a quantifier slot.
inline T triv_restr() { return lam("w", SemType::entity(), Term::top()); }

// lam Hp:(E->D->P) . lam dh:D . top
inline T triv_H(const Proto& p) { return lam("Hp", p.EDP, lam("dh", p.D, Term::top())); }

// lam K:(D->P) . top
inline T triv_J(const Proto& p) { return lam("K", p.DP, Term::top()); }

// Combination bodies for the I slot.
// lam A1 A2 A3 x . A1(x) /\ A2
inline T comb_and(const Proto& p) {
  return lam("A1", p.EP,
             lam("A2", p.P,
                 lam("A3", p.P,
                     lam("x", p.E, Term::conj(Term::app(v("A1", p.EP), v("x", p.E)),
                                              v("A2", p.P))))));
}
// lam A1 A2 A3 x . A2 -> A1(x)
inline T comb_imp(const Proto& p) {
  return lam("A1", p.EP,
             lam("A2", p.P,
                 lam("A3", p.P, lam("x", p.E, Term::imp(v("A2", p.P),
                                                        Term::app(v("A1", p.EP), v("x", p.E)))))));
}
// lam A1 A2 A3 x . (not A2) -> A1(x)
inline T comb_negimp(const Proto& p) {
  return lam("A1", p.EP,
             lam("A2", p.P,
                 lam("A3", p.P,
                     lam("x", p.E, Term::imp(Term::negate(v("A2", p.P)),
                                             Term::app(v("A1", p.EP), v("x", p.E)))))));
}

// Close a body over the protocol argument list d1 d2 d3 H I J Q.
inline T close_protocol(const Proto& p, const T& body) {
  return lam("d1", p.D,
             lam("d2", p.D,
                 lam("d3", p.D,
                     lam("H", p.HT, lam("I", p.IT, lam("J", p.JT, lam("Q", p.GQ, body)))))));
}

// The gradable adjective leaf.  Its slots: d1 is the measured degree, d2
// feeds the clausal complement H, d3 is a contrast degree; H/I/J/Q are the
// complement, combination, kernel consumer, and subject quantifier.
//
//   lam d1 d2 d3 H I J Q .
//     Q(lam w.top,
//       I(lam x . pred(x,d1) /\ J(kernel), H(pred, d2), not (d1 = d3)))
//
// kernel = lam d4 . d4 < d1 on positive scales, lam d4 . d1 <= d4 on
// negative ones (a negative scale ranks the other way).
inline T adjective_leaf(const AdjContext& ctx) {
  Proto p(ctx.degree);
  const T rel = cn(ctx.pred, p.EDP);
  const T d1 = v("d1", p.D), d2 = v("d2", p.D), d3 = v("d3", p.D);
  const T kernel = ctx.negative ? lam("d4", p.D, Term::le(d1, v("d4", p.D)))
                                : lam("d4", p.D, Term::lt(v("d4", p.D), d1));
  const T a1 = lam("x", p.E, Term::conj(Term::app(rel, {v("x", p.E), d1}),
                                        Term::app(v("J", p.JT), kernel)));
  const T a2 = Term::app(v("H", p.HT), {rel, d2});
  const T a3 = Term::negate(Term::eq(d1, d3));
  const T body = Term::app(v("Q", p.GQ),
                           {triv_restr(), Term::app(v("I", p.IT), {a1, a2, a3})});
  return close_protocol(p, body);
}

// Plain adjective in protocol clothing: every degree slot is ignored.
inline T plain_adjective_leaf(const AdjContext& ctx) {
  Proto p(ctx.degree);
  const T body =
      Term::app(v("Q", p.GQ),
                {triv_restr(), lam("x", p.E, Term::app(cn(ctx.pred, p.EP), v("x", p.E)))});
  return close_protocol(p, body);
}

// Degree markers (inserted empty elements).  Each binds the measured degree
// and re-enters the protocol; H and J pass through unless the marker itself
// settles them.
//   dgr:  lam A ... . exists dd . A(dd, dd, theta, H, and-comb, J, Q)
//   pos:  like dgr, with H trivial and J = lam K . top /\ K(theta)
//   eqt:  lam A ... . forall dd . A(dd, dd, theta, H, imp-comb, triv-J, Q)
inline T marker(const std::string& which, const AdjContext& ctx) {
  Proto p(ctx.degree);
  const T dd = v("dd", p.D);
  T h = v("H", p.HT), i, j = v("J", p.JT);
  bool universal = false;
  if (which == "dgr") {
    i = comb_and(p);
  } else if (which == "pos") {
    h = triv_H(p);
    i = comb_and(p);
    j = lam("K", p.DP, Term::conj(Term::top(), Term::app(v("K", p.DP), theta_of(ctx))));
  } else {  // eqt
    i = comb_imp(p);
    j = triv_J(p);
    universal = true;
  }
  T body = Term::app(v("A", p.ADJ), {dd, dd, theta_of(ctx), h, i, j, v("Q", p.GQ)});
  body = universal ? Term::forall("dd", p.D, body) : Term::exists("dd", p.D, body);
  return lam("A", p.ADJ, close_protocol(p, body));
}

// Predicate negation: lam A ... . not A(d1,d2,d3,H,I,J,Q)
inline T negation(const AdjContext& ctx) {
  Proto p(ctx.degree);
  const T body = Term::negate(Term::app(
      v("A", p.ADJ), {v("d1", p.D), v("d2", p.D), v("d3", p.D), v("H", p.HT), v("I", p.IT),
                      v("J", p.JT), v("Q", p.GQ)}));
  return lam("A", p.ADJ, close_protocol(p, body));
}

// Adjectival copula: feeds inert placeholders into slots the markers and
// complements will have settled, and hands the subject quantifier through.
//   lam A Q . A(_d1, _d2, _d3, _H0, _I0, lam w . top, Q)
inline T copula_adjectival(const AdjContext& ctx) {
  Proto p(ctx.degree);
  const T body = Term::app(
      v("A", p.ADJ), {cn("_d1", p.D), cn("_d2", p.D), cn("_d3", p.D), cn("_H0", p.HT),
                      cn("_I0", p.IT), triv_J(p), v("Q", p.GQ)});
  return lam("A", p.ADJ, lam("Q", p.GQ, body));
}

// Equative pieces: "as" before the adjective is identity; "as NP" installs a
// positive clausal complement.  "than NP" installs the negated one; "than
// MEASURE" settles the kernel at the measure instead.
inline T as_marker(const AdjContext& ctx) {
  Proto p(ctx.degree);
  return lam("A", p.ADJ, v("A", p.ADJ));
}

inline T clausal_complement(const AdjContext& ctx, bool negated) {
  Proto p(ctx.degree);
  T inner = Term::app(v("Hp", p.EDP), {v("y", p.E), v("dh", p.D)});
  if (negated) inner = Term::negate(inner);
  const T h = lam("Hp", p.EDP,
                  lam("dh", p.D, Term::app(v("Qn", p.GQ), {triv_restr(), lam("y", p.E, inner)})));
  const T body = Term::app(v("A", p.ADJ), {v("d1", p.D), v("d2", p.D), v("d3", p.D), h,
                                           v("I", p.IT), triv_J(p), v("Q", p.GQ)});
  return lam("Qn", p.GQ, lam("A", p.ADJ, close_protocol(p, body)));
}

inline T measure_complement(const AdjContext& ctx) {
  Proto p(ctx.degree);
  const T j = lam("K", p.DP, Term::conj(Term::top(), Term::app(v("K", p.DP), v("M", p.D))));
  const T body = Term::app(v("A", p.ADJ), {v("d1", p.D), v("d2", p.D), v("d3", p.D), triv_H(p),
                                           v("I", p.IT), j, v("Q", p.GQ)});
  return lam("M", p.D, lam("A", p.ADJ, close_protocol(p, body)));
}

// Bare measure adjunct on a base form: "Bob is 4 feet tall".
//   lam A ... . A(LIT, LIT, LIT, triv-H, and-comb, triv-J, Q)
inline T measure_adjunct_base(const AdjContext& ctx, const T& lit) {
  Proto p(ctx.degree);
  const T body = Term::app(v("A", p.ADJ),
                           {lit, lit, lit, triv_H(p), comb_and(p), triv_J(p), v("Q", p.GQ)});
  return lam("A", p.ADJ, close_protocol(p, body));
}

// Differential adjunct on a comparative: "John is 5 cm taller than Bob".
//   lam A ... . forall dd . A(dd, dd -/+ LIT, theta, H, negimp-comb, triv-J, Q)
inline T measure_adjunct_diff(const AdjContext& ctx, const T& lit) {
  Proto p(ctx.degree);
  const T dd = v("dd", p.D);
  const T shifted = ctx.negative ? Term::sum(dd, lit) : Term::diff(dd, lit);
  const T body = Term::forall(
      "dd", p.D,
      Term::app(v("A", p.ADJ),
                {dd, shifted, theta_of(ctx), v("H", p.HT), comb_negimp(p), triv_J(p),
                 v("Q", p.GQ)}));
  return lam("A", p.ADJ, close_protocol(p, body));
}

// Degree-bound adjuncts: "more than 4 feet tall", "at least 6 feet tall".
inline T degree_bound_adjunct(const AdjContext& ctx, bool strict) {
  Proto p(ctx.degree);
  const T dd = v("dd", p.D);
  const T m = v("M", p.D);
  T j;
  if (strict) {
    // The adjective's own kernel already compares strictly in the right
    // direction for the scale's polarity.
    j = lam("K", p.DP, Term::conj(Term::top(), Term::app(v("K", p.DP), m)));
  } else {
    const T cmp = ctx.negative ? Term::le(dd, m) : Term::le(m, dd);
    j = lam("K", p.DP, Term::conj(Term::top(), cmp));
  }
  const T body = Term::exists(
      "dd", p.D,
      Term::app(v("A", p.ADJ),
                {dd, dd, theta_of(ctx), triv_H(p), comb_and(p), j, v("Q", p.GQ)}));
  return lam("M", p.D, lam("A", p.ADJ, close_protocol(p, body)));
}

// Intensifier: positive-form reading against a boosted threshold.
inline T intensifier(const AdjContext& ctx) {
  Proto p(ctx.degree);
  const T boosted = Term::theta("very_" + ctx.pole, comparison_class(), ctx.degree);
  const T dd = v("dd", p.D);
  const T j = lam("K", p.DP, Term::conj(Term::top(), Term::app(v("K", p.DP), boosted)));
  const T body = Term::exists(
      "dd", p.D,
      Term::app(v("A", p.ADJ),
                {dd, dd, theta_of(ctx), triv_H(p), comb_and(p), j, v("Q", p.GQ)}));
  return lam("A", p.ADJ, close_protocol(p, body));
}

// Attributive adjectives (N[adj]/N after relabeling).
inline T attributive(const AdjContext& ctx) {
  Proto p(ctx.degree);
  const T x = v("x", p.E);
  T predication;
  if (!ctx.gradable) {
    predication = Term::app(cn(ctx.pred, p.EP), x);
  } else {
    const T dd = v("dd", p.D);
    const T cmp = ctx.negative ? Term::le(dd, theta_of(ctx)) : Term::lt(theta_of(ctx), dd);
    predication = Term::exists(
        "dd", p.D, Term::conj(Term::app(cn(ctx.pred, p.EDP), {x, dd}), cmp));
  }
  return lam("F", p.EP,
             lam("x", p.E, Term::conj(Term::app(v("F", p.EP), x), predication)));
}

// --------------------------------------------------------------------------
// Entity layer: nouns, verbs, determiners, quantifiers
// --------------------------------------------------------------------------

inline Proto count_proto() { return Proto(SemType::count()); }

// lam G1 G2 . G1(e) /\ G2(e)
inline T eta_entity(const T& e) {
  Proto p = count_proto();
  return lam("G1", p.EP,
             lam("G2", p.EP,
                 Term::conj(Term::app(v("G1", p.EP), e), Term::app(v("G2", p.EP), e))));
}

inline T many_rel(const std::string& pole) {
  return cn(pole, SemType::fun(SemType::entity(),
                               SemType::fun(SemType::count(), SemType::prop())));
}

inline T determiner(const std::string& which) {
  Proto p = count_proto();
  const T F = v("F", p.EP), F1 = v("F1", p.EP), F2 = v("F2", p.EP);
  const T x = v("x", p.E);
  auto fx = [&](const T& f) { return Term::app(f, x); };
  T body;
  if (which == "every") {
    body = Term::forall("x", p.E, Term::imp(Term::conj(fx(F), fx(F1)), fx(F2)));
  } else if (which == "some" || which == "a" || which == "the") {
    body = Term::exists("x", p.E, Term::conj(fx(F), Term::conj(fx(F1), fx(F2))));
  } else if (which == "no") {
    body = Term::negate(
        Term::exists("x", p.E, Term::conj(fx(F), Term::conj(fx(F1), fx(F2)))));
  } else if (which == "most") {
    const T dc = v("dc", SemType::count());
    auto half = [&](const T& scope) {
      return Term::exists(
          "x", p.E,
          Term::conj(fx(F), Term::conj(fx(F1),
                                       Term::conj(scope, Term::app(many_rel("many"), {x, dc})))));
    };
    body = Term::exists("dc", SemType::count(),
                        Term::conj(half(fx(F2)), Term::negate(half(Term::negate(fx(F2))))));
  } else if (which == "many" || which == "few" || which == "afew" || which == "alotof") {
    const std::string theta_pred = which == "afew" ? "afew" : "many";
    const T cnt = Term::app(many_rel("many"),
                            {x, Term::theta(theta_pred, x, SemType::count())});
    body = Term::exists("x", p.E,
                        Term::conj(fx(F2), Term::conj(fx(F), Term::conj(fx(F1), cnt))));
    if (which == "few") body = Term::negate(body);
  } else {
    throw FormatError("unknown determiner template: " + which);
  }
  return lam("F", p.EP, lam("F1", p.EP, lam("F2", p.EP, body)));
}

// Cardinal determiner: exists x . F2 /\ (F /\ (F1 /\ many(x,k))); downward
// closure of `many` supplies the at-least reading.
inline T cardinal_determiner(const Rational& k) {
  Proto p = count_proto();
  const T F = v("F", p.EP), F1 = v("F1", p.EP), F2 = v("F2", p.EP);
  const T x = v("x", p.E);
  const T body = Term::exists(
      "x", p.E,
      Term::conj(Term::app(F2, x),
                 Term::conj(Term::app(F, x),
                            Term::conj(Term::app(F1, x),
                                       Term::app(many_rel("many"),
                                                 {x, Term::num(k, SemType::count())})))));
  return lam("F", p.EP, lam("F1", p.EP, lam("F2", p.EP, body)));
}

// Bound determiners over a cardinal argument n.
//   at least n:    exists x . F2 /\ (F /\ (F1 /\ many(x,n)))
//   more than n:   exists x dc . F /\ (F1 /\ (many(x,dc) /\ ((n < dc) /\ F2)))
//   at most / no more than n:   not (more than n)
inline T bound_determiner(const std::string& which) {
  Proto p = count_proto();
  const TypePtr C = SemType::count();
  const T n = v("n", C);
  const T F = v("F", p.EP), F1 = v("F1", p.EP), F2 = v("F2", p.EP);
  const T x = v("x", p.E);
  T body;
  if (which == "atleast") {
    body = Term::exists(
        "x", p.E,
        Term::conj(Term::app(F2, x),
                   Term::conj(Term::app(F, x),
                              Term::conj(Term::app(F1, x),
                                         Term::app(many_rel("many"), {x, n})))));
  } else {
    const T dc = v("dc", C);
    body = Term::exists(
        "x", p.E,
        Term::exists(
            "dc", C,
            Term::conj(Term::app(F, x),
                       Term::conj(Term::app(F1, x),
                                  Term::conj(Term::app(many_rel("many"), {x, dc}),
                                             Term::conj(Term::lt(n, dc), Term::app(F2, x)))))));
    if (which == "atmost" || which == "nomorethan") body = Term::negate(body);
    else if (which != "morethan")
      throw FormatError("unknown bound determiner template: " + which);
  }
  return lam("n", C, lam("F", p.EP, lam("F1", p.EP, lam("F2", p.EP, body))));
}

// Nominal comparatives: "(3) more/fewer cookies than Bob".
//   PART(d, e) = V(lam F1 F2 . exists x . F /\ (F1 /\ (F2 /\ many(x,d))))(eta e)
inline T nominal_part(const T& F, const std::string& pole, const T& d, const T& e,
                      const T& V) {
  Proto p = count_proto();
  const T x = v("x", p.E);
  const T gq = lam(
      "F1", p.EP,
      lam("F2", p.EP,
          Term::exists(
              "x", p.E,
              Term::conj(Term::app(F, x),
                         Term::conj(Term::app(v("F1", p.EP), x),
                                    Term::conj(Term::app(v("F2", p.EP), x),
                                               Term::app(many_rel(pole), {x, d})))))));
  return Term::app(V, {gq, eta_entity(e)});
}

inline T nominal_comparative(const std::string& lemma, const KB& kb, bool differential) {
  Proto p = count_proto();
  const TypePtr C = SemType::count();
  const std::string pole = kb.positive_pole(lemma);
  const bool neg = kb.is_negative(lemma);
  const T F = v("F", p.EP), Tq = v("T", p.GQ), V = v("V", p.TV), Q = v("Q", p.GQ);
  const T s = v("s", p.E), t = v("t", p.E), dc = v("dc", C);
  T scope;
  if (!differential) {
    const T self_half = nominal_part(F, pole, dc, s, V);
    const T other_half =
        Term::app(Tq, {triv_restr(), lam("t", p.E, nominal_part(F, pole, dc, t, V))});
    const T cmp = neg ? Term::conj(other_half, Term::negate(self_half))
                      : Term::conj(self_half, Term::negate(other_half));
    scope = Term::exists("dc", C, cmp);
  } else {
    const T nvar = v("n", C);
    const T shifted = neg ? Term::sum(dc, nvar) : Term::diff(dc, nvar);
    const T other_half =
        Term::app(Tq, {triv_restr(), lam("t", p.E, nominal_part(F, pole, shifted, t, V))});
    scope = Term::forall("dc", C, Term::imp(other_half, nominal_part(F, pole, dc, s, V)));
  }
  T meaning = lam(
      "F", p.EP,
      lam("T", p.GQ,
          lam("V", p.TV, lam("Q", p.GQ, Term::app(Q, {triv_restr(), lam("s", p.E, scope)})))));
  if (differential) meaning = lam("n", C, meaning);
  return meaning;
}

}  // namespace tpl

// --------------------------------------------------------------------------
// Template selection
// --------------------------------------------------------------------------

// Builds the meaning term for one lexical entry.  File-loaded overrides
// (rows of `key<TAB>category<TAB>term`) take precedence: a row keyed by the
// entry's semantic key wins over one keyed `-` that matches its category.
class TemplateSet {
 public:
  void load_string(const std::string& text) {
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
        throw FormatError("template line " + std::to_string(lineno) +
                          ": expected 3 tab-separated columns");
      if (cols[0] == "-" || cols[0].empty())
        by_cat_[parse_category(cols[1])->str()] = cols[2];
      else
        by_key_[cols[0]] = cols[2];
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open template file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    load_string(buf.str());
  }

  TermPtr build(const LexEntry& entry, const std::optional<AdjContext>& ctx,
                const std::optional<Rational>& sibling_cardinal, const KB& kb) const {
    if (auto it = by_key_.find(entry.semkey); it != by_key_.end()) return read_override(it->second);
    if (auto it = by_cat_.find(entry.cat->str()); it != by_cat_.end())
      return read_override(it->second);
    return native(entry, ctx, sibling_cardinal, kb);
  }

 private:
  static TermPtr read_override(const std::string& text) {
    std::map<std::string, TypePtr> sig;
    sig["U"] = SemType::entity();
    return read_term(text, sig);
  }

  static const AdjContext& need_ctx(const std::optional<AdjContext>& ctx,
                                    const std::string& key) {
    if (!ctx) throw TypeMismatch("no adjective in scope for entry: " + key);
    return *ctx;
  }

  TermPtr native(const LexEntry& entry, const std::optional<AdjContext>& ctx,
                 const std::optional<Rational>& sibling_cardinal, const KB& kb) const {
    using namespace tpl;
    const SemKey key = parse_semkey(entry.semkey);
    const std::string& cls = key.cls;
    const TypePtr E = SemType::entity(), P = SemType::prop();
    const TypePtr EP = SemType::fun(E, P);

    if (cls == "pn") return cn(key.lemma, E);
    if (cls == "n") return cn(key.lemma, EP);
    if (cls == "iv") {
      Proto p = count_proto();
      return lam("Q", p.GQ,
                 Term::app(v("Q", p.GQ),
                           {triv_restr(), lam("x", E, Term::app(cn(key.lemma, EP), v("x", E)))}));
    }
    if (cls == "tv") {
      Proto p = count_proto();
      const T rel = cn(key.lemma, SemType::fun(E, EP));
      const T inner = lam("o", E, Term::app(rel, {v("s", E), v("o", E)}));
      return lam("Qo", p.GQ,
                 lam("Qs", p.GQ,
                     Term::app(v("Qs", p.GQ),
                               {triv_restr(),
                                lam("s", E, Term::app(v("Qo", p.GQ), {triv_restr(), inner}))})));
    }
    if (cls == "aux") {
      Proto p = count_proto();
      return lam("V", p.VP, v("V", p.VP));
    }
    if (cls == "cop-np") {
      Proto p = count_proto();
      const T same = lam("o", E, Term::eq(v("o", E), v("s", E)));
      return lam("Qo", p.GQ,
                 lam("Qs", p.GQ,
                     Term::app(v("Qs", p.GQ),
                               {triv_restr(),
                                lam("s", E, Term::app(v("Qo", p.GQ), {triv_restr(), same}))})));
    }
    if (cls == "vp-or") {
      Proto p = count_proto();
      const T s = v("s", E);
      const T body = Term::disj(Term::app(v("Va", p.VP), eta_entity(s)),
                                Term::app(v("Vb", p.VP), eta_entity(s)));
      return lam("Vb", p.VP,
                 lam("Va", p.VP,
                     lam("Q", p.GQ, Term::app(v("Q", p.GQ), {triv_restr(), lam("s", E, body)}))));
    }
    if (cls == "adj") return adjective_leaf(need_ctx(ctx, entry.semkey));
    if (cls == "adjplain") return plain_adjective_leaf(need_ctx(ctx, entry.semkey));
    if (cls == "nadj" || cls == "nadjplain") return attributive(need_ctx(ctx, entry.semkey));
    if (cls == "dgr" || cls == "eqt" || cls == "pos")
      return marker(cls, need_ctx(ctx, entry.semkey));
    if (cls == "not-adj") return negation(need_ctx(ctx, entry.semkey));
    if (cls == "cop-adj") return copula_adjectival(need_ctx(ctx, entry.semkey));
    if (cls == "as-mark") return as_marker(need_ctx(ctx, entry.semkey));
    if (cls == "as-comp") return clausal_complement(need_ctx(ctx, entry.semkey), false);
    if (cls == "than-adj") return clausal_complement(need_ctx(ctx, entry.semkey), true);
    if (cls == "than-deg") return measure_complement(need_ctx(ctx, entry.semkey));
    if (cls == "than-pp") {
      Proto p = count_proto();
      return lam("Q", p.GQ, v("Q", p.GQ));
    }
    if (cls == "very") return intensifier(need_ctx(ctx, entry.semkey));
    if (cls == "degcmp")
      return degree_bound_adjunct(need_ctx(ctx, entry.semkey), key.lemma == "morethan");
    if (cls == "unit" || cls == "meas") {
      if (!sibling_cardinal)
        throw TypeMismatch("measure word without a cardinal sibling: " + entry.semkey);
      const UnitDef& def = kb.units().lookup(key.lemma);
      const T lit = Term::num(*sibling_cardinal, SemType::measure(def.dimension), key.lemma);
      if (cls == "unit") return lam("nc", SemType::count(), lit);
      // The measure literal is already baked in; the syntactic cardinal
      // argument is consumed and discarded.
      const AdjContext& c = need_ctx(ctx, entry.semkey);
      return lam("nc", SemType::count(),
                 c.form == "cmp" ? measure_adjunct_diff(c, lit) : measure_adjunct_base(c, lit));
    }
    if (cls == "num") return Term::num(Rational::parse(key.lemma), SemType::count());
    if (cls == "detnum") return cardinal_determiner(Rational::parse(key.lemma));
    if (cls == "det") return determiner(key.lemma);
    if (cls == "detcmp") return bound_determiner(key.lemma);
    if (cls == "nomcmp") return nominal_comparative(key.lemma, kb, false);
    if (cls == "nomcmpd") return nominal_comparative(key.lemma, kb, true);
    throw FormatError("no meaning template for entry: " + entry.semkey);
  }

  std::map<std::string, std::string> by_key_;
  std::map<std::string, std::string> by_cat_;
};

}  // namespace degnli
