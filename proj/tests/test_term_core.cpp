#include <catch2/catch_amalgamated.hpp>

#include "degnli/format.hpp"
#include "degnli/rational.hpp"
#include "degnli/reduce.hpp"
#include "degnli/simplify.hpp"
#include "degnli/sorts.hpp"
#include "degnli/term.hpp"
#include "degnli/typecheck.hpp"
#include "degnli/units.hpp"
#include "support/gen.hpp"

using namespace degnli;

TEST_CASE("rational arithmetic is exact and normalized") {
  Rational a(1, 2), b(1, 3);
  CHECK((a + b) == Rational(5, 6));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 6));
  CHECK((a / b) == Rational(3, 2));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-1, -2) == Rational(1, 2));
  CHECK(Rational(1, -2) < Rational(0));
  CHECK(-a == Rational(-1, 2));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(4, 2).is_integer());
  CHECK_FALSE(Rational(1, 3).is_integer());
}

TEST_CASE("rational text form round-trips") {
  CHECK(Rational(3).str() == "3");
  CHECK(Rational(-3).str() == "-3");
  CHECK(Rational(1, 2).str() == "0.5");
  CHECK(Rational(-1, 2).str() == "-0.5");
  CHECK(Rational(9144, 5).str() == "1828.8");
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK(Rational::parse("1828.8") == Rational(9144, 5));
  CHECK(Rational::parse("9144/5") == Rational(9144, 5));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(Rational::parse("17") == Rational(17));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  for (int i = 0; i < 500; ++i) {
    Rational r(i * 7 - 1700, 1 + i % 9);
    CHECK(Rational::parse(r.str()) == r);
  }
}

TEST_CASE("rational division by zero and overflow are errors") {
  CHECK_THROWS_AS(Rational(1, 0), Error);
  Rational big(std::int64_t{1} << 62);
  CHECK_THROWS_AS(big * big, Overflow);
}

TEST_CASE("sorts compare structurally") {
  CHECK(type_eq(SemType::entity(), SemType::entity()));
  CHECK(type_eq(SemType::measure("length"), SemType::measure("length")));
  CHECK_FALSE(type_eq(SemType::measure("length"), SemType::measure("weight")));
  CHECK_FALSE(type_eq(SemType::count(), SemType::measure("length")));
  CHECK(SemType::count()->is_count());
  TypePtr gq = SemType::fun(SemType::fun(SemType::entity(), SemType::prop()),
                            SemType::fun(SemType::fun(SemType::entity(), SemType::prop()),
                                         SemType::prop()));
  CHECK(type_eq(gq, gq));
  CHECK(SemType::measure("length")->str() == "(meas length)");
  CHECK(fun_type({SemType::entity(), SemType::count()}, SemType::prop())->str() ==
        "(fun ent (fun count prop))");
}

TEST_CASE("comparison factories store a canonical orientation") {
  TypePtr len = SemType::measure("length");
  TermPtr d = Term::var("d", len);
  TermPtr lit = Term::num(Rational(5), len);
  CHECK(term_eq(Term::gt(d, lit), Term::lt(lit, d)));
  CHECK(term_eq(Term::ge(d, lit), Term::le(lit, d)));
  CHECK(Term::gt(d, lit)->rel() == CmpRel::Lt);
}

TEST_CASE("free variables and closedness") {
  TypePtr ent = SemType::entity();
  TermPtr x = Term::var("x", ent);
  TermPtr p = Term::constant("p", SemType::fun(ent, SemType::prop()));
  TermPtr open = Term::app(p, x);
  CHECK(free_vars(open) == std::set<std::string>{"x"});
  CHECK_FALSE(is_closed(open));
  CHECK(is_closed(Term::exists("x", ent, open)));
  CHECK(is_closed(Term::abs("x", ent, open)));
  TermPtr shadow = Term::conj(Term::exists("x", ent, open), open);
  CHECK(free_vars(shadow) == std::set<std::string>{"x"});
}

TEST_CASE("type_check accepts well-typed terms and rejects clashes") {
  TypePtr ent = SemType::entity();
  TypePtr len = SemType::measure("length");
  TypePtr tall_ty = fun_type({ent, len}, SemType::prop());
  TermPtr tall = Term::constant("tall", tall_ty);
  TermPtr john = Term::constant("john", ent);
  TermPtr d = Term::var("d", len);
  TermPtr atom = Term::app(Term::app(tall, john), d);
  TermPtr f = Term::exists("d", len, Term::conj(atom, Term::lt(Term::theta("tall", john, len), d)));
  CHECK(type_check(f)->kind() == SemType::Prop);

  SECTION("argument type mismatch") {
    CHECK_THROWS_AS(type_check(Term::app(tall, d)), TypeMismatch);
  }
  SECTION("sort clash between count and measure") {
    TermPtr n = Term::num(Rational(3), SemType::count());
    CHECK_THROWS_AS(type_check(Term::lt(n, d), {{"d", len}}), SortClash);
  }
  SECTION("one constant used at two types") {
    TermPtr bad = Term::conj(Term::app(Term::constant("p", SemType::fun(ent, SemType::prop())),
                                       john),
                             Term::app(Term::constant("p", SemType::fun(len, SemType::prop())),
                                       d));
    CHECK_THROWS_AS(type_check(bad, {{"d", len}}), TypeMismatch);
  }
  SECTION("non-integer count literal") {
    CHECK_THROWS_AS(type_check(Term::num(Rational(1, 2), SemType::count())), SortClash);
  }
  SECTION("entity equality is allowed, entity order is not") {
    CHECK(type_check(Term::eq(john, john))->kind() == SemType::Prop);
    CHECK_THROWS_AS(type_check(Term::lt(john, john)), TypeMismatch);
  }
}

TEST_CASE("substitution avoids capture") {
  TypePtr ent = SemType::entity();
  TypePtr prop = SemType::prop();
  TermPtr eq_xy = Term::eq(Term::var("x", ent), Term::var("y", ent));
  TermPtr lam_y = Term::abs("y", ent, eq_xy);
  TermPtr replaced = subst(lam_y, "x", Term::var("y", ent));
  // λy. x=y  with x := y must rename the binder, not capture.
  CHECK(replaced->kind() == TermKind::Abs);
  CHECK(replaced->name() != "y");
  CHECK(free_vars(replaced) == std::set<std::string>{"y"});
  CHECK(alpha_eq(subst(lam_y, "x", Term::constant("c", ent)),
                 Term::abs("z", ent, Term::eq(Term::constant("c", ent), Term::var("z", ent)))));
  // Shadowed occurrences stay put.
  TermPtr shadow = Term::abs("x", ent, Term::var("x", ent));
  CHECK(term_eq(subst(shadow, "x", Term::constant("c", ent)), shadow));
  (void)prop;
}

TEST_CASE("beta reduction computes normal forms") {
  TypePtr ent = SemType::entity();
  TermPtr k = Term::abs("x", ent, Term::abs("y", ent, Term::var("x", ent)));
  TermPtr a = Term::constant("a", ent);
  TermPtr b = Term::constant("b", ent);
  CHECK(term_eq(beta_reduce(Term::app(Term::app(k, a), b)), a));
  // Reduction under binders.
  TermPtr inner = Term::abs("z", ent, Term::app(Term::abs("w", ent, Term::var("w", ent)),
                                                Term::var("z", ent)));
  CHECK(alpha_eq(beta_reduce(inner), Term::abs("z", ent, Term::var("z", ent))));
}

TEST_CASE("alpha equivalence ignores bound names only") {
  TypePtr ent = SemType::entity();
  TermPtr idx = Term::abs("x", ent, Term::var("x", ent));
  TermPtr idy = Term::abs("y", ent, Term::var("y", ent));
  CHECK(alpha_eq(idx, idy));
  CHECK_FALSE(alpha_eq(idx, Term::abs("y", ent, Term::constant("x", ent))));
  TermPtr f1 = Term::exists("d", SemType::count(), Term::eq(Term::var("d", SemType::count()),
                                                            Term::num(Rational(3), SemType::count())));
  TermPtr f2 = Term::exists("e", SemType::count(), Term::eq(Term::var("e", SemType::count()),
                                                            Term::num(Rational(3), SemType::count())));
  CHECK(alpha_eq(f1, f2));
  CHECK_FALSE(alpha_eq(f1, Term::exists("e", SemType::measure("length"),
                                        Term::eq(Term::var("e", SemType::measure("length")),
                                                 Term::num(Rational(3), SemType::measure("length"))))));
}

TEST_CASE("property: beta reduction is idempotent and type-preserving") {
  testgen::Rng rng(20260816);
  int checked = 0;
  for (int i = 0; i < 260; ++i) {
    TypePtr target = i % 2 == 0 ? SemType::prop()
                                : SemType::fun(SemType::entity(), SemType::prop());
    TermPtr t = testgen::random_typed_term(rng, target, 4);
    TypePtr before = type_check(t);
    TermPtr nf = beta_reduce(t);
    CHECK(is_beta_normal(nf));
    CHECK(type_eq(type_check(nf), before));
    CHECK(alpha_eq(beta_reduce(nf), nf));
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("simplify applies the cleanup rewrites") {
  TypePtr ent = SemType::entity();
  TypePtr len = SemType::measure("length");
  TermPtr phi = Term::app(Term::constant("p", SemType::fun(ent, SemType::prop())),
                          Term::constant("a", ent));
  CHECK(term_eq(simplify(Term::conj(Term::top(), phi)), phi));
  CHECK(term_eq(simplify(Term::conj(phi, Term::top())), phi));
  CHECK(term_eq(simplify(Term::conj(phi, Term::bot())), Term::bot()));
  CHECK(term_eq(simplify(Term::disj(phi, Term::bot())), phi));
  CHECK(term_eq(simplify(Term::disj(phi, Term::top())), Term::top()));
  CHECK(term_eq(simplify(Term::negate(Term::negate(phi))), phi));
  CHECK(term_eq(simplify(Term::imp(Term::top(), phi)), phi));
  CHECK(term_eq(simplify(Term::imp(Term::bot(), phi)), Term::top()));
  CHECK(term_eq(simplify(Term::imp(phi, Term::top())), Term::top()));
  CHECK(term_eq(simplify(Term::negate(Term::conj(Term::top(), Term::negate(phi)))), phi));

  SECTION("ground comparisons and arithmetic fold") {
    TermPtr three = Term::num(Rational(3), len);
    TermPtr four = Term::num(Rational(4), len);
    CHECK(term_eq(simplify(Term::lt(three, four)), Term::top()));
    CHECK(term_eq(simplify(Term::lt(four, three)), Term::bot()));
    CHECK(term_eq(simplify(Term::le(three, three)), Term::top()));
    CHECK(term_eq(simplify(Term::conj(phi, Term::eq(three, four))), Term::bot()));
    TermPtr d = Term::var("d", len);
    CHECK(term_eq(simplify(Term::lt(Term::diff(four, three), d)),
                  Term::lt(Term::num(Rational(1), len), d)));
    CHECK(term_eq(simplify(Term::sum(d, Term::num(Rational(0), len))), d));
  }

  SECTION("unused quantifiers drop") {
    CHECK(term_eq(simplify(Term::exists("x", ent, phi)), phi));
    CHECK(term_eq(simplify(Term::forall("x", ent, phi)), phi));
  }

  SECTION("one-point elimination") {
    TermPtr c = Term::constant("c", ent);
    TermPtr px = Term::app(Term::constant("p", SemType::fun(ent, SemType::prop())),
                           Term::var("x", ent));
    TermPtr pc = Term::app(Term::constant("p", SemType::fun(ent, SemType::prop())), c);
    // ∃x (x=c ∧ p(x)) → p(c)
    CHECK(term_eq(simplify(Term::exists("x", ent,
                                        Term::conj(Term::eq(Term::var("x", ent), c), px))),
                  pc));
    // ∃x (p(x) ∧ c=x) → p(c)
    CHECK(term_eq(simplify(Term::exists("x", ent,
                                        Term::conj(px, Term::eq(c, Term::var("x", ent))))),
                  pc));
    // ∀x (x=c → p(x)) → p(c)
    CHECK(term_eq(simplify(Term::forall("x", ent,
                                        Term::imp(Term::eq(Term::var("x", ent), c), px))),
                  pc));
    // ∃x (x=x ∧ p(x)) keeps the quantifier but drops the trivial equation.
    TermPtr kept = simplify(Term::exists("x", ent,
                                         Term::conj(Term::eq(Term::var("x", ent),
                                                             Term::var("x", ent)),
                                                    px)));
    CHECK(term_eq(kept, Term::exists("x", ent, px)));
  }

  SECTION("simplify is idempotent on random formulas") {
    testgen::Rng rng(7);
    for (int i = 0; i < 220; ++i) {
      TermPtr f = testgen::random_formula(rng, 4);
      TermPtr s = simplify(f);
      CHECK(term_eq(simplify(s), s));
      CHECK(type_check(s, {})->kind() == SemType::Prop);
    }
  }
}

TEST_CASE("unit normalization rescales into base units") {
  TypePtr len = SemType::measure("length");
  TermPtr six_feet = Term::num(Rational(6), len, "foot");
  TermPtr norm = normalize_units(six_feet);
  CHECK(norm->unit().empty());
  CHECK(norm->value() == Rational(9144, 5));
  CHECK(normalize_units(Term::num(Rational(2), len, "inches"))->value() == Rational(254, 5));
  CHECK(normalize_units(Term::num(Rational(170), len, "cm"))->value() == Rational(1700));
  CHECK(normalize_units(Term::num(Rational(4), len, "feet"))->value() == Rational(6096, 5));
  CHECK_FALSE(units_normalized(six_feet));
  CHECK(units_normalized(norm));
  CHECK_THROWS_AS(normalize_units(Term::num(Rational(1), len, "parsec")), UnknownUnit);
  CHECK_THROWS_AS(normalize_units(Term::num(Rational(1), SemType::measure("weight"), "foot")),
                  SortClash);
  // Unit-tagged literals embedded in formulas normalize in place.
  TermPtr d = Term::var("d", len);
  TermPtr f = Term::exists("d", len, Term::lt(six_feet, d));
  TermPtr nf = normalize_units(f);
  CHECK(term_eq(nf, Term::exists("d", len, Term::lt(Term::num(Rational(9144, 5), len), d))));
}

TEST_CASE("canonical text form prints and reads back") {
  TypePtr ent = SemType::entity();
  TypePtr len = SemType::measure("length");
  auto sig = testgen::formula_signature();

  SECTION("hand-written examples") {
    TermPtr tall = Term::constant("tall", sig["tall"]);
    TermPtr john = Term::constant("john", ent);
    TermPtr d = Term::var("d", len);
    TermPtr f = Term::exists(
        "d", len,
        Term::conj(Term::app(Term::app(tall, john), d),
                   Term::lt(Term::theta("tall", Term::constant("U", ent), len), d)));
    std::string text = format_term(f);
    CHECK(text ==
          "(exists ((d (meas length))) (and (tall john d) (lt (theta tall U) d)))");
    TermPtr back = read_formula(text, sig);
    CHECK(alpha_eq(back, f));
  }

  SECTION("and-chains read right-associatively") {
    TermPtr f = read_formula("(and (p a) (q b) (p b))", sig);
    TermPtr expect = read_formula("(and (p a) (and (q b) (p b)))", sig);
    CHECK(alpha_eq(f, expect));
  }

  SECTION("qty literals carry units until normalization") {
    TermPtr f = read_formula("(exists ((d (meas length))) (le d (qty 6 foot)))", sig);
    TermPtr lit = f->kid(0)->kid(1);
    CHECK(lit->kind() == TermKind::NumLit);
    CHECK(lit->unit() == "foot");
    CHECK(format_term(f) == "(exists ((d (meas length))) (le d (qty 6 foot)))");
    CHECK(format_term(normalize_units(f)) ==
          "(exists ((d (meas length))) (le d 1828.8))");
  }

  SECTION("property: print/read round trip on random formulas") {
    testgen::Rng rng(99);
    for (int i = 0; i < 240; ++i) {
      TermPtr f = testgen::random_formula(rng, 4);
      std::string text = format_term(f);
      TermPtr back = read_term(text, testgen::formula_signature());
      INFO(text);
      CHECK(alpha_eq(back, f));
    }
  }

  SECTION("malformed input raises FormatError") {
    CHECK_THROWS_AS(read_term("(and (p a)", sig), FormatError);
    CHECK_THROWS_AS(read_term("(p a))", sig), FormatError);
    CHECK_THROWS_AS(read_term("(exists (x wibble) (p x))", sig), FormatError);
    CHECK_THROWS_AS(read_term("(lt 1)", sig), FormatError);
  }
}
