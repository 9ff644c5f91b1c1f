#pragma once

#include <memory>
#include <optional>
#include <string>

#include "degnli/error.hpp"

namespace degnli {

class Category;
using CatPtr = std::shared_ptr<const Category>;

// CCG syntactic category: an atom (S, NP, N, PP; S and N may carry one
// feature) or a slashed functor.  Written `S[dcl]\NP`, `(S[adj]\NP)/(S[adj]\NP)`;
// slashes associate left, so `S\NP/PP` is `(S\NP)/PP`.
class Category {
 public:
  enum Kind { Atom, Slash };

  Kind kind() const { return kind_; }
  const std::string& base() const { return base_; }        // Atom
  const std::string& feature() const { return feature_; }  // Atom; "" when bare
  const CatPtr& result() const { return result_; }         // Slash
  const CatPtr& argument() const { return argument_; }     // Slash
  bool forward() const { return forward_; }                // Slash

  static CatPtr atom(const std::string& base, const std::string& feature = "") {
    if (base != "S" && base != "NP" && base != "N" && base != "PP")
      throw ParseFailure("unknown category base: " + base);
    if (!feature.empty() && base != "S" && base != "N")
      throw ParseFailure("features are only licensed on S and N: " + base + "[" + feature +
                         "]");
    auto c = std::make_shared<Category>();
    c->kind_ = Atom;
    c->base_ = base;
    c->feature_ = feature;
    return c;
  }

  static CatPtr slash(CatPtr result, bool forward, CatPtr argument) {
    auto c = std::make_shared<Category>();
    c->kind_ = Slash;
    c->result_ = std::move(result);
    c->forward_ = forward;
    c->argument_ = std::move(argument);
    return c;
  }

  std::string str() const {
    if (kind_ == Atom) return feature_.empty() ? base_ : base_ + "[" + feature_ + "]";
    auto part = [](const CatPtr& c) {
      return c->kind() == Atom ? c->str() : "(" + c->str() + ")";
    };
    return part(result_) + (forward_ ? "/" : "\\") + part(argument_);
  }

  Category() = default;

 private:
  Kind kind_ = Atom;
  std::string base_, feature_;
  CatPtr result_, argument_;
  bool forward_ = true;
};

inline bool cat_eq(const CatPtr& a, const CatPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind() != b->kind()) return false;
  if (a->kind() == Category::Atom)
    return a->base() == b->base() && a->feature() == b->feature();
  return a->forward() == b->forward() && cat_eq(a->result(), b->result()) &&
         cat_eq(a->argument(), b->argument());
}

// Feature unification: a bare atom unifies with any featured atom of the same
// base; the merged category keeps the more specific feature.
inline std::optional<CatPtr> unify(const CatPtr& a, const CatPtr& b) {
  if (a->kind() != b->kind()) return std::nullopt;
  if (a->kind() == Category::Atom) {
    if (a->base() != b->base()) return std::nullopt;
    if (a->feature() == b->feature()) return a;
    if (a->feature().empty()) return b;
    if (b->feature().empty()) return a;
    return std::nullopt;
  }
  if (a->forward() != b->forward()) return std::nullopt;
  auto r = unify(a->result(), b->result());
  auto g = unify(a->argument(), b->argument());
  if (!r || !g) return std::nullopt;
  return Category::slash(*r, a->forward(), *g);
}

// --------------------------------------------------------------------------
// Category text syntax
// --------------------------------------------------------------------------

namespace detail {

inline CatPtr parse_cat_part(const std::string& s, std::size_t& i);

inline CatPtr parse_cat_expr(const std::string& s, std::size_t& i) {
  CatPtr left = parse_cat_part(s, i);
  while (i < s.size() && (s[i] == '/' || s[i] == '\\')) {
    bool fwd = s[i] == '/';
    ++i;
    CatPtr right = parse_cat_part(s, i);
    left = Category::slash(left, fwd, right);
  }
  return left;
}

inline CatPtr parse_cat_part(const std::string& s, std::size_t& i) {
  if (i >= s.size()) throw ParseFailure("unexpected end of category: " + s);
  if (s[i] == '(') {
    ++i;
    CatPtr c = parse_cat_expr(s, i);
    if (i >= s.size() || s[i] != ')') throw ParseFailure("missing ')' in category: " + s);
    ++i;
    return c;
  }
  std::size_t start = i;
  while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])))) ++i;
  std::string base = s.substr(start, i - start);
  std::string feature;
  if (i < s.size() && s[i] == '[') {
    ++i;
    std::size_t fstart = i;
    while (i < s.size() && s[i] != ']') ++i;
    if (i >= s.size()) throw ParseFailure("missing ']' in category: " + s);
    feature = s.substr(fstart, i - fstart);
    ++i;
  }
  return Category::atom(base, feature);
}

}  // namespace detail

inline CatPtr parse_category(const std::string& text) {
  std::size_t i = 0;
  CatPtr c = detail::parse_cat_expr(text, i);
  if (i != text.size())
    throw ParseFailure("trailing characters in category: " + text.substr(i));
  return c;
}

}  // namespace degnli
