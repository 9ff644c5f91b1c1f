#pragma once

#include <memory>
#include <string>

#include "degnli/error.hpp"

namespace degnli {

class SemType;
using TypePtr = std::shared_ptr<const SemType>;

// Simple semantic types: Entity, Prop, Degree (Count or Measure over a named
// dimension), and function types. Immutable; shared freely.
class SemType {
 public:
  enum Kind { Entity, Prop, Degree, Fun };

  Kind kind() const { return kind_; }

  // Degree only.
  bool is_count() const { return kind_ == Degree && count_; }
  bool is_measure() const { return kind_ == Degree && !count_; }
  const std::string& dimension() const { return dimension_; }

  // Fun only.
  const TypePtr& arg() const { return arg_; }
  const TypePtr& res() const { return res_; }

  static TypePtr entity() {
    static TypePtr t = std::shared_ptr<SemType>(new SemType(Entity));
    return t;
  }
  static TypePtr prop() {
    static TypePtr t = std::shared_ptr<SemType>(new SemType(Prop));
    return t;
  }
  static TypePtr count() {
    static TypePtr t = make_degree(true, "count");
    return t;
  }
  static TypePtr measure(const std::string& dimension) {
    return make_degree(false, dimension);
  }
  static TypePtr fun(TypePtr a, TypePtr r) {
    auto t = std::shared_ptr<SemType>(new SemType(Fun));
    t->arg_ = std::move(a);
    t->res_ = std::move(r);
    return t;
  }

  std::string str() const {
    switch (kind_) {
      case Entity: return "ent";
      case Prop: return "prop";
      case Degree: return count_ ? "count" : "(meas " + dimension_ + ")";
      case Fun: return "(fun " + arg_->str() + " " + res_->str() + ")";
    }
    return "?";
  }

 private:
  explicit SemType(Kind k) : kind_(k) {}

  static TypePtr make_degree(bool count, const std::string& dim) {
    auto t = std::shared_ptr<SemType>(new SemType(Degree));
    t->count_ = count;
    t->dimension_ = dim;
    return t;
  }

  Kind kind_;
  bool count_ = false;
  std::string dimension_;
  TypePtr arg_, res_;
};

inline bool type_eq(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case SemType::Entity:
    case SemType::Prop:
      return true;
    case SemType::Degree:
      return a->is_count() == b->is_count() && a->dimension() == b->dimension();
    case SemType::Fun:
      return type_eq(a->arg(), b->arg()) && type_eq(a->res(), b->res());
  }
  return false;
}

// Curried function type over a list of argument types.
inline TypePtr fun_type(std::initializer_list<TypePtr> args, TypePtr res) {
  TypePtr t = std::move(res);
  const TypePtr* base = args.begin();
  for (std::size_t i = args.size(); i > 0; --i) t = SemType::fun(base[i - 1], t);
  return t;
}

}  // namespace degnli
