#pragma once

#include <map>
#include <string>
#include <vector>

#include "degnli/error.hpp"
#include "degnli/rational.hpp"
#include "degnli/sorts.hpp"
#include "degnli/term.hpp"

namespace degnli {

// Measurement units.  Every dimension has a fixed base unit (length: mm,
// weight: g, age: years); a literal like "6 feet" is stored as
// NumLit(6, unit="foot") until normalize_units rescales it into the base.
struct UnitDef {
  std::string dimension;
  Rational factor;  // multiplier into the dimension's base unit
};

class UnitTable {
 public:
  void add(const std::string& name, const std::string& dimension, Rational factor) {
    units_[name] = UnitDef{dimension, factor};
  }

  const UnitDef& lookup(const std::string& name) const {
    auto it = units_.find(name);
    if (it == units_.end()) throw UnknownUnit("unknown unit: " + name);
    return it->second;
  }

  bool has(const std::string& name) const { return units_.count(name) > 0; }

  static UnitTable defaults() {
    UnitTable t;
    auto alias = [&t](std::initializer_list<const char*> names, const char* dim,
                      Rational factor) {
      for (const char* n : names) t.add(n, dim, factor);
    };
    alias({"mm", "millimeter", "millimeters"}, "length", Rational(1));
    alias({"cm", "centimeter", "centimeters"}, "length", Rational(10));
    alias({"m", "meter", "meters"}, "length", Rational(1000));
    alias({"inch", "inches", "in"}, "length", Rational(127, 5));
    alias({"foot", "feet", "ft"}, "length", Rational(1524, 5));
    alias({"g", "gram", "grams"}, "weight", Rational(1));
    alias({"kg", "kilogram", "kilograms"}, "weight", Rational(1000));
    alias({"year", "years"}, "age", Rational(1));
    return t;
  }

 private:
  std::map<std::string, UnitDef> units_;
};

// Rescales every unit-tagged literal into its dimension's base unit,
// leaving a unit-free exact rational.  Count literals are never tagged.
inline TermPtr normalize_units(const TermPtr& t, const UnitTable& table = UnitTable::defaults()) {
  if (t->kind() == TermKind::NumLit) {
    if (t->unit().empty()) return t;
    const UnitDef& def = table.lookup(t->unit());
    if (!t->type() || !t->type()->is_measure() || t->type()->dimension() != def.dimension)
      throw SortClash("unit " + t->unit() + " of dimension " + def.dimension +
                      " on a literal typed " + (t->type() ? t->type()->str() : "<none>"));
    return Term::num(t->value() * def.factor, t->type());
  }
  std::vector<TermPtr> kids;
  kids.reserve(t->kids().size());
  for (const TermPtr& k : t->kids()) kids.push_back(normalize_units(k, table));
  bool same = true;
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (kids[i] != t->kid(i)) { same = false; break; }
  if (same) return t;
  return Term::make(t->kind(), t->name(), t->type(), std::move(kids), t->value(), t->unit(),
                    t->rel());
}

// True when no literal still carries a surface unit (prover precondition).
inline bool units_normalized(const TermPtr& t) {
  if (t->kind() == TermKind::NumLit && !t->unit().empty()) return false;
  for (const TermPtr& k : t->kids())
    if (!units_normalized(k)) return false;
  return true;
}

}  // namespace degnli
