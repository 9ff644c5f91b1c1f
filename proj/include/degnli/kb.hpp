#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "degnli/error.hpp"
#include "degnli/sorts.hpp"
#include "degnli/units.hpp"

namespace degnli {

// Background knowledge about gradable predicates, in three sections:
//
//   [antonyms]     positive-pole<TAB>negative-pole   (tall  short)
//   [dimensions]   predicate<TAB>dimension           (tall  length)
//   [units]        unit<TAB>dimension<TAB>factor     (foot  length  1524/5)
//
// The negative pole of a pair is interpreted through its positive partner
// (short(x,d) <-> not tall(x,d)), so polarity and partner lookups both live
// here.  Units extend the measure table used for literal normalization.
class KB {
 public:
  void add_antonym_pair(const std::string& pos, const std::string& neg) {
    if (positive_of_.count(pos) || positive_of_.count(neg) || negative_of_.count(pos) ||
        negative_of_.count(neg))
      throw FormatError("predicate appears in two antonym pairs: " + pos + "/" + neg);
    negative_of_[pos] = neg;
    positive_of_[neg] = pos;
  }

  void add_dimension(const std::string& pred, const std::string& dim) {
    dimension_[pred] = dim;
  }

  bool is_gradable(const std::string& pred) const { return dimension_.count(pred) > 0; }
  bool is_negative(const std::string& pred) const { return positive_of_.count(pred) > 0; }

  // The positive pole of a predicate's scale: itself when positive.
  std::string positive_pole(const std::string& pred) const {
    auto it = positive_of_.find(pred);
    return it == positive_of_.end() ? pred : it->second;
  }

  std::optional<std::string> negative_partner(const std::string& pred) const {
    auto it = negative_of_.find(pred);
    if (it == negative_of_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& dimension(const std::string& pred) const {
    auto it = dimension_.find(pred);
    if (it == dimension_.end()) throw FormatError("no dimension recorded for: " + pred);
    return it->second;
  }

  // Degree sort of a gradable predicate's scale.
  TypePtr degree_sort(const std::string& pred) const {
    const std::string& dim = dimension(pred);
    return dim == "count" ? SemType::count() : SemType::measure(dim);
  }

  const std::map<std::string, std::string>& antonym_pairs() const { return negative_of_; }
  const UnitTable& units() const { return units_; }
  UnitTable& units() { return units_; }

  void load_string(const std::string& text) {
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      if (line.front() == '[' && line.back() == ']') {
        section = line.substr(1, line.size() - 2);
        if (section != "antonyms" && section != "dimensions" && section != "units")
          throw FormatError("unknown section [" + section + "]");
        continue;
      }
      std::vector<std::string> cols;
      std::size_t start = 0;
      while (true) {
        auto tab = line.find('\t', start);
        cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
      }
      if (section == "antonyms") {
        if (cols.size() != 2)
          throw FormatError("line " + std::to_string(lineno) + ": antonym rows have 2 columns");
        add_antonym_pair(cols[0], cols[1]);
      } else if (section == "dimensions") {
        if (cols.size() != 2)
          throw FormatError("line " + std::to_string(lineno) +
                            ": dimension rows have 2 columns");
        add_dimension(cols[0], cols[1]);
      } else if (section == "units") {
        if (cols.size() != 3)
          throw FormatError("line " + std::to_string(lineno) + ": unit rows have 3 columns");
        units_.add(cols[0], cols[1], Rational::parse(cols[2]));
      } else {
        throw FormatError("line " + std::to_string(lineno) + ": row outside any section");
      }
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open knowledge file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    load_string(buf.str());
  }

  static KB defaults() {
    KB kb;
    kb.units_ = UnitTable::defaults();
    kb.add_antonym_pair("tall", "short");
    kb.add_antonym_pair("large", "small");
    kb.add_antonym_pair("old", "young");
    kb.add_antonym_pair("heavy", "light");
    kb.add_antonym_pair("fast", "slow");
    kb.add_antonym_pair("high", "low");
    kb.add_antonym_pair("many", "few");
    for (const char* p : {"tall", "short", "high", "low", "long"}) kb.add_dimension(p, "length");
    kb.add_dimension("large", "size");
    kb.add_dimension("small", "size");
    kb.add_dimension("old", "age");
    kb.add_dimension("young", "age");
    kb.add_dimension("heavy", "weight");
    kb.add_dimension("light", "weight");
    kb.add_dimension("fast", "speed");
    kb.add_dimension("slow", "speed");
    kb.add_dimension("many", "count");
    kb.add_dimension("few", "count");
    return kb;
  }

 private:
  std::map<std::string, std::string> negative_of_;  // positive -> negative
  std::map<std::string, std::string> positive_of_;  // negative -> positive
  std::map<std::string, std::string> dimension_;
  UnitTable units_;
};

}  // namespace degnli
