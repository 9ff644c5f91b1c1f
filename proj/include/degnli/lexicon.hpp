#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "degnli/derivation.hpp"
#include "degnli/error.hpp"

namespace degnli {

inline std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Cardinal numerals: digit strings, number words up to one hundred, and
// hyphenated compounds ("twenty-one").  Returns the value, or nullopt.
inline std::optional<long long> parse_numeral(const std::string& token) {
  const std::string t = lower(token);
  if (t.empty()) return std::nullopt;
  if (std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
    if (t.size() > 9) return std::nullopt;
    return std::stoll(t);
  }
  static const std::map<std::string, long long> words = {
      {"one", 1},       {"two", 2},       {"three", 3},    {"four", 4},
      {"five", 5},      {"six", 6},       {"seven", 7},    {"eight", 8},
      {"nine", 9},      {"ten", 10},      {"eleven", 11},  {"twelve", 12},
      {"thirteen", 13}, {"fourteen", 14}, {"fifteen", 15}, {"sixteen", 16},
      {"seventeen", 17},{"eighteen", 18}, {"nineteen", 19},{"twenty", 20},
      {"thirty", 30},   {"forty", 40},    {"fifty", 50},   {"sixty", 60},
      {"seventy", 70},  {"eighty", 80},   {"ninety", 90},  {"hundred", 100},
  };
  if (auto it = words.find(t); it != words.end()) return it->second;
  auto dash = t.find('-');
  if (dash != std::string::npos && dash > 0 && dash + 1 < t.size() &&
      t.find('-', dash + 1) == std::string::npos) {
    const std::string a = t.substr(0, dash), b = t.substr(dash + 1);
    auto ia = words.find(a), ib = words.find(b);
    if (ia == words.end() || ib == words.end()) return std::nullopt;
    if (a == "one" && b == "hundred") return 100;
    if (ia->second >= 20 && ia->second <= 90 && ia->second % 10 == 0 && ib->second >= 1 &&
        ib->second <= 9)
      return ia->second + ib->second;
  }
  return std::nullopt;
}

// Semantic keys are ':'-separated: a class, usually a lemma, and for
// gradable adjectives a form field (`adj:tall:cmp`).
struct SemKey {
  std::string cls, lemma, form;
};

inline SemKey parse_semkey(const std::string& key) {
  SemKey out;
  auto c1 = key.find(':');
  if (c1 == std::string::npos) {
    out.cls = key;
    return out;
  }
  out.cls = key.substr(0, c1);
  auto c2 = key.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    out.lemma = key.substr(c1 + 1);
  } else {
    out.lemma = key.substr(c1 + 1, c2 - c1 - 1);
    out.form = key.substr(c2 + 1);
  }
  return out;
}

// The lexicon: rows of `surface<TAB>category<TAB>semantic-key`.  Multi-token
// surfaces double as merge spans: before parsing, adjacent tokens matching a
// declared surface are joined into one hyphenated token, and lookup here is
// keyed by that joined form.  Tokens that read as cardinal numerals get two
// synthesized entries, a degree nominal N[num] and a counting determiner NP/N.
class Lexicon {
 public:
  void add(LexEntry entry) {
    if (!entry.cat) throw LexiconError("entry without category: " + entry.surface_str());
    if (entry.surface.empty()) throw LexiconError("entry without surface form");
    const std::string key = join_key(entry.surface);
    for (std::size_t i : index_[key]) {
      const LexEntry& e = all_[i];
      if (cat_eq(e.cat, entry.cat) && e.semkey == entry.semkey) return;
    }
    index_[key].push_back(all_.size());
    all_.push_back(std::move(entry));
  }

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
        throw LexiconError("lexicon line " + std::to_string(lineno) +
                           ": expected 3 tab-separated columns");
      LexEntry e;
      std::istringstream words(cols[0]);
      std::string w;
      while (words >> w) e.surface.push_back(w);
      if (e.surface.empty())
        throw LexiconError("lexicon line " + std::to_string(lineno) + ": empty surface");
      e.cat = parse_category(cols[1]);
      e.semkey = cols[2];
      e.empty = is_empty_class(e.semkey);
      add(std::move(e));
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    load_string(buf.str());
  }

  // All entries whose joined surface equals `token` (exact case first, then
  // lowercase), plus synthesized numeral entries when the token is a cardinal.
  std::vector<LexEntry> entries(const std::string& token) const {
    std::vector<LexEntry> out = lookup_exact(token);
    if (out.empty() && token != lower(token)) out = lookup_exact(lower(token));
    if (auto n = parse_numeral(token)) {
      for (LexEntry e : numeral_entries(*n)) {
        bool dup = false;
        for (const LexEntry& have : out)
          if (cat_eq(have.cat, e.cat) && have.semkey == e.semkey) dup = true;
        if (!dup) {
          e.surface = {token};
          out.push_back(std::move(e));
        }
      }
    }
    return out;
  }

  // The unique entry with the given semantic key (used to build inserted
  // empty elements).  Throws when missing.
  LexEntry entry_by_semkey(const std::string& semkey) const {
    for (const LexEntry& e : all_)
      if (e.semkey == semkey) return e;
    throw LexiconError("no lexical entry with key: " + semkey);
  }

  // Declared multi-token surfaces, as (token sequence, joined form) pairs,
  // longest first so greedy merging prefers the longest match.
  std::vector<std::pair<std::vector<std::string>, std::string>> merge_spans() const {
    std::vector<std::pair<std::vector<std::string>, std::string>> spans;
    for (const auto& [key, ids] : index_) {
      const LexEntry& e = all_[ids.front()];
      if (e.surface.size() > 1) spans.emplace_back(e.surface, key);
    }
    std::stable_sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
      if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
      return a.second < b.second;
    });
    return spans;
  }

  const std::vector<LexEntry>& all() const { return all_; }

  static bool is_empty_class(const std::string& semkey) {
    return semkey == "dgr" || semkey == "eqt" || semkey == "pos";
  }

  static std::string join_key(const std::vector<std::string>& surface) {
    std::string key;
    for (std::size_t i = 0; i < surface.size(); ++i) {
      if (i) key += '-';
      key += surface[i];
    }
    return key;
  }

  static std::vector<LexEntry> numeral_entries(long long n) {
    const std::string v = std::to_string(n);
    LexEntry deg;
    deg.cat = parse_category("N[num]");
    deg.semkey = "num:" + v;
    LexEntry det;
    det.cat = parse_category("NP/N");
    det.semkey = "detnum:" + v;
    return {deg, det};
  }

 private:
  std::vector<LexEntry> lookup_exact(const std::string& token) const {
    std::vector<LexEntry> out;
    if (auto it = index_.find(token); it != index_.end())
      for (std::size_t i : it->second) out.push_back(all_[i]);
    return out;
  }

  std::vector<LexEntry> all_;
  std::map<std::string, std::vector<std::size_t>> index_;  // joined surface -> rows
};

}  // namespace degnli
