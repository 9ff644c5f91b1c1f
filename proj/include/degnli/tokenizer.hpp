#pragma once

#include <cctype>
#include <string>
#include <vector>

namespace degnli {

// Whitespace tokenization with sentence punctuation stripped from token
// edges.  Case and internal hyphens are preserved; the lexicon handles case
// fallback itself.
inline std::vector<std::string> tokenize(const std::string& sentence) {
  std::vector<std::string> tokens;
  std::string cur;
  auto is_punct = [](char c) {
    return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':' || c == '"' ||
           c == '\'' || c == '(' || c == ')';
  };
  auto flush = [&] {
    std::size_t b = 0, e = cur.size();
    while (b < e && is_punct(cur[b])) ++b;
    while (e > b && is_punct(cur[e - 1])) --e;
    if (e > b) tokens.push_back(cur.substr(b, e - b));
    cur.clear();
  };
  for (char c : sentence) {
    if (std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      cur += c;
  }
  flush();
  return tokens;
}

}  // namespace degnli
