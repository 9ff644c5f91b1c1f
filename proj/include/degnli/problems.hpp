#pragma once

// Dataset types and ingestion: entailment problems arrive either as JSON
// lines (the native format) or as the public XML test-suite layout.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "degnli/error.hpp"

namespace degnli {

enum class Gold { Yes, No, Unknown, Unlabeled };

inline std::string gold_name(Gold g) {
  switch (g) {
    case Gold::Yes: return "yes";
    case Gold::No: return "no";
    case Gold::Unknown: return "unknown";
    case Gold::Unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

// Maps a label string onto a gold value; "undef" is the XML suite's spelling
// for problems its authors left unlabeled.
inline Gold gold_from(const std::string& s) {
  if (s == "yes") return Gold::Yes;
  if (s == "no") return Gold::No;
  if (s == "unknown") return Gold::Unknown;
  if (s == "undef" || s == "unlabeled" || s.empty()) return Gold::Unlabeled;
  throw FormatError("unrecognized gold label: " + s);
}

struct Problem {
  std::string id;
  std::vector<std::string> premises;
  std::string hypothesis;
  Gold gold = Gold::Unlabeled;
  std::vector<std::string> tags;
};

// ---------------------------------------------------------------------------
// JSON lines: one object per line with id, premises, hypothesis, gold, tags.
// Unknown fields are ignored; blank lines are skipped.
// ---------------------------------------------------------------------------

inline Problem problem_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw FormatError("not a JSON object");
  Problem p;
  if (!obj.contains("id") || !obj["id"].is_string()) throw FormatError("missing id");
  p.id = obj["id"].get<std::string>();
  if (!obj.contains("premises") || !obj["premises"].is_array() || obj["premises"].empty())
    throw FormatError("missing premises");
  for (const auto& s : obj["premises"]) {
    if (!s.is_string()) throw FormatError("premise is not a string");
    p.premises.push_back(s.get<std::string>());
  }
  if (!obj.contains("hypothesis") || !obj["hypothesis"].is_string() ||
      obj["hypothesis"].get<std::string>().empty())
    throw FormatError("missing hypothesis");
  p.hypothesis = obj["hypothesis"].get<std::string>();
  if (obj.contains("gold")) {
    if (!obj["gold"].is_string()) throw FormatError("gold is not a string");
    p.gold = gold_from(obj["gold"].get<std::string>());
  }
  if (obj.contains("tags")) {
    if (!obj["tags"].is_array()) throw FormatError("tags is not an array");
    for (const auto& t : obj["tags"]) {
      if (!t.is_string()) throw FormatError("tag is not a string");
      p.tags.push_back(t.get<std::string>());
    }
  }
  return p;
}

inline std::vector<Problem> ingest_jsonl_text(const std::string& text) {
  std::vector<Problem> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedLine(line_no, e.what());
    }
    try {
      out.push_back(problem_from_json(obj));
    } catch (const Error& e) {
      throw MalformedLine(line_no, e.what());
    }
  }
  return out;
}

inline std::vector<Problem> ingest_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ingest_jsonl_text(buf.str());
}

// ---------------------------------------------------------------------------
// XML test-suite layout: <problem> elements carrying an answer attribute and
// <p>/<h> children, optionally grouped under <section name="..."> wrappers
// whose names become problem tags.
// ---------------------------------------------------------------------------

namespace xmldetail {

struct XmlNode {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<XmlNode> kids;
  std::string text;  // concatenated character data

  std::string attr(const std::string& name) const {
    for (const auto& [k, v] : attrs)
      if (k == name) return v;
    return "";
  }
};

inline std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] != '&') {
      out += s[i++];
      continue;
    }
    std::size_t semi = s.find(';', i);
    if (semi == std::string::npos) throw MalformedXML("unterminated entity");
    std::string ent = s.substr(i + 1, semi - i - 1);
    if (ent == "amp") out += '&';
    else if (ent == "lt") out += '<';
    else if (ent == "gt") out += '>';
    else if (ent == "quot") out += '"';
    else if (ent == "apos") out += '\'';
    else throw MalformedXML("unknown entity: &" + ent + ";");
    i = semi + 1;
  }
  return out;
}

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out;
  bool in_space = false;
  for (std::size_t i = b; i < e; ++i) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += ' ';
    in_space = false;
    out += s[i];
  }
  return out;
}

// A minimal well-formedness parser: elements, attributes, character data,
// comments, processing instructions, and a document type line.  Enough for
// the public suite layout; anything structurally broken raises MalformedXML.
struct XmlParser {
  const std::string& src;
  std::size_t pos = 0;

  explicit XmlParser(const std::string& s) : src(s) {}

  bool starts_with(const char* s) const {
    return src.compare(pos, std::string::traits_type::length(s), s) == 0;
  }

  void skip_misc() {
    while (pos < src.size()) {
      if (std::isspace(static_cast<unsigned char>(src[pos]))) {
        ++pos;
      } else if (starts_with("<!--")) {
        std::size_t end = src.find("-->", pos + 4);
        if (end == std::string::npos) throw MalformedXML("unterminated comment");
        pos = end + 3;
      } else if (starts_with("<?") || starts_with("<!")) {
        std::size_t end = src.find('>', pos);
        if (end == std::string::npos) throw MalformedXML("unterminated declaration");
        pos = end + 1;
      } else {
        return;
      }
    }
  }

  std::string name() {
    std::size_t b = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
            src[pos] == '-' || src[pos] == ':' || src[pos] == '.'))
      ++pos;
    if (pos == b) throw MalformedXML("expected a name at offset " + std::to_string(pos));
    return src.substr(b, pos - b);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  XmlNode element() {
    if (pos >= src.size() || src[pos] != '<') throw MalformedXML("expected an element");
    ++pos;
    XmlNode node;
    node.tag = name();
    for (;;) {
      skip_ws();
      if (pos >= src.size()) throw MalformedXML("unterminated tag: " + node.tag);
      if (src[pos] == '/') {
        if (!starts_with("/>")) throw MalformedXML("stray / in tag: " + node.tag);
        pos += 2;
        return node;  // self-closing
      }
      if (src[pos] == '>') {
        ++pos;
        break;
      }
      std::string key = name();
      skip_ws();
      if (pos >= src.size() || src[pos] != '=') throw MalformedXML("attribute without value");
      ++pos;
      skip_ws();
      if (pos >= src.size() || (src[pos] != '"' && src[pos] != '\''))
        throw MalformedXML("unquoted attribute value");
      char quote = src[pos++];
      std::size_t end = src.find(quote, pos);
      if (end == std::string::npos) throw MalformedXML("unterminated attribute value");
      node.attrs.emplace_back(key, unescape(src.substr(pos, end - pos)));
      pos = end + 1;
    }
    // Content: character data, children, comments, until the closing tag.
    for (;;) {
      if (pos >= src.size()) throw MalformedXML("unterminated element: " + node.tag);
      if (starts_with("<!--")) {
        std::size_t end = src.find("-->", pos + 4);
        if (end == std::string::npos) throw MalformedXML("unterminated comment");
        pos = end + 3;
      } else if (starts_with("</")) {
        pos += 2;
        std::string close = name();
        if (close != node.tag)
          throw MalformedXML("mismatched closing tag: <" + node.tag + "> vs </" + close + ">");
        skip_ws();
        if (pos >= src.size() || src[pos] != '>') throw MalformedXML("unterminated closing tag");
        ++pos;
        return node;
      } else if (src[pos] == '<') {
        node.kids.push_back(element());
      } else {
        std::size_t next = src.find('<', pos);
        if (next == std::string::npos) throw MalformedXML("unterminated element: " + node.tag);
        node.text += unescape(src.substr(pos, next - pos));
        pos = next;
      }
    }
  }

  XmlNode document() {
    skip_misc();
    XmlNode root = element();
    skip_misc();
    if (pos != src.size()) throw MalformedXML("trailing content after document element");
    return root;
  }
};

inline void collect_problems(const XmlNode& node, std::vector<Problem>& out,
                             std::vector<std::string> tags) {
  if (node.tag == "section" || node.tag == "group") {
    std::string name = node.attr("name");
    if (name.empty()) name = node.attr("id");
    if (!name.empty()) tags.push_back(name);
    for (const XmlNode& kid : node.kids) collect_problems(kid, out, tags);
    return;
  }
  if (node.tag != "problem") {
    for (const XmlNode& kid : node.kids) collect_problems(kid, out, tags);
    return;
  }
  Problem p;
  p.id = node.attr("id");
  std::string answer = node.attr("answer");
  if (answer.empty()) answer = node.attr("fracas_answer");
  try {
    p.gold = answer.empty() ? Gold::Unlabeled : gold_from(answer);
  } catch (const Error& e) {
    throw MalformedXML(std::string("problem ") + p.id + ": " + e.what());
  }
  p.tags = tags;
  for (const XmlNode& kid : node.kids) {
    if (kid.tag == "p")
      p.premises.push_back(trim(kid.text));
    else if (kid.tag == "h")
      p.hypothesis = trim(kid.text);
  }
  if (p.premises.empty()) throw MalformedXML("problem " + p.id + " has no premises");
  if (p.hypothesis.empty()) throw MalformedXML("problem " + p.id + " has no hypothesis");
  out.push_back(std::move(p));
}

}  // namespace xmldetail

inline std::vector<Problem> ingest_fracas_text(const std::string& text) {
  xmldetail::XmlParser parser(text);
  xmldetail::XmlNode root = parser.document();
  std::vector<Problem> out;
  xmldetail::collect_problems(root, out, {});
  return out;
}

inline std::vector<Problem> ingest_fracas(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ingest_fracas_text(buf.str());
}

}  // namespace degnli
