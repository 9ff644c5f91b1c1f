#pragma once

#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "degnli/axioms.hpp"
#include "degnli/error.hpp"
#include "degnli/kb.hpp"
#include "degnli/prover.hpp"
#include "degnli/reduce.hpp"
#include "degnli/term.hpp"

namespace degnli {

// ---------------------------------------------------------------------------
// Typed first-order (TFF) bridge to external TPTP provers.
//
// A proof task (axioms + premises + goal) is printed as one self-contained
// TFF problem: the entity sort is declared as a fresh type, counting degrees
// map to $int, measured degrees to $rat, and comparisons/offsets use the
// standard arithmetic symbols ($less, $lesseq, $sum, $difference).  Axioms
// and premises carry the axiom role, the goal is the conjecture, and an
// external prover reporting "SZS status Theorem" has proved the entailment.
//
// The printer is deterministic: declarations are sorted, statement names are
// derived from symbol/axiom names, fractions are reduced with positive
// denominators, and the same task always yields byte-identical text.
//
// read_tff parses the subset this printer emits (plus hand-written files of
// the same shape).  TFF collapses every measurement dimension into $rat, so
// the reader reconstructs dimensions from context: gradable predicates and
// thresholds anchor their scale via the knowledge base, comparisons and
// arithmetic propagate it, and a degree position nothing anchors defaults to
// the length dimension.  Numeral display units are not round-tripped.
// ---------------------------------------------------------------------------

struct ProofTask {
  std::vector<Axiom> axioms;
  std::vector<TermPtr> premises;
  TermPtr goal;  // Top stands for "no conjecture"
};

namespace tffdetail {

inline bool is_lower_word(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Function/constant symbol as a TPTP token: plain when it is a lower word,
// single-quoted (with escapes) otherwise.
inline std::string atom_token(const std::string& s) {
  if (is_lower_word(s)) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\\' || c == '\'') out += '\\';
    out += c;
  }
  out += "'";
  return out;
}

inline std::string sort_token(const TypePtr& ty) {
  switch (ty->kind()) {
    case SemType::Entity:
      return "entity";
    case SemType::Prop:
      return "$o";
    case SemType::Degree:
      return ty->is_count() ? "$int" : "$rat";
    default:
      throw ProverError("higher-order argument cannot be declared in TFF");
  }
}

inline std::string decl_type(const TypePtr& ty) {
  if (ty->kind() != SemType::Fun) return sort_token(ty);
  std::vector<std::string> args;
  TypePtr t = ty;
  while (t->kind() == SemType::Fun) {
    args.push_back(sort_token(t->arg()));
    t = t->res();
  }
  std::string res = sort_token(t);
  if (args.size() == 1) return args[0] + " > " + res;
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += " * ";
    out += args[i];
  }
  return out + ") > " + res;
}

inline std::string numeral(const Rational& v, const TypePtr& ty) {
  if (ty->is_count()) {
    if (v.den() != 1) throw ProverError("counting degree literal is not an integer");
    return std::to_string(v.num());
  }
  return std::to_string(v.num()) + "/" + std::to_string(v.den());
}

inline std::string theta_symbol(const std::string& pred) { return "theta_" + pred; }

// Statement names must be lower words; squash anything else to underscores.
inline std::string statement_suffix(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "s" : out;
}

// ---- symbol table ----------------------------------------------------------

struct SymbolTable {
  std::map<std::string, TypePtr> constants;   // predicates and entity constants
  std::map<std::string, TypePtr> thresholds;  // theta symbol -> degree sort

  void collect(const TermPtr& t) {
    switch (t->kind()) {
      case TermKind::Const: {
        auto it = constants.find(t->name());
        if (it == constants.end())
          constants.emplace(t->name(), t->type());
        else if (!type_eq(it->second, t->type()))
          throw ProverError("symbol used at two types: " + t->name());
        return;
      }
      case TermKind::Threshold: {
        std::string sym = theta_symbol(t->name());
        auto it = thresholds.find(sym);
        if (it == thresholds.end())
          thresholds.emplace(sym, t->type());
        else if (!type_eq(it->second, t->type()))
          throw ProverError("threshold used at two sorts: " + t->name());
        collect(t->kid(0));
        return;
      }
      case TermKind::Abs:
        throw ProverError("lambda abstraction is not first-order");
      default:
        for (std::size_t i = 0; i < t->kids().size(); ++i) collect(t->kid(i));
        return;
    }
  }
};

// ---- formula printing ------------------------------------------------------

class Printer {
 public:
  std::string formula(const TermPtr& t) {
    next_var_ = 0;
    scope_.clear();
    return fml(t);
  }

 private:
  int next_var_ = 0;
  std::vector<std::pair<std::string, std::string>> scope_;  // source name -> TPTP var

  std::string var_of(const std::string& name) const {
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i].first == name) return scope_[i].second;
    throw ProverError("unbound variable in proof task: " + name);
  }

  std::string fml(const TermPtr& t) {
    switch (t->kind()) {
      case TermKind::Top:
        return "$true";
      case TermKind::Bot:
        return "$false";
      case TermKind::Not:
        return "~(" + fml(t->kid(0)) + ")";
      case TermKind::And:
        return "(" + fml(t->kid(0)) + " & " + fml(t->kid(1)) + ")";
      case TermKind::Or:
        return "(" + fml(t->kid(0)) + " | " + fml(t->kid(1)) + ")";
      case TermKind::Imp:
        return "(" + fml(t->kid(0)) + " => " + fml(t->kid(1)) + ")";
      case TermKind::Forall:
      case TermKind::Exists: {
        std::string v = "X" + std::to_string(next_var_++);
        scope_.emplace_back(t->name(), v);
        std::string body = fml(t->kid(0));
        scope_.pop_back();
        std::string head = t->kind() == TermKind::Forall ? "! [" : "? [";
        return head + v + ": " + sort_token(t->type()) + "] : (" + body + ")";
      }
      case TermKind::Cmp: {
        std::string a = term(t->kid(0));
        std::string b = term(t->kid(1));
        switch (t->rel()) {
          case CmpRel::Lt:
            return "$less(" + a + ", " + b + ")";
          case CmpRel::Le:
            return "$lesseq(" + a + ", " + b + ")";
          case CmpRel::Eq:
            return "(" + a + " = " + b + ")";
        }
        throw ProverError("unknown comparison");
      }
      case TermKind::App:
      case TermKind::Const:
        return term(t);
      default:
        throw ProverError("formula node cannot be printed to TFF");
    }
  }

  std::string term(const TermPtr& t) {
    switch (t->kind()) {
      case TermKind::Var:
        return var_of(t->name());
      case TermKind::Const:
        return atom_token(t->name());
      case TermKind::NumLit:
        return numeral(t->value(), t->type());
      case TermKind::Threshold:
        return atom_token(theta_symbol(t->name())) + "(" + term(t->kid(0)) + ")";
      case TermKind::Sum:
        return "$sum(" + term(t->kid(0)) + ", " + term(t->kid(1)) + ")";
      case TermKind::Diff:
        return "$difference(" + term(t->kid(0)) + ", " + term(t->kid(1)) + ")";
      case TermKind::App: {
        std::vector<TermPtr> args;
        TermPtr head = t;
        while (head->kind() == TermKind::App) {
          args.push_back(head->kid(1));
          head = head->kid(0);
        }
        if (head->kind() != TermKind::Const)
          throw ProverError("application head is not a constant");
        std::string out = atom_token(head->name()) + "(";
        for (std::size_t i = args.size(); i-- > 0;) {
          out += term(args[i]);
          if (i) out += ", ";
        }
        return out + ")";
      }
      default:
        throw ProverError("term node cannot be printed to TFF");
    }
  }
};

}  // namespace tffdetail

inline std::string emit_tff(const ProofTask& task) {
  tffdetail::SymbolTable syms;
  for (const Axiom& a : task.axioms) syms.collect(a.formula);
  for (const TermPtr& p : task.premises) syms.collect(p);
  if (task.goal) syms.collect(task.goal);

  std::ostringstream out;
  out << "tff(decl_entity, type, entity: $tType).\n";
  std::map<std::string, TypePtr> decls = syms.constants;
  decls.insert(syms.thresholds.begin(), syms.thresholds.end());
  int idx = 0;
  for (const auto& [name, ty] : decls) {
    ++idx;
    auto th = syms.thresholds.find(name);
    TypePtr decl_ty =
        th != syms.thresholds.end() ? SemType::fun(SemType::entity(), ty) : ty;
    out << "tff(decl_" << (idx < 10 ? "0" : "") << idx << "_"
        << tffdetail::statement_suffix(name) << ", type, " << tffdetail::atom_token(name)
        << ": " << tffdetail::decl_type(decl_ty) << ").\n";
  }

  tffdetail::Printer pr;
  std::set<std::string> used_names;
  for (const Axiom& a : task.axioms) {
    std::string base = "ax_" + tffdetail::statement_suffix(a.name);
    std::string name = base;
    for (int n = 2; used_names.count(name); ++n) name = base + "_" + std::to_string(n);
    used_names.insert(name);
    out << "tff(" << name << ", axiom, " << pr.formula(a.formula) << ").\n";
  }
  for (std::size_t i = 0; i < task.premises.size(); ++i)
    out << "tff(prem_" << (i + 1 < 10 ? "0" : "") << (i + 1) << ", axiom, "
        << pr.formula(task.premises[i]) << ").\n";
  if (task.goal && task.goal->kind() != TermKind::Top)
    out << "tff(goal, conjecture, " << pr.formula(task.goal) << ").\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Reading the emitted subset back.
// ---------------------------------------------------------------------------

namespace tffdetail {

struct Token {
  enum Kind { Word, Dollar, Var, Num, Punct, End } kind = End;
  std::string text;       // Word/Dollar/Var spelling, or punctuation
  Rational value{0};      // Num
  bool is_fraction = false;
};

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto peek = [&](std::size_t k) -> char {
    return i + k < text.size() ? text[i + k] : '\0';
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '%') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\'') {  // quoted atom
      ++i;
      std::string s;
      while (i < text.size() && text[i] != '\'') {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        s += text[i++];
      }
      if (i >= text.size()) throw FormatError("unterminated quoted atom");
      ++i;
      out.push_back({Token::Word, s, Rational(0), false});
      continue;
    }
    if (c == '$' || std::islower(static_cast<unsigned char>(c))) {
      std::string s(1, c);
      ++i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                 text[i] == '_'))
        s += text[i++];
      out.push_back({c == '$' ? Token::Dollar : Token::Word, s, Rational(0), false});
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::string s(1, c);
      ++i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                 text[i] == '_'))
        s += text[i++];
      out.push_back({Token::Var, s, Rational(0), false});
      continue;
    }
    bool neg_num = c == '-' && std::isdigit(static_cast<unsigned char>(peek(1)));
    if (std::isdigit(static_cast<unsigned char>(c)) || neg_num) {
      std::size_t j = i + (neg_num ? 1 : 0);
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      std::int64_t num = std::stoll(text.substr(i, j - i));
      bool frac = false;
      std::int64_t den = 1;
      if (j < text.size() && text[j] == '/' &&
          std::isdigit(static_cast<unsigned char>(j + 1 < text.size() ? text[j + 1] : '\0'))) {
        frac = true;
        std::size_t k = ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        den = std::stoll(text.substr(k, j - k));
      }
      i = j;
      out.push_back({Token::Num, "", Rational(num, den), frac});
      continue;
    }
    if (c == '=' && peek(1) == '>') {
      out.push_back({Token::Punct, "=>", Rational(0), false});
      i += 2;
      continue;
    }
    static const std::string singles = "()[],:.!?~&|=*>";
    if (singles.find(c) != std::string::npos) {
      out.push_back({Token::Punct, std::string(1, c), Rational(0), false});
      ++i;
      continue;
    }
    throw FormatError(std::string("unexpected character in TFF text: ") + c);
  }
  out.push_back({Token::End, "", Rational(0), false});
  return out;
}

// Union-find over the measurement-dimension slots of quantified $rat
// variables; every slot either reaches a dimension anchored by a predicate,
// threshold, or typed variable, or defaults to length.
class DimSolver {
 public:
  int fresh() {
    int id = static_cast<int>(parent_.size());
    parent_.push_back(id);
    dim_.emplace_back();
    return id;
  }

  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent_[b] = a;
    if (!dim_[a]) dim_[a] = dim_[b];
    else if (dim_[b] && *dim_[a] != *dim_[b])
      throw FormatError("conflicting measurement dimensions in TFF formula");
  }

  void anchor(int a, const std::string& dim) {
    a = find(a);
    if (!dim_[a]) dim_[a] = dim;
    else if (*dim_[a] != dim)
      throw FormatError("conflicting measurement dimensions in TFF formula");
  }

  std::string dimension(int a) { return dim_[find(a)].value_or("length"); }

 private:
  std::vector<int> parent_;
  std::vector<std::optional<std::string>> dim_;
};

}  // namespace tffdetail

class TffReader {
 public:
  TffReader(const std::string& text, const KB& kb)
      : toks_(tffdetail::tokenize(text)), kb_(kb) {}

  ProofTask task() {
    // First pass: type declarations, in whatever order they appear.
    for (pos_ = 0; !at_end();) {
      Stmt s = statement_header();
      if (s.role == "type")
        declaration();
      else
        skip_to_statement_end();
    }
    // Second pass: formulas.
    ProofTask out;
    out.goal = Term::top();
    bool saw_goal = false;
    for (pos_ = 0; !at_end();) {
      Stmt s = statement_header();
      if (s.role == "type") {
        skip_to_statement_end();
        continue;
      }
      TermPtr f = formula_statement();
      if (s.role == "conjecture") {
        if (saw_goal) throw FormatError("more than one conjecture");
        out.goal = f;
        saw_goal = true;
      } else if (s.role == "axiom") {
        if (s.name.rfind("prem", 0) == 0)
          out.premises.push_back(f);
        else
          out.axioms.push_back({s.name, f});
      } else {
        throw FormatError("unsupported TFF role: " + s.role);
      }
    }
    return out;
  }

 private:
  using Token = tffdetail::Token;

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  KB kb_;

  TypePtr entity_sort_;  // the declared $tType, usually "entity"
  std::map<std::string, TypePtr> const_types_;
  std::map<std::string, std::string> theta_preds_;  // symbol -> predicate name
  std::map<std::string, TypePtr> theta_sorts_;

  struct Stmt {
    std::string name;
    std::string role;
  };

  // --- token plumbing -------------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  bool at_end() const { return cur().kind == Token::End; }

  void expect_punct(const std::string& p) {
    if (cur().kind != Token::Punct || cur().text != p)
      throw FormatError("expected '" + p + "' in TFF text");
    ++pos_;
  }

  bool eat_punct(const std::string& p) {
    if (cur().kind == Token::Punct && cur().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string expect_word() {
    if (cur().kind != Token::Word) throw FormatError("expected a name in TFF text");
    return toks_[pos_++].text;
  }

  Stmt statement_header() {
    if (cur().kind != Token::Word || cur().text != "tff")
      throw FormatError("expected a tff(...) statement");
    ++pos_;
    expect_punct("(");
    Stmt s;
    s.name = expect_word();
    expect_punct(",");
    s.role = expect_word();
    expect_punct(",");
    return s;
  }

  void skip_to_statement_end() {
    int depth = 1;  // the header consumed one '('
    while (!at_end()) {
      if (cur().kind == Token::Punct) {
        if (cur().text == "(" || cur().text == "[") ++depth;
        if (cur().text == ")" || cur().text == "]") --depth;
        if (depth == 0) {
          ++pos_;
          expect_punct(".");
          return;
        }
      }
      ++pos_;
    }
    throw FormatError("unterminated tff statement");
  }

  // --- declarations ---------------------------------------------------------

  // A provisional degree sort: $int is definitely count; $rat is a measure
  // whose dimension is resolved per symbol via the knowledge base.
  TypePtr sort_of(const std::string& tok, const std::string& fallback_dim) {
    if (tok == "$int") return SemType::count();
    if (tok == "$rat" || tok == "$real") return SemType::measure(fallback_dim);
    if (tok == "$o") return SemType::prop();
    if (!entity_sort_) throw FormatError("entity sort used before its declaration");
    return SemType::entity();  // the declared problem sort
  }

  std::string degree_dim_for(const std::string& symbol) {
    std::string pred = symbol;
    if (pred.rfind("theta_", 0) == 0) pred = pred.substr(6);
    if (kb_.is_gradable(pred)) {
      TypePtr s = kb_.degree_sort(pred);
      if (!s->is_count()) return s->dimension();
    }
    return "length";
  }

  void declaration() {
    std::string sym = expect_word();
    expect_punct(":");
    if (cur().kind == Token::Dollar && cur().text == "$tType") {
      ++pos_;
      entity_sort_ = SemType::entity();
      expect_punct(")");
      expect_punct(".");
      return;
    }
    std::vector<std::string> args;
    if (eat_punct("(")) {
      args.push_back(sort_word());
      while (eat_punct("*")) args.push_back(sort_word());
      expect_punct(")");
      expect_punct(">");
    }
    std::string res = sort_word();
    if (args.empty() && eat_punct(">")) {
      args.push_back(res);
      res = sort_word();
    }
    expect_punct(")");
    expect_punct(".");

    std::string dim = degree_dim_for(sym);
    TypePtr ty = sort_of(res, dim);
    for (std::size_t i = args.size(); i-- > 0;) ty = SemType::fun(sort_of(args[i], dim), ty);

    if (sym.rfind("theta_", 0) == 0 && args.size() == 1 && args[0] == "entity" &&
        (res == "$rat" || res == "$int")) {
      theta_preds_[sym] = sym.substr(6);
      theta_sorts_[sym] = sort_of(res, dim);
    } else {
      const_types_[sym] = ty;
    }
  }

  std::string sort_word() {
    if (cur().kind == Token::Dollar || cur().kind == Token::Word) return toks_[pos_++].text;
    throw FormatError("expected a sort in TFF declaration");
  }

  // --- formulas -------------------------------------------------------------

  struct VarInfo {
    std::string name;
    TypePtr type;   // fixed for entity/count; provisional for $rat
    int slot = -1;  // dimension slot when provisional
  };

  tffdetail::DimSolver dims_;
  std::vector<VarInfo> scope_;
  // Deferred dimension fixes: rebuilt after the whole formula is parsed.
  struct PendingVar {
    std::string name;
    int slot;
  };

  TermPtr formula_statement() {
    scope_.clear();
    dims_ = tffdetail::DimSolver();
    TermPtr f = parse_formula();
    expect_punct(")");
    expect_punct(".");
    return resolve_dims(f);
  }

  const VarInfo* lookup(const std::string& v) const {
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i].name == v) return &scope_[i];
    return nullptr;
  }

  TermPtr parse_formula() {
    if (cur().kind == Token::Punct && (cur().text == "!" || cur().text == "?")) {
      bool universal = cur().text == "!";
      ++pos_;
      expect_punct("[");
      std::string v = cur().kind == Token::Var ? toks_[pos_++].text
                                               : throw FormatError("expected a variable");
      expect_punct(":");
      std::string sort = sort_word();
      expect_punct("]");
      expect_punct(":");
      VarInfo info{v, nullptr, -1};
      if (sort == "$int") {
        info.type = SemType::count();
      } else if (sort == "$rat" || sort == "$real") {
        info.slot = dims_.fresh();
        info.type = nullptr;  // resolved later
      } else {
        info.type = SemType::entity();
      }
      scope_.push_back(info);
      TermPtr body = parse_formula();
      scope_.pop_back();
      TypePtr vt = info.type ? info.type : placeholder_measure(info.slot);
      return universal ? Term::forall(v, vt, body) : Term::exists(v, vt, body);
    }
    if (eat_punct("~")) return Term::negate(parse_formula());
    if (cur().kind == Token::Dollar) {
      std::string d = toks_[pos_++].text;
      if (d == "$true") return Term::top();
      if (d == "$false") return Term::bot();
      if (d == "$less" || d == "$lesseq") {
        expect_punct("(");
        TermPtr a = parse_term();
        expect_punct(",");
        TermPtr b = parse_term();
        expect_punct(")");
        constrain_same_dim(a, b);
        return d == "$less" ? Term::lt(a, b) : Term::le(a, b);
      }
      throw FormatError("unsupported TFF builtin: " + d);
    }
    if (eat_punct("(")) {
      // Either a connective over formulas or an equation over terms; resolve
      // by trying the term form first and backtracking on failure.
      std::size_t mark = pos_;
      try {
        TermPtr a = parse_term();
        if (eat_punct("=")) {
          TermPtr b = parse_term();
          expect_punct(")");
          constrain_same_dim(a, b);
          return Term::eq(a, b);
        }
      } catch (const FormatError&) {
      }
      pos_ = mark;
      TermPtr a = parse_formula();
      if (eat_punct("&")) {
        TermPtr b = parse_formula();
        expect_punct(")");
        return Term::conj(a, b);
      }
      if (eat_punct("|")) {
        TermPtr b = parse_formula();
        expect_punct(")");
        return Term::disj(a, b);
      }
      if (eat_punct("=>")) {
        TermPtr b = parse_formula();
        expect_punct(")");
        return Term::imp(a, b);
      }
      if (eat_punct("=")) {  // atoms parse as terms too: (p(a) = ...) never occurs
        throw FormatError("unexpected equation over formulas");
      }
      expect_punct(")");
      return a;  // plain parenthesized formula
    }
    // Atom: predicate application or propositional constant.
    return parse_atom();
  }

  TermPtr parse_atom() {
    TermPtr t = parse_term();
    TypePtr ty = atom_result_type(t);
    if (!ty || ty->kind() != SemType::Prop)
      throw FormatError("expected a proposition in formula position");
    return t;
  }

  TypePtr atom_result_type(const TermPtr& t) const {
    if (t->kind() == TermKind::Const) return t->type();
    if (t->kind() == TermKind::App) {
      TermPtr f = t;
      int depth = 0;
      while (f->kind() == TermKind::App) {
        f = f->kid(0);
        ++depth;
      }
      TypePtr ty = f->type();
      while (depth-- > 0 && ty && ty->kind() == SemType::Fun) ty = ty->res();
      return ty;
    }
    return nullptr;
  }

  TermPtr parse_term() {
    if (cur().kind == Token::Num) {
      Token n = toks_[pos_++];
      TypePtr ty = n.is_fraction ? placeholder_measure(dims_.fresh())
                                 : static_cast<TypePtr>(SemType::count());
      return Term::num(n.value, ty);
    }
    if (cur().kind == Token::Var) {
      std::string v = toks_[pos_++].text;
      const VarInfo* info = lookup(v);
      if (!info) throw FormatError("unbound variable: " + v);
      TypePtr vt = info->type ? info->type : placeholder_measure(info->slot);
      return Term::var(v, vt);
    }
    if (cur().kind == Token::Dollar) {
      std::string d = toks_[pos_++].text;
      if (d != "$sum" && d != "$difference")
        throw FormatError("unsupported TFF arithmetic function: " + d);
      expect_punct("(");
      TermPtr a = parse_term();
      expect_punct(",");
      TermPtr b = parse_term();
      expect_punct(")");
      constrain_same_dim(a, b);
      return d == "$sum" ? Term::sum(a, b) : Term::diff(a, b);
    }
    if (cur().kind != Token::Word) throw FormatError("expected a term");
    std::string name = toks_[pos_++].text;

    auto th = theta_preds_.find(name);
    if (th != theta_preds_.end()) {
      expect_punct("(");
      TermPtr arg = parse_term();
      expect_punct(")");
      return Term::theta(th->second, arg, theta_sorts_.at(name));
    }

    auto it = const_types_.find(name);
    if (it == const_types_.end()) throw FormatError("undeclared symbol: " + name);
    TermPtr head = Term::constant(name, it->second);
    if (!eat_punct("(")) return head;
    TypePtr ty = it->second;
    TermPtr app = head;
    while (true) {
      if (ty->kind() != SemType::Fun) throw FormatError("too many arguments to " + name);
      TermPtr arg = parse_term();
      constrain_arg_dim(arg, ty->arg());
      app = Term::app(app, arg);
      ty = ty->res();
      if (eat_punct(")")) break;
      expect_punct(",");
    }
    return app;
  }

  // --- dimension resolution --------------------------------------------------

  // Placeholder measure types carry the slot id in the dimension string; they
  // are replaced once all constraints are known.
  static TypePtr placeholder_measure(int slot) {
    return SemType::measure("?" + std::to_string(slot));
  }

  static std::optional<int> placeholder_slot(const TypePtr& ty) {
    if (ty && ty->kind() == SemType::Degree && !ty->is_count() &&
        !ty->dimension().empty() && ty->dimension()[0] == '?')
      return std::stoi(ty->dimension().substr(1));
    return std::nullopt;
  }

  // Degree value type of a parsed term (entity terms return their type too).
  TypePtr term_value_type(const TermPtr& t) const {
    switch (t->kind()) {
      case TermKind::Var:
      case TermKind::NumLit:
      case TermKind::Threshold:
      case TermKind::Const:
        return t->type();
      case TermKind::Sum:
      case TermKind::Diff:
        return term_value_type(t->kid(0));
      case TermKind::App:
        return atom_result_type(t);
      default:
        return nullptr;
    }
  }

  void for_each_degree_leaf(const TermPtr& t, const std::function<void(const TermPtr&)>& f) {
    switch (t->kind()) {
      case TermKind::Var:
      case TermKind::NumLit:
        f(t);
        return;
      case TermKind::Threshold:
        f(t);  // anchors a dimension; do not descend into the entity argument
        return;
      case TermKind::Sum:
      case TermKind::Diff:
        for_each_degree_leaf(t->kid(0), f);
        for_each_degree_leaf(t->kid(1), f);
        return;
      default:
        return;
    }
  }

  void constrain_same_dim(const TermPtr& a, const TermPtr& b) {
    std::vector<int> slots;
    std::optional<std::string> anchor;
    auto note = [&](const TermPtr& leaf) {
      TypePtr ty = leaf->type();
      if (!ty || ty->kind() != SemType::Degree || ty->is_count()) return;
      if (auto s = placeholder_slot(ty))
        slots.push_back(*s);
      else
        anchor = ty->dimension();
    };
    for_each_degree_leaf(a, note);
    for_each_degree_leaf(b, note);
    for (std::size_t i = 1; i < slots.size(); ++i) dims_.unite(slots[0], slots[i]);
    if (!slots.empty() && anchor) dims_.anchor(slots[0], *anchor);
  }

  void constrain_arg_dim(const TermPtr& arg, const TypePtr& expected) {
    if (!expected || expected->kind() != SemType::Degree || expected->is_count()) return;
    auto note = [&](const TermPtr& leaf) {
      if (auto s = placeholder_slot(leaf->type())) dims_.anchor(*s, expected->dimension());
    };
    for_each_degree_leaf(arg, note);
  }

  TermPtr resolve_dims(const TermPtr& t) {
    TypePtr ty = t->type();
    TypePtr fixed = ty;
    if (auto s = placeholder_slot(ty)) fixed = SemType::measure(dims_.dimension(*s));
    if (t->kids().empty()) {
      if (fixed == ty) return t;
      if (t->kind() == TermKind::Var) return Term::var(t->name(), fixed);
      if (t->kind() == TermKind::NumLit) return Term::num(t->value(), fixed);
      return t;
    }
    std::vector<TermPtr> kids;
    kids.reserve(t->kids().size());
    for (std::size_t i = 0; i < t->kids().size(); ++i) kids.push_back(resolve_dims(t->kid(i)));
    if (t->is_binder() && fixed != ty) {
      if (t->kind() == TermKind::Forall) return Term::forall(t->name(), fixed, kids[0]);
      if (t->kind() == TermKind::Exists) return Term::exists(t->name(), fixed, kids[0]);
    }
    return detail::rebuild(t, std::move(kids));
  }
};

inline ProofTask read_tff(const std::string& text, const KB& kb) {
  TffReader r(text, kb);
  return r.task();
}

// ---------------------------------------------------------------------------
// SZS status lines and the external prover runner.
// ---------------------------------------------------------------------------

enum class ProofStatus { Proved, NotProvedWithinBudget };

struct ExternalOutcome {
  ProofStatus status = ProofStatus::NotProvedWithinBudget;
  bool refutable_consistent = false;  // prover found a countermodel
  std::string szs;                    // the reported status word
};

inline ExternalOutcome read_szs(const std::string& output) {
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t at = line.find("SZS status");
    if (at == std::string::npos) continue;
    std::istringstream rest(line.substr(at + std::string("SZS status").size()));
    std::string word;
    if (!(rest >> word)) continue;
    ExternalOutcome out;
    out.szs = word;
    if (word == "Theorem" || word == "Unsatisfiable" || word == "ContradictoryAxioms") {
      out.status = ProofStatus::Proved;
    } else if (word == "CounterSatisfiable" || word == "Satisfiable") {
      out.refutable_consistent = true;
    } else if (word == "Timeout" || word == "GaveUp" || word == "Unknown" ||
               word == "ResourceOut" || word == "Incomplete" || word == "Inappropriate") {
      // not proved within budget
    } else {
      throw ProverError("unrecognized SZS status: " + word);
    }
    return out;
  }
  throw ProverError("no SZS status line in prover output");
}

struct ExternalProver {
  // Command template; every "{file}" becomes the problem path and
  // "{timeout_s}"/"{timeout_ms}" the budget.  Without a "{file}" placeholder
  // the path is appended as a final argument.  The template is responsible
  // for enforcing its own time limit (e.g. a -t flag).
  std::string command;
  int timeout_ms = 10000;
};

namespace tffdetail {

inline void replace_all(std::string& s, const std::string& from, const std::string& to) {
  std::size_t at = 0;
  while ((at = s.find(from, at)) != std::string::npos) {
    s.replace(at, from.size(), to);
    at += to.size();
  }
}

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

}  // namespace tffdetail

inline std::string render_command(const ExternalProver& prover, const std::string& path) {
  std::string cmd = prover.command;
  bool has_file = cmd.find("{file}") != std::string::npos;
  tffdetail::replace_all(cmd, "{file}", tffdetail::shell_quote(path));
  tffdetail::replace_all(cmd, "{timeout_ms}", std::to_string(prover.timeout_ms));
  tffdetail::replace_all(cmd, "{timeout_s}",
                         std::to_string((prover.timeout_ms + 999) / 1000));
  if (!has_file) cmd += " " + tffdetail::shell_quote(path);
  return cmd;
}

// Writes the problem to an isolated temporary file, runs the configured
// command, and parses the SZS status from its combined output.
inline ExternalOutcome run_external_prover(const std::string& tff_text,
                                           const ExternalProver& prover) {
  char path[] = "/tmp/degnli_tff_XXXXXX";
  int fd = mkstemp(path);
  if (fd < 0) throw IoError("cannot create temporary problem file");
  std::string text = tff_text;
  std::size_t written = 0;
  while (written < text.size()) {
    ssize_t n = write(fd, text.data() + written, text.size() - written);
    if (n <= 0) {
      close(fd);
      unlink(path);
      throw IoError("cannot write temporary problem file");
    }
    written += static_cast<std::size_t>(n);
  }
  close(fd);

  std::string cmd = render_command(prover, path) + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    unlink(path);
    throw IoError("cannot run external prover command");
  }
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  pclose(pipe);
  unlink(path);
  return read_szs(output);
}

// Three-way entailment through the external prover: ask for the hypothesis
// as a conjecture, then for its negation.
inline Answer external_decide(const std::vector<TermPtr>& premises, const TermPtr& hypothesis,
                              const KB& kb, const ExternalProver& prover) {
  std::vector<TermPtr> sig_formulas = premises;
  sig_formulas.push_back(hypothesis);
  std::vector<Axiom> axioms = instantiate_axioms(sig_formulas, kb);

  ProofTask forward{axioms, premises, hypothesis};
  if (run_external_prover(emit_tff(forward), prover).status == ProofStatus::Proved)
    return Answer::Yes;
  ProofTask backward{axioms, premises, Term::negate(hypothesis)};
  if (run_external_prover(emit_tff(backward), prover).status == ProofStatus::Proved)
    return Answer::No;
  return Answer::Unknown;
}

}  // namespace degnli
