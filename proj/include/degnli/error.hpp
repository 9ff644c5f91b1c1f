#pragma once

#include <stdexcept>
#include <string>

namespace degnli {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct TypeMismatch : Error {
  explicit TypeMismatch(const std::string& what) : Error("type mismatch: " + what) {}
};

struct SortClash : Error {
  explicit SortClash(const std::string& what) : Error("sort clash: " + what) {}
};

struct ParseFailure : Error {
  explicit ParseFailure(const std::string& what) : Error("parse failure: " + what) {}
};

struct LexiconError : Error {
  explicit LexiconError(const std::string& what) : Error("lexicon: " + what) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error("format: " + what) {}
};

struct RewriteLoop : Error {
  explicit RewriteLoop(const std::string& what) : Error("rewrite loop: " + what) {}
};

struct UnknownUnit : Error {
  explicit UnknownUnit(const std::string& what) : Error("unknown unit: " + what) {}
};

struct ProverError : Error {
  explicit ProverError(const std::string& what) : Error("prover: " + what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("io: " + what) {}
};

struct MalformedLine : Error {
  int line;
  MalformedLine(int line_no, const std::string& reason)
      : Error("line " + std::to_string(line_no) + ": " + reason), line(line_no) {}
};

struct MalformedXML : Error {
  explicit MalformedXML(const std::string& what) : Error("malformed xml: " + what) {}
};

struct OracleError : Error {
  explicit OracleError(const std::string& what) : Error("oracle: " + what) {}
};

struct Overflow : Error {
  explicit Overflow(const std::string& what) : Error("arithmetic overflow: " + what) {}
};

}  // namespace degnli
