#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridsumm {

// Base class for every error raised by the engine. Subclasses carry
// location details where the input format provides them.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (config file, corpus line, record stream).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = -1)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Well-formed input that violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Dangling reference between topic config files.
class CrossRefError : public Error {
 public:
  using Error::Error;
};

class UnknownValueError : public Error {
 public:
  using Error::Error;
};

class UnknownTimeSpanError : public Error {
 public:
  using Error::Error;
};

class UnknownSchemaError : public Error {
 public:
  using Error::Error;
};

class MissingArgError : public Error {
 public:
  explicit MissingArgError(const std::string& arg)
      : Error("missing required argument '" + arg + "'"), arg_(arg) {}
  const std::string& arg() const { return arg_; }

 private:
  std::string arg_;
};

class BadArgValueError : public Error {
 public:
  BadArgValueError(const std::string& arg, const std::string& reason)
      : Error("argument '" + arg + "': " + reason), arg_(arg) {}
  const std::string& arg() const { return arg_; }

 private:
  std::string arg_;
};

// Relation rule configuration cannot be applied to a schema.
class RuleError : public Error {
 public:
  using Error::Error;
};

// Query string rejected; position is a 0-based character offset.
class QuerySyntaxError : public Error {
 public:
  QuerySyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownArgError : public Error {
 public:
  using Error::Error;
};

class MissingTemplateError : public Error {
 public:
  using Error::Error;
};

class MixedSchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace gridsumm
