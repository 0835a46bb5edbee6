#ifndef CCLS_ERROR_HPP
#define CCLS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccls {

/// Broad failure category. The CLI maps each kind to a process exit code.
enum class ErrorKind {
  Parse,     // malformed DSL text
  Model,     // input parses but violates a modelling requirement
  Resource,  // a configured cap was exceeded
  Internal,  // broken invariant, indicates a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax or name-resolution failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class ModelError : public Error {
 public:
  explicit ModelError(const std::string& what) : Error(ErrorKind::Model, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what)
      : Error(ErrorKind::Resource, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorKind::Internal, what) {}
};

}  // namespace ccls

#endif  // CCLS_ERROR_HPP
