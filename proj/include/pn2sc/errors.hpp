#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pn2sc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element was used with a net or chart it does not belong to.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with arguments that violate its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Identifier collision or malformed identifier.
class IdError : public Error {
 public:
  using Error::Error;
};

/// Attaching a node would break the containment tree.
class TreeError : public Error {
 public:
  using Error::Error;
};

/// Failure inside the rule engine (rejected dependency input and similar).
class TransformationError : public Error {
 public:
  using Error::Error;
};

/// The trace no longer gives a single OR state for a live place.
class TraceCorruptionError : public Error {
 public:
  using Error::Error;
};

/// Model failed validation before the pipeline could start.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed document. `line` and `column` are 1-based, 0 when unknown.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed document describing an invalid model (duplicate id, dangling
/// reference, empty arc list, broken alternation).
class SemanticError : public Error {
 public:
  SemanticError(const std::string& what, std::string element)
      : Error(what), element_(std::move(element)) {}

  const std::string& element() const noexcept { return element_; }

 private:
  std::string element_;
};

enum class Severity { error, warning };

/// One broken invariant reported by check_net / validate_chart.
struct Violation {
  std::string element;
  std::string message;
  Severity severity = Severity::error;

  bool operator==(const Violation&) const = default;
};

inline bool has_errors(const std::vector<Violation>& violations) {
  for (const auto& v : violations) {
    if (v.severity == Severity::error) return true;
  }
  return false;
}

std::string describe(const std::vector<Violation>& violations);

}  // namespace pn2sc
