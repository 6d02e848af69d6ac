#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wpe {

/// Malformed input data. Carries the 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& detail, std::size_t line = 0, const std::string& source = {})
      : std::runtime_error((source.empty() ? "" : source + ":") +
                           (line ? "line " + std::to_string(line) + ": " : (source.empty() ? "" : " ")) +
                           detail),
        detail_(detail),
        line_(line) {}

  /// Same error attributed to a named source (usually a file path).
  ParseError in_source(const std::string& source) const { return ParseError(detail_, line_, source); }

  std::size_t line() const noexcept { return line_; }

 private:
  std::string detail_;
  std::size_t line_;
};

/// Input or preprocessing produced a graph without any link.
class EmptyGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of a computation was violated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid run configuration (CLI flags, manifests).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wpe
