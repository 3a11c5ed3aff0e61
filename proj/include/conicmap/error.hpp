/**
 * \file error.hpp
 * \brief Exception types used throughout conicmap
 **********************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace conicmap {

  /// Input outside the domain of an operation (degenerate triangle, point
  /// beyond the apex, unreachable target, ...).
  class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
  };

  /// Malformed file content; carries the 1-based line number when known.
  class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what)
      , line_(line) {}
    std::size_t line() const noexcept { return line_; }
  private:
    std::size_t line_;
  };

} // namespace conicmap
