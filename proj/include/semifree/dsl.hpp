#pragma once

#include <string>
#include <variant>

#include "semifree/term.hpp"

namespace semifree {

struct SourceSpan {
  std::string file = "<input>";
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based
};

struct ParseError {
  SourceSpan span;
  std::string message;

  std::string to_string() const {
    return span.file + ":" + std::to_string(span.line) + ":" + std::to_string(span.column) +
           ": " + message;
  }
};

template <typename T>
using ParseResult = std::variant<T, ParseError>;

template <typename T>
bool parse_ok(const ParseResult<T>& r) {
  return std::holds_alternative<T>(r);
}

/// Parses the line-oriented theory format:
///
///   theory <Name>
///   op <name> : <arity>
///   eq <term> = <term>
///   end
///
/// Variables are identifiers not declared as ops; `#` starts a comment.
/// Unary operations may be written prefix (`a a v`) or applied (`a(a(v))`).
ParseResult<Theory> parse_theory(const std::string& text, const std::string& file = "<input>");

/// Canonical rendering; parse_theory(print_theory(th)) reproduces th.
std::string print_theory(const Theory& th);

/// Parses a single term against a signature.
ParseResult<Term> parse_term(const std::string& text, const Signature& sig,
                             const std::string& file = "<input>");

/// Parses "lhs = rhs" against a signature.
ParseResult<Equation> parse_equation(const std::string& text, const Signature& sig,
                                     const std::string& file = "<input>");

}  // namespace semifree
