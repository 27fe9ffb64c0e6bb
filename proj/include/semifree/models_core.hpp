#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semifree/term.hpp"

namespace semifree {

/// A finite algebra for a signature: carrier {0..m-1} and one total lookup
/// table per operation symbol. The table for an n-ary op has m^n entries in
/// row-major order (first argument most significant).
struct FiniteAlgebra {
  Signature signature;
  std::size_t carrier_size = 1;
  std::vector<std::vector<std::size_t>> tables;  // parallel to signature.symbols()

  const std::vector<std::size_t>& table(const std::string& op) const;
  std::size_t apply(std::size_t op_index, const std::vector<std::size_t>& args) const;

  bool operator==(const FiniteAlgebra& other) const {
    return carrier_size == other.carrier_size && signature == other.signature &&
           tables == other.tables;
  }
};

/// Variable assignment: names to carrier elements.
struct VarAssignment {
  std::vector<std::string> variables;
  std::vector<std::size_t> values;

  std::optional<std::size_t> value_of(const std::string& name) const;
};

/// Interprets a term in the algebra under an assignment.
/// Throws std::invalid_argument for symbols outside the signature.
std::size_t interpret(const FiniteAlgebra& alg, const Term& t, const VarAssignment& sigma);

/// Exhaustive satisfaction check over all assignments to the equation's
/// variables.
bool satisfies(const FiniteAlgebra& alg, const Equation& eq);

/// First assignment falsifying the equation, in ascending enumeration
/// order, if any.
std::optional<VarAssignment> falsifying_assignment(const FiniteAlgebra& alg, const Equation& eq);

struct EnumerationError {
  std::string message;
  double search_space = 0;  // computed table-space size that exceeded the cap
};

/// All algebras of the given carrier size satisfying the theory, in
/// canonical (entry-lexicographic) order. Refuses when the raw table
/// space m^(sum of m^arity) exceeds the cap; the search itself prunes
/// with partial-assignment checks, so feasible spaces well above the
/// number of models are fine.
std::variant<std::vector<FiniteAlgebra>, EnumerationError> enumerate_models(
    const Theory& th, std::size_t carrier_size, std::uint64_t table_space_cap = 10'000'000,
    bool allow_large = false);

}  // namespace semifree
