#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace semifree {

/// An operation symbol: a name together with a fixed arity.
struct OperationSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const OperationSymbol&, const OperationSymbol&) = default;
  friend auto operator<=>(const OperationSymbol&, const OperationSymbol&) = default;
};

/// A finite, ordered collection of operation symbols with distinct names.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OperationSymbol> symbols) : symbols_(std::move(symbols)) {}

  const std::vector<OperationSymbol>& symbols() const { return symbols_; }

  /// Appends a symbol. Duplicate names are reported by validate(), not here.
  void add(OperationSymbol sym) { symbols_.push_back(std::move(sym)); }

  const OperationSymbol* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<OperationSymbol> symbols_;
};

/// First-order terms: a variable or an operator application.
/// Immutable, with shared substructure; equality is structural.
class Term {
 public:
  /// Builds a variable term.
  static Term var(std::string name);
  /// Builds an application. Throws std::invalid_argument on arity mismatch.
  static Term app(OperationSymbol op, std::vector<Term> args);
  /// Convenience for nullary applications.
  static Term app(OperationSymbol op) { return app(std::move(op), {}); }

  bool is_variable() const { return node_->is_var; }
  bool is_application() const { return !node_->is_var; }

  /// Variable name; valid only for variables.
  const std::string& variable_name() const { return node_->head; }
  /// Operation symbol; valid only for applications.
  OperationSymbol symbol() const { return {node_->head, node_->args.size()}; }
  const std::string& head() const { return node_->head; }
  std::span<const Term> args() const { return node_->args; }

  /// Depth per the usual convention: variables 0, constants 1,
  /// op(t1..tn) is 1 + max depth of the arguments.
  std::size_t depth() const { return node_->depth; }
  /// Total node count (variables and applications each count 1).
  std::size_t size() const { return node_->size; }

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

  /// Canonical total order: by depth, then head name, then arguments
  /// lexicographically. Used for every deterministic output.
  std::strong_ordering operator<=>(const Term& other) const;

  /// Renders the term: nullary ops bare, unary ops prefix (a a v),
  /// other ops in functional notation.
  std::string to_string() const;

 private:
  struct Node {
    bool is_var;
    std::string head;
    std::vector<Term> args;
    std::size_t depth;
    std::size_t size;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Equation {
  Term lhs;
  Term rhs;

  bool operator==(const Equation& other) const { return lhs == other.lhs && rhs == other.rhs; }
  std::string to_string() const { return lhs.to_string() + " = " + rhs.to_string(); }
};

/// An algebraic theory: a signature plus a finite list of equations.
struct Theory {
  std::string name;
  Signature signature;
  std::vector<Equation> equations;
};

/// A substitution: finite map from variable names to terms.
/// Variables absent from the mapping are fixed.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::map<std::string, Term> mapping) : mapping_(std::move(mapping)) {}

  void set(const std::string& var, Term image) { mapping_.insert_or_assign(var, std::move(image)); }
  const Term* lookup(const std::string& var) const;
  const std::map<std::string, Term>& mapping() const { return mapping_; }
  bool empty() const { return mapping_.empty(); }

  /// True if every mapped variable is sent to itself.
  bool is_identity() const;

 private:
  std::map<std::string, Term> mapping_;
};

/// Simultaneous replacement of variables by their images.
Term apply_substitution(const Term& t, const Substitution& f);

/// Variable names in left-to-right first-occurrence order.
std::vector<std::string> variables_of(const Term& t);

/// One problem found by validate_theory.
struct ValidationIssue {
  std::string location;  // e.g. "signature", "equation 2 lhs"
  std::string message;
};

/// Checks the theory invariants: unique symbol names, nonempty names,
/// and that every equation is well formed over the signature.
/// Empty result means the theory is valid.
std::vector<ValidationIssue> validate_theory(const Theory& th);

/// Checks that a term only uses symbols of `sig` with correct arities.
/// Returns an error message, or nullopt if well formed.
std::optional<std::string> check_term(const Term& t, const Signature& sig);

}  // namespace semifree
