#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semifree/models_core.hpp"
#include "semifree/term.hpp"
#include "semifree/transform.hpp"

namespace semifree {

/// Equational-logic derivations over the six rules: axiom, reflexivity,
/// symmetry, transitivity, congruence and substitution. Axiom leaves store
/// indices into the ambient theory's equation list, so theories are
/// append-only while proofs referencing them are alive.
class ProofTree {
 public:
  enum class Rule { Axiom, Reflexivity, Symmetry, Transitivity, Congruence, Substitution };

  static ProofTree axiom(std::size_t equation_index);
  static ProofTree reflexivity(Term t);
  static ProofTree symmetry(ProofTree p);
  static ProofTree transitivity(ProofTree p1, ProofTree p2);
  static ProofTree congruence(OperationSymbol op, std::vector<ProofTree> premises);
  static ProofTree substitution(ProofTree p, Substitution f);

  Rule rule() const { return node_->rule; }
  std::size_t axiom_index() const { return node_->axiom_index; }
  const Term& term() const { return *node_->term; }
  const OperationSymbol& op() const { return node_->op; }
  const Substitution& subst() const { return node_->subst; }
  const std::vector<ProofTree>& children() const { return node_->children; }

  /// Number of nodes in the tree.
  std::size_t node_count() const;

 private:
  struct Node {
    Rule rule;
    std::size_t axiom_index = 0;
    std::optional<Term> term;  // Reflexivity
    OperationSymbol op;        // Congruence
    Substitution subst;        // Substitution
    std::vector<ProofTree> children;
  };
  explicit ProofTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Judgment {
  Term lhs;
  Term rhs;

  std::string to_string() const { return lhs.to_string() + " = " + rhs.to_string(); }
};

struct ProofError {
  std::string path;  // e.g. "root.1.0"
  std::string message;

  std::string to_string() const { return path + ": " + message; }
};

/// Checks a proof bottom-up and returns the unique judgment it proves,
/// or the first rule violation together with its path into the tree.
std::variant<Judgment, ProofError> check_proof(const Theory& th, const ProofTree& p);

/// Sound, incomplete proof search by congruence closure with proof
/// recording over a bounded term universe. nullopt means "not found
/// within budget", never "refuted".
std::optional<ProofTree> prove_bounded(const Theory& th, const Term& s, const Term& t,
                                       const Budget& budget = {});

struct Countermodel {
  FiniteAlgebra algebra;
  std::vector<std::string> variables;
  std::vector<std::size_t> assignment;  // parallel to variables
};

/// Searches carriers of size 1..max_carrier for an algebra satisfying the
/// theory and falsifying s = t. Deterministic: carrier size ascending,
/// tables in canonical order, least witness assignment.
std::optional<Countermodel> find_countermodel(const Theory& th, const Term& s, const Term& t,
                                              std::size_t max_carrier);

/// Proof of E^s |- a(t) = t for a base-signature term of depth >= 1;
/// the front-absorption axiom instantiated at the root.
/// Throws std::invalid_argument when depth(t) = 0.
ProofTree proof_a_front(const SemifreeTheory& sf, const Term& t);

/// Proof of E^s |- t[a v / v] = t for depth(t) >= 1, by the inductive
/// construction: congruence on complex arguments, inside absorption at
/// the root, idempotency at variable positions.
ProofTree proof_a_inside(const SemifreeTheory& sf, const Term& t);

/// Transforms a proof of E |- t = s into a proof of
/// E^s |- t[a v / v] = s[a v / v], rule for rule; axiom leaves map to
/// lifted axioms and substitution steps become the three-part composite
/// (front/idempotency adjustments around the a-guarded substitution).
ProofTree lift_proof(const SemifreeTheory& sf, const ProofTree& p);

/// JSON encoding of proofs: nested {rule, children[], axiom?, term?, op?, subst?}.
std::string proof_to_json(const ProofTree& p);
std::variant<ProofTree, std::string> proof_from_json(const std::string& json_text,
                                                     const Signature& sig);

}  // namespace semifree
