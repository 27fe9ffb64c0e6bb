#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semifree/term.hpp"

namespace semifree {

class ProofTree;
struct FiniteAlgebra;

/// Provenance of one generated equation of E^s.
struct Provenance {
  enum Kind { Idempotency, FrontAbsorption, InsideAbsorption, LiftedAxiom } kind;
  /// Operation name for the absorption families.
  std::string op;
  /// Index into the base theory's equations for LiftedAxiom.
  std::size_t axiom_index = 0;

  std::string to_string() const;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Result of the semifree construction on a theory: the base theory,
/// the generated theory over base signature + one fresh unary symbol,
/// and per-equation provenance tags.
struct SemifreeTheory {
  Theory base;
  Theory result;
  OperationSymbol a_symbol;
  std::vector<Provenance> provenance;  // one entry per result equation

  /// Index of the unique Idempotency equation in result.equations.
  std::size_t idempotency_index() const;
  /// Index of the FrontAbsorption equation for `op`.
  std::optional<std::size_t> front_index(const std::string& op) const;
  /// Index of the InsideAbsorption equation for `op` (absent for constants).
  std::optional<std::size_t> inside_index(const std::string& op) const;
  /// Index of the lifted copy of base equation `i`.
  std::optional<std::size_t> lifted_index(std::size_t i) const;
};

/// Builds (Sigma^s, E^s): a fresh unary symbol (preferring "a", with primes
/// appended on collision) plus the four equation families, in provenance
/// order: idempotency, front absorption per op, inside absorption per op of
/// arity >= 1, then one lifted copy of each base axiom.
SemifreeTheory semifree_theory(const Theory& th, const std::string& preferred_name = "a");

/// Search budgets. Term size counts nodes; node cap bounds the closure
/// universe of the prover.
struct Budget {
  std::size_t max_term_size = 8;
  std::size_t max_nodes = 6000;
};

/// One step of the simplification audit trail.
struct AuditEntry {
  std::string pass;    // "strip-lifted", "eliminate-a", "prune", "note"
  std::string detail;  // human-readable description of the action
};

struct SimplifyResult {
  Theory theory;
  std::vector<AuditEntry> audit;
  /// When a-elimination succeeded: the definition a v = definiens.
  std::optional<Term> a_definiens;
  std::string a_variable = "v";
};

/// Simplifies a generated presentation in three passes:
///  1. lifted axioms with both sides of depth >= 1 drop their a-guards;
///     bare-variable sides become `a v = <stripped other side>`;
///  2. bounded search for an a-free definiens c(v) with E^s |- a v = c(v);
///     on success a is replaced by c everywhere and removed from the
///     signature;
///  3. equations derivable from the remaining ones are pruned, trying
///     last-declared equations first.
/// Budget exhaustion leaves the presentation unsimplified at that pass.
SimplifyResult simplify_presentation(const SemifreeTheory& sf, const Budget& budget = {});

/// n-fold semifree construction with simplification after each round;
/// fresh symbols are drawn from a, b, c, ... in iteration order.
Theory iterate_semifree(const Theory& th, std::size_t n, const Budget& budget = {});

struct ModelBudget {
  std::size_t max_carrier = 3;
  std::uint64_t table_space_cap = 10'000'000;
};

struct EquivalenceEquivalent {
  /// Proofs of t2's axioms from t1.
  std::vector<ProofTree> forward;
  /// Proofs of t1's axioms from t2.
  std::vector<ProofTree> backward;
};

struct EquivalenceInequivalent {
  /// Which side the countermodel satisfies: the model satisfies
  /// `satisfied_theory` and falsifies `failing` from the other theory.
  std::string satisfied_theory;
  Equation failing;
  std::vector<std::size_t> assignment;  // one carrier element per variable
  std::vector<std::string> variables;
  std::shared_ptr<FiniteAlgebra> countermodel;
};

struct EquivalenceUnknown {
  std::string report;
};

using EquivalenceVerdict =
    std::variant<EquivalenceEquivalent, EquivalenceInequivalent, EquivalenceUnknown>;

/// Decides mutual derivability of two presentations over the same signature.
/// Throws std::invalid_argument if the signatures differ.
EquivalenceVerdict presentations_equivalent(const Theory& t1, const Theory& t2,
                                            const Budget& proof_budget = {},
                                            const ModelBudget& model_budget = {});

bool is_equivalent(const EquivalenceVerdict& v);

}  // namespace semifree
