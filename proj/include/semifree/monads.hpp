#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semifree/term.hpp"
#include "semifree/value.hpp"

namespace semifree {

/// Identifies a built-in finitary monad (or a free monad on an arbitrary
/// theory, handled separately via FreeAlgebraStructure).
struct MonadId {
  enum class Kind { Identity, Exception, List, Multiset, FiniteSet, State, WriterMin, FreeGeneric };
  Kind kind = Kind::Identity;
  std::vector<std::string> labels;          // Exception
  std::size_t n = 1;                        // State / WriterMin parameter
  std::shared_ptr<const Theory> generic;    // FreeGeneric
  std::size_t generic_bound = 0;

  static MonadId identity() { return {Kind::Identity, {}, 1, nullptr, 0}; }
  static MonadId exception(std::vector<std::string> labels);
  static MonadId list() { return {Kind::List, {}, 1, nullptr, 0}; }
  static MonadId multiset() { return {Kind::Multiset, {}, 1, nullptr, 0}; }
  static MonadId finite_set() { return {Kind::FiniteSet, {}, 1, nullptr, 0}; }
  static MonadId state(std::size_t n);
  static MonadId writer_min(std::size_t n);
  static MonadId free_generic(Theory th, std::size_t bound);

  /// Whether MX is finite for finite X (so enumeration is exhaustive).
  bool finite() const {
    return kind == Kind::Identity || kind == Kind::Exception || kind == Kind::FiniteSet ||
           kind == Kind::State || kind == Kind::WriterMin;
  }

  std::string name() const;

  /// The canonical presenting theory of the monad.
  Theory base_theory() const;
};

/// Parses monad names of the CLI form: identity, exception:K=k1,k2, list,
/// multiset, finiteset, state:n=2, writermin:n=3.
std::optional<MonadId> parse_monad_name(const std::string& text);

using ElementFn = std::function<Value(const Value&)>;

/// Unit: the canonical singleton embedding.
Value eta(const MonadId& m, const Value& x);

/// Multiplication: flattens an M-value whose elements are M-values.
Value mu(const MonadId& m, const Value& v);

/// Functor action; renormalizes (multiset multiplicities merge, sets dedup).
Value fmap(const MonadId& m, const ElementFn& f, const Value& v);

/// Interpretation of a base-theory operation symbol on M-values: the free
/// algebra structure of MX.
Value interpret_op(const MonadId& m, const OperationSymbol& op, const std::vector<Value>& args);

/// Complete normalizer: evaluates a base-theory term into the monad, with
/// variables embedded by eta. Two terms normalize equally iff they are
/// provably equal from the presenting equations.
Value normalize(const MonadId& m, const Term& t, const std::map<std::string, Value>& vars);

// --- semifree structure (Def: M^s = Id + M, eta^s = inl,
//     mu^s = [id, inr . mu . M[eta, id]]) ---

Value semifree_eta(const Value& x);

/// The cotuple [eta, id]: Pure x -> eta x, Wrapped u -> u.
Value coerce_semifree(const MonadId& m, const Value& sv);

/// mu^s on a semifree value over semifree values.
Value semifree_mu(const MonadId& m, const Value& vv);

Value semifree_fmap(const MonadId& m, const ElementFn& f, const Value& v);

/// Evaluates a term over the semifree signature into X + MX; variables map
/// through `vars` (typically to atoms). `a_name` is the fresh unary symbol.
Value evaluate_semifree_term(const MonadId& m, const std::string& a_name, const Term& t,
                             const std::map<std::string, Value>& vars);

// --- enumeration ---

/// All M-values over the element pool. Exhaustive for finite monads (the
/// bound is ignored); for List/Multiset, all values of weight_measure()
/// <= bound.
std::vector<Value> enumerate_monad_values(const MonadId& m, const std::vector<Value>& pool,
                                          std::size_t bound);

/// Streaming variant for large spaces; the callback returns false to stop.
void for_each_monad_value(const MonadId& m, const std::vector<Value>& pool, std::size_t bound,
                          const std::function<bool(const Value&)>& fn);

/// X + MX over the pool: all Pure(p) then all Wrapped(u).
std::vector<Value> enumerate_semifree_values(const MonadId& m, const std::vector<Value>& pool,
                                             std::size_t bound);

struct LawFailure {
  std::string law;
  std::string element;
};

struct LawReport {
  std::string monad;
  std::size_t checked = 0;
  std::vector<LawFailure> failures;
  bool pass() const { return failures.empty(); }
};

/// Element-wise verification of both unit laws and associativity for
/// (eta, mu) and for the semifree structure (eta^s, mu^s), over values
/// bounded by `bound` (exhaustive for finite monads).
LawReport check_monad_laws(const MonadId& m, std::size_t set_size, std::size_t bound);

/// Hook for the harness self-test: same checks with a corrupted mu.
LawReport check_monad_laws_with(const MonadId& m, std::size_t set_size, std::size_t bound,
                                const std::function<Value(const Value&)>& mu_override);

// --- bounded free algebra on an arbitrary theory ---

struct FreeAlgebraStructure {
  Theory theory;
  std::vector<std::string> generators;
  std::size_t bound = 0;
  /// Canonical representative per class, sorted by canonical term order.
  /// Documented under-approximation: classes distinct here may be provably
  /// equal via terms beyond the bound.
  std::vector<Term> representatives;

  std::optional<std::size_t> class_of(const Term& t) const;
  std::size_t eta(const std::string& generator) const;
  /// Interpretation of op on classes: class of op(rep1..repn).
  std::optional<std::size_t> apply(const OperationSymbol& op,
                                   const std::vector<std::size_t>& classes) const;
  /// Flattening: substitutes representatives for the class-indexed variables
  /// "#k" in t and renormalizes.
  std::optional<std::size_t> mu(const Term& t) const;

  std::map<Term, std::size_t> class_index;  // every universe term -> class
};

/// Bounded congruence closure over all terms of size <= bound on the given
/// generators.
FreeAlgebraStructure free_algebra(const Theory& th, const std::vector<std::string>& generators,
                                  std::size_t bound);

}  // namespace semifree
