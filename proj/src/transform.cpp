#include "semifree/transform.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "semifree/proof.hpp"

namespace semifree {

std::string Provenance::to_string() const {
  switch (kind) {
    case Idempotency: return "idempotency";
    case FrontAbsorption: return "front-absorption(" + op + ")";
    case InsideAbsorption: return "inside-absorption(" + op + ")";
    case LiftedAxiom: return "lifted-axiom(" + std::to_string(axiom_index) + ")";
  }
  return "?";
}

std::size_t SemifreeTheory::idempotency_index() const {
  for (std::size_t i = 0; i < provenance.size(); ++i) {
    if (provenance[i].kind == Provenance::Idempotency) return i;
  }
  throw std::logic_error("semifree theory without idempotency equation");
}

std::optional<std::size_t> SemifreeTheory::front_index(const std::string& op) const {
  for (std::size_t i = 0; i < provenance.size(); ++i) {
    if (provenance[i].kind == Provenance::FrontAbsorption && provenance[i].op == op) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> SemifreeTheory::inside_index(const std::string& op) const {
  for (std::size_t i = 0; i < provenance.size(); ++i) {
    if (provenance[i].kind == Provenance::InsideAbsorption && provenance[i].op == op) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> SemifreeTheory::lifted_index(std::size_t i) const {
  for (std::size_t k = 0; k < provenance.size(); ++k) {
    if (provenance[k].kind == Provenance::LiftedAxiom && provenance[k].axiom_index == i) return k;
  }
  return std::nullopt;
}

namespace {

std::set<std::string> reserved_names(const Theory& th) {
  std::set<std::string> names;
  for (const auto& sym : th.signature.symbols()) names.insert(sym.name);
  for (const auto& eq : th.equations) {
    for (const auto& v : variables_of(eq.lhs)) names.insert(v);
    for (const auto& v : variables_of(eq.rhs)) names.insert(v);
  }
  return names;
}

/// Schematic variables for an n-ary equation family; avoids names used as
/// operation symbols of the extended signature.
std::vector<Term> family_vars(std::size_t n, const std::set<std::string>& taken) {
  std::vector<std::string> names;
  if (n == 1) names = {"v"};
  else if (n == 2) names = {"u", "v"};
  else if (n == 3) names = {"u", "v", "w"};
  bool clash = names.empty();
  for (const auto& nm : names) {
    if (taken.count(nm)) clash = true;
  }
  if (clash) {
    names.clear();
    for (std::size_t i = 1; i <= n; ++i) {
      std::string nm = "v" + std::to_string(i);
      while (taken.count(nm)) nm += "'";
      names.push_back(nm);
    }
  }
  std::vector<Term> vars;
  for (auto& nm : names) vars.push_back(Term::var(nm));
  return vars;
}

}  // namespace

SemifreeTheory semifree_theory(const Theory& th, const std::string& preferred_name) {
  auto issues = validate_theory(th);
  if (!issues.empty()) {
    throw std::invalid_argument("invalid theory: " + issues.front().location + ": " +
                                issues.front().message);
  }
  std::set<std::string> taken = reserved_names(th);
  std::string fresh = preferred_name;
  while (taken.count(fresh)) fresh += "'";
  taken.insert(fresh);

  SemifreeTheory sf;
  sf.base = th;
  sf.a_symbol = {fresh, 1};
  sf.result.name = th.name + "_s";
  sf.result.signature = th.signature;
  sf.result.signature.add(sf.a_symbol);

  auto wrap_a = [&](Term t) { return Term::app(sf.a_symbol, {std::move(t)}); };

  // Idempotency: a a v = a v.
  {
    Term v = family_vars(1, taken)[0];
    sf.result.equations.push_back({wrap_a(wrap_a(v)), wrap_a(v)});
    sf.provenance.push_back({Provenance::Idempotency, "", 0});
  }
  // Front absorption: a(op(v1..vn)) = op(v1..vn), including constants.
  for (const auto& sym : th.signature.symbols()) {
    std::vector<Term> vars = family_vars(sym.arity, taken);
    Term body = Term::app(sym, vars);
    sf.result.equations.push_back({wrap_a(body), body});
    sf.provenance.push_back({Provenance::FrontAbsorption, sym.name, 0});
  }
  // Inside absorption: op(a v1..a vn) = op(v1..vn); vacuous for constants.
  for (const auto& sym : th.signature.symbols()) {
    if (sym.arity == 0) continue;
    std::vector<Term> vars = family_vars(sym.arity, taken);
    std::vector<Term> guarded;
    for (const auto& v : vars) guarded.push_back(wrap_a(v));
    sf.result.equations.push_back({Term::app(sym, guarded), Term::app(sym, vars)});
    sf.provenance.push_back({Provenance::InsideAbsorption, sym.name, 0});
  }
  // Lifted axioms: t(a v..) = s(a v..).
  for (std::size_t i = 0; i < th.equations.size(); ++i) {
    const Equation& eq = th.equations[i];
    Substitution g;
    for (const auto& v : variables_of(eq.lhs)) g.set(v, wrap_a(Term::var(v)));
    for (const auto& v : variables_of(eq.rhs)) g.set(v, wrap_a(Term::var(v)));
    sf.result.equations.push_back(
        {apply_substitution(eq.lhs, g), apply_substitution(eq.rhs, g)});
    sf.provenance.push_back({Provenance::LiftedAxiom, "", i});
  }
  return sf;
}

// ---------------------------------------------------------------------------
// Simplification.
// ---------------------------------------------------------------------------

namespace {

/// Replaces every subterm a(t) by definiens[defvar := t], bottom-up.
Term eliminate_a(const Term& t, const std::string& a_name, const Term& definiens,
                 const std::string& defvar) {
  if (t.is_variable()) return t;
  std::vector<Term> args;
  for (const auto& arg : t.args()) args.push_back(eliminate_a(arg, a_name, definiens, defvar));
  if (t.head() == a_name && args.size() == 1) {
    Substitution sub;
    sub.set(defvar, args[0]);
    return apply_substitution(definiens, sub);
  }
  return Term::app(t.symbol(), std::move(args));
}

/// Appends op(args) for every argument tuple whose sizes sum to `remaining`,
/// drawing argument candidates from memo by size.
void fill_args(const OperationSymbol& sym, const std::vector<std::vector<Term>>& memo,
               std::size_t remaining, std::vector<Term>& args, std::vector<Term>& out) {
  std::size_t pos = args.size();
  std::size_t slots_left = sym.arity - pos;
  if (slots_left == 0) {
    if (remaining == 0) out.push_back(Term::app(sym, args));
    return;
  }
  // Each remaining slot needs at least one node.
  for (std::size_t sz = 1; sz + (slots_left - 1) <= remaining; ++sz) {
    if (sz >= memo.size()) break;
    for (const Term& t : memo[sz]) {
      args.push_back(t);
      fill_args(sym, memo, remaining - sz, args, out);
      args.pop_back();
    }
  }
}

/// All terms over the signature with variables drawn from {var}, of exactly
/// the given node count, in canonical order. memo[s] caches size-s results
/// and must be filled in increasing size order.
const std::vector<Term>& terms_of_size(const Signature& sig, const std::string& var,
                                       std::size_t size, std::vector<std::vector<Term>>& memo) {
  if (size < memo.size()) return memo[size];
  if (size != memo.size()) throw std::logic_error("terms_of_size must be filled in order");
  std::vector<Term> out;
  if (size == 1) {
    out.push_back(Term::var(var));
    for (const auto& sym : sig.symbols()) {
      if (sym.arity == 0) out.push_back(Term::app(sym));
    }
  } else {
    for (const auto& sym : sig.symbols()) {
      if (sym.arity == 0 || sym.arity > size - 1) continue;
      std::vector<Term> args;
      fill_args(sym, memo, size - 1, args, out);
    }
  }
  std::sort(out.begin(), out.end());
  memo.push_back(std::move(out));
  return memo[size];
}

}  // namespace

SimplifyResult simplify_presentation(const SemifreeTheory& sf, const Budget& budget) {
  SimplifyResult res;
  res.theory = sf.result;
  auto& eqs = res.theory.equations;

  // Pass 1: strip a-guards from lifted axioms per the depth case split.
  for (std::size_t i = 0; i < sf.provenance.size(); ++i) {
    if (sf.provenance[i].kind != Provenance::LiftedAxiom) continue;
    const Equation& base_eq = sf.base.equations[sf.provenance[i].axiom_index];
    const Term& t = base_eq.lhs;
    const Term& s = base_eq.rhs;
    auto guard_var = [&](const Term& v) {
      return Term::app(sf.a_symbol, {Term::var(v.variable_name())});
    };
    if (t.depth() >= 1 && s.depth() >= 1) {
      eqs[i] = base_eq;
      res.audit.push_back({"strip-lifted",
                           "lifted axiom " + std::to_string(sf.provenance[i].axiom_index) +
                               " becomes " + base_eq.to_string()});
    } else if (t.is_variable() && s.is_variable()) {
      eqs[i] = {guard_var(t), guard_var(s)};
      res.audit.push_back({"strip-lifted",
                           "variable-only axiom kept as " + eqs[i].to_string()});
    } else if (t.is_variable() || s.is_variable()) {
      const Term& var_side = t.is_variable() ? t : s;
      const Term& other = t.is_variable() ? s : t;
      eqs[i] = {guard_var(var_side), other};
      res.audit.push_back({"strip-lifted",
                           "lifted axiom " + std::to_string(sf.provenance[i].axiom_index) +
                               " becomes " + eqs[i].to_string()});
    }
  }

  // Pass 2: search for an a-free definiens c(v) with E^s |- a v = c(v).
  {
    const std::string defvar = "v";
    Term av = Term::app(sf.a_symbol, {Term::var(defvar)});
    // Cheap necessary filter: candidates must agree with a on small models.
    std::vector<FiniteAlgebra> filter_models;
    for (std::size_t m = 1; m <= 2; ++m) {
      auto r = enumerate_models(res.theory, m, 1u << 20, false);
      if (auto* ms = std::get_if<std::vector<FiniteAlgebra>>(&r)) {
        for (auto& alg : *ms) filter_models.push_back(std::move(alg));
      }
    }
    std::optional<Term> found;
    std::optional<ProofTree> witness;
    std::vector<std::vector<Term>> memo;
    memo.push_back({});  // size 0: no terms
    for (std::size_t size = 1; size <= budget.max_term_size && !found; ++size) {
      for (const Term& cand : terms_of_size(sf.base.signature, defvar, size, memo)) {
        bool plausible = true;
        for (const auto& alg : filter_models) {
          if (!satisfies(alg, {av, cand})) { plausible = false; break; }
        }
        if (!plausible) continue;
        if (auto proof = prove_bounded(res.theory, av, cand, budget)) {
          found = cand;
          witness = proof;
          break;
        }
      }
    }
    if (found) {
      res.a_definiens = found;
      res.a_variable = defvar;
      res.audit.push_back({"eliminate-a", "a " + defvar + " = " + found->to_string() +
                                              " proved; replacing a everywhere"});
      std::vector<Equation> rewritten;
      for (const auto& eq : eqs) {
        Term l = eliminate_a(eq.lhs, sf.a_symbol.name, *found, defvar);
        Term r = eliminate_a(eq.rhs, sf.a_symbol.name, *found, defvar);
        if (l == r) continue;  // tautology
        rewritten.push_back({l, r});
      }
      // Drop duplicates, keeping first occurrences.
      std::vector<Equation> unique;
      for (const auto& eq : rewritten) {
        bool dup = false;
        for (const auto& seen : unique) {
          if (eq == seen || (eq.lhs == seen.rhs && eq.rhs == seen.lhs)) { dup = true; break; }
        }
        if (!dup) unique.push_back(eq);
      }
      eqs = std::move(unique);
      Signature stripped;
      for (const auto& sym : res.theory.signature.symbols()) {
        if (sym.name != sf.a_symbol.name) stripped.add(sym);
      }
      res.theory.signature = stripped;
      auto issues = validate_theory(res.theory);
      if (!issues.empty()) {
        throw std::logic_error("a-elimination produced an invalid theory: " +
                               issues.front().message);
      }
    } else {
      res.audit.push_back({"eliminate-a",
                           "no a-free definiens of size <= " +
                               std::to_string(budget.max_term_size) + " found; keeping a"});
    }
  }

  // Pass 3: prune equations derivable from the rest, last declared first.
  {
    Theory before_prune = res.theory;
    std::vector<Equation>& current = res.theory.equations;
    for (std::size_t i = current.size(); i-- > 0;) {
      Theory tentative = res.theory;
      tentative.equations.erase(tentative.equations.begin() + static_cast<long>(i));
      if (prove_bounded(tentative, current[i].lhs, current[i].rhs, budget)) {
        res.audit.push_back({"prune", "dropped derivable equation " + current[i].to_string()});
        current.erase(current.begin() + static_cast<long>(i));
      }
    }
    if (current.size() != before_prune.equations.size()) {
      auto verdict = presentations_equivalent(res.theory, before_prune, budget);
      if (!is_equivalent(verdict)) {
        res.audit.push_back({"prune", "equivalence confirmation failed; reverting pass 3"});
        res.theory = before_prune;
      } else {
        res.audit.push_back({"prune", "pruned set confirmed equivalent to unpruned set"});
      }
    }
  }

  return res;
}

Theory iterate_semifree(const Theory& th, std::size_t n, const Budget& budget) {
  if (n < 1) throw std::invalid_argument("iteration count must be at least 1");
  Theory current = th;
  for (std::size_t k = 0; k < n; ++k) {
    std::string preferred(1, static_cast<char>('a' + (k % 26)));
    SemifreeTheory sf = semifree_theory(current, preferred);
    current = simplify_presentation(sf, budget).theory;
  }
  return current;
}

// ---------------------------------------------------------------------------
// Presentation equivalence.
// ---------------------------------------------------------------------------

bool is_equivalent(const EquivalenceVerdict& v) {
  return std::holds_alternative<EquivalenceEquivalent>(v);
}

EquivalenceVerdict presentations_equivalent(const Theory& t1, const Theory& t2,
                                            const Budget& proof_budget,
                                            const ModelBudget& model_budget) {
  auto symbol_set = [](const Theory& th) {
    std::set<std::pair<std::string, std::size_t>> s;
    for (const auto& sym : th.signature.symbols()) s.insert({sym.name, sym.arity});
    return s;
  };
  if (symbol_set(t1) != symbol_set(t2)) {
    throw std::invalid_argument("signature mismatch between '" + t1.name + "' and '" + t2.name +
                                "'");
  }

  EquivalenceEquivalent eq;
  std::vector<std::pair<const Theory*, const Equation*>> unproven;  // (axiom source side)
  bool all_proved = true;
  for (const auto& target : t2.equations) {
    if (auto p = prove_bounded(t1, target.lhs, target.rhs, proof_budget)) {
      eq.forward.push_back(std::move(*p));
    } else {
      all_proved = false;
      unproven.push_back({&t2, &target});
    }
  }
  for (const auto& target : t1.equations) {
    if (auto p = prove_bounded(t2, target.lhs, target.rhs, proof_budget)) {
      eq.backward.push_back(std::move(*p));
    } else {
      all_proved = false;
      unproven.push_back({&t1, &target});
    }
  }
  if (all_proved) return eq;

  // Refutation: a model of one theory falsifying an unproven axiom of the
  // other refutes derivability by soundness.
  for (const auto& [axiom_side, target] : unproven) {
    const Theory& model_side = axiom_side == &t2 ? t1 : t2;
    if (auto cm = find_countermodel(model_side, target->lhs, target->rhs,
                                    model_budget.max_carrier)) {
      EquivalenceInequivalent out;
      out.satisfied_theory = model_side.name;
      out.failing = *target;
      out.variables = cm->variables;
      out.assignment = cm->assignment;
      out.countermodel = std::make_shared<FiniteAlgebra>(std::move(cm->algebra));
      return out;
    }
  }

  std::string report = "undetermined within budget (term size <= " +
                       std::to_string(proof_budget.max_term_size) + ", nodes <= " +
                       std::to_string(proof_budget.max_nodes) + ", countermodel carrier <= " +
                       std::to_string(model_budget.max_carrier) + "); unproven:";
  for (const auto& [side, target] : unproven) {
    report += " [" + side->name + "] " + target->to_string() + ";";
  }
  return EquivalenceUnknown{report};
}

}  // namespace semifree
