#include "semifree/proof.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "semifree/dsl.hpp"

namespace semifree {

ProofTree ProofTree::axiom(std::size_t equation_index) {
  auto node = std::make_shared<Node>();
  node->rule = Rule::Axiom;
  node->axiom_index = equation_index;
  return ProofTree(std::move(node));
}

ProofTree ProofTree::reflexivity(Term t) {
  auto node = std::make_shared<Node>();
  node->rule = Rule::Reflexivity;
  node->term = std::move(t);
  return ProofTree(std::move(node));
}

ProofTree ProofTree::symmetry(ProofTree p) {
  auto node = std::make_shared<Node>();
  node->rule = Rule::Symmetry;
  node->children.push_back(std::move(p));
  return ProofTree(std::move(node));
}

ProofTree ProofTree::transitivity(ProofTree p1, ProofTree p2) {
  auto node = std::make_shared<Node>();
  node->rule = Rule::Transitivity;
  node->children.push_back(std::move(p1));
  node->children.push_back(std::move(p2));
  return ProofTree(std::move(node));
}

ProofTree ProofTree::congruence(OperationSymbol op, std::vector<ProofTree> premises) {
  auto node = std::make_shared<Node>();
  node->rule = Rule::Congruence;
  node->op = std::move(op);
  node->children = std::move(premises);
  return ProofTree(std::move(node));
}

ProofTree ProofTree::substitution(ProofTree p, Substitution f) {
  auto node = std::make_shared<Node>();
  node->rule = Rule::Substitution;
  node->subst = std::move(f);
  node->children.push_back(std::move(p));
  return ProofTree(std::move(node));
}

std::size_t ProofTree::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.node_count();
  return n;
}

namespace {

std::variant<Judgment, ProofError> check_at(const Theory& th, const ProofTree& p,
                                            const std::string& path) {
  switch (p.rule()) {
    case ProofTree::Rule::Axiom: {
      if (p.axiom_index() >= th.equations.size()) {
        return ProofError{path, "axiom index " + std::to_string(p.axiom_index()) +
                                    " out of range (theory has " +
                                    std::to_string(th.equations.size()) + " equations)"};
      }
      const Equation& eq = th.equations[p.axiom_index()];
      return Judgment{eq.lhs, eq.rhs};
    }
    case ProofTree::Rule::Reflexivity: {
      if (auto err = check_term(p.term(), th.signature)) return ProofError{path, *err};
      return Judgment{p.term(), p.term()};
    }
    case ProofTree::Rule::Symmetry: {
      auto j = check_at(th, p.children()[0], path + ".0");
      if (auto* err = std::get_if<ProofError>(&j)) return *err;
      auto& jj = std::get<Judgment>(j);
      return Judgment{jj.rhs, jj.lhs};
    }
    case ProofTree::Rule::Transitivity: {
      auto j1 = check_at(th, p.children()[0], path + ".0");
      if (auto* err = std::get_if<ProofError>(&j1)) return *err;
      auto j2 = check_at(th, p.children()[1], path + ".1");
      if (auto* err = std::get_if<ProofError>(&j2)) return *err;
      auto& a = std::get<Judgment>(j1);
      auto& b = std::get<Judgment>(j2);
      if (!(a.rhs == b.lhs)) {
        return ProofError{path, "transitivity midpoint mismatch: '" + a.rhs.to_string() +
                                    "' vs '" + b.lhs.to_string() + "'"};
      }
      return Judgment{a.lhs, b.rhs};
    }
    case ProofTree::Rule::Congruence: {
      const OperationSymbol* sym = th.signature.find(p.op().name);
      if (!sym) return ProofError{path, "unknown operation symbol '" + p.op().name + "'"};
      if (p.children().size() != sym->arity) {
        return ProofError{path, "congruence premise count " +
                                    std::to_string(p.children().size()) +
                                    " does not match arity " + std::to_string(sym->arity) +
                                    " of '" + sym->name + "'"};
      }
      std::vector<Term> lhs_args, rhs_args;
      for (std::size_t i = 0; i < p.children().size(); ++i) {
        auto j = check_at(th, p.children()[i], path + "." + std::to_string(i));
        if (auto* err = std::get_if<ProofError>(&j)) return *err;
        auto& jj = std::get<Judgment>(j);
        lhs_args.push_back(jj.lhs);
        rhs_args.push_back(jj.rhs);
      }
      return Judgment{Term::app(*sym, std::move(lhs_args)), Term::app(*sym, std::move(rhs_args))};
    }
    case ProofTree::Rule::Substitution: {
      for (const auto& [v, img] : p.subst().mapping()) {
        if (auto err = check_term(img, th.signature)) {
          return ProofError{path, "substitution image for '" + v + "': " + *err};
        }
      }
      auto j = check_at(th, p.children()[0], path + ".0");
      if (auto* err = std::get_if<ProofError>(&j)) return *err;
      auto& jj = std::get<Judgment>(j);
      return Judgment{apply_substitution(jj.lhs, p.subst()),
                      apply_substitution(jj.rhs, p.subst())};
    }
  }
  return ProofError{path, "corrupt proof node"};
}

}  // namespace

std::variant<Judgment, ProofError> check_proof(const Theory& th, const ProofTree& p) {
  return check_at(th, p, "root");
}

// ---------------------------------------------------------------------------
// Constructive builders for the absorption lemmas and proof lifting.
// ---------------------------------------------------------------------------

namespace {

/// Substitution prefixing `a` to every variable of t.
Substitution a_guard_substitution(const SemifreeTheory& sf, const Term& t) {
  Substitution g;
  for (const auto& v : variables_of(t)) {
    g.set(v, Term::app(sf.a_symbol, {Term::var(v)}));
  }
  return g;
}

Term a_guard(const SemifreeTheory& sf, const Term& t) {
  return apply_substitution(t, a_guard_substitution(sf, t));
}

/// Axiom instantiated so that its schematic variables map to the given
/// argument terms; collapses to the bare axiom when the mapping is identity.
ProofTree instantiate_axiom(const Theory& th, std::size_t axiom_index,
                            std::span<const Term> schematic_args,
                            std::span<const Term> actual_args) {
  Substitution theta;
  bool identity = true;
  for (std::size_t i = 0; i < schematic_args.size(); ++i) {
    const std::string& v = schematic_args[i].variable_name();
    theta.set(v, actual_args[i]);
    if (!(actual_args[i].is_variable() && actual_args[i].variable_name() == v)) identity = false;
  }
  (void)th;
  ProofTree ax = ProofTree::axiom(axiom_index);
  if (identity) return ax;
  return ProofTree::substitution(std::move(ax), std::move(theta));
}

}  // namespace

ProofTree proof_a_front(const SemifreeTheory& sf, const Term& t) {
  if (t.depth() < 1) {
    throw std::invalid_argument("proof_a_front requires a term of depth at least 1");
  }
  auto idx = sf.front_index(t.head());
  if (!idx) {
    throw std::invalid_argument("no front-absorption axiom for symbol '" + t.head() + "'");
  }
  // Axiom: a(op(v1..vn)) = op(v1..vn); instantiate vi -> args of t.
  const Equation& ax = sf.result.equations[*idx];
  std::span<const Term> schematic = ax.rhs.args();
  return instantiate_axiom(sf.result, *idx, schematic, t.args());
}

ProofTree proof_a_inside(const SemifreeTheory& sf, const Term& t) {
  if (t.depth() < 1) {
    throw std::invalid_argument("proof_a_inside requires a term of depth at least 1");
  }
  if (variables_of(t).empty()) return ProofTree::reflexivity(t);

  const OperationSymbol op = t.symbol();
  std::span<const Term> args = t.args();

  bool all_variables = true;
  bool any_variable = false;
  for (const auto& a : args) {
    if (a.is_variable()) {
      any_variable = true;
    } else {
      all_variables = false;
    }
  }

  if (all_variables) {
    auto idx = sf.inside_index(op.name);
    if (!idx) throw std::invalid_argument("no inside-absorption axiom for '" + op.name + "'");
    const Equation& ax = sf.result.equations[*idx];
    return instantiate_axiom(sf.result, *idx, ax.rhs.args(), args);
  }

  // Mixed case, following the inductive construction. Write t = op(s1..sm);
  // step 1 rewrites the guarded arguments of complex subterms, then the
  // inside-absorption axiom is applied twice around an idempotency fix-up
  // at the variable positions.
  std::vector<ProofTree> step1_kids;
  for (const auto& s : args) {
    if (s.is_variable()) {
      step1_kids.push_back(ProofTree::reflexivity(a_guard(sf, s)));
    } else {
      step1_kids.push_back(proof_a_inside(sf, s));
    }
  }
  ProofTree p1 = ProofTree::congruence(op, std::move(step1_kids));
  // p1 : t[a v / v] = op(r1..rm), with ri = si for complex si, ri = a wi for
  // variables.

  if (!any_variable) return p1;  // already at op(s1..sm) = t

  auto inside_idx = sf.inside_index(op.name);
  if (!inside_idx) throw std::invalid_argument("no inside-absorption axiom for '" + op.name + "'");
  const Equation& inside_ax = sf.result.equations[*inside_idx];
  std::span<const Term> schematic = inside_ax.rhs.args();

  // p2 : op(a q1 .. a qm) = op(q1..qm) with qi = si (complex) or a wi (var);
  // note op(q1..qm) equals the right side of p1.
  std::vector<Term> q;
  for (const auto& s : args) q.push_back(s.is_variable() ? a_guard(sf, s) : s);
  ProofTree p2 = instantiate_axiom(sf.result, *inside_idx, schematic, q);

  // p3 : op(a s.. a a w..) = op(a s.. a w..) via idempotency at variable
  // positions.
  std::size_t idem = sf.idempotency_index();
  const Equation& idem_ax = sf.result.equations[idem];
  const std::string idem_var = idem_ax.rhs.args()[0].variable_name();
  std::vector<ProofTree> step3_kids;
  for (const auto& s : args) {
    if (s.is_variable()) {
      Substitution theta;
      theta.set(idem_var, s);
      bool identity = s.variable_name() == idem_var;
      ProofTree ax = ProofTree::axiom(idem);
      step3_kids.push_back(identity ? std::move(ax)
                                    : ProofTree::substitution(std::move(ax), std::move(theta)));
    } else {
      step3_kids.push_back(ProofTree::reflexivity(Term::app(sf.a_symbol, {s})));
    }
  }
  ProofTree p3 = ProofTree::congruence(op, std::move(step3_kids));

  // p4 : op(a s.. a w..) = op(s.. w..) = t.
  ProofTree p4 = instantiate_axiom(sf.result, *inside_idx, schematic,
                                   std::vector<Term>(args.begin(), args.end()));

  return ProofTree::transitivity(
      std::move(p1), ProofTree::transitivity(ProofTree::symmetry(std::move(p2)),
                                             ProofTree::transitivity(std::move(p3),
                                                                     std::move(p4))));
}

namespace {

ProofTree lift_rec(const SemifreeTheory& sf, const ProofTree& p) {
  switch (p.rule()) {
    case ProofTree::Rule::Axiom: {
      auto idx = sf.lifted_index(p.axiom_index());
      if (!idx) {
        throw std::invalid_argument("axiom index " + std::to_string(p.axiom_index()) +
                                    " has no lifted counterpart");
      }
      return ProofTree::axiom(*idx);
    }
    case ProofTree::Rule::Reflexivity:
      return ProofTree::reflexivity(a_guard(sf, p.term()));
    case ProofTree::Rule::Symmetry:
      return ProofTree::symmetry(lift_rec(sf, p.children()[0]));
    case ProofTree::Rule::Transitivity:
      return ProofTree::transitivity(lift_rec(sf, p.children()[0]),
                                     lift_rec(sf, p.children()[1]));
    case ProofTree::Rule::Congruence: {
      std::vector<ProofTree> kids;
      for (const auto& c : p.children()) kids.push_back(lift_rec(sf, c));
      return ProofTree::congruence(p.op(), std::move(kids));
    }
    case ProofTree::Rule::Substitution: {
      auto jr = check_proof(sf.base, p.children()[0]);
      if (auto* err = std::get_if<ProofError>(&jr)) {
        throw std::invalid_argument("unjudgeable subtree: " + err->to_string());
      }
      const Judgment j = std::get<Judgment>(jr);

      // Collect the judgment variables and build g: variables with complex
      // images get the image with every variable a-guarded; variable images
      // (and unmapped variables) get a single a-guard.
      std::vector<std::string> vars = variables_of(j.lhs);
      for (const auto& v : variables_of(j.rhs)) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      }
      Substitution g;
      for (const auto& v : vars) {
        const Term* img = p.subst().lookup(v);
        Term image = img ? *img : Term::var(v);
        g.set(v, image.is_variable()
                     ? Term::app(sf.a_symbol, {Term::var(image.variable_name())})
                     : a_guard(sf, image));
      }

      // Part (ii): the lifted premise under g.
      ProofTree part2 = ProofTree::substitution(lift_rec(sf, p.children()[0]), g);

      std::size_t idem = sf.idempotency_index();
      const std::string idem_var =
          sf.result.equations[idem].rhs.args()[0].variable_name();

      // Builds a proof of  t0[g] = t0[a gv / v]  by the appendix case split.
      auto adjust = [&](const Term& t0) -> ProofTree {
        if (t0.is_variable()) {
          const Term* img = p.subst().lookup(t0.variable_name());
          Term image = img ? *img : t0;
          if (image.is_variable()) {
            // a w = a a w, the reversed idempotency instance.
            Substitution theta;
            theta.set(idem_var, Term::var(image.variable_name()));
            ProofTree ax = ProofTree::axiom(idem);
            ProofTree inst = image.variable_name() == idem_var
                                 ? std::move(ax)
                                 : ProofTree::substitution(std::move(ax), std::move(theta));
            return ProofTree::symmetry(std::move(inst));
          }
          // g v is complex: g v = a (g v), reversed front absorption.
          const Term* gv = g.lookup(t0.variable_name());
          return ProofTree::symmetry(proof_a_front(sf, *gv));
        }
        // Complex t0: t0(v..) = t0(a v..) reversed, then substituted by g.
        ProofTree inside = ProofTree::symmetry(proof_a_inside(sf, t0));
        if (variables_of(t0).empty()) return inside;  // both sides equal t0
        return ProofTree::substitution(std::move(inside), g);
      };

      ProofTree part1 = adjust(j.lhs);
      ProofTree part3 = adjust(j.rhs);
      return ProofTree::transitivity(
          std::move(part1),
          ProofTree::transitivity(std::move(part2), ProofTree::symmetry(std::move(part3))));
    }
  }
  throw std::logic_error("corrupt proof node");
}

}  // namespace

ProofTree lift_proof(const SemifreeTheory& sf, const ProofTree& p) {
  auto jr = check_proof(sf.base, p);
  if (auto* err = std::get_if<ProofError>(&jr)) {
    throw std::invalid_argument("input proof does not check: " + err->to_string());
  }
  return lift_rec(sf, p);
}

// ---------------------------------------------------------------------------
// Bounded proof search: congruence closure with a proof forest.
// ---------------------------------------------------------------------------

namespace {

/// Tries to match a pattern (whose variables are schematic) against a
/// subject term, extending theta. Purely syntactic.
bool match_term(const Term& pattern, const Term& subject, Substitution& theta) {
  if (pattern.is_variable()) {
    if (const Term* bound = theta.lookup(pattern.variable_name())) {
      return *bound == subject;
    }
    theta.set(pattern.variable_name(), subject);
    return true;
  }
  if (subject.is_variable() || pattern.head() != subject.head() ||
      pattern.args().size() != subject.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!match_term(pattern.args()[i], subject.args()[i], theta)) return false;
  }
  return true;
}

class ClosureProver {
 public:
  ClosureProver(const Theory& th, const Budget& budget) : theory_(th), budget_(budget) {}

  std::optional<ProofTree> prove(const Term& s, const Term& t) {
    std::size_t sid = add_term(s);
    std::size_t tid = add_term(t);
    if (find(sid) == find(tid)) return reconstruct(sid, tid);

    for (std::size_t round = 0; round < kMaxRounds; ++round) {
      bool progress = saturate_round();
      if (find(sid) == find(tid)) return reconstruct(sid, tid);
      if (!progress || terms_.size() >= budget_.max_nodes) break;
    }
    if (find(sid) == find(tid)) return reconstruct(sid, tid);
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kMaxRounds = 24;

  struct Reason {
    enum Kind { AxiomInstance, Congruent } kind;
    std::size_t axiom = 0;
    Substitution theta;
    bool forward = true;  // axiom: lhs[theta] is the edge's child end
    std::vector<std::pair<std::size_t, std::size_t>> arg_pairs;  // congruence
  };

  std::size_t find(std::size_t x) {
    while (uf_parent_[x] != x) {
      uf_parent_[x] = uf_parent_[uf_parent_[x]];
      x = uf_parent_[x];
    }
    return x;
  }

  std::size_t add_term(const Term& t) {
    auto it = ids_.find(t);
    if (it != ids_.end()) return it->second;
    std::vector<std::size_t> kids;
    for (const auto& a : t.args()) kids.push_back(add_term(a));
    std::size_t id = terms_.size();
    terms_.push_back(t);
    ids_.emplace(t, id);
    children_.push_back(kids);
    uf_parent_.push_back(id);
    forest_parent_.push_back(id);
    forest_reason_.push_back({});
    use_lists_.push_back({});
    if (!t.is_variable()) {
      for (std::size_t k : kids) use_lists_[find(k)].push_back(id);
      check_congruence_of(id);
    }
    return id;
  }

  std::vector<std::size_t> signature_of(std::size_t app_id) {
    std::vector<std::size_t> sig;
    sig.reserve(children_[app_id].size());
    for (std::size_t k : children_[app_id]) sig.push_back(find(k));
    return sig;
  }

  /// Merges app_id with an existing application that has the same head and
  /// congruent arguments, if any; otherwise registers its signature.
  void check_congruence_of(std::size_t app_id) {
    auto key = std::make_pair(terms_[app_id].head(), signature_of(app_id));
    auto [it, inserted] = sig_table_.emplace(key, app_id);
    if (!inserted && find(it->second) != find(app_id)) {
      std::size_t other = it->second;
      Reason r;
      r.kind = Reason::Congruent;
      for (std::size_t i = 0; i < children_[app_id].size(); ++i) {
        r.arg_pairs.push_back({children_[app_id][i], children_[other][i]});
      }
      merge(app_id, other, std::move(r));
    }
  }

  /// Reverses the proof-forest path from x to its root, making x the root.
  void reroot(std::size_t x) {
    std::size_t prev = x;
    std::size_t cur = forest_parent_[x];
    Reason carried = forest_reason_[x];
    forest_parent_[x] = x;
    while (cur != prev) {
      std::size_t next = forest_parent_[cur];
      Reason next_reason = forest_reason_[cur];
      forest_parent_[cur] = prev;
      Reason flipped = carried;
      flipped.forward = !flipped.forward;
      if (flipped.kind == Reason::Congruent) {
        for (auto& [a, b] : flipped.arg_pairs) std::swap(a, b);
      }
      forest_reason_[cur] = flipped;
      prev = cur;
      carried = next_reason;
      cur = next;
    }
  }

  void merge(std::size_t u, std::size_t v, Reason reason) {
    std::size_t ru = find(u);
    std::size_t rv = find(v);
    if (ru == rv) return;
    reroot(u);
    forest_parent_[u] = v;
    forest_reason_[u] = std::move(reason);
    // Union by size on the class structure.
    uf_parent_[ru] = rv;
    // Re-examine applications that used members of the old class.
    std::vector<std::size_t> moved = std::move(use_lists_[ru]);
    use_lists_[ru].clear();
    for (std::size_t app : moved) use_lists_[rv].push_back(app);
    std::vector<std::size_t> pending = use_lists_[rv];
    for (std::size_t app : pending) check_congruence_of(app);
  }

  bool saturate_round() {
    std::size_t snapshot = terms_.size();
    bool progress = false;
    for (std::size_t ax = 0; ax < theory_.equations.size(); ++ax) {
      const Equation& eq = theory_.equations[ax];
      for (int dir = 0; dir < 2; ++dir) {
        const Term& from = dir == 0 ? eq.lhs : eq.rhs;
        const Term& to = dir == 0 ? eq.rhs : eq.lhs;
        for (std::size_t id = 0; id < snapshot; ++id) {
          if (terms_.size() >= budget_.max_nodes) return progress;
          Substitution theta;
          if (!match_term(from, terms_[id], theta)) continue;
          // Bind any variables of `to` missing from theta to themselves;
          // a plain variable image keeps the instance well formed.
          for (const auto& v : variables_of(to)) {
            if (!theta.lookup(v)) theta.set(v, Term::var(v));
          }
          Term image = apply_substitution(to, theta);
          if (image.size() > budget_.max_term_size) continue;
          std::size_t image_id = add_term(image);
          if (find(id) == find(image_id)) continue;
          Reason r;
          r.kind = Reason::AxiomInstance;
          r.axiom = ax;
          r.theta = theta;
          r.forward = dir == 0;  // lhs[theta] sits at the `from` end
          merge(id, image_id, std::move(r));
          progress = true;
        }
      }
    }
    return progress || terms_.size() > snapshot;
  }

  /// Proof that terms_[x] = terms_[parent(x)] following one forest edge.
  ProofTree edge_proof(std::size_t x) {
    const Reason& r = forest_reason_[x];
    if (r.kind == Reason::AxiomInstance) {
      ProofTree ax = ProofTree::axiom(r.axiom);
      ProofTree inst = r.theta.empty() ? std::move(ax)
                                       : ProofTree::substitution(std::move(ax), r.theta);
      // forward: proves lhs[theta] = rhs[theta] with x at the lhs end.
      return r.forward ? inst : ProofTree::symmetry(std::move(inst));
    }
    std::vector<ProofTree> kids;
    for (const auto& [a, b] : r.arg_pairs) kids.push_back(reconstruct(a, b));
    return ProofTree::congruence(terms_[x].symbol(), std::move(kids));
  }

  ProofTree reconstruct(std::size_t u, std::size_t v) {
    if (u == v) return ProofTree::reflexivity(terms_[u]);
    // Collect both root paths and find the nearest common ancestor.
    std::vector<std::size_t> pu{u};
    while (forest_parent_[pu.back()] != pu.back()) pu.push_back(forest_parent_[pu.back()]);
    std::vector<std::size_t> pv{v};
    while (forest_parent_[pv.back()] != pv.back()) pv.push_back(forest_parent_[pv.back()]);
    std::size_t iu = pu.size();
    std::size_t iv = pv.size();
    while (iu > 0 && iv > 0 && pu[iu - 1] == pv[iv - 1]) {
      --iu;
      --iv;
    }
    // pu[0..iu] reaches the common ancestor pu[iu]; likewise pv[0..iv].
    std::optional<ProofTree> acc;
    for (std::size_t i = 0; i < iu; ++i) {
      ProofTree step = edge_proof(pu[i]);
      acc = acc ? ProofTree::transitivity(std::move(*acc), std::move(step)) : std::move(step);
    }
    for (std::size_t i = iv; i-- > 0;) {
      ProofTree step = ProofTree::symmetry(edge_proof(pv[i]));
      acc = acc ? ProofTree::transitivity(std::move(*acc), std::move(step)) : std::move(step);
    }
    return *acc;
  }

  const Theory& theory_;
  Budget budget_;
  std::vector<Term> terms_;
  std::map<Term, std::size_t> ids_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> uf_parent_;
  std::vector<std::size_t> forest_parent_;
  std::vector<Reason> forest_reason_;
  std::vector<std::vector<std::size_t>> use_lists_;
  std::map<std::pair<std::string, std::vector<std::size_t>>, std::size_t> sig_table_;
};

}  // namespace

std::optional<ProofTree> prove_bounded(const Theory& th, const Term& s, const Term& t,
                                       const Budget& budget) {
  if (auto err = check_term(s, th.signature)) throw std::invalid_argument(*err);
  if (auto err = check_term(t, th.signature)) throw std::invalid_argument(*err);
  ClosureProver prover(th, budget);
  auto proof = prover.prove(s, t);
  if (!proof) return std::nullopt;
  auto j = check_proof(th, *proof);
  if (auto* err = std::get_if<ProofError>(&j)) {
    throw std::logic_error("reconstructed proof failed to check: " + err->to_string());
  }
  const auto& jj = std::get<Judgment>(j);
  if (!(jj.lhs == s && jj.rhs == t)) {
    throw std::logic_error("reconstructed proof has judgment " + jj.to_string() +
                           " instead of " + s.to_string() + " = " + t.to_string());
  }
  return proof;
}

std::optional<Countermodel> find_countermodel(const Theory& th, const Term& s, const Term& t,
                                              std::size_t max_carrier) {
  if (max_carrier < 1) throw std::invalid_argument("max_carrier must be at least 1");
  Equation goal{s, t};
  for (std::size_t m = 1; m <= max_carrier; ++m) {
    auto models = enumerate_models(th, m, 0, /*allow_large=*/true);
    for (const auto& alg : std::get<std::vector<FiniteAlgebra>>(models)) {
      if (auto sigma = falsifying_assignment(alg, goal)) {
        return Countermodel{alg, sigma->variables, sigma->values};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Proof JSON encoding.
// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json proof_json(const ProofTree& p) {
  nlohmann::ordered_json j;
  switch (p.rule()) {
    case ProofTree::Rule::Axiom:
      j["rule"] = "axiom";
      j["axiom"] = p.axiom_index();
      break;
    case ProofTree::Rule::Reflexivity:
      j["rule"] = "refl";
      j["term"] = p.term().to_string();
      break;
    case ProofTree::Rule::Symmetry:
      j["rule"] = "sym";
      break;
    case ProofTree::Rule::Transitivity:
      j["rule"] = "trans";
      break;
    case ProofTree::Rule::Congruence:
      j["rule"] = "cong";
      j["op"] = p.op().name;
      break;
    case ProofTree::Rule::Substitution: {
      j["rule"] = "subst";
      nlohmann::ordered_json sub = nlohmann::ordered_json::object();
      for (const auto& [v, img] : p.subst().mapping()) sub[v] = img.to_string();
      j["subst"] = sub;
      break;
    }
  }
  if (!p.children().empty()) {
    nlohmann::ordered_json kids = nlohmann::ordered_json::array();
    for (const auto& c : p.children()) kids.push_back(proof_json(c));
    j["children"] = kids;
  }
  return j;
}

std::variant<ProofTree, std::string> proof_parse(const nlohmann::json& j, const Signature& sig) {
  if (!j.is_object() || !j.contains("rule") || !j["rule"].is_string()) {
    return std::string("proof node must be an object with a 'rule' field");
  }
  std::string rule = j["rule"];
  std::vector<ProofTree> kids;
  if (j.contains("children")) {
    if (!j["children"].is_array()) return std::string("'children' must be an array");
    for (const auto& c : j["children"]) {
      auto sub = proof_parse(c, sig);
      if (auto* err = std::get_if<std::string>(&sub)) return *err;
      kids.push_back(std::get<ProofTree>(sub));
    }
  }
  if (rule == "axiom") {
    if (!j.contains("axiom") || !j["axiom"].is_number_unsigned()) {
      return std::string("axiom node needs an unsigned 'axiom' index");
    }
    return ProofTree::axiom(j["axiom"].get<std::size_t>());
  }
  if (rule == "refl") {
    if (!j.contains("term") || !j["term"].is_string()) {
      return std::string("refl node needs a 'term' string");
    }
    auto t = parse_term(j["term"].get<std::string>(), sig);
    if (auto* err = std::get_if<ParseError>(&t)) return err->to_string();
    return ProofTree::reflexivity(std::get<Term>(t));
  }
  if (rule == "sym") {
    if (kids.size() != 1) return std::string("sym node needs exactly one child");
    return ProofTree::symmetry(kids[0]);
  }
  if (rule == "trans") {
    if (kids.size() != 2) return std::string("trans node needs exactly two children");
    return ProofTree::transitivity(kids[0], kids[1]);
  }
  if (rule == "cong") {
    if (!j.contains("op") || !j["op"].is_string()) {
      return std::string("cong node needs an 'op' string");
    }
    const OperationSymbol* sym = sig.find(j["op"].get<std::string>());
    if (!sym) return "unknown operation symbol '" + j["op"].get<std::string>() + "'";
    return ProofTree::congruence(*sym, std::move(kids));
  }
  if (rule == "subst") {
    if (kids.size() != 1) return std::string("subst node needs exactly one child");
    if (!j.contains("subst") || !j["subst"].is_object()) {
      return std::string("subst node needs a 'subst' object");
    }
    Substitution f;
    for (const auto& [v, img] : j["subst"].items()) {
      if (!img.is_string()) return std::string("substitution images must be strings");
      auto t = parse_term(img.get<std::string>(), sig);
      if (auto* err = std::get_if<ParseError>(&t)) return err->to_string();
      f.set(v, std::get<Term>(t));
    }
    return ProofTree::substitution(kids[0], std::move(f));
  }
  return "unknown proof rule '" + rule + "'";
}

}  // namespace

std::string proof_to_json(const ProofTree& p) { return proof_json(p).dump(2); }

std::variant<ProofTree, std::string> proof_from_json(const std::string& json_text,
                                                     const Signature& sig) {
  auto j = nlohmann::json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return std::string("invalid JSON");
  return proof_parse(j, sig);
}

}  // namespace semifree
