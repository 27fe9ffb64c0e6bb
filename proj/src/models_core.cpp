#include "semifree/models_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semifree {

const std::vector<std::size_t>& FiniteAlgebra::table(const std::string& op) const {
  for (std::size_t i = 0; i < signature.symbols().size(); ++i) {
    if (signature.symbols()[i].name == op) return tables[i];
  }
  throw std::invalid_argument("unknown operation symbol '" + op + "'");
}

std::size_t FiniteAlgebra::apply(std::size_t op_index, const std::vector<std::size_t>& args) const {
  std::size_t idx = 0;
  for (std::size_t a : args) idx = idx * carrier_size + a;
  return tables[op_index][idx];
}

std::optional<std::size_t> VarAssignment::value_of(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == name) return values[i];
  }
  return std::nullopt;
}

std::size_t interpret(const FiniteAlgebra& alg, const Term& t, const VarAssignment& sigma) {
  if (t.is_variable()) {
    auto v = sigma.value_of(t.variable_name());
    if (!v) throw std::invalid_argument("unassigned variable '" + t.variable_name() + "'");
    return *v;
  }
  const auto& syms = alg.signature.symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (syms[i].name == t.head()) {
      std::vector<std::size_t> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(interpret(alg, a, sigma));
      return alg.apply(i, args);
    }
  }
  throw std::invalid_argument("unknown operation symbol '" + t.head() + "'");
}

namespace {

std::vector<std::string> equation_variables(const Equation& eq) {
  std::vector<std::string> vars = variables_of(eq.lhs);
  for (const auto& v : variables_of(eq.rhs)) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  return vars;
}

bool next_assignment(std::vector<std::size_t>& values, std::size_t m) {
  for (std::size_t i = values.size(); i-- > 0;) {
    if (++values[i] < m) return true;
    values[i] = 0;
  }
  return false;
}

}  // namespace

bool satisfies(const FiniteAlgebra& alg, const Equation& eq) {
  return !falsifying_assignment(alg, eq).has_value();
}

std::optional<VarAssignment> falsifying_assignment(const FiniteAlgebra& alg, const Equation& eq) {
  VarAssignment sigma;
  sigma.variables = equation_variables(eq);
  sigma.values.assign(sigma.variables.size(), 0);
  while (true) {
    if (interpret(alg, eq.lhs, sigma) != interpret(alg, eq.rhs, sigma)) return sigma;
    if (sigma.values.empty() || !next_assignment(sigma.values, alg.carrier_size)) {
      return std::nullopt;
    }
  }
}

namespace {

/// Exhaustive model search with incremental pruning. Table entries are
/// assigned depth-first (unary ops before higher arities, so the cheap
/// constraints bite first); after each assignment every equation instance
/// that has become fully evaluable is checked once, and a violation prunes
/// the subtree. Results are sorted into entry-lexicographic order at the end.
class ModelSearch {
 public:
  ModelSearch(const Theory& th, std::size_t m) : m_(m) {
    alg_.signature = th.signature;
    alg_.carrier_size = m;
    const auto& syms = th.signature.symbols();
    for (const auto& sym : syms) {
      std::size_t entries = 1;
      for (std::size_t i = 0; i < sym.arity; ++i) entries *= m;
      base_.push_back(total_entries_);
      alg_.tables.emplace_back(entries, 0);
      total_entries_ += entries;
    }
    assigned_.assign(total_entries_, false);
    // Assignment order: ops sorted by (arity, declaration index), entries
    // row-major within an op.
    std::vector<std::size_t> op_order(syms.size());
    for (std::size_t i = 0; i < op_order.size(); ++i) op_order[i] = i;
    std::stable_sort(op_order.begin(), op_order.end(), [&](std::size_t a, std::size_t b) {
      return syms[a].arity < syms[b].arity;
    });
    for (std::size_t op : op_order) {
      for (std::size_t e = 0; e < alg_.tables[op].size(); ++e) order_.push_back({op, e});
    }
    for (const auto& eq : th.equations) {
      std::vector<std::string> vars = equation_variables(eq);
      std::vector<std::size_t> values(vars.size(), 0);
      while (true) {
        instances_.push_back({eq, {vars, values}});
        if (values.empty() || !next_assignment(values, m)) break;
      }
    }
    verified_.assign(instances_.size(), false);
  }

  std::vector<FiniteAlgebra> run() {
    step(0);
    std::sort(found_.begin(), found_.end(),
              [](const FiniteAlgebra& a, const FiniteAlgebra& b) { return a.tables < b.tables; });
    return std::move(found_);
  }

 private:
  std::optional<std::size_t> eval(const Term& t, const VarAssignment& sigma) const {
    if (t.is_variable()) return sigma.value_of(t.variable_name());
    std::size_t op = op_index(t.head());
    std::size_t idx = 0;
    for (const auto& a : t.args()) {
      auto v = eval(a, sigma);
      if (!v) return std::nullopt;
      idx = idx * m_ + *v;
    }
    if (!assigned_[base_[op] + idx]) return std::nullopt;
    return alg_.tables[op][idx];
  }

  std::size_t op_index(const std::string& name) const {
    const auto& syms = alg_.signature.symbols();
    for (std::size_t i = 0; i < syms.size(); ++i) {
      if (syms[i].name == name) return i;
    }
    throw std::invalid_argument("unknown operation symbol '" + name + "'");
  }

  bool check_new_instances() {
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      if (verified_[i]) continue;
      const auto& [eq, sigma] = instances_[i];
      auto l = eval(eq.lhs, sigma);
      if (!l) continue;
      auto r = eval(eq.rhs, sigma);
      if (!r) continue;
      if (*l != *r) return false;
      verified_[i] = true;
      undo_.push_back(i);
    }
    return true;
  }

  void step(std::size_t pos) {
    if (pos == order_.size()) {
      found_.push_back(alg_);
      return;
    }
    auto [op, entry] = order_[pos];
    assigned_[base_[op] + entry] = true;
    for (std::size_t v = 0; v < m_; ++v) {
      alg_.tables[op][entry] = v;
      std::size_t mark = undo_.size();
      if (check_new_instances()) step(pos + 1);
      while (undo_.size() > mark) {
        verified_[undo_.back()] = false;
        undo_.pop_back();
      }
    }
    alg_.tables[op][entry] = 0;
    assigned_[base_[op] + entry] = false;
  }

  std::size_t m_;
  FiniteAlgebra alg_;
  std::size_t total_entries_ = 0;
  std::vector<std::size_t> base_;
  std::vector<std::pair<std::size_t, std::size_t>> order_;
  std::vector<bool> assigned_;
  std::vector<std::pair<Equation, VarAssignment>> instances_;
  std::vector<bool> verified_;
  std::vector<std::size_t> undo_;
  std::vector<FiniteAlgebra> found_;
};

}  // namespace

std::variant<std::vector<FiniteAlgebra>, EnumerationError> enumerate_models(
    const Theory& th, std::size_t carrier_size, std::uint64_t table_space_cap,
    bool allow_large) {
  if (carrier_size < 1) {
    return EnumerationError{"carrier size must be at least 1", 0};
  }
  double space = 1;
  for (const auto& sym : th.signature.symbols()) {
    space *= std::pow(static_cast<double>(carrier_size),
                      std::pow(static_cast<double>(carrier_size), static_cast<double>(sym.arity)));
  }
  if (!allow_large && space > static_cast<double>(table_space_cap)) {
    return EnumerationError{
        "table space " + std::to_string(space) + " exceeds cap " +
            std::to_string(table_space_cap) + " for carrier size " + std::to_string(carrier_size),
        space};
  }
  ModelSearch search(th, carrier_size);
  return search.run();
}

}  // namespace semifree
