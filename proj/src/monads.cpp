#include "semifree/monads.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace semifree {

MonadId MonadId::exception(std::vector<std::string> labels) {
  MonadId m;
  m.kind = Kind::Exception;
  m.labels = std::move(labels);
  return m;
}

MonadId MonadId::state(std::size_t n) {
  if (n < 1) throw std::invalid_argument("state monad needs n >= 1");
  MonadId m;
  m.kind = Kind::State;
  m.n = n;
  return m;
}

MonadId MonadId::writer_min(std::size_t n) {
  if (n < 1) throw std::invalid_argument("writer monad needs n >= 1");
  MonadId m;
  m.kind = Kind::WriterMin;
  m.n = n;
  return m;
}

MonadId MonadId::free_generic(Theory th, std::size_t bound) {
  MonadId m;
  m.kind = Kind::FreeGeneric;
  m.generic = std::make_shared<const Theory>(std::move(th));
  m.generic_bound = bound;
  return m;
}

std::string MonadId::name() const {
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Exception: {
      std::string out = "exception:K=";
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ",";
        out += labels[i];
      }
      return out;
    }
    case Kind::List: return "list";
    case Kind::Multiset: return "multiset";
    case Kind::FiniteSet: return "finiteset";
    case Kind::State: return "state:n=" + std::to_string(n);
    case Kind::WriterMin: return "writermin:n=" + std::to_string(n);
    case Kind::FreeGeneric: return "free:" + generic->name;
  }
  return "?";
}

namespace {

Theory monoid_like(const std::string& name, bool commutative, bool idempotent) {
  Theory th;
  th.name = name;
  OperationSymbol e{"e", 0};
  OperationSymbol mul{"mul", 2};
  th.signature.add(e);
  th.signature.add(mul);
  Term u = Term::var("u");
  Term v = Term::var("v");
  Term w = Term::var("w");
  auto M = [&](Term a, Term b) { return Term::app(mul, {std::move(a), std::move(b)}); };
  Term unit = Term::app(e);
  th.equations.push_back({M(M(u, v), w), M(u, M(v, w))});
  th.equations.push_back({M(unit, v), v});
  th.equations.push_back({M(v, unit), v});
  if (commutative) th.equations.push_back({M(u, v), M(v, u)});
  if (idempotent) th.equations.push_back({M(v, v), v});
  return th;
}

}  // namespace

Theory MonadId::base_theory() const {
  switch (kind) {
    case Kind::Identity: {
      Theory th;
      th.name = "identity";
      return th;
    }
    case Kind::Exception: {
      Theory th;
      th.name = "exception";
      for (const auto& k : labels) th.signature.add({"c_" + k, 0});
      return th;
    }
    case Kind::List:
      return monoid_like("list", false, false);
    case Kind::Multiset:
      return monoid_like("multiset", true, false);
    case Kind::FiniteSet:
      return monoid_like("finiteset", true, true);
    case Kind::State: {
      Theory th;
      th.name = "state_" + std::to_string(n);
      OperationSymbol f{"f", n};
      th.signature.add(f);
      std::vector<OperationSymbol> g;
      for (std::size_t i = 1; i <= n; ++i) {
        g.push_back({"g" + std::to_string(i), 1});
        th.signature.add(g.back());
      }
      Term v = Term::var("v");
      std::vector<Term> vs;
      for (std::size_t i = 1; i <= n; ++i) vs.push_back(Term::var("v" + std::to_string(i)));
      // g_i g_j v = g_j v
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          th.equations.push_back(
              {Term::app(g[i], {Term::app(g[j], {v})}), Term::app(g[j], {v})});
        }
      }
      // g_i f(v1..vn) = g_i v_i
      for (std::size_t i = 0; i < n; ++i) {
        th.equations.push_back({Term::app(g[i], {Term::app(f, vs)}),
                                Term::app(g[i], {vs[i]})});
      }
      // f(g_1 v, ..., g_n v) = v
      std::vector<Term> branches;
      for (std::size_t i = 0; i < n; ++i) branches.push_back(Term::app(g[i], {v}));
      th.equations.push_back({Term::app(f, branches), v});
      return th;
    }
    case Kind::WriterMin: {
      Theory th;
      th.name = "writermin_" + std::to_string(n);
      std::vector<OperationSymbol> a;
      for (std::size_t i = 0; i < n; ++i) {
        a.push_back({"a" + std::to_string(i), 1});
        th.signature.add(a.back());
      }
      Term v = Term::var("v");
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          th.equations.push_back({Term::app(a[i], {Term::app(a[j], {v})}),
                                  Term::app(a[std::min(i, j)], {v})});
        }
      }
      return th;
    }
    case Kind::FreeGeneric:
      return *generic;
  }
  throw std::logic_error("unreachable");
}

std::optional<MonadId> parse_monad_name(const std::string& text) {
  if (text == "identity") return MonadId::identity();
  if (text == "list") return MonadId::list();
  if (text == "multiset") return MonadId::multiset();
  if (text == "finiteset") return MonadId::finite_set();
  auto starts = [&](const std::string& p) { return text.rfind(p, 0) == 0; };
  if (starts("exception:K=")) {
    std::string rest = text.substr(12);
    std::vector<std::string> labels;
    std::string cur;
    for (char c : rest) {
      if (c == ',') {
        if (!cur.empty()) labels.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) labels.push_back(cur);
    if (labels.empty()) return std::nullopt;
    return MonadId::exception(labels);
  }
  if (starts("state:n=")) {
    std::size_t n = std::strtoul(text.substr(8).c_str(), nullptr, 10);
    if (n < 1 || n > 9) return std::nullopt;
    return MonadId::state(n);
  }
  if (starts("writermin:n=")) {
    std::size_t n = std::strtoul(text.substr(12).c_str(), nullptr, 10);
    if (n < 1 || n > 9) return std::nullopt;
    return MonadId::writer_min(n);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Unit, multiplication, functor action.
// ---------------------------------------------------------------------------

Value eta(const MonadId& m, const Value& x) {
  switch (m.kind) {
    case MonadId::Kind::Identity:
      return x;
    case MonadId::Kind::Exception:
      return Value::exc_left(x);
    case MonadId::Kind::List:
      return Value::list({x});
    case MonadId::Kind::Multiset:
      return Value::multiset({{x, 1}});
    case MonadId::Kind::FiniteSet:
      return Value::set({x});
    case MonadId::Kind::State: {
      std::vector<std::pair<std::size_t, Value>> table;
      for (std::size_t i = 0; i < m.n; ++i) table.push_back({i, x});
      return Value::state(std::move(table));
    }
    case MonadId::Kind::WriterMin:
      return Value::writer(-1, x);  // infinity, the min-monoid unit
    case MonadId::Kind::FreeGeneric:
      break;
  }
  throw std::invalid_argument("eta: unsupported monad " + m.name());
}

namespace {

int min_weight(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  return std::min(a, b);
}

}  // namespace

Value mu(const MonadId& m, const Value& v) {
  switch (m.kind) {
    case MonadId::Kind::Identity:
      return v;
    case MonadId::Kind::Exception: {
      if (v.is(Value::Kind::ExcConst)) return v;
      return v.payload();  // left(u) flattens to u
    }
    case MonadId::Kind::List: {
      std::vector<Value> out;
      for (const auto& [inner, c] : v.items()) {
        for (const auto& [w, d] : inner.items()) out.push_back(w);
      }
      return Value::list(std::move(out));
    }
    case MonadId::Kind::Multiset: {
      std::vector<std::pair<Value, std::size_t>> out;
      for (const auto& [inner, count] : v.items()) {
        for (const auto& [w, c] : inner.items()) out.push_back({w, count * c});
      }
      return Value::multiset(std::move(out));
    }
    case MonadId::Kind::FiniteSet: {
      std::vector<Value> out;
      for (const auto& [inner, c] : v.items()) {
        for (const auto& [w, d] : inner.items()) out.push_back(w);
      }
      return Value::set(std::move(out));
    }
    case MonadId::Kind::State: {
      std::vector<std::pair<std::size_t, Value>> table;
      for (std::size_t s = 0; s < v.table_size(); ++s) {
        const auto& [inner, j] = v.items()[s];
        const auto& [val, j2] = inner.items()[j];
        table.push_back({j2, val});
      }
      return Value::state(std::move(table));
    }
    case MonadId::Kind::WriterMin: {
      const Value& inner = v.payload();
      return Value::writer(min_weight(v.weight(), inner.weight()), inner.payload());
    }
    case MonadId::Kind::FreeGeneric:
      break;
  }
  throw std::invalid_argument("mu: unsupported monad " + m.name());
}

Value fmap(const MonadId& m, const ElementFn& f, const Value& v) {
  switch (m.kind) {
    case MonadId::Kind::Identity:
      return f(v);
    case MonadId::Kind::Exception: {
      if (v.is(Value::Kind::ExcConst)) return v;
      return Value::exc_left(f(v.payload()));
    }
    case MonadId::Kind::List: {
      std::vector<Value> out;
      for (const auto& [w, c] : v.items()) out.push_back(f(w));
      return Value::list(std::move(out));
    }
    case MonadId::Kind::Multiset: {
      std::vector<std::pair<Value, std::size_t>> out;
      for (const auto& [w, c] : v.items()) out.push_back({f(w), c});
      return Value::multiset(std::move(out));
    }
    case MonadId::Kind::FiniteSet: {
      std::vector<Value> out;
      for (const auto& [w, c] : v.items()) out.push_back(f(w));
      return Value::set(std::move(out));
    }
    case MonadId::Kind::State: {
      std::vector<std::pair<std::size_t, Value>> table;
      for (const auto& [w, j] : v.items()) table.push_back({j, f(w)});
      return Value::state(std::move(table));
    }
    case MonadId::Kind::WriterMin:
      return Value::writer(v.weight(), f(v.payload()));
    case MonadId::Kind::FreeGeneric:
      break;
  }
  throw std::invalid_argument("fmap: unsupported monad " + m.name());
}

Value interpret_op(const MonadId& m, const OperationSymbol& op, const std::vector<Value>& args) {
  switch (m.kind) {
    case MonadId::Kind::Exception: {
      if (op.arity == 0 && op.name.rfind("c_", 0) == 0) {
        std::string label = op.name.substr(2);
        for (std::size_t k = 0; k < m.labels.size(); ++k) {
          if (m.labels[k] == label) return Value::exc_const(k);
        }
      }
      break;
    }
    case MonadId::Kind::List: {
      if (op.name == "e") return Value::list({});
      if (op.name == "mul") {
        std::vector<Value> out;
        for (const auto& [w, c] : args[0].items()) out.push_back(w);
        for (const auto& [w, c] : args[1].items()) out.push_back(w);
        return Value::list(std::move(out));
      }
      break;
    }
    case MonadId::Kind::Multiset: {
      if (op.name == "e") return Value::multiset({});
      if (op.name == "mul") {
        std::vector<std::pair<Value, std::size_t>> out(args[0].items());
        for (const auto& p : args[1].items()) out.push_back(p);
        return Value::multiset(std::move(out));
      }
      break;
    }
    case MonadId::Kind::FiniteSet: {
      if (op.name == "e") return Value::set({});
      if (op.name == "mul") {
        std::vector<Value> out;
        for (const auto& [w, c] : args[0].items()) out.push_back(w);
        for (const auto& [w, c] : args[1].items()) out.push_back(w);
        return Value::set(std::move(out));
      }
      break;
    }
    case MonadId::Kind::State: {
      if (op.name == "f" && op.arity == m.n) {
        // read the state, branch, keep the state for the branch
        std::vector<std::pair<std::size_t, Value>> table;
        for (std::size_t s = 0; s < m.n; ++s) {
          const auto& [val, j] = args[s].items()[s];
          table.push_back({j, val});
        }
        return Value::state(std::move(table));
      }
      if (op.arity == 1 && op.name.size() >= 2 && op.name[0] == 'g') {
        std::size_t i = std::strtoul(op.name.substr(1).c_str(), nullptr, 10);
        if (i >= 1 && i <= m.n) {
          // write state i, then continue as the argument would from state i
          const auto& [val, j] = args[0].items()[i - 1];
          std::vector<std::pair<std::size_t, Value>> table;
          for (std::size_t s = 0; s < m.n; ++s) table.push_back({j, val});
          return Value::state(std::move(table));
        }
      }
      break;
    }
    case MonadId::Kind::WriterMin: {
      if (op.arity == 1 && op.name.size() >= 2 && op.name[0] == 'a') {
        std::size_t i = std::strtoul(op.name.substr(1).c_str(), nullptr, 10);
        if (i < m.n) {
          return Value::writer(min_weight(static_cast<int>(i), args[0].weight()),
                               args[0].payload());
        }
      }
      break;
    }
    case MonadId::Kind::Identity:
    case MonadId::Kind::FreeGeneric:
      break;
  }
  throw std::invalid_argument("interpret_op: '" + op.name + "' is not an operation of " +
                              m.name());
}

Value normalize(const MonadId& m, const Term& t, const std::map<std::string, Value>& vars) {
  if (t.is_variable()) {
    auto it = vars.find(t.variable_name());
    if (it == vars.end()) {
      throw std::invalid_argument("normalize: unbound variable '" + t.variable_name() + "'");
    }
    return eta(m, it->second);
  }
  std::vector<Value> args;
  for (const auto& a : t.args()) args.push_back(normalize(m, a, vars));
  return interpret_op(m, t.symbol(), args);
}

// ---------------------------------------------------------------------------
// Semifree structure.
// ---------------------------------------------------------------------------

Value semifree_eta(const Value& x) { return Value::pure(x); }

Value coerce_semifree(const MonadId& m, const Value& sv) {
  if (sv.is(Value::Kind::Pure)) return eta(m, sv.payload());
  if (sv.is(Value::Kind::Wrapped)) return sv.payload();
  throw std::invalid_argument("coerce_semifree: not a semifree value: " + sv.to_string());
}

Value semifree_mu(const MonadId& m, const Value& vv) {
  if (vv.is(Value::Kind::Pure)) return vv.payload();
  if (vv.is(Value::Kind::Wrapped)) {
    Value coerced = fmap(m, [&](const Value& e) { return coerce_semifree(m, e); }, vv.payload());
    return Value::wrapped(mu(m, coerced));
  }
  throw std::invalid_argument("semifree_mu: not a semifree value: " + vv.to_string());
}

Value semifree_fmap(const MonadId& m, const ElementFn& f, const Value& v) {
  if (v.is(Value::Kind::Pure)) return Value::pure(f(v.payload()));
  if (v.is(Value::Kind::Wrapped)) return Value::wrapped(fmap(m, f, v.payload()));
  throw std::invalid_argument("semifree_fmap: not a semifree value: " + v.to_string());
}

Value evaluate_semifree_term(const MonadId& m, const std::string& a_name, const Term& t,
                             const std::map<std::string, Value>& vars) {
  if (t.is_variable()) {
    auto it = vars.find(t.variable_name());
    if (it == vars.end()) {
      throw std::invalid_argument("unbound variable '" + t.variable_name() + "'");
    }
    return Value::pure(it->second);
  }
  if (t.head() == a_name && t.args().size() == 1) {
    Value inner = evaluate_semifree_term(m, a_name, t.args()[0], vars);
    return Value::wrapped(coerce_semifree(m, inner));
  }
  std::vector<Value> args;
  for (const auto& a : t.args()) {
    args.push_back(coerce_semifree(m, evaluate_semifree_term(m, a_name, a, vars)));
  }
  return Value::wrapped(interpret_op(m, t.symbol(), args));
}

// ---------------------------------------------------------------------------
// Enumeration.
// ---------------------------------------------------------------------------

namespace {

void enumerate_lists(const std::vector<Value>& pool, std::size_t bound,
                     std::vector<Value>& current,
                     const std::function<bool(const Value&)>& fn, bool& keep_going,
                     std::size_t used) {
  if (!keep_going) return;
  if (!fn(Value::list(current))) {
    keep_going = false;
    return;
  }
  for (const auto& p : pool) {
    std::size_t cost = 1 + p.weight_measure();
    if (used + cost > bound) continue;
    current.push_back(p);
    enumerate_lists(pool, bound, current, fn, keep_going, used + cost);
    current.pop_back();
    if (!keep_going) return;
  }
}

void enumerate_multisets(const std::vector<Value>& pool, std::size_t bound, std::size_t from,
                         std::vector<std::pair<Value, std::size_t>>& current,
                         const std::function<bool(const Value&)>& fn, bool& keep_going,
                         std::size_t used) {
  if (!keep_going) return;
  if (!fn(Value::multiset(current))) {
    keep_going = false;
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i) {
    std::size_t cost = 1 + pool[i].weight_measure();
    if (used + cost > bound) continue;
    for (std::size_t mult = 1; used + mult * cost <= bound; ++mult) {
      current.push_back({pool[i], mult});
      enumerate_multisets(pool, bound, i + 1, current, fn, keep_going, used + mult * cost);
      current.pop_back();
      if (!keep_going) return;
    }
  }
}

void enumerate_subsets(const std::vector<Value>& pool, std::size_t from,
                       std::vector<Value>& current, const std::function<bool(const Value&)>& fn,
                       bool& keep_going) {
  if (!keep_going) return;
  if (!fn(Value::set(current))) {
    keep_going = false;
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i) {
    current.push_back(pool[i]);
    enumerate_subsets(pool, i + 1, current, fn, keep_going);
    current.pop_back();
    if (!keep_going) return;
  }
}

void enumerate_states(const MonadId& m, const std::vector<Value>& pool,
                      std::vector<std::pair<std::size_t, Value>>& table,
                      const std::function<bool(const Value&)>& fn, bool& keep_going) {
  if (!keep_going) return;
  if (table.size() == m.n) {
    if (!fn(Value::state(table))) keep_going = false;
    return;
  }
  for (std::size_t j = 0; j < m.n; ++j) {
    for (const auto& p : pool) {
      table.push_back({j, p});
      enumerate_states(m, pool, table, fn, keep_going);
      table.pop_back();
      if (!keep_going) return;
    }
  }
}

}  // namespace

void for_each_monad_value(const MonadId& m, const std::vector<Value>& pool, std::size_t bound,
                          const std::function<bool(const Value&)>& fn) {
  bool keep_going = true;
  switch (m.kind) {
    case MonadId::Kind::Identity:
      for (const auto& p : pool) {
        if (!fn(p)) return;
      }
      return;
    case MonadId::Kind::Exception:
      for (const auto& p : pool) {
        if (!fn(Value::exc_left(p))) return;
      }
      for (std::size_t k = 0; k < m.labels.size(); ++k) {
        if (!fn(Value::exc_const(k))) return;
      }
      return;
    case MonadId::Kind::List: {
      std::vector<Value> current;
      enumerate_lists(pool, bound, current, fn, keep_going, 0);
      return;
    }
    case MonadId::Kind::Multiset: {
      std::vector<std::pair<Value, std::size_t>> current;
      enumerate_multisets(pool, bound, 0, current, fn, keep_going, 0);
      return;
    }
    case MonadId::Kind::FiniteSet: {
      std::vector<Value> current;
      enumerate_subsets(pool, 0, current, fn, keep_going);
      return;
    }
    case MonadId::Kind::State: {
      std::vector<std::pair<std::size_t, Value>> table;
      enumerate_states(m, pool, table, fn, keep_going);
      return;
    }
    case MonadId::Kind::WriterMin: {
      for (std::size_t k = 0; k <= m.n; ++k) {
        int w = k == 0 ? -1 : static_cast<int>(k - 1);
        for (const auto& p : pool) {
          if (!fn(Value::writer(w, p))) return;
        }
      }
      return;
    }
    case MonadId::Kind::FreeGeneric:
      throw std::invalid_argument("enumeration of free-generic values is not supported");
  }
}

std::vector<Value> enumerate_monad_values(const MonadId& m, const std::vector<Value>& pool,
                                          std::size_t bound) {
  std::vector<Value> out;
  for_each_monad_value(m, pool, bound, [&](const Value& v) {
    out.push_back(v);
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Value> enumerate_semifree_values(const MonadId& m, const std::vector<Value>& pool,
                                             std::size_t bound) {
  std::vector<Value> out;
  for (const auto& p : pool) out.push_back(Value::pure(p));
  for (const auto& u : enumerate_monad_values(m, pool, bound)) out.push_back(Value::wrapped(u));
  return out;
}

// ---------------------------------------------------------------------------
// Monad-law checking.
// ---------------------------------------------------------------------------

namespace {

std::vector<Value> atom_pool(std::size_t set_size) {
  std::vector<Value> pool;
  for (std::size_t i = 0; i < set_size; ++i) pool.push_back(Value::atom(i));
  return pool;
}

void check_laws_generic(LawReport& report, const std::string& tag,
                        const std::function<Value(const Value&)>& unit,
                        const std::function<Value(const Value&)>& mult,
                        const std::function<Value(const ElementFn&, const Value&)>& map,
                        const std::vector<Value>& level1,
                        const std::function<void(const std::function<bool(const Value&)>&)>&
                            level3) {
  for (const auto& v : level1) {
    ++report.checked;
    if (mult(unit(v)) != v) {
      report.failures.push_back({tag + " left unit", v.to_string()});
    }
    if (mult(map(unit, v)) != v) {
      report.failures.push_back({tag + " right unit", v.to_string()});
    }
  }
  level3([&](const Value& w) {
    ++report.checked;
    Value lhs = mult(mult(w));
    Value rhs = mult(map(mult, w));
    if (lhs != rhs) {
      report.failures.push_back({tag + " associativity", w.to_string()});
      return report.failures.size() < 25;
    }
    return true;
  });
}

}  // namespace

LawReport check_monad_laws_with(const MonadId& m, std::size_t set_size, std::size_t bound,
                                const std::function<Value(const Value&)>& mu_override) {
  LawReport report;
  report.monad = m.name();
  std::vector<Value> pool = atom_pool(set_size);

  auto mu_fn = mu_override ? mu_override
                           : std::function<Value(const Value&)>(
                                 [&](const Value& v) { return mu(m, v); });

  // Plain structure.
  std::vector<Value> mx = enumerate_monad_values(m, pool, bound);
  std::vector<Value> mmx = enumerate_monad_values(m, mx, bound);
  check_laws_generic(
      report, "(eta,mu)", [&](const Value& v) { return eta(m, v); }, mu_fn,
      [&](const ElementFn& f, const Value& v) { return fmap(m, f, v); }, mx,
      [&](const std::function<bool(const Value&)>& fn) {
        for_each_monad_value(m, mmx, bound, fn);
      });

  // Semifree structure; mu_override only replaces the base multiplication.
  auto smu = [&](const Value& v) -> Value {
    if (v.is(Value::Kind::Pure)) return v.payload();
    Value coerced =
        fmap(m, [&](const Value& e) { return coerce_semifree(m, e); }, v.payload());
    return Value::wrapped(mu_fn(coerced));
  };
  std::vector<Value> sx = enumerate_semifree_values(m, pool, bound);
  std::vector<Value> ssx = enumerate_semifree_values(m, sx, bound);
  check_laws_generic(
      report, "(eta^s,mu^s)", [](const Value& v) { return Value::pure(v); }, smu,
      [&](const ElementFn& f, const Value& v) { return semifree_fmap(m, f, v); }, sx,
      [&](const std::function<bool(const Value&)>& fn) {
        for (const auto& s : ssx) {
          if (!fn(Value::pure(s))) return;
        }
        bool keep = true;
        for_each_monad_value(m, ssx, bound, [&](const Value& u) {
          keep = fn(Value::wrapped(u));
          return keep;
        });
      });
  return report;
}

LawReport check_monad_laws(const MonadId& m, std::size_t set_size, std::size_t bound) {
  return check_monad_laws_with(m, set_size, bound, nullptr);
}

// ---------------------------------------------------------------------------
// Bounded free algebra.
// ---------------------------------------------------------------------------

namespace {

/// Terms over the signature with the generators as leaves, all sizes up to
/// the bound.
void all_terms_upto(const Signature& sig, const std::vector<std::string>& generators,
                    std::size_t bound, std::vector<Term>& out) {
  std::vector<std::vector<Term>> by_size(bound + 1);
  for (const auto& g : generators) by_size[1].push_back(Term::var(g));
  for (const auto& sym : sig.symbols()) {
    if (sym.arity == 0 && bound >= 1) by_size[1].push_back(Term::app(sym));
  }
  for (std::size_t size = 2; size <= bound; ++size) {
    for (const auto& sym : sig.symbols()) {
      if (sym.arity == 0 || sym.arity > size - 1) continue;
      std::vector<Term> args;
      std::function<void(std::size_t)> rec = [&](std::size_t remaining) {
        std::size_t slots_left = sym.arity - args.size();
        if (slots_left == 0) {
          if (remaining == 0) by_size[size].push_back(Term::app(sym, args));
          return;
        }
        for (std::size_t sz = 1; sz + (slots_left - 1) <= remaining; ++sz) {
          for (const Term& t : by_size[sz]) {
            args.push_back(t);
            rec(remaining - sz);
            args.pop_back();
          }
        }
      };
      rec(size - 1);
    }
  }
  for (auto& bucket : by_size) {
    for (auto& t : bucket) out.push_back(std::move(t));
  }
}

}  // namespace

std::optional<std::size_t> FreeAlgebraStructure::class_of(const Term& t) const {
  auto it = class_index.find(t);
  if (it == class_index.end()) return std::nullopt;
  return it->second;
}

std::size_t FreeAlgebraStructure::eta(const std::string& generator) const {
  auto c = class_of(Term::var(generator));
  if (!c) throw std::invalid_argument("'" + generator + "' is not a generator");
  return *c;
}

std::optional<std::size_t> FreeAlgebraStructure::apply(
    const OperationSymbol& op, const std::vector<std::size_t>& classes) const {
  std::vector<Term> args;
  for (std::size_t c : classes) {
    if (c >= representatives.size()) return std::nullopt;
    args.push_back(representatives[c]);
  }
  return class_of(Term::app(op, std::move(args)));
}

std::optional<std::size_t> FreeAlgebraStructure::mu(const Term& t) const {
  Substitution sub;
  for (const auto& v : variables_of(t)) {
    if (v.size() > 1 && v[0] == '#') {
      std::size_t c = std::strtoul(v.substr(1).c_str(), nullptr, 10);
      if (c >= representatives.size()) return std::nullopt;
      sub.set(v, representatives[c]);
    }
  }
  return class_of(apply_substitution(t, sub));
}

FreeAlgebraStructure free_algebra(const Theory& th, const std::vector<std::string>& generators,
                                  std::size_t bound) {
  FreeAlgebraStructure fa;
  fa.theory = th;
  fa.generators = generators;
  fa.bound = bound;

  std::vector<Term> universe;
  all_terms_upto(th.signature, generators, bound, universe);

  // Union-find over the universe closed under the equations: repeatedly
  // instantiate axioms by matching against universe terms and propagate
  // congruence, all within the bounded universe.
  std::map<Term, std::size_t> id_of;
  for (const auto& t : universe) id_of.emplace(t, id_of.size());
  std::vector<std::size_t> parent(id_of.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  };

  // match axiom sides against terms (same matcher idea as the prover).
  std::function<bool(const Term&, const Term&, Substitution&)> match =
      [&](const Term& pattern, const Term& subject, Substitution& theta) {
        if (pattern.is_variable()) {
          if (const Term* bound_img = theta.lookup(pattern.variable_name())) {
            return *bound_img == subject;
          }
          theta.set(pattern.variable_name(), subject);
          return true;
        }
        if (subject.is_variable() || pattern.head() != subject.head() ||
            pattern.args().size() != subject.args().size()) {
          return false;
        }
        for (std::size_t i = 0; i < pattern.args().size(); ++i) {
          if (!match(pattern.args()[i], subject.args()[i], theta)) return false;
        }
        return true;
      };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& eq : th.equations) {
      for (int dir = 0; dir < 2; ++dir) {
        const Term& from = dir == 0 ? eq.lhs : eq.rhs;
        const Term& to = dir == 0 ? eq.rhs : eq.lhs;
        for (const auto& [t, id] : id_of) {
          Substitution theta;
          if (!match(from, t, theta)) continue;
          bool total = true;
          for (const auto& v : variables_of(to)) {
            if (!theta.lookup(v)) { total = false; break; }
          }
          if (!total) continue;
          Term image = apply_substitution(to, theta);
          auto it = id_of.find(image);
          if (it == id_of.end()) continue;  // outside the bounded universe
          if (unite(id, it->second)) changed = true;
        }
      }
    }
    // congruence within the universe
    std::map<std::pair<std::string, std::vector<std::size_t>>, std::size_t> sig_table;
    for (const auto& [t, id] : id_of) {
      if (t.is_variable()) continue;
      std::vector<std::size_t> key;
      bool ok = true;
      for (const auto& a : t.args()) {
        auto it = id_of.find(a);
        if (it == id_of.end()) { ok = false; break; }
        key.push_back(find(it->second));
      }
      if (!ok) continue;
      auto [it, inserted] = sig_table.emplace(std::make_pair(t.head(), key), id);
      if (!inserted && unite(id, it->second)) changed = true;
    }
  }

  // Canonical representative per class: the least term in canonical order.
  std::map<std::size_t, Term> least;
  for (const auto& [t, id] : id_of) {
    std::size_t root = find(id);
    auto it = least.find(root);
    if (it == least.end() || t < it->second) least.insert_or_assign(root, t);
  }
  std::vector<Term> reps;
  for (const auto& [root, t] : least) reps.push_back(t);
  std::sort(reps.begin(), reps.end());
  fa.representatives = reps;
  std::map<Term, std::size_t> rep_class;
  for (std::size_t i = 0; i < reps.size(); ++i) rep_class.emplace(reps[i], i);
  for (const auto& [t, id] : id_of) {
    std::size_t root = find(id);
    fa.class_index.emplace(t, rep_class.at(least.at(root)));
  }
  return fa;
}

}  // namespace semifree
