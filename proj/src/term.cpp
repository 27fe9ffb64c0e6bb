#include "semifree/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace semifree {

const OperationSymbol* Signature::find(const std::string& name) const {
  for (const auto& sym : symbols_) {
    if (sym.name == name) return &sym;
  }
  return nullptr;
}

Term Term::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->head = std::move(name);
  node->depth = 0;
  node->size = 1;
  return Term(std::move(node));
}

Term Term::app(OperationSymbol op, std::vector<Term> args) {
  if (args.size() != op.arity) {
    throw std::invalid_argument("arity mismatch: " + op.name + " expects " +
                                std::to_string(op.arity) + " arguments, got " +
                                std::to_string(args.size()));
  }
  auto node = std::make_shared<Node>();
  node->is_var = false;
  node->head = std::move(op.name);
  std::size_t depth = 0;
  std::size_t size = 1;
  for (const auto& a : args) {
    depth = std::max(depth, a.depth());
    size += a.size();
  }
  node->depth = depth + 1;
  node->size = size;
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->is_var != other.node_->is_var || node_->head != other.node_->head ||
      node_->args.size() != other.node_->args.size() || node_->size != other.node_->size) {
    return false;
  }
  for (std::size_t i = 0; i < node_->args.size(); ++i) {
    if (!(node_->args[i] == other.node_->args[i])) return false;
  }
  return true;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (auto c = node_->depth <=> other.node_->depth; c != 0) return c;
  if (auto c = node_->head <=> other.node_->head; c != 0) return c;
  if (auto c = node_->args.size() <=> other.node_->args.size(); c != 0) return c;
  for (std::size_t i = 0; i < node_->args.size(); ++i) {
    if (auto c = node_->args[i] <=> other.node_->args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Term::to_string() const {
  if (is_variable()) return node_->head;
  if (node_->args.empty()) return node_->head;
  if (node_->args.size() == 1) return node_->head + " " + node_->args[0].to_string();
  std::string out = node_->head + "(";
  for (std::size_t i = 0; i < node_->args.size(); ++i) {
    if (i > 0) out += ", ";
    out += node_->args[i].to_string();
  }
  out += ")";
  return out;
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = mapping_.find(var);
  return it == mapping_.end() ? nullptr : &it->second;
}

bool Substitution::is_identity() const {
  for (const auto& [v, img] : mapping_) {
    if (!img.is_variable() || img.variable_name() != v) return false;
  }
  return true;
}

Term apply_substitution(const Term& t, const Substitution& f) {
  if (t.is_variable()) {
    if (const Term* image = f.lookup(t.variable_name())) return *image;
    return t;
  }
  bool changed = false;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) {
    args.push_back(apply_substitution(a, f));
    if (!(args.back() == a)) changed = true;
  }
  if (!changed) return t;
  return Term::app(t.symbol(), std::move(args));
}

namespace {
void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.variable_name()) == out.end()) {
      out.push_back(t.variable_name());
    }
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}
}  // namespace

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

std::optional<std::string> check_term(const Term& t, const Signature& sig) {
  if (t.is_variable()) return std::nullopt;
  const OperationSymbol* sym = sig.find(t.head());
  if (!sym) return "unknown operation symbol '" + t.head() + "'";
  if (sym->arity != t.args().size()) {
    return "operation '" + t.head() + "' declared with arity " + std::to_string(sym->arity) +
           " but applied to " + std::to_string(t.args().size()) + " arguments";
  }
  for (const auto& a : t.args()) {
    if (auto err = check_term(a, sig)) return err;
  }
  return std::nullopt;
}

std::vector<ValidationIssue> validate_theory(const Theory& th) {
  std::vector<ValidationIssue> issues;
  const auto& syms = th.signature.symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (syms[i].name.empty()) {
      issues.push_back({"signature", "operation symbol with empty name"});
    }
    for (std::size_t j = i + 1; j < syms.size(); ++j) {
      if (syms[i].name == syms[j].name) {
        issues.push_back({"signature", "duplicate operation symbol '" + syms[i].name + "'"});
      }
    }
  }
  for (std::size_t i = 0; i < th.equations.size(); ++i) {
    const auto& eq = th.equations[i];
    if (auto err = check_term(eq.lhs, th.signature)) {
      issues.push_back({"equation " + std::to_string(i) + " lhs", *err});
    }
    if (auto err = check_term(eq.rhs, th.signature)) {
      issues.push_back({"equation " + std::to_string(i) + " rhs", *err});
    }
  }
  return issues;
}

}  // namespace semifree
