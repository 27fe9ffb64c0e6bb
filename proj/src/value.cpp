#include "semifree/value.hpp"

#include <algorithm>
#include <stdexcept>

namespace semifree {

Value Value::make(Node n) {
  std::size_t measure = 0;
  switch (n.kind) {
    case Kind::Atom:
    case Kind::ExcConst:
    case Kind::Unit:
      measure = 0;
      break;
    case Kind::Pure:
    case Kind::Wrapped:
      measure = n.items[0].first.weight_measure();
      break;
    case Kind::ExcLeft:
    case Kind::Writer:
      measure = 1 + n.items[0].first.weight_measure();
      break;
    case Kind::List:
    case Kind::Set:
      for (const auto& [v, c] : n.items) measure += 1 + v.weight_measure();
      break;
    case Kind::Multiset:
      for (const auto& [v, c] : n.items) measure += c * (1 + v.weight_measure());
      break;
    case Kind::State:
      for (const auto& [j, v] : n.items) measure += 1 + v.weight_measure();
      break;
  }
  n.measure = measure;
  return Value(std::make_shared<const Node>(std::move(n)));
}

Value Value::atom(std::size_t index) {
  Node n;
  n.kind = Kind::Atom;
  n.index = index;
  return make(std::move(n));
}

Value Value::pure(Value v) {
  Node n;
  n.kind = Kind::Pure;
  n.items.push_back({std::move(v), 1});
  return make(std::move(n));
}

Value Value::wrapped(Value v) {
  Node n;
  n.kind = Kind::Wrapped;
  n.items.push_back({std::move(v), 1});
  return make(std::move(n));
}

Value Value::list(std::vector<Value> items) {
  Node n;
  n.kind = Kind::List;
  for (auto& v : items) n.items.push_back({std::move(v), 1});
  return make(std::move(n));
}

Value Value::multiset(std::vector<std::pair<Value, std::size_t>> pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Node n;
  n.kind = Kind::Multiset;
  for (auto& [v, c] : pairs) {
    if (c == 0) continue;
    if (!n.items.empty() && n.items.back().first == v) {
      n.items.back().second += c;
    } else {
      n.items.push_back({std::move(v), c});
    }
  }
  return make(std::move(n));
}

Value Value::set(std::vector<Value> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  Node n;
  n.kind = Kind::Set;
  for (auto& v : items) n.items.push_back({std::move(v), 1});
  return make(std::move(n));
}

Value Value::exc_left(Value v) {
  Node n;
  n.kind = Kind::ExcLeft;
  n.items.push_back({std::move(v), 1});
  return make(std::move(n));
}

Value Value::exc_const(std::size_t label) {
  Node n;
  n.kind = Kind::ExcConst;
  n.index = label;
  return make(std::move(n));
}

Value Value::state(std::vector<std::pair<std::size_t, Value>> table) {
  Node n;
  n.kind = Kind::State;
  for (auto& [j, v] : table) n.items.push_back({std::move(v), j});
  return make(std::move(n));
}

Value Value::writer(int weight, Value v) {
  Node n;
  n.kind = Kind::Writer;
  n.weight = weight;
  n.items.push_back({std::move(v), 1});
  return make(std::move(n));
}

Value Value::unit() {
  Node n;
  n.kind = Kind::Unit;
  return make(std::move(n));
}

bool Value::operator==(const Value& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.kind != b.kind || a.index != b.index || a.weight != b.weight ||
      a.items.size() != b.items.size() || a.measure != b.measure) {
    return false;
  }
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (a.items[i].second != b.items[i].second) return false;
    if (!(a.items[i].first == b.items[i].first)) return false;
  }
  return true;
}

std::strong_ordering Value::operator<=>(const Value& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.index <=> b.index; c != 0) return c;
  if (auto c = a.weight <=> b.weight; c != 0) return c;
  if (auto c = a.items.size() <=> b.items.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (auto c = a.items[i].first <=> b.items[i].first; c != 0) return c;
    if (auto c = a.items[i].second <=> b.items[i].second; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Value::to_string() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Atom:
      return "x" + std::to_string(n.index);
    case Kind::Pure:
      return "pure(" + n.items[0].first.to_string() + ")";
    case Kind::Wrapped:
      return "wrap(" + n.items[0].first.to_string() + ")";
    case Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < n.items.size(); ++i) {
        if (i) out += ", ";
        out += n.items[i].first.to_string();
      }
      return out + "]";
    }
    case Kind::Multiset: {
      std::string out = "{";
      for (std::size_t i = 0; i < n.items.size(); ++i) {
        if (i) out += ", ";
        out += n.items[i].first.to_string() + ":" + std::to_string(n.items[i].second);
      }
      return out + "}";
    }
    case Kind::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < n.items.size(); ++i) {
        if (i) out += ", ";
        out += n.items[i].first.to_string();
      }
      return out + "}";
    }
    case Kind::ExcLeft:
      return "left(" + n.items[0].first.to_string() + ")";
    case Kind::ExcConst:
      return "const#" + std::to_string(n.index);
    case Kind::State: {
      std::string out = "{";
      for (std::size_t i = 0; i < n.items.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(i + 1) + "->(" + std::to_string(n.items[i].second + 1) + "," +
               n.items[i].first.to_string() + ")";
      }
      return out + "}";
    }
    case Kind::Writer: {
      std::string w = n.weight < 0 ? "inf" : std::to_string(n.weight);
      return "(" + w + ", " + n.items[0].first.to_string() + ")";
    }
    case Kind::Unit:
      return "*";
  }
  return "?";
}

}  // namespace semifree
