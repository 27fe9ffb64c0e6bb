#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace semifree {

/// The element universe for all monad computations: carrier atoms, the two
/// semifree injections, and one container shape per built-in monad.
/// Values are immutable, canonical (sorted keys, no zero multiplicities,
/// fixed-length tables) and totally ordered, so structural equality decides
/// element equality everywhere.
class Value {
 public:
  enum class Kind : std::uint8_t {
    Atom,      // carrier element, identified by index
    Pure,      // left injection of X + MX
    Wrapped,   // right injection of X + MX
    List,      // ordered sequence
    Multiset,  // sorted (value, multiplicity >= 1) pairs
    Set,       // sorted distinct values
    ExcLeft,   // exception monad, X summand
    ExcConst,  // exception monad, K summand (label index)
    State,     // table: entry i holds (next state, value), length n
    Writer,    // (weight, value); weight -1 encodes infinity
    Unit,      // the final monad's only element
  };

  static Value atom(std::size_t index);
  static Value pure(Value v);
  static Value wrapped(Value v);
  static Value list(std::vector<Value> items);
  /// Pairs are canonicalized: sorted by value, equal keys merged, zero
  /// multiplicities dropped.
  static Value multiset(std::vector<std::pair<Value, std::size_t>> pairs);
  /// Sorted and deduplicated.
  static Value set(std::vector<Value> items);
  static Value exc_left(Value v);
  static Value exc_const(std::size_t label);
  static Value state(std::vector<std::pair<std::size_t, Value>> table);
  static Value writer(int weight, Value v);
  static Value unit();

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  std::size_t atom_index() const { return node_->index; }
  std::size_t label() const { return node_->index; }
  int weight() const { return node_->weight; }
  /// Payload of Pure/Wrapped/ExcLeft/Writer.
  const Value& payload() const { return node_->items[0].first; }
  /// Items of List/Set (second unused), Multiset pairs (value, multiplicity),
  /// or State table rows (value, next state).
  const std::vector<std::pair<Value, std::size_t>>& items() const { return node_->items; }
  std::size_t table_size() const { return node_->items.size(); }

  bool operator==(const Value& other) const;
  bool operator!=(const Value& other) const { return !(*this == other); }
  std::strong_ordering operator<=>(const Value& other) const;

  /// Transitive element-slot count: the size measure used by bounded
  /// enumerations (atoms weigh 0, each container slot weighs 1 plus the
  /// weight of its occupant).
  std::size_t weight_measure() const { return node_->measure; }

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::size_t index = 0;  // Atom / ExcConst
    int weight = 0;         // Writer
    std::vector<std::pair<Value, std::size_t>> items;
    std::size_t measure = 0;
  };
  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Value make(Node n);
  std::shared_ptr<const Node> node_;
};

}  // namespace semifree
