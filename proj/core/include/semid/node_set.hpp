#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace semid {

/// 1-indexed graph node label.
using Node = int;

/// Maximum node count representable by NodeSet.
inline constexpr int kMaxNodes = 63;

/// Set of nodes 1..63 packed into a machine word. Iteration yields nodes in
/// increasing order.
class NodeSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Node;
    using difference_type = std::ptrdiff_t;
    using pointer = const Node*;
    using reference = Node;

    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}

    Node operator*() const { return std::countr_zero(rest_); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr NodeSet() = default;
  constexpr static NodeSet from_bits(std::uint64_t bits) {
    NodeSet s;
    s.bits_ = bits;
    return s;
  }
  NodeSet(std::initializer_list<Node> nodes) {
    for (Node v : nodes) insert(v);
  }

  /// {1, ..., n}
  static NodeSet range(int n) {
    return from_bits(n <= 0 ? 0 : ((std::uint64_t{1} << n) - 1) << 1);
  }

  void insert(Node v) { bits_ |= bit(v); }
  void erase(Node v) { bits_ &= ~bit(v); }
  [[nodiscard]] bool contains(Node v) const { return (bits_ & bit(v)) != 0; }
  [[nodiscard]] int size() const { return std::popcount(bits_); }
  [[nodiscard]] bool empty() const { return bits_ == 0; }
  [[nodiscard]] std::uint64_t bits() const { return bits_; }
  /// Smallest element; undefined on the empty set.
  [[nodiscard]] Node min() const { return std::countr_zero(bits_); }

  [[nodiscard]] iterator begin() const { return iterator(bits_); }
  [[nodiscard]] iterator end() const { return iterator(0); }

  [[nodiscard]] std::vector<Node> to_vector() const { return {begin(), end()}; }

  [[nodiscard]] bool is_subset_of(NodeSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  friend NodeSet operator|(NodeSet a, NodeSet b) { return from_bits(a.bits_ | b.bits_); }
  friend NodeSet operator&(NodeSet a, NodeSet b) { return from_bits(a.bits_ & b.bits_); }
  /// Set difference.
  friend NodeSet operator-(NodeSet a, NodeSet b) { return from_bits(a.bits_ & ~b.bits_); }
  NodeSet& operator|=(NodeSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  NodeSet& operator&=(NodeSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  friend bool operator==(NodeSet, NodeSet) = default;

 private:
  static constexpr std::uint64_t bit(Node v) { return std::uint64_t{1} << v; }
  std::uint64_t bits_ = 0;
};

}  // namespace semid
