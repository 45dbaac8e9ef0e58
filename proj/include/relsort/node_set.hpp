#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace relsort {

/// Dense node index in [0, n).
using Node = std::size_t;

/// Fixed-capacity bit set of node indices.
///
/// The capacity is the node count of the owning graph; every member must be
/// below it. Binary operations require equal capacities.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t capacity)
      : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

  NodeSet(std::size_t capacity, std::initializer_list<Node> members) : NodeSet(capacity) {
    for (Node v : members) insert(v);
  }

  static NodeSet full(std::size_t capacity) {
    NodeSet s(capacity);
    for (Node v = 0; v < capacity; ++v) s.insert(v);
    return s;
  }

  std::size_t capacity() const noexcept { return capacity_; }

  bool contains(Node v) const noexcept {
    return v < capacity_ && ((words_[v >> 6] >> (v & 63)) & 1u);
  }

  void insert(Node v) {
    check(v);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }

  void erase(Node v) {
    check(v);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  std::size_t size() const noexcept {
    std::size_t count = 0;
    for (auto w : words_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
  }

  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  NodeSet& operator|=(const NodeSet& other) {
    same_capacity(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  NodeSet& operator&=(const NodeSet& other) {
    same_capacity(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  /// Set difference.
  NodeSet& operator-=(const NodeSet& other) {
    same_capacity(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

  friend bool operator==(const NodeSet& a, const NodeSet& b) {
    return a.capacity_ == b.capacity_ && a.words_ == b.words_;
  }

  bool intersects(const NodeSet& other) const {
    same_capacity(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  bool is_subset_of(const NodeSet& other) const {
    same_capacity(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  bool is_proper_subset_of(const NodeSet& other) const {
    return is_subset_of(other) && !(*this == other);
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(static_cast<Node>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  /// Members in ascending order.
  std::vector<Node> members() const {
    std::vector<Node> out;
    out.reserve(size());
    for_each([&](Node v) { out.push_back(v); });
    return out;
  }

 private:
  void check(Node v) const {
    if (v >= capacity_)
      throw std::out_of_range("node " + std::to_string(v) + " outside set of capacity " +
                              std::to_string(capacity_));
  }

  void same_capacity(const NodeSet& other) const {
    if (other.capacity_ != capacity_)
      throw std::invalid_argument("NodeSet capacity mismatch");
  }

  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace relsort
