#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sqperc {

// Disjoint sets over [0, n) with path halving and union by size.
class DisjointSets {
 public:
  using Index = std::uint32_t;

  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    if (n > UINT32_MAX) throw std::length_error("DisjointSets: too many elements");
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  std::size_t element_count() const { return parent_.size(); }

  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true if a merge happened.
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  bool same(Index a, Index b) { return find(a) == find(b); }
  Index set_size(Index x) { return size_[find(x)]; }

 private:
  std::vector<Index> parent_;
  std::vector<Index> size_;
};

}  // namespace sqperc
