#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "sqperc/graph.hpp"
#include "sqperc/random.hpp"
#include "sqperc/square_graph.hpp"

namespace testing {

inline oracle::Partition partition_of(const sqperc::ComponentLabeling& lab) {
  oracle::Partition out;
  for (const auto& c : lab.components()) {
    std::set<oracle::Pair> comp;
    for (auto p : lab.members(c.id)) comp.insert({p.u, p.v});
    out.insert(comp);
  }
  return out;
}

inline sqperc::Graph from_list(std::size_t n, std::initializer_list<std::pair<sqperc::Vertex, sqperc::Vertex>> edges) {
  sqperc::GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

// Graph on n vertices whose edges are the set bits of mask, pairs ordered (0,1), (0,2), ..., (n-2,n-1).
inline sqperc::Graph from_mask(std::size_t n, std::uint64_t mask) {
  sqperc::GraphBuilder b(n);
  std::size_t bit = 0;
  for (sqperc::Vertex u = 0; u < n; ++u)
    for (sqperc::Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) b.add_edge(u, v);
  return std::move(b).build();
}

inline sqperc::Graph relabel(const sqperc::Graph& g, const std::vector<sqperc::Vertex>& perm) {
  sqperc::GraphBuilder b(g.vertex_count());
  for (auto e : g.edges()) b.add_edge(perm[e.u], perm[e.v]);
  return std::move(b).build();
}

inline std::vector<sqperc::Vertex> random_permutation(std::size_t n, sqperc::Substream& s) {
  std::vector<sqperc::Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[s.next() % i]);
  return p;
}

// Two 4-cycles 0-1-4-3 and 1-2-5-4 sharing the edge 1-4.
inline sqperc::Graph ladder() {
  return from_list(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
}

// K_{3,3} on parts {0,1,2}, {3,4,5} without the edge 2-5.
inline sqperc::Graph k33_minus_edge() {
  return from_list(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}});
}

}  // namespace testing
