#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqperc/bitset.hpp"

namespace sqperc {

using Vertex = std::uint32_t;

// Unordered vertex pair, stored canonically with u < v.
struct VertexPair {
  Vertex u = 0;
  Vertex v = 0;

  VertexPair() = default;
  VertexPair(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw std::invalid_argument("VertexPair needs two distinct vertices");
  }
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

struct PairId {
  std::uint64_t index = 0;
  friend auto operator<=>(const PairId&, const PairId&) = default;
};

// Row-major triangular indexing of the pairs of [0, n):
// (0,1) -> 0, (0,2) -> 1, ..., (0,n-1) -> n-2, (1,2) -> n-1, ...
class PairIndexer {
 public:
  PairIndexer() = default;
  explicit PairIndexer(std::size_t n) : n_(n) {}

  std::size_t vertex_count() const { return n_; }
  std::uint64_t pair_count() const { return std::uint64_t{n_} * (n_ ? n_ - 1 : 0) / 2; }

  PairId encode(VertexPair p) const {
    std::uint64_t u = p.u, v = p.v;
    return PairId{u * (2 * n_ - u - 1) / 2 + (v - u - 1)};
  }
  PairId encode(Vertex a, Vertex b) const { return encode(VertexPair(a, b)); }
  VertexPair decode(PairId id) const;
  // First index of row u, i.e. encode(u, u + 1).
  std::uint64_t row_offset(Vertex u) const {
    std::uint64_t uu = u;
    return uu * (2 * n_ - uu - 1) / 2;
  }

 private:
  std::size_t n_ = 0;
};

// Undirected simple graph on [0, n) with one bitset row per vertex.
// Immutable once built; use GraphBuilder to construct.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t words_per_row() const { return words_; }

  bool has_edge(Vertex u, Vertex v) const {
    return (adj_[std::size_t{u} * words_ + v / 64] >> (v % 64)) & 1U;
  }
  std::span<const Bitset::Word> row(Vertex v) const {
    return {adj_.data() + std::size_t{v} * words_, words_};
  }
  VertexSet neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const;
  std::vector<VertexPair> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<Bitset::Word> adj_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n);
  // Idempotent; rejects self-loops and out-of-range vertices.
  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  std::size_t vertex_count() const { return g_.n_; }
  Graph build() &&;

 private:
  Graph g_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Edge-list document: header "n m", then m lines "u v"; '#' lines are comments.
Graph from_edge_list(std::string_view text);
std::string to_edge_list(const Graph& g);

Graph from_edges(std::size_t n, std::span<const VertexPair> edges);

Graph complement(const Graph& g);
VertexSet common_neighbors(const Graph& g, Vertex u, Vertex v);

struct InducedSubgraph {
  Graph graph;
  // to_original[i] is the vertex of the parent graph mapped to i.
  std::vector<Vertex> to_original;
};
InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep);

bool is_clique(const Graph& g, const VertexSet& vertices);
bool is_complete(const Graph& g);

// Components in order of their smallest vertex; each list is ascending.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

// Named graphs used across tests, examples and the CLI.
namespace named {
Graph empty(std::size_t n);
Graph complete(std::size_t n);
Graph cycle(std::size_t n);
Graph path(std::size_t n);
// Parts [0, a) and [a, a + b).
Graph complete_bipartite(std::size_t a, std::size_t b);
// g1 + g2 with all cross edges.
Graph join(const Graph& g1, const Graph& g2);
Graph disjoint_union(const Graph& g1, const Graph& g2);
}  // namespace named

}  // namespace sqperc
