#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sqperc/graph.hpp"

namespace sqperc {

// Induced: vertices are the non-edges, edges are the diagonal pairs of induced C4s.
// Relaxed: vertices are all pairs, edges come from any (not necessarily induced) C4.
enum class SquareVariant { Induced, Relaxed };

struct ComponentSummary {
  std::uint32_t id = 0;
  // Number of pairs in the component.
  std::uint64_t order = 0;
  std::uint32_t support_size = 0;
};

// Partition of the auxiliary square-graph's vertex set into components.
// Component ids follow the smallest PairId they contain.
class ComponentLabeling {
 public:
  static constexpr std::uint32_t kNotInUniverse = UINT32_MAX;

  SquareVariant variant() const { return variant_; }
  std::size_t vertex_count() const { return indexer_.vertex_count(); }
  const PairIndexer& indexer() const { return indexer_; }

  std::uint64_t universe_size() const { return members_.size(); }
  bool in_universe(VertexPair p) const { return component_of(p).has_value(); }
  std::optional<std::uint32_t> component_of(VertexPair p) const;

  std::span<const ComponentSummary> components() const { return summaries_; }
  const ComponentSummary& component(std::uint32_t id) const { return summaries_.at(id); }
  // Pairs of a component, ascending.
  std::span<const VertexPair> members(std::uint32_t id) const;
  VertexSet support(std::uint32_t id) const;

 private:
  friend ComponentLabeling square_components(const Graph&, SquareVariant);
  SquareVariant variant_ = SquareVariant::Induced;
  PairIndexer indexer_;
  std::vector<std::uint32_t> component_of_;  // by PairId
  std::vector<std::uint64_t> offsets_;       // CSR into members_
  std::vector<VertexPair> members_;
  std::vector<ComponentSummary> summaries_;
};

ComponentLabeling square_components(const Graph& g, SquareVariant variant);

bool has_full_support_component(const Graph& g, SquareVariant variant);
bool has_full_support_component(const ComponentLabeling& labeling);

std::uint32_t largest_support_size(const Graph& g, SquareVariant variant);
std::uint32_t largest_support_size(const ComponentLabeling& labeling);

struct CfsResult {
  bool cfs = false;
  // Universal vertices of g that were peeled off as the clique factor.
  std::vector<Vertex> clique;
  // Pairs (original labels) of a full-support component of the remainder; empty if none
  // or if the remainder is empty.
  std::vector<VertexPair> component;
  // Largest support found in the remainder (certificate when cfs is false).
  std::uint32_t largest_support = 0;
  std::uint32_t remainder_size = 0;
};

CfsResult is_cfs(const Graph& g);

// Number of 4-sets inducing C4.
std::uint64_t count_induced_squares(const Graph& g);

// Induced C4s whose diagonals lie in Induced components with at least min_order pairs.
std::uint64_t squares_in_large_components(const Graph& g, std::uint64_t min_order);
std::uint64_t squares_in_large_components(const Graph& g, const ComponentLabeling& induced,
                                          std::uint64_t min_order);

struct ConnectingTriple {
  VertexPair x;
  VertexPair y;
  VertexPair z;
  friend auto operator<=>(const ConnectingTriple&, const ConnectingTriple&) = default;
};

// Triples (x in a, y in b, z in s) where every endpoint of x and y is adjacent to both
// endpoints of z. Each such triple glues x and y into one Induced component via z.
std::vector<ConnectingTriple> find_connecting_triples(const Graph& g, std::span<const VertexPair> a,
                                                      std::span<const VertexPair> b,
                                                      std::span<const VertexPair> s);

}  // namespace sqperc
