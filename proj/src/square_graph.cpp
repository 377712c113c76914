#include "sqperc/square_graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "sqperc/union_find.hpp"

namespace sqperc {

namespace {

// Common neighbourhood of u and v, as an ascending vertex list.
void common_list(const Graph& g, Vertex u, Vertex v, std::vector<Vertex>& out) {
  out.clear();
  const auto ru = g.row(u), rv = g.row(v);
  for (std::size_t wi = 0; wi < ru.size(); ++wi) {
    auto w = ru[wi] & rv[wi];
    while (w) {
      out.push_back(static_cast<Vertex>(wi * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
}

// Non-edge pairs inside a common neighbourhood (or all pairs when relaxed).
std::uint64_t inner_pairs(const Graph& g, std::span<const Vertex> t, bool induced) {
  if (!induced) return std::uint64_t{t.size()} * (t.size() ? t.size() - 1 : 0) / 2;
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (!g.has_edge(t[i], t[j])) ++c;
  return c;
}

}  // namespace

std::optional<std::uint32_t> ComponentLabeling::component_of(VertexPair p) const {
  if (p.v >= indexer_.vertex_count()) throw std::out_of_range("pair out of range");
  const auto c = component_of_[indexer_.encode(p).index];
  if (c == kNotInUniverse) return std::nullopt;
  return c;
}

std::span<const VertexPair> ComponentLabeling::members(std::uint32_t id) const {
  if (id >= summaries_.size()) throw std::out_of_range("component id out of range");
  return {members_.data() + offsets_[id], members_.data() + offsets_[id + 1]};
}

VertexSet ComponentLabeling::support(std::uint32_t id) const {
  VertexSet s(vertex_count());
  for (const auto& p : members(id)) {
    s.set(p.u);
    s.set(p.v);
  }
  return s;
}

ComponentLabeling square_components(const Graph& g, SquareVariant variant) {
  const std::size_t n = g.vertex_count();
  const bool induced = variant == SquareVariant::Induced;
  ComponentLabeling out;
  out.variant_ = variant;
  out.indexer_ = PairIndexer(n);
  const auto& idx = out.indexer_;
  const std::uint64_t pairs = idx.pair_count();
  if (pairs >= UINT32_MAX) throw std::length_error("square_components: graph too large");

  DisjointSets sets(static_cast<std::size_t>(pairs));
  std::vector<Vertex> t;
  std::uint64_t ac = 0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex c = a + 1; c < n; ++c, ++ac) {
      if (induced && g.has_edge(a, c)) continue;
      common_list(g, a, c, t);
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::uint64_t row = idx.row_offset(t[i]) - t[i] - 1;
        for (std::size_t j = i + 1; j < t.size(); ++j) {
          if (induced && g.has_edge(t[i], t[j])) continue;
          sets.unite(static_cast<DisjointSets::Index>(ac), static_cast<DisjointSets::Index>(row + t[j]));
        }
      }
    }
  }

  // Post-pass: number components by first appearance, then lay members out in CSR form.
  out.component_of_.assign(static_cast<std::size_t>(pairs), ComponentLabeling::kNotInUniverse);
  std::vector<std::uint32_t> id_of_root(static_cast<std::size_t>(pairs), ComponentLabeling::kNotInUniverse);
  std::vector<std::uint64_t> counts;
  ac = 0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex c = a + 1; c < n; ++c, ++ac) {
      if (induced && g.has_edge(a, c)) continue;
      const auto root = sets.find(static_cast<DisjointSets::Index>(ac));
      auto& id = id_of_root[root];
      if (id == ComponentLabeling::kNotInUniverse) {
        id = static_cast<std::uint32_t>(counts.size());
        counts.push_back(0);
      }
      out.component_of_[ac] = id;
      ++counts[id];
    }
  }
  const std::size_t k = counts.size();
  out.offsets_.assign(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) out.offsets_[i + 1] = out.offsets_[i] + counts[i];
  out.members_.resize(out.offsets_[k]);
  std::vector<std::uint64_t> cursor(out.offsets_.begin(), out.offsets_.end() - 1);
  ac = 0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex c = a + 1; c < n; ++c, ++ac) {
      const auto id = out.component_of_[ac];
      if (id == ComponentLabeling::kNotInUniverse) continue;
      auto& slot = out.members_[cursor[id]++];
      slot.u = a;
      slot.v = c;
    }
  }

  out.summaries_.resize(k);
  std::vector<std::uint32_t> stamp(n, ComponentLabeling::kNotInUniverse);
  for (std::uint32_t id = 0; id < k; ++id) {
    std::uint32_t support = 0;
    for (auto it = out.offsets_[id]; it < out.offsets_[id + 1]; ++it) {
      for (Vertex x : {out.members_[it].u, out.members_[it].v}) {
        if (stamp[x] != id) {
          stamp[x] = id;
          ++support;
        }
      }
    }
    out.summaries_[id] = ComponentSummary{id, counts[id], support};
  }
  return out;
}

bool has_full_support_component(const ComponentLabeling& labeling) {
  const auto n = labeling.vertex_count();
  return std::any_of(labeling.components().begin(), labeling.components().end(),
                     [n](const ComponentSummary& c) { return c.support_size == n; });
}

bool has_full_support_component(const Graph& g, SquareVariant variant) {
  return has_full_support_component(square_components(g, variant));
}

std::uint32_t largest_support_size(const ComponentLabeling& labeling) {
  std::uint32_t best = 0;
  for (const auto& c : labeling.components()) best = std::max(best, c.support_size);
  return best;
}

std::uint32_t largest_support_size(const Graph& g, SquareVariant variant) {
  if (g.vertex_count() < 2) throw std::invalid_argument("largest_support_size needs n >= 2");
  return largest_support_size(square_components(g, variant));
}

CfsResult is_cfs(const Graph& g) {
  const std::size_t n = g.vertex_count();
  CfsResult out;
  VertexSet rest(n);
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) + 1 == n)
      out.clique.push_back(v);
    else
      rest.set(v);
  }
  const auto sub = induced_subgraph(g, rest);
  out.remainder_size = static_cast<std::uint32_t>(sub.to_original.size());
  if (out.remainder_size == 0) {
    // Complete graph: W_Γ is finite; counted as CFS by convention.
    out.cfs = true;
    return out;
  }
  const auto labeling = square_components(sub.graph, SquareVariant::Induced);
  for (const auto& c : labeling.components()) {
    out.largest_support = std::max(out.largest_support, c.support_size);
    if (!out.cfs && c.support_size == out.remainder_size) {
      out.cfs = true;
      for (const auto& p : labeling.members(c.id))
        out.component.emplace_back(sub.to_original[p.u], sub.to_original[p.v]);
    }
  }
  return out;
}

std::uint64_t count_induced_squares(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> t;
  std::uint64_t twice = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex c = a + 1; c < n; ++c) {
      if (g.has_edge(a, c)) continue;
      common_list(g, a, c, t);
      twice += inner_pairs(g, t, true);
    }
  return twice / 2;
}

std::uint64_t squares_in_large_components(const Graph& g, const ComponentLabeling& induced,
                                          std::uint64_t min_order) {
  if (min_order < 1) throw std::invalid_argument("min_order must be >= 1");
  if (induced.variant() != SquareVariant::Induced)
    throw std::invalid_argument("squares_in_large_components needs the Induced labeling");
  if (induced.vertex_count() != g.vertex_count()) throw std::invalid_argument("labeling/graph mismatch");
  std::vector<Vertex> t;
  std::uint64_t twice = 0;
  for (const auto& comp : induced.components()) {
    if (comp.order < min_order) continue;
    for (const auto& p : induced.members(comp.id)) {
      common_list(g, p.u, p.v, t);
      twice += inner_pairs(g, t, true);
    }
  }
  return twice / 2;
}

std::uint64_t squares_in_large_components(const Graph& g, std::uint64_t min_order) {
  return squares_in_large_components(g, square_components(g, SquareVariant::Induced), min_order);
}

std::vector<ConnectingTriple> find_connecting_triples(const Graph& g, std::span<const VertexPair> a,
                                                      std::span<const VertexPair> b,
                                                      std::span<const VertexPair> s) {
  const auto n = g.vertex_count();
  std::set<VertexPair> seen_a(a.begin(), a.end()), seen_b(b.begin(), b.end()), seen_s(s.begin(), s.end());
  for (auto* set : {&a, &b, &s})
    for (const auto& p : *set) {
      if (p.v >= n || p.u >= p.v) throw std::invalid_argument("pair out of range or not canonical");
      if (g.has_edge(p.u, p.v)) throw std::invalid_argument("connecting-triple pairs must be non-edges");
    }
  for (const auto& p : a)
    if (seen_b.count(p) || seen_s.count(p)) throw std::invalid_argument("pair sets must be disjoint");
  for (const auto& p : b)
    if (seen_s.count(p)) throw std::invalid_argument("pair sets must be disjoint");

  std::vector<ConnectingTriple> out;
  if (a.empty() || b.empty()) return out;
  std::vector<VertexPair> xs, ys;
  for (const auto& z : s) {
    const auto t = common_neighbors(g, z.u, z.v);
    xs.clear();
    ys.clear();
    for (const auto& x : a)
      if (t.test(x.u) && t.test(x.v)) xs.push_back(x);
    if (xs.empty()) continue;
    for (const auto& y : b)
      if (t.test(y.u) && t.test(y.v)) ys.push_back(y);
    for (const auto& x : xs)
      for (const auto& y : ys) out.push_back(ConnectingTriple{x, y, z});
  }
  return out;
}

}  // namespace sqperc
