#include "sqperc/racg.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqperc {

std::string_view to_string(DivergenceClass c) {
  switch (c) {
    case DivergenceClass::FiniteOrNearFinite: return "finite";
    case DivergenceClass::Linear: return "linear";
    case DivergenceClass::Quadratic: return "quadratic";
    case DivergenceClass::AtLeastCubic: return "at_least_cubic";
  }
  return "?";
}

std::vector<std::vector<Vertex>> join_factors(const Graph& g) {
  if (g.vertex_count() < 1) throw std::invalid_argument("join_factors needs n >= 1");
  return connected_components(complement(g));
}

DivergenceResult classify_divergence(const Graph& g) {
  if (g.vertex_count() < 1) throw std::invalid_argument("classify_divergence needs n >= 1");
  DivergenceResult out;
  out.factors = join_factors(g);
  out.cfs = is_cfs(g);
  if (is_complete(g)) {
    out.cls = DivergenceClass::FiniteOrNearFinite;
    return out;
  }
  // A factor induces a non-complete graph iff it has at least two vertices (it is connected in
  // the complement, so it contains a non-edge). Any two such factors on different sides give a
  // join of two non-complete graphs; with fewer, every split leaves one side complete.
  std::vector<std::size_t> big;
  for (std::size_t i = 0; i < out.factors.size(); ++i)
    if (out.factors[i].size() >= 2) big.push_back(i);
  if (big.size() >= 2) {
    out.cls = DivergenceClass::Linear;
    out.side_a = out.factors[big[0]];
    for (std::size_t i = 0; i < out.factors.size(); ++i)
      if (i != big[0]) out.side_b.insert(out.side_b.end(), out.factors[i].begin(), out.factors[i].end());
    std::sort(out.side_b.begin(), out.side_b.end());
    return out;
  }
  out.cls = out.cfs.cfs ? DivergenceClass::Quadratic : DivergenceClass::AtLeastCubic;
  return out;
}

}  // namespace sqperc
