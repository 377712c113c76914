#pragma once

#include <string_view>
#include <vector>

#include "sqperc/graph.hpp"
#include "sqperc/square_graph.hpp"

namespace sqperc {

enum class DivergenceClass { FiniteOrNearFinite, Linear, Quadratic, AtLeastCubic };
std::string_view to_string(DivergenceClass c);

struct DivergenceResult {
  DivergenceClass cls = DivergenceClass::AtLeastCubic;
  // Connected components of the complement (the join factors of g).
  std::vector<std::vector<Vertex>> factors;
  // Linear only: the two sides of a join into non-complete graphs.
  std::vector<Vertex> side_a, side_b;
  // The CFS evaluation (full-support witness or largest support).
  CfsResult cfs;
};

// Join factors of g: the vertex sets of the connected components of its complement.
std::vector<std::vector<Vertex>> join_factors(const Graph& g);

// complete -> FiniteOrNearFinite; join of two non-complete graphs -> Linear;
// CFS -> Quadratic; otherwise AtLeastCubic.
DivergenceResult classify_divergence(const Graph& g);

}  // namespace sqperc
