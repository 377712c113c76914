#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sqperc/graph.hpp"

namespace sqperc {

enum class ExplorationVariant { Subcritical, Supercritical };

enum class StopReason { LargeStop, ExceptionalStop, ExtinctionStop };
std::string_view to_string(StopReason r);

struct ExplorationConfig {
  ExplorationVariant variant = ExplorationVariant::Subcritical;
  // Subcritical: large stop once |D| >= large_cap. Supercritical: once |R| + |A| > large_cap.
  std::uint64_t large_cap = 0;
  // Subcritical only: exceptional stop once the epoch budget would reach/exceed this.
  std::uint32_t epoch_cap = 5;
  // Subcritical only: when a reconciliation reveals hidden edges, mark every discovered pair
  // as discovered. Off keeps only the pairs found so far, which can miss pairs.
  bool reset_discovered_on_reconcile = true;
  // Check the per-step invariants and throw std::logic_error on violation.
  bool check_invariants = true;
  // Record a TraceStep per time step.
  bool trace = false;

  // Desk-scale defaults: subcritical large_cap = n + 1 (never fires), epoch_cap = 5;
  // supercritical large_cap = ceil((ln n)^4).
  static ExplorationConfig defaults(ExplorationVariant variant, std::size_t n);
  void validate() const;
};

enum class StepKind { Expand, Reconcile, Stop };

struct TraceStep {
  std::uint64_t t = 0;
  StepKind kind = StepKind::Expand;
  std::uint64_t discovered = 0;  // |D|
  std::uint64_t active = 0;      // |A|
  std::uint64_t pairs = 0;       // |S| (subcritical) or |R| (supercritical)
  std::uint32_t epoch = 0;
};

struct ExplorationState {
  std::vector<Vertex> discovered;   // D, in discovery order
  std::vector<VertexPair> active;   // A, lexicographic in D-order
  std::vector<VertexPair> pairs;    // S (subcritical) or R (supercritical), ascending
  std::vector<VertexPair> explored_edges;  // E, subcritical only, ascending
  std::uint32_t epoch = 0;
  std::uint64_t t = 0;
};

struct ExplorationResult {
  StopReason stop = StopReason::ExtinctionStop;
  ExplorationState state;
  std::vector<TraceStep> trace;
};

ExplorationResult explore_subcritical(const Graph& g, VertexPair start, const ExplorationConfig& cfg);

// start = (v1, v2, v3, v4) must induce the 4-cycle v1-v2-v3-v4-v1. The result's state.pairs holds
// R_T ∪ A_T, every one of which lies in the Induced component of v1v3.
ExplorationResult explore_supercritical(const Graph& g, const std::array<Vertex, 4>& start,
                                        const ExplorationConfig& cfg);

// Runs the subcritical exploration; on an extinction stop, checks that the Relaxed component
// of start is contained in S_T. Other stops are vacuously true.
bool check_superset(const Graph& g, VertexPair start, const ExplorationConfig& cfg);

}  // namespace sqperc
