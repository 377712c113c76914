#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqperc/branching.hpp"
#include "sqperc/exploration.hpp"
#include "sqperc/harness.hpp"
#include "sqperc/racg.hpp"
#include "sqperc/square_graph.hpp"

namespace sqperc {

using json = nlohmann::ordered_json;

// One object per component ({id, order, support_size, full_support}) followed by a summary object.
std::vector<json> components_report(const ComponentLabeling& labeling, std::uint64_t min_order);

struct ProgenyHistogram {
  std::uint64_t runs = 0;
  std::uint64_t max_progeny = 0;
  std::uint64_t extinct = 0;
  std::uint64_t truncated = 0;
  std::vector<std::uint64_t> counts;  // counts[k-1] = runs with total progeny k, k <= max_progeny
};

ProgenyHistogram simulate_progeny(const OffspringLaw& law, std::uint64_t runs, std::uint64_t max_progeny,
                                  std::uint64_t master_seed);

json law_json(const OffspringLaw& law);
json dwass_report(const std::vector<double>& pmf);
json sim_report(const ProgenyHistogram& h);
json exploration_report(const ExplorationResult& r);
json classify_report(const DivergenceResult& r);
json threshold_report(const ThresholdEstimate& e);
json many_squares_report(const ManySquaresReport& r);

}  // namespace sqperc
