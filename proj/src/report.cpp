#include "sqperc/report.hpp"

#include <algorithm>

namespace sqperc {

namespace {

json pair_json(VertexPair p) { return json::array({p.u, p.v}); }

json pairs_json(const std::vector<VertexPair>& ps) {
  json out = json::array();
  for (auto p : ps) out.push_back(pair_json(p));
  return out;
}

std::string_view kind_name(StepKind k) {
  switch (k) {
    case StepKind::Expand: return "expand";
    case StepKind::Reconcile: return "reconcile";
    case StepKind::Stop: return "stop";
  }
  return "?";
}

}  // namespace

std::vector<json> components_report(const ComponentLabeling& labeling, std::uint64_t min_order) {
  std::vector<json> out;
  const auto n = labeling.vertex_count();
  std::uint32_t largest = 0;
  std::uint64_t large = 0;
  bool full = false;
  for (const auto& c : labeling.components()) {
    const bool f = c.support_size == n;
    out.push_back({{"id", c.id}, {"order", c.order}, {"support_size", c.support_size}, {"full_support", f}});
    largest = std::max(largest, c.support_size);
    full = full || f;
    if (c.order >= min_order) ++large;
  }
  out.push_back({{"summary",
                  {{"variant", labeling.variant() == SquareVariant::Induced ? "induced" : "relaxed"},
                   {"n", n},
                   {"universe_size", labeling.universe_size()},
                   {"components", labeling.components().size()},
                   {"largest_support", largest},
                   {"full_support", full},
                   {"min_order", min_order},
                   {"components_ge_min_order", large}}}});
  return out;
}

ProgenyHistogram simulate_progeny(const OffspringLaw& law, std::uint64_t runs, std::uint64_t max_progeny,
                                  std::uint64_t master_seed) {
  ProgenyHistogram h;
  h.runs = runs;
  h.max_progeny = max_progeny;
  h.counts.assign(max_progeny, 0);
  const auto sampler = law_sampler(law);
  for (std::uint64_t t = 0; t < runs; ++t) {
    const auto r = simulate_gw(sampler, max_progeny, SeedSpec{master_seed, t});
    if (r.truncated) {
      ++h.truncated;
      continue;
    }
    ++h.extinct;
    ++h.counts[r.total_progeny - 1];
  }
  return h;
}

json law_json(const OffspringLaw& law) {
  json pmf = json::array();
  for (std::size_t x = 0; x < law.pmf.size(); ++x)
    if (law.pmf[x] > 0) pmf.push_back({{"x", x}, {"p", law.pmf[x]}});
  return {{"cap", law.cap()}, {"overflow", law.overflow}, {"mean", law.mean()}, {"pmf", pmf}};
}

json dwass_report(const std::vector<double>& pmf) {
  json rows = json::array();
  double total = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    rows.push_back({{"k", k + 1}, {"p", pmf[k]}});
    total += pmf[k];
  }
  return {{"kind", "dwass"}, {"k_max", pmf.size()}, {"pmf", rows}, {"mass", total}};
}

json sim_report(const ProgenyHistogram& h) {
  json rows = json::array();
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    if (h.counts[k])
      rows.push_back({{"k", k + 1},
                      {"count", h.counts[k]},
                      {"freq", static_cast<double>(h.counts[k]) / static_cast<double>(h.runs)}});
  return {{"kind", "sim"},
          {"runs", h.runs},
          {"max_progeny", h.max_progeny},
          {"extinct", h.extinct},
          {"truncated", h.truncated},
          {"histogram", rows}};
}

json exploration_report(const ExplorationResult& r) {
  json trace = json::array();
  for (const auto& s : r.trace)
    trace.push_back({{"t", s.t},
                     {"kind", kind_name(s.kind)},
                     {"D", s.discovered},
                     {"A", s.active},
                     {"S", s.pairs},
                     {"epoch", s.epoch}});
  return {{"stop", to_string(r.stop)},
          {"t", r.state.t},
          {"epoch", r.state.epoch},
          {"discovered", r.state.discovered},
          {"active", pairs_json(r.state.active)},
          {"pairs", pairs_json(r.state.pairs)},
          {"explored_edges", pairs_json(r.state.explored_edges)},
          {"trace", trace}};
}

json classify_report(const DivergenceResult& r) {
  json witness;
  switch (r.cls) {
    case DivergenceClass::Linear: witness = {{"side_a", r.side_a}, {"side_b", r.side_b}}; break;
    case DivergenceClass::FiniteOrNearFinite: witness = {{"complete", true}}; break;
    default: break;
  }
  if (!witness.is_object()) witness = json::object();
  witness["clique"] = r.cfs.clique;
  witness["largest_support"] = r.cfs.largest_support;
  witness["remainder_size"] = r.cfs.remainder_size;
  witness["component"] = pairs_json(r.cfs.component);
  return {{"class", to_string(r.cls)}, {"cfs", r.cfs.cfs}, {"factors", r.factors}, {"witness", witness}};
}

json threshold_report(const ThresholdEstimate& e) {
  json probes = json::array();
  for (const auto& p : e.probes) probes.push_back({{"lambda", p.lambda}, {"frac_full_support", p.frac_full_support}});
  return {{"lambda_hat", e.lambda_hat}, {"lo", e.lo}, {"hi", e.hi}, {"probes", probes}, {"warnings", e.warnings}};
}

json many_squares_report(const ManySquaresReport& r) {
  json trials = json::array();
  for (const auto& t : r.trials)
    trials.push_back({{"trial_index", t.trial_index}, {"squares_in_large", t.squares_in_large}, {"ratio", t.ratio}});
  return {{"n", r.n},          {"lambda", r.lambda},           {"p", r.p},
          {"min_order", r.min_order}, {"theta_e", r.theta_e}, {"lower_bound", r.lower_bound},
          {"trials", trials}};
}

}  // namespace sqperc
