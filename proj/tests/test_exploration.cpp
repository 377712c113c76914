#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sqperc/exploration.hpp"
#include "sqperc/random.hpp"
#include "sqperc/square_graph.hpp"
#include "support.hpp"

using namespace sqperc;

namespace {

ExplorationConfig sub(std::size_t n) { return ExplorationConfig::defaults(ExplorationVariant::Subcritical, n); }
ExplorationConfig sup(std::size_t n) { return ExplorationConfig::defaults(ExplorationVariant::Supercritical, n); }

bool contains(const std::vector<VertexPair>& ps, VertexPair p) { return std::binary_search(ps.begin(), ps.end(), p); }

// Relaxed component of start contained in S_T, decided with the brute-force oracle.
bool superset_by_oracle(const Graph& g, VertexPair start, const ExplorationResult& r) {
  for (auto [a, b] : oracle::component_of(g, false, {start.u, start.v}))
    if (!contains(r.state.pairs, VertexPair(a, b))) return false;
  return true;
}

}  // namespace

TEST_CASE("subcritical on C4 from a diagonal") {
  const Graph c4 = named::cycle(4);
  auto cfg = sub(4);
  cfg.trace = true;
  const auto r = explore_subcritical(c4, {0, 2}, cfg);
  CHECK(r.stop == StopReason::ExtinctionStop);
  CHECK(contains(r.state.pairs, {0, 2}));
  CHECK(contains(r.state.pairs, {1, 3}));
  auto d = r.state.discovered;
  std::sort(d.begin(), d.end());
  CHECK(d == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(r.state.explored_edges.size() == 4);
  CHECK(r.trace.back().kind == StepKind::Stop);
  CHECK(check_superset(c4, {0, 2}, cfg));
}

TEST_CASE("subcritical on the empty graph") {
  const auto r = explore_subcritical(named::empty(6), {1, 4}, sub(6));
  CHECK(r.stop == StopReason::ExtinctionStop);
  CHECK(r.state.t == 1);
  CHECK(r.state.pairs == std::vector<VertexPair>{{1, 4}});
  CHECK(r.state.discovered.size() == 2);
}

TEST_CASE("subcritical on K6 with a small cap never misses pairs") {
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) {
      auto cfg = sub(6);
      cfg.large_cap = 4;
      const auto r = explore_subcritical(named::complete(6), {u, v}, cfg);
      CHECK((r.stop == StopReason::LargeStop || r.stop == StopReason::ExceptionalStop));
      CHECK(check_superset(named::complete(6), {u, v}, cfg));
    }
}

TEST_CASE("K5 from any pair") {
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = u + 1; v < 5; ++v) CHECK(check_superset(named::complete(5), {u, v}, sub(5)));
}

TEST_CASE("exceptional stop with a tight epoch budget") {
  auto cfg = sub(6);
  cfg.epoch_cap = 1;
  const auto r = explore_subcritical(named::complete(6), {0, 1}, cfg);
  CHECK(r.stop == StopReason::ExceptionalStop);
  CHECK(r.state.epoch <= 1);
}

TEST_CASE("exploration without the reconcile reset misses a pair") {
  const Graph g = testing::from_list(5, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 4}, {3, 4}, {0, 1}, {1, 4}});
  auto literal = sub(5);
  literal.reset_discovered_on_reconcile = false;
  literal.check_invariants = false;
  const auto r = explore_subcritical(g, {0, 1}, literal);
  REQUIRE(r.stop == StopReason::ExtinctionStop);
  CHECK_FALSE(contains(r.state.pairs, {1, 2}));
  CHECK_FALSE(superset_by_oracle(g, {0, 1}, r));
  CHECK_FALSE(check_superset(g, {0, 1}, literal));

  const auto fixed = explore_subcritical(g, {0, 1}, sub(5));
  CHECK(superset_by_oracle(g, {0, 1}, fixed));
  CHECK(check_superset(g, {0, 1}, sub(5)));
}

TEST_CASE("subcritical invariants over random graphs") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const std::size_t n = 6 + t % 20;
    const Graph g = sample_gnp({n, 0.35}, {17, t});
    auto cfg = sub(n);
    cfg.trace = true;
    Substream pick({17, t});
    const Vertex a = static_cast<Vertex>(pick.next() % n);
    Vertex b = static_cast<Vertex>(pick.next() % (n - 1));
    if (b >= a) ++b;
    const auto r = explore_subcritical(g, {a, b}, cfg);  // throws on an invariant violation
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      CHECK(r.trace[i].pairs >= r.trace[i - 1].pairs);
      CHECK(r.trace[i].epoch <= cfg.epoch_cap);
    }
    for (auto e : r.state.explored_edges) CHECK(g.has_edge(e.u, e.v));
    // Termination bound: O(large_cap^2) steps.
    CHECK(r.state.t <= cfg.large_cap * cfg.large_cap + 2);
    if (r.stop == StopReason::ExtinctionStop) CHECK(superset_by_oracle(g, {a, b}, r));
  }
}

TEST_CASE("supercritical on C4 and K_{2,3}") {
  const auto r = explore_supercritical(named::cycle(4), {0, 1, 2, 3}, sup(4));
  CHECK(r.stop == StopReason::ExtinctionStop);
  CHECK(r.state.pairs == std::vector<VertexPair>{{0, 2}, {1, 3}});

  // Parts {0,1} = {a,b} and {2,3,4} = {x,y,z}; start a-x-b-y.
  const auto k = explore_supercritical(named::complete_bipartite(2, 3), {0, 2, 1, 3}, sup(5));
  CHECK(k.stop == StopReason::ExtinctionStop);
  CHECK(k.state.pairs == std::vector<VertexPair>{{0, 1}, {2, 3}, {2, 4}, {3, 4}});

  auto tiny = sup(5);
  tiny.large_cap = 1;
  const auto l = explore_supercritical(named::complete_bipartite(2, 3), {0, 2, 1, 3}, tiny);
  CHECK(l.stop == StopReason::LargeStop);
  CHECK(l.state.t <= 1);

  CHECK_THROWS_AS(explore_supercritical(named::path(4), {0, 1, 2, 3}, sup(4)), std::invalid_argument);
  CHECK_THROWS_AS(explore_supercritical(named::complete(4), {0, 1, 2, 3}, sup(4)), std::invalid_argument);
}

TEST_CASE("supercritical pairs stay inside the Induced component") {
  int explored = 0;
  for (std::uint64_t t = 0; t < 300 && explored < 60; ++t) {
    const std::size_t n = 20 + t % 41;
    const Graph g = sample_gnp({n, 1.2 / std::sqrt(static_cast<double>(n))}, {23, t});
    // First induced C4 in vertex order.
    std::optional<std::array<Vertex, 4>> start;
    for (const auto& sq : oracle::squares(g, true)) {
      start = std::array<Vertex, 4>{sq.d1.first, sq.d2.first, sq.d1.second, sq.d2.second};
      break;
    }
    if (!start) continue;
    ++explored;
    auto cfg = sup(n);
    cfg.large_cap = 40;
    cfg.trace = true;
    const auto r = explore_supercritical(g, *start, cfg);
    const auto lab = square_components(g, SquareVariant::Induced);
    const auto root = lab.component_of({(*start)[0], (*start)[2]});
    REQUIRE(root);
    for (auto p : r.state.pairs) CHECK(lab.component_of(p) == root);
    CHECK(r.state.t <= cfg.large_cap + 2);
    for (auto p : r.state.active) CHECK_FALSE(g.has_edge(p.u, p.v));
  }
  CHECK(explored >= 30);
}

TEST_CASE("config validation and defaults") {
  CHECK(sub(10).large_cap == 11);
  CHECK(sup(3000).large_cap == 4110);
  ExplorationConfig bad = sub(10);
  bad.large_cap = 0;
  CHECK_THROWS(bad.validate());
  bad = sub(10);
  bad.epoch_cap = 0;
  CHECK_THROWS(bad.validate());
  CHECK(to_string(StopReason::LargeStop) == "large");
  CHECK(to_string(StopReason::ExceptionalStop) == "exceptional");
  CHECK(to_string(StopReason::ExtinctionStop) == "extinction");
}
