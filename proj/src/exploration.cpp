#include "sqperc/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "sqperc/square_graph.hpp"

namespace sqperc {

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::LargeStop: return "large";
    case StopReason::ExceptionalStop: return "exceptional";
    case StopReason::ExtinctionStop: return "extinction";
  }
  return "?";
}

ExplorationConfig ExplorationConfig::defaults(ExplorationVariant variant, std::size_t n) {
  ExplorationConfig cfg;
  cfg.variant = variant;
  if (variant == ExplorationVariant::Subcritical) {
    cfg.large_cap = n + 1;
  } else {
    const double l = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
    cfg.large_cap = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(l * l * l * l)));
  }
  return cfg;
}

void ExplorationConfig::validate() const {
  if (large_cap < 1) throw std::invalid_argument("large_cap must be >= 1");
  if (epoch_cap < 1) throw std::invalid_argument("epoch_cap must be >= 1");
}

namespace {

using Word = Bitset::Word;
using PosPair = std::pair<std::uint32_t, std::uint32_t>;  // D-positions, first < second

void invariant(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("exploration invariant violated: ") + what);
}

// Discovered vertices with their discovery positions, shared by both processes.
struct Discovered {
  explicit Discovered(std::size_t n) : pos(n, -1), in(n) {}

  void add(Vertex v) {
    pos[v] = static_cast<std::int32_t>(order.size());
    order.push_back(v);
    in.set(v);
  }
  PosPair key(Vertex a, Vertex b) const {
    auto pa = static_cast<std::uint32_t>(pos[a]), pb = static_cast<std::uint32_t>(pos[b]);
    return pa < pb ? PosPair{pa, pb} : PosPair{pb, pa};
  }
  VertexPair pair(PosPair k) const { return VertexPair(order[k.first], order[k.second]); }

  std::vector<Vertex> order;
  std::vector<std::int32_t> pos;
  Bitset in;
};

// Vertices z outside D with row(x) & row(y) set, i.e. fresh common neighbours (ascending).
std::vector<Vertex> fresh_common(const Graph& g, const Bitset& in, Vertex x, Vertex y) {
  std::vector<Vertex> out;
  const auto rx = g.row(x), ry = g.row(y);
  const auto iw = in.words();
  for (std::size_t wi = 0; wi < rx.size(); ++wi) {
    Word w = rx[wi] & ry[wi] & ~iw[wi];
    while (w) {
      out.push_back(static_cast<Vertex>(wi * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t popcount_and(std::span<const Word> a, std::span<const Word> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

class Subcritical {
 public:
  Subcritical(const Graph& g, VertexPair start, const ExplorationConfig& cfg)
      : g_(g), cfg_(cfg), n_(g.vertex_count()), words_(g.words_per_row()), idx_(n_), d_(n_),
        e_(n_ * words_, 0), s_(static_cast<std::size_t>(idx_.pair_count())) {
    if (start.v >= n_) throw std::out_of_range("start pair out of range");
    d_.add(start.u);
    d_.add(start.v);
    active_.insert(d_.key(start.u, start.v));
    mark(start.u, start.v);
  }

  ExplorationResult run() {
    ExplorationResult out;
    while (true) {
      if (cfg_.check_invariants) check();
      if (d_.order.size() >= cfg_.large_cap) {
        out.stop = StopReason::LargeStop;
        break;
      }
      if (!active_.empty()) {
        record(out, StepKind::Expand);
        expand();
        ++t_;
        continue;
      }
      record(out, StepKind::Reconcile);
      if (auto stop = reconcile()) {
        out.stop = *stop;
        break;
      }
      ++t_;
    }
    record(out, StepKind::Stop);
    finish(out);
    return out;
  }

 private:
  std::span<Word> erow(Vertex v) { return {e_.data() + std::size_t{v} * words_, words_}; }
  std::span<const Word> erow(Vertex v) const { return {e_.data() + std::size_t{v} * words_, words_}; }
  void add_e(Vertex a, Vertex b) {
    erow(a)[b / 64] |= Word{1} << (b % 64);
    erow(b)[a / 64] |= Word{1} << (a % 64);
  }
  void mark(Vertex a, Vertex b) {
    const auto id = idx_.encode(a, b).index;
    if (!s_.test(id)) {
      s_.set(id);
      ++s_count_;
    }
  }

  // Step 1: expand the first active pair.
  void expand() {
    const PosPair a = *active_.begin();
    active_.erase(active_.begin());
    const Vertex x = d_.order[a.first], y = d_.order[a.second];
    const auto z = fresh_common(g_, d_.in, x, y);
    std::vector<Vertex> f;
    {
      const auto rx = erow(x), ry = erow(y);
      for (std::size_t wi = 0; wi < words_; ++wi) {
        Word w = rx[wi] & ry[wi];
        while (w) {
          f.push_back(static_cast<Vertex>(wi * 64 + std::countr_zero(w)));
          w &= w - 1;
        }
      }
    }
    if (cfg_.check_invariants) invariant(f.size() <= 2, "(star) active pair has more than 2 explored common neighbours");
    for (Vertex v : z) d_.add(v);
    // (F ∪ Z)^(2) minus F^(2): every new pair contains a fresh vertex.
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (Vertex w : f) push_active(z[i], w);
      for (std::size_t j = 0; j < i; ++j) push_active(z[i], z[j]);
    }
    for (Vertex v : z) {
      add_e(v, x);
      add_e(v, y);
    }
  }

  void push_active(Vertex a, Vertex b) {
    active_.insert(d_.key(a, b));
    mark(a, b);
  }

  // Edges of Γ[D] not yet in E.
  std::uint64_t hidden_edges() const {
    std::uint64_t twice = 0;
    const auto iw = d_.in.words();
    for (Vertex v : d_.order) {
      const auto r = g_.row(v), er = erow(v);
      for (std::size_t wi = 0; wi < words_; ++wi)
        twice += static_cast<std::uint64_t>(std::popcount(r[wi] & iw[wi] & ~er[wi]));
    }
    return twice / 2;
  }

  void reveal_all() {
    const auto iw = d_.in.words();
    for (Vertex v : d_.order) {
      const auto r = g_.row(v);
      auto er = erow(v);
      for (std::size_t wi = 0; wi < words_; ++wi) er[wi] = r[wi] & iw[wi];
    }
  }

  void mark_all_discovered() {
    for (std::size_t i = 0; i < d_.order.size(); ++i)
      for (std::size_t j = i + 1; j < d_.order.size(); ++j) mark(d_.order[i], d_.order[j]);
  }

  // Vertices outside D with at least k neighbours in D (ascending).
  std::vector<Vertex> outside_with(std::size_t k) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n_; ++v)
      if (!d_.in.test(v) && popcount_and(g_.row(v), d_.in.words()) >= k) out.push_back(v);
    return out;
  }

  // Step 3 with subroutines 3A/3B; returns a stop reason when the process terminates.
  std::optional<StopReason> reconcile() {
    const std::uint64_t i = hidden_edges();
    if (i == 0) return StopReason::ExtinctionStop;
    if (epoch_ + i >= cfg_.epoch_cap) return StopReason::ExceptionalStop;
    epoch_ += static_cast<std::uint32_t>(i);
    reveal_all();
    if (cfg_.reset_discovered_on_reconcile) mark_all_discovered();
    // 3A: absorb vertices sending at least three edges into D.
    while (true) {
      const auto z1 = outside_with(3);
      if (z1.empty()) break;
      if (epoch_ + z1.size() > cfg_.epoch_cap) return StopReason::ExceptionalStop;
      for (Vertex v : z1) d_.add(v);
      reveal_all();
      mark_all_discovered();
      epoch_ += static_cast<std::uint32_t>(z1.size());
    }
    // 3B: vertices with exactly two edges into D become the tips of new active pairs.
    const auto z2 = outside_with(2);
    const std::size_t old_size = d_.order.size();
    for (Vertex v : z2) d_.add(v);
    for (Vertex v : z2) {
      const auto r = g_.row(v);
      for (std::size_t p = 0; p < old_size; ++p) {
        const Vertex w = d_.order[p];
        if ((r[w / 64] >> (w % 64)) & 1U) add_e(v, w);
      }
    }
    for (std::size_t p = old_size; p < d_.order.size(); ++p)
      for (std::size_t q = 0; q < p; ++q) push_active(d_.order[p], d_.order[q]);
    return std::nullopt;
  }

  void check() {
    invariant(epoch_ <= cfg_.epoch_cap, "epoch exceeds epoch_cap");
    invariant(s_count_ >= last_s_count_, "discovered pairs shrank");
    last_s_count_ = s_count_;
    const auto iw = d_.in.words();
    for (Vertex v : d_.order) {
      const auto r = g_.row(v);
      const auto er = erow(v);
      for (std::size_t wi = 0; wi < words_; ++wi)
        invariant((er[wi] & ~(r[wi] & iw[wi])) == 0, "explored edges outside Γ[D]");
    }
    for (const auto& k : active_) {
      const Vertex x = d_.order[k.first], y = d_.order[k.second];
      invariant(popcount_and(erow(x), erow(y)) <= 2, "(star) active pair has more than 2 explored common neighbours");
      invariant(s_.test(idx_.encode(x, y).index), "active pair missing from discovered pairs");
    }
  }

  void record(ExplorationResult& out, StepKind kind) const {
    if (!cfg_.trace) return;
    out.trace.push_back(TraceStep{t_, kind, d_.order.size(), active_.size(), s_count_, epoch_});
  }

  void finish(ExplorationResult& out) const {
    auto& st = out.state;
    st.discovered = d_.order;
    for (const auto& k : active_) st.active.push_back(d_.pair(k));
    s_.for_each([&](std::size_t id) { st.pairs.push_back(idx_.decode(PairId{id})); });
    for (Vertex v : d_.order) {
      const auto er = erow(v);
      for (std::size_t wi = 0; wi < words_; ++wi) {
        Word w = er[wi];
        while (w) {
          const auto u = static_cast<Vertex>(wi * 64 + std::countr_zero(w));
          if (v < u) st.explored_edges.emplace_back(v, u);
          w &= w - 1;
        }
      }
    }
    std::sort(st.explored_edges.begin(), st.explored_edges.end());
    st.epoch = epoch_;
    st.t = t_;
  }

  const Graph& g_;
  const ExplorationConfig& cfg_;
  std::size_t n_, words_;
  PairIndexer idx_;
  Discovered d_;
  std::set<PosPair> active_;
  std::vector<Word> e_;
  Bitset s_;
  std::uint64_t s_count_ = 0, last_s_count_ = 0;
  std::uint32_t epoch_ = 0;
  std::uint64_t t_ = 0;
};

}  // namespace

ExplorationResult explore_subcritical(const Graph& g, VertexPair start, const ExplorationConfig& cfg) {
  cfg.validate();
  if (cfg.variant != ExplorationVariant::Subcritical)
    throw std::invalid_argument("explore_subcritical needs a subcritical config");
  return Subcritical(g, start, cfg).run();
}

ExplorationResult explore_supercritical(const Graph& g, const std::array<Vertex, 4>& start,
                                        const ExplorationConfig& cfg) {
  cfg.validate();
  if (cfg.variant != ExplorationVariant::Supercritical)
    throw std::invalid_argument("explore_supercritical needs a supercritical config");
  const std::size_t n = g.vertex_count();
  for (std::size_t i = 0; i < 4; ++i) {
    if (start[i] >= n) throw std::invalid_argument("start vertex out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (start[i] == start[j]) throw std::invalid_argument("start vertices must be distinct");
  }
  const auto [v1, v2, v3, v4] = start;
  if (!(g.has_edge(v1, v2) && g.has_edge(v2, v3) && g.has_edge(v3, v4) && g.has_edge(v4, v1)) ||
      g.has_edge(v1, v3) || g.has_edge(v2, v4))
    throw std::invalid_argument("start does not induce the 4-cycle v1-v2-v3-v4");

  ExplorationResult out;
  Discovered d(n);
  for (Vertex v : start) d.add(v);
  std::set<PosPair> active{d.key(v1, v3), d.key(v2, v4)};
  std::vector<VertexPair> reached;
  std::uint64_t t = 0;
  auto record = [&](StepKind kind) {
    if (cfg.trace) out.trace.push_back(TraceStep{t, kind, d.order.size(), active.size(), reached.size(), 0});
  };
  const auto common_in_d = [&](Vertex x, Vertex y) {
    std::vector<Vertex> f;
    const auto rx = g.row(x), ry = g.row(y);
    const auto iw = d.in.words();
    for (std::size_t wi = 0; wi < rx.size(); ++wi) {
      Word w = rx[wi] & ry[wi] & iw[wi];
      while (w) {
        f.push_back(static_cast<Vertex>(wi * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return f;
  };

  while (true) {
    if (cfg.check_invariants) {
      for (const auto& k : active) {
        const Vertex x = d.order[k.first], y = d.order[k.second];
        invariant(!g.has_edge(x, y), "active pair is an edge");
        invariant(common_in_d(x, y).size() >= 2, "(star) active pair has fewer than 2 common neighbours in Γ[D]");
      }
    }
    if (reached.size() + active.size() > cfg.large_cap) {
      out.stop = StopReason::LargeStop;
      break;
    }
    if (active.empty()) {
      out.stop = StopReason::ExtinctionStop;
      break;
    }
    record(StepKind::Expand);
    const PosPair a = *active.begin();
    active.erase(active.begin());
    const Vertex x = d.order[a.first], y = d.order[a.second];
    reached.emplace_back(x, y);
    const auto f = common_in_d(x, y);
    const auto z = fresh_common(g, d.in, x, y);
    for (Vertex v : z) d.add(v);
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (Vertex w : f)
        if (!g.has_edge(z[i], w)) active.insert(d.key(z[i], w));
      for (std::size_t j = 0; j < i; ++j)
        if (!g.has_edge(z[i], z[j])) active.insert(d.key(z[i], z[j]));
    }
    ++t;
  }
  record(StepKind::Stop);
  auto& st = out.state;
  st.discovered = d.order;
  for (const auto& k : active) st.active.push_back(d.pair(k));
  st.pairs = reached;
  st.pairs.insert(st.pairs.end(), st.active.begin(), st.active.end());
  std::sort(st.pairs.begin(), st.pairs.end());
  st.t = t;
  return out;
}

bool check_superset(const Graph& g, VertexPair start, const ExplorationConfig& cfg) {
  const auto r = explore_subcritical(g, start, cfg);
  if (r.stop != StopReason::ExtinctionStop) return true;
  const auto labeling = square_components(g, SquareVariant::Relaxed);
  const auto comp = *labeling.component_of(start);
  const auto& s = r.state.pairs;
  for (const auto& p : labeling.members(comp))
    if (!std::binary_search(s.begin(), s.end(), p)) return false;
  return true;
}

}  // namespace sqperc
