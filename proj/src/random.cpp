#include "sqperc/random.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqperc {

std::uint64_t Substream::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Substream::Substream(SeedSpec seed) {
  if (seed.trial_index >= kMaxTrials) throw std::invalid_argument("trial_index exceeds 2^24");
  first_state_ = mix(seed.master_seed) + (seed.trial_index << kDrawBits) * kGamma;
}

std::uint64_t Substream::at(std::uint64_t k) const {
  if (k >= kMaxDraws) throw std::out_of_range("substream exhausted (2^40 draws)");
  return mix(first_state_ + k * kGamma);
}

std::uint64_t Substream::next() { return at(cursor_++); }

double Substream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

BernoulliThreshold::BernoulliThreshold(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  if (p == 1.0) {
    always = true;
    return;
  }
  threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
}

GnpParams GnpParams::from_lambda(std::size_t n, double lambda) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  GnpParams out{n, lambda / std::sqrt(static_cast<double>(n))};
  out.validate();
  return out;
}

void GnpParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("edge probability " + std::to_string(p) + " outside [0,1]");
}

namespace {

// Calls emit(k) for each success among `count` Bernoulli(p) trials numbered 0..count-1.
template <class Emit>
void bernoulli_indices(std::uint64_t count, double p, Substream& stream, Emit&& emit) {
  if (p == 0.0 || count == 0) return;
  if (p >= kGeometricSkipBelow) {
    const BernoulliThreshold keep(p);
    for (std::uint64_t k = 0; k < count; ++k)
      if (keep(stream.at(k))) emit(k);
    return;
  }
  // Gap to the next success is Geometric(p) on {0, 1, ...}.
  const double log_q = std::log1p(-p);
  std::uint64_t k = 0;
  while (true) {
    const double u = 1.0 - stream.uniform();  // (0, 1]
    const double gap = std::floor(std::log(u) / log_q);
    if (gap >= static_cast<double>(count - k)) return;
    k += static_cast<std::uint64_t>(gap);
    emit(k);
    if (++k >= count) return;
  }
}

}  // namespace

Graph sample_gnp(const GnpParams& params, SeedSpec seed) {
  params.validate();
  const std::size_t n = params.n;
  GraphBuilder b(n);
  if (params.p == 1.0) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
    return std::move(b).build();
  }
  Substream stream(seed);
  const PairIndexer idx(n);
  if (params.p >= kGeometricSkipBelow) {
    // Dense path walks pairs in PairId order so draw k decides pair k.
    const BernoulliThreshold keep(params.p);
    std::uint64_t k = 0;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v, ++k)
        if (keep(stream.at(k))) b.add_edge(u, v);
    return std::move(b).build();
  }
  bernoulli_indices(idx.pair_count(), params.p, stream, [&](std::uint64_t k) {
    const auto e = idx.decode(PairId{k});
    b.add_edge(e.u, e.v);
  });
  return std::move(b).build();
}

std::vector<std::pair<Vertex, Vertex>> sample_bipartite(std::size_t size_v, std::size_t size_w, double p,
                                                        SeedSpec seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  std::vector<std::pair<Vertex, Vertex>> out;
  const std::uint64_t count = std::uint64_t{size_v} * size_w;
  if (p == 1.0) {
    out.reserve(count);
    for (Vertex v = 0; v < size_v; ++v)
      for (Vertex w = 0; w < size_w; ++w) out.emplace_back(v, w);
    return out;
  }
  Substream stream(seed);
  bernoulli_indices(count, p, stream, [&](std::uint64_t k) {
    out.emplace_back(static_cast<Vertex>(k / size_w), static_cast<Vertex>(k % size_w));
  });
  return out;
}

}  // namespace sqperc
