#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sqperc/graph.hpp"

namespace sqperc {

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

// Counter-based substream over the SplitMix64 state sequence.
//
// Draw k of trial t is mix(base + (t * 2^40 + k) * gamma), with base = mix(master_seed) and
// gamma the (odd) golden-ratio increment. Because gamma is odd the state map is injective,
// so trials below 2^24 with fewer than 2^40 draws each read disjoint state ranges.
class Substream {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr unsigned kDrawBits = 40;
  static constexpr std::uint64_t kMaxTrials = std::uint64_t{1} << (64 - kDrawBits);
  static constexpr std::uint64_t kMaxDraws = std::uint64_t{1} << kDrawBits;

  explicit Substream(SeedSpec seed);

  // Random access to draw k of this substream.
  std::uint64_t at(std::uint64_t k) const;
  std::uint64_t next();
  // Uniform on [0, 1) with 53 bits.
  double uniform();
  std::uint64_t position() const { return cursor_; }
  // First state word of the substream; exposed so disjointness can be asserted.
  std::uint64_t first_state() const { return first_state_; }

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t first_state_ = 0;
  std::uint64_t cursor_ = 0;
};

// Inclusion threshold on a 64-bit draw: a draw x is a success iff x < threshold,
// or always when p == 1. Exact for every double p in [0, 1].
struct BernoulliThreshold {
  explicit BernoulliThreshold(double p);
  bool operator()(std::uint64_t draw) const { return always || draw < threshold; }
  std::uint64_t threshold = 0;
  bool always = false;
};

struct GnpParams {
  std::size_t n = 0;
  double p = 0.0;

  // p = lambda / sqrt(n), evaluated as lambda / std::sqrt(double(n)) (both correctly rounded).
  static GnpParams from_lambda(std::size_t n, double lambda);
  void validate() const;
};

// Below this p the sampler skips geometrically instead of drawing per pair.
inline constexpr double kGeometricSkipBelow = 1e-3;

Graph sample_gnp(const GnpParams& params, SeedSpec seed);

// Edges (v, w) with v in [0, size_v) and w in [0, size_w).
std::vector<std::pair<Vertex, Vertex>> sample_bipartite(std::size_t size_v, std::size_t size_w, double p,
                                                        SeedSpec seed);

}  // namespace sqperc
