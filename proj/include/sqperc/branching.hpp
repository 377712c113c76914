#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sqperc/random.hpp"

namespace sqperc {

// Finite offspring law on {0, ..., cap} plus the mass of values above cap.
struct OffspringLaw {
  std::vector<double> pmf;
  double overflow = 0.0;

  std::size_t cap() const { return pmf.empty() ? 0 : pmf.size() - 1; }
  double total_mass() const;
  // Mean with the overflow mass placed at cap (a lower bound on the true mean).
  double mean() const;
  // Generating function with overflow contributing overflow * theta^cap.
  double generating(double theta) const;
  double generating_derivative(double theta) const;

  // Throws std::invalid_argument for negative entries or total mass off 1 by more than tol.
  void validate(double tol = 1e-9) const;

  // Law with P(value) = mass for each listed (value, mass).
  static OffspringLaw from_masses(std::initializer_list<std::pair<std::size_t, double>> masses);
};

struct BranchingResult {
  bool extinct = false;
  // Index of the last non-empty generation (the root is generation 0).
  std::uint64_t generations = 0;
  // Vertices counted so far, root included.
  std::uint64_t total_progeny = 1;
  bool truncated = false;
};

// Positive root of λ⁴/2 + 2λ² = 1, i.e. sqrt(sqrt(6) - 2).
double lambda_critical();
// Same root found by bisection on the quartic; kept as an independent route.
double lambda_critical_bisection();

// E[(Z² + 3Z)/2] for Z ~ Binom(n, p²).
double offspring_mean(std::uint64_t n, double p);

// Law of X = (Z² + 3Z)/2, Z ~ Binom(n, p²); mass above cap goes to the overflow bucket.
OffspringLaw offspring_pmf(std::uint64_t n, double p, std::size_t cap);
// Smallest cap whose overflow mass is at most max_overflow (0 means: every representable mass).
std::size_t offspring_cap(std::uint64_t n, double p, double max_overflow);

// Smallest fixed point of the generating function on [0, 1].
double extinction_probability(const OffspringLaw& law, double tol);

using OffspringSampler = std::function<std::uint64_t(Substream&)>;

// Inverse-CDF sampler; a draw landing in the overflow bucket yields cap + 1.
OffspringSampler law_sampler(const OffspringLaw& law);

BranchingResult simulate_gw(const OffspringSampler& sampler, std::uint64_t max_progeny, SeedSpec seed);
BranchingResult simulate_gw(const OffspringLaw& law, std::uint64_t max_progeny, SeedSpec seed);

// P(W = k) for k = 1..k_max (index k-1), from P(W = k) = P(X_1 + ... + X_k = k - 1) / k.
std::vector<double> dwass_progeny_pmf(const OffspringLaw& law, std::size_t k_max);

// P(Z >= t) for Z ~ Binom(n, q), summed in log space from the top of the support.
double binomial_tail(std::uint64_t n, double q, double t);

// log P(Z = r) for Z ~ Binom(n, q).
double binomial_log_pmf(std::uint64_t n, double q, std::uint64_t r);

}  // namespace sqperc
