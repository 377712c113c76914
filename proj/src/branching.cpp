#include "sqperc/branching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sqperc {

namespace {

constexpr double kLogUnderflow = -745.2;  // exp() of anything smaller is 0 in double

std::uint64_t offspring_value(std::uint64_t z) { return z * (z + 3) / 2; }

// log P(Z = z) for z = 0, 1, ... by the ratio recurrence, stopping once past the mean the
// mass underflows. Entries before the stop may be -inf-like but are kept for indexing.
std::vector<double> binomial_log_pmf_prefix(std::uint64_t n, double q) {
  std::vector<double> out;
  const double log_q = std::log(q), log_1mq = std::log1p(-q);
  const double mean = static_cast<double>(n) * q;
  double lp = static_cast<double>(n) * log_1mq;
  for (std::uint64_t z = 0; z <= n; ++z) {
    out.push_back(lp);
    if (static_cast<double>(z) > mean && lp < kLogUnderflow) break;
    if (z == n) break;
    lp += std::log(static_cast<double>(n - z)) - std::log(static_cast<double>(z + 1)) + log_q - log_1mq;
  }
  return out;
}

}  // namespace

double OffspringLaw::total_mass() const {
  double s = overflow;
  for (double m : pmf) s += m;
  return s;
}

double OffspringLaw::mean() const {
  double s = overflow * static_cast<double>(cap());
  for (std::size_t x = 0; x < pmf.size(); ++x) s += static_cast<double>(x) * pmf[x];
  return s;
}

double OffspringLaw::generating(double theta) const {
  double acc = 0.0;
  for (std::size_t i = pmf.size(); i-- > 0;) acc = acc * theta + pmf[i];
  return acc + overflow * std::pow(theta, static_cast<double>(cap()));
}

double OffspringLaw::generating_derivative(double theta) const {
  double acc = 0.0;
  for (std::size_t i = pmf.size(); i-- > 1;) acc = acc * theta + static_cast<double>(i) * pmf[i];
  const auto c = static_cast<double>(cap());
  if (c > 0) acc += overflow * c * std::pow(theta, c - 1);
  return acc;
}

void OffspringLaw::validate(double tol) const {
  if (pmf.empty() && overflow == 0.0) throw std::invalid_argument("offspring law is empty");
  if (overflow < 0.0) throw std::invalid_argument("offspring law has negative overflow mass");
  for (double m : pmf)
    if (!(m >= 0.0)) throw std::invalid_argument("offspring law has a negative or NaN mass");
  const double total = total_mass();
  if (std::abs(total - 1.0) > tol)
    throw std::invalid_argument("offspring law is not normalized (total mass " + std::to_string(total) + ")");
}

OffspringLaw OffspringLaw::from_masses(std::initializer_list<std::pair<std::size_t, double>> masses) {
  OffspringLaw law;
  for (const auto& [value, mass] : masses) {
    if (law.pmf.size() <= value) law.pmf.resize(value + 1, 0.0);
    law.pmf[value] += mass;
  }
  return law;
}

double lambda_critical() { return std::sqrt(std::sqrt(6.0) - 2.0); }

double lambda_critical_bisection() {
  auto h = [](double l) { return 0.5 * l * l * l * l + 2.0 * l * l - 1.0; };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double offspring_mean(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  const double q = p * p;
  const double ez = static_cast<double>(n) * q;
  const double ez2 = ez * (1.0 - q) + ez * ez;
  return 0.5 * (ez2 + 3.0 * ez);
}

OffspringLaw offspring_pmf(std::uint64_t n, double p, std::size_t cap) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  OffspringLaw law;
  law.pmf.assign(cap + 1, 0.0);
  const double q = p * p;
  auto deposit = [&](std::uint64_t z, double mass) {
    const auto x = offspring_value(z);
    if (x <= cap)
      law.pmf[x] += mass;
    else
      law.overflow += mass;
  };
  if (q == 0.0 || n == 0) {
    deposit(0, 1.0);
    return law;
  }
  if (q == 1.0) {
    deposit(n, 1.0);
    return law;
  }
  const auto lp = binomial_log_pmf_prefix(n, q);
  for (std::uint64_t z = 0; z < lp.size(); ++z)
    if (lp[z] >= kLogUnderflow) deposit(z, std::exp(lp[z]));
  return law;
}

std::size_t offspring_cap(std::uint64_t n, double p, double max_overflow) {
  const double q = p * p;
  if (q == 0.0 || n == 0) return 0;
  if (q == 1.0) return static_cast<std::size_t>(offspring_value(n));
  const auto lp = binomial_log_pmf_prefix(n, q);
  // Suffix masses from the top so small tails are summed first.
  std::uint64_t z = lp.size() - 1;
  while (z > 0 && lp[z] < kLogUnderflow) --z;
  if (max_overflow > 0.0) {
    double tail = 0.0;
    while (z > 0) {
      tail += std::exp(lp[z]);
      if (tail > max_overflow) break;
      --z;
    }
  }
  return static_cast<std::size_t>(offspring_value(z));
}

double extinction_probability(const OffspringLaw& law, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  law.validate();
  constexpr int kMaxIterations = 1'000'000;
  // Plain iteration theta <- f(theta) from 0 climbs monotonically to the smallest fixed point.
  // Once steps drop below sqrt(tol) we finish with Newton steps on f(theta) - theta, which
  // by convexity also stay below the smallest fixed point.
  const double coarse = std::sqrt(tol);
  double theta = 0.0;
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    const double next = std::min(1.0, law.generating(theta));
    const double step = next - theta;
    theta = std::max(theta, next);
    if (step < coarse) break;
  }
  for (; it < kMaxIterations; ++it) {
    const double g = law.generating(theta) - theta;
    if (g <= 0.0) return theta;
    const double slope = law.generating_derivative(theta) - 1.0;
    if (slope >= 0.0) return 1.0;  // f - id increasing from here: the only root left is 1
    const double next = std::min(1.0, theta - g / slope);
    const double step = next - theta;
    theta = next;
    if (step < tol) return theta;
  }
  throw std::runtime_error("extinction_probability did not converge");
}

OffspringSampler law_sampler(const OffspringLaw& law) {
  law.validate();
  std::vector<double> cdf(law.pmf.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < law.pmf.size(); ++i) cdf[i] = acc += law.pmf[i];
  const std::uint64_t overflow_value = law.pmf.size();
  return [cdf = std::move(cdf), overflow_value](Substream& s) -> std::uint64_t {
    const double u = s.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) return overflow_value;
    return static_cast<std::uint64_t>(it - cdf.begin());
  };
}

BranchingResult simulate_gw(const OffspringSampler& sampler, std::uint64_t max_progeny, SeedSpec seed) {
  if (max_progeny < 1) throw std::invalid_argument("max_progeny must be >= 1");
  Substream stream(seed);
  BranchingResult r;
  std::uint64_t current = 1;
  for (std::uint64_t gen = 0;; ++gen) {
    std::uint64_t next = 0;
    for (std::uint64_t i = 0; i < current; ++i) {
      next += sampler(stream);
      if (r.total_progeny + next > max_progeny) {
        r.total_progeny += next;
        r.generations = gen + 1;
        r.truncated = true;
        return r;
      }
    }
    if (next == 0) {
      r.extinct = true;
      r.generations = gen;
      return r;
    }
    r.total_progeny += next;
    current = next;
  }
}

BranchingResult simulate_gw(const OffspringLaw& law, std::uint64_t max_progeny, SeedSpec seed) {
  return simulate_gw(law_sampler(law), max_progeny, seed);
}

std::vector<double> dwass_progeny_pmf(const OffspringLaw& law, std::size_t k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  law.validate();
  if (law.overflow > 0.0) throw std::invalid_argument("dwass_progeny_pmf needs a law with an empty overflow bucket");
  // sum[s] = P(X_1 + ... + X_k = s) for s < k_max; larger sums never reach k - 1 <= k_max - 1.
  const std::size_t width = k_max;
  std::vector<double> base(width, 0.0);
  for (std::size_t x = 0; x < std::min(width, law.pmf.size()); ++x) base[x] = law.pmf[x];
  std::vector<double> sum = base, next(width);
  std::vector<double> out(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t s = 0; s < width; ++s) {
        if (sum[s] == 0.0) continue;
        for (std::size_t x = 0; s + x < width; ++x) next[s + x] += sum[s] * base[x];
      }
      sum.swap(next);
    }
    out[k - 1] = sum[k - 1] / static_cast<double>(k);
  }
  return out;
}

double binomial_log_pmf(std::uint64_t n, double q, std::uint64_t r) {
  if (r > n) return -std::numeric_limits<double>::infinity();
  if (q == 0.0) return r == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (q == 1.0) return r == n ? 0.0 : -std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n), rr = static_cast<double>(r);
  return std::lgamma(nn + 1) - std::lgamma(rr + 1) - std::lgamma(nn - rr + 1) + rr * std::log(q) +
         (nn - rr) * std::log1p(-q);
}

double binomial_tail(std::uint64_t n, double q, double t) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  if (t <= 0.0) return 1.0;
  if (t > static_cast<double>(n)) return 0.0;
  const auto r0 = static_cast<std::uint64_t>(std::ceil(t));
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;
  // Log terms r0, r0+1, ... by the ratio recurrence, until they are negligible past the mode.
  const double log_ratio_q = std::log(q) - std::log1p(-q);
  const double mode = std::floor((static_cast<double>(n) + 1) * q);
  std::vector<double> terms;
  double lp = binomial_log_pmf(n, q, r0), best = lp;
  for (std::uint64_t r = r0; r <= n; ++r) {
    terms.push_back(lp);
    best = std::max(best, lp);
    if (static_cast<double>(r) >= mode && lp < best - 60.0) break;
    if (r == n) break;
    lp += std::log(static_cast<double>(n - r)) - std::log(static_cast<double>(r + 1)) + log_ratio_q;
  }
  double acc = 0.0;
  for (std::size_t i = terms.size(); i-- > 0;) acc += std::exp(terms[i] - best);
  return std::min(1.0, std::exp(best + std::log(acc)));
}

}  // namespace sqperc
