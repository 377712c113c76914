#include "sqperc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sqperc/branching.hpp"
#include "sqperc/random.hpp"
#include "sqperc/square_graph.hpp"

namespace sqperc {

std::uint64_t default_min_order(std::size_t n) {
  const double l = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(l * l * l * l)));
}

TrialResult run_trial(std::size_t n, double lambda, std::uint64_t master_seed, std::uint64_t trial_index,
                      std::optional<std::uint64_t> min_order) {
  if (n < 4) throw std::invalid_argument("run_trial needs n >= 4");
  const auto started = std::chrono::steady_clock::now();
  const auto params = GnpParams::from_lambda(n, lambda);
  const Graph g = sample_gnp(params, SeedSpec{master_seed, trial_index});
  const auto labeling = square_components(g, SquareVariant::Induced);

  TrialResult r;
  r.n = n;
  r.lambda = lambda;
  r.p = params.p;
  r.seed = master_seed;
  r.trial_index = trial_index;
  r.min_order = min_order.value_or(default_min_order(n));
  for (const auto& c : labeling.components()) {
    r.largest_support = std::max(r.largest_support, c.support_size);
    r.largest_order = std::max(r.largest_order, c.order);
    if (c.order >= r.min_order) ++r.n_components_ge_M;
  }
  r.full_support = r.largest_support == n;
  r.squares_in_large = r.n_components_ge_M ? squares_in_large_components(g, labeling, r.min_order) : 0;
  r.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return r;
}

void run_indexed(std::size_t count, const RunOptions& opts, const std::function<void(std::size_t)>& fn) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (opts.shuffle_seed) {
    // Fisher-Yates driven by a dedicated substream.
    Substream s(SeedSpec{*opts.shuffle_seed, 0});
    for (std::size_t i = count; i > 1; --i) std::swap(order[i - 1], order[s.next() % i]);
  }
  unsigned threads = opts.threads ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (auto i : order) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k; !failed && (k = next++) < count;) {
        try {
          fn(order[k]);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<TrialResult> run_trials(std::size_t n, double lambda, std::uint64_t trials, std::uint64_t master_seed,
                                    const RunOptions& opts, std::optional<std::uint64_t> min_order) {
  std::vector<TrialResult> out(trials);
  run_indexed(trials, opts, [&](std::size_t i) { out[i] = run_trial(n, lambda, master_seed, i, min_order); });
  return out;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nn;
  const double denom = 1.0 + z * z / nn;
  const double centre = (phat + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(phat * (1 - phat) / nn + z * z / (4 * nn * nn)) / denom;
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half), successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

SweepRow summarize(std::size_t n, double lambda, std::uint64_t master_seed, const std::vector<TrialResult>& trials) {
  SweepRow row;
  row.n = n;
  row.lambda = lambda;
  row.p = GnpParams::from_lambda(n, lambda).p;
  row.trials = trials.size();
  row.master_seed = master_seed;
  std::uint64_t full = 0;
  double sum = 0.0;
  for (const auto& t : trials) {
    full += t.full_support ? 1 : 0;
    sum += t.largest_support;
  }
  if (!trials.empty()) {
    row.frac_full_support = static_cast<double>(full) / static_cast<double>(trials.size());
    row.mean_largest_support = sum / static_cast<double>(trials.size());
  }
  if (trials.size() > 1) {
    double ss = 0.0;
    for (const auto& t : trials) ss += (t.largest_support - row.mean_largest_support) * (t.largest_support - row.mean_largest_support);
    row.sd_largest_support = std::sqrt(ss / static_cast<double>(trials.size() - 1));
  }
  const auto ci = wilson_interval(full, trials.size());
  row.wilson_ci_low = ci.low;
  row.wilson_ci_high = ci.high;
  return row;
}

SweepOutput sweep(const SweepSpec& spec, const RunOptions& opts, bool keep_trials) {
  if (spec.n_list.empty() || spec.lambda_grid.empty()) throw std::invalid_argument("sweep needs nonempty grids");
  if (spec.trials == 0) throw std::invalid_argument("sweep needs trials >= 1");
  for (auto n : spec.n_list)
    for (auto l : spec.lambda_grid) GnpParams::from_lambda(n, l);  // validate up front

  const std::size_t cells = spec.n_list.size() * spec.lambda_grid.size();
  std::vector<TrialResult> all(cells * spec.trials);
  run_indexed(all.size(), opts, [&](std::size_t k) {
    const std::size_t cell = k / spec.trials, trial = k % spec.trials;
    const auto n = spec.n_list[cell / spec.lambda_grid.size()];
    const auto l = spec.lambda_grid[cell % spec.lambda_grid.size()];
    all[k] = run_trial(n, l, spec.master_seed, trial);
  });

  SweepOutput out;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const auto n = spec.n_list[cell / spec.lambda_grid.size()];
    const auto l = spec.lambda_grid[cell % spec.lambda_grid.size()];
    std::vector<TrialResult> block(all.begin() + static_cast<std::ptrdiff_t>(cell * spec.trials),
                                   all.begin() + static_cast<std::ptrdiff_t>((cell + 1) * spec.trials));
    out.rows.push_back(summarize(n, l, spec.master_seed, block));
  }
  if (keep_trials) out.trial_log = std::move(all);
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g,%llu,%.6f,%.4f,%.4f,%.6f,%.6f,%llu\n", r.n, r.lambda, r.p,
                  static_cast<unsigned long long>(r.trials), r.frac_full_support, r.mean_largest_support,
                  r.sd_largest_support, r.wilson_ci_low, r.wilson_ci_high,
                  static_cast<unsigned long long>(r.master_seed));
    out += buf;
  }
  return out;
}

std::string trial_log_csv(const std::vector<TrialResult>& trials) {
  std::string out =
      "n,lambda,p,trial_index,master_seed,full_support,largest_support,largest_order,min_order,"
      "n_components_ge_M,squares_in_large\n";
  char buf[512];
  for (const auto& t : trials) {
    std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g,%llu,%llu,%d,%u,%llu,%llu,%llu,%llu\n", t.n, t.lambda, t.p,
                  static_cast<unsigned long long>(t.trial_index), static_cast<unsigned long long>(t.seed),
                  t.full_support ? 1 : 0, t.largest_support, static_cast<unsigned long long>(t.largest_order),
                  static_cast<unsigned long long>(t.min_order), static_cast<unsigned long long>(t.n_components_ge_M),
                  static_cast<unsigned long long>(t.squares_in_large));
    out += buf;
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << text;
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

namespace {

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: \"" + s + "\"");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: \"" + s + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::vector<double> parse_lambda_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("lambda range must be start:stop:step");
    const double a = parse_double(parts[0]), b = parse_double(parts[1]), step = parse_double(parts[2]);
    if (!(step > 0) || b < a) throw std::invalid_argument("lambda range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double(item));
  if (out.empty()) throw std::invalid_argument("empty lambda list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a size: \"" + item + "\"");
    }
    if (used != item.size() || item.empty() || item[0] == '-') throw std::invalid_argument("not a size: \"" + item + "\"");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw std::invalid_argument("empty size list");
  return out;
}

ThresholdEstimate estimate_threshold(std::size_t n, std::uint64_t trials, double target, double tol,
                                     std::uint64_t master_seed, const RunOptions& opts) {
  if (n < 100) throw std::invalid_argument("estimate_threshold needs n >= 100");
  if (trials == 0) throw std::invalid_argument("estimate_threshold needs trials >= 1");
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  ThresholdEstimate est;
  auto measure = [&](double lambda) {
    const auto row = summarize(n, lambda, master_seed, run_trials(n, lambda, trials, master_seed, opts));
    for (const auto& p : est.probes) {
      if ((p.lambda < lambda && p.frac_full_support > row.frac_full_support) ||
          (p.lambda > lambda && p.frac_full_support < row.frac_full_support)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "non-monotone measurements at lambda=%.6g and lambda=%.6g", p.lambda, lambda);
        est.warnings.emplace_back(buf);
        break;
      }
    }
    est.probes.push_back({lambda, row.frac_full_support});
    return row.frac_full_support;
  };
  est.lo = 0.2;
  est.hi = 3.0;
  const double f_lo = measure(est.lo), f_hi = measure(est.hi);
  if (f_lo >= target) est.warnings.emplace_back("target already reached at the lower end of the bracket");
  if (f_hi < target) est.warnings.emplace_back("target not reached at the upper end of the bracket");
  while (est.hi - est.lo > tol) {
    const double mid = 0.5 * (est.lo + est.hi);
    (measure(mid) >= target ? est.hi : est.lo) = mid;
  }
  est.lambda_hat = 0.5 * (est.lo + est.hi);
  return est;
}

ManySquaresReport many_squares_check(std::size_t n, double lambda, std::uint64_t trials, std::uint64_t master_seed,
                                     const RunOptions& opts) {
  if (!(lambda > lambda_critical()))
    throw std::invalid_argument("many_squares_check needs lambda > lambda_c = sqrt(sqrt(6) - 2)");
  ManySquaresReport rep;
  rep.n = n;
  rep.lambda = lambda;
  rep.p = GnpParams::from_lambda(n, lambda).p;
  rep.min_order = default_min_order(n);
  const auto law = offspring_pmf(n, rep.p, offspring_cap(n, rep.p, 1e-12));
  rep.theta_e = extinction_probability(law, 1e-12);
  const double nn = static_cast<double>(n);
  const double choose4 = nn * (nn - 1) * (nn - 2) * (nn - 3) / 24.0;
  const double p = rep.p;
  rep.lower_bound = 3.0 * p * p * p * p * (1 - p) * (1 - p) * choose4 * (1.0 - rep.theta_e);
  const auto results = run_trials(n, lambda, trials, master_seed, opts, rep.min_order);
  for (const auto& r : results)
    rep.trials.push_back({r.trial_index, r.squares_in_large, static_cast<double>(r.squares_in_large) / rep.lower_bound});
  return rep;
}

}  // namespace sqperc
