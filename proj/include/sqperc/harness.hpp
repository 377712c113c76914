#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sqperc {

struct TrialResult {
  std::size_t n = 0;
  double lambda = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
  bool full_support = false;
  std::uint32_t largest_support = 0;
  std::uint64_t largest_order = 0;
  std::uint64_t min_order = 0;  // the M used by the two counters below
  std::uint64_t n_components_ge_M = 0;
  std::uint64_t squares_in_large = 0;
  double wall_time_ms = 0.0;
};

struct SweepRow {
  std::size_t n = 0;
  double lambda = 0.0;
  double p = 0.0;
  std::uint64_t trials = 0;
  double frac_full_support = 0.0;
  double mean_largest_support = 0.0;
  double sd_largest_support = 0.0;
  double wilson_ci_low = 0.0;
  double wilson_ci_high = 0.0;
  std::uint64_t master_seed = 0;
};

// Execution knobs that must not change any result.
struct RunOptions {
  unsigned threads = 0;  // 0: std::thread::hardware_concurrency()
  // When set, work items start in a permuted order drawn from this seed.
  std::optional<std::uint64_t> shuffle_seed;
};

// ceil((ln n)^4), the default size threshold for "large" components.
std::uint64_t default_min_order(std::size_t n);

// Samples G(n, lambda/sqrt(n)) from substream (master_seed, trial_index) and measures its
// Induced square components. Every trial index reads the same substream at every (n, lambda),
// so measurements across a lambda grid are coupled.
TrialResult run_trial(std::size_t n, double lambda, std::uint64_t master_seed, std::uint64_t trial_index,
                      std::optional<std::uint64_t> min_order = std::nullopt);

// Runs fn(i) for i in [0, count) on a bounded worker pool.
void run_indexed(std::size_t count, const RunOptions& opts, const std::function<void(std::size_t)>& fn);

// Results ordered by trial index regardless of execution order.
std::vector<TrialResult> run_trials(std::size_t n, double lambda, std::uint64_t trials, std::uint64_t master_seed,
                                    const RunOptions& opts = {},
                                    std::optional<std::uint64_t> min_order = std::nullopt);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};
// 95% Wilson score interval for successes out of trials.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials);

SweepRow summarize(std::size_t n, double lambda, std::uint64_t master_seed, const std::vector<TrialResult>& trials);

struct SweepSpec {
  std::vector<std::size_t> n_list;
  std::vector<double> lambda_grid;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
};

struct SweepOutput {
  std::vector<SweepRow> rows;          // n-major, then lambda in grid order
  std::vector<TrialResult> trial_log;  // only filled when requested
};

SweepOutput sweep(const SweepSpec& spec, const RunOptions& opts = {}, bool keep_trials = false);

inline constexpr const char* kSweepCsvHeader =
    "n,lambda,p,trials,frac_full_support,mean_largest_support,sd_largest_support,wilson_ci_low,wilson_ci_high,"
    "master_seed";
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string trial_log_csv(const std::vector<TrialResult>& trials);

// Writes text to path; failures throw std::runtime_error naming the path.
void write_text_file(const std::filesystem::path& path, const std::string& text);

// "a:b:step" (inclusive of b) or a comma-separated list.
std::vector<double> parse_lambda_grid(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

struct ThresholdProbe {
  double lambda = 0.0;
  double frac_full_support = 0.0;
};

struct ThresholdEstimate {
  double lambda_hat = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<ThresholdProbe> probes;  // in evaluation order
  std::vector<std::string> warnings;
};

// Bisection on lambda in [0.2, 3.0] against the measured full-support fraction.
ThresholdEstimate estimate_threshold(std::size_t n, std::uint64_t trials, double target, double tol,
                                     std::uint64_t master_seed, const RunOptions& opts = {});

struct ManySquaresTrial {
  std::uint64_t trial_index = 0;
  std::uint64_t squares_in_large = 0;
  double ratio = 0.0;  // squares_in_large / lower_bound
};

struct ManySquaresReport {
  std::size_t n = 0;
  double lambda = 0.0;
  double p = 0.0;
  std::uint64_t min_order = 0;
  double theta_e = 0.0;
  // 3 p^4 (1-p)^2 C(n,4) (1 - theta_e)
  double lower_bound = 0.0;
  std::vector<ManySquaresTrial> trials;
};

// Requires lambda > lambda_critical().
ManySquaresReport many_squares_check(std::size_t n, double lambda, std::uint64_t trials, std::uint64_t master_seed,
                                     const RunOptions& opts = {});

}  // namespace sqperc
