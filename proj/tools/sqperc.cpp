#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sqperc/branching.hpp"
#include "sqperc/exploration.hpp"
#include "sqperc/graph.hpp"
#include "sqperc/harness.hpp"
#include "sqperc/racg.hpp"
#include "sqperc/random.hpp"
#include "sqperc/report.hpp"
#include "sqperc/square_graph.hpp"

using namespace sqperc;

namespace {

// Argument problems detected after parsing; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Graph read_graph(const std::string& input) {
  std::string text;
  if (input.empty() || input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream is(input, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + input);
    text.assign(std::istreambuf_iterator<char>(is), {});
  }
  return from_edge_list(text);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
}

std::vector<Vertex> parse_vertices(const std::string& s) {
  std::vector<Vertex> out;
  for (auto v : parse_size_list(s)) out.push_back(static_cast<Vertex>(v));
  return out;
}

OffspringLaw parse_law(const std::string& s) {
  OffspringLaw law;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("law entries look like value:mass, got \"" + item + "\"");
    std::size_t value = 0;
    double mass = 0.0;
    try {
      std::size_t used = 0;
      value = std::stoul(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("");
      const auto rest = item.substr(colon + 1);
      mass = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("bad law entry \"" + item + "\"");
    }
    if (law.pmf.size() <= value) law.pmf.resize(value + 1, 0.0);
    law.pmf[value] += mass;
  }
  if (law.pmf.empty()) throw UsageError("empty law");
  law.validate();
  return law;
}

struct LawSource {
  std::string law;
  std::optional<std::uint64_t> n;
  std::optional<double> lambda;

  void add(CLI::App* cmd) {
    auto* l = cmd->add_option("--law", law, "explicit offspring law, e.g. 0:0.5,2:0.5");
    auto* nn = cmd->add_option("--n", n, "graph size for the square-percolation offspring law");
    auto* lam = cmd->add_option("--lambda", lambda, "p = lambda/sqrt(n)");
    l->excludes(nn)->excludes(lam);
  }

  // The law truncated far enough that no representable mass is left in the overflow bucket.
  OffspringLaw resolve() const {
    if (!law.empty()) return parse_law(law);
    if (!n || !lambda) throw UsageError("give --law or both --n and --lambda");
    const auto params = GnpParams::from_lambda(*n, *lambda);
    return offspring_pmf(*n, params.p, offspring_cap(*n, params.p, 0.0));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"square percolation on random graphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "sample G(n, p) as an edge list");
  std::size_t gen_n = 0;
  std::optional<double> gen_p, gen_lambda;
  std::uint64_t gen_seed = 0, gen_trial = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n)->required();
  auto* gp = gen->add_option("--p", gen_p);
  auto* gl = gen->add_option("--lambda", gen_lambda);
  gp->excludes(gl);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--trial", gen_trial);
  gen->add_option("--out", gen_out);

  // components
  auto* comp = app.add_subcommand("components", "square-graph components as JSON lines");
  std::string comp_input, comp_variant = "induced";
  std::optional<std::uint64_t> comp_min_order;
  comp->add_option("--input", comp_input, "edge-list file (default stdin)");
  comp->add_option("--variant", comp_variant)->check(CLI::IsMember({"induced", "relaxed"}));
  comp->add_option("--min-order", comp_min_order, "M for the summary count (default ceil((ln n)^4))");

  // explore
  auto* exp = app.add_subcommand("explore", "run an exploration process and print its trace");
  std::string exp_variant = "subcritical", exp_input, exp_start;
  std::optional<std::size_t> exp_n;
  std::optional<double> exp_lambda;
  std::uint64_t exp_seed = 0, exp_trial = 0;
  std::optional<std::uint64_t> exp_large_cap;
  std::optional<std::uint32_t> exp_epoch_cap;
  bool exp_trace = false, exp_literal = false;
  exp->add_option("--variant", exp_variant)->check(CLI::IsMember({"subcritical", "supercritical"}));
  auto* ei = exp->add_option("--input", exp_input);
  auto* en = exp->add_option("--n", exp_n);
  exp->add_option("--lambda", exp_lambda);
  exp->add_option("--seed", exp_seed);
  exp->add_option("--trial", exp_trial);
  ei->excludes(en);
  exp->add_option("--start", exp_start, "u,v (subcritical) or v1,v2,v3,v4 (supercritical)")->required();
  exp->add_option("--large-cap", exp_large_cap);
  exp->add_option("--epoch-cap", exp_epoch_cap);
  exp->add_flag("--trace", exp_trace, "record every step");
  exp->add_flag("--no-reset", exp_literal, "keep S unchanged when reconciliation finds hidden edges");

  // classify
  auto* cls = app.add_subcommand("classify", "CFS and divergence class of an edge list");
  std::string cls_input;
  cls->add_option("--input", cls_input);

  // branching
  auto* br = app.add_subcommand("branching", "offspring law tools");
  br->require_subcommand(1);
  auto* br_sim = br->add_subcommand("sim", "progeny histogram from simulation");
  auto* br_ext = br->add_subcommand("extinction", "extinction probability");
  auto* br_dw = br->add_subcommand("dwass", "exact total-progeny pmf");
  auto* br_lc = br->add_subcommand("lambda-c", "critical lambda");
  LawSource sim_law, ext_law, dw_law;
  sim_law.add(br_sim);
  ext_law.add(br_ext);
  dw_law.add(br_dw);
  std::uint64_t sim_trials = 100000, sim_max = 1000, sim_seed = 0;
  br_sim->add_option("--trials", sim_trials);
  br_sim->add_option("--max-progeny", sim_max);
  br_sim->add_option("--seed", sim_seed);
  double ext_tol = 1e-12;
  br_ext->add_option("--tol", ext_tol);
  std::size_t dw_kmax = 50;
  br_dw->add_option("--kmax", dw_kmax)->check(CLI::PositiveNumber);

  // sweep
  auto* sw = app.add_subcommand("sweep", "lambda sweep across n as CSV");
  std::string sw_n = "500,1000,2000", sw_lambda = "0.3:1.6:0.05", sw_out, sw_log;
  std::uint64_t sw_trials = 200, sw_seed = 0;
  RunOptions sw_opts;
  sw->add_option("--n", sw_n);
  sw->add_option("--lambda", sw_lambda);
  sw->add_option("--trials", sw_trials)->check(CLI::PositiveNumber);
  sw->add_option("--seed", sw_seed);
  sw->add_option("--out", sw_out);
  sw->add_option("--log-trials", sw_log, "also write the per-trial log to this file");
  sw->add_option("--threads", sw_opts.threads);
  sw->add_option("--shuffle-seed", sw_opts.shuffle_seed, "permute the execution order");

  // threshold
  auto* th = app.add_subcommand("threshold", "bisection estimate of the full-support threshold");
  std::size_t th_n = 1000;
  std::uint64_t th_trials = 50, th_seed = 0;
  double th_tol = 0.02, th_target = 0.5;
  RunOptions th_opts;
  th->add_option("--n", th_n);
  th->add_option("--trials", th_trials)->check(CLI::PositiveNumber);
  th->add_option("--tol", th_tol)->check(CLI::PositiveNumber);
  th->add_option("--target", th_target)->check(CLI::Range(0.0, 1.0));
  th->add_option("--seed", th_seed);
  th->add_option("--threads", th_opts.threads);

  // many-squares
  auto* ms = app.add_subcommand("many-squares", "squares in large components against the analytic bound");
  std::size_t ms_n = 3000;
  double ms_lambda = 1.0;
  std::uint64_t ms_trials = 20, ms_seed = 0;
  RunOptions ms_opts;
  ms->add_option("--n", ms_n);
  ms->add_option("--lambda", ms_lambda);
  ms->add_option("--trials", ms_trials)->check(CLI::PositiveNumber);
  ms->add_option("--seed", ms_seed);
  ms->add_option("--threads", ms_opts.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      if (!gen_p && !gen_lambda) throw UsageError("give --p or --lambda");
      GnpParams params = gen_lambda ? GnpParams::from_lambda(gen_n, *gen_lambda) : GnpParams{gen_n, *gen_p};
      params.validate();
      emit(to_edge_list(sample_gnp(params, SeedSpec{gen_seed, gen_trial})), gen_out);
    } else if (*comp) {
      const Graph g = read_graph(comp_input);
      const auto variant = comp_variant == "induced" ? SquareVariant::Induced : SquareVariant::Relaxed;
      const auto labeling = square_components(g, variant);
      for (const auto& line : components_report(labeling, comp_min_order.value_or(default_min_order(g.vertex_count()))))
        std::cout << line.dump() << '\n';
    } else if (*exp) {
      Graph g;
      if (exp_n) {
        if (!exp_lambda) throw UsageError("--n needs --lambda");
        g = sample_gnp(GnpParams::from_lambda(*exp_n, *exp_lambda), SeedSpec{exp_seed, exp_trial});
      } else {
        g = read_graph(exp_input);
      }
      const auto variant =
          exp_variant == "subcritical" ? ExplorationVariant::Subcritical : ExplorationVariant::Supercritical;
      auto cfg = ExplorationConfig::defaults(variant, g.vertex_count());
      if (exp_large_cap) cfg.large_cap = *exp_large_cap;
      if (exp_epoch_cap) cfg.epoch_cap = *exp_epoch_cap;
      cfg.trace = exp_trace;
      cfg.reset_discovered_on_reconcile = !exp_literal;
      cfg.validate();
      const auto start = parse_vertices(exp_start);
      for (auto v : start)
        if (v >= g.vertex_count()) throw UsageError("start vertex out of range");
      ExplorationResult r;
      if (variant == ExplorationVariant::Subcritical) {
        if (start.size() != 2) throw UsageError("subcritical --start takes two vertices");
        if (start[0] == start[1]) throw UsageError("start vertices must differ");
        r = explore_subcritical(g, VertexPair(start[0], start[1]), cfg);
      } else {
        if (start.size() != 4) throw UsageError("supercritical --start takes four vertices");
        r = explore_supercritical(g, {start[0], start[1], start[2], start[3]}, cfg);
      }
      std::cout << exploration_report(r).dump() << '\n';
    } else if (*cls) {
      std::cout << classify_report(classify_divergence(read_graph(cls_input))).dump() << '\n';
    } else if (*br_lc) {
      std::cout << json{{"lambda_c", lambda_critical()}}.dump() << '\n';
    } else if (*br_ext) {
      const auto law = ext_law.resolve();
      const double theta = extinction_probability(law, ext_tol);
      std::cout << json{{"theta_e", theta},
                        {"residual", law.generating(theta) - theta},
                        {"mean", law.mean()},
                        {"tol", ext_tol}}
                       .dump()
                << '\n';
    } else if (*br_dw) {
      auto law = dw_law.resolve();
      std::cout << dwass_report(dwass_progeny_pmf(law, dw_kmax)).dump() << '\n';
    } else if (*br_sim) {
      const auto law = sim_law.resolve();
      std::cout << sim_report(simulate_progeny(law, sim_trials, sim_max, sim_seed)).dump() << '\n';
    } else if (*sw) {
      SweepSpec spec{parse_size_list(sw_n), parse_lambda_grid(sw_lambda), sw_trials, sw_seed};
      for (auto n : spec.n_list)
        if (n < 4) throw UsageError("sweep needs every n >= 4");
      const auto out = sweep(spec, sw_opts, !sw_log.empty());
      emit(sweep_csv(out.rows), sw_out);
      if (!sw_log.empty()) write_text_file(sw_log, trial_log_csv(out.trial_log));
    } else if (*th) {
      std::cout << threshold_report(estimate_threshold(th_n, th_trials, th_target, th_tol, th_seed, th_opts)).dump()
                << '\n';
    } else if (*ms) {
      std::cout << many_squares_report(many_squares_check(ms_n, ms_lambda, ms_trials, ms_seed, ms_opts)).dump() << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
