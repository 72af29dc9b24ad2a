// wsncov: coverage analysis for wireless sensor networks.
//
// Exit codes: 0 success, 1 config/usage error, 2 runtime or numeric error,
// 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wsncov/analytic.hpp"
#include "wsncov/config.hpp"
#include "wsncov/experiments.hpp"
#include "wsncov/montecarlo.hpp"
#include "wsncov/placement.hpp"
#include "wsncov/sensing.hpp"

namespace
{

using namespace wsncov;

struct ModelArgs
{
  std::string kind = "boolean";
  double r_s = 50.0;
  double exponent = 2.0;
  double sigma = 2.0;
  double r_max = 0.0;
  double r_1 = 0.0;
  double lambda = 0.01;
  double gamma = 1.0;

  void attach(CLI::App* cmd)
  {
    cmd->add_option("--model", kind, "Sensing model")->check(CLI::IsMember({"boolean", "shadow", "elfes"}));
    cmd->add_option("--r-s", r_s, "Sensing radius r_s in m (boolean, shadow)");
    cmd->add_option("--exponent", exponent, "Path-loss exponent n (shadow)");
    cmd->add_option("--sigma", sigma, "Fading parameter in dB (shadow)");
    cmd->add_option("--r-max", r_max, "Maximum sensing range in m (shadow default r_s; elfes default 50)");
    cmd->add_option("--r1", r_1, "Start of detection uncertainty R_1 in m (elfes)");
    cmd->add_option("--lambda", lambda, "Decay rate in 1/m (elfes)");
    cmd->add_option("--gamma", gamma, "Decay exponent (elfes)");
  }

  SensingModel build() const
  {
    if (kind == "boolean")
      return make_boolean(r_s);
    if (kind == "shadow")
      return make_shadow_fading(r_s, exponent, sigma, r_max);
    return make_elfes(r_1, lambda, gamma, r_max > 0.0 ? r_max : 50.0);
  }
};

struct PopulationArgs
{
  std::optional<std::int64_t> nodes;
  std::optional<double> density;

  void attach(CLI::App* cmd)
  {
    auto* n = cmd->add_option("--nodes", nodes, "Node count N");
    auto* d = cmd->add_option("--density", density, "Node density rho in nodes per m^2");
    n->excludes(d);
  }

  NodePopulation build() const
  {
    if (density)
      return NodePopulation(NodeDensity{*density});
    return NodePopulation(NodeCount{nodes.value_or(0)});
  }
};

struct McArgs
{
  std::int64_t trials = 200;
  std::int64_t targets = 10000;
  std::string boundary = "torus";
  std::uint64_t seed = 1;
  unsigned workers = 0;

  void attach(CLI::App* cmd, bool defaults_visible)
  {
    cmd->add_option("--trials", trials, "Independent deployments")->capture_default_str();
    cmd->add_option("--targets", targets, "Target points per deployment")->capture_default_str();
    cmd->add_option("--boundary", boundary, "Boundary handling")
        ->check(CLI::IsMember({"torus", "buffer", "none"}))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "64-bit seed")->capture_default_str();
    cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");
    (void)defaults_visible;
  }
};

void warn(bool quiet, const std::vector<std::string>& warnings)
{
  if (quiet)
    return;
  for (const auto& w : warnings)
    std::cerr << "warning: " << w << '\n';
}

void write_output(const std::string& path, const std::string& contents)
{
  if (path.empty() || path == "-")
    std::cout << contents;
  else
    write_file_atomic(path, contents);
}

int run(int argc, char** argv)
{
  CLI::App app{"Coverage analysis for wireless sensor networks"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Suppress informational output on stderr");

  double radius = 1000.0;

  // analytic
  auto* analytic_cmd = app.add_subcommand("analytic", "Evaluate closed-form and quadrature coverage");
  ModelArgs an_model;
  PopulationArgs an_pop;
  std::string form = "exact";
  std::optional<double> regular_r;
  double r_smax = 50.0;
  an_model.attach(analytic_cmd);
  an_pop.attach(analytic_cmd);
  analytic_cmd->add_option("--radius", radius, "Region radius R in m")->capture_default_str();
  analytic_cmd->add_option("--form", form, "Boolean form")->check(CLI::IsMember({"exact", "exponential"}));
  analytic_cmd->add_option("--regular-r", regular_r, "Also report hex-placement coverage for sensing radius r");
  analytic_cmd->add_option("--r-smax", r_smax, "Hex cell inscribed radius in m")->capture_default_str();

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Run one Monte Carlo coverage estimate");
  ModelArgs sim_model;
  PopulationArgs sim_pop;
  McArgs sim_mc;
  std::string strategy = "uniform";
  std::string sampling = "uniform";
  std::string detection = "expectation";
  std::string sim_out;
  double sim_r_smax = 50.0;
  sim_model.attach(simulate_cmd);
  sim_pop.attach(simulate_cmd);
  sim_mc.attach(simulate_cmd, true);
  simulate_cmd->add_option("--radius", radius, "Region radius R in m")->capture_default_str();
  simulate_cmd->add_option("--strategy", strategy, "Placement")->check(CLI::IsMember({"uniform", "poisson", "hex"}));
  simulate_cmd->add_option("--r-smax", sim_r_smax, "Hex cell inscribed radius in m (hex strategy)");
  simulate_cmd->add_option("--sampling", sampling, "Target sampling")->check(CLI::IsMember({"uniform", "stratified"}));
  simulate_cmd->add_option("--detection", detection, "Per-target scoring")
      ->check(CLI::IsMember({"expectation", "bernoulli"}));
  simulate_cmd->add_option("--out", sim_out, "Write the estimate as a CSV row to this path");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a config-driven sweep and emit CSV/SVG");
  std::string config_path;
  std::string sweep_out;
  std::string sweep_svg;
  std::optional<std::uint64_t> sw_seed;
  std::optional<std::int64_t> sw_trials, sw_targets;
  std::optional<std::string> sw_boundary;
  unsigned sw_workers = 0;
  bool timing = false;
  sweep_cmd->add_option("--config", config_path, "Experiment config file")->required();
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (overrides config; '-' for stdout)");
  sweep_cmd->add_option("--svg", sweep_svg, "SVG output path (overrides config)");
  sweep_cmd->add_option("--seed", sw_seed, "Override [mc] seed");
  sweep_cmd->add_option("--trials", sw_trials, "Override [mc] trials");
  sweep_cmd->add_option("--targets", sw_targets, "Override [mc] targets");
  sweep_cmd->add_option("--boundary", sw_boundary, "Override [mc] boundary")
      ->check(CLI::IsMember({"torus", "buffer", "none"}));
  sweep_cmd->add_option("--workers", sw_workers, "Worker threads (0 = all cores)");
  sweep_cmd->add_flag("--timing", timing, "Fill the wall_ms column (output is then not reproducible)");

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Node counts for random versus regular placement");
  ModelArgs plan_model;
  double target = 0.9069;
  std::optional<double> plan_r_smax;
  plan_model.attach(plan_cmd);
  plan_cmd->add_option("--radius", radius, "Region radius R in m")->capture_default_str();
  plan_cmd->add_option("--target", target, "Target coverage fraction in (0, 1)")->capture_default_str();
  plan_cmd->add_option("--r-smax", plan_r_smax, "Hex cell inscribed radius (default: model support radius)");

  // export-deployment
  auto* export_cmd = app.add_subcommand("export-deployment", "Write node positions as CSV");
  PopulationArgs ex_pop;
  std::string ex_strategy = "uniform";
  std::string ex_boundary = "none";
  std::uint64_t ex_seed = 1;
  double ex_support = 50.0;
  double ex_r_smax = 50.0;
  std::string ex_out;
  ex_pop.attach(export_cmd);
  export_cmd->add_option("--radius", radius, "Region radius R in m")->capture_default_str();
  export_cmd->add_option("--strategy", ex_strategy, "Placement")->check(CLI::IsMember({"uniform", "poisson", "hex"}));
  export_cmd->add_option("--boundary", ex_boundary, "Deployment domain")
      ->check(CLI::IsMember({"torus", "buffer", "none"}));
  export_cmd->add_option("--seed", ex_seed, "64-bit seed");
  export_cmd->add_option("--support", ex_support, "Sensing support used by buffer mode, m");
  export_cmd->add_option("--r-smax", ex_r_smax, "Hex cell inscribed radius in m");
  export_cmd->add_option("--out", ex_out, "CSV path ('-' or empty for stdout)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try
  {
    const Region region(radius);

    if (*analytic_cmd)
    {
      const SensingModel model = an_model.build();
      warn(quiet, model_warnings(model));
      const NodePopulation pop = an_pop.build();
      std::ostringstream out;
      char buf[256];
      std::snprintf(buf, sizeof buf, "model                  = %s\nregion_radius          = %g\n", describe(model).c_str(),
                    radius);
      out << buf;
      std::snprintf(buf, sizeof buf, "single_node_detection  = %.10g\ndetection_footprint_m2 = %.10g\n",
                    single_node_detection(region, model), detection_footprint(model));
      out << buf;
      if (pop.is_density())
      {
        std::snprintf(buf, sizeof buf, "density                = %.10g\npoisson_coverage       = %.10g\n",
                      pop.density(region), poisson_coverage(region, pop.density(region), model).value());
        out << buf;
      }
      else
      {
        const auto n = pop.count(region);
        double f = analytic_coverage(region, n, model).value();
        if (const auto* b = std::get_if<BooleanModel>(&model); b && form == "exponential")
          f = boolean_coverage(region, n, b->r_s, BooleanForm::exponential).value();
        std::snprintf(buf, sizeof buf, "nodes                  = %lld\ncoverage               = %.10g\n",
                      static_cast<long long>(n), f);
        out << buf;
      }
      if (regular_r)
      {
        if (!regular_formula_valid(radius, r_smax) && !quiet)
          std::cerr << "warning: R / r_smax < 10, regular-placement formulas assume R >> r_smax\n";
        std::snprintf(buf, sizeof buf, "regular_coverage       = %.10g\nhex_cells              = %lld\n",
                      regular_coverage_fraction(*regular_r, r_smax).value(),
                      static_cast<long long>(hex_cell_count(radius, r_smax)));
        out << buf;
      }
      std::cout << out.str();
      return 0;
    }

    if (*simulate_cmd)
    {
      SimulationPlan plan;
      plan.region = region;
      plan.model = sim_model.build();
      warn(quiet, model_warnings(plan.model));
      plan.deployment.population = sim_pop.build();
      plan.deployment.strategy = parse_placement_strategy(strategy);
      plan.deployment.boundary_mode = parse_boundary_mode(sim_mc.boundary);
      plan.deployment.hex_r_smax = sim_r_smax;
      plan.n_trials = sim_mc.trials;
      plan.n_targets = sim_mc.targets;
      plan.seed = sim_mc.seed;
      plan.target_sampling = parse_target_sampling(sampling);
      plan.detection_mode = parse_detection_mode(detection);

      const CoverageEstimate est = estimate_coverage(plan, RunOptions{sim_mc.workers});
      if (!sim_out.empty())
      {
        ResultRow row = estimate_row("simulate", model_kind(plan.model), est);
        row.sweep_param = plan.deployment.population.is_count() ? "N" : "rho";
        row.sweep_value = plan.deployment.population.is_count()
                              ? static_cast<double>(plan.deployment.population.count(region))
                              : plan.deployment.population.density(region);
        std::ostringstream ss;
        write_csv({row}, ss);
        write_output(sim_out, ss.str());
      }
      if (sim_out.empty() || sim_out != "-")
        std::cout << summary(est);
      return 0;
    }

    if (*sweep_cmd)
    {
      ExperimentConfig cfg = load_experiment_config(config_path);
      if (sw_seed)
        cfg.mc.seed = *sw_seed;
      if (sw_trials)
        cfg.mc.trials = *sw_trials;
      if (sw_targets)
        cfg.mc.targets = *sw_targets;
      if (sw_boundary)
        cfg.mc.boundary = parse_boundary_mode(*sw_boundary);
      if (cfg.mc.trials < 1 || cfg.mc.targets < 1)
        throw ConfigError("--trials and --targets must be >= 1");
      for (const auto& m : cfg.models)
        warn(quiet, model_warnings(m.model));

      SweepOptions opts;
      opts.run.workers = sw_workers;
      opts.record_timing = timing;
      const auto rows = run_sweep(cfg, opts);

      const std::string csv_path = sweep_out.empty() ? cfg.csv_path : sweep_out;
      const std::string svg_path = sweep_svg.empty() ? cfg.svg_path : sweep_svg;
      if (rows.empty())
        throw std::runtime_error("sweep produced no rows");
      if (csv_path.empty() || csv_path == "-")
        write_csv(rows, std::cout);
      else
        emit_csv(rows, csv_path);
      if (!svg_path.empty())
        emit_svg_plot(rows, svg_path, cfg.name);
      if (!quiet)
        std::cerr << cfg.name << ": " << rows.size() << " rows"
                  << (csv_path.empty() || csv_path == "-" ? "" : " -> " + csv_path) << '\n';
      return 0;
    }

    if (*plan_cmd)
    {
      const SensingModel model = plan_model.build();
      const PlanReport report = run_plan_query(region, model, target, plan_r_smax);
      std::cout << format_plan_report(report);
      return 0;
    }

    if (*export_cmd)
    {
      Deployment d;
      if (ex_strategy == "hex")
        d = hex_deployment(generate_hex_layout(radius, ex_r_smax));
      else
        d = generate_random_deployment(region, ex_pop.build(), parse_placement_strategy(ex_strategy),
                                       parse_boundary_mode(ex_boundary), ex_seed, ex_support);
      std::ostringstream ss;
      write_deployment_csv(d, ss);
      write_output(ex_out, ss.str());
      if (!quiet && !ex_out.empty() && ex_out != "-")
        std::cerr << d.positions.size() << " positions -> " << ex_out << '\n';
      return 0;
    }
  }
  catch (const ConfigError& e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  catch (const IoError& e)
  {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
