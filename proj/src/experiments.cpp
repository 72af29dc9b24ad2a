#include "wsncov/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "wsncov/config.hpp"

namespace wsncov
{

namespace
{

using Clock = std::chrono::steady_clock;

std::string fmt_g(double v)
{
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

SensingModel parse_model(const IniDocument& doc, const IniDocument::Section& s)
{
  const std::string type = doc.get_string(s, "type");
  try
  {
    if (type == "boolean")
      return make_boolean(doc.get_double(s, "r_s"));
    if (type == "shadow")
      return make_shadow_fading(doc.get_double(s, "r_s"), doc.get_double(s, "n", 2.0), doc.get_double(s, "sigma"),
                                doc.get_double(s, "r_max", 0.0));
    if (type == "elfes")
      return make_elfes(doc.get_double(s, "r_1", 0.0), doc.get_double(s, "lambda"), doc.get_double(s, "gamma", 1.0),
                        doc.get_double(s, "r_max"));
  }
  catch (const std::invalid_argument& e)
  {
    doc.fail(s.line, e.what());
  }
  doc.fail(s.entries.at("type").line, "unknown model type '" + type + "' (expected boolean, shadow or elfes)");
}

template <class Fn>
auto config_value(const IniDocument& doc, const IniDocument::Section& s, const std::string& key, Fn&& parse)
{
  const int line = s.entries.contains(key) ? s.entries.at(key).line : s.line;
  try
  {
    return parse();
  }
  catch (const std::invalid_argument& e)
  {
    doc.fail(line, "'" + key + "': " + e.what());
  }
}

SweepAxis parse_axis(const std::string& s)
{
  if (s == "node_count")
    return SweepAxis::node_count;
  if (s == "normalized_radius")
    return SweepAxis::normalized_radius;
  if (s == "density")
    return SweepAxis::density;
  throw std::invalid_argument("unknown sweep axis '" + s + "' (expected node_count, normalized_radius or density)");
}

Methods parse_methods(const std::string& s)
{
  if (s == "analytic")
    return Methods::analytic;
  if (s == "mc")
    return Methods::mc;
  if (s == "both")
    return Methods::both;
  throw std::invalid_argument("unknown methods '" + s + "' (expected analytic, mc or both)");
}

bool wants_analytic(Methods m) { return m != Methods::mc; }
bool wants_mc(Methods m) { return m != Methods::analytic; }

void fill_mc(ResultRow& row, const CoverageEstimate& est)
{
  row.f_mc = est.f_hat;
  row.std_error = est.std_error;
  row.ci_lo = est.ci_lo;
  row.ci_hi = est.ci_hi;
  row.seed = est.seed;
}

SimulationPlan base_plan(const ExperimentConfig& config)
{
  SimulationPlan plan;
  plan.region = Region(config.region_R);
  plan.n_trials = config.mc.trials;
  plan.n_targets = config.mc.targets;
  plan.seed = config.mc.seed;
  plan.target_sampling = config.mc.target_sampling;
  plan.detection_mode = config.mc.detection;
  plan.deployment.strategy = config.mc.strategy;
  plan.deployment.boundary_mode = config.mc.boundary;
  return plan;
}

}  // namespace

std::string to_string(SweepAxis axis)
{
  switch (axis)
  {
    case SweepAxis::node_count:
      return "N";
    case SweepAxis::normalized_radius:
      return "r_over_rsmax";
    case SweepAxis::density:
      return "rho";
  }
  return "?";
}

std::string to_string(Methods methods)
{
  switch (methods)
  {
    case Methods::analytic:
      return "analytic";
    case Methods::mc:
      return "mc";
    case Methods::both:
      return "both";
  }
  return "?";
}

ExperimentConfig parse_experiment_config(std::istream& in, const std::string& source)
{
  const IniDocument doc = IniDocument::parse(in, source);
  ExperimentConfig cfg;

  for (const auto& s : doc.sections())
  {
    if (s.name.empty())
    {
      if (!s.entries.empty())
        doc.fail(s.entries.begin()->second.line, "key outside of any section");
      continue;
    }
    if (s.name == "experiment")
    {
      cfg.name = doc.get_string(s, "name", cfg.name);
      cfg.region_R = doc.get_double(s, "region_radius", cfg.region_R);
      if (const auto v = doc.get(s, "sweep"))
        cfg.axis = config_value(doc, s, "sweep", [&] { return parse_axis(*v); });
      if (const auto v = doc.get(s, "grid"))
        cfg.grid = config_value(doc, s, "grid", [&] { return parse_grid(*v); });
      if (const auto v = doc.get(s, "methods"))
        cfg.methods = config_value(doc, s, "methods", [&] { return parse_methods(*v); });
      cfg.r_smax = doc.get_double(s, "r_smax", cfg.r_smax);
      cfg.regular_curve = doc.get_bool(s, "regular_curve", cfg.regular_curve);
      if (const auto v = doc.get(s, "node_counts"))
      {
        const auto values = config_value(doc, s, "node_counts", [&] { return parse_grid(*v); });
        for (double n : values)
        {
          if (n < 0.0 || n != std::floor(n))
            doc.fail(s.entries.at("node_counts").line, "node_counts must be non-negative integers");
          cfg.node_counts.push_back(static_cast<std::int64_t>(n));
        }
      }
    }
    else if (s.name == "mc")
    {
      cfg.mc.trials = doc.get_int(s, "trials", cfg.mc.trials);
      cfg.mc.targets = doc.get_int(s, "targets", cfg.mc.targets);
      cfg.mc.seed = doc.get_u64(s, "seed", cfg.mc.seed);
      if (const auto v = doc.get(s, "boundary"))
        cfg.mc.boundary = config_value(doc, s, "boundary", [&] { return parse_boundary_mode(*v); });
      if (const auto v = doc.get(s, "strategy"))
        cfg.mc.strategy = config_value(doc, s, "strategy", [&] { return parse_placement_strategy(*v); });
      if (const auto v = doc.get(s, "target_sampling"))
        cfg.mc.target_sampling = config_value(doc, s, "target_sampling", [&] { return parse_target_sampling(*v); });
      if (const auto v = doc.get(s, "detection"))
        cfg.mc.detection = config_value(doc, s, "detection", [&] { return parse_detection_mode(*v); });
      if (cfg.mc.trials < 1 || cfg.mc.targets < 1)
        doc.fail(s.line, "[mc] trials and targets must be >= 1");
      if (cfg.mc.strategy == PlacementStrategy::hex)
        doc.fail(s.entries.at("strategy").line, "[mc] strategy must be uniform or poisson");
    }
    else if (s.name == "output")
    {
      cfg.csv_path = doc.get_string(s, "csv", "");
      cfg.svg_path = doc.get_string(s, "svg", "");
    }
    else if (s.name.starts_with("model."))
    {
      const std::string label = s.name.substr(6);
      if (label.empty())
        doc.fail(s.line, "model section needs a label, e.g. [model.boolean]");
      cfg.models.push_back({doc.get_string(s, "label", label), parse_model(doc, s)});
    }
    else
    {
      doc.fail(s.line, "unknown section [" + s.name + "]");
    }
  }
  doc.reject_unused();

  try
  {
    validate(cfg);
  }
  catch (const ConfigError& e)
  {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open config file " + path.string());
  return parse_experiment_config(in, path.string());
}

void validate(const ExperimentConfig& config)
{
  if (!(config.region_R > 0.0))
    throw ConfigError("region_radius must be > 0");
  if (config.grid.empty())
    throw ConfigError("sweep grid is empty");

  std::set<std::string> labels;
  for (const auto& m : config.models)
  {
    if (!labels.insert(m.label).second)
      throw ConfigError("duplicate model label '" + m.label + "'");
    if (support_radius(m.model) > config.region_R)
      throw ConfigError("model '" + m.label + "' reaches beyond the region radius");
  }

  switch (config.axis)
  {
    case SweepAxis::node_count:
      for (double n : config.grid)
        if (n < 0.0 || n != std::floor(n))
          throw ConfigError("node_count grid values must be non-negative integers");
      [[fallthrough]];
    case SweepAxis::density:
      if (config.models.empty())
        throw ConfigError("no [model.*] sections configured");
      for (double v : config.grid)
        if (v < 0.0)
          throw ConfigError("sweep grid values must be >= 0");
      break;
    case SweepAxis::normalized_radius:
      for (double r : config.grid)
        if (r < 0.0 || r > 1.0)
          throw ConfigError("normalized radius " + fmt_g(r) + " is outside [0, 1]");
      if (!(config.r_smax > 0.0) || config.r_smax > config.region_R)
        throw ConfigError("r_smax must satisfy 0 < r_smax <= region_radius");
      if (config.node_counts.empty() && !config.regular_curve)
        throw ConfigError("normalized_radius sweep needs node_counts or regular_curve = true");
      break;
  }
}

std::vector<LabeledModel> fig4_models(double shadow_n)
{
  return {
      {"a_boolean", make_boolean(50.0)},
      {"b_shadow_sigma2", make_shadow_fading(50.0, shadow_n, 2.0, 50.0)},
      {"c_elfes_lambda0.01", make_elfes(0.0, 0.01, 1.0, 50.0)},
      {"d_shadow_sigma8", make_shadow_fading(50.0, shadow_n, 8.0, 50.0)},
      {"e_elfes_r10_lambda0.03", make_elfes(10.0, 0.03, 1.0, 50.0)},
      {"f_elfes_lambda0.03", make_elfes(0.0, 0.03, 1.0, 50.0)},
  };
}

ResultRow estimate_row(const std::string& experiment, const std::string& model_label, const CoverageEstimate& est)
{
  ResultRow row;
  row.experiment = experiment;
  row.model = model_label;
  fill_mc(row, est);
  return row;
}

std::vector<ResultRow> run_fig4_sweep(const ExperimentConfig& config, const SweepOptions& options)
{
  validate(config);
  if (config.axis == SweepAxis::normalized_radius)
    throw ConfigError("run_fig4_sweep expects a node_count or density sweep");

  const Region region(config.region_R);
  std::vector<ResultRow> rows;
  for (const auto& m : config.models)
  {
    for (double value : config.grid)
    {
      const auto start = Clock::now();
      ResultRow row;
      row.experiment = config.name;
      row.model = m.label;
      row.sweep_param = to_string(config.axis);
      row.sweep_value = value;

      const bool by_count = config.axis == SweepAxis::node_count;
      const NodePopulation population =
          by_count ? NodePopulation(NodeCount{static_cast<std::int64_t>(value)}) : NodePopulation(NodeDensity{value});

      if (wants_analytic(config.methods))
        row.f_analytic = by_count ? analytic_coverage(region, population.count(region), m.model).value()
                                  : poisson_coverage(region, value, m.model).value();
      if (wants_mc(config.methods))
      {
        SimulationPlan plan = base_plan(config);
        plan.model = m.model;
        plan.deployment.population = population;
        fill_mc(row, estimate_coverage(plan, options.run));
      }
      if (options.record_timing)
        row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      rows.push_back(std::move(row));
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ResultRow> run_fig5_sweep(const ExperimentConfig& config, const SweepOptions& options)
{
  validate(config);
  if (config.axis != SweepAxis::normalized_radius)
    throw ConfigError("run_fig5_sweep expects a normalized_radius sweep");

  const Region region(config.region_R);
  std::vector<ResultRow> rows;

  auto make_row = [&](const std::string& label, double ratio) {
    ResultRow row;
    row.experiment = config.name;
    row.model = label;
    row.sweep_param = to_string(config.axis);
    row.sweep_value = ratio;
    return row;
  };
  auto zero_radius_row = [&](ResultRow& row) {
    // A zero sensing radius detects nothing; no simulation needed.
    if (wants_analytic(config.methods))
      row.f_analytic = 0.0;
    if (wants_mc(config.methods))
    {
      row.f_mc = row.std_error = row.ci_lo = row.ci_hi = 0.0;
      row.seed = config.mc.seed;
    }
  };
  auto stamp = [&](ResultRow& row, Clock::time_point start) {
    if (options.record_timing)
      row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  for (std::int64_t n : config.node_counts)
  {
    const std::string label = "random_N" + std::to_string(n);
    for (double ratio : config.grid)
    {
      const auto start = Clock::now();
      ResultRow row = make_row(label, ratio);
      const double r = ratio * config.r_smax;
      if (r == 0.0)
        zero_radius_row(row);
      else
      {
        if (wants_analytic(config.methods))
          row.f_analytic = boolean_coverage(region, n, r, BooleanForm::exact).value();
        if (wants_mc(config.methods))
        {
          SimulationPlan plan = base_plan(config);
          plan.model = BooleanModel{r};
          plan.deployment.population = NodeCount{n};
          fill_mc(row, estimate_coverage(plan, options.run));
        }
      }
      stamp(row, start);
      rows.push_back(std::move(row));
    }
  }

  if (config.regular_curve)
  {
    for (double ratio : config.grid)
    {
      const auto start = Clock::now();
      ResultRow row = make_row("regular_hex", ratio);
      const double r = ratio * config.r_smax;
      if (r == 0.0)
        zero_radius_row(row);
      else
      {
        if (wants_analytic(config.methods))
          row.f_analytic = regular_coverage_fraction(r, config.r_smax).value();
        if (wants_mc(config.methods))
        {
          SimulationPlan plan = base_plan(config);
          plan.model = BooleanModel{r};
          plan.deployment.strategy = PlacementStrategy::hex;
          plan.deployment.hex_r_smax = config.r_smax;
          if (plan.deployment.boundary_mode == BoundaryMode::torus)
            plan.deployment.boundary_mode = BoundaryMode::buffer;
          fill_mc(row, estimate_coverage(plan, options.run));
        }
      }
      stamp(row, start);
      rows.push_back(std::move(row));
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& config, const SweepOptions& options)
{
  return config.axis == SweepAxis::normalized_radius ? run_fig5_sweep(config, options)
                                                     : run_fig4_sweep(config, options);
}

void sort_rows(std::vector<ResultRow>& rows)
{
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.model != b.model)
      return a.model < b.model;
    return a.sweep_value < b.sweep_value;
  });
}

PlanReport run_plan_query(const Region& region, const SensingModel& model, double target_f, std::optional<double> r_smax)
{
  if (!(target_f > 0.0 && target_f < 1.0))
    throw std::invalid_argument("plan: target coverage must lie in (0, 1)");

  PlanReport report;
  report.region_R = region.radius();
  report.model = describe(model);
  report.target_f = target_f;
  report.random_nodes = nodes_for_coverage(region, model, target_f);
  report.r_smax = r_smax.value_or(support_radius(model));
  report.regular_cells = hex_cell_count(region.radius(), report.r_smax);

  // The maximum is quoted as 90.69%; a target equal to that rounding is reachable.
  report.regular_reachable = target_f <= std::round(kMaxRegularCoverage * 1e4) / 1e4 + 1e-12;
  report.regular_radius = report.r_smax * std::sqrt(std::min(target_f, kMaxRegularCoverage) / kMaxRegularCoverage);

  for (auto& w : model_warnings(model))
    report.warnings.push_back(std::move(w));
  if (!regular_formula_valid(region.radius(), report.r_smax))
    report.warnings.push_back("R / r_smax < 10: regular-placement formulas assume R >> r_smax");
  return report;
}

std::string format_plan_report(const PlanReport& r)
{
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "region_radius   = %g\n"
                "model           = %s\n"
                "target_f        = %g\n"
                "random_nodes    = %lld\n"
                "r_smax          = %g\n"
                "regular_cells   = %lld\n"
                "regular_max_f   = %.6f\n"
                "regular_status  = %s\n"
                "regular_radius  = %g\n",
                r.region_R, r.model.c_str(), r.target_f, static_cast<long long>(r.random_nodes), r.r_smax,
                static_cast<long long>(r.regular_cells), r.regular_max_f,
                r.regular_reachable ? "reachable" : "unreachable", r.regular_radius);
  std::string out = buf;
  for (const auto& w : r.warnings)
    out += "warning         = " + w + "\n";
  return out;
}

}  // namespace wsncov
