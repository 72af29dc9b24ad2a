#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsncov/analytic.hpp"
#include "wsncov/montecarlo.hpp"
#include "wsncov/placement.hpp"
#include "wsncov/sensing.hpp"

namespace wsncov
{

/// Filesystem failure; what() names the path involved.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class SweepAxis
{
  node_count,
  normalized_radius,
  density,
};

enum class Methods
{
  analytic,
  mc,
  both,
};

std::string to_string(SweepAxis axis);
std::string to_string(Methods methods);

struct LabeledModel
{
  std::string label;
  SensingModel model;
};

struct McSettings
{
  std::int64_t trials = 200;
  std::int64_t targets = 10000;
  BoundaryMode boundary = BoundaryMode::torus;
  std::uint64_t seed = 1;
  PlacementStrategy strategy = PlacementStrategy::uniform;
  TargetSampling target_sampling = TargetSampling::uniform_random;
  DetectionMode detection = DetectionMode::expectation;
};

struct ExperimentConfig
{
  std::string name = "experiment";
  double region_R = 1000.0;
  std::vector<LabeledModel> models;
  SweepAxis axis = SweepAxis::node_count;
  std::vector<double> grid;
  Methods methods = Methods::analytic;
  McSettings mc;

  // Normalized-radius sweeps: Boolean random curves for each N plus the
  // hexagonal regular-placement curve.
  double r_smax = 50.0;
  std::vector<std::int64_t> node_counts;
  bool regular_curve = true;

  std::string csv_path;
  std::string svg_path;
};

/// Throws ConfigError with "source:line:" diagnostics.
ExperimentConfig parse_experiment_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Throws ConfigError on an inconsistent configuration (empty grid, duplicate labels, ...).
void validate(const ExperimentConfig& config);

/// The six model variants compared against node count in the model-comparison
/// figure: Boolean, shadow sigma = 2 and 8 dB, Elfes lambda = 0.01 and 0.03
/// at R_1 = 0, and Elfes R_1 = 10 m, lambda = 0.03. All reach 50 m.
std::vector<LabeledModel> fig4_models(double shadow_n = 2.0);

struct ResultRow
{
  std::string experiment;
  std::string model;
  std::string sweep_param;
  double sweep_value = 0.0;
  std::optional<double> f_analytic;
  std::optional<double> f_mc;
  std::optional<double> std_error;
  std::optional<double> ci_lo;
  std::optional<double> ci_hi;
  std::optional<std::uint64_t> seed;
  std::optional<double> wall_ms;
};

struct SweepOptions
{
  RunOptions run;
  bool record_timing = false;  // wall_ms is left empty otherwise, keeping output reproducible
};

/// Node-count (or density) sweep over the configured models.
std::vector<ResultRow> run_fig4_sweep(const ExperimentConfig& config, const SweepOptions& options = {});

/// Normalized-radius sweep: random curves from node_counts, regular curve from
/// the hexagonal placement formula.
std::vector<ResultRow> run_fig5_sweep(const ExperimentConfig& config, const SweepOptions& options = {});

/// Dispatches on config.axis.
std::vector<ResultRow> run_sweep(const ExperimentConfig& config, const SweepOptions& options = {});

/// Sorted by model label, then sweep value.
void sort_rows(std::vector<ResultRow>& rows);

inline constexpr const char* kCsvHeader =
    "experiment,model,sweep_param,sweep_value,f_analytic,f_mc,std_error,ci_lo,ci_hi,seed,wall_ms";

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_svg_plot(const std::vector<ResultRow>& rows, std::ostream& out, const std::string& title = {});

/// Write-temp-then-rename. Both throw IoError with the path on failure and
/// std::invalid_argument for an empty row set.
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
void emit_svg_plot(const std::vector<ResultRow>& rows, const std::filesystem::path& path, const std::string& title = {});

void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

ResultRow estimate_row(const std::string& experiment, const std::string& model_label, const CoverageEstimate& est);

struct PlanReport
{
  double region_R = 0.0;
  std::string model;
  double target_f = 0.0;
  std::int64_t random_nodes = 0;
  double r_smax = 0.0;
  std::int64_t regular_cells = 0;
  double regular_max_f = kMaxRegularCoverage;
  bool regular_reachable = true;
  double regular_radius = 0.0;  // sensing radius that yields target_f on the hex grid
  std::vector<std::string> warnings;
};

/// Node counts for random placement versus hexagonal regular placement.
/// r_smax defaults to the model's support radius.
PlanReport run_plan_query(const Region& region, const SensingModel& model, double target_f,
                          std::optional<double> r_smax = std::nullopt);

std::string format_plan_report(const PlanReport& report);

}  // namespace wsncov
