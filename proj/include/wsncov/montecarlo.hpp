#pragma once

#include <cstdint>
#include <string>

#include "wsncov/analytic.hpp"
#include "wsncov/placement.hpp"
#include "wsncov/sensing.hpp"

namespace wsncov
{

enum class TargetSampling
{
  uniform_random,
  stratified_grid,
};

enum class DetectionMode
{
  expectation,  // score 1 - prod(1 - p_i) per target
  bernoulli,    // score one coin flip with that probability
};

struct DeploymentPlan
{
  PlacementStrategy strategy = PlacementStrategy::uniform;
  NodePopulation population{NodeCount{0}};
  BoundaryMode boundary_mode = BoundaryMode::torus;
  double hex_r_smax = 0.0;  // inscribed cell radius, hex strategy only
};

struct SimulationPlan
{
  Region region{1000.0};
  SensingModel model = BooleanModel{50.0};
  DeploymentPlan deployment;
  std::int64_t n_trials = 200;
  std::int64_t n_targets = 10000;
  TargetSampling target_sampling = TargetSampling::uniform_random;
  DetectionMode detection_mode = DetectionMode::expectation;
  std::uint64_t seed = 1;
};

struct CoverageEstimate
{
  double f_hat = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::int64_t n_trials = 0;
  std::int64_t n_targets = 0;
  std::uint64_t seed = 0;
  BoundaryMode boundary_mode = BoundaryMode::torus;
};

struct RunOptions
{
  unsigned workers = 0;  // 0 selects std::thread::hardware_concurrency()
};

/// Throws std::invalid_argument when the plan cannot be simulated.
void validate(const SimulationPlan& plan);

/// Seeded estimate of the coverage fraction. Trial t draws from streams
/// keyed by (seed, t), so the result is bit-identical for any worker count.
CoverageEstimate estimate_coverage(const SimulationPlan& plan, const RunOptions& options = {});

/// Distance under the plan's boundary convention; minimum image on the torus.
double boundary_distance(Point2 a, Point2 b, BoundaryMode mode, const DeploymentDomain& domain);

struct BorderGap
{
  double gap = 0.0;  // f_analytic - f_hat
  double f_analytic = 0.0;
  CoverageEstimate estimate;
};

/// Analytic (border-free) coverage minus the simulated coverage of a plan
/// with boundary_mode = none.
BorderGap border_effect_gap(const SimulationPlan& plan, const RunOptions& options = {});

std::string summary(const CoverageEstimate& estimate);

std::string to_string(TargetSampling sampling);
std::string to_string(DetectionMode mode);
TargetSampling parse_target_sampling(const std::string& s);
DetectionMode parse_detection_mode(const std::string& s);

}  // namespace wsncov
