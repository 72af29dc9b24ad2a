#pragma once

#include <cstdint>
#include <variant>

#include "wsncov/sensing.hpp"

namespace wsncov
{

/// Circular area of interest centred on the origin.
class Region
{
public:
  explicit Region(double radius);

  double radius() const { return radius_; }
  double area() const { return area_; }

private:
  double radius_;
  double area_;
};

struct NodeCount
{
  std::int64_t value = 0;
};

struct NodeDensity
{
  double per_m2 = 0.0;
};

/// Either a fixed node count N or a homogeneous density rho = N / A.
class NodePopulation
{
public:
  NodePopulation(NodeCount n);
  NodePopulation(NodeDensity rho);

  bool is_count() const { return std::holds_alternative<NodeCount>(value_); }
  bool is_density() const { return std::holds_alternative<NodeDensity>(value_); }

  std::int64_t count(const Region& region) const;  // round(rho * A) for densities
  double density(const Region& region) const;      // N / A for counts

private:
  std::variant<NodeCount, NodeDensity> value_;
};

/// A probability in [0, 1]; construction rejects anything else.
class CoverageFraction
{
public:
  explicit CoverageFraction(double value);
  double value() const { return value_; }
  operator double() const { return value_; }

private:
  double value_;
};

enum class BooleanForm
{
  exact,        // 1 - (1 - p)^N
  exponential,  // 1 - exp(-N p)
};

CoverageFraction boolean_coverage(const Region& region, std::int64_t n, double r_s,
                                  BooleanForm form = BooleanForm::exact);

/// Closed-form single-node detection probability for an Elfes node with
/// gamma = 1, averaged over a uniformly placed node (no border correction).
double elfes_single_node_detection(const Region& region, const ElfesModel& model);

/// Elfes coverage for N random nodes. r_1 = 0 uses the direct closed form;
/// r_1 > 0 composes the single-node detection with 1 - exp(-N P_det).
CoverageFraction elfes_coverage(const Region& region, std::int64_t n, const ElfesModel& model);

/// Integral of 2 pi x p(x) over [0, support], i.e. the effective detection
/// footprint in m^2. Closed form is never used here.
double detection_footprint(const SensingModel& model);

/// Poisson-field coverage 1 - exp(-rho * footprint), footprint by quadrature.
CoverageFraction poisson_coverage(const Region& region, double rho, const SensingModel& model);

/// Average detection probability of one uniformly placed node for a target
/// in the interior: footprint / A.
double single_node_detection(const Region& region, const SensingModel& model);

/// Coverage of N randomly placed nodes: Boolean uses the exact binomial
/// form, Elfes with gamma = 1 the closed forms, everything else the
/// quadrature path with rho = N / A.
CoverageFraction analytic_coverage(const Region& region, std::int64_t n, const SensingModel& model);

/// Least N with analytic_coverage(region, N, model) >= target_f.
std::int64_t nodes_for_coverage(const Region& region, const SensingModel& model, double target_f);

}  // namespace wsncov
