#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wsncov/analytic.hpp"
#include "wsncov/rng.hpp"

namespace wsncov
{

struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

enum class BoundaryMode
{
  torus,   // equal-area square with wrap-around distances
  buffer,  // nodes over radius R + support, targets inside R
  none,    // plain disk, exhibits the border effect
};

enum class PlacementStrategy
{
  hex,
  uniform,
  poisson,
};

std::string to_string(BoundaryMode mode);
std::string to_string(PlacementStrategy strategy);
BoundaryMode parse_boundary_mode(const std::string& s);
PlacementStrategy parse_placement_strategy(const std::string& s);

/// Where nodes are dropped. A disk of radius `extent`, or a square torus of
/// side `extent` spanning [-extent/2, extent/2)^2.
struct DeploymentDomain
{
  enum class Shape
  {
    disk,
    square_torus,
  };

  Shape shape = Shape::disk;
  double extent = 0.0;

  double area() const;
  bool contains(Point2 p) const;
};

DeploymentDomain deployment_domain(const Region& region, BoundaryMode mode, double support);

/// Maximum coverage of hexagonal placement, pi / (2 sqrt 3).
inline constexpr double kMaxRegularCoverage = 0.90689968211710892;

/// Coverage fraction of nodes at hex-cell centres with sensing radius r,
/// cells of inscribed radius r_smax. Valid for R >> r_smax.
CoverageFraction regular_coverage_fraction(double r, double r_smax);

/// False when R / r_smax < 10, where the regular-placement formulas lose accuracy.
bool regular_formula_valid(double region_R, double r_smax);

/// ceil(0.9069 (R / r_smax)^2)
std::int64_t hex_cell_count(double region_R, double r_smax);

struct HexLayout
{
  double region_R = 0.0;
  double r_smax = 0.0;
  std::vector<Point2> cell_centers;
  std::int64_t formula_count = 0;    // hex_cell_count(region_R, r_smax)
  std::int64_t trim_difference = 0;  // cell_centers.size() - formula_count
};

/// Hex lattice of spacing 2 r_smax centred on the origin, keeping the
/// centres strictly inside the disk of radius region_R.
HexLayout generate_hex_layout(double region_R, double r_smax);

struct Deployment
{
  std::vector<Point2> positions;
  PlacementStrategy strategy = PlacementStrategy::uniform;
  std::optional<std::uint64_t> seed;
  BoundaryMode boundary_mode = BoundaryMode::none;
  DeploymentDomain domain;
};

/// Expected node count on `domain` for a population defined on `region`,
/// i.e. the density is preserved when the domain is larger than the region.
double expected_domain_count(const Region& region, const NodePopulation& population, const DeploymentDomain& domain);

/// Draws positions from `eng`. Uniform places round(expected_domain_count)
/// nodes; poisson draws the count from Poisson(expected_domain_count).
std::vector<Point2> sample_positions(const Region& region, const NodePopulation& population, PlacementStrategy strategy,
                                     const DeploymentDomain& domain, Engine& eng);

Point2 sample_uniform(const DeploymentDomain& domain, Engine& eng);

Deployment generate_random_deployment(const Region& region, const NodePopulation& population,
                                      PlacementStrategy strategy, BoundaryMode mode, std::uint64_t seed,
                                      double support = 0.0);

Deployment hex_deployment(const HexLayout& layout);

/// CSV with header "index,x_m,y_m".
void write_deployment_csv(const Deployment& deployment, std::ostream& out);

}  // namespace wsncov
