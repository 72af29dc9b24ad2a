#include "wsncov/placement.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace wsncov
{

std::string to_string(BoundaryMode mode)
{
  switch (mode)
  {
    case BoundaryMode::torus:
      return "torus";
    case BoundaryMode::buffer:
      return "buffer";
    case BoundaryMode::none:
      return "none";
  }
  return "?";
}

std::string to_string(PlacementStrategy strategy)
{
  switch (strategy)
  {
    case PlacementStrategy::hex:
      return "hex";
    case PlacementStrategy::uniform:
      return "uniform";
    case PlacementStrategy::poisson:
      return "poisson";
  }
  return "?";
}

BoundaryMode parse_boundary_mode(const std::string& s)
{
  if (s == "torus")
    return BoundaryMode::torus;
  if (s == "buffer")
    return BoundaryMode::buffer;
  if (s == "none")
    return BoundaryMode::none;
  throw std::invalid_argument("unknown boundary mode '" + s + "' (expected torus, buffer or none)");
}

PlacementStrategy parse_placement_strategy(const std::string& s)
{
  if (s == "hex")
    return PlacementStrategy::hex;
  if (s == "uniform")
    return PlacementStrategy::uniform;
  if (s == "poisson")
    return PlacementStrategy::poisson;
  throw std::invalid_argument("unknown placement strategy '" + s + "' (expected hex, uniform or poisson)");
}

double DeploymentDomain::area() const
{
  return shape == Shape::disk ? M_PI * extent * extent : extent * extent;
}

bool DeploymentDomain::contains(Point2 p) const
{
  if (shape == Shape::disk)
    return p.x * p.x + p.y * p.y <= extent * extent;
  const double h = 0.5 * extent;
  return p.x >= -h && p.x < h && p.y >= -h && p.y < h;
}

DeploymentDomain deployment_domain(const Region& region, BoundaryMode mode, double support)
{
  switch (mode)
  {
    case BoundaryMode::torus:
      return {DeploymentDomain::Shape::square_torus, std::sqrt(M_PI) * region.radius()};
    case BoundaryMode::buffer:
      if (!(support >= 0.0))
        throw std::invalid_argument("buffer boundary mode needs a non-negative sensing support");
      return {DeploymentDomain::Shape::disk, region.radius() + support};
    case BoundaryMode::none:
      break;
  }
  return {DeploymentDomain::Shape::disk, region.radius()};
}

CoverageFraction regular_coverage_fraction(double r, double r_smax)
{
  if (!std::isfinite(r_smax) || r_smax <= 0.0)
    throw std::invalid_argument("regular_coverage_fraction: r_smax must be > 0");
  if (!std::isfinite(r) || r < 0.0)
    throw std::invalid_argument("regular_coverage_fraction: r must be >= 0");
  if (r > r_smax)
    throw std::invalid_argument("regular_coverage_fraction: r exceeds the inscribed radius r_smax");
  const double ratio = r / r_smax;
  return CoverageFraction(kMaxRegularCoverage * ratio * ratio);
}

bool regular_formula_valid(double region_R, double r_smax) { return region_R >= 10.0 * r_smax; }

std::int64_t hex_cell_count(double region_R, double r_smax)
{
  if (!(r_smax > 0.0) || !std::isfinite(region_R) || region_R < r_smax)
    throw std::invalid_argument("hex_cell_count: need region_R >= r_smax > 0");
  const double ratio = region_R / r_smax;
  return static_cast<std::int64_t>(std::ceil(0.9069 * ratio * ratio));
}

HexLayout generate_hex_layout(double region_R, double r_smax)
{
  HexLayout layout;
  layout.region_R = region_R;
  layout.r_smax = r_smax;
  layout.formula_count = hex_cell_count(region_R, r_smax);

  const double spacing = 2.0 * r_smax;
  const double row_height = spacing * std::sqrt(3.0) / 2.0;
  const auto rows = static_cast<long>(std::ceil(region_R / row_height));
  // Centres that sit on the circle up to rounding count as outside.
  const double r2 = region_R * region_R * (1.0 - 1e-12);

  // Axial coordinates (q, row): centre = spacing * (q + row / 2, sqrt(3)/2 * row).
  for (long row = -rows; row <= rows; ++row)
  {
    const double y = row * row_height;
    const double shift = 0.5 * static_cast<double>(row);
    const auto q_lo = static_cast<long>(std::floor(-region_R / spacing - shift)) - 1;
    const auto q_hi = static_cast<long>(std::ceil(region_R / spacing - shift)) + 1;
    for (long q = q_lo; q <= q_hi; ++q)
    {
      const double x = spacing * (static_cast<double>(q) + shift);
      if (x * x + y * y < r2)
        layout.cell_centers.push_back({x, y});
    }
  }
  layout.trim_difference = static_cast<std::int64_t>(layout.cell_centers.size()) - layout.formula_count;
  return layout;
}

double expected_domain_count(const Region& region, const NodePopulation& population, const DeploymentDomain& domain)
{
  if (population.is_count())
    return static_cast<double>(population.count(region)) * domain.area() / region.area();
  return population.density(region) * domain.area();
}

Point2 sample_uniform(const DeploymentDomain& domain, Engine& eng)
{
  const double u = uniform01(eng);
  const double v = uniform01(eng);
  if (domain.shape == DeploymentDomain::Shape::square_torus)
    return {(u - 0.5) * domain.extent, (v - 0.5) * domain.extent};
  // Inverse-CDF radius keeps the draw count fixed at two per point.
  const double r = domain.extent * std::sqrt(u);
  const double theta = 2.0 * M_PI * v;
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::vector<Point2> sample_positions(const Region& region, const NodePopulation& population, PlacementStrategy strategy,
                                     const DeploymentDomain& domain, Engine& eng)
{
  const double mean = expected_domain_count(region, population, domain);
  std::int64_t count = 0;
  switch (strategy)
  {
    case PlacementStrategy::uniform:
      count = std::llround(mean);
      break;
    case PlacementStrategy::poisson:
      if (mean > 0.0)
        count = std::poisson_distribution<std::int64_t>(mean)(eng);
      break;
    case PlacementStrategy::hex:
      throw std::invalid_argument("hex placement is deterministic; use generate_hex_layout");
  }

  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i)
    out.push_back(sample_uniform(domain, eng));
  return out;
}

Deployment generate_random_deployment(const Region& region, const NodePopulation& population,
                                      PlacementStrategy strategy, BoundaryMode mode, std::uint64_t seed, double support)
{
  Deployment d;
  d.strategy = strategy;
  d.seed = seed;
  d.boundary_mode = mode;
  d.domain = deployment_domain(region, mode, support);
  Engine eng = make_engine(seed, 0, Stream::deployment);
  d.positions = sample_positions(region, population, strategy, d.domain, eng);
  return d;
}

Deployment hex_deployment(const HexLayout& layout)
{
  Deployment d;
  d.strategy = PlacementStrategy::hex;
  d.boundary_mode = BoundaryMode::none;
  d.domain = {DeploymentDomain::Shape::disk, layout.region_R};
  d.positions = layout.cell_centers;
  return d;
}

void write_deployment_csv(const Deployment& deployment, std::ostream& out)
{
  out << "index,x_m,y_m\n";
  char buf[96];
  for (std::size_t i = 0; i < deployment.positions.size(); ++i)
  {
    const auto& p = deployment.positions[i];
    std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f\n", i, p.x, p.y);
    out << buf;
  }
}

}  // namespace wsncov
