#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <sstream>
#include <string>

#include <doctest.h>

#include "wsncov/placement.hpp"

using namespace wsncov;

TEST_CASE("regular_coverage_fraction")
{
  CHECK(std::abs(regular_coverage_fraction(50.0, 50.0).value() - 0.9069) <= 1e-4);
  CHECK(regular_coverage_fraction(50.0, 50.0).value() == doctest::Approx(M_PI / (2.0 * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(regular_coverage_fraction(0.0, 50.0).value() == 0.0);
  CHECK(std::abs(regular_coverage_fraction(25.0, 50.0).value() - 0.22672) <= 1e-5);

  for (double r = 0.0; r <= 50.0; r += 0.5)
    REQUIRE(regular_coverage_fraction(r, 50.0).value() <= kMaxRegularCoverage);

  CHECK_THROWS_AS(regular_coverage_fraction(50.1, 50.0), std::invalid_argument);
  CHECK_THROWS_AS(regular_coverage_fraction(-1.0, 50.0), std::invalid_argument);
  CHECK_FALSE(regular_formula_valid(400.0, 50.0));
  CHECK(regular_formula_valid(1000.0, 50.0));
}

TEST_CASE("hex_cell_count")
{
  CHECK(hex_cell_count(1000.0, 50.0) == 363);
  CHECK(hex_cell_count(50.0, 50.0) == 1);
  CHECK(hex_cell_count(500.0, 50.0) == 91);
  CHECK_THROWS_AS(hex_cell_count(40.0, 50.0), std::invalid_argument);
}

TEST_CASE("generate_hex_layout")
{
  const auto single = generate_hex_layout(50.0, 50.0);
  REQUIRE(single.cell_centers.size() == 1);
  CHECK(single.cell_centers[0].x == 0.0);
  CHECK(single.cell_centers[0].y == 0.0);

  const auto big = generate_hex_layout(1000.0, 50.0);
  const double count = static_cast<double>(big.cell_centers.size());
  CHECK(std::abs(count - 363.0) <= 0.03 * 363.0);
  CHECK(big.formula_count == 363);
  CHECK(big.trim_difference == static_cast<std::int64_t>(big.cell_centers.size()) - 363);

  for (const auto& layout : {generate_hex_layout(150.0, 50.0), generate_hex_layout(1000.0, 50.0),
                             generate_hex_layout(777.0, 31.0)})
  {
    const auto& c = layout.cell_centers;
    double min_d = INFINITY;
    for (std::size_t i = 0; i < c.size(); ++i)
    {
      REQUIRE(std::hypot(c[i].x, c[i].y) < layout.region_R);
      for (std::size_t j = i + 1; j < c.size(); ++j)
        min_d = std::min(min_d, std::hypot(c[i].x - c[j].x, c[i].y - c[j].y));
    }
    CHECK(min_d >= 2.0 * layout.r_smax * (1.0 - 1e-9));
    CHECK(min_d == doctest::Approx(2.0 * layout.r_smax).epsilon(1e-9));
  }

  // Deterministic.
  const auto again = generate_hex_layout(1000.0, 50.0);
  REQUIRE(again.cell_centers.size() == big.cell_centers.size());
  for (std::size_t i = 0; i < again.cell_centers.size(); ++i)
    REQUIRE((again.cell_centers[i].x == big.cell_centers[i].x && again.cell_centers[i].y == big.cell_centers[i].y));
}

TEST_CASE("deployment domains")
{
  const Region region(1000.0);
  const auto torus = deployment_domain(region, BoundaryMode::torus, 50.0);
  CHECK(torus.area() == doctest::Approx(region.area()).epsilon(1e-14));
  CHECK(torus.contains({-0.5 * torus.extent, 0.0}));
  CHECK_FALSE(torus.contains({0.5 * torus.extent, 0.0}));
  CHECK(deployment_domain(region, BoundaryMode::buffer, 50.0).extent == 1050.0);
  CHECK(deployment_domain(region, BoundaryMode::none, 50.0).extent == 1000.0);
}

TEST_CASE("uniform deployment passes a chi-square test over equal-area sectors")
{
  const Region region(1000.0);
  const auto d = generate_random_deployment(region, NodeCount{100000}, PlacementStrategy::uniform, BoundaryMode::none,
                                            42);
  REQUIRE(d.positions.size() == 100000);

  // 10 equal-area annuli x 10 angular sectors.
  std::vector<int> bins(100, 0);
  for (const auto& p : d.positions)
  {
    const double r2 = (p.x * p.x + p.y * p.y) / (region.radius() * region.radius());
    REQUIRE(r2 <= 1.0);
    const int ring = std::min(9, static_cast<int>(r2 * 10.0));
    double theta = std::atan2(p.y, p.x);
    if (theta < 0)
      theta += 2.0 * M_PI;
    const int sector = std::min(9, static_cast<int>(theta / (2.0 * M_PI) * 10.0));
    ++bins[ring * 10 + sector];
  }
  double chi2 = 0.0;
  for (int b : bins)
    chi2 += (b - 1000.0) * (b - 1000.0) / 1000.0;
  // 99 degrees of freedom, significance 0.001 (scipy chi2.ppf(0.999, 99)).
  CHECK(chi2 < 148.23);
}

TEST_CASE("poisson deployment counts")
{
  const Region region(1000.0);
  const NodePopulation pop(NodeDensity{1000.0 / region.area()});
  double sum = 0.0;
  constexpr int draws = 10000;
  for (int i = 0; i < draws; ++i)
  {
    Engine eng = make_engine(7, static_cast<std::uint64_t>(i), Stream::deployment);
    sum += static_cast<double>(
        sample_positions(region, pop, PlacementStrategy::poisson, deployment_domain(region, BoundaryMode::torus, 0),
                         eng)
            .size());
  }
  const double mean = sum / draws;
  CHECK(mean >= 970.0);
  CHECK(mean <= 1030.0);
}

TEST_CASE("random deployments are seeded and confined")
{
  const Region region(1000.0);
  CHECK(generate_random_deployment(region, NodeCount{0}, PlacementStrategy::uniform, BoundaryMode::none, 1)
            .positions.empty());

  const auto a = generate_random_deployment(region, NodeCount{500}, PlacementStrategy::uniform, BoundaryMode::torus, 9);
  const auto b = generate_random_deployment(region, NodeCount{500}, PlacementStrategy::uniform, BoundaryMode::torus, 9);
  const auto c = generate_random_deployment(region, NodeCount{500}, PlacementStrategy::uniform, BoundaryMode::torus, 10);
  REQUIRE(a.positions.size() == 500);
  bool differs = false;
  for (std::size_t i = 0; i < 500; ++i)
  {
    REQUIRE(a.positions[i].x == b.positions[i].x);
    REQUIRE(a.positions[i].y == b.positions[i].y);
    REQUIRE(a.domain.contains(a.positions[i]));
    differs = differs || a.positions[i].x != c.positions[i].x;
  }
  CHECK(differs);
  CHECK(a.seed == 9u);

  // Buffer mode keeps the density: more nodes over the larger disk.
  const auto buf = generate_random_deployment(region, NodeCount{1000}, PlacementStrategy::uniform,
                                              BoundaryMode::buffer, 3, 100.0);
  CHECK(buf.positions.size() == 1210);
  for (const auto& p : buf.positions)
    REQUIRE(std::hypot(p.x, p.y) <= 1100.0);

  const auto pois = generate_random_deployment(region, NodeDensity{1000.0 / region.area()}, PlacementStrategy::poisson,
                                               BoundaryMode::none, 3);
  CHECK(pois.positions.size() > 850);
  CHECK(pois.positions.size() < 1150);

  CHECK_THROWS_AS(generate_random_deployment(region, NodeCount{10}, PlacementStrategy::hex, BoundaryMode::none, 1),
                  std::invalid_argument);
}

TEST_CASE("deployment CSV")
{
  Deployment d = hex_deployment(generate_hex_layout(150.0, 50.0));
  std::ostringstream ss;
  write_deployment_csv(d, ss);
  const std::string csv = ss.str();
  CHECK(csv.rfind("index,x_m,y_m\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(d.positions.size()) + 1);
  CHECK(csv.find("\r") == std::string::npos);
}

TEST_CASE("enum parsing")
{
  CHECK(parse_boundary_mode("torus") == BoundaryMode::torus);
  CHECK(to_string(parse_boundary_mode("buffer")) == "buffer");
  CHECK(parse_placement_strategy("poisson") == PlacementStrategy::poisson);
  CHECK_THROWS_AS(parse_boundary_mode("wrap"), std::invalid_argument);
  CHECK_THROWS_AS(parse_placement_strategy("grid"), std::invalid_argument);
}
