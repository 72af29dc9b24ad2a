#include "wsncov/analytic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wsncov/quadrature.hpp"

namespace wsncov
{

namespace
{

// The footprint integral composes many Q evaluations; a tolerance well
// below the documented 1e-9 keeps the Poisson/closed-form identity at 1e-12.
constexpr double kFootprintRelTol = 1e-13;

void check_count(std::int64_t n)
{
  if (n < 0)
    throw std::invalid_argument("node count must be >= 0");
}

void check_support(const Region& region, const SensingModel& model)
{
  if (support_radius(model) > region.radius())
    throw std::invalid_argument("sensing support " + std::to_string(support_radius(model)) +
                                " m exceeds region radius " + std::to_string(region.radius()) + " m");
}

// (1 + t) e^{-t} - 1, accurate for small t where the direct form cancels.
double decay_moment(double t)
{
  if (t < 0.5)
  {
    // sum_{m>=2} (-1)^{m+1} (m - 1) t^m / m!
    double term = t;  // t^m / m! at m = 1
    double sum = 0.0;
    for (int m = 2; m < 40; ++m)
    {
      term *= t / m;
      const double c = (m - 1) * term;
      sum += (m % 2 == 0) ? -c : c;
      if (c < 1e-18 * std::abs(sum))
        break;
    }
    return sum;
  }
  return (1.0 + t) * std::exp(-t) - 1.0;
}

// p(x) on [0, support] without the jump to zero at the truncation radius,
// so Simpson never samples the discontinuity at the right endpoint.
double continued_probability(const SensingModel& model, double x)
{
  if (const auto* e = std::get_if<ElfesModel>(&model))
    return x <= e->r_1 ? 1.0 : std::exp(-e->lambda * std::pow(x - e->r_1, e->gamma));
  if (const auto* s = std::get_if<ShadowFadingModel>(&model))
    return x == 0.0 ? 1.0 : q_function(10.0 * s->n * std::log10(x / s->r_s) / s->sigma);
  return 1.0;  // Boolean on [0, r_s]
}

void check_elfes_gamma1(const ElfesModel& model)
{
  validate(model);
  if (model.gamma != 1.0)
    throw std::invalid_argument("closed-form Elfes coverage requires gamma = 1; use poisson_coverage");
}

}  // namespace

Region::Region(double radius) : radius_(radius), area_(M_PI * radius * radius)
{
  if (!std::isfinite(radius) || radius <= 0.0)
    throw std::invalid_argument("region radius must be > 0");
}

NodePopulation::NodePopulation(NodeCount n) : value_(n) { check_count(n.value); }

NodePopulation::NodePopulation(NodeDensity rho) : value_(rho)
{
  if (!std::isfinite(rho.per_m2) || rho.per_m2 < 0.0)
    throw std::invalid_argument("node density must be >= 0");
}

std::int64_t NodePopulation::count(const Region& region) const
{
  if (const auto* n = std::get_if<NodeCount>(&value_))
    return n->value;
  return std::llround(std::get<NodeDensity>(value_).per_m2 * region.area());
}

double NodePopulation::density(const Region& region) const
{
  if (const auto* rho = std::get_if<NodeDensity>(&value_))
    return rho->per_m2;
  return static_cast<double>(std::get<NodeCount>(value_).value) / region.area();
}

CoverageFraction::CoverageFraction(double value) : value_(value)
{
  if (!(value >= 0.0 && value <= 1.0))
    throw std::domain_error("coverage fraction outside [0, 1]: " + std::to_string(value));
}

CoverageFraction boolean_coverage(const Region& region, std::int64_t n, double r_s, BooleanForm form)
{
  check_count(n);
  if (!std::isfinite(r_s) || r_s <= 0.0)
    throw std::invalid_argument("boolean_coverage: r_s must be > 0");
  if (r_s > region.radius())
    throw std::invalid_argument("boolean_coverage: r_s exceeds region radius");

  const double p = M_PI * r_s * r_s / region.area();
  const double nd = static_cast<double>(n);
  if (form == BooleanForm::exact)
  {
    if (p >= 1.0)
      return CoverageFraction(n > 0 ? 1.0 : 0.0);
    return CoverageFraction(-std::expm1(nd * std::log1p(-p)));
  }
  return CoverageFraction(-std::expm1(-nd * p));
}

double elfes_single_node_detection(const Region& region, const ElfesModel& model)
{
  check_elfes_gamma1(model);
  check_support(region, model);

  const double a = model.lambda * model.r_1;
  const double t = model.lambda * (model.r_max - model.r_1);
  // (1 + a) - e^{-t}(1 + a + t), rearranged into two non-negative terms.
  const double bracket = a * (-std::expm1(-t)) - decay_moment(t);
  const double inner = M_PI * model.r_1 * model.r_1 / region.area();
  const double outer = 2.0 * M_PI / (region.area() * model.lambda * model.lambda) * bracket;
  return inner + outer;
}

CoverageFraction elfes_coverage(const Region& region, std::int64_t n, const ElfesModel& model)
{
  check_count(n);
  check_elfes_gamma1(model);
  check_support(region, model);

  const double nd = static_cast<double>(n);
  if (model.r_1 == 0.0)
  {
    const double lambda2 = model.lambda * model.lambda;
    const double exponent = 2.0 * M_PI * nd / (region.area() * lambda2) * decay_moment(model.lambda * model.r_max);
    return CoverageFraction(-std::expm1(exponent));
  }
  return CoverageFraction(-std::expm1(-nd * elfes_single_node_detection(region, model)));
}

double detection_footprint(const SensingModel& model)
{
  validate(model);
  const double support = support_radius(model);

  std::array<double, 2> breaks{0.0, 0.0};
  std::size_t nb = 0;
  if (const auto* e = std::get_if<ElfesModel>(&model))
    breaks[nb++] = e->r_1;
  if (const auto* s = std::get_if<ShadowFadingModel>(&model))
    breaks[nb++] = s->r_s;  // steepest point of the Q transition

  QuadratureOptions opts;
  opts.rel_tol = kFootprintRelTol;
  const auto integrand = [&model](double x) { return 2.0 * M_PI * x * continued_probability(model, x); };
  const QuadratureResult r =
      adaptive_simpson_piecewise(integrand, 0.0, support, std::span<const double>(breaks.data(), nb), opts);
  if (!r.converged && r.error_estimate > 1e-9 * std::abs(r.value))
    throw std::runtime_error("detection_footprint: quadrature did not converge for " + describe(model));
  return r.value;
}

CoverageFraction poisson_coverage(const Region& region, double rho, const SensingModel& model)
{
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("poisson_coverage: density must be >= 0");
  validate(model);
  check_support(region, model);
  if (rho == 0.0)
    return CoverageFraction(0.0);
  return CoverageFraction(-std::expm1(-rho * detection_footprint(model)));
}

double single_node_detection(const Region& region, const SensingModel& model)
{
  validate(model);
  check_support(region, model);
  if (const auto* b = std::get_if<BooleanModel>(&model))
    return M_PI * b->r_s * b->r_s / region.area();
  if (const auto* e = std::get_if<ElfesModel>(&model); e && e->gamma == 1.0)
    return elfes_single_node_detection(region, *e);
  return detection_footprint(model) / region.area();
}

CoverageFraction analytic_coverage(const Region& region, std::int64_t n, const SensingModel& model)
{
  if (const auto* b = std::get_if<BooleanModel>(&model))
    return boolean_coverage(region, n, b->r_s, BooleanForm::exact);
  if (const auto* e = std::get_if<ElfesModel>(&model); e && e->gamma == 1.0)
    return elfes_coverage(region, n, *e);
  check_count(n);
  return poisson_coverage(region, static_cast<double>(n) / region.area(), model);
}

std::int64_t nodes_for_coverage(const Region& region, const SensingModel& model, double target_f)
{
  if (!(target_f > 0.0 && target_f < 1.0))
    throw std::invalid_argument("nodes_for_coverage: target must lie in (0, 1)");

  const double p = single_node_detection(region, model);
  if (!(p > 0.0))
    throw std::invalid_argument("nodes_for_coverage: model has zero detection probability");

  // Coverage is 1 - exp(-N * rate); only the Boolean exact form has rate != p.
  const double rate = std::holds_alternative<BooleanModel>(model) ? -std::log1p(-std::min(p, 1.0 - 1e-16)) : p;
  const double estimate = std::ceil(-std::log1p(-target_f) / rate);
  if (estimate > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2))
    throw std::overflow_error("nodes_for_coverage: required node count overflows");

  auto n = std::max<std::int64_t>(1, static_cast<std::int64_t>(estimate));
  while (n > 1 && analytic_coverage(region, n - 1, model).value() >= target_f)
    --n;
  while (analytic_coverage(region, n, model).value() < target_f)
    ++n;
  return n;
}

}  // namespace wsncov
