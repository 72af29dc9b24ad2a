#include "wsncov/sensing.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wsncov
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what)
{
  if (!ok)
    throw std::invalid_argument(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

double q_function(double x)
{
  // erfc keeps full relative precision in the upper tail, unlike 1 - Phi(x).
  return 0.5 * std::erfc(x * M_SQRT1_2);
}

SensingModel make_boolean(double r_s)
{
  SensingModel m = BooleanModel{r_s};
  validate(m);
  return m;
}

SensingModel make_shadow_fading(double r_s, double n, double sigma, double r_max)
{
  SensingModel m = ShadowFadingModel{r_s, n, sigma, r_max > 0.0 ? r_max : r_s};
  validate(m);
  return m;
}

SensingModel make_elfes(double r_1, double lambda, double gamma, double r_max)
{
  SensingModel m = ElfesModel{r_1, lambda, gamma, r_max};
  validate(m);
  return m;
}

void validate(const SensingModel& model)
{
  std::visit(overloaded{
                 [](const BooleanModel& b) { require(finite_positive(b.r_s), "boolean model: r_s must be > 0"); },
                 [](const ShadowFadingModel& s) {
                   require(finite_positive(s.r_s), "shadow-fading model: r_s must be > 0");
                   require(finite_positive(s.n), "shadow-fading model: path-loss exponent n must be > 0");
                   require(finite_positive(s.sigma), "shadow-fading model: sigma must be > 0");
                   require(std::isfinite(s.r_max) && s.r_max >= s.r_s, "shadow-fading model: r_max must be >= r_s");
                 },
                 [](const ElfesModel& e) {
                   require(std::isfinite(e.r_1) && e.r_1 >= 0.0, "elfes model: r_1 must be >= 0");
                   require(finite_positive(e.lambda), "elfes model: lambda must be > 0");
                   require(finite_positive(e.gamma), "elfes model: gamma must be > 0");
                   require(finite_positive(e.r_max), "elfes model: r_max must be > 0");
                   // r_1 == r_max is the Boolean degenerate case.
                   require(e.r_1 <= e.r_max, "elfes model: r_1 must not exceed r_max");
                 },
             },
             model);
}

std::vector<std::string> model_warnings(const SensingModel& model)
{
  std::vector<std::string> out;
  if (const auto* s = std::get_if<ShadowFadingModel>(&model))
  {
    if (s->n < 2.0 || s->n > 4.0)
      out.push_back("path-loss exponent n = " + std::to_string(s->n) + " is outside the typical range [2, 4]");
  }
  return out;
}

double support_radius(const SensingModel& model)
{
  return std::visit(overloaded{
                        [](const BooleanModel& b) { return b.r_s; },
                        [](const ShadowFadingModel& s) { return s.r_max; },
                        [](const ElfesModel& e) { return e.r_max; },
                    },
                    model);
}

double detection_probability(const SensingModel& model, double x)
{
  if (!std::isfinite(x) || x < 0.0)
    throw std::invalid_argument("detection_probability: distance must be finite and >= 0");

  return std::visit(overloaded{
                        [x](const BooleanModel& b) { return x <= b.r_s ? 1.0 : 0.0; },
                        [x](const ShadowFadingModel& s) {
                          if (x > s.r_max)
                            return 0.0;
                          if (x == 0.0)
                            return 1.0;  // Q(-inf)
                          return q_function(10.0 * s.n * std::log10(x / s.r_s) / s.sigma);
                        },
                        [x](const ElfesModel& e) {
                          if (x <= e.r_1)
                            return 1.0;
                          if (x >= e.r_max)
                            return 0.0;
                          return std::exp(-e.lambda * std::pow(x - e.r_1, e.gamma));
                        },
                    },
                    model);
}

std::string model_kind(const SensingModel& model)
{
  return std::visit(overloaded{
                        [](const BooleanModel&) { return std::string("boolean"); },
                        [](const ShadowFadingModel&) { return std::string("shadow"); },
                        [](const ElfesModel&) { return std::string("elfes"); },
                    },
                    model);
}

std::string describe(const SensingModel& model)
{
  char buf[160];
  std::visit(overloaded{
                 [&](const BooleanModel& b) { std::snprintf(buf, sizeof buf, "boolean(r_s=%g)", b.r_s); },
                 [&](const ShadowFadingModel& s) {
                   std::snprintf(buf, sizeof buf, "shadow(r_s=%g, n=%g, sigma=%g, r_max=%g)", s.r_s, s.n, s.sigma, s.r_max);
                 },
                 [&](const ElfesModel& e) {
                   std::snprintf(buf, sizeof buf, "elfes(r_1=%g, lambda=%g, gamma=%g, r_max=%g)", e.r_1, e.lambda, e.gamma,
                                 e.r_max);
                 },
             },
             model);
  return buf;
}

}  // namespace wsncov
