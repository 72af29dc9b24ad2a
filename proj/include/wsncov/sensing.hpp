#pragma once

#include <string>
#include <variant>
#include <vector>

namespace wsncov
{

/// Upper-tail probability of the standard Gaussian, Q(x) = P(Z > x).
double q_function(double x);

// Deterministic disk: detection iff distance <= r_s.
struct BooleanModel
{
  double r_s = 0.0;
};

// Log-normal shadowing: p(x) = Q(10 n log10(x / r_s) / sigma), truncated at r_max.
struct ShadowFadingModel
{
  double r_s = 0.0;
  double n = 2.0;      // path-loss exponent
  double sigma = 0.0;  // dB
  double r_max = 0.0;
};

// Certain detection up to r_1, then exp(-lambda (x - r_1)^gamma) until r_max.
struct ElfesModel
{
  double r_1 = 0.0;
  double lambda = 0.0;
  double gamma = 1.0;
  double r_max = 0.0;
};

using SensingModel = std::variant<BooleanModel, ShadowFadingModel, ElfesModel>;

// Validating constructors. Each throws std::invalid_argument on a parameter
// outside the model's domain.
SensingModel make_boolean(double r_s);
// r_max <= 0 selects the default truncation r_max = r_s.
SensingModel make_shadow_fading(double r_s, double n, double sigma, double r_max = 0.0);
SensingModel make_elfes(double r_1, double lambda, double gamma, double r_max);

void validate(const SensingModel& model);

/// Non-fatal diagnostics, e.g. a path-loss exponent outside the usual [2, 4].
std::vector<std::string> model_warnings(const SensingModel& model);

/// Radius beyond which detection probability is exactly zero.
double support_radius(const SensingModel& model);

/// Probability that a single node detects an event at distance x >= 0.
double detection_probability(const SensingModel& model, double x);

/// Short machine-readable kind: "boolean", "shadow" or "elfes".
std::string model_kind(const SensingModel& model);

/// Human readable parameter summary, e.g. "elfes(r_1=0, lambda=0.01, gamma=1, r_max=50)".
std::string describe(const SensingModel& model);

}  // namespace wsncov
