#pragma once

#include <functional>
#include <span>

namespace wsncov
{

struct QuadratureResult
{
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = true;
};

struct QuadratureOptions
{
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int max_depth = 60;
};

/// Adaptive composite Simpson on [a, b] with Richardson correction. Intervals
/// are bisected until the local error estimate meets the tolerance budget or
/// max_depth is reached.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& opts = {});

/// Same, but integrates piecewise over [a, b] split at the given interior
/// breakpoints (points outside (a, b) are ignored). Use this where the
/// integrand has kinks or jumps.
QuadratureResult adaptive_simpson_piecewise(const std::function<double(double)>& f, double a, double b,
                                            std::span<const double> breakpoints, const QuadratureOptions& opts = {});

}  // namespace wsncov
