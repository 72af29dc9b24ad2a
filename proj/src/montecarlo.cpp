#include "wsncov/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wsncov/rng.hpp"

namespace wsncov
{

namespace
{

// Uniform cell list over the deployment domain. Cells are at least `reach`
// wide, so every node within `reach` of a query lies in the 3x3 block
// around the query's cell.
class NeighborGrid
{
public:
  NeighborGrid(std::span<const Point2> nodes, const DeploymentDomain& domain, double reach)
  {
    wrap_ = domain.shape == DeploymentDomain::Shape::square_torus;
    const double span = wrap_ ? domain.extent : 2.0 * domain.extent;
    origin_ = -0.5 * span;

    long n = static_cast<long>(std::floor(span / reach));
    // Keep roughly one node per cell at most; huge grids only cost memory.
    const long cap = std::max<long>(1, static_cast<long>(std::ceil(std::sqrt(static_cast<double>(nodes.size())))));
    n = std::clamp<long>(n, 1, cap);
    if (wrap_ && n < 3)
      n = 1;  // a 3x3 block would visit some cells twice
    n_ = n;
    cell_ = span / static_cast<double>(n_);

    const std::size_t cells = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    std::vector<std::uint32_t> cell_of(nodes.size());
    start_.assign(cells + 1, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
      cell_of[i] = static_cast<std::uint32_t>(axis(nodes[i].y) * n_ + axis(nodes[i].x));
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 0; c < cells; ++c)
      start_[c + 1] += start_[c];
    sorted_.resize(nodes.size());
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      sorted_[fill[cell_of[i]]++] = nodes[i];
  }

  template <class F>
  void for_each_near(Point2 t, F&& f) const
  {
    if (sorted_.empty())
      return;
    const long cx = axis(t.x);
    const long cy = axis(t.y);
    const long reach = n_ == 1 ? 0 : 1;
    for (long dy = -reach; dy <= reach; ++dy)
    {
      long y = cy + dy;
      if (!wrap_ && (y < 0 || y >= n_))
        continue;
      y = (y + n_) % n_;
      for (long dx = -reach; dx <= reach; ++dx)
      {
        long x = cx + dx;
        if (!wrap_ && (x < 0 || x >= n_))
          continue;
        x = (x + n_) % n_;
        const std::size_t c = static_cast<std::size_t>(y * n_ + x);
        for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k)
          f(sorted_[k]);
      }
    }
  }

private:
  long axis(double v) const { return std::clamp<long>(static_cast<long>(std::floor((v - origin_) / cell_)), 0, n_ - 1); }

  bool wrap_ = false;
  long n_ = 1;
  double origin_ = 0.0;
  double cell_ = 1.0;
  std::vector<std::uint32_t> start_;
  std::vector<Point2> sorted_;
};

struct TrialSums
{
  double sum = 0.0;
  double sum_sq = 0.0;
};

DeploymentDomain target_domain(const SimulationPlan& plan)
{
  // On the torus every point is interior, so targets cover the whole square.
  if (plan.deployment.boundary_mode == BoundaryMode::torus)
    return deployment_domain(plan.region, BoundaryMode::torus, 0.0);
  return {DeploymentDomain::Shape::disk, plan.region.radius()};
}

std::vector<Point2> sample_targets(const SimulationPlan& plan, const DeploymentDomain& domain, Engine& eng)
{
  std::vector<Point2> targets;
  targets.reserve(static_cast<std::size_t>(plan.n_targets));
  std::int64_t jittered = 0;
  if (plan.target_sampling == TargetSampling::stratified_grid)
  {
    const auto k = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(plan.n_targets))));
    // Strata live in the unit square; both maps below preserve area.
    for (std::int64_t i = 0; i < k; ++i)
      for (std::int64_t j = 0; j < k; ++j)
      {
        const double u = (static_cast<double>(i) + uniform01(eng)) / static_cast<double>(k);
        const double v = (static_cast<double>(j) + uniform01(eng)) / static_cast<double>(k);
        if (domain.shape == DeploymentDomain::Shape::square_torus)
          targets.push_back({(u - 0.5) * domain.extent, (v - 0.5) * domain.extent});
        else
        {
          const double r = domain.extent * std::sqrt(u);
          targets.push_back({r * std::cos(2.0 * M_PI * v), r * std::sin(2.0 * M_PI * v)});
        }
      }
    jittered = k * k;
  }
  for (std::int64_t i = jittered; i < plan.n_targets; ++i)
    targets.push_back(sample_uniform(domain, eng));
  return targets;
}

std::vector<Point2> deploy(const SimulationPlan& plan, const DeploymentDomain& domain, std::uint64_t trial)
{
  if (plan.deployment.strategy == PlacementStrategy::hex)
    return generate_hex_layout(domain.extent, plan.deployment.hex_r_smax).cell_centers;
  Engine eng = make_engine(plan.seed, trial, Stream::deployment);
  return sample_positions(plan.region, plan.deployment.population, plan.deployment.strategy, domain, eng);
}

TrialSums run_trial(const SimulationPlan& plan, std::uint64_t trial)
{
  const double support = support_radius(plan.model);
  const DeploymentDomain domain = deployment_domain(plan.region, plan.deployment.boundary_mode, support);
  const std::vector<Point2> nodes = deploy(plan, domain, trial);
  const NeighborGrid grid(nodes, domain, support);

  Engine target_eng = make_engine(plan.seed, trial, Stream::targets);
  Engine coin_eng = make_engine(plan.seed, trial, Stream::coins);
  const std::vector<Point2> targets = sample_targets(plan, target_domain(plan), target_eng);

  TrialSums sums;
  for (const Point2& t : targets)
  {
    double miss = 1.0;
    grid.for_each_near(t, [&](const Point2& node) {
      const double d = boundary_distance(t, node, plan.deployment.boundary_mode, domain);
      if (d <= support)
        miss *= 1.0 - detection_probability(plan.model, d);
    });
    double score = 1.0 - miss;
    if (plan.detection_mode == DetectionMode::bernoulli)
      score = uniform01(coin_eng) < score ? 1.0 : 0.0;
    sums.sum += score;
    sums.sum_sq += score * score;
  }
  return sums;
}

}  // namespace

std::string to_string(TargetSampling sampling)
{
  return sampling == TargetSampling::uniform_random ? "uniform" : "stratified";
}

std::string to_string(DetectionMode mode) { return mode == DetectionMode::expectation ? "expectation" : "bernoulli"; }

TargetSampling parse_target_sampling(const std::string& s)
{
  if (s == "uniform")
    return TargetSampling::uniform_random;
  if (s == "stratified")
    return TargetSampling::stratified_grid;
  throw std::invalid_argument("unknown target sampling '" + s + "' (expected uniform or stratified)");
}

DetectionMode parse_detection_mode(const std::string& s)
{
  if (s == "expectation")
    return DetectionMode::expectation;
  if (s == "bernoulli")
    return DetectionMode::bernoulli;
  throw std::invalid_argument("unknown detection mode '" + s + "' (expected expectation or bernoulli)");
}

double boundary_distance(Point2 a, Point2 b, BoundaryMode mode, const DeploymentDomain& domain)
{
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  if (mode == BoundaryMode::torus)
  {
    const double side = domain.extent;
    dx = std::min(dx, side - dx);
    dy = std::min(dy, side - dy);
  }
  return std::hypot(dx, dy);
}

void validate(const SimulationPlan& plan)
{
  validate(plan.model);
  if (plan.n_trials < 1 || plan.n_targets < 1)
    throw std::invalid_argument("simulation plan: n_trials and n_targets must be >= 1");
  if (plan.n_targets > (std::int64_t{1} << 40))
    throw std::invalid_argument("simulation plan: n_targets is unreasonably large");

  const double support = support_radius(plan.model);
  const auto mode = plan.deployment.boundary_mode;
  if (mode == BoundaryMode::torus)
  {
    const double side = deployment_domain(plan.region, mode, support).extent;
    if (support > 0.5 * side)
      throw std::invalid_argument("simulation plan: sensing support exceeds half the torus period");
  }
  if (plan.deployment.strategy == PlacementStrategy::hex)
  {
    if (mode == BoundaryMode::torus)
      throw std::invalid_argument("simulation plan: hex placement does not tile the torus; use none or buffer");
    if (!(plan.deployment.hex_r_smax > 0.0) || plan.deployment.hex_r_smax > plan.region.radius())
      throw std::invalid_argument("simulation plan: hex placement needs 0 < r_smax <= R");
  }
  else
  {
    const double expected = expected_domain_count(plan.region, plan.deployment.population,
                                                  deployment_domain(plan.region, mode, support));
    if (expected > 2e9)
      throw std::invalid_argument("simulation plan: deployment too large");
  }
}

CoverageEstimate estimate_coverage(const SimulationPlan& plan, const RunOptions& options)
{
  validate(plan);

  const auto trials = static_cast<std::size_t>(plan.n_trials);
  std::vector<TrialSums> per_trial(trials);

  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < trials; t = next++)
      per_trial[t] = run_trial(plan, t);
  };
  if (workers <= 1)
    work();
  else
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(work);
  }

  // Fixed-order reduction: same bits regardless of which worker ran what.
  const double targets = static_cast<double>(plan.n_targets);
  double mean = 0.0;
  for (const auto& s : per_trial)
    mean += s.sum / targets;
  mean /= static_cast<double>(trials);

  double se = 0.0;
  if (trials > 1)
  {
    double ss = 0.0;
    for (const auto& s : per_trial)
    {
      const double d = s.sum / targets - mean;
      ss += d * d;
    }
    se = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  }
  else
  {
    const double var = std::max(0.0, per_trial[0].sum_sq / targets - mean * mean);
    se = targets > 1 ? std::sqrt(var / (targets - 1)) : 0.0;
  }

  CoverageEstimate est;
  est.f_hat = std::clamp(mean, 0.0, 1.0);
  est.std_error = se;
  est.ci_lo = std::max(0.0, est.f_hat - 1.96 * se);
  est.ci_hi = std::min(1.0, est.f_hat + 1.96 * se);
  est.n_trials = plan.n_trials;
  est.n_targets = plan.n_targets;
  est.seed = plan.seed;
  est.boundary_mode = plan.deployment.boundary_mode;
  return est;
}

BorderGap border_effect_gap(const SimulationPlan& plan, const RunOptions& options)
{
  if (plan.deployment.boundary_mode != BoundaryMode::none)
    throw std::invalid_argument("border_effect_gap: plan must use boundary mode none");
  if (plan.deployment.strategy == PlacementStrategy::hex)
    throw std::invalid_argument("border_effect_gap: needs a random deployment strategy");

  BorderGap out;
  const auto& pop = plan.deployment.population;
  out.f_analytic = plan.deployment.strategy == PlacementStrategy::poisson
                       ? poisson_coverage(plan.region, pop.density(plan.region), plan.model).value()
                       : analytic_coverage(plan.region, pop.count(plan.region), plan.model).value();
  out.estimate = estimate_coverage(plan, options);
  out.gap = out.f_analytic - out.estimate.f_hat;
  return out;
}

std::string summary(const CoverageEstimate& e)
{
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "coverage estimate\n"
                "  f_hat      %.6f\n"
                "  std_error  %.6f\n"
                "  ci95       [%.6f, %.6f]\n"
                "  trials     %lld x %lld targets\n"
                "  boundary   %s\n"
                "  seed       %llu\n"
                "  generator  %.*s\n",
                e.f_hat, e.std_error, e.ci_lo, e.ci_hi, static_cast<long long>(e.n_trials),
                static_cast<long long>(e.n_targets), to_string(e.boundary_mode).c_str(),
                static_cast<unsigned long long>(e.seed), static_cast<int>(kGeneratorId.size()), kGeneratorId.data());
  return buf;
}

}  // namespace wsncov
