// Acceptance suite: one PASS/FAIL line per criterion. Every tolerance and
// runtime budget lives in this file. Oracles are computed here, independently
// of the library code paths they check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "wsncov/analytic.hpp"
#include "wsncov/experiments.hpp"
#include "wsncov/montecarlo.hpp"
#include "wsncov/placement.hpp"
#include "wsncov/sensing.hpp"

using namespace wsncov;
namespace fs = std::filesystem;

namespace
{

const Region kRegion(1000.0);

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what)
  {
    if (!ok)
    {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

std::string fmt(const char* f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- oracles ---------------------------------------------------------------

// Direct evaluation of 1 - (1 - pi r^2 / (pi R^2))^N.
double boolean_oracle(double R, double n, double r) { return 1.0 - std::pow(1.0 - (r * r) / (R * R), n); }

// Elfes gamma = 1, r_1 = 0 network coverage in exponential form.
double elfes_oracle(double R, double n, double lambda, double r_max)
{
  const double area = M_PI * R * R;
  return 1.0 - std::exp(2.0 * M_PI * n / (area * lambda * lambda) *
                        ((lambda * r_max + 1.0) * std::exp(-lambda * r_max) - 1.0));
}

// Fixed-step composite Simpson of 2 pi x p(x) over [0, reach]; p is the raw
// per-model formula written out here, not the library evaluator.
double shadow_p(double x, double r_s, double n, double sigma, double r_max)
{
  if (x > r_max)
    return 0.0;
  if (x == 0.0)
    return 1.0;
  const double arg = 10.0 * n * std::log10(x / r_s) / sigma;
  return 0.5 * std::erfc(arg / std::sqrt(2.0));
}

double simpson_footprint(const std::function<double(double)>& p, double reach, int panels = 200000)
{
  const double h = reach / panels;
  double s = 0.0;
  for (int i = 0; i <= panels; ++i)
  {
    const double x = i * h;
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * 2.0 * M_PI * x * p(x);
  }
  return s * h / 3.0;
}

// Annulus product: each thin ring of width dx at radius x leaves a target
// undetected with probability exp(-rho 2 pi x p(x) dx).
double ring_oracle(double rho, const std::function<double(double)>& p, double reach, long rings = 10000)
{
  const double dx = reach / static_cast<double>(rings);
  double exponent = 0.0;
  for (long i = 0; i < rings; ++i)
  {
    const double x = (static_cast<double>(i) + 0.5) * dx;
    exponent -= rho * 2.0 * M_PI * x * p(x) * dx;
  }
  return 1.0 - std::exp(exponent);
}

// ---- criteria --------------------------------------------------------------

void golden_values(Outcome& o)
{
  const double f949 = boolean_coverage(kRegion, 949, 50.0).value();
  o.detail << "f(949)=" << fmt("%.6f", f949);
  o.expect(f949 >= 0.9065 && f949 <= 0.9075, "boolean_coverage(949) in [0.9065, 0.9075]");
  o.expect(std::abs(f949 - boolean_oracle(1000.0, 949, 50.0)) <= 1e-12, "boolean oracle");

  const auto cells = hex_cell_count(1000.0, 50.0);
  o.detail << " cells=" << cells;
  o.expect(cells == 363, "hex_cell_count == 363");

  const double reg = regular_coverage_fraction(50.0, 50.0).value();
  o.detail << " regular=" << fmt("%.6f", reg);
  o.expect(std::abs(reg - 0.9069) <= 1e-4, "regular max 0.9069 +- 1e-4");
  o.expect(std::abs(reg - M_PI / (2.0 * std::sqrt(3.0))) <= 1e-15, "regular max equals pi / (2 sqrt 3)");
}

void poisson_identity(Outcome& o)
{
  std::mt19937_64 gen(20240601);
  std::uniform_int_distribution<int> n_dist(1, 3000);
  std::uniform_real_distribution<double> lam_dist(0.001, 0.1);
  std::uniform_real_distribution<double> rmax_dist(10.0, 200.0);
  double worst = 0.0;
  double worst_oracle = 0.0;
  for (int i = 0; i < 50; ++i)
  {
    const int n = n_dist(gen);
    const auto model = std::get<ElfesModel>(make_elfes(0.0, lam_dist(gen), 1.0, rmax_dist(gen)));
    const double closed = elfes_coverage(kRegion, n, model).value();
    const double quad = poisson_coverage(kRegion, n / kRegion.area(), model).value();
    worst = std::max(worst, std::abs(closed - quad));
    worst_oracle = std::max(worst_oracle, std::abs(closed - elfes_oracle(1000.0, n, model.lambda, model.r_max)));
  }
  o.detail << "max|poisson-closed|=" << fmt("%.2e", worst) << " max|closed-oracle|=" << fmt("%.2e", worst_oracle);
  o.expect(worst <= 1e-12, "identity within 1e-12");
  o.expect(worst_oracle <= 1e-12, "closed form matches oracle within 1e-12");
}

void mc_agreement(Outcome& o)
{
  struct Case
  {
    std::string name;
    SensingModel model;
    NodePopulation population;
    PlacementStrategy strategy;
    double expected;
  };
  const double area = kRegion.area();
  auto shadow_expected = [&](double sigma) {
    // Fixed N on the torus: 1 - (1 - footprint / A)^N.
    const double fp = simpson_footprint([&](double x) { return shadow_p(x, 50.0, 2.0, sigma, 50.0); }, 50.0);
    return 1.0 - std::pow(1.0 - fp / area, 1000.0);
  };
  const std::vector<Case> cases{
      {"boolean N=949", make_boolean(50.0), NodeCount{949}, PlacementStrategy::uniform,
       boolean_oracle(1000.0, 949, 50.0)},
      {"elfes l=0.01 N=1000", make_elfes(0.0, 0.01, 1.0, 50.0), NodeCount{1000}, PlacementStrategy::uniform,
       elfes_oracle(1000.0, 1000, 0.01, 50.0)},
      {"elfes l=0.03 poisson", make_elfes(0.0, 0.03, 1.0, 50.0), NodeDensity{1000.0 / area},
       PlacementStrategy::poisson, elfes_oracle(1000.0, 1000, 0.03, 50.0)},
      {"shadow s=2 N=1000", make_shadow_fading(50.0, 2.0, 2.0, 50.0), NodeCount{1000}, PlacementStrategy::uniform,
       shadow_expected(2.0)},
      {"shadow s=8 N=1000", make_shadow_fading(50.0, 2.0, 8.0, 50.0), NodeCount{1000}, PlacementStrategy::uniform,
       shadow_expected(8.0)},
  };
  o.expect(std::abs(cases[1].expected - 0.8354) <= 5e-4, "elfes 0.01 oracle ~ 0.8354");
  o.expect(std::abs(cases[2].expected - 0.6257) <= 5e-4, "elfes 0.03 oracle ~ 0.6257");

  for (const auto& c : cases)
  {
    SimulationPlan plan;
    plan.region = kRegion;
    plan.model = c.model;
    plan.deployment.population = c.population;
    plan.deployment.strategy = c.strategy;
    plan.deployment.boundary_mode = BoundaryMode::torus;
    plan.n_trials = 200;
    plan.n_targets = 10000;
    plan.seed = 2024;
    const auto est = estimate_coverage(plan);
    const double z = (est.f_hat - c.expected) / est.std_error;
    o.detail << c.name << ": " << fmt("%.4f", est.f_hat) << " vs " << fmt("%.4f", c.expected) << " (z="
             << fmt("%+.2f", z) << "); ";
    o.expect(std::abs(z) <= 3.0, c.name + " within 3 SE");

    // The library quadrature path must agree with the same expectation.
    if (std::holds_alternative<ShadowFadingModel>(c.model))
    {
      const double lib = analytic_coverage(kRegion, 1000, c.model).value();
      o.expect(std::abs(lib - c.expected) <= 5e-4, c.name + " quadrature vs oracle");
      o.expect(std::abs((est.f_hat - lib) / est.std_error) <= 3.0, c.name + " within 3 SE of quadrature");
    }
  }
}

void degenerations(Outcome& o)
{
  double worst_elfes = 0.0;
  for (std::int64_t n : {100, 500, 949, 2000, 3000})
  {
    const auto m = std::get<ElfesModel>(make_elfes(0.0, 1e-6, 1.0, 50.0));
    const double diff = std::abs(elfes_coverage(kRegion, n, m).value() -
                                 boolean_coverage(kRegion, n, 50.0, BooleanForm::exponential).value());
    worst_elfes = std::max(worst_elfes, diff);
  }
  o.detail << "elfes max diff=" << fmt("%.2e", worst_elfes);
  o.expect(worst_elfes <= 1e-4, "elfes lambda=1e-6 within 1e-4 of boolean");

  const auto shadow = make_shadow_fading(50.0, 2.0, 1e-9, 100.0);
  const auto boolean = make_boolean(50.0);
  double worst_shadow = 0.0;
  for (int i = 0; i <= 20000; ++i)
  {
    const double x = 100.0 * i / 20000.0;
    if (std::abs(x - 50.0) <= 1e-3 * 50.0)
      continue;
    worst_shadow =
        std::max(worst_shadow, std::abs(detection_probability(shadow, x) - detection_probability(boolean, x)));
  }
  o.detail << " shadow max diff=" << fmt("%.2e", worst_shadow);
  o.expect(worst_shadow <= 1e-6, "shadow sigma=1e-9 pointwise within 1e-6");
}

void fig4_orderings(Outcome& o)
{
  ExperimentConfig cfg;
  cfg.models = fig4_models();
  cfg.grid = {500, 1000, 2000, 3000};
  std::map<std::pair<std::string, double>, double> f;
  for (const auto& r : run_fig4_sweep(cfg))
    f[{r.model, r.sweep_value}] = *r.f_analytic;
  int checked = 0;
  for (double n : cfg.grid)
  {
    auto at = [&](const char* label) { return f.at({label, n}); };
    const std::string tag = " at N=" + fmt("%.0f", n);
    for (const char* other : {"b_shadow_sigma2", "c_elfes_lambda0.01", "d_shadow_sigma8", "e_elfes_r10_lambda0.03",
                              "f_elfes_lambda0.03"})
    {
      o.expect(at("a_boolean") >= at(other), std::string("boolean >= ") + other + tag);
      ++checked;
    }
    o.expect(at("b_shadow_sigma2") >= at("d_shadow_sigma8"), "sigma 2 >= sigma 8" + tag);
    o.expect(at("c_elfes_lambda0.01") >= at("f_elfes_lambda0.03"), "lambda 0.01 >= lambda 0.03" + tag);
    o.expect(at("e_elfes_r10_lambda0.03") >= at("f_elfes_lambda0.03"), "R1=10 >= R1=0" + tag);
    checked += 3;
  }
  o.detail << checked << " comparisons";
}

std::string run_capture(const std::string& command, int& status)
{
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe)
  {
    status = -1;
    return out;
  }
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe))
    out += buf;
  status = pclose(pipe);
  return out;
}

long report_value(const std::string& report, const std::string& key)
{
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line))
  {
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      continue;
    std::string k = line.substr(0, eq);
    k.erase(k.find_last_not_of(' ') + 1);
    if (k == key)
      return std::strtol(line.c_str() + eq + 1, nullptr, 10);
  }
  return -1;
}

void fig5_reproduction(Outcome& o)
{
  ExperimentConfig cfg;
  cfg.axis = SweepAxis::normalized_radius;
  cfg.grid = {0.0, 0.5, 1.0};
  cfg.node_counts = {363};
  double regular = -1.0;
  double random363 = -1.0;
  for (const auto& r : run_fig5_sweep(cfg))
    if (r.sweep_value == 1.0)
      (r.model == "regular_hex" ? regular : random363) = *r.f_analytic;
  o.detail << "regular(1)=" << fmt("%.4f", regular) << " random363(1)=" << fmt("%.4f", random363);
  o.expect(std::abs(regular - 0.9069) <= 1e-4, "regular curve 0.9069 at ratio 1");
  o.expect(std::abs(random363 - boolean_oracle(1000.0, 363, 50.0)) <= 1e-12, "random N=363 matches oracle");
  o.expect(std::abs(random363 - 0.598) <= 2e-3, "random N=363 ~ 0.598");
  o.expect(regular - random363 > 0.3, "random-vs-regular gap");

  int status = 0;
  const std::string report =
      run_capture(std::string(WSNCOV_CLI) + " plan --radius 1000 --model boolean --r-s 50 --target 0.9069", status);
  const long random_nodes = report_value(report, "random_nodes");
  const long regular_cells = report_value(report, "regular_cells");
  o.detail << " plan: " << random_nodes << " vs " << regular_cells;
  o.expect(status == 0, "plan exit status 0");
  o.expect(random_nodes == 949, "plan random 949");
  o.expect(regular_cells == 363, "plan regular 363");
}

void ring_derivation(Outcome& o)
{
  const double rho = 1000.0 / kRegion.area();
  struct Case
  {
    std::string name;
    SensingModel model;
    std::function<double(double)> p;
    double reach;
  };
  const std::vector<Case> cases{
      {"boolean", make_boolean(50.0), [](double x) { return x <= 50.0 ? 1.0 : 0.0; }, 50.0},
      {"shadow s=4", make_shadow_fading(50.0, 2.0, 4.0, 50.0), [](double x) { return shadow_p(x, 50.0, 2.0, 4.0, 50.0); },
       50.0},
      {"elfes r1=10 l=0.03", make_elfes(10.0, 0.03, 1.0, 50.0),
       [](double x) { return x <= 10.0 ? 1.0 : (x >= 50.0 ? 0.0 : std::exp(-0.03 * (x - 10.0))); }, 50.0},
  };
  for (const auto& c : cases)
  {
    const double lib = poisson_coverage(kRegion, rho, c.model).value();
    const double ring = ring_oracle(rho, c.p, c.reach);
    o.detail << c.name << ": |diff|=" << fmt("%.1e", std::abs(lib - ring)) << "; ";
    o.expect(std::abs(lib - ring) <= 1e-4, c.name + " ring product within 1e-4");
  }
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism(Outcome& o)
{
  const fs::path dir = fs::temp_directory_path() / ("wsncov_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "det.ini");
    cfg << "[experiment]\nname = det\nregion_radius = 1000\nsweep = node_count\ngrid = 0,400,949\nmethods = both\n"
           "[mc]\ntrials = 24\ntargets = 3000\nboundary = torus\nseed = 77\ndetection = bernoulli\n"
           "[model.bool]\ntype = boolean\nr_s = 50\n"
           "[model.shadow]\ntype = shadow\nr_s = 50\nsigma = 4\n"
           "[model.elfes]\ntype = elfes\nr_1 = 10\nlambda = 0.03\nr_max = 50\n";
  }
  auto run = [&](int workers, const std::string& out) {
    const std::string cmd = std::string(WSNCOV_CLI) + " --quiet sweep --config " + (dir / "det.ini").string() +
                            " --seed 77 --workers " + std::to_string(workers) + " --out " + (dir / out).string();
    return std::system(cmd.c_str());
  };
  const int s1 = run(1, "w1.csv");
  const int s4 = run(4, "w4.csv");
  const std::string a = slurp(dir / "w1.csv");
  const std::string b = slurp(dir / "w4.csv");
  o.detail << "bytes=" << a.size() << " lines=" << std::count(a.begin(), a.end(), '\n');
  o.expect(s1 == 0 && s4 == 0, "sweep exit status 0");
  o.expect(!a.empty() && a.rfind(kCsvHeader, 0) == 0, "csv has header");
  o.expect(std::count(a.begin(), a.end(), '\n') == 10, "header + 9 rows");
  o.expect(a == b, "byte-identical across worker counts");
  fs::remove_all(dir);
}

struct Criterion
{
  int id;
  const char* title;
  double budget_s;
  void (*run)(Outcome&);
};

}  // namespace

int main()
{
  const std::vector<Criterion> criteria{
      {1, "golden values", 1.0, golden_values},
      {2, "poisson / closed-form identity", 1.0, poisson_identity},
      {3, "monte carlo vs analytic (torus, 200 x 1e4)", 60.0, mc_agreement},
      {4, "limit degenerations", 1.0, degenerations},
      {5, "model-comparison orderings", 1.0, fig4_orderings},
      {6, "random vs regular placement", 1.0, fig5_reproduction},
      {7, "annulus product vs quadrature", 5.0, ring_derivation},
      {8, "sweep determinism across worker counts", 60.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria)
  {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try
    {
      c.run(o);
    }
    catch (const std::exception& e)
    {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(secs <= c.budget_s, "runtime budget " + fmt("%.0f", c.budget_s) + " s");
    failures += o.pass ? 0 : 1;
    std::printf("%s  criterion %d: %s  (%.2f s)  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
