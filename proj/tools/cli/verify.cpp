#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "cyclescope/abelian.hpp"
#include "cyclescope/flow.hpp"
#include "cyclescope/numerics.hpp"
#include "cyclescope/parallel.hpp"
#include "cyclescope/reduction.hpp"

namespace cyclescope::cli {

namespace {

std::vector<double> levels(double lo, double hi, double step) {
  std::vector<double> out;
  for (int k = 0; lo + k * step <= hi + 1e-12; ++k) out.push_back(lo + k * step);
  return out;
}

SuiteResult finish(std::string name, double metric, double tol, std::string detail = {}) {
  return {std::move(name), metric <= tol, metric, tol, std::move(detail)};
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

SuiteResult suite_l_closed_forms() {
  double worst = 0.0;
  for (int k = -2; k <= 2; ++k)
    for (double h : levels(0.1, 0.9, 0.1)) {
      const double quad = periodic_trapezoid(
                              [h, k](double t) { return std::pow(1.0 - h * std::sin(t), -k); }, 64, 1e-15)
                              .value;
      const double closed = L(k, h).value;
      worst = std::max(worst, std::abs(quad - closed) / (1.0 + std::abs(closed)));
    }
  return finish("l_closed_forms", worst, 1e-10);
}

SuiteResult suite_parity() {
  double worst = 0.0;
  for (int s = 1; s <= 9; s += 2)
    for (int i = 0; i <= s; ++i) {
      const int j = s - i;
      const double v = periodic_trapezoid(
                           [i, j](double t) {
                             return std::exp(std::sin(2.0 * t)) * std::pow(std::cos(t), i) *
                                    std::pow(std::sin(t), j);
                           },
                           64, 1e-15)
                           .value;
      worst = std::max(worst, std::abs(v));
    }
  return finish("parity", worst, 1e-12);
}

SuiteResult suite_dk_identity() {
  double worst = 0.0;
  for (int s = 0; s <= 8; s += 2)
    for (int i = 0; i <= s; ++i) worst = std::max(worst, dk_table(i, s - i).witness_error);
  return finish("dk_identity", worst, kWitnessTolerance);
}

SuiteResult suite_da_closed_forms() {
  double worst = 0.0;
  for (int k = 0; k <= 2; ++k)
    for (double h : levels(0.2, 0.8, 0.1)) {
      const double fd = richardson_derivative([k](double t) { return A(k, t); }, h, 0.05).value;
      const double closed = dA(k, h);
      worst = std::max(worst, std::abs(fd - closed) / (1.0 + std::abs(closed)));
    }
  return finish("da_closed_forms", worst, 1e-7);
}

SuiteResult suite_analytic_values() {
  double worst = 0.0;
  const AbelianIntegral radial(radial_spec());
  const AbelianIntegral family(lambda_family(0.5));
  for (double h : levels(0.1, 0.9, 0.1)) {
    const double r = -4.0 * kPi * h;
    const double l = 4.0 * kPi * h * (0.5 - h);
    worst = std::max(worst, std::abs(radial.direct(h).value - r) / std::abs(r));
    // The family vanishes at h = 0.5; measure against the size of its terms there.
    worst = std::max(worst, std::abs(family.direct(h).value - l) / std::max(std::abs(l), 4.0 * kPi * h * h));
  }
  return finish("analytic_values", worst, 1e-9);
}

SuiteResult suite_c_delta(std::uint64_t seed, int count) {
  std::vector<double> worst(static_cast<std::size_t>(count));
  parallel_for(worst.size(), [&](std::size_t k) {
    const int n = 1 + static_cast<int>(k % 6);
    const GreenCoefficients c = green_coefficients(random_spec(n, derive_seed(seed, 100 + k)));
    const double a = c_delta(c, 0.01), b = c_delta(c, 0.02), d = c_delta(c, 0.05);
    const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(d)});
    worst[k] = std::max({std::abs(a - b), std::abs(a - d), std::abs(b - d)}) / scale;
  });
  return finish("c_delta_independence", max_of(worst), 1e-8, std::to_string(count) + " specs");
}

SuiteResult suite_dual_path(std::uint64_t seed, int count) {
  std::vector<double> worst(static_cast<std::size_t>(count));
  parallel_for(worst.size(), [&](std::size_t k) {
    const int n = 1 + static_cast<int>(k % 5);
    const AbelianIntegral integral(random_spec(n, derive_seed(seed, 200 + k)));
    double w = 0.0;
    for (double h : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double d = integral.direct(h).value;
      const double r = integral.reduced(h).value;
      w = std::max(w, std::abs(d - r) / (1.0 + std::abs(d)));
    }
    worst[k] = w;
  });
  return finish("dual_path", max_of(worst), 1e-6, std::to_string(count) + " specs, n <= 5");
}

SuiteResult suite_structure(std::uint64_t seed, int per_degree) {
  const std::vector<int> degrees{3, 4, 5, 6};
  std::vector<double> worst(degrees.size() * static_cast<std::size_t>(per_degree));
  for (std::size_t k = 0; k < worst.size(); ++k) {
    const int n = degrees[k % degrees.size()];
    const AbelianIntegral integral(random_spec(n, derive_seed(seed, 300 + k)));
    const StructureFit fit = structure_check(integral, 2 * min_structure_samples(half_degree(n)));
    worst[k] = fit.scale > 0.0 ? fit.holdout_residual / fit.scale : 0.0;
  }
  return finish("structure", max_of(worst), kStructureTolerance, "n in {3,4,5,6}");
}

SuiteResult suite_structure_m1(std::uint64_t seed) {
  double worst = 0.0;
  for (int n = 1; n <= 2; ++n) {
    const TwoParameterFit fit =
        two_parameter_check(AbelianIntegral(random_spec(n, derive_seed(seed, 400 + n))), 40);
    worst = std::max(worst, fit.scale > 0.0 ? fit.residual / fit.scale : 0.0);
  }
  return finish("structure_two_param", worst, kTwoParameterTolerance, "n in {1,2}");
}

SuiteResult suite_jn_structure(std::uint64_t seed) {
  double worst = 0.0;
  for (int n : {5, 7}) {
    const AbelianIntegral integral(random_spec(n, derive_seed(seed, 500 + n)));
    for (int big_n = 3; big_n <= half_degree(n); ++big_n) {
      const JnFit fit = jn_structure_check(integral, big_n, 60);
      worst = std::max(worst, fit.scale > 0.0 ? fit.holdout_residual / fit.scale : 0.0);
    }
  }
  return finish("jn_structure", worst, kStructureTolerance, "n in {5,7}");
}

SuiteResult suite_isochronicity() {
  RunConfig cfg;
  cfg.integ_tol = 1e-10;
  const IsochronicityResult r = isochronicity_suite(cfg, levels(0.1, 0.9, 0.1));
  char buf[64];
  std::snprintf(buf, sizeof buf, "energy_drift=%.3e (tol 1.0e-09)", r.max_energy_drift);
  SuiteResult s = finish("isochronicity", r.max_period_deviation, 1e-8, buf);
  s.passed = s.passed && r.max_energy_drift <= 1e-9;
  return s;
}

SuiteResult suite_budget(std::uint64_t seed, int per_degree) {
  constexpr int kDegrees = 6;
  std::vector<int> counts(static_cast<std::size_t>(kDegrees * per_degree));
  parallel_for(counts.size(), [&](std::size_t k) {
    const int n = 1 + static_cast<int>(k) / per_degree;
    ZeroOptions opts;
    opts.refine = false;
    const ZeroReport r = count_zeros(random_spec(n, derive_seed(seed, 1000 + k)), 200, opts);
    counts[k] = r.sign_change_count;
  });
  std::ostringstream detail;
  detail << "max sign changes per n:";
  double worst_excess = -1e9;
  for (int n = 1; n <= kDegrees; ++n) {
    int mx = 0;
    for (int s = 0; s < per_degree; ++s) mx = std::max(mx, counts[(n - 1) * per_degree + s]);
    detail << ' ' << n << ':' << mx << '/' << budget(n);
    worst_excess = std::max(worst_excess, static_cast<double>(mx - budget(n)));
  }
  SuiteResult s = finish("zero_budget", worst_excess, 0.0, detail.str());
  s.detail += " (" + std::to_string(per_degree) + " specs per n)";
  return s;
}

SuiteResult suite_cycles() {
  RunConfig cfg;
  cfg.eps = 1e-3;
  const CycleReport r = find_cycles(lambda_family(0.5), cfg, 0.05, 0.95, 46);
  double miss = 1.0;
  if (r.fixed_points.size() == 1) miss = std::abs(r.fixed_points[0].h_star - 0.5);
  return finish("cycle_correspondence", miss, 0.01,
                std::to_string(r.fixed_points.size()) + " fixed point(s), lambda = 0.5");
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  char buf[256];
  for (const SuiteResult& s : suites) {
    std::snprintf(buf, sizeof buf, "%-22s %s  metric=%.3e  tol=%.1e", s.name.c_str(),
                  s.passed ? "PASS" : "FAIL", s.metric, s.tolerance);
    os << buf;
    if (!s.detail.empty()) os << "  " << s.detail;
    os << '\n';
  }
  os << "overall: " << (passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

VerifyReport run_verify(std::uint64_t seed, VerifyLevel level) {
  const bool full = level == VerifyLevel::full;
  VerifyReport report;
  report.suites.push_back(suite_l_closed_forms());
  report.suites.push_back(suite_parity());
  report.suites.push_back(suite_dk_identity());
  report.suites.push_back(suite_da_closed_forms());
  report.suites.push_back(suite_analytic_values());
  report.suites.push_back(suite_c_delta(seed, full ? 10 : 4));
  report.suites.push_back(suite_dual_path(seed, full ? 25 : 8));
  report.suites.push_back(suite_structure(seed, full ? 2 : 1));
  report.suites.push_back(suite_structure_m1(seed));
  report.suites.push_back(suite_jn_structure(seed));
  report.suites.push_back(suite_isochronicity());
  report.suites.push_back(suite_budget(seed, full ? 200 : 10));
  if (full) report.suites.push_back(suite_cycles());
  return report;
}

}  // namespace cyclescope::cli
