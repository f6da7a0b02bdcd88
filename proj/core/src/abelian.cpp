#include "cyclescope/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cyclescope/errors.hpp"
#include "cyclescope/numerics.hpp"
#include "cyclescope/parallel.hpp"

namespace cyclescope {

namespace {

constexpr double kFormTolerance = 1e-10;

void check_sweep_level(double h, double lo = kSweepLo, double hi = kSweepHi) {
  if (!(h >= lo && h <= hi))
    throw DomainError("level h = " + std::to_string(h) + " outside [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
}

// Evaluates f and g at (x, y) with shared power tables.
struct PairEvaluator {
  const DensePoly& f;
  const DensePoly& g;
  int degree;
  std::vector<double> xp, yp;

  PairEvaluator(const DensePoly& f_, const DensePoly& g_)
      : f(f_), g(g_), degree(std::max(f_.degree(), g_.degree())) {
    const auto w = static_cast<std::size_t>(std::max(degree, 0) + 1);
    xp.assign(w, 1.0);
    yp.assign(w, 1.0);
  }

  std::pair<double, double> operator()(double x, double y) {
    for (int k = 1; k <= degree; ++k) {
      xp[k] = xp[k - 1] * x;
      yp[k] = yp[k - 1] * y;
    }
    const double fv = f.degree() >= 0 ? f.eval_with_powers(xp.data(), yp.data()) : 0.0;
    const double gv = g.degree() >= 0 ? g.eval_with_powers(xp.data(), yp.data()) : 0.0;
    return {fv, gv};
  }
};

std::vector<double> uniform_grid(double lo, double hi, int count) {
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) xs[k] = (k == count - 1) ? hi : lo + (hi - lo) * k / (count - 1);
  return xs;
}

}  // namespace

std::string to_string(AbelianMethod m) { return m == AbelianMethod::direct ? "direct" : "reduced"; }

AbelianIntegral::AbelianIntegral(PerturbationSpec spec)
    : spec_(std::move(spec)), green_(green_coefficients(spec_)), f_(spec_.f()), g_(spec_.g()) {}

AbelianEval AbelianIntegral::direct(double h, const DirectOptions& opts) const {
  check_sweep_level(h);
  AbelianEval out;
  out.h = h;
  out.method = AbelianMethod::direct;
  if (spec_.is_zero()) return out;

  PairEvaluator eval(f_, g_);
  auto mu_form = [&](double theta) {
    const CurvePoint p = curve_point(h, theta);
    const double u = 1.0 + 2.0 * p.x * p.y;
    const double mu = 2.0 / (u * u);
    const auto [fv, gv] = eval(p.x, p.y);
    return mu * (gv * p.dx - fv * p.dy);
  };
  const QuadratureResult q = periodic_trapezoid(mu_form, opts.start_grid, opts.tol);
  out.value = q.value;
  out.error_estimate = q.error_estimate;
  out.scale = q.magnitude;

  if (opts.check_forms) {
    // On the level curve mu = 2 h^2 / (x^2 + y^2)^2.
    double sum = 0.0;
    for (int k = 0; k < q.grid_size; ++k) {
      const CurvePoint p = curve_point(h, kTwoPi * k / q.grid_size);
      const double rho = p.r * p.r;
      const auto [fv, gv] = eval(p.x, p.y);
      sum += 2.0 * h * h / (rho * rho) * (gv * p.dx - fv * p.dy);
    }
    const double other = kTwoPi * sum / q.grid_size;
    if (std::abs(other - q.value) > kFormTolerance * std::max(q.magnitude, std::abs(q.value)))
      throw ValidationError("I_direct: mu-form and 2h^2-form disagree at h = " + std::to_string(h));
  }
  return out;
}

std::vector<double> AbelianIntegral::j_terms(double h) const {
  int max_n = 0;
  for (const auto& [m, c] : green_.c) max_n = std::max(max_n, m.degree() / 2);
  std::vector<double> j(static_cast<std::size_t>(max_n + 1), 0.0);
  for (const auto& [m, c] : green_.c) j[m.degree() / 2] += c * Iij(m.i, m.j, h, IntegralMethod::reduced);
  return j;
}

AbelianEval AbelianIntegral::reduced(double h) const {
  check_sweep_level(h);
  AbelianEval out;
  out.h = h;
  out.method = AbelianMethod::reduced;
  double sum = -green_.c_delta;
  double abs_sum = std::abs(green_.c_delta);
  for (const auto& [m, c] : green_.c) {
    const double term = c * Iij(m.i, m.j, h, IntegralMethod::reduced);
    sum += term;
    abs_sum += std::abs(term);
  }
  out.value = h * h * sum;
  out.scale = h * h * abs_sum;
  // Rounding in the binomial sums grows like h^-N; 1e3 eps covers the sweep range.
  out.error_estimate = 1e3 * std::numeric_limits<double>::epsilon() * out.scale;
  return out;
}

AbelianEval I_direct(const PerturbationSpec& spec, double h) { return AbelianIntegral(spec).direct(h); }
AbelianEval I_reduced(const PerturbationSpec& spec, double h) { return AbelianIntegral(spec).reduced(h); }

double dI1(const AbelianIntegral& integral, double h) {
  check_sweep_level(h, 0.02, 0.98);
  DirectOptions opts;
  opts.start_grid = 256;
  opts.check_forms = false;
  auto fn = [&](double t) { return integral.direct(t, opts).value; };
  const double step = 0.25 * std::min({h - kSweepLo, kSweepHi - h, 0.16});
  const double value = fn(h);
  const double slope = richardson_derivative(fn, h, step).value;
  return slope / (h * h) - 2.0 * value / (h * h * h);
}

double dI1(const PerturbationSpec& spec, double h) { return dI1(AbelianIntegral(spec), h); }

int half_degree(int n) { return (n + 1) / 2; }

int budget(int n) {
  if (n < 1) throw DomainError("budget: n must be at least 1");
  return 4 * half_degree(n) + 1;
}

int min_structure_samples(int m) {
  // fitting points = count - floor(count / 4) must be >= 8m.
  int count = 8 * m;
  while (count - count / 4 < 8 * m) ++count;
  return std::max(count, 6 * m);
}

namespace {

struct SampleSplit {
  std::vector<double> fit_x, fit_y, hold_x, hold_y;
  double scale = 0.0;
};

SampleSplit split_samples(const std::vector<double>& xs, const std::vector<double>& ys) {
  SampleSplit s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    s.scale = std::max(s.scale, std::abs(ys[k]));
    if (k % 4 == 3) {
      s.hold_x.push_back(xs[k]);
      s.hold_y.push_back(ys[k]);
    } else {
      s.fit_x.push_back(xs[k]);
      s.fit_y.push_back(ys[k]);
    }
  }
  return s;
}

std::vector<double> sample_values(const std::vector<double>& xs,
                                  const std::function<double(double)>& fn) {
  std::vector<double> ys(xs.size());
  parallel_for(xs.size(), [&](std::size_t k) { ys[k] = fn(xs[k]); });
  return ys;
}

}  // namespace

StructureFit structure_check(const AbelianIntegral& integral, int sample_count) {
  const int m = half_degree(integral.spec().n());
  if (m < 2) throw DomainError("structure_check: needs floor((n+1)/2) >= 2");
  if (sample_count < min_structure_samples(m))
    throw DomainError("structure_check: need at least " + std::to_string(min_structure_samples(m)) +
                      " samples");

  const std::vector<double> xs = uniform_grid(0.1, 0.9, sample_count);
  const std::vector<double> ys = sample_values(xs, [&](double h) {
    return h * h * h * std::pow(1.0 - h * h, m - 1.5) * dI1(integral, h);
  });
  const SampleSplit split = split_samples(xs, ys);

  StructureFit out;
  out.m = m;
  out.scale = split.scale;
  if (split.scale == 0.0) {
    out.phi_coeffs.assign(static_cast<std::size_t>(2 * m), 0.0);
    out.psi_coeffs = out.phi_coeffs;
    out.passed = true;
    return out;
  }

  std::vector<BasisFunction> basis;
  for (int p = 0; p < 2 * m; ++p) basis.emplace_back([p](double h) { return std::pow(h, p); });
  for (int p = 0; p < 2 * m; ++p)
    basis.emplace_back([p](double h) { return std::pow(h, p) * std::sqrt(1.0 - h * h); });

  const LsqFit fit = lsq_fit(basis, split.fit_x, split.fit_y);
  out.phi_coeffs.assign(fit.coefficients.begin(), fit.coefficients.begin() + 2 * m);
  out.psi_coeffs.assign(fit.coefficients.begin() + 2 * m, fit.coefficients.end());
  out.fit_residual = fit.residual;
  out.holdout_residual = fit.max_error(basis, split.hold_x, split.hold_y);
  out.passed = out.holdout_residual <= kStructureTolerance * out.scale;
  return out;
}

StructureFit structure_check(const PerturbationSpec& spec, int sample_count) {
  return structure_check(AbelianIntegral(spec), sample_count);
}

TwoParameterFit two_parameter_check(const AbelianIntegral& integral, int sample_count) {
  if (sample_count < 4) throw DomainError("two_parameter_check: need at least 4 samples");
  const std::vector<double> xs = uniform_grid(0.1, 0.9, sample_count);
  const std::vector<double> ys = sample_values(xs, [&](double h) {
    return integral.direct(h).value / (h * h);
  });
  TwoParameterFit out;
  for (double y : ys) out.scale = std::max(out.scale, std::abs(y));
  if (out.scale == 0.0) {
    out.passed = true;
    return out;
  }
  const std::vector<BasisFunction> basis{[](double h) { return 1.0 / h; }, [](double) { return 1.0; }};
  const LsqFit fit = lsq_fit(basis, xs, ys);
  out.alpha = fit.coefficients[0];
  out.beta = fit.coefficients[1];
  out.residual = fit.residual;
  out.passed = out.residual <= kTwoParameterTolerance * out.scale;
  return out;
}

JnFit jn_structure_check(const AbelianIntegral& integral, int big_n, int sample_count) {
  if (big_n < 3) throw DomainError("jn_structure_check: N must be at least 3");
  const std::vector<double> xs = uniform_grid(0.1, 0.9, sample_count);
  const std::vector<double> ys = sample_values(xs, [&](double h) {
    const std::vector<double> j = integral.j_terms(h);
    return static_cast<std::size_t>(big_n) < j.size() ? h * h * j[big_n] : 0.0;
  });
  const SampleSplit split = split_samples(xs, ys);
  JnFit out;
  out.N = big_n;
  out.scale = split.scale;
  if (split.scale == 0.0) {
    out.passed = true;
    return out;
  }
  std::vector<BasisFunction> basis;
  const double expo = 2.5 - big_n;
  for (int p = 0; p <= 2 * big_n - 3; ++p)
    basis.emplace_back([p, expo](double h) { return std::pow(1.0 - h * h, expo) * std::pow(h, p); });
  for (int p = 0; p <= 2; ++p) basis.emplace_back([p](double h) { return std::pow(h, p); });
  const LsqFit fit = lsq_fit(basis, split.fit_x, split.fit_y);
  out.fit_residual = fit.residual;
  out.holdout_residual = fit.max_error(basis, split.hold_x, split.hold_y);
  out.passed = out.holdout_residual <= kStructureTolerance * out.scale;
  return out;
}

ZeroReport count_zeros(const PerturbationSpec& spec, int grid_points, const ZeroOptions& opts) {
  if (grid_points < 200) throw DomainError("count_zeros: need at least 200 grid points");
  const AbelianIntegral integral(spec);
  DirectOptions dopts;
  dopts.start_grid = opts.start_grid;
  dopts.check_forms = false;

  std::vector<double> xs = uniform_grid(opts.h_lo, opts.h_hi, grid_points);
  std::vector<double> values(xs.size()), scales(xs.size());
  parallel_for(xs.size(), [&](std::size_t k) {
    const AbelianEval e = integral.direct(xs[k], dopts);
    values[k] = e.value;
    scales[k] = e.scale;
  });

  ZeroReport report;
  report.n = spec.n();
  report.budget = budget(std::max(spec.n(), 1));
  for (std::size_t k = 0; k < xs.size(); ++k) {
    report.max_abs = std::max(report.max_abs, std::abs(values[k]));
    report.scale = std::max(report.scale, scales[k]);
  }
  if (report.max_abs <= opts.dead_band * report.scale) {
    report.identically_zero = true;
    return report;
  }

  const BracketScan scan = bracket_values(std::move(xs), std::move(values), opts.dead_band);
  report.sign_change_count = static_cast<int>(scan.brackets.size());
  report.ambiguous_cells = scan.ambiguous_points;
  report.within_budget = report.sign_change_count <= report.budget;
  if (opts.refine) {
    report.roots.resize(scan.brackets.size());
    auto fn = [&](double h) { return integral.direct(h, dopts).value; };
    parallel_for(scan.brackets.size(), [&](std::size_t k) {
      report.roots[k] = refine_bisection(scan.brackets[k], fn, opts.root_tol);
    });
  }
  return report;
}

}  // namespace cyclescope
