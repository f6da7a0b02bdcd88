#include "cyclescope/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace cyclescope {

namespace {

// (k-1)!! for even k >= 0, with (-1)!! = 1.
double odd_double_factorial_below(int k) {
  double r = 1.0;
  for (int t = k - 1; t > 1; t -= 2) r *= t;
  return r;
}

// k!! for even k >= 0.
double even_double_factorial(int k) {
  double r = 1.0;
  for (int t = k; t > 1; t -= 2) r *= t;
  return r;
}

}  // namespace

double trig_moment(int p, int q) {
  if (p < 0 || q < 0) throw DomainError("trig_moment: negative exponent");
  if ((p & 1) || (q & 1)) return 0.0;
  return kTwoPi * odd_double_factorial_below(p) * odd_double_factorial_below(q) /
         even_double_factorial(p + q);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return std::round(r);
}

BracketScan bracket_values(std::vector<double> xs, std::vector<double> values,
                           double relative_dead_band) {
  BracketScan scan;
  scan.xs = std::move(xs);
  scan.values = std::move(values);
  for (double v : scan.values) scan.max_abs = std::max(scan.max_abs, std::abs(v));
  const double dead_band = relative_dead_band * scan.max_abs;

  std::optional<std::size_t> last;  // last unambiguous node
  bool ambiguous_since_last = false;
  for (std::size_t k = 0; k < scan.values.size(); ++k) {
    const double v = scan.values[k];
    if (std::abs(v) <= dead_band) {
      ++scan.ambiguous_points;
      ambiguous_since_last = true;
      continue;
    }
    if (last && std::signbit(v) != std::signbit(scan.values[*last])) {
      RootBracket b;
      b.lo = scan.xs[*last];
      b.hi = scan.xs[k];
      b.f_lo = scan.values[*last];
      b.f_hi = v;
      b.spans_ambiguous = ambiguous_since_last;
      scan.brackets.push_back(b);
    }
    last = k;
    ambiguous_since_last = false;
  }
  return scan;
}

BracketScan bracket_roots(const std::function<double(double)>& fn, double lo, double hi,
                          int grid_points, double relative_dead_band) {
  if (!(lo < hi)) throw DomainError("bracket_roots: need lo < hi");
  if (grid_points < 2) throw DomainError("bracket_roots: need at least 2 grid points");
  std::vector<double> xs(static_cast<std::size_t>(grid_points));
  std::vector<double> vs(xs.size());
  for (int k = 0; k < grid_points; ++k) {
    xs[k] = (k == grid_points - 1) ? hi : lo + (hi - lo) * k / (grid_points - 1);
    vs[k] = fn(xs[k]);
  }
  return bracket_values(std::move(xs), std::move(vs), relative_dead_band);
}

double refine_bisection(const RootBracket& bracket, const std::function<double(double)>& fn,
                        double tol) {
  if (!(bracket.lo < bracket.hi)) throw DomainError("refine_bisection: invalid bracket");
  double lo = bracket.lo, hi = bracket.hi;
  double flo = bracket.f_lo;
  if (std::signbit(flo) == std::signbit(bracket.f_hi))
    throw DomainError("refine_bisection: endpoint values do not change sign");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

DerivativeEstimate richardson_derivative(const std::function<double(double)>& fn, double at,
                                         double initial_step, double rel_tol) {
  if (!(initial_step > 0.0)) throw DomainError("richardson_derivative: step must be positive");
  constexpr int kMaxLevels = 12;
  constexpr int kMinLevel = 3;

  std::vector<double> prev, row;
  double step = initial_step;
  DerivativeEstimate best{0.0, std::numeric_limits<double>::infinity()};
  for (int level = 0; level < kMaxLevels; ++level, step *= 0.5) {
    row.assign(static_cast<std::size_t>(level + 1), 0.0);
    row[0] = (fn(at + step) - fn(at - step)) / (2.0 * step);
    double factor = 1.0;
    for (int k = 1; k <= level; ++k) {
      factor *= 4.0;
      row[k] = row[k - 1] + (row[k - 1] - prev[k - 1]) / (factor - 1.0);
    }
    if (level >= kMinLevel) {
      const double err = std::abs(row[level] - prev[level - 1]);
      if (err < best.error_estimate) best = {row[level], err};
      if (best.error_estimate <= rel_tol * (1.0 + std::abs(best.value))) return best;
    }
    prev.swap(row);
  }
  throw ConvergenceError("richardson_derivative: no consistent estimate at x = " +
                         std::to_string(at));
}

double LsqFit::evaluate(std::span<const BasisFunction> basis, double x) const {
  double s = 0.0;
  for (std::size_t c = 0; c < basis.size(); ++c) s += coefficients[c] * basis[c](x);
  return s;
}

double LsqFit::max_error(std::span<const BasisFunction> basis, std::span<const double> xs,
                         std::span<const double> ys) const {
  double worst = 0.0;
  for (std::size_t r = 0; r < xs.size(); ++r)
    worst = std::max(worst, std::abs(evaluate(basis, xs[r]) - ys[r]));
  return worst;
}

LsqFit lsq_fit(std::span<const BasisFunction> basis, std::span<const double> xs,
               std::span<const double> ys, double max_condition) {
  if (xs.size() != ys.size()) throw DomainError("lsq_fit: xs and ys differ in length");
  if (basis.empty()) throw DomainError("lsq_fit: empty basis");
  if (xs.size() < 2 * basis.size())
    throw DomainError("lsq_fit: need at least twice as many samples as basis functions");

  const auto rows = static_cast<Eigen::Index>(xs.size());
  const auto cols = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = basis[c](xs[r]);
    b(r) = ys[r];
  }
  Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (scale(c) == 0.0) throw RankDeficiencyError("lsq_fit: basis function vanishes on all samples");
    a.col(c) /= scale(c);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                    : std::numeric_limits<double>::infinity();
  if (condition > max_condition)
    throw RankDeficiencyError("lsq_fit: scaled condition number " + std::to_string(condition) +
                              " exceeds bound");

  Eigen::VectorXd sol = a.colPivHouseholderQr().solve(b);
  LsqFit fit;
  fit.condition = condition;
  fit.coefficients.resize(basis.size());
  for (Eigen::Index c = 0; c < cols; ++c) fit.coefficients[c] = sol(c) / scale(c);
  fit.residual = fit.max_error(basis, xs, ys);
  return fit;
}

}  // namespace cyclescope
