#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclescope/errors.hpp"

namespace cyclescope {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Periodic quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
  double value = 0.0;
  // |T_M - T_{M/2}| for the last doubling.
  double error_estimate = 0.0;
  int grid_size = 0;
  // Trapezoid approximation of the integral of |integrand|; sets the rounding floor.
  double magnitude = 0.0;
};

inline constexpr int kMinQuadratureGrid = 16;
inline constexpr int kMaxQuadratureGrid = 1 << 20;

inline bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

// Trapezoid rule for a smooth 2π-periodic integrand on [0, 2π), doubling the grid
// until the change between successive grids is at most target_tol * max(1, |value|)
// or drops below the rounding floor 64 eps * magnitude.
//
// The returned grid is the finest one evaluated (at least 2 * grid_size points).
// Throws ConvergenceError when the cap kMaxQuadratureGrid is reached first.
template <typename F>
QuadratureResult periodic_trapezoid(F&& integrand, int grid_size, double target_tol,
                                    int max_grid = kMaxQuadratureGrid) {
  if (!is_power_of_two(grid_size)) throw DomainError("periodic_trapezoid: grid_size must be a power of two");
  int m = std::max(grid_size, kMinQuadratureGrid);

  double sum = 0.0;
  double abs_sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double v = integrand(kTwoPi * k / m);
    sum += v;
    abs_sum += std::abs(v);
  }
  double prev = kTwoPi * sum / m;

  while (2L * m <= max_grid) {
    const int fine = 2 * m;
    double odd = 0.0;
    double abs_odd = 0.0;
    for (int k = 1; k < fine; k += 2) {
      const double v = integrand(kTwoPi * k / fine);
      odd += v;
      abs_odd += std::abs(v);
    }
    sum += odd;
    abs_sum += abs_odd;
    m = fine;

    const double value = kTwoPi * sum / m;
    const double magnitude = kTwoPi * abs_sum / m;
    const double change = std::abs(value - prev);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    if (change <= target_tol * std::max(1.0, std::abs(value)) || change <= floor) {
      return {value, change, m, magnitude};
    }
    prev = value;
  }
  throw ConvergenceError("periodic_trapezoid: no convergence at " + std::to_string(m) +
                         " points (h too close to 1 or singular integrand)");
}

// Integral over [0, 2π] of cos^p θ sin^q θ, in closed form.
double trig_moment(int p, int q);

// ---------------------------------------------------------------------------
// Root bracketing
// ---------------------------------------------------------------------------

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<double> refined_root;
  double f_lo = 0.0;
  double f_hi = 0.0;
  // True if the bracket spans grid points whose sign was inside the dead band.
  bool spans_ambiguous = false;
};

struct BracketScan {
  std::vector<double> xs;
  std::vector<double> values;
  std::vector<RootBracket> brackets;
  // Grid points with |fn| inside the dead band.
  int ambiguous_points = 0;
  double max_abs = 0.0;
};

// Uniform grid of grid_points nodes on [lo, hi]; one bracket per sign change between
// consecutive unambiguous nodes. A node is ambiguous when |fn| <= dead_band, where
// dead_band = relative_dead_band * max |fn| over the grid.
BracketScan bracket_roots(const std::function<double(double)>& fn, double lo, double hi,
                          int grid_points, double relative_dead_band = 1e-12);

// Same scan over precomputed values (xs ascending).
BracketScan bracket_values(std::vector<double> xs, std::vector<double> values,
                           double relative_dead_band = 1e-12);

double refine_bisection(const RootBracket& bracket, const std::function<double(double)>& fn,
                        double tol);

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

struct DerivativeEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Central differences with Richardson extrapolation over successive step halvings
// (at least three). Throws ConvergenceError when the diagonal of the tableau never
// settles to 1e-7 * (1 + |value|).
DerivativeEstimate richardson_derivative(const std::function<double(double)>& fn, double at,
                                         double initial_step, double rel_tol = 1e-7);

// ---------------------------------------------------------------------------
// Least squares
// ---------------------------------------------------------------------------

using BasisFunction = std::function<double(double)>;

struct LsqFit {
  std::vector<double> coefficients;
  // max |fit(x) - y| over the fitting points.
  double residual = 0.0;
  // 2-norm condition number of the column-scaled design matrix.
  double condition = 0.0;

  double evaluate(std::span<const BasisFunction> basis, double x) const;
  // max |fit(x) - y| over (xs, ys).
  double max_error(std::span<const BasisFunction> basis, std::span<const double> xs,
                   std::span<const double> ys) const;
};

inline constexpr double kDefaultMaxCondition = 1e12;

// Throws DomainError if samples < 2 * basis size; RankDeficiencyError if the
// scaled condition number exceeds max_condition.
LsqFit lsq_fit(std::span<const BasisFunction> basis, std::span<const double> xs,
               std::span<const double> ys, double max_condition = kDefaultMaxCondition);

// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(int n, int k);

}  // namespace cyclescope
