#pragma once

#include <vector>

namespace cyclescope {

inline constexpr int kDefaultCurveGrid = 1024;
inline constexpr double kMaxCurveRadius = 50.0;
// Working h-interval for sweeps; the annulus degenerates at 0 and is unbounded toward 1.
inline constexpr double kSweepLo = 0.01;
inline constexpr double kSweepHi = 0.99;

// r(θ) of the level curve H = h in polar coordinates. Throws DomainError unless 0 < h < 1.
double radius(double h, double theta);

// Point and analytic θ-derivative of the level curve at angle θ.
struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double r = 0.0;
};

CurvePoint curve_point(double h, double theta);

// Uniform-θ sample of the level curve H = h on [0, 2π).
struct CurveSample {
  double h = 0.0;
  std::vector<double> thetas;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> dx_dtheta;
  std::vector<double> dy_dtheta;
  double max_radius = 0.0;

  std::size_t size() const { return thetas.size(); }
};

// Throws DomainError for h outside (0,1), a grid that is not a power of two, or a
// curve whose max radius exceeds kMaxCurveRadius.
CurveSample sample_curve(double h, int grid_size = kDefaultCurveGrid);

}  // namespace cyclescope
