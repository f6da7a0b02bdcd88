#include "cyclescope/curve.hpp"

#include <cmath>
#include <string>

#include "cyclescope/errors.hpp"
#include "cyclescope/numerics.hpp"

namespace cyclescope {

namespace {

void check_level(double h) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("level h = " + std::to_string(h) + " is outside (0, 1)");
}

}  // namespace

double radius(double h, double theta) {
  check_level(h);
  return std::sqrt(h / (1.0 - h * std::sin(2.0 * theta)));
}

CurvePoint curve_point(double h, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double denom = 1.0 - 2.0 * h * s * c;
  const double r = std::sqrt(h / denom);
  // dr/dθ = r h cos 2θ / (1 - h sin 2θ)
  const double dr = r * h * (c * c - s * s) / denom;
  return {r * c, r * s, dr * c - r * s, dr * s + r * c, r};
}

CurveSample sample_curve(double h, int grid_size) {
  check_level(h);
  if (!is_power_of_two(grid_size)) throw DomainError("sample_curve: grid_size must be a power of two");
  const double max_radius = std::sqrt(h / (1.0 - h));
  if (max_radius > kMaxCurveRadius)
    throw DomainError("sample_curve: level h = " + std::to_string(h) +
                      " has max radius above " + std::to_string(kMaxCurveRadius));

  CurveSample out;
  out.h = h;
  out.max_radius = max_radius;
  const auto m = static_cast<std::size_t>(grid_size);
  out.thetas.resize(m);
  out.xs.resize(m);
  out.ys.resize(m);
  out.dx_dtheta.resize(m);
  out.dy_dtheta.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / grid_size;
    const CurvePoint p = curve_point(h, theta);
    out.thetas[k] = theta;
    out.xs[k] = p.x;
    out.ys[k] = p.y;
    out.dx_dtheta[k] = p.dx;
    out.dy_dtheta[k] = p.dy;
  }
  return out;
}

}  // namespace cyclescope
