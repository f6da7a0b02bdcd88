#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "cyclescope/poly.hpp"

namespace cyclescope {

// Degree-n polynomial perturbation (f, g) of the cubic isochronous field
//   x' = -y + x^3 - x y^2 + eps f(x, y),   y' = x + x^2 y - y^3 + eps g(x, y).
class PerturbationSpec {
 public:
  PerturbationSpec() = default;
  // Throws DomainError if deg f > n or deg g > n.
  PerturbationSpec(int n, BivariatePoly f, BivariatePoly g);

  int n() const { return n_; }
  const BivariatePoly& f() const { return f_; }
  const BivariatePoly& g() const { return g_; }
  bool is_zero() const { return f_.is_zero() && g_.is_zero(); }

  // Coefficientwise sum; n is the larger of the two degrees.
  friend PerturbationSpec operator+(const PerturbationSpec& a, const PerturbationSpec& b);
  friend PerturbationSpec operator*(double s, const PerturbationSpec& p);

 private:
  int n_ = 0;
  BivariatePoly f_;
  BivariatePoly g_;
};

// f = x, g = y.
PerturbationSpec radial_spec();
// f = x (x^2 + y^2) - lambda x, g = y (x^2 + y^2) - lambda y; I(h) = 4 pi h (lambda - h).
PerturbationSpec lambda_family(double lambda);
// Every monomial of degree <= n with a coefficient uniform in [-1, 1], drawn from a
// mt19937_64 seeded with `seed`. Deterministic across platforms.
PerturbationSpec random_spec(int n, std::uint64_t seed);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kSingularThreshold = 1e-12;

Vec2 vector_field(const PerturbationSpec& spec, double eps, double x, double y);

// H(x, y) = (x^2 + y^2) / (1 + 2xy). Throws SingularLocusError when |1 + 2xy| < 1e-12.
double first_integral(double x, double y);
// Exact partial derivatives of H.
Vec2 first_integral_gradient(double x, double y);
// mu(x, y) = 2 (1 + 2xy)^-2.
double integrating_factor(double x, double y);

// Unperturbed field components as polynomials.
BivariatePoly unperturbed_p();
BivariatePoly unperturbed_q();

// Numerator of d(mu P0)/dx + d(mu Q0)/dy over (1 + 2xy)^3; identically zero.
BivariatePoly integrating_factor_divergence_numerator();
// x Q0 - y P0 - (x^2 + y^2); identically zero since the angular speed is 1.
BivariatePoly angular_speed_defect();

// Orientation of the Green map. Calibrated once against direct quadrature
// (counterclockwise line integrals) for f = x, g = y; see the system tests.
inline constexpr int kGreenOrientation = +1;

struct GreenCoefficients {
  // c_{i,j} for even i + j in [2, n + 1]; odd total degrees integrate to zero
  // over every circle and level curve and are not stored.
  std::map<Monomial, double> c;
  int orientation_sign = kGreenOrientation;
  // kappa_s for the circle term of C_delta: -2 * circle integral of
  // (g dx - f dy) / (x^2+y^2)^2 over r = delta equals sum_s kappa_s delta^(s-3).
  std::map<int, double> circle_flux;
  double c_delta = 0.0;
  int n = 0;
};

// 2 x numerator, over (x^2 + y^2)^3, of the Green integrand of the one-form
// (g dx - f dy) / (x^2 + y^2)^2, by exact monomial algebra. Includes odd degrees.
BivariatePoly green_numerator(const PerturbationSpec& spec);

GreenCoefficients green_coefficients(const PerturbationSpec& spec);

}  // namespace cyclescope
