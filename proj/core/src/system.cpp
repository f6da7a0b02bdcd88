#include "cyclescope/system.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cyclescope/errors.hpp"
#include "cyclescope/numerics.hpp"
#include "cyclescope/reduction.hpp"

namespace cyclescope {

PerturbationSpec::PerturbationSpec(int n, BivariatePoly f, BivariatePoly g)
    : n_(n), f_(std::move(f)), g_(std::move(g)) {
  if (n < 0) throw DomainError("perturbation degree must be nonnegative");
  if (f_.degree().value_or(0) > n || g_.degree().value_or(0) > n)
    throw DomainError("perturbation polynomial exceeds declared degree n = " + std::to_string(n));
}

PerturbationSpec operator+(const PerturbationSpec& a, const PerturbationSpec& b) {
  return PerturbationSpec(std::max(a.n_, b.n_), a.f_ + b.f_, a.g_ + b.g_);
}

PerturbationSpec operator*(double s, const PerturbationSpec& p) {
  return PerturbationSpec(p.n_, s * p.f_, s * p.g_);
}

PerturbationSpec radial_spec() {
  return PerturbationSpec(1, BivariatePoly::x(), BivariatePoly::y());
}

PerturbationSpec lambda_family(double lambda) {
  BivariatePoly f, g;
  f.add_term(3, 0, 1.0);
  f.add_term(1, 2, 1.0);
  f.add_term(1, 0, -lambda);
  g.add_term(2, 1, 1.0);
  g.add_term(0, 3, 1.0);
  g.add_term(0, 1, -lambda);
  return PerturbationSpec(3, f, g);
}

PerturbationSpec random_spec(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
  };
  BivariatePoly f, g;
  for (int d = 0; d <= n; ++d)
    for (int i = d; i >= 0; --i) {
      f.add_term(i, d - i, uniform());
      g.add_term(i, d - i, uniform());
    }
  return PerturbationSpec(n, f, g);
}

Vec2 vector_field(const PerturbationSpec& spec, double eps, double x, double y) {
  const double x2 = x * x, y2 = y * y;
  Vec2 v{-y + x * x2 - x * y2, x + x2 * y - y * y2};
  if (eps != 0.0) {
    v.x += eps * spec.f()(x, y);
    v.y += eps * spec.g()(x, y);
  }
  return v;
}

namespace {

double checked_denominator(double x, double y) {
  const double d = 1.0 + 2.0 * x * y;
  if (std::abs(d) < kSingularThreshold) throw SingularLocusError("point lies on 1 + 2xy = 0");
  return d;
}

}  // namespace

double first_integral(double x, double y) {
  return (x * x + y * y) / checked_denominator(x, y);
}

Vec2 first_integral_gradient(double x, double y) {
  const double d = checked_denominator(x, y);
  const double rho = x * x + y * y;
  const double d2 = d * d;
  return {(2.0 * x * d - 2.0 * y * rho) / d2, (2.0 * y * d - 2.0 * x * rho) / d2};
}

double integrating_factor(double x, double y) {
  const double d = checked_denominator(x, y);
  return 2.0 / (d * d);
}

BivariatePoly unperturbed_p() {
  BivariatePoly p;
  p.add_term(0, 1, -1.0);
  p.add_term(3, 0, 1.0);
  p.add_term(1, 2, -1.0);
  return p;
}

BivariatePoly unperturbed_q() {
  BivariatePoly q;
  q.add_term(1, 0, 1.0);
  q.add_term(2, 1, 1.0);
  q.add_term(0, 3, -1.0);
  return q;
}

BivariatePoly integrating_factor_divergence_numerator() {
  // d/dx (2 P u^-2) = 2 (P_x u - 2 P u_x) u^-3 with u = 1 + 2xy.
  const BivariatePoly p = unperturbed_p(), q = unperturbed_q();
  BivariatePoly u = BivariatePoly::constant(1.0);
  u.add_term(1, 1, 2.0);
  const BivariatePoly ux = u.derivative_x(), uy = u.derivative_y();
  return 2.0 * ((p.derivative_x() + q.derivative_y()) * u - 2.0 * (p * ux + q * uy));
}

BivariatePoly angular_speed_defect() {
  const BivariatePoly rho = BivariatePoly::monomial(2, 0) + BivariatePoly::monomial(0, 2);
  return BivariatePoly::x() * unperturbed_q() - BivariatePoly::y() * unperturbed_p() - rho;
}

BivariatePoly green_numerator(const PerturbationSpec& spec) {
  // d/dx [x^i y^j rho^-2] = [i x^(i-1) y^j rho - 4 x^(i+1) y^j] rho^-3, likewise in y.
  // The curl of P dx + Q dy with P = g rho^-2, Q = -f rho^-2 is Q_x - P_y.
  const BivariatePoly rho = BivariatePoly::monomial(2, 0) + BivariatePoly::monomial(0, 2);
  BivariatePoly num;
  for (const auto& [m, a] : spec.f().terms()) {
    BivariatePoly dx = BivariatePoly::monomial(m.i + 1, m.j, -4.0);
    if (m.i > 0) dx += BivariatePoly::monomial(m.i - 1, m.j, m.i) * rho;
    num -= a * dx;
  }
  for (const auto& [m, b] : spec.g().terms()) {
    BivariatePoly dy = BivariatePoly::monomial(m.i, m.j + 1, -4.0);
    if (m.j > 0) dy += BivariatePoly::monomial(m.i, m.j - 1, m.j) * rho;
    num -= b * dy;
  }
  return 2.0 * num;
}

GreenCoefficients green_coefficients(const PerturbationSpec& spec) {
  GreenCoefficients out;
  out.n = spec.n();
  out.orientation_sign = kGreenOrientation;
  const BivariatePoly even = green_numerator(spec).filter_degree([](int d) { return d % 2 == 0; });
  for (const auto& [m, c] : even.terms()) out.c.emplace(m, out.orientation_sign * c);

  // Circle r = delta, counterclockwise: dx = -delta sin dθ, dy = delta cos dθ, so
  //   circle integral of x^i y^j rho^-2 dx = -delta^(s-3) T(i, j+1),
  //   circle integral of x^i y^j rho^-2 dy =  delta^(s-3) T(i+1, j).
  for (const auto& [m, b] : spec.g().terms()) {
    const double t = trig_moment(m.i, m.j + 1);
    if (t != 0.0) out.circle_flux[m.degree()] += out.orientation_sign * 2.0 * b * t;
  }
  for (const auto& [m, a] : spec.f().terms()) {
    const double t = trig_moment(m.i + 1, m.j);
    if (t != 0.0) out.circle_flux[m.degree()] += out.orientation_sign * 2.0 * a * t;
  }
  out.c_delta = c_delta(out, kDefaultDelta);
  return out;
}

}  // namespace cyclescope
