#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cyclescope/numerics.hpp"

using namespace cyclescope;

TEST_CASE("periodic_trapezoid examples") {
  const auto one = periodic_trapezoid([](double) { return 1.0; }, 16, 1e-14);
  CHECK(one.value == doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(one.error_estimate >= 0.0);
  CHECK(is_power_of_two(one.grid_size));
  CHECK(one.grid_size >= 16);

  const auto c2 = periodic_trapezoid([](double t) { return std::cos(t) * std::cos(t); }, 64, 1e-14);
  CHECK(std::abs(c2.value - kPi) <= 1e-12);

  const auto s2 = periodic_trapezoid([](double t) { return std::sin(2.0 * t); }, 64, 1e-14);
  CHECK(std::abs(s2.value) <= 1e-14);
}

TEST_CASE("periodic_trapezoid rejects non power-of-two grids and reports non-convergence") {
  CHECK_THROWS_AS(periodic_trapezoid([](double) { return 1.0; }, 24, 1e-12), DomainError);
  // A near-singular integrand: 1/(1 - 0.9999999 sin θ) needs more than 2^12 points.
  CHECK_THROWS_AS(periodic_trapezoid([](double t) { return 1.0 / (1.0 - 0.9999999 * std::sin(t)); }, 64,
                                     1e-14, 1 << 12),
                  ConvergenceError);
}

TEST_CASE("trapezoid is exact on trigonometric polynomials below the Nyquist degree") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int degree = 1 + trial % 15;  // < 32 / 2
    std::vector<double> a(static_cast<std::size_t>(degree + 1)), b(a.size());
    for (auto& v : a) v = u(rng);
    for (auto& v : b) v = u(rng);
    auto f = [&](double t) {
      double s = a[0];
      for (int k = 1; k <= degree; ++k) s += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
      return s;
    };
    const auto q = periodic_trapezoid(f, 16, 1e-15);
    CHECK(std::abs(q.value - kTwoPi * a[0]) <= 1e-13 * std::max(1.0, std::abs(kTwoPi * a[0])));
  }
}

TEST_CASE("trig_moment closed form") {
  CHECK(trig_moment(0, 0) == doctest::Approx(kTwoPi));
  CHECK(trig_moment(1, 1) == 0.0);
  CHECK(trig_moment(3, 2) == 0.0);
  CHECK(trig_moment(2, 2) == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  for (int p = 0; p <= 16; ++p)
    for (int q = 0; p + q <= 16; ++q) {
      const double quad = periodic_trapezoid(
                              [p, q](double t) { return std::pow(std::cos(t), p) * std::pow(std::sin(t), q); },
                              64, 1e-15)
                              .value;
      CHECK(std::abs(quad - trig_moment(p, q)) <= 1e-12);
    }
}

TEST_CASE("bracket_roots examples") {
  auto lin = [](double h) { return h - 0.5; };
  const BracketScan one = bracket_roots(lin, 0.01, 0.99, 100);
  REQUIRE(one.brackets.size() == 1);
  CHECK(one.brackets[0].lo < 0.5);
  CHECK(one.brackets[0].hi > 0.5);
  CHECK(std::signbit(one.brackets[0].f_lo) != std::signbit(one.brackets[0].f_hi));

  auto quad = [](double h) { return (h - 0.2) * (h - 0.7); };
  const BracketScan two = bracket_roots(quad, 0.01, 0.99, 100);
  REQUIRE(two.brackets.size() == 2);
  CHECK(refine_bisection(two.brackets[1], quad, 1e-12) == doctest::Approx(0.7).epsilon(1e-11));

  const BracketScan none = bracket_roots([](double h) { return -4.0 * kPi * h; }, 0.01, 0.99, 100);
  CHECK(none.brackets.empty());
}

TEST_CASE("bracket_roots flags dead-band nodes instead of guessing") {
  // Exact zero on a grid node: + 0 - gives one bracket spanning the ambiguous node.
  const BracketScan s = bracket_roots([](double x) { return 0.5 - x; }, 0.0, 1.0, 3);
  CHECK(s.ambiguous_points == 1);
  REQUIRE(s.brackets.size() == 1);
  CHECK(s.brackets[0].spans_ambiguous);
  CHECK(s.brackets[0].lo == 0.0);
  CHECK(s.brackets[0].hi == 1.0);
  // A touching zero (+ 0 +) is not a sign change.
  const BracketScan t = bracket_roots([](double x) { return (x - 0.5) * (x - 0.5); }, 0.0, 1.0, 3);
  CHECK(t.brackets.empty());
  CHECK(t.ambiguous_points == 1);
}

TEST_CASE("refine_bisection examples") {
  auto lin = [](double h) { return h - 0.5; };
  RootBracket b{0.3, 0.8, {}, lin(0.3), lin(0.8), false};
  CHECK(std::abs(refine_bisection(b, lin, 1e-10) - 0.5) <= 1e-10);

  auto family = [](double h) { return 4.0 * kPi * h * (0.5 - h); };
  RootBracket c{0.4, 0.65, {}, family(0.4), family(0.65), false};
  CHECK(std::abs(refine_bisection(c, family, 1e-10) - 0.5) <= 1e-10);
}

TEST_CASE("bracketing and bisection recover every root of separated random cubics") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const int grid = 200;
  const double spacing = 0.98 / (grid - 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> r{u(rng), u(rng), u(rng)};
    std::sort(r.begin(), r.end());
    if (r[1] - r[0] <= 2 * spacing || r[2] - r[1] <= 2 * spacing) continue;
    auto cubic = [&](double x) { return (x - r[0]) * (x - r[1]) * (x - r[2]); };
    const BracketScan s = bracket_roots(cubic, 0.01, 0.99, grid);
    REQUIRE(s.brackets.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(refine_bisection(s.brackets[k], cubic, 1e-12) - r[k]) <= 1e-11);
  }
}

TEST_CASE("richardson_derivative examples") {
  CHECK(richardson_derivative([](double h) { return h * h; }, 0.3, 0.05).value ==
        doctest::Approx(0.6).epsilon(1e-12));
  CHECK(std::abs(richardson_derivative([](double) { return 3.0; }, 0.3, 0.05).value) <= 1e-14);
  // d/dh 2π (1 - h^2)^(-1/2) = 2π h (1 - h^2)^(-3/2)
  auto l1 = [](double h) { return kTwoPi / std::sqrt(1.0 - h * h); };
  const double expected = kTwoPi * 0.5 * std::pow(0.75, -1.5);
  CHECK(expected == doctest::Approx(4.8368).epsilon(1e-4));
  const DerivativeEstimate d = richardson_derivative(l1, 0.5, 0.1);
  CHECK(d.value == doctest::Approx(expected).epsilon(1e-9));
  CHECK(d.error_estimate <= 1e-7 * (1.0 + std::abs(d.value)));
}

TEST_CASE("richardson_derivative reports non-convergence") {
  // Discontinuous at the evaluation point.
  CHECK_THROWS_AS(richardson_derivative([](double x) { return x < 0.0 ? 0.0 : 1.0 + x; }, 0.0, 0.1),
                  ConvergenceError);
}

TEST_CASE("lsq_fit examples") {
  {
    const std::vector<BasisFunction> basis{[](double) { return 1.0; }, [](double x) { return x; }};
    const std::vector<double> xs{0.0, 1.0, 2.0, 3.0}, ys{1.0, 3.0, 5.0, 7.0};
    const LsqFit fit = lsq_fit(basis, xs, ys);
    CHECK(fit.coefficients[0] == doctest::Approx(1.0));
    CHECK(fit.coefficients[1] == doctest::Approx(2.0));
    CHECK(fit.residual <= 1e-13);
  }
  {
    const std::vector<BasisFunction> basis{[](double) { return 1.0; }};
    const std::vector<double> xs{0.0, 1.0, 2.0}, ys{3.0, 3.0, 3.0};
    const LsqFit fit = lsq_fit(basis, xs, ys);
    CHECK(fit.coefficients[0] == doctest::Approx(3.0));
    CHECK(fit.residual <= 1e-15);
  }
  {
    // (1 - h^2)^(3/2) L_2(h) / (2π) = 1 with L_2 = 2π (1 - h^2)^(-3/2)
    const std::vector<BasisFunction> basis{[](double) { return 1.0; }, [](double h) { return h * h; },
                                           [](double h) { return std::pow(h, 4); }};
    std::vector<double> xs, ys;
    for (int k = 0; k < 12; ++k) {
      const double h = 0.05 + 0.08 * k;
      const double l2 = periodic_trapezoid([h](double t) { return std::pow(1.0 - h * std::sin(t), -2); }, 64,
                                           1e-15)
                            .value;
      xs.push_back(h);
      ys.push_back(std::pow(1.0 - h * h, 1.5) * l2 / kTwoPi);
    }
    const LsqFit fit = lsq_fit(basis, xs, ys);
    CHECK(fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(fit.coefficients[1]) <= 1e-9);
    CHECK(std::abs(fit.coefficients[2]) <= 1e-9);
  }
}

TEST_CASE("lsq_fit errors") {
  const std::vector<BasisFunction> dup{[](double x) { return x; }, [](double x) { return 2.0 * x; }};
  const std::vector<double> xs{0.1, 0.2, 0.3, 0.4}, ys{1, 2, 3, 4};
  CHECK_THROWS_AS(lsq_fit(dup, xs, ys), RankDeficiencyError);
  const std::vector<double> few{0.1, 0.2, 0.3};
  CHECK_THROWS_AS(lsq_fit(dup, few, few), DomainError);
}
