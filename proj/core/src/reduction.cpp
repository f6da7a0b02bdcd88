#include "cyclescope/reduction.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <string>

#include "cyclescope/curve.hpp"
#include "cyclescope/errors.hpp"
#include "cyclescope/numerics.hpp"

namespace cyclescope {

namespace {

constexpr double kQuadTol = 1e-14;
constexpr int kQuadStartGrid = 64;

void check_level(double h) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("level h = " + std::to_string(h) + " is outside (0, 1)");
}

double ipow(double b, int e) {
  double r = 1.0;
  for (int t = 0; t < e; ++t) r *= b;
  return r;
}

}  // namespace

LValue L(int k, double h) {
  check_level(h);
  LValue out{k, h, 0.0, LMethod::closed_form};
  const double one_minus = 1.0 - h * h;
  switch (k) {
    case -2: out.value = kPi * (2.0 + h * h); return out;
    case -1:
    case 0: out.value = kTwoPi; return out;
    case 1: out.value = kTwoPi / std::sqrt(one_minus); return out;
    case 2: out.value = kTwoPi / (one_minus * std::sqrt(one_minus)); return out;
    default: break;
  }
  if (k < 0) {
    // (1 - h sin θ)^|k| = Σ C(|k|, i) (-h)^i sin^i θ
    const int e = -k;
    double sum = 0.0;
    for (int i = 0; i <= e; i += 2) sum += binomial(e, i) * ipow(h, i) * trig_moment(0, i);
    out.value = sum;
    out.method = LMethod::binomial_exact;
    return out;
  }
  out.value = periodic_trapezoid(
                  [h, k](double t) { return std::pow(1.0 - h * std::sin(t), -k); },
                  kQuadStartGrid, kQuadTol)
                  .value;
  out.method = LMethod::quadrature;
  return out;
}

double A(int k, double h) {
  check_level(h);
  if (k < 0) throw DomainError("A: k must be nonnegative");
  return periodic_trapezoid(
             [h, k](double t) {
               const double s = std::sin(t);
               return ipow(s, k) * std::log1p(-h * s);
             },
             kQuadStartGrid, kQuadTol)
      .value;
}

double dA(int k, double h) {
  check_level(h);
  const double s = std::sqrt(1.0 - h * h);
  switch (k) {
    case 0: return kTwoPi / h - kTwoPi / (h * s);
    case 1: return kTwoPi / (h * h) - kTwoPi / (h * h * s);
    case 2: {
      const double h3 = h * h * h;
      return kPi / h + kTwoPi / h3 - kTwoPi / (h3 * s);
    }
    default: throw DomainError("dA: closed forms exist for k in {0, 1, 2}");
  }
}

ReductionTable dk_table(int i, int j) {
  if (i < 0 || j < 0) throw DomainError("dk_table: negative index");
  if ((i + j) % 2 != 0)
    throw DomainError("dk_table: i + j odd, the integral vanishes identically");
  ReductionTable t;
  t.i = i;
  t.j = j;
  t.N = (i + j) / 2;
  const int size = t.N + 1;

  // Instantiate the identity with F(s) = s^m, m = 0..N:
  //   2^m T(m + i, m + j) = Σ_k d_k T(0, m + k).
  Eigen::MatrixXd gram(size, size);
  Eigen::VectorXd rhs(size);
  for (int m = 0; m < size; ++m) {
    rhs(m) = std::ldexp(trig_moment(m + i, m + j), m);
    for (int k = 0; k < size; ++k) gram(m, k) = trig_moment(0, m + k);
  }
  const Eigen::VectorXd d = gram.completeOrthogonalDecomposition().solve(rhs);
  t.d.assign(d.data(), d.data() + size);

  const double lhs = periodic_trapezoid(
                         [i, j](double th) {
                           return std::exp(std::sin(2.0 * th)) * ipow(std::cos(th), i) *
                                  ipow(std::sin(th), j);
                         },
                         kQuadStartGrid, kQuadTol)
                         .value;
  double witness = 0.0;
  for (int k = 0; k < size; ++k) {
    witness += t.d[k] * periodic_trapezoid(
                            [k](double th) {
                              const double s = std::sin(th);
                              return std::exp(s) * ipow(s, k);
                            },
                            kQuadStartGrid, kQuadTol)
                            .value;
  }
  t.witness_error = std::abs(lhs - witness);
  if (t.witness_error > kWitnessTolerance)
    throw ValidationError("dk_table(" + std::to_string(i) + ", " + std::to_string(j) +
                          "): witness identity off by " + std::to_string(t.witness_error));
  return t;
}

const ReductionTable& cached_dk_table(int i, int j) {
  constexpr int kMaxCached = 16;
  static const std::map<Monomial, ReductionTable> cache = [] {
    std::map<Monomial, ReductionTable> m;
    for (int s = 0; s <= kMaxCached; s += 2)
      for (int a = 0; a <= s; ++a) m.emplace(Monomial{a, s - a}, dk_table(a, s - a));
    return m;
  }();
  auto it = cache.find(Monomial{i, j});
  if (it == cache.end())
    throw DomainError("cached_dk_table: (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") outside the cached range");
  return it->second;
}

double binom_reduce(int k, int n, double h) {
  check_level(h);
  if (k < 0) throw DomainError("binom_reduce: k must be nonnegative");
  double sum = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double term = binomial(k, i) * L(n - i, h).value;
    sum += (i % 2 == 0) ? term : -term;
  }
  return sum / ipow(h, k);
}

double Iij(int i, int j, double h, IntegralMethod method) {
  check_level(h);
  if (i < 0 || j < 0) throw DomainError("Iij: negative index");
  const int s = i + j;
  if (s % 2 != 0) return 0.0;

  if (method == IntegralMethod::direct) {
    auto integrand = [=](double th) {
      const double r = radius(h, th);
      const double angular = ipow(std::cos(th), i) * ipow(std::sin(th), j);
      if (s == 4) return std::log(r) * angular;
      return std::pow(r, s - 4) / (s - 4) * angular;
    };
    return periodic_trapezoid(integrand, kQuadStartGrid, 1e-13).value;
  }

  const int big_n = s / 2;
  const ReductionTable& table = s <= 16 ? cached_dk_table(i, j) : dk_table(i, j);
  double sum = 0.0;
  if (big_n == 2) {
    // ln r = (1/2) ln(h / (1 - h sin 2θ))
    const double log_h = std::log(h);
    for (int k = 0; k <= 2; ++k) sum += table.d[k] * (log_h * trig_moment(0, k) - A(k, h));
    return 0.5 * sum;
  }
  // r^(2N-4) = h^(N-2) (1 - h sin 2θ)^(2-N)
  for (int k = 0; k <= big_n; ++k) sum += table.d[k] * binom_reduce(k, big_n - 2, h);
  return std::pow(h, big_n - 2) * sum / (2.0 * big_n - 4.0);
}

double c_delta(const GreenCoefficients& coeffs, double delta) {
  if (!(delta > 0.0 && delta < 0.2)) throw DomainError("c_delta: delta must lie in (0, 0.2)");
  double sum = 0.0;
  for (const auto& [m, c] : coeffs.c) {
    const int s = m.degree();
    const double t = trig_moment(m.i, m.j);
    if (t == 0.0) continue;
    sum += (s == 4) ? c * std::log(delta) * t : c * std::pow(delta, s - 4) / (s - 4) * t;
  }
  for (const auto& [s, kappa] : coeffs.circle_flux) sum += kappa * std::pow(delta, s - 3);
  return sum;
}

}  // namespace cyclescope
