#pragma once

#include <vector>

#include "cyclescope/system.hpp"

namespace cyclescope {

inline constexpr double kDefaultDelta = 0.05;

// How an L_k value was obtained.
enum class LMethod { closed_form, binomial_exact, quadrature };

// L_k(h) = integral over [0, 2π] of (1 - h sin θ)^-k.
struct LValue {
  int k = 0;
  double h = 0.0;
  double value = 0.0;
  LMethod method = LMethod::closed_form;
};

// k in [-2, 2]: closed forms; k <= -3: binomial expansion with exact trig moments;
// k >= 3: periodic quadrature.
LValue L(int k, double h);

// A_k(h) = integral over one period of sin^k θ ln(1 - h sin θ), by quadrature.
double A(int k, double h);

// Closed-form dA_k/dh for k in {0, 1, 2}:
//   dA_0 = 2π/h - 2π/(h s),  dA_1 = 2π/h^2 - 2π/(h^2 s),
//   dA_2 = π/h + 2π/h^3 - 2π/(h^3 s),   s = sqrt(1 - h^2).
double dA(int k, double h);

// Constants d_0..d_N with
//   ∫ F(sin 2θ) cos^i θ sin^j θ dθ = Σ_k d_k ∫ F(sin θ) sin^k θ dθ   (i + j = 2N)
// for every continuous F. Validated at construction with F = exp.
struct ReductionTable {
  int i = 0;
  int j = 0;
  int N = 0;
  std::vector<double> d;
  // |lhs - rhs| of the exp witness identity.
  double witness_error = 0.0;
};

inline constexpr double kWitnessTolerance = 1e-10;

// Throws DomainError if i + j is odd (that integral is identically zero) and
// ValidationError if the witness identity misses kWitnessTolerance.
ReductionTable dk_table(int i, int j);

// Memoised dk_table for i + j <= 16; read-only after first use.
const ReductionTable& cached_dk_table(int i, int j);

// h^-k Σ_{i=0..k} (-1)^i C(k, i) L_{n-i}(h) = ∫ sin^k θ (1 - h sin θ)^-n dθ.
double binom_reduce(int k, int n, double h);

enum class IntegralMethod { direct, reduced };

// I_{i,j}(h): (1/(i+j-4)) ∫ r(θ)^(i+j-4) cos^i sin^j dθ, or ∫ ln r(θ) cos^i sin^j dθ
// when i + j = 4. Zero whenever i + j is odd.
double Iij(int i, int j, double h, IntegralMethod method);

// The h-independent constant C_delta for radius delta in (0, 0.2).
double c_delta(const GreenCoefficients& coeffs, double delta);

}  // namespace cyclescope
