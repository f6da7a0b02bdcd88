#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclescope/curve.hpp"
#include "cyclescope/reduction.hpp"
#include "cyclescope/system.hpp"

namespace cyclescope {

enum class AbelianMethod { direct, reduced };

struct AbelianEval {
  double h = 0.0;
  double value = 0.0;
  AbelianMethod method = AbelianMethod::direct;
  double error_estimate = 0.0;
  // Integral of |integrand| (direct) or sum of |terms| (reduced); the size against
  // which "zero" is judged.
  double scale = 0.0;
};

struct DirectOptions {
  int start_grid = kDefaultCurveGrid;
  double tol = 1e-13;
  // Re-evaluates the integrand in the 2h^2 / (x^2+y^2)^2 form on the final grid and
  // throws ValidationError if it differs from the mu-form by more than 1e-10 relative.
  bool check_forms = true;
};

// Abelian integral I(h) = ∮ mu (g dx - f dy) over the level curve H = h,
// counterclockwise, evaluated two independent ways.
class AbelianIntegral {
 public:
  explicit AbelianIntegral(PerturbationSpec spec);

  const PerturbationSpec& spec() const { return spec_; }
  const GreenCoefficients& green() const { return green_; }

  // h in [0.01, 0.99].
  AbelianEval direct(double h, const DirectOptions& opts = {}) const;
  // h^2 (Σ_N J_N(h) - C_delta), through the reduction tables.
  AbelianEval reduced(double h) const;
  // J_N(h) = Σ_{i+j=2N} c_{ij} I_{ij}(h) for N = 1..max; index 0 unused (0.0).
  std::vector<double> j_terms(double h) const;

 private:
  PerturbationSpec spec_;
  GreenCoefficients green_;
  DensePoly f_;
  DensePoly g_;
};

AbelianEval I_direct(const PerturbationSpec& spec, double h);
AbelianEval I_reduced(const PerturbationSpec& spec, double h);

// d/dh [I(h) / h^2] for h in [0.02, 0.98], from a Richardson derivative of the direct route.
double dI1(const AbelianIntegral& integral, double h);
double dI1(const PerturbationSpec& spec, double h);

// floor((n + 1) / 2)
int half_degree(int n);
// 4 floor((n+1)/2) + 1, the zero budget. Throws DomainError for n < 1.
int budget(int n);

struct StructureFit {
  int m = 0;
  std::vector<double> phi_coeffs;
  std::vector<double> psi_coeffs;
  double fit_residual = 0.0;
  double holdout_residual = 0.0;
  // max |G(h)| over all samples.
  double scale = 0.0;
  bool passed = false;
};

inline constexpr double kStructureTolerance = 1e-6;

// Minimum sample count accepted by structure_check for a given m: the fit needs at
// least twice as many fitting points as its 4m basis functions after 25% hold-out.
int min_structure_samples(int m);

// Fits G(h) = h^3 (1 - h^2)^(m - 3/2) dI1(h) on [0.1, 0.9] with
// {h^p} ∪ {h^p sqrt(1 - h^2)}, p = 0..2m-1, holding out every fourth sample.
// Requires m = floor((n+1)/2) >= 2.
StructureFit structure_check(const AbelianIntegral& integral, int sample_count);
StructureFit structure_check(const PerturbationSpec& spec, int sample_count);

// For m = 1 the reduced integral is exactly alpha / h + beta.
struct TwoParameterFit {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;
  double scale = 0.0;
  bool passed = false;
};

inline constexpr double kTwoParameterTolerance = 1e-9;

TwoParameterFit two_parameter_check(const AbelianIntegral& integral, int sample_count);

// Fits h^2 J_N(h) with (1-h^2)^(5/2-N) {h^p, p <= 2N-3} ∪ {1, h, h^2}; N >= 3.
struct JnFit {
  int N = 0;
  double fit_residual = 0.0;
  double holdout_residual = 0.0;
  double scale = 0.0;
  bool passed = false;
};

JnFit jn_structure_check(const AbelianIntegral& integral, int big_n, int sample_count);

struct ZeroReport {
  int n = 0;
  std::vector<double> roots;
  int sign_change_count = 0;
  int ambiguous_cells = 0;
  int budget = 0;
  bool within_budget = true;
  // I vanishes on the whole grid, so no zero count is meaningful.
  bool identically_zero = false;
  double max_abs = 0.0;
  double scale = 0.0;
};

struct ZeroOptions {
  double h_lo = kSweepLo;
  double h_hi = kSweepHi;
  double root_tol = 1e-9;
  double dead_band = 1e-12;
  // Sweeps start quadrature at a coarser grid; the doubling loop still enforces tol.
  int start_grid = 256;
  bool refine = true;
};

// Counts sign changes of I on a uniform grid of grid_points (>= 200) levels.
ZeroReport count_zeros(const PerturbationSpec& spec, int grid_points, const ZeroOptions& opts = {});

std::string to_string(AbelianMethod m);

}  // namespace cyclescope
