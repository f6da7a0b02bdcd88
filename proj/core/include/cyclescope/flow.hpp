#pragma once

#include <string>
#include <vector>

#include "cyclescope/system.hpp"

namespace cyclescope {

struct RunConfig {
  // Perturbation strength; |eps| <= kMaxCycleEps for cycle searches.
  double eps = 0.0;
  // Absolute and relative local error tolerance of the adaptive integrator.
  double integ_tol = 1e-10;
  int max_steps = 200000;
};

inline constexpr double kMaxCycleEps = 0.05;

// Integrates the (perturbed) field from start for the given duration with an embedded
// Dormand-Prince 5(4) pair. Requires start inside the annulus, H in (0.005, 0.995);
// throws DomainError if the trajectory leaves H in (0.001, 0.999) and ConvergenceError
// if cfg.max_steps is exceeded.
Vec2 integrate(const PerturbationSpec& spec, const RunConfig& cfg, Vec2 start, double duration);

struct ReturnResult {
  double h1 = 0.0;
  double return_time = 0.0;
  // sup |H - h0| over the accepted steps of the revolution.
  double max_energy_drift = 0.0;
};

// First return to the section {y = 0, x > 0} starting from (sqrt(h0), 0), h0 in [0.01, 0.99].
// The crossing time is located by bisection to 1e-12.
ReturnResult return_map(const PerturbationSpec& spec, const RunConfig& cfg, double h0);

enum class Stability { attracting, repelling, unresolved };

std::string to_string(Stability s);

struct FixedPoint {
  double h_star = 0.0;
  Stability stability = Stability::unresolved;
};

struct CycleReport {
  std::vector<FixedPoint> fixed_points;
  std::string section = "y = 0, x > 0 (h = x^2)";
  double eps = 0.0;
};

// Fixed points of the return map from sign changes of d(h) = return_map(h) - h on a
// uniform grid over [h_lo, h_hi] within [0.05, 0.95]; refined by bisection to 1e-8.
CycleReport find_cycles(const PerturbationSpec& spec, const RunConfig& cfg, double h_lo,
                        double h_hi, int grid);

struct IsochronicityResult {
  double max_period_deviation = 0.0;
  double max_energy_drift = 0.0;
};

// Unperturbed (eps forced to 0) return times against 2π over the given levels.
IsochronicityResult isochronicity_suite(const RunConfig& cfg, const std::vector<double>& h_list);

}  // namespace cyclescope
