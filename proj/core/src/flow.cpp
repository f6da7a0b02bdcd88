#include "cyclescope/flow.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "cyclescope/errors.hpp"
#include "cyclescope/numerics.hpp"
#include "cyclescope/parallel.hpp"

namespace cyclescope {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;
using Stepper = odeint::runge_kutta_dopri5<State>;

constexpr double kCrossingTol = 1e-12;
constexpr double kCycleRootTol = 1e-8;

struct Rhs {
  const PerturbationSpec& spec;
  double eps;
  void operator()(const State& s, State& ds, double /*t*/) const {
    const Vec2 v = vector_field(spec, eps, s[0], s[1]);
    ds[0] = v.x;
    ds[1] = v.y;
  }
};

void check_inside(const State& s) {
  const double u = 1.0 + 2.0 * s[0] * s[1];
  if (!(u > 0.0)) throw DomainError("trajectory left the period annulus (1 + 2xy <= 0)");
  const double h = (s[0] * s[0] + s[1] * s[1]) / u;
  if (!(h > 0.001 && h < 0.999)) throw DomainError("trajectory left the period annulus (H = " + std::to_string(h) + ")");
}

// Adaptive integration over [0, duration] with step count accumulated into `steps`.
template <typename Observer>
State advance(const Rhs& rhs, const RunConfig& cfg, State s, double duration, int& steps,
              Observer&& observe) {
  auto stepper = odeint::make_controlled<Stepper>(cfg.integ_tol, cfg.integ_tol);
  double t = 0.0;
  double dt = std::min(0.01, duration);
  while (t < duration) {
    if (++steps > cfg.max_steps) throw ConvergenceError("integrate: step limit exceeded");
    const double remaining = duration - t;
    const bool last = dt >= remaining;
    double trial = last ? remaining : dt;
    const State before = s;
    const double t_before = t;
    if (stepper.try_step(rhs, s, t, trial) == odeint::success) {
      if (last) t = duration;
      check_inside(s);
      observe(before, t_before, s, t);
    }
    dt = trial;
  }
  return s;
}

}  // namespace

Vec2 integrate(const PerturbationSpec& spec, const RunConfig& cfg, Vec2 start, double duration) {
  if (duration < 0.0) throw DomainError("integrate: negative duration");
  const double h0 = first_integral(start.x, start.y);
  if (!(1.0 + 2.0 * start.x * start.y > 0.0) || !(h0 > 0.005 && h0 < 0.995))
    throw DomainError("integrate: start point outside the annulus");
  if (duration == 0.0) return start;
  int steps = 0;
  const Rhs rhs{spec, cfg.eps};
  const State end = advance(rhs, cfg, {start.x, start.y}, duration, steps,
                            [](const State&, double, const State&, double) {});
  return {end[0], end[1]};
}

ReturnResult return_map(const PerturbationSpec& spec, const RunConfig& cfg, double h0) {
  if (!(h0 >= 0.01 && h0 <= 0.99)) throw DomainError("return_map: h0 outside [0.01, 0.99]");
  const Rhs rhs{spec, cfg.eps};
  auto stepper = odeint::make_controlled<Stepper>(cfg.integ_tol, cfg.integ_tol);

  State s{std::sqrt(h0), 0.0};
  double t = 0.0;
  double dt = 0.01;
  double drift = 0.0;
  int steps = 0;
  while (true) {
    if (++steps > cfg.max_steps) throw ConvergenceError("return_map: no return within the step limit");
    const State before = s;
    const double t_before = t;
    if (stepper.try_step(rhs, s, t, dt) != odeint::success) continue;
    check_inside(s);
    drift = std::max(drift, std::abs(first_integral(s[0], s[1]) - h0));
    if (!(before[1] < 0.0 && s[1] >= 0.0 && s[0] > 0.0)) continue;

    // Bisection on the elapsed time inside the accepted step.
    double lo = 0.0, hi = t - t_before;
    State at_hi = s;
    int sub_steps = 0;
    while (hi - lo > kCrossingTol) {
      const double mid = 0.5 * (lo + hi);
      const State probe = mid > 0.0
                              ? advance(rhs, cfg, before, mid, sub_steps,
                                        [](const State&, double, const State&, double) {})
                              : before;
      if (probe[1] < 0.0) {
        lo = mid;
      } else {
        hi = mid;
        at_hi = probe;
      }
      sub_steps = 0;
    }
    ReturnResult out;
    out.return_time = t_before + hi;
    out.h1 = first_integral(at_hi[0], at_hi[1]);
    out.max_energy_drift = std::max(drift, std::abs(out.h1 - h0));
    return out;
  }
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::attracting: return "attracting";
    case Stability::repelling: return "repelling";
    default: return "unresolved";
  }
}

CycleReport find_cycles(const PerturbationSpec& spec, const RunConfig& cfg, double h_lo,
                        double h_hi, int grid) {
  if (cfg.eps == 0.0) throw DomainError("find_cycles: eps must be nonzero");
  if (std::abs(cfg.eps) > kMaxCycleEps) throw DomainError("find_cycles: |eps| exceeds 0.05");
  if (!(h_lo >= 0.05 && h_hi <= 0.95 && h_lo < h_hi))
    throw DomainError("find_cycles: [h_lo, h_hi] must lie within [0.05, 0.95]");
  if (grid < 2) throw DomainError("find_cycles: grid must have at least 2 points");

  auto displacement = [&](double h) { return return_map(spec, cfg, h).h1 - h; };

  std::vector<double> xs(static_cast<std::size_t>(grid)), ds(xs.size());
  for (int k = 0; k < grid; ++k) xs[k] = (k == grid - 1) ? h_hi : h_lo + (h_hi - h_lo) * k / (grid - 1);
  parallel_for(xs.size(), [&](std::size_t k) { ds[k] = displacement(xs[k]); });

  const BracketScan scan = bracket_values(xs, ds, 1e-12);
  CycleReport report;
  report.eps = cfg.eps;
  report.fixed_points.resize(scan.brackets.size());
  parallel_for(scan.brackets.size(), [&](std::size_t k) {
    const RootBracket& b = scan.brackets[k];
    FixedPoint fp;
    fp.h_star = refine_bisection(b, displacement, kCycleRootTol);
    if (b.spans_ambiguous)
      fp.stability = Stability::unresolved;
    else
      fp.stability = b.f_lo > 0.0 ? Stability::attracting : Stability::repelling;
    report.fixed_points[k] = fp;
  });
  return report;
}

IsochronicityResult isochronicity_suite(const RunConfig& cfg, const std::vector<double>& h_list) {
  RunConfig unperturbed = cfg;
  unperturbed.eps = 0.0;
  const PerturbationSpec none;
  std::vector<ReturnResult> results(h_list.size());
  parallel_for(h_list.size(), [&](std::size_t k) { results[k] = return_map(none, unperturbed, h_list[k]); });
  IsochronicityResult out;
  for (const ReturnResult& r : results) {
    out.max_period_deviation = std::max(out.max_period_deviation, std::abs(r.return_time - kTwoPi));
    out.max_energy_drift = std::max(out.max_energy_drift, r.max_energy_drift);
  }
  return out;
}

}  // namespace cyclescope
