#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cyclescope/abelian.hpp"
#include "cyclescope/errors.hpp"
#include "cyclescope/flow.hpp"
#include "cyclescope/parallel.hpp"
#include "cyclescope/reduction.hpp"
#include "cyclescope/spec_io.hpp"
#include "json.hpp"
#include "verify.hpp"

namespace cyclescope::cli {

namespace {

using nlohmann::json;

// 17 significant digits.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) xs[k] = (k == points - 1) ? hi : lo + (hi - lo) * k / (points - 1);
  return xs;
}

json zero_report_json(const ZeroReport& r) {
  json doc;
  doc["n"] = r.n;
  doc["budget"] = r.budget;
  doc["sign_change_count"] = r.sign_change_count;
  doc["ambiguous_cells"] = r.ambiguous_cells;
  doc["within_budget"] = r.within_budget;
  doc["identically_zero"] = r.identically_zero;
  doc["roots"] = r.roots;
  doc["notice"] = r.identically_zero
                      ? "identically zero: the abelian integral vanishes and the zero bound does not apply"
                      : "sign changes are a lower bound on the zero count; zeros of even multiplicity are not detected";
  return doc;
}

}  // namespace

void validate(const SweepRequest& req) {
  if (!(req.h_lo >= kSweepLo && req.h_lo < req.h_hi && req.h_hi <= kSweepHi))
    throw DomainError("need 0.01 <= h-lo < h-hi <= 0.99");
  if (req.points < 2) throw DomainError("need at least 2 points");
}

int cmd_eval(const SweepRequest& req, std::ostream& out) {
  validate(req);
  const AbelianIntegral integral(load_spec(req.spec_path));
  const std::vector<double> hs = grid(req.h_lo, req.h_hi, req.points);
  const bool want_direct = req.method != Method::reduced;
  const bool want_reduced = req.method != Method::direct;

  std::vector<AbelianEval> direct(hs.size()), reduced(hs.size());
  parallel_for(hs.size(), [&](std::size_t k) {
    if (want_direct) direct[k] = integral.direct(hs[k]);
    if (want_reduced) reduced[k] = integral.reduced(hs[k]);
  });

  if (req.out_format == Format::json) {
    json rows = json::array();
    for (std::size_t k = 0; k < hs.size(); ++k) {
      json row{{"h", hs[k]}};
      if (want_direct) row["I_direct"] = direct[k].value, row["err_direct"] = direct[k].error_estimate;
      if (want_reduced) row["I_reduced"] = reduced[k].value, row["err_reduced"] = reduced[k].error_estimate;
      if (want_direct && want_reduced) row["difference"] = direct[k].value - reduced[k].value;
      rows.push_back(row);
    }
    out << json{{"rows", rows}}.dump(2) << '\n';
    return kOk;
  }

  out << "h";
  if (want_direct) out << ",I_direct,err_direct";
  if (want_reduced) out << ",I_reduced,err_reduced";
  if (want_direct && want_reduced) out << ",difference";
  out << '\n';
  for (std::size_t k = 0; k < hs.size(); ++k) {
    out << fmt(hs[k]);
    if (want_direct) out << ',' << fmt(direct[k].value) << ',' << fmt(direct[k].error_estimate);
    if (want_reduced) out << ',' << fmt(reduced[k].value) << ',' << fmt(reduced[k].error_estimate);
    if (want_direct && want_reduced) out << ',' << fmt(direct[k].value - reduced[k].value);
    out << '\n';
  }
  return kOk;
}

int cmd_zeros(const SweepRequest& req, std::ostream& out) {
  validate(req);
  ZeroOptions opts;
  opts.h_lo = req.h_lo;
  opts.h_hi = req.h_hi;
  const ZeroReport r = count_zeros(load_spec(req.spec_path), std::max(req.points, 200), opts);
  out << zero_report_json(r).dump(2) << '\n';
  return r.within_budget ? kOk : kVerificationFailed;
}

int cmd_cycles(const SweepRequest& req, std::ostream& out) {
  if (req.eps == 0.0) throw DomainError("cycles: --eps must be nonzero");
  if (std::abs(req.eps) > kMaxCycleEps) throw DomainError("cycles: |eps| must not exceed 0.05");
  if (!(req.h_lo >= 0.05 && req.h_hi <= 0.95 && req.h_lo < req.h_hi))
    throw DomainError("cycles: need 0.05 <= h-lo < h-hi <= 0.95");
  const PerturbationSpec spec = load_spec(req.spec_path);
  RunConfig cfg;
  cfg.eps = req.eps;
  const CycleReport cycles = find_cycles(spec, cfg, req.h_lo, req.h_hi, std::max(req.points, 2));

  ZeroOptions zopts;
  zopts.h_lo = req.h_lo;
  zopts.h_hi = req.h_hi;
  const ZeroReport zeros = count_zeros(spec, 400, zopts);

  json fps = json::array();
  for (const FixedPoint& fp : cycles.fixed_points)
    fps.push_back({{"h_star", fp.h_star}, {"stability", to_string(fp.stability)}});
  json doc;
  doc["eps"] = cycles.eps;
  doc["section"] = cycles.section;
  doc["fixed_points"] = fps;
  doc["abelian_zeros"] = zeros.roots;
  doc["abelian_identically_zero"] = zeros.identically_zero;
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_tables(const TablesRequest& req, std::ostream& out, std::ostream& err) {
  if (req.kind == TableKind::lk) {
    if (req.k_min > req.k_max) throw DomainError("tables: need k-min <= k-max");
    if (!(req.h_lo > 0.0 && req.h_lo < req.h_hi && req.h_hi < 1.0) || req.points < 1)
      throw DomainError("tables: need 0 < h-lo < h-hi < 1 and points >= 1");
    out << "k,h,L,method\n";
    const std::vector<double> hs = req.points == 1 ? std::vector<double>{req.h_lo} : grid(req.h_lo, req.h_hi, req.points);
    for (int k = req.k_min; k <= req.k_max; ++k)
      for (double h : hs) {
        const LValue v = L(k, h);
        const char* method = v.method == LMethod::closed_form      ? "closed_form"
                             : v.method == LMethod::binomial_exact ? "binomial_exact"
                                                                   : "quadrature";
        out << k << ',' << fmt(h) << ',' << fmt(v.value) << ',' << method << '\n';
      }
    return kOk;
  }

  std::vector<std::pair<int, int>> pairs;
  if (req.i || req.j) {
    if (!req.i || !req.j) throw DomainError("tables: give both --i and --j");
    if ((*req.i + *req.j) % 2 != 0) {
      err << "dk table refused: i + j is odd, so the integral vanishes identically for every F\n";
      return kUsage;
    }
    pairs.emplace_back(*req.i, *req.j);
  } else {
    for (int s = 0; s <= req.max_degree; s += 2)
      for (int a = 0; a <= s; ++a) pairs.emplace_back(a, s - a);
  }
  out << "i,j,N,k,d_k\n";
  for (const auto& [i, j] : pairs) {
    const ReductionTable t = dk_table(i, j);
    for (int k = 0; k <= t.N; ++k) out << i << ',' << j << ',' << t.N << ',' << k << ',' << fmt(t.d[k]) << '\n';
  }
  return kOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Abelian integrals, zero counts and limit cycles of a perturbed cubic isochronous center"};
  app.require_subcommand(1);

  SweepRequest sweep;
  std::string method = "direct", format = "csv", out_path;
  auto add_sweep_flags = [&](CLI::App* cmd, bool with_eps) {
    cmd->add_option("--spec", sweep.spec_path, "Perturbation spec JSON file")->required();
    cmd->add_option("--h-lo", sweep.h_lo, "Lower end of the h-grid");
    cmd->add_option("--h-hi", sweep.h_hi, "Upper end of the h-grid");
    cmd->add_option("--points", sweep.points, "Grid points");
    cmd->add_option("--seed", sweep.seed, "Random seed");
    cmd->add_option("--out", out_path, "Write output to this file instead of stdout");
    if (with_eps) cmd->add_option("--eps", sweep.eps, "Perturbation strength")->required();
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate I(h) on a grid");
  add_sweep_flags(eval, false);
  eval->add_option("--method", method, "direct | reduced | both")
      ->check(CLI::IsMember({"direct", "reduced", "both"}));
  eval->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* zeros = app.add_subcommand("zeros", "Count zeros of I(h) against the budget");
  add_sweep_flags(zeros, false);

  CLI::App* cycles = app.add_subcommand("cycles", "Find limit cycles of the perturbed flow");
  add_sweep_flags(cycles, true);

  std::uint64_t verify_seed = 1;
  std::string level = "quick";
  CLI::App* verify = app.add_subcommand("verify", "Run the identity and bound suites");
  verify->add_option("--seed", verify_seed, "Random seed");
  verify->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--out", out_path, "Write output to this file instead of stdout");

  TablesRequest tables;
  std::string kind = "lk";
  int ti = 0, tj = 0;
  CLI::App* tab = app.add_subcommand("tables", "Dump L_k or d_k tables as CSV");
  tab->add_option("--kind", kind, "lk | dk")->check(CLI::IsMember({"lk", "dk"}));
  tab->add_option("--k-min", tables.k_min);
  tab->add_option("--k-max", tables.k_max);
  tab->add_option("--h-lo", tables.h_lo);
  tab->add_option("--h-hi", tables.h_hi);
  tab->add_option("--points", tables.points);
  CLI::Option* oi = tab->add_option("--i", ti, "Single dk table: power of cos");
  CLI::Option* oj = tab->add_option("--j", tj, "Single dk table: power of sin");
  tab->add_option("--max-degree", tables.max_degree, "dk tables for every even i + j up to this");
  tab->add_option("--out", out_path, "Write output to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot write " << out_path << '\n';
      return kUsage;
    }
  }
  std::ostream& sink = out_path.empty() ? out : file;

  sweep.method = method == "both" ? Method::both : method == "reduced" ? Method::reduced : Method::direct;
  sweep.out_format = format == "json" ? Format::json : Format::csv;
  tables.kind = kind == "dk" ? TableKind::dk : TableKind::lk;
  if (*oi) tables.i = ti;
  if (*oj) tables.j = tj;

  try {
    if (*eval) return cmd_eval(sweep, sink);
    if (*zeros) return cmd_zeros(sweep, sink);
    if (*cycles) {
      if (!cycles->count("--h-lo")) sweep.h_lo = 0.05;
      if (!cycles->count("--h-hi")) sweep.h_hi = 0.95;
      if (!cycles->count("--points")) sweep.points = 46;
      return cmd_cycles(sweep, sink);
    }
    if (*verify) {
      const VerifyReport report = run_verify(verify_seed, level == "full" ? VerifyLevel::full : VerifyLevel::quick);
      sink << report.to_text();
      return report.passed() ? kOk : kVerificationFailed;
    }
    if (*tab) return cmd_tables(tables, sink, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const ValidationError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}

}  // namespace cyclescope::cli
