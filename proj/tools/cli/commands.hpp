#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cyclescope::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNumerical = 2,
  kVerificationFailed = 3,
};

enum class Method { direct, reduced, both };
enum class Format { csv, json };

struct SweepRequest {
  std::string spec_path;
  double h_lo = 0.1;
  double h_hi = 0.9;
  int points = 9;
  Method method = Method::direct;
  double eps = 0.0;
  std::uint64_t seed = 1;
  Format out_format = Format::csv;
};

// Throws DomainError unless 0.01 <= h_lo < h_hi <= 0.99 and points >= 2.
void validate(const SweepRequest& req);

int cmd_eval(const SweepRequest& req, std::ostream& out);
// Prints the zero report as JSON; returns kVerificationFailed if the count exceeds the budget.
int cmd_zeros(const SweepRequest& req, std::ostream& out);
// Prints fixed points of the return map next to the zeros of I as JSON.
int cmd_cycles(const SweepRequest& req, std::ostream& out);

enum class TableKind { lk, dk };

struct TablesRequest {
  TableKind kind = TableKind::lk;
  int k_min = -2;
  int k_max = 2;
  double h_lo = 0.1;
  double h_hi = 0.9;
  int points = 9;
  // dk: either a single (i, j) or every even i + j up to max_degree.
  std::optional<int> i;
  std::optional<int> j;
  int max_degree = 8;
};

int cmd_tables(const TablesRequest& req, std::ostream& out, std::ostream& err);

// Full command line (argv[0] is the program name). Errors go to err, and every
// library exception is mapped to its exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyclescope::cli
