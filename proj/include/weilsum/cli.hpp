#pragma once

// Command-line front end. Every subcommand is reachable through run(), which
// never exits the process and writes only to the given streams.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace weilsum::cli {

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kConfigError = 2, kBudgetExceeded = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct SweepConfig {
  std::string mode;  // compute-sum, verify-identity, verify-theta, verify-eta, verify-bound, gauss-table, weilrep-matrix
  std::string lattice_path;
  std::string gram;  // inline {"gram": ...} or [[...]]; used when lattice_path is empty
  std::string alpha, beta;
  std::int64_t m = 0, n = 0, c = 1;
  std::string k;  // empty: the default weight
  IntRange m_range{-24, 24};
  IntRange n_range{-24, 24};
  std::int64_t c_max = 8;
  std::int64_t v_max = 11;
  std::string gamma;  // a,b,c,d
  int branch = 1;
  std::string kind = "plain";
  std::string gauss_mode = "closed";
  int lambda_max = 6;
  std::int64_t p = 3;
  std::string chi_mode = "product";
  double tolerance = 1e-20;
  std::optional<double> constant;
  int prec_bits = 192;
  std::string format;  // json or csv; empty picks the subcommand default
  int threads = 1;
};

/// Parses the arguments after the program name. A JSON object given with --config supplies
/// defaults for any flag; flags on the command line win. Throws ConfigError.
SweepConfig parse_args(const std::vector<std::string>& args);

int run(const SweepConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping; help text goes to out.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weilsum::cli
