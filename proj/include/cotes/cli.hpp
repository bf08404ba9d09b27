#pragma once

#include "cotes/bigreal.hpp"
#include "cotes/solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cotes::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitConverged = 0,
  kExitUsage = 1,
  kExitBreakdown = 2,  // also Diverged
  kExitMaxIterations = 3,
};

/// `tN`, `tI_J` or `tIJ` (t_I applied after t_J), optional `+F` suffix for the
/// multiple-root transform. Throws std::invalid_argument.
MethodId parse_method_spec(std::string_view spec);

/// Default working precision: $COTES_DEFAULT_DIGITS, else 50.
int default_digits();

inline constexpr int kMinDigits = 15;

struct RunConfig {
  std::string function;
  std::string method = "t0";
  std::string x0;
  int digits = 50;
  int max_iter = 50;
  std::optional<std::string> step_tol;
  std::optional<std::string> residual_tol;
  std::optional<std::string> divergence_bound;
  std::optional<std::string> root;
  StepWiring wiring = StepWiring::recursive;
  std::string format = "json";
};

/// Parsed problem plus method; throws std::invalid_argument on any bad field.
struct PreparedRun {
  MethodId method;
  ScalarProblem problem;
};
PreparedRun prepare(const RunConfig& config);

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_order(const RunConfig& config, bool three_point, std::ostream& out, std::ostream& err);
int cmd_plotdata(const RunConfig& config, std::string_view metric, std::ostream& out, std::ostream& err);
int cmd_weights(int n, bool derive, std::string_view format, std::ostream& out, std::ostream& err);
int cmd_table(std::string_view id, std::optional<StepWiring> wiring, std::optional<int> digits,
              std::string_view format, std::ostream& out, std::ostream& err);
int cmd_ndsolve(std::string_view system, std::string_view kind, int digits, int max_iter, std::string_view format,
                std::ostream& out, std::ostream& err);

/// Full command line (argv[0] included). Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cotes::cli
