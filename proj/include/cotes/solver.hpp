#pragma once

#include "cotes/bigreal.hpp"
#include "cotes/expr.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cotes {

/// Where the step h_k of t_k comes from.
enum class StepWiring {
  /// h_k = (t_{k-1}(x) - x) / k for every k >= 1.
  recursive,
  /// Same, except h_2 = (t_0(x) - x) / 2. The reference significant-digit
  /// tables (`cotes table`) use this wiring. It drops the generic order of
  /// t_2 from four to three.
  simpson_from_newton,
};

std::string_view wiring_name(StepWiring wiring);

/// Identifies an iterative map: t_n, the composition t_i(t_j(x)), optionally
/// applied to F = -f/f' instead of f.
struct MethodId {
  enum class Kind { basic, composed };

  Kind kind = Kind::basic;
  int outer = 0;  // n for basic, i for composed
  int inner = 0;  // j for composed (applied first)
  bool transform = false;
  StepWiring wiring = StepWiring::recursive;

  static MethodId basic(int n, bool transform = false);
  static MethodId composed(int outer, int inner, bool transform = false);
  MethodId with_wiring(StepWiring w) const;

  /// "t2", "t7_6", "t3+F".
  std::string name() const;

  friend bool operator==(const MethodId&, const MethodId&) = default;
};

/// Function value and first derivative at a point.
struct Slope {
  BigReal value;
  BigReal slope;
};

using SlopeFunction = std::function<Slope(const BigReal&)>;

/// (f, f') from an expression at working precision `digits`.
SlopeFunction plain_function(const Expression& f, int digits);

/// (F, F') for F = -f/f', F' = -1 + f f'' / f'^2. Where f' vanishes the
/// evaluator raises Breakdown(zero_derivative), or DomainError when f vanishes
/// too (the removable 0/0 at a multiple root). At an exact zero of f where f'
/// itself is undefined, F = 0 with slope 0.
SlopeFunction transform_function(const Expression& f, int digits);

enum class BreakdownKind { zero_derivative, zero_denominator, domain_error };

std::string_view breakdown_name(BreakdownKind kind);

/// A denominator of the map vanished numerically. When the denominator was
/// tiny but not exactly zero, `tentative` holds the (huge-step) value the map
/// produced anyway.
class Breakdown : public std::runtime_error {
 public:
  Breakdown(BreakdownKind kind, const std::string& what, std::optional<BigReal> tentative = std::nullopt);
  BreakdownKind kind() const { return kind_; }
  const std::optional<BigReal>& tentative() const { return tentative_; }

 private:
  BreakdownKind kind_;
  std::optional<BigReal> tentative_;
};

struct MapOptions {
  int digits = 50;
  StepWiring wiring = StepWiring::recursive;
  /// |f'| reference for the breakdown threshold 10^(-digits+5)*|reference|.
  /// Defaults to |f'(x)| at the point the map is applied to.
  std::optional<BigReal> reference_slope;
};

/// Newton step x - f/f' from a slope already evaluated at x.
BigReal apply_t0(const Slope& at_x, const BigReal& x, const BigReal& denominator_floor);

/// t_0(x), ..., t_n(x), each computed once, bottom up.
std::vector<BigReal> tn_ladder(int n, const SlopeFunction& f, const BigReal& x, const MapOptions& options);

BigReal apply_tn(int n, const SlopeFunction& f, const BigReal& x, const MapOptions& options);
BigReal apply_tn(int n, const Expression& f, const BigReal& x, int digits,
                 StepWiring wiring = StepWiring::recursive);

BigReal apply_method(const MethodId& m, const SlopeFunction& f, const BigReal& x, const MapOptions& options);
BigReal apply_method(const MethodId& m, const Expression& f, const BigReal& x, int digits);

/// The function the method actually iterates on: f, or F when transformed.
SlopeFunction solved_function(const MethodId& m, const Expression& f, int digits);

struct ScalarProblem {
  Expression f;
  std::optional<BigReal> known_root;
  BigReal x0;
  int digits = 50;
  int max_iter = 50;
  BigReal step_tol;
  BigReal residual_tol;
  BigReal divergence_bound;

  /// Tolerances 10^(-digits+10), divergence bound 10^6 (1 + |x0|).
  static ScalarProblem with_defaults(Expression f, const BigReal& x0, int digits);
  /// Throws std::invalid_argument on a malformed problem.
  void validate() const;
};

enum class Termination { converged_step, converged_residual, max_iterations, breakdown, diverged };

std::string_view termination_name(Termination t);

struct Iterate {
  int k = 0;
  BigReal x;
  std::optional<BigReal> fx;    // value of the solved function at x
  std::optional<BigReal> step;  // x_{k+1} - x_k
  std::optional<BigReal> s;     // significant digits when the root is known
};

struct Trajectory {
  MethodId method;
  std::vector<Iterate> iterates;
  Termination termination = Termination::max_iterations;
  std::optional<BreakdownKind> breakdown;
  std::string detail;

  bool converged() const {
    return termination == Termination::converged_step || termination == Termination::converged_residual;
  }
  /// Number of map applications recorded.
  int steps() const { return static_cast<int>(iterates.size()) - 1; }
};

Trajectory iterate(const ScalarProblem& problem, const MethodId& m);

}  // namespace cotes
