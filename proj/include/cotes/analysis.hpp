#pragma once

#include "cotes/bigreal.hpp"
#include "cotes/expr.hpp"
#include "cotes/solver.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace cotes {

/// s = -log10|z - x|; the exact hit x == z returns `precision`.
BigReal significant_digits(const BigReal& x, const BigReal& z, int precision);

enum class AnalysisErrorKind { insufficient_data, roundoff_floor };

class AnalysisError : public std::runtime_error {
 public:
  AnalysisError(AnalysisErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  AnalysisErrorKind kind() const { return kind_; }

 private:
  AnalysisErrorKind kind_;
};

struct OrderEstimate {
  BigReal q;
  int samples_used = 0;
  std::vector<BigReal> per_pair;
  /// The reported q and its predecessor differ by less than kStableSpread.
  bool stable = false;
};

inline constexpr double kStableSpread = 0.15;

/// q_k = ln|e_{k+1}| / ln|e_k| with e_k = z - x_k.
///
/// Leading iterates with |e_k| >= 1 are skipped; the usable run then ends at
/// the first error that stops decreasing or drops under 10^(-digits+15).
/// Needs four usable iterates (three q_k). The reported q is the last q_k
/// that agrees with its predecessor within kStableSpread, else the last q_k.
OrderEstimate estimate_order(const Trajectory& traj, const BigReal& reference_root, int digits);

/// Three-point computational order from successive steps only:
/// q_k = ln(d_{k+1}/d_k) / ln(d_k/d_{k-1}), d_k = |x_{k+1} - x_k|.
OrderEstimate estimate_order_from_steps(const Trajectory& traj, int digits);

/// e_k ~ x_{k+1} - x_k for each consecutive pair of iterates.
std::vector<BigReal> error_from_steps(const Trajectory& traj);

using ScalarMap = std::function<BigReal(const BigReal&)>;

/// [t'(z), ..., t^(max_order)(z)] by central differences on 2*max_order+1
/// points, step 10^(-digits/(max_order+2)), two Richardson levels.
/// Requires 1 <= max_order <= 5 and digits >= 50*max_order.
std::vector<BigReal> map_derivatives_at(const ScalarMap& map, const BigReal& z, int max_order, int digits);
std::vector<BigReal> map_derivatives_at(const MethodId& m, const Expression& f, const BigReal& z, int max_order,
                                        int digits);

/// Exact central-difference weights for derivatives 0..max_derivative on the
/// integer offsets -half_width..half_width. Row j holds the weights of the
/// j-th derivative.
std::vector<std::vector<BigReal>> central_difference_weights(int half_width, int max_derivative, int digits);

}  // namespace cotes
