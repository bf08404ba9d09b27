#include "cotes/analysis.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <utility>

namespace cotes {

namespace {

using Rational = boost::multiprecision::cpp_rational;

BigReal to_bigreal(const Rational& r, int digits) {
  const BigReal num(boost::multiprecision::numerator(r).str(), digits);
  const BigReal den(boost::multiprecision::denominator(r).str(), digits);
  return num / den;
}

// Fornberg's recursion for finite-difference weights at 0 on the given nodes.
// Result[j][i] is the weight of node i for the j-th derivative.
std::vector<std::vector<Rational>> fornberg(const std::vector<int>& nodes, int max_derivative) {
  const std::size_t count = nodes.size();
  const auto m = static_cast<std::size_t>(max_derivative);
  std::vector<std::vector<Rational>> c(count, std::vector<Rational>(m + 1, Rational(0)));
  Rational c1 = 1;
  Rational c4 = nodes[0];
  c[0][0] = 1;
  for (std::size_t i = 1; i < count; ++i) {
    const std::size_t mn = std::min(i, m);
    Rational c2 = 1;
    const Rational c5 = c4;
    c4 = nodes[i];
    for (std::size_t j = 0; j < i; ++j) {
      const Rational c3 = Rational(nodes[i] - nodes[j]);
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (Rational(static_cast<long>(k)) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - Rational(static_cast<long>(k)) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<std::vector<Rational>> by_derivative(m + 1, std::vector<Rational>(count));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k <= m; ++k) by_derivative[k][i] = c[i][k];
  }
  return by_derivative;
}

OrderEstimate finish_estimate(std::vector<BigReal> per_pair) {
  OrderEstimate est;
  est.samples_used = static_cast<int>(per_pair.size());
  est.q = per_pair.back();
  for (std::size_t i = per_pair.size() - 1; i >= 1; --i) {
    if (abs(per_pair[i] - per_pair[i - 1]).to_double() < kStableSpread) {
      est.q = per_pair[i];
      est.stable = true;
      break;
    }
  }
  est.per_pair = std::move(per_pair);
  return est;
}

}  // namespace

BigReal significant_digits(const BigReal& x, const BigReal& z, int precision) {
  const BigReal err = abs(z - x);
  if (err.is_zero()) return BigReal(precision, guarded_digits(precision));
  return -log10(err);
}

OrderEstimate estimate_order(const Trajectory& traj, const BigReal& reference_root, int digits) {
  const BigReal floor = power_of_ten(-digits + 15, guarded_digits(digits));

  std::vector<BigReal> errors;
  bool hit_floor = false;
  for (const Iterate& it : traj.iterates) {
    if (!it.x.is_finite()) break;
    BigReal e = abs(reference_root - it.x);
    if (errors.empty() && !(e < 1)) continue;
    if (e < floor) {
      hit_floor = true;
      break;
    }
    if (!errors.empty() && !(e < errors.back())) break;
    errors.push_back(std::move(e));
  }

  if (errors.size() < 4) {
    if (hit_floor) {
      throw AnalysisError(AnalysisErrorKind::roundoff_floor,
                          "errors reach the roundoff floor 1e" + std::to_string(-digits + 15) + " after only " +
                              std::to_string(errors.size()) + " usable iterates; raise the precision");
    }
    throw AnalysisError(AnalysisErrorKind::insufficient_data,
                        "need 4 iterates with decreasing errors below 1, have " + std::to_string(errors.size()));
  }

  std::vector<BigReal> per_pair;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) per_pair.push_back(log(errors[k + 1]) / log(errors[k]));
  return finish_estimate(std::move(per_pair));
}

OrderEstimate estimate_order_from_steps(const Trajectory& traj, int digits) {
  const BigReal floor = power_of_ten(-digits + 15, guarded_digits(digits));
  std::vector<BigReal> steps;
  bool hit_floor = false;
  for (const Iterate& it : traj.iterates) {
    if (!it.step || !it.step->is_finite()) break;
    BigReal d = abs(*it.step);
    if (d < floor) {
      hit_floor = true;
      break;
    }
    if (!steps.empty() && !(d < steps.back())) {
      // Still in the pre-asymptotic phase; restart the run.
      steps.clear();
    }
    steps.push_back(std::move(d));
  }
  if (steps.size() < 5) {
    throw AnalysisError(hit_floor ? AnalysisErrorKind::roundoff_floor : AnalysisErrorKind::insufficient_data,
                        "need 5 decreasing steps above the roundoff floor, have " + std::to_string(steps.size()));
  }
  std::vector<BigReal> per_pair;
  for (std::size_t k = 1; k + 1 < steps.size(); ++k) {
    per_pair.push_back(log(steps[k + 1] / steps[k]) / log(steps[k] / steps[k - 1]));
  }
  return finish_estimate(std::move(per_pair));
}

std::vector<BigReal> error_from_steps(const Trajectory& traj) {
  std::vector<BigReal> out;
  for (std::size_t k = 0; k + 1 < traj.iterates.size(); ++k) {
    out.push_back(traj.iterates[k + 1].x - traj.iterates[k].x);
  }
  return out;
}

std::vector<std::vector<BigReal>> central_difference_weights(int half_width, int max_derivative, int digits) {
  std::vector<int> nodes;
  for (int m = -half_width; m <= half_width; ++m) nodes.push_back(m);
  const auto exact = fornberg(nodes, max_derivative);
  std::vector<std::vector<BigReal>> out;
  for (const auto& row : exact) {
    std::vector<BigReal> converted;
    for (const auto& w : row) converted.push_back(to_bigreal(w, digits));
    out.push_back(std::move(converted));
  }
  return out;
}

std::vector<BigReal> map_derivatives_at(const ScalarMap& map, const BigReal& z, int max_order, int digits) {
  if (max_order < 1 || max_order > 5) throw std::invalid_argument("max_order must be in 1..5");
  if (digits < 50 * max_order) {
    throw std::invalid_argument("map_derivatives_at needs at least " + std::to_string(50 * max_order) + " digits");
  }
  const int g = guarded_digits(digits);
  const BigReal center = z.rounded_to(std::max(z.digits(), g));

  const BigReal tz = map(center);
  if (!(abs(tz - center) < power_of_ten(-digits / 2, g))) {
    throw std::invalid_argument("z is not a fixed point of the map at working precision");
  }

  const int half = max_order;
  const auto weights = central_difference_weights(half, max_order, g);
  const BigReal h0 = power_of_ten(-(digits / (max_order + 2)), g);

  // Values on the finest grid h0/4 cover all three levels: offsets m*h0/4.
  std::vector<BigReal> fine;
  const int span = 4 * half;
  for (int m = -span; m <= span; ++m) {
    fine.push_back(m == 0 ? tz : map(center + h0 * m / 4));
  }
  auto sample = [&](int m, int scale) -> const BigReal& {
    return fine[static_cast<std::size_t>(m * scale + span)];
  };

  std::vector<BigReal> out;
  for (int j = 1; j <= max_order; ++j) {
    const auto& w = weights[static_cast<std::size_t>(j)];
    auto difference = [&](int scale) {  // step h0 * scale / 4
      BigReal acc(0, g);
      for (int m = -half; m <= half; ++m) acc += w[static_cast<std::size_t>(m + half)] * sample(m, scale);
      const BigReal h = h0 * scale / 4;
      return acc / pow(h, static_cast<long>(j));
    };
    const BigReal d_h = difference(4);
    const BigReal d_h2 = difference(2);
    const BigReal d_h4 = difference(1);

    // Central stencils on 2*half+1 points have even error terms starting at
    // this power of h.
    const long a = 2 * ((2 * half + 2 - j) / 2);
    const long f1 = 1L << a;
    const long f2 = 1L << (a + 2);
    const BigReal r1_h = (d_h2 * f1 - d_h) / (f1 - 1);
    const BigReal r1_h2 = (d_h4 * f1 - d_h2) / (f1 - 1);
    BigReal r2 = (r1_h2 * f2 - r1_h) / (f2 - 1);

    const BigReal scale = max(BigReal(1, g), abs(r2));
    if (!(abs(r2 - r1_h2) / scale < BigReal("1e-5", g))) {
      throw AnalysisError(AnalysisErrorKind::roundoff_floor,
                          "Richardson levels disagree for derivative " + std::to_string(j));
    }
    out.push_back(std::move(r2));
  }
  return out;
}

std::vector<BigReal> map_derivatives_at(const MethodId& m, const Expression& f, const BigReal& z, int max_order,
                                        int digits) {
  const SlopeFunction fn = solved_function(m, f, digits);
  MapOptions options;
  options.digits = digits;
  return map_derivatives_at([&](const BigReal& x) { return apply_method(m, fn, x, options); }, z, max_order,
                            digits);
}

}  // namespace cotes
