#include "cotes/solver.hpp"

#include "cotes/analysis.hpp"
#include "cotes/quadrature.hpp"

#include <algorithm>
#include <utility>

namespace cotes {

namespace {

BigReal denominator_floor(int digits, const BigReal& reference) {
  return power_of_ten(-digits + 5, guarded_digits(digits)) * abs(reference);
}

// Tracks the first numerically vanishing denominator of one map evaluation.
class DenominatorGuard {
 public:
  explicit DenominatorGuard(BigReal floor) : floor_(std::move(floor)) {}

  void check(const BigReal& d, BreakdownKind kind, const char* what) {
    if (d.is_zero() || !d.is_finite()) throw Breakdown(kind, what);
    if (!near_ && abs(d) < floor_) {
      near_ = kind;
      what_ = what;
    }
  }

  void finish(const BigReal& value) const {
    if (!near_) return;
    std::optional<BigReal> tentative;
    if (value.is_finite()) tentative = value;
    throw Breakdown(*near_, what_, std::move(tentative));
  }

 private:
  BigReal floor_;
  std::optional<BreakdownKind> near_;
  const char* what_ = "";
};

}  // namespace

std::string_view wiring_name(StepWiring wiring) {
  switch (wiring) {
    case StepWiring::recursive: return "recursive";
    case StepWiring::simpson_from_newton: return "simpson-from-newton";
  }
  return "?";
}

MethodId MethodId::basic(int n, bool transform) {
  quadrature::builtin_rule(n);
  MethodId m;
  m.kind = Kind::basic;
  m.outer = n;
  m.transform = transform;
  return m;
}

MethodId MethodId::composed(int outer, int inner, bool transform) {
  quadrature::builtin_rule(outer);
  quadrature::builtin_rule(inner);
  MethodId m;
  m.kind = Kind::composed;
  m.outer = outer;
  m.inner = inner;
  m.transform = transform;
  return m;
}

MethodId MethodId::with_wiring(StepWiring w) const {
  MethodId m = *this;
  m.wiring = w;
  return m;
}

std::string MethodId::name() const {
  std::string out = "t" + std::to_string(outer);
  if (kind == Kind::composed) out += "_" + std::to_string(inner);
  if (transform) out += "+F";
  return out;
}

std::string_view breakdown_name(BreakdownKind kind) {
  switch (kind) {
    case BreakdownKind::zero_derivative: return "zero_derivative";
    case BreakdownKind::zero_denominator: return "zero_denominator";
    case BreakdownKind::domain_error: return "domain_error";
  }
  return "?";
}

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::converged_step: return "converged_step";
    case Termination::converged_residual: return "converged_residual";
    case Termination::max_iterations: return "max_iterations";
    case Termination::breakdown: return "breakdown";
    case Termination::diverged: return "diverged";
  }
  return "?";
}

Breakdown::Breakdown(BreakdownKind kind, const std::string& what, std::optional<BigReal> tentative)
    : std::runtime_error(what), kind_(kind), tentative_(std::move(tentative)) {}

SlopeFunction plain_function(const Expression& f, int digits) {
  return [f, digits](const BigReal& x) {
    Jet2 j = f.eval_jet(x, digits);
    return Slope{std::move(j.f), std::move(j.d1)};
  };
}

SlopeFunction transform_function(const Expression& f, int digits) {
  return [f, digits](const BigReal& x) {
    Jet2 j;
    try {
      j = f.eval_jet(x, digits);
    } catch (const DomainError&) {
      // An exact zero of f where f' does not exist (cbrt at 0): F extends
      // continuously with F = 0 there. The zero slope stops any further step.
      const BigReal v = f.eval(x, digits);
      if (v.is_zero()) return Slope{v, BigReal(0, guarded_digits(digits))};
      throw;
    }
    if (j.d1.is_zero()) {
      if (j.f.is_zero() || abs(j.f) < power_of_ten(-digits, guarded_digits(digits))) {
        throw DomainError("F = -f/f' is 0/0 here (removable singularity)");
      }
      throw Breakdown(BreakdownKind::zero_derivative, "f' vanishes inside F = -f/f'");
    }
    BigReal value = -(j.f / j.d1);
    BigReal slope = j.f * j.d2 / (j.d1 * j.d1) - 1;
    return Slope{std::move(value), std::move(slope)};
  };
}

SlopeFunction solved_function(const MethodId& m, const Expression& f, int digits) {
  return m.transform ? transform_function(f, digits) : plain_function(f, digits);
}

BigReal apply_t0(const Slope& at_x, const BigReal& x, const BigReal& floor) {
  DenominatorGuard guard(floor);
  guard.check(at_x.slope, BreakdownKind::zero_derivative, "f'(x) vanishes in the Newton step");
  BigReal next = x - at_x.value / at_x.slope;
  guard.finish(next);
  return next;
}

std::vector<BigReal> tn_ladder(int n, const SlopeFunction& f, const BigReal& x, const MapOptions& options) {
  quadrature::builtin_rule(n);
  const Slope at_x = f(x);
  DenominatorGuard guard(denominator_floor(options.digits, options.reference_slope.value_or(at_x.slope)));

  std::vector<BigReal> ladder;
  ladder.reserve(static_cast<std::size_t>(n) + 1);
  guard.check(at_x.slope, BreakdownKind::zero_derivative, "f'(x) vanishes in the Newton step");
  ladder.push_back(x - at_x.value / at_x.slope);

  for (int k = 1; k <= n; ++k) {
    const quadrature::RuleSpec& rule = quadrature::builtin_rule(k);
    const BigReal& base =
        (options.wiring == StepWiring::simpson_from_newton && k == 2) ? ladder.front() : ladder.back();
    const BigReal h = (base - x) / k;
    BigReal b = f(x).slope * static_cast<long>(rule.weights[0]);
    for (int i = 1; i <= k; ++i) {
      b += f(x + h * i).slope * static_cast<long>(rule.weights[static_cast<std::size_t>(i)]);
    }
    guard.check(b, BreakdownKind::zero_denominator, "quadrature denominator B_n vanishes");
    ladder.push_back(x - at_x.value * static_cast<long>(rule.c) / b);
  }
  guard.finish(ladder.back());
  return ladder;
}

BigReal apply_tn(int n, const SlopeFunction& f, const BigReal& x, const MapOptions& options) {
  return std::move(tn_ladder(n, f, x, options).back());
}

BigReal apply_tn(int n, const Expression& f, const BigReal& x, int digits, StepWiring wiring) {
  MapOptions options;
  options.digits = digits;
  options.wiring = wiring;
  return apply_tn(n, plain_function(f, digits), x.rounded_to(std::max(x.digits(), guarded_digits(digits))),
                  options);
}

BigReal apply_method(const MethodId& m, const SlopeFunction& f, const BigReal& x, const MapOptions& options) {
  MapOptions o = options;
  o.wiring = m.wiring;
  if (m.kind == MethodId::Kind::basic) return apply_tn(m.outer, f, x, o);
  const BigReal inner = apply_tn(m.inner, f, x, o);
  return apply_tn(m.outer, f, inner, o);
}

BigReal apply_method(const MethodId& m, const Expression& f, const BigReal& x, int digits) {
  MapOptions options;
  options.digits = digits;
  return apply_method(m, solved_function(m, f, digits),
                      x.rounded_to(std::max(x.digits(), guarded_digits(digits))), options);
}

ScalarProblem ScalarProblem::with_defaults(Expression f, const BigReal& x0, int digits) {
  const int g = guarded_digits(digits);
  ScalarProblem p{std::move(f),
                  std::nullopt,
                  x0.rounded_to(std::max(x0.digits(), g)),
                  digits,
                  50,
                  power_of_ten(-digits + 10, g),
                  power_of_ten(-digits + 10, g),
                  power_of_ten(6, g) * (1 + abs(x0))};
  return p;
}

void ScalarProblem::validate() const {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  if (!(step_tol > 0)) throw std::invalid_argument("step_tol must be positive");
  if (!(residual_tol > 0)) throw std::invalid_argument("residual_tol must be positive");
  if (!x0.is_finite()) throw std::invalid_argument("x0 must be finite");
  if (!(divergence_bound > abs(x0))) throw std::invalid_argument("divergence_bound must exceed |x0|");
}

Trajectory iterate(const ScalarProblem& problem, const MethodId& m) {
  problem.validate();
  Trajectory t;
  t.method = m;

  const SlopeFunction fn = solved_function(m, problem.f, problem.digits);
  auto annotate = [&](Iterate& it) {
    if (problem.known_root && it.x.is_finite()) {
      it.s = significant_digits(it.x, *problem.known_root, problem.digits);
    }
  };
  auto stop = [&](Termination why, std::optional<BreakdownKind> kind, std::string detail) {
    t.termination = why;
    t.breakdown = kind;
    t.detail = std::move(detail);
    return t;
  };

  BigReal x = problem.x0.rounded_to(std::max(problem.x0.digits(), guarded_digits(problem.digits)));
  MapOptions options;
  options.digits = problem.digits;

  Iterate first{0, x, std::nullopt, std::nullopt, std::nullopt};
  annotate(first);
  try {
    Slope s0 = fn(x);
    first.fx = std::move(s0.value);
    options.reference_slope = abs(s0.slope);
  } catch (const DomainError& e) {
    t.iterates.push_back(std::move(first));
    return stop(Termination::breakdown, BreakdownKind::domain_error, e.what());
  } catch (const Breakdown& b) {
    t.iterates.push_back(std::move(first));
    return stop(Termination::breakdown, b.kind(), b.what());
  }
  t.iterates.push_back(std::move(first));

  for (int k = 0; k < problem.max_iter; ++k) {
    BigReal next;
    try {
      next = apply_method(m, fn, x, options);
    } catch (const Breakdown& b) {
      const auto& escaped = b.tentative();
      if (escaped && abs(*escaped) > problem.divergence_bound) {
        t.iterates.back().step = *escaped - x;
        Iterate out{k + 1, *escaped, std::nullopt, std::nullopt, std::nullopt};
        annotate(out);
        t.iterates.push_back(std::move(out));
        return stop(Termination::diverged, std::nullopt,
                    std::string("near-singular denominator threw the iterate past the divergence bound (") +
                        b.what() + ")");
      }
      return stop(Termination::breakdown, b.kind(), b.what());
    } catch (const DomainError& e) {
      return stop(Termination::breakdown, BreakdownKind::domain_error, e.what());
    }

    BigReal step = next - x;
    t.iterates.back().step = step;
    Iterate it{k + 1, next, std::nullopt, std::nullopt, std::nullopt};
    annotate(it);
    if (!next.is_finite() || abs(next) > problem.divergence_bound) {
      t.iterates.push_back(std::move(it));
      return stop(Termination::diverged, std::nullopt, "iterate left the divergence bound");
    }
    try {
      it.fx = fn(next).value;
    } catch (const DomainError& e) {
      t.iterates.push_back(std::move(it));
      return stop(Termination::breakdown, BreakdownKind::domain_error, e.what());
    } catch (const Breakdown& b) {
      t.iterates.push_back(std::move(it));
      return stop(Termination::breakdown, b.kind(), b.what());
    }
    const BigReal residual = abs(*it.fx);
    t.iterates.push_back(std::move(it));
    x = std::move(next);

    if (abs(step) < problem.step_tol) return stop(Termination::converged_step, std::nullopt, "");
    if (residual < problem.residual_tol) return stop(Termination::converged_residual, std::nullopt, "");
  }
  return stop(Termination::max_iterations, std::nullopt, "");
}

}  // namespace cotes
