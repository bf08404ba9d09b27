#include "cotes/solver.hpp"

#include <gtest/gtest.h>

using namespace cotes;

namespace {

constexpr int kDigits = 60;

BigReal num(const char* s, int d = kDigits) { return BigReal(s, guarded_digits(d)); }
BigReal ratio(long a, long b) { return BigReal(a, guarded_digits(kDigits)) / b; }

bool near(const BigReal& a, const BigReal& b, int exponent = -(kDigits - 2)) {
  return abs(a - b) < power_of_ten(exponent, guarded_digits(kDigits)) * max(BigReal(1, 20), abs(b));
}

ScalarProblem problem(const char* f, const char* x0, int digits = kDigits) {
  return ScalarProblem::with_defaults(parse(f), num(x0, digits), digits);
}

}  // namespace

TEST(MethodId, NamesAndValidation) {
  EXPECT_EQ(MethodId::basic(2).name(), "t2");
  EXPECT_EQ(MethodId::composed(7, 6).name(), "t7_6");
  EXPECT_EQ(MethodId::basic(3, true).name(), "t3+F");
  EXPECT_THROW(MethodId::basic(8), std::out_of_range);
  EXPECT_THROW(MethodId::composed(2, -1), std::out_of_range);
}

TEST(Maps, HandValuesOnSquare) {
  const Expression f = parse("x^2-4");
  const BigReal x = num("3");
  EXPECT_TRUE(near(apply_tn(0, f, x, kDigits), ratio(13, 6)));
  EXPECT_TRUE(near(apply_tn(1, f, x, kDigits), ratio(63, 31)));
  EXPECT_TRUE(near(apply_method(MethodId::composed(0, 0), f, x, kDigits), ratio(313, 156)));
}

TEST(Maps, NewtonOnCubeRootDoublesAway) {
  const Expression f = parse("cbrt(x)");
  for (const char* a : {"0.5", "-3", "7"}) {
    EXPECT_TRUE(near(apply_tn(0, f, num(a), kDigits), num(a) * -2)) << a;
  }
}

TEST(Maps, AffineIsSolvedExactlyByEveryRule) {
  const Expression f = parse("2*x - 3");
  for (int n = 0; n <= 7; ++n) {
    for (auto w : {StepWiring::recursive, StepWiring::simpson_from_newton}) {
      EXPECT_TRUE(near(apply_tn(n, f, num("-41.5"), kDigits, w), num("1.5"))) << n;
    }
  }
}

TEST(Maps, DerivativeEvaluationCount) {
  const Expression f = parse("x^3 + 2*x - 5");
  for (int n = 0; n <= 7; ++n) {
    int calls = 0;
    const SlopeFunction base = plain_function(f, kDigits);
    const SlopeFunction counted = [&](const BigReal& x) {
      ++calls;
      return base(x);
    };
    MapOptions o;
    o.digits = kDigits;
    apply_tn(n, counted, num("1.5"), o);
    EXPECT_EQ(calls, (n + 1) * (n + 2) / 2) << "n=" << n;
  }
}

TEST(Maps, LadderMatchesIndividualMaps) {
  const Expression f = parse("tanh(x-1)");
  MapOptions o;
  o.digits = kDigits;
  const auto ladder = tn_ladder(7, plain_function(f, kDigits), num("1.3"), o);
  ASSERT_EQ(ladder.size(), 8u);
  for (int k = 0; k <= 7; ++k) {
    EXPECT_EQ(ladder[static_cast<std::size_t>(k)], apply_tn(k, f, num("1.3"), kDigits)) << k;
  }
}

TEST(Maps, RootIsFixedPoint) {
  const Expression f = parse("tanh(x-1)");
  for (int n = 0; n <= 7; ++n) EXPECT_EQ(apply_tn(n, f, num("1"), kDigits), 1L);
}

TEST(Maps, WiringOnlyChangesSimpsonAndAbove) {
  const Expression f = parse("x^3 + 2*x - 5");
  const BigReal x = num("1.6");
  for (int n : {0, 1}) {
    EXPECT_EQ(apply_tn(n, f, x, kDigits, StepWiring::recursive),
              apply_tn(n, f, x, kDigits, StepWiring::simpson_from_newton));
  }
  EXPECT_FALSE(apply_tn(2, f, x, kDigits, StepWiring::recursive) ==
               apply_tn(2, f, x, kDigits, StepWiring::simpson_from_newton));
}

// t_n(z + d) - z = O(d^(n+2)) for a simple root with f'' != 0; check at
// least superlinear contraction at three scales.
TEST(Maps, SuperlinearNearSimpleRoot) {
  const int d = 200;
  const Expression f = parse("x^2 - 2");
  const BigReal z = sqrt(BigReal(2, guarded_digits(d)));
  for (int n = 0; n <= 7; ++n) {
    for (long e : {5L, 10L, 20L}) {
      const BigReal delta = power_of_ten(-e, guarded_digits(d));
      const BigReal err = abs(apply_tn(n, f, z + delta, d) - z);
      EXPECT_TRUE(err < delta * delta * 10) << "n=" << n << " delta=1e-" << e << " err=" << err.to_string(5);
    }
  }
}

TEST(Maps, Deterministic) {
  const Expression f = parse("sin(x) - x/2");
  const BigReal a = apply_method(MethodId::composed(7, 6), f, num("2"), kDigits);
  const BigReal b = apply_method(MethodId::composed(7, 6), f, num("2"), kDigits);
  EXPECT_EQ(a.to_string(), b.to_string());
}

TEST(Maps, ScaleInvariance) {
  const BigReal x = num("1.4");
  for (int n = 0; n <= 7; ++n) {
    const BigReal a = apply_tn(n, parse("x^3 + 2*x - 5"), x, kDigits);
    const BigReal b = apply_tn(n, parse("7*(x^3 + 2*x - 5)"), x, kDigits);
    EXPECT_TRUE(near(a, b)) << n;
  }
}

TEST(Maps, ExactZeroDerivativeBreaksDown) {
  try {
    apply_tn(0, parse("x^2 - 4"), num("0"), kDigits);
    FAIL();
  } catch (const Breakdown& b) {
    EXPECT_EQ(b.kind(), BreakdownKind::zero_derivative);
    EXPECT_FALSE(b.tentative());
  }
}

TEST(Transform, ValuesAndSlope) {
  // F = -f/f' for f = x^2 - 4 at x = 3: F = -5/6, F' = f f''/f'^2 - 1 = 10/36 - 1.
  const auto s = transform_function(parse("x^2-4"), kDigits)(num("3"));
  EXPECT_TRUE(near(s.value, ratio(-5, 6)));
  EXPECT_TRUE(near(s.slope, ratio(10, 36) - 1));
  EXPECT_THROW(transform_function(parse("sin(x) - x"), kDigits)(num("0")), DomainError);
  EXPECT_THROW(transform_function(parse("x^2 - 4"), kDigits)(num("0")), Breakdown);
  const auto at_root = transform_function(parse("cbrt(x)"), kDigits)(num("0"));
  EXPECT_TRUE(at_root.value.is_zero());
}

TEST(Iterate, NewtonOnSquareConverges) {
  ScalarProblem p = problem("x^2-4", "3");
  p.known_root = num("2");
  const Trajectory t = iterate(p, MethodId::basic(0));
  EXPECT_TRUE(t.converged());
  EXPECT_TRUE(near(t.iterates[1].x, ratio(13, 6)));
  ASSERT_TRUE(t.iterates[1].s);
  for (std::size_t k = 1; k + 1 < t.iterates.size(); ++k) EXPECT_TRUE(*t.iterates[k + 1].s > *t.iterates[k].s);
  EXPECT_TRUE(abs(t.iterates.back().x - 2) < power_of_ten(-kDigits + 10, 80));
}

TEST(Iterate, TanhEscapesFromFarStarts) {
  for (const char* x0 : {"-5", "3"}) {
    const Trajectory t = iterate(problem("tanh(x-1)", x0, 30), MethodId::basic(0));
    EXPECT_EQ(t.termination, Termination::diverged) << x0 << ": " << t.detail;
  }
}

TEST(Iterate, CubeRootDivergesUntransformed) {
  const Trajectory t = iterate(problem("cbrt(x)", "0.1", 30), MethodId::basic(0));
  EXPECT_EQ(t.termination, Termination::diverged);
  for (std::size_t k = 1; k < t.iterates.size(); ++k) {
    EXPECT_TRUE(abs(t.iterates[k].x) > abs(t.iterates[k - 1].x));
  }
}

TEST(Iterate, CubeRootTransformedConvergesInOneStep) {
  ScalarProblem p = problem("cbrt(x)", "0.1", 30);
  p.known_root = num("0", 30);
  const Trajectory t = iterate(p, MethodId::basic(0, true));
  EXPECT_TRUE(t.converged());
  EXPECT_EQ(t.steps(), 1);
  EXPECT_TRUE(abs(t.iterates[1].x) < power_of_ten(-35, 40));
}

TEST(Iterate, ZeroDerivativeAtStartIsBreakdown) {
  const Trajectory t = iterate(problem("x^2 - 4", "0"), MethodId::basic(2));
  EXPECT_EQ(t.termination, Termination::breakdown);
  EXPECT_EQ(t.breakdown, BreakdownKind::zero_derivative);
}

TEST(Iterate, NodeOutsideDomainIsBreakdown) {
  // t_0(10) < 0, so the trapezoidal node lands where log is undefined.
  const Trajectory t = iterate(problem("log(x) - 1", "10"), MethodId::basic(1));
  EXPECT_EQ(t.termination, Termination::breakdown);
  EXPECT_EQ(t.breakdown, BreakdownKind::domain_error);
}

TEST(Iterate, MaxIterations) {
  ScalarProblem p = problem("x^2 - 2", "100");
  p.max_iter = 3;
  const Trajectory t = iterate(p, MethodId::basic(0));
  EXPECT_EQ(t.termination, Termination::max_iterations);
  EXPECT_EQ(t.steps(), 3);
  ASSERT_TRUE(t.iterates[2].step);
  EXPECT_TRUE(near(*t.iterates[2].step, t.iterates[3].x - t.iterates[2].x));
}

TEST(Iterate, ValidateRejectsBadProblems) {
  ScalarProblem p = problem("x", "1");
  p.max_iter = 0;
  EXPECT_THROW(iterate(p, MethodId::basic(0)), std::invalid_argument);
  p = problem("x", "1");
  p.step_tol = BigReal(0, 30);
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = problem("x", "1");
  p.divergence_bound = BigReal("0.5", 30);
  EXPECT_THROW(p.validate(), std::invalid_argument);
}
