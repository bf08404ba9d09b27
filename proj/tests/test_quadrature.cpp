#include "cotes/quadrature.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using boost::multiprecision::cpp_rational;
namespace q = cotes::quadrature;

namespace {

// Oracle independent of the moment system: integrate each Lagrange basis
// polynomial over [0, n] exactly.
std::vector<cpp_rational> lagrange_weights(int n) {
  std::vector<cpp_rational> w;
  for (int i = 0; i <= n; ++i) {
    std::vector<cpp_rational> poly{1};  // coefficients, ascending
    cpp_rational denom = 1;
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      std::vector<cpp_rational> next(poly.size() + 1, 0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= poly[k] * j;
      }
      poly = next;
      denom *= cpp_rational(i - j);
    }
    cpp_rational integral = 0;
    cpp_rational power = n;  // n^(k+1)
    for (std::size_t k = 0; k < poly.size(); ++k) {
      integral += poly[k] * power / cpp_rational(static_cast<long>(k + 1));
      power *= n;
    }
    w.push_back(integral / denom);
  }
  return w;
}

}  // namespace

TEST(Quadrature, BuiltinSpotValues) {
  EXPECT_EQ(q::builtin_rule(0).weights, (std::vector<long long>{1}));
  EXPECT_EQ(q::builtin_rule(0).c, 1);
  EXPECT_EQ(q::builtin_rule(1).weights, (std::vector<long long>{1, 1}));
  EXPECT_EQ(q::builtin_rule(2).weights, (std::vector<long long>{1, 4, 1}));
  EXPECT_EQ(q::builtin_rule(2).c, 6);
  EXPECT_EQ(q::builtin_rule(4).weights, (std::vector<long long>{7, 32, 12, 32, 7}));
  EXPECT_EQ(q::builtin_rule(4).c, 90);
  EXPECT_EQ(q::builtin_rule(7).weights, (std::vector<long long>{751, 3577, 1323, 2989, 2989, 1323, 3577, 751}));
  EXPECT_EQ(q::builtin_rule(7).c, 17280);
}

TEST(Quadrature, DerivedEqualsBuiltin) {
  for (int n = 0; n <= q::kMaxRule; ++n) EXPECT_EQ(q::derive_rule(n), q::builtin_rule(n)) << "n=" << n;
}

TEST(Quadrature, CIsWeightSum) {
  for (int n = 0; n <= q::kMaxRule; ++n) {
    const auto& r = q::builtin_rule(n);
    EXPECT_EQ(std::accumulate(r.weights.begin(), r.weights.end(), 0LL), r.c);
  }
}

TEST(Quadrature, MomentsHoldExactlyInBothForms) {
  for (int n = 0; n <= q::kMaxRule; ++n) {
    for (auto form : {q::MomentForm::forward, q::MomentForm::mirrored}) {
      const auto ok = q::check_moments(q::builtin_rule(n), form);
      EXPECT_EQ(ok.size(), static_cast<std::size_t>(n));
      for (bool b : ok) EXPECT_TRUE(b) << "n=" << n;
    }
  }
}

TEST(Quadrature, PerturbedRuleFailsMoments) {
  q::RuleSpec r = q::builtin_rule(4);
  r.weights[1] += 1;
  r.c += 1;
  const auto ok = q::check_moments(r);
  EXPECT_FALSE(std::all_of(ok.begin(), ok.end(), [](bool b) { return b; }));
}

TEST(Quadrature, SymmetricAndPositive) {
  for (int n = 0; n <= q::kMaxRule; ++n) {
    const auto& w = q::builtin_rule(n).weights;
    for (std::size_t i = 0; i < w.size(); ++i) {
      EXPECT_GT(w[i], 0);
      EXPECT_EQ(w[i], w[w.size() - 1 - i]);
    }
  }
}

TEST(Quadrature, MatchesLagrangeIntegrationOracle) {
  for (int n = 1; n <= q::kMaxRule; ++n) {
    const auto exact = lagrange_weights(n);
    const auto& r = q::builtin_rule(n);
    // A_i / c_n = w_i / n  (weights normalised to the unit interval)
    for (int i = 0; i <= n; ++i) {
      EXPECT_EQ(cpp_rational(r.weights[static_cast<std::size_t>(i)]) / r.c,
                exact[static_cast<std::size_t>(i)] / n)
          << "n=" << n << " i=" << i;
    }
  }
}

TEST(Quadrature, RejectsUnsupportedRules) {
  EXPECT_THROW(q::builtin_rule(8), q::UnsupportedRule);
  EXPECT_THROW(q::builtin_rule(-1), q::UnsupportedRule);
  EXPECT_THROW(q::derive_rule(8), q::UnsupportedRule);
  try {
    q::builtin_rule(9);
  } catch (const q::UnsupportedRule& e) {
    EXPECT_EQ(e.n(), 9);
  }
}
