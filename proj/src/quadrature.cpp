#include "cotes/quadrature.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <numeric>
#include <utility>

namespace cotes::quadrature {

namespace mp = boost::multiprecision;
using Integer = mp::cpp_int;
using Rational = mp::cpp_rational;

namespace {

const std::array<RuleSpec, kMaxRule + 1>& table() {
  static const std::array<RuleSpec, kMaxRule + 1> rules = {{
      {0, {1}, 1},
      {1, {1, 1}, 2},
      {2, {1, 4, 1}, 6},
      {3, {1, 3, 3, 1}, 8},
      {4, {7, 32, 12, 32, 7}, 90},
      {5, {19, 75, 50, 50, 75, 19}, 288},
      {6, {41, 216, 27, 272, 27, 216, 41}, 840},
      {7, {751, 3577, 1323, 2989, 2989, 1323, 3577, 751}, 17280},
  }};
  return rules;
}

void require_supported(int n) {
  if (n < 0 || n > kMaxRule) throw UnsupportedRule(n);
}

Integer ipow(long long base, int e) {
  Integer r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

// Bareiss elimination on the augmented integer system, then exact back
// substitution. Row j of the moment system is multiplied by (j+1) so every
// entry is an integer: (j+1) * sum_i i^j A_i = n^(j+1).
std::vector<Rational> solve_moment_system(int n) {
  const int size = n + 1;
  std::vector<std::vector<Integer>> m(size, std::vector<Integer>(size + 1));
  for (int j = 0; j < size; ++j) {
    for (int i = 0; i < size; ++i) m[j][i] = Integer(j + 1) * ipow(i, j);
    m[j][size] = ipow(n, j + 1);
  }

  Integer previous = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = k + 1;
      while (swap_row < size && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == size) throw std::logic_error("moment system is singular");
      std::swap(m[k], m[swap_row]);
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j <= size; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
      }
      m[i][k] = 0;
    }
    previous = m[k][k];
  }

  std::vector<Rational> a(size);
  for (int i = size - 1; i >= 0; --i) {
    Rational acc = Rational(m[i][size]);
    for (int j = i + 1; j < size; ++j) acc -= Rational(m[i][j]) * a[j];
    a[i] = acc / Rational(m[i][i]);
  }
  return a;
}

}  // namespace

UnsupportedRule::UnsupportedRule(int n)
    : std::out_of_range("closed Newton-Cotes rule n=" + std::to_string(n) +
                        " is not supported (valid range 0.." + std::to_string(kMaxRule) + ")"),
      n_(n) {}

const RuleSpec& builtin_rule(int n) {
  require_supported(n);
  return table()[static_cast<std::size_t>(n)];
}

RuleSpec derive_rule(int n) {
  require_supported(n);
  if (n == 0) return RuleSpec{0, {1}, 1};

  const std::vector<Rational> raw = solve_moment_system(n);

  // Least scale factor turning every weight into an integer.
  Integer common_den = 1;
  for (const auto& w : raw) common_den = mp::lcm(common_den, mp::denominator(w));
  Integer common_num = 0;
  for (const auto& w : raw) {
    common_num = mp::gcd(common_num, mp::numerator(w) * (common_den / mp::denominator(w)));
  }
  const Rational scale = Rational(common_den, common_num);

  RuleSpec rule;
  rule.n = n;
  for (const auto& w : raw) {
    const Rational scaled = w * scale;
    if (mp::denominator(scaled) != 1) throw std::logic_error("rescaling left a fractional weight");
    rule.weights.push_back(static_cast<long long>(mp::numerator(scaled)));
  }
  rule.c = std::accumulate(rule.weights.begin(), rule.weights.end(), 0LL);
  return rule;
}

std::vector<bool> check_moments(const RuleSpec& rule, MomentForm form) {
  std::vector<bool> out;
  const int n = rule.n;
  for (int j = 1; j <= n; ++j) {
    Rational sum = 0;
    for (int i = 0; i <= n; ++i) {
      const int node = form == MomentForm::forward ? i : n - i;
      Rational term = Rational(rule.weights[static_cast<std::size_t>(i)]);
      for (int e = 0; e < j; ++e) term *= Rational(node, n);
      sum += term;
    }
    out.push_back(sum == Rational(rule.c, j + 1));
  }
  return out;
}

}  // namespace cotes::quadrature
