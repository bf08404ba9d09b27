#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cotes::quadrature {

/// Largest closed rule supported; from n = 8 on some weights turn negative.
inline constexpr int kMaxRule = 7;

/// Integer weights A_0..A_n of the closed Newton-Cotes rule with n+1 nodes,
/// scaled so that c (their sum) is the least integer making every weight an
/// integer.
struct RuleSpec {
  int n = 0;
  std::vector<long long> weights;
  long long c = 0;

  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

class UnsupportedRule : public std::out_of_range {
 public:
  explicit UnsupportedRule(int n);
  int n() const { return n_; }

 private:
  int n_;
};

/// Tabulated rule for 0 <= n <= 7. n = 0 is the left rectangle rule.
const RuleSpec& builtin_rule(int n);

/// Solves the moment system on [0, n] by fraction-free elimination over the
/// integers, then rescales to the least common integer form.
RuleSpec derive_rule(int n);

enum class MomentForm {
  forward,   // sum A_i (i/n)^j
  mirrored,  // sum A_i ((n-i)/n)^j
};

/// Entry j-1 tells whether sum_i A_i (i/n)^j == c/(j+1) holds exactly, for
/// j = 1..n. Empty for n = 0.
std::vector<bool> check_moments(const RuleSpec& rule, MomentForm form = MomentForm::forward);

}  // namespace cotes::quadrature
