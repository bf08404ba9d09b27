// Acceptance suite: one PASS/FAIL line per criterion, plus INFO lines with
// the numbers behind each verdict. Exit status is the number of failures.

#include "cotes/analysis.hpp"
#include "cotes/multivariate.hpp"
#include "cotes/quadrature.hpp"
#include "cotes/solver.hpp"
#include "cotes/tables.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cotes;
using nd::operator-;

namespace {

int failures = 0;

struct Check {
  bool ok = true;
  std::ostringstream info;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      info << "  miss: " << what << '\n';
    }
  }
};

void criterion(int id, const char* title, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.info << "  exception: " << e.what() << '\n';
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > budget_s) {
    c.ok = false;
    c.info << "  miss: runtime " << elapsed << " s over budget " << budget_s << " s\n";
  }
  std::printf("%s %2d %s (%.2f s, budget %.0f s)\n", c.ok ? "PASS" : "FAIL", id, title, elapsed, budget_s);
  std::fputs(c.info.str().c_str(), stdout);
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

// Checks each s row of a table against an absolute tolerance and prints the
// recursive-wiring values alongside for comparison.
void table_rows(Check& c, const std::string& id, double tol) {
  const auto report = tables::compute_table(id, StepWiring::simpson_from_newton);
  const auto plain = tables::compute_table(id, StepWiring::recursive);
  c.info << "  INFO " << id << " method  computed  reference  |diff|  (recursive wiring)\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    const double diff = r.deviation()->to_double();
    c.info << "  INFO " << id << ' ' << r.method << "  " << fmt(r.computed.to_double()) << "  " << *r.reference
           << "  " << fmt(diff) << "  (" << fmt(plain.rows[i].computed.to_double()) << ")\n";
    c.require(diff <= tol, id + " " + r.method + " |diff| " + fmt(diff) + " > " + fmt(tol, 2));
  }
}

// Root of x^3 + 2x - 5 by bisection on [1, 2] at `digits`.
BigReal bisection_root(int digits) {
  const int g = guarded_digits(digits);
  BigReal lo(1, g), hi(2, g);
  const BigReal width = power_of_ten(-digits - 2, g);
  auto f = [](const BigReal& x) { return x * x * x + x * 2 - 5; };
  while (hi - lo > width) {
    BigReal mid = (lo + hi) / 2;
    if (f(mid).sign() > 0) {
      hi = std::move(mid);
    } else {
      lo = std::move(mid);
    }
  }
  return (lo + hi) / 2;
}

OrderEstimate generic_order(const MethodId& m, const BigReal& root, int digits, const char* x0) {
  ScalarProblem p = ScalarProblem::with_defaults(parse("x^3 + 2*x - 5"), BigReal(x0, guarded_digits(digits)), digits);
  p.known_root = root;
  return estimate_order(iterate(p, m), root, digits);
}

std::string per_pair(const OrderEstimate& e) {
  std::string s;
  for (const auto& q : e.per_pair) s += (s.empty() ? "" : ", ") + fmt(q.to_double(), 3);
  return s;
}

}  // namespace

int main() {
  criterion(1, "rule weights exact, moment identities exact", 1.0, [](Check& c) {
    const std::vector<std::vector<long long>> expected = {{1},
                                                          {1, 1},
                                                          {1, 4, 1},
                                                          {1, 3, 3, 1},
                                                          {7, 32, 12, 32, 7},
                                                          {19, 75, 50, 50, 75, 19},
                                                          {41, 216, 27, 272, 27, 216, 41},
                                                          {751, 3577, 1323, 2989, 2989, 1323, 3577, 751}};
    const long long cs[] = {1, 2, 6, 8, 90, 288, 840, 17280};
    for (int n = 0; n <= 7; ++n) {
      const auto& b = quadrature::builtin_rule(n);
      const auto d = quadrature::derive_rule(n);
      c.require(b.weights == expected[static_cast<std::size_t>(n)] && b.c == cs[n],
                "builtin n=" + std::to_string(n));
      c.require(d == b, "derived n=" + std::to_string(n));
      for (auto form : {quadrature::MomentForm::forward, quadrature::MomentForm::mirrored}) {
        for (bool ok : quadrature::check_moments(d, form)) c.require(ok, "moments n=" + std::to_string(n));
      }
    }
  });

  criterion(2, "one iteration of t0..t7 on tanh(x-1) from 1.1, s within 0.15", 5.0,
            [](Check& c) { table_rows(c, "tab1nn", 0.15); });

  criterion(3, "composed maps t21..t76 and t12..t67, s within 0.3", 30.0, [](Check& c) {
    table_rows(c, "tab1nnA", 0.3);
    table_rows(c, "tab1nnB", 0.3);
  });

  criterion(4, "triple root of sin(x)-x: raw f within 0.05, transformed F within 0.2", 10.0, [](Check& c) {
    table_rows(c, "tabnova1", 0.05);
    table_rows(c, "tabnova2", 0.2);
  });

  criterion(5, "t7_6 on x^11+4x^2-10 from 2: s after 3 iterations, step errors to 5 figures", 300.0, [](Check& c) {
    const auto report = tables::compute_table("tabpol1", StepWiring::simpson_from_newton);
    c.require(report.digits >= 2600, "precision below 2600 digits");
    for (const auto& r : report.rows) {
      if (r.quantity == "s" && r.method == "t7_6") {
        const double diff = r.deviation()->to_double();
        c.info << "  INFO s(t7_6) = " << r.computed.to_string(8) << ", reference 2410.6\n";
        c.require(diff <= 2.0, "s |diff| " + fmt(diff));
      } else if (r.quantity[0] == 'e') {
        const std::string got = r.computed.to_string(5);
        const std::string want = BigReal(*r.reference, 30).to_string(5);
        c.info << "  INFO " << r.quantity << " = " << r.computed.to_string(8) << ", reference " << *r.reference
               << '\n';
        c.require(got == want, r.quantity + " " + got + " vs " + want);
      }
    }
    const auto plain = tables::compute_table("tabpol1", StepWiring::recursive);
    for (const auto& r : plain.rows) {
      c.info << "  INFO recursive wiring " << r.method << ' ' << r.quantity << " = " << r.computed.to_string(6)
             << '\n';
    }
  });

  criterion(6, "map derivatives at z=1 for tanh: t0, t1, t2 within 1% (zeros within 1e-3)", 120.0, [](Check& c) {
    const auto report = tables::compute_table("tab1", StepWiring::simpson_from_newton);
    for (const auto& r : report.rows) {
      // The criterion lists every t0 entry, t1's third and t2's fifth.
      const bool listed = r.method == "t0" || (r.method == "t1" && r.quantity == "d3") ||
                          (r.method == "t2" && r.quantity == "d5");
      if (!listed) continue;
      const double ref = std::stod(*r.reference);
      const double got = r.computed.to_double();
      const bool ok = ref == 0.0 ? std::fabs(got) <= 1e-3 : std::fabs(got - ref) <= 0.01 * std::fabs(ref);
      c.info << "  INFO " << r.method << ' ' << r.quantity << " = " << r.computed.to_string(10) << ", reference "
             << *r.reference << '\n';
      c.require(ok, r.method + " " + r.quantity);
    }
    const auto plain = tables::compute_table("tab1", StepWiring::recursive);
    c.info << "  INFO recursive wiring t2 d5 = " << plain.rows.back().computed.to_string(10) << '\n';
  });

  criterion(7, "order of t_n >= n + 1.8 on x^3+2x-5 (bisection root), n = 0..5", 120.0, [](Check& c) {
    const int digits = 3000;
    const BigReal root = bisection_root(4 * digits);
    for (int n = 0; n <= 5; ++n) {
      const auto est = generic_order(MethodId::basic(n), root, digits, "1.5");
      c.info << "  INFO t" << n << " q = " << fmt(est.q.to_double(), 3) << " (pairs " << per_pair(est) << ")\n";
      c.require(est.q.to_double() >= n + 1.8, "t" + std::to_string(n));
    }
  });

  criterion(8, "edge cases: tanh escapes, cbrt repels, transformed cbrt exact", 10.0, [](Check& c) {
    const int d = 50;
    const int g = guarded_digits(d);
    for (const char* x0 : {"-5", "3"}) {
      const auto t = iterate(ScalarProblem::with_defaults(parse("tanh(x-1)"), BigReal(x0, g), d), MethodId::basic(0));
      c.info << "  INFO tanh from " << x0 << ": " << termination_name(t.termination) << " after " << t.steps()
             << " steps\n";
      c.require(t.termination == Termination::diverged, std::string("tanh from ") + x0);
    }
    const auto raw = iterate(ScalarProblem::with_defaults(parse("cbrt(x)"), BigReal("0.1", g), d), MethodId::basic(0));
    bool doubling = raw.steps() >= 2;
    for (std::size_t k = 1; k < raw.iterates.size(); ++k) {
      doubling = doubling && abs(raw.iterates[k].x + raw.iterates[k - 1].x * 2) <
                                 power_of_ten(-d + 5, g) * abs(raw.iterates[k].x);
    }
    c.info << "  INFO raw cbrt: " << termination_name(raw.termination) << " after " << raw.steps() << " steps\n";
    c.require(raw.termination == Termination::diverged && doubling, "raw cbrt repels with factor -2");
    const auto tr =
        iterate(ScalarProblem::with_defaults(parse("cbrt(x)"), BigReal("0.1", g), d), MethodId::basic(0, true));
    c.info << "  INFO transformed cbrt: " << termination_name(tr.termination) << " after " << tr.steps()
           << " step(s), |x1| = " << abs(tr.iterates.back().x).to_string(3) << '\n';
    c.require(tr.converged() && tr.steps() == 1 && abs(tr.iterates[1].x) < power_of_ten(-d, g),
              "transformed cbrt in one step");
  });

  criterion(9, "multivariate: d=1 embeddings, affine in one step, circle-line residual < 1e-40", 10.0, [](Check& c) {
    const int d = 50;
    const int g = guarded_digits(d);
    const Expression f = parse("x^3 + 2*x - 5");
    nd::VectorFunction v;
    v.dimension = 1;
    v.residual = [&](const nd::Vector& x) { return nd::Vector{f.eval(x[0], d)}; };
    v.jacobian = [&](const nd::Vector& x) {
      nd::Matrix j(1, 1, g);
      j(0, 0) = f.eval_jet(x[0], d).d1;
      return j;
    };
    const std::pair<nd::StepKind, int> kinds[] = {
        {nd::StepKind::newton, 0}, {nd::StepKind::trapezoidal, 1}, {nd::StepKind::simpson, 2}};
    for (const auto& [kind, n] : kinds) {
      const BigReal x0("1.9", g);
      const BigReal diff = abs(nd::nd_step(kind, v, {x0}, d)[0] - apply_tn(n, f, x0, d));
      c.info << "  INFO d=1 " << nd::step_kind_name(kind) << " vs t" << n << ": |diff| = " << diff.to_string(3)
             << '\n';
      c.require(diff < power_of_ten(-d, g), std::string("embedding ") + std::string(nd::step_kind_name(kind)));

      nd::StopCriteria stop;
      stop.digits = d;
      const auto affine = nd::demo_system("affine", d);
      const auto ta = nd::nd_iterate(affine.f, affine.start, kind, stop);
      const BigReal err1 = nd::max_norm(ta.iterates.at(1).x - affine.solution);
      c.require(ta.converged() && err1 < power_of_ten(-d, g), "affine one step");

      const auto circle = nd::demo_system("circle-line", d);
      const auto tc = nd::nd_iterate(circle.f, circle.start, kind, stop);
      const BigReal res = nd::max_norm(circle.f.residual(tc.iterates.back().x));
      c.info << "  INFO circle-line " << nd::step_kind_name(kind) << ": " << tc.iterates.size() - 1
             << " steps, residual " << res.to_string(3) << '\n';
      c.require(tc.converged() && res < power_of_ten(-40, g), "circle-line residual");
    }
  });

  criterion(10, "t2 with h2 from t0 measures order < 3.5, recursive t2 >= 3.8", 60.0, [](Check& c) {
    const int digits = 1500;
    const BigReal root = bisection_root(4 * digits);
    const auto wrong = generic_order(MethodId::basic(2).with_wiring(StepWiring::simpson_from_newton), root, digits,
                                     "1.5");
    const auto right = generic_order(MethodId::basic(2), root, digits, "1.5");
    c.info << "  INFO simpson-from-newton q = " << fmt(wrong.q.to_double(), 3) << " (pairs " << per_pair(wrong)
           << ")\n";
    c.info << "  INFO recursive q = " << fmt(right.q.to_double(), 3) << " (pairs " << per_pair(right) << ")\n";
    c.require(wrong.q.to_double() < 3.5 && wrong.q.to_double() > 2.5, "mis-wired order near 3");
    c.require(right.q.to_double() >= 3.8, "recursive order");
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures);
  return failures;
}
