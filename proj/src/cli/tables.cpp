#include "cotes/tables.hpp"

#include "cotes/analysis.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <stdexcept>

namespace cotes::tables {

namespace {

using Clock = std::chrono::steady_clock;

struct RowJob {
  std::string method;
  std::string quantity;
  std::optional<std::string> reference;
  std::optional<std::string> order;
  std::function<BigReal()> compute;
};

// Rows that share one computation (derivative vectors, step sequences) are
// produced by one job returning several values.
struct GroupJob {
  std::vector<RowJob> rows;  // compute unused; filled from `values`
  std::function<std::vector<BigReal>()> values;
};

const char* const kOddEvenOrders[] = {"3", "3", "5", "5", "7", "7", "9", "9"};
const char* const kComposedOrders[] = {"15", "25", "35", "49", "63", "81"};

// s after `iterations` applications of m from x0, through the same solver
// path `cotes solve` uses.
BigReal digits_after(const MethodId& m, const std::string& function, const std::string& x0, const BigReal& root,
                     int iterations, int digits) {
  const int g = guarded_digits(digits);
  ScalarProblem p = ScalarProblem::with_defaults(parse(function), BigReal(x0, g), digits);
  p.known_root = root;
  p.max_iter = iterations;
  const Trajectory t = iterate(p, m);
  if (t.steps() < iterations || !t.iterates.back().s) {
    throw std::runtime_error(m.name() + " stopped after " + std::to_string(t.steps()) + " iterations (" +
                             std::string(termination_name(t.termination)) + ")");
  }
  return *t.iterates.back().s;
}

std::vector<GroupJob> single_rows(std::vector<RowJob> rows) {
  std::vector<GroupJob> out;
  for (RowJob& r : rows) {
    GroupJob g;
    auto compute = r.compute;
    g.values = [compute] { return std::vector<BigReal>{compute()}; };
    g.rows.push_back(std::move(r));
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GroupJob> derivative_table(StepWiring wiring, int digits) {
  // 82/3 to more digits than any tolerance needs.
  const std::vector<std::vector<std::string>> refs = {{"0", "0", "-4", "0", "-16"},
                                                      {"0", "0", "-1", "0", "14"},
                                                      {"0", "0", "0", "0", "27.333333333333333333"}};
  std::vector<GroupJob> out;
  for (int n = 0; n <= 2; ++n) {
    GroupJob g;
    const MethodId m = MethodId::basic(n).with_wiring(wiring);
    for (int j = 1; j <= 5; ++j) {
      g.rows.push_back({m.name(), "d" + std::to_string(j), refs[static_cast<std::size_t>(n)][j - 1],
                        kOddEvenOrders[n], {}});
    }
    g.values = [m, digits] {
      return map_derivatives_at(m, parse("tanh(x-1)"), BigReal(1, guarded_digits(digits)), 5, digits);
    };
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GroupJob> one_step_table(const std::string& function, const std::string& x0, bool transform,
                                     const std::vector<std::string>& refs, bool with_orders, StepWiring wiring,
                                     int digits, long root) {
  std::vector<RowJob> rows;
  for (int n = 0; n <= 7; ++n) {
    const MethodId m = MethodId::basic(n, transform).with_wiring(wiring);
    std::optional<std::string> order;
    if (with_orders) order = kOddEvenOrders[n];
    rows.push_back({m.name(), "s", refs[static_cast<std::size_t>(n)], order, [=] {
                      return digits_after(m, function, x0, BigReal(root, guarded_digits(digits)), 1, digits);
                    }});
  }
  return single_rows(std::move(rows));
}

std::vector<GroupJob> composed_table(bool ascending, StepWiring wiring, int digits) {
  const std::vector<std::string> desc = {"19.5", "30.8", "57.5", "75.2", "104.7", "127.3"};
  const std::vector<std::string> asc = {"17.7", "39.5", "53.4", "80.9", "98.8", "135.4"};
  std::vector<RowJob> rows;
  for (int i = 2; i <= 7; ++i) {
    const MethodId m =
        (ascending ? MethodId::composed(i - 1, i) : MethodId::composed(i, i - 1)).with_wiring(wiring);
    const auto idx = static_cast<std::size_t>(i - 2);
    rows.push_back({m.name(), "s", (ascending ? asc : desc)[idx], kComposedOrders[idx], [=] {
                      return digits_after(m, "tanh(x-1)", "1.1", BigReal(1, guarded_digits(digits)), 1, digits);
                    }});
  }
  return single_rows(std::move(rows));
}

std::vector<GroupJob> polynomial_table(StepWiring wiring, int digits) {
  const std::string f = "x^11 + 4*x^2 - 10";
  auto root = std::make_shared<std::shared_future<BigReal>>(
      std::async(std::launch::async, [digits] { return polynomial_root(digits + 20); }).share());

  std::vector<RowJob> rows;
  const std::vector<std::pair<MethodId, std::string>> methods = {{MethodId::basic(0), "0.5"},
                                                                 {MethodId::basic(6), "5.3"},
                                                                 {MethodId::basic(7), "7.6"},
                                                                 {MethodId::composed(7, 6), "2410.6"}};
  for (const auto& [base, ref] : methods) {
    const MethodId m = base.with_wiring(wiring);
    rows.push_back({m.name(), "s", ref, std::nullopt,
                    [=] { return digits_after(m, f, "2", root->get(), 3, digits); }});
  }
  std::vector<GroupJob> out = single_rows(std::move(rows));

  // Step-based error estimates x_{k+1} - x_k of t7_6.
  GroupJob steps;
  const std::vector<std::string> refs = {"-0.799781", "-0.0491500", "-2.50444e-44", "-2.75873e-2411"};
  const MethodId m = MethodId::composed(7, 6).with_wiring(wiring);
  for (int k = 0; k < 4; ++k) {
    steps.rows.push_back({m.name(), "e" + std::to_string(k), refs[static_cast<std::size_t>(k)], std::nullopt, {}});
  }
  steps.values = [m, f, digits] {
    ScalarProblem p = ScalarProblem::with_defaults(parse(f), BigReal(2, guarded_digits(digits)), digits);
    p.max_iter = 4;
    std::vector<BigReal> e = error_from_steps(iterate(p, m));
    e.resize(4, BigReal(0, guarded_digits(digits)));
    return e;
  };
  out.push_back(std::move(steps));
  return out;
}

}  // namespace

std::optional<BigReal> TableRow::deviation() const {
  if (!reference) return std::nullopt;
  return abs(computed - BigReal(*reference, computed.digits()));
}

const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids = {"tab1",     "tab1nn",   "tab1nnA", "tab1nnB",
                                               "tabnova1", "tabnova2", "tabpol1"};
  return ids;
}

int preset_digits(std::string_view id) {
  if (id == "tab1") return 300;
  if (id == "tab1nn" || id == "tabnova1" || id == "tabnova2") return 60;
  if (id == "tab1nnA" || id == "tab1nnB") return 200;
  if (id == "tabpol1") return 2600;
  throw std::invalid_argument("unknown table '" + std::string(id) +
                              "' (expected tab1, tab1nn, tab1nnA, tab1nnB, tabnova1, tabnova2 or tabpol1)");
}

BigReal polynomial_root(int digits) {
  const int g = guarded_digits(digits);
  const BigReal tol = power_of_ten(-digits, g);
  BigReal x("1.2", g);
  for (int k = 0; k < 200; ++k) {
    const BigReal fx = pow(x, 11L) + x * x * 4 - 10;
    const BigReal dfx = pow(x, 10L) * 11 + x * 8;
    const BigReal step = fx / dfx;
    x -= step;
    if (abs(step) < tol) return x;
  }
  throw std::runtime_error("Newton did not converge on x^11 + 4x^2 - 10");
}

TableReport compute_table(std::string_view id, StepWiring wiring, std::optional<int> digits_override) {
  TableReport report;
  report.id = std::string(id);
  report.digits = digits_override.value_or(preset_digits(id));
  report.wiring = wiring;
  const int d = report.digits;

  std::vector<GroupJob> jobs;
  if (id == "tab1") {
    report.caption = "map derivatives at z = 1, f = tanh(x-1)";
    jobs = derivative_table(wiring, d);
  } else if (id == "tab1nn") {
    report.caption = "one iteration from x0 = 1.1, f = tanh(x-1)";
    jobs = one_step_table("tanh(x-1)", "1.1", false, {"3.2", "3.8", "5.6", "7.8", "10.2", "11.1", "13.5", "14.5"}, true, wiring,
                          d, 1);
  } else if (id == "tab1nnA") {
    report.caption = "composed t_i after t_(i-1), one iteration from x0 = 1.1, f = tanh(x-1)";
    jobs = composed_table(false, wiring, d);
  } else if (id == "tab1nnB") {
    report.caption = "composed t_(i-1) after t_i, one iteration from x0 = 1.1, f = tanh(x-1)";
    jobs = composed_table(true, wiring, d);
  } else if (id == "tabnova1") {
    report.caption = "one iteration from x0 = 0.1, f = sin(x) - x (triple root 0)";
    jobs = one_step_table("sin(x) - x", "0.1", false, {"1.18", "1.27", "1.28", "1.35", "1.41", "1.45", "1.49", "1.52"}, false,
                          wiring, d, 0);
  } else if (id == "tabnova2") {
    report.caption = "one iteration from x0 = 0.1 on F = -f/f', f = sin(x) - x";
    jobs = one_step_table("sin(x) - x", "0.1", true, {"4.2", "4.8", "7.6", "9.6", "13.1", "14.2", "17.7", "18.7"}, true, wiring, d,
                          0);
  } else if (id == "tabpol1") {
    report.caption = "three iterations from x0 = 2, f = x^11 + 4x^2 - 10; e_k = x_(k+1) - x_k for t7_6";
    jobs = polynomial_table(wiring, d);
  } else {
    preset_digits(id);  // throws
  }

  std::vector<std::future<std::pair<std::vector<BigReal>, double>>> futures;
  for (const GroupJob& job : jobs) {
    futures.push_back(std::async(std::launch::async, [values = job.values] {
      const auto start = Clock::now();
      std::vector<BigReal> v = values();
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      return std::make_pair(std::move(v), ms);
    }));
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto [values, ms] = futures[i].get();
    for (std::size_t r = 0; r < jobs[i].rows.size(); ++r) {
      const RowJob& spec = jobs[i].rows[r];
      report.rows.push_back({spec.method, spec.quantity, values.at(r), spec.reference, spec.order, ms});
    }
  }
  return report;
}

}  // namespace cotes::tables
