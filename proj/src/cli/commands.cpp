#include "cotes/cli.hpp"

#include "cotes/analysis.hpp"
#include "cotes/multivariate.hpp"
#include "cotes/quadrature.hpp"
#include "cotes/tables.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cotes::cli {

namespace {

using nlohmann::ordered_json;

StepWiring parse_wiring(std::string_view name) {
  if (name == "recursive") return StepWiring::recursive;
  if (name == "simpson-from-newton") return StepWiring::simpson_from_newton;
  throw std::invalid_argument("wiring must be recursive or simpson-from-newton, got '" + std::string(name) + "'");
}

void check_format(std::string_view format, bool allow_text = false) {
  if (format == "json" || format == "csv" || (allow_text && format == "text")) return;
  throw std::invalid_argument("format must be json or csv" + std::string(allow_text ? " or text" : "") + ", got '" +
                              std::string(format) + "'");
}

std::string num(const std::optional<BigReal>& v, int digits) {
  return v ? v->to_string(digits) : std::string();
}

ordered_json num_json(const std::optional<BigReal>& v, int digits) {
  if (!v) return nullptr;
  return v->to_string(digits);
}

int exit_code_for(Termination t) {
  switch (t) {
    case Termination::converged_step:
    case Termination::converged_residual: return kExitConverged;
    case Termination::breakdown:
    case Termination::diverged: return kExitBreakdown;
    case Termination::max_iterations: return kExitMaxIterations;
  }
  return kExitUsage;
}

ordered_json termination_json(Termination t, const std::optional<BreakdownKind>& kind, const std::string& detail) {
  ordered_json j;
  j["kind"] = termination_name(t);
  j["breakdown"] = kind ? ordered_json(breakdown_name(*kind)) : ordered_json(nullptr);
  j["detail"] = detail;
  return j;
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["function"] = c.function;
  j["method"] = c.method;
  j["x0"] = c.x0;
  j["digits"] = c.digits;
  j["max_iter"] = c.max_iter;
  j["step_tol"] = c.step_tol ? ordered_json(*c.step_tol) : ordered_json(nullptr);
  j["residual_tol"] = c.residual_tol ? ordered_json(*c.residual_tol) : ordered_json(nullptr);
  j["root"] = c.root ? ordered_json(*c.root) : ordered_json(nullptr);
  j["wiring"] = wiring_name(c.wiring);
  return j;
}

BigReal parse_number(const std::string& text, const char* what, int digits) {
  try {
    return BigReal(text, digits);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string(what) + " is not a decimal number: '" + text + "'");
  }
}

}  // namespace

PreparedRun prepare(const RunConfig& c) {
  if (c.digits < kMinDigits) {
    throw std::invalid_argument("--digits must be at least " + std::to_string(kMinDigits));
  }
  if (c.function.empty()) throw std::invalid_argument("--function is required");
  if (c.x0.empty()) throw std::invalid_argument("--x0 is required");
  const int g = guarded_digits(c.digits);
  PreparedRun run{parse_method_spec(c.method).with_wiring(c.wiring),
                  ScalarProblem::with_defaults(parse(c.function), parse_number(c.x0, "--x0", g), c.digits)};
  ScalarProblem& p = run.problem;
  p.max_iter = c.max_iter;
  if (c.step_tol) p.step_tol = parse_number(*c.step_tol, "--step-tol", g);
  if (c.residual_tol) p.residual_tol = parse_number(*c.residual_tol, "--residual-tol", g);
  if (c.divergence_bound) p.divergence_bound = parse_number(*c.divergence_bound, "--divergence-bound", g);
  if (c.root) p.known_root = parse_number(*c.root, "--root", g);
  p.validate();
  return run;
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream&) {
  const PreparedRun run = prepare(config);
  const Trajectory t = iterate(run.problem, run.method);
  const int d = config.digits;

  if (config.format == "csv") {
    out << "k,x,fx,step,s\n";
    for (const Iterate& it : t.iterates) {
      out << it.k << ',' << it.x.to_string(d) << ',' << num(it.fx, d) << ',' << num(it.step, d) << ','
          << num(it.s, 10) << '\n';
    }
    out << "# termination," << termination_name(t.termination);
    if (t.breakdown) out << ',' << breakdown_name(*t.breakdown);
    out << '\n';
  } else {
    ordered_json j;
    j["method"] = run.method.name();
    ordered_json its = ordered_json::array();
    for (const Iterate& it : t.iterates) {
      ordered_json e;
      e["k"] = it.k;
      e["x"] = it.x.to_string(d);
      e["fx"] = num_json(it.fx, d);
      e["step"] = num_json(it.step, d);
      if (it.s) e["s"] = it.s->to_string(10);
      its.push_back(std::move(e));
    }
    j["iterates"] = std::move(its);
    j["termination"] = termination_json(t.termination, t.breakdown, t.detail);
    j["config"] = config_json(config);
    out << j.dump(2) << '\n';
  }
  return exit_code_for(t.termination);
}

int cmd_order(const RunConfig& config, bool three_point, std::ostream& out, std::ostream& err) {
  if (!config.root && !three_point) throw std::invalid_argument("order needs --root or --three-point");
  const PreparedRun run = prepare(config);
  const Trajectory t = iterate(run.problem, run.method);
  OrderEstimate est;
  try {
    est = three_point ? estimate_order_from_steps(t, config.digits)
                      : estimate_order(t, *run.problem.known_root, config.digits);
  } catch (const AnalysisError& e) {
    err << "order: " << e.what() << " (trajectory " << termination_name(t.termination) << " after " << t.steps()
        << " steps)\n";
    return kExitMaxIterations;
  }

  if (config.format == "csv") {
    out << "pair,q\n";
    for (std::size_t i = 0; i < est.per_pair.size(); ++i) out << i << ',' << est.per_pair[i].to_string(10) << '\n';
    out << "# q," << est.q.to_string(10) << ",stable," << (est.stable ? "true" : "false") << '\n';
  } else {
    ordered_json j;
    j["method"] = run.method.name();
    j["mode"] = three_point ? "three-point" : "known-root";
    j["q"] = est.q.to_string(10);
    j["stable"] = est.stable;
    j["samples_used"] = est.samples_used;
    ordered_json pairs = ordered_json::array();
    for (const BigReal& q : est.per_pair) pairs.push_back(q.to_string(10));
    j["per_pair"] = std::move(pairs);
    j["termination"] = termination_json(t.termination, t.breakdown, t.detail);
    j["config"] = config_json(config);
    out << j.dump(2) << '\n';
  }
  return kExitConverged;
}

int cmd_plotdata(const RunConfig& config, std::string_view metric, std::ostream& out, std::ostream&) {
  if (metric != "error" && metric != "sdigits") {
    throw std::invalid_argument("--metric must be error or sdigits, got '" + std::string(metric) + "'");
  }
  if (!config.root) throw std::invalid_argument("plotdata needs --root to measure the error");
  const PreparedRun run = prepare(config);
  const Trajectory t = iterate(run.problem, run.method);
  out << "iteration," << metric << '\n';
  for (const Iterate& it : t.iterates) {
    if (it.k == 0) continue;
    if (metric == "sdigits") {
      out << it.k << ',' << num(it.s, 10) << '\n';
    } else {
      out << it.k << ',' << abs(*run.problem.known_root - it.x).to_string(10) << '\n';
    }
  }
  return exit_code_for(t.termination);
}

int cmd_weights(int n, bool derive, std::string_view format, std::ostream& out, std::ostream&) {
  check_format(format);
  const quadrature::RuleSpec rule = derive ? quadrature::derive_rule(n) : quadrature::builtin_rule(n);
  const auto moments = quadrature::check_moments(rule);
  bool exact = true;
  for (bool ok : moments) exact = exact && ok;

  if (format == "csv") {
    out << "i,weight\n";
    for (std::size_t i = 0; i < rule.weights.size(); ++i) out << i << ',' << rule.weights[i] << '\n';
    out << "c," << rule.c << '\n';
  } else {
    ordered_json j;
    j["n"] = rule.n;
    j["weights"] = rule.weights;
    j["c"] = rule.c;
    j["source"] = derive ? "derived" : "builtin";
    j["moments_exact"] = exact;
    out << j.dump(2) << '\n';
  }
  return kExitConverged;
}

int cmd_table(std::string_view id, std::optional<StepWiring> wiring, std::optional<int> digits,
              std::string_view format, std::ostream& out, std::ostream&) {
  check_format(format, true);
  if (digits && *digits < kMinDigits) {
    throw std::invalid_argument("--digits must be at least " + std::to_string(kMinDigits));
  }
  tables::preset_digits(id);  // rejects unknown ids before any work starts
  const tables::TableReport report =
      tables::compute_table(id, wiring.value_or(StepWiring::simpson_from_newton), digits);

  auto deviation = [](const tables::TableRow& r) {
    const auto d = r.deviation();
    return d ? d->to_string(3) : std::string();
  };

  if (format == "json") {
    ordered_json j;
    j["table"] = report.id;
    j["caption"] = report.caption;
    j["digits"] = report.digits;
    j["wiring"] = wiring_name(report.wiring);
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
      ordered_json e;
      e["method"] = r.method;
      e["quantity"] = r.quantity;
      e["computed"] = r.computed.to_string(12);
      e["reference"] = r.reference ? ordered_json(*r.reference) : ordered_json(nullptr);
      e["abs_diff"] = r.reference ? ordered_json(deviation(r)) : ordered_json(nullptr);
      e["q"] = r.order ? ordered_json(*r.order) : ordered_json(nullptr);
      e["runtime_ms"] = r.runtime_ms;
      e["source"] = report.id;
      rows.push_back(std::move(e));
    }
    j["rows"] = std::move(rows);
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    out << "method,quantity,computed,reference,abs_diff,q,runtime_ms,source\n";
    for (const auto& r : report.rows) {
      out << r.method << ',' << r.quantity << ',' << r.computed.to_string(12) << ',' << r.reference.value_or("")
          << ',' << deviation(r) << ',' << r.order.value_or("") << ',' << std::fixed << std::setprecision(1)
          << r.runtime_ms << ',' << report.id << '\n';
      out.unsetf(std::ios::floatfield);
    }
  } else {
    out << report.id << ": " << report.caption << "\n";
    out << "precision " << report.digits << " digits, wiring " << wiring_name(report.wiring) << "\n\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-7s %-4s %-18s %-22s %-10s %-4s %10s  %s\n", "method", "qty", "computed",
                  "reference", "|diff|", "q", "ms", "source");
    out << line;
    for (const auto& r : report.rows) {
      std::snprintf(line, sizeof line, "%-7s %-4s %-18s %-22s %-10s %-4s %10.1f  %s\n", r.method.c_str(),
                    r.quantity.c_str(), r.computed.to_string(8).c_str(), r.reference.value_or("-").c_str(),
                    r.reference ? deviation(r).c_str() : "-", r.order.value_or("-").c_str(), r.runtime_ms,
                    report.id.c_str());
      out << line;
    }
  }
  return kExitConverged;
}

int cmd_ndsolve(std::string_view system, std::string_view kind, int digits, int max_iter, std::string_view format,
                std::ostream& out, std::ostream&) {
  check_format(format);
  if (digits < kMinDigits) throw std::invalid_argument("--digits must be at least " + std::to_string(kMinDigits));
  nd::StepKind step;
  if (kind == "newton") {
    step = nd::StepKind::newton;
  } else if (kind == "trap") {
    step = nd::StepKind::trapezoidal;
  } else if (kind == "simpson") {
    step = nd::StepKind::simpson;
  } else {
    throw std::invalid_argument("--kind must be newton, trap or simpson, got '" + std::string(kind) + "'");
  }
  const nd::DemoSystem sys = nd::demo_system(system, digits);
  nd::StopCriteria stop;
  stop.digits = digits;
  stop.max_iter = max_iter;
  const nd::NdTrajectory t = nd::nd_iterate(sys.f, sys.start, step, stop);

  auto vec = [digits](const nd::Vector& v) {
    std::vector<std::string> out;
    for (const BigReal& c : v) out.push_back(c.to_string(digits));
    return out;
  };
  if (format == "csv") {
    out << "k,x1,x2,residual_norm,step_norm\n";
    for (const auto& it : t.iterates) {
      out << it.k << ',' << it.x[0].to_string(digits) << ',' << it.x[1].to_string(digits) << ','
          << num(it.residual_norm, 10) << ',' << num(it.step_norm, 10) << '\n';
    }
    out << "# termination," << termination_name(t.termination) << '\n';
  } else {
    ordered_json j;
    j["system"] = sys.name;
    j["kind"] = step_kind_name(step);
    ordered_json its = ordered_json::array();
    for (const auto& it : t.iterates) {
      ordered_json e;
      e["k"] = it.k;
      e["x"] = vec(it.x);
      e["residual_norm"] = num_json(it.residual_norm, 10);
      e["step_norm"] = num_json(it.step_norm, 10);
      its.push_back(std::move(e));
    }
    j["iterates"] = std::move(its);
    j["solution"] = vec(sys.solution);
    j["termination"] = termination_json(t.termination, t.breakdown, t.detail);
    j["digits"] = digits;
    out << j.dump(2) << '\n';
  }
  return exit_code_for(t.termination);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Newton-Cotes quadrature root finders in arbitrary precision"};
  app.require_subcommand(1);

  RunConfig config;
  config.digits = default_digits();
  std::string wiring = "recursive";
  bool three_point = false;
  std::string metric = "sdigits";

  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("-f,--function", config.function, "f(x), e.g. \"tanh(x-1)\"")->required();
    sub->add_option("-m,--method", config.method, "t0..t7, tI_J (t_I after t_J), optional +F suffix")
        ->capture_default_str();
    sub->add_option("--x0", config.x0, "starting point (decimal)")->required();
    sub->add_option("--digits", config.digits, "working precision in decimal digits")->capture_default_str();
    sub->add_option("--max-iter", config.max_iter, "iteration cap")->capture_default_str();
    sub->add_option("--step-tol", config.step_tol, "stop when |x_{k+1} - x_k| falls below this");
    sub->add_option("--residual-tol", config.residual_tol, "stop when |f(x_k)| falls below this");
    sub->add_option("--divergence-bound", config.divergence_bound, "declare divergence beyond this |x|");
    sub->add_option("--root", config.root, "known root, enables the s column");
    sub->add_option("--wiring", wiring, "recursive | simpson-from-newton")->capture_default_str();
    sub->add_option("--format", config.format, "json | csv")->capture_default_str();
  };

  CLI::App* solve = app.add_subcommand("solve", "iterate a method and print the trajectory");
  add_run_options(solve);
  CLI::App* order = app.add_subcommand("order", "estimate the convergence order");
  add_run_options(order);
  order->add_flag("--three-point", three_point, "step-based estimate, no root needed");
  CLI::App* plot = app.add_subcommand("plotdata", "iteration,value rows for plotting");
  add_run_options(plot);
  plot->add_option("--metric", metric, "error | sdigits")->capture_default_str();

  int n = 0;
  bool derive = false;
  std::string aux_format = "json";
  CLI::App* weights = app.add_subcommand("weights", "print Newton-Cotes weights A_i and c_n");
  weights->add_option("--n", n, "rule index 0..7")->required();
  weights->add_flag("--derive", derive, "solve the moment system instead of using the built-in table");
  weights->add_option("--format", aux_format, "json | csv")->capture_default_str();

  std::string table_id;
  std::optional<int> table_digits;
  std::optional<std::string> table_wiring;
  std::string table_format = "text";
  CLI::App* table = app.add_subcommand("table", "recompute a reference table");
  table->add_option("id", table_id, "tab1 | tab1nn | tab1nnA | tab1nnB | tabnova1 | tabnova2 | tabpol1")
      ->required();
  table->add_option("--digits", table_digits, "override the preset precision");
  table->add_option("--wiring", table_wiring, "recursive | simpson-from-newton (default)");
  table->add_option("--format", table_format, "text | json | csv")->capture_default_str();

  std::string system = "circle-line";
  std::string kind = "newton";
  int nd_digits = config.digits;
  int nd_max_iter = 50;
  CLI::App* nd = app.add_subcommand("ndsolve", "solve a built-in 2-d system");
  nd->add_option("--system", system, "affine | circle-line")->capture_default_str();
  nd->add_option("--kind", kind, "newton | trap | simpson")->capture_default_str();
  nd->add_option("--digits", nd_digits, "working precision")->capture_default_str();
  nd->add_option("--max-iter", nd_max_iter, "iteration cap")->capture_default_str();
  nd->add_option("--format", aux_format, "json | csv")->capture_default_str();

  // CLI11 takes the arguments reversed and without the program name.
  std::vector<std::string> reversed;
  if (args.size() > 1) reversed.assign(args.rbegin(), args.rend() - 1);
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitConverged : kExitUsage;
  }

  try {
    if (solve->parsed() || order->parsed() || plot->parsed()) {
      config.wiring = parse_wiring(wiring);
      check_format(config.format);
      if (solve->parsed()) return cmd_solve(config, out, err);
      if (order->parsed()) return cmd_order(config, three_point, out, err);
      return cmd_plotdata(config, metric, out, err);
    }
    if (weights->parsed()) return cmd_weights(n, derive, aux_format, out, err);
    if (table->parsed()) {
      std::optional<StepWiring> w;
      if (table_wiring) w = parse_wiring(*table_wiring);
      return cmd_table(table_id, w, table_digits, table_format, out, err);
    }
    return cmd_ndsolve(system, kind, nd_digits, nd_max_iter, aux_format, out, err);
  } catch (const ParseError& e) {
    err << "error: function: " << e.what() << '\n';
  } catch (const quadrature::UnsupportedRule& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace cotes::cli
