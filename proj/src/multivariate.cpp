#include "cotes/multivariate.hpp"

#include "cotes/expr.hpp"

#include <algorithm>
#include <utility>

namespace cotes::nd {

namespace {

void require_square(const Matrix& a, std::size_t n) {
  if (a.rows() != n || a.cols() != n) throw DimensionMismatch("expected a square matrix matching the vector");
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, int digits)
    : rows_(rows), cols_(cols), data_(rows * cols, BigReal(0, digits)) {}

Matrix Matrix::identity(std::size_t n, int digits) {
  Matrix m(n, n, digits);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = BigReal(1, digits);
  return m;
}

BigReal Matrix::max_abs() const {
  BigReal best;
  for (const auto& v : data_) {
    if (abs(v) > best) best = abs(v);
  }
  return best;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum of unequal shapes");
  Matrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

Matrix operator*(const Matrix& a, long s) {
  Matrix r = a;
  for (auto& v : r.data_) v = v * s;
  return r;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols_ != x.size()) throw DimensionMismatch("matrix-vector product of unequal sizes");
  Vector y;
  y.reserve(a.rows_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    BigReal acc = a(r, 0) * x[0];
    for (std::size_t c = 1; c < a.cols_; ++c) acc += a(r, c) * x[c];
    y.push_back(std::move(acc));
  }
  return y;
}

BigReal max_norm(const Vector& v) {
  BigReal best;
  for (const auto& e : v) {
    if (abs(e) > best) best = abs(e);
  }
  return best;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum of unequal sizes");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference of unequal sizes");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector operator*(const Vector& a, const BigReal& s) {
  Vector r = a;
  for (auto& e : r) e *= s;
  return r;
}

Vector solve_linear(const Matrix& a, const Vector& b, int digits) {
  const std::size_t n = b.size();
  require_square(a, n);
  if (n == 0) return {};

  Matrix lu = a;
  Vector rhs = b;
  const BigReal threshold = power_of_ten(-digits + 5, guarded_digits(digits)) * a.max_abs();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (abs(lu(r, k)) > abs(lu(pivot, k))) pivot = r;
    }
    if (!(abs(lu(pivot, k)) > threshold)) {
      throw SingularMatrix("pivot " + std::to_string(k) + " underflows the singularity threshold");
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(pivot, c));
      std::swap(rhs[k], rhs[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const BigReal factor = lu(r, k) / lu(k, k);
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= factor * lu(k, c);
      lu(r, k) = BigReal(0, digits);
      rhs[r] -= factor * rhs[k];
    }
  }

  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    BigReal acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= lu(i, c) * x[c];
    x[i] = acc / lu(i, i);
  }
  return x;
}

std::string_view step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::newton: return "newton";
    case StepKind::trapezoidal: return "trapezoidal";
    case StepKind::simpson: return "simpson";
  }
  return "?";
}

Vector nd_step(StepKind kind, const VectorFunction& f, const Vector& x, int digits) {
  if (x.size() != f.dimension) throw DimensionMismatch("point dimension does not match the function");
  const Vector fx = f.residual(x);
  if (fx.size() != f.dimension) throw DimensionMismatch("residual dimension does not match the function");
  const Matrix jx = f.jacobian(x);

  const Vector newton_step = solve_linear(jx, fx, digits);  // J^{-1} F
  if (kind == StepKind::newton) return x - newton_step;

  // h1 = t0(x) - x = -J^{-1} F, so the second node is the Newton iterate.
  const Vector t0 = x - newton_step;
  const Vector t1 = x - solve_linear(jx + f.jacobian(t0), fx, digits) * BigReal(2, guarded_digits(digits));
  if (kind == StepKind::trapezoidal) return t1;

  const Vector h2 = (t1 - x) * (BigReal(1, guarded_digits(digits)) / 2);
  const Matrix sum = jx + f.jacobian(x + h2) * 4 + f.jacobian(x + h2 * BigReal(2, guarded_digits(digits)));
  return x - solve_linear(sum, fx, digits) * BigReal(6, guarded_digits(digits));
}

NdTrajectory nd_iterate(const VectorFunction& f, const Vector& x0, StepKind kind, const StopCriteria& stop) {
  if (stop.max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  const int g = guarded_digits(stop.digits);
  const BigReal step_tol = stop.step_tol.value_or(power_of_ten(-stop.digits + 10, g));
  const BigReal residual_tol = stop.residual_tol.value_or(power_of_ten(-stop.digits + 10, g));
  const BigReal bound = stop.divergence_bound.value_or(power_of_ten(6, g) * (1 + max_norm(x0)));

  NdTrajectory t;
  t.kind = kind;
  auto finish = [&](Termination why, std::optional<BreakdownKind> b, std::string detail) {
    t.termination = why;
    t.breakdown = b;
    t.detail = std::move(detail);
    return t;
  };

  Vector x;
  for (const auto& v : x0) x.push_back(v.rounded_to(std::max(v.digits(), g)));
  try {
    t.iterates.push_back({0, x, max_norm(f.residual(x)), std::nullopt});
  } catch (const DomainError& e) {
    t.iterates.push_back({0, x, std::nullopt, std::nullopt});
    return finish(Termination::breakdown, BreakdownKind::domain_error, e.what());
  }

  for (int k = 0; k < stop.max_iter; ++k) {
    Vector next;
    try {
      next = nd_step(kind, f, x, stop.digits);
    } catch (const SingularMatrix& e) {
      return finish(Termination::breakdown, BreakdownKind::zero_denominator, e.what());
    } catch (const DomainError& e) {
      return finish(Termination::breakdown, BreakdownKind::domain_error, e.what());
    }
    const BigReal step = max_norm(next - x);
    t.iterates.back().step_norm = step;
    if (!max_norm(next).is_finite() || max_norm(next) > bound) {
      t.iterates.push_back({k + 1, next, std::nullopt, std::nullopt});
      return finish(Termination::diverged, std::nullopt, "iterate left the divergence bound");
    }
    BigReal residual;
    try {
      residual = max_norm(f.residual(next));
    } catch (const DomainError& e) {
      t.iterates.push_back({k + 1, next, std::nullopt, std::nullopt});
      return finish(Termination::breakdown, BreakdownKind::domain_error, e.what());
    }
    t.iterates.push_back({k + 1, next, residual, std::nullopt});
    x = std::move(next);
    if (step < step_tol) return finish(Termination::converged_step, std::nullopt, "");
    if (residual < residual_tol) return finish(Termination::converged_residual, std::nullopt, "");
  }
  return finish(Termination::max_iterations, std::nullopt, "");
}

DemoSystem demo_system(std::string_view name, int digits) {
  const int g = guarded_digits(digits);
  DemoSystem sys;
  sys.name = std::string(name);
  sys.f.dimension = 2;
  if (name == "affine") {
    sys.f.residual = [](const Vector& x) { return Vector{x[0] * 3 + x[1] - 5, x[0] + x[1] * 2 - 5}; };
    sys.f.jacobian = [g](const Vector&) {
      Matrix j(2, 2, g);
      j(0, 0) = BigReal(3, g);
      j(0, 1) = BigReal(1, g);
      j(1, 0) = BigReal(1, g);
      j(1, 1) = BigReal(2, g);
      return j;
    };
    sys.start = {BigReal(0, g), BigReal(0, g)};
    sys.solution = {BigReal(1, g), BigReal(2, g)};
  } else if (name == "circle-line") {
    sys.f.residual = [](const Vector& x) { return Vector{x[0] * x[0] + x[1] * x[1] - 4, x[0] - x[1]}; };
    sys.f.jacobian = [g](const Vector& x) {
      Matrix j(2, 2, g);
      j(0, 0) = x[0] * 2;
      j(0, 1) = x[1] * 2;
      j(1, 0) = BigReal(1, g);
      j(1, 1) = BigReal(-1, g);
      return j;
    };
    sys.start = {BigReal(1, g), BigReal("0.5", g)};
    const BigReal r = sqrt(BigReal(2, g));
    sys.solution = {r, r};
  } else {
    throw std::invalid_argument("unknown system '" + std::string(name) + "' (expected affine or circle-line)");
  }
  return sys;
}

}  // namespace cotes::nd
