#pragma once

#include "cotes/bigreal.hpp"
#include "cotes/solver.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cotes::nd {

using Vector = std::vector<BigReal>;

/// Dense row-major square or rectangular matrix of BigReal.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, int digits);

  static Matrix identity(std::size_t n, int digits);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigReal& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigReal& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  BigReal max_abs() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, long s);
  friend Vector operator*(const Matrix& a, const Vector& x);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigReal> data_;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// F: R^d -> R^d with a caller-supplied Jacobian.
struct VectorFunction {
  std::size_t dimension = 0;
  std::function<Vector(const Vector&)> residual;
  std::function<Matrix(const Vector&)> jacobian;
};

BigReal max_norm(const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Vector& a, const BigReal& s);

/// LU with partial pivoting. A pivot below 10^(-digits+5) * max|A| raises
/// SingularMatrix.
Vector solve_linear(const Matrix& a, const Vector& b, int digits);

enum class StepKind { newton, trapezoidal, simpson };

std::string_view step_kind_name(StepKind kind);

/// One application of the Newton, Newton-trapezoidal or Newton-Simpson map.
Vector nd_step(StepKind kind, const VectorFunction& f, const Vector& x, int digits);

struct StopCriteria {
  int digits = 50;
  int max_iter = 50;
  std::optional<BigReal> step_tol;          // default 10^(-digits+10)
  std::optional<BigReal> residual_tol;      // default 10^(-digits+10)
  std::optional<BigReal> divergence_bound;  // default 10^6 (1 + |x0|_max)
};

struct NdIterate {
  int k = 0;
  Vector x;
  std::optional<BigReal> residual_norm;
  std::optional<BigReal> step_norm;
};

struct NdTrajectory {
  StepKind kind = StepKind::newton;
  std::vector<NdIterate> iterates;
  Termination termination = Termination::max_iterations;
  std::optional<BreakdownKind> breakdown;
  std::string detail;

  bool converged() const {
    return termination == Termination::converged_step || termination == Termination::converged_residual;
  }
};

/// Outer loop around nd_step with max-norm stopping tests. A singular
/// Jacobian combination is recorded as Breakdown(zero_denominator).
NdTrajectory nd_iterate(const VectorFunction& f, const Vector& x0, StepKind kind, const StopCriteria& stop);

/// Built-in demo systems with known solutions.
///   affine:      3x + y - 5 = 0, x + 2y - 5 = 0          solution (1, 2)
///   circle-line: x^2 + y^2 - 4 = 0, x - y = 0            solution (sqrt 2, sqrt 2)
struct DemoSystem {
  std::string name;
  VectorFunction f;
  Vector start;
  Vector solution;
};
DemoSystem demo_system(std::string_view name, int digits);

}  // namespace cotes::nd
