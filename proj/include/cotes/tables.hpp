#pragma once

#include "cotes/bigreal.hpp"
#include "cotes/solver.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cotes::tables {

struct TableRow {
  std::string method;
  std::string quantity;  // "s", "d3" (third map derivative), "e2" (step-based error)
  BigReal computed;
  std::optional<std::string> reference;  // expected value, decimal
  std::optional<std::string> order;      // listed convergence order, if any
  double runtime_ms = 0.0;

  /// |computed - reference|.
  std::optional<BigReal> deviation() const;
};

struct TableReport {
  std::string id;
  std::string caption;
  int digits = 0;
  StepWiring wiring = StepWiring::simpson_from_newton;
  std::vector<TableRow> rows;
};

/// tab1, tab1nn, tab1nnA, tab1nnB, tabnova1, tabnova2, tabpol1.
const std::vector<std::string>& table_ids();

/// Working precision preset for a table id.
int preset_digits(std::string_view id);

/// Recomputes a reference table. Rows are evaluated concurrently and returned
/// in table order. `digits` overrides the preset. Throws std::invalid_argument
/// for an unknown id.
TableReport compute_table(std::string_view id, StepWiring wiring = StepWiring::simpson_from_newton,
                          std::optional<int> digits = std::nullopt);

/// Root of x^11 + 4x^2 - 10 to `digits` digits (Newton from 1.2).
BigReal polynomial_root(int digits);

}  // namespace cotes::tables
