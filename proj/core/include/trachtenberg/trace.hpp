#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trachtenberg/digits.hpp"
#include "trachtenberg/multiplier.hpp"

namespace trachtenberg {

/// One column of a worked multiplication.
struct TraceStep {
  int position_index = 0;  // 0 = rightmost, increasing leftward
  PositionRole role = PositionRole::Rightmost;
  int digit = 0;
  int neighbour = 0;  // digit immediately to the right, 0 when absent
  int raw_value = 0;  // rule formula value before the carry is added
  int carry_in = 0;
  int sum = 0;
  int result_digit = 0;
  int carry_out = 0;
  std::string formula_rendering;  // e.g. "9+3+5=(1)7"

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// A complete worked problem. Steps are stored in evaluation order, rightmost
/// position first.
struct ComputationTrace {
  DigitString multiplicand;
  Multiplier multiplier{3};
  std::vector<TraceStep> steps;
  std::optional<int> extra_leading_digit;  // final carry out of the leading position
  DigitString product;

  friend bool operator==(const ComputationTrace&, const ComputationTrace&) = default;
};

/// Renders the four-row worked table: multiplicand, raw values with "(c)"
/// carry marks, carry resolution, result digits. Columns run most-significant
/// first and are padded to a fixed width. Leading columns that contribute
/// nothing (raw value 0, no incoming carry) are left out, as in the hand
/// written form.
std::string render_table(const ComputationTrace& trace);

/// Lossless plain-value form using the wire field names (`multiplicand`,
/// `multiplier`, `steps[]`, `extra_leading_digit`, `product`).
nlohmann::json to_structured(const ComputationTrace& trace);

/// Reconstructs a trace from to_structured output. Throws ValidationError
/// naming the offending field on malformed input.
ComputationTrace from_structured(const nlohmann::json& document);

/// Checks the structural invariants of a trace: carry chaining, carry and
/// digit ranges, sum arithmetic, step count and roles, final carry bound and
/// product reconstruction from the result digits. Returns one description per
/// violation; empty means the trace is well formed. Does not check that the
/// product is arithmetically right, which is the oracle's job.
std::vector<std::string> trace_violations(const ComputationTrace& trace);

}  // namespace trachtenberg
