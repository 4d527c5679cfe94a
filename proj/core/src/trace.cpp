#include "trachtenberg/trace.hpp"

#include <algorithm>
#include <sstream>

#include "trachtenberg/errors.hpp"

namespace trachtenberg {
namespace {

// Terminal columns taken by a UTF-8 string ("×" is two bytes, one column).
std::size_t display_width(std::string_view text) {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char ch) {
    return (static_cast<unsigned char>(ch) & 0xC0) != 0x80;
  }));
}

std::string pad(const std::string& text, std::size_t width) {
  const std::size_t current = display_width(text);
  return current >= width ? text : text + std::string(width - current, ' ');
}

std::string rtrim(std::string line) {
  while (!line.empty() && line.back() == ' ') {
    line.pop_back();
  }
  return line;
}

struct Column {
  std::string multiplicand;
  std::string raw;
  std::string carried;
  std::string result;
};

std::string carried_cell(const TraceStep& step) {
  const int units = step.raw_value >= 0 ? step.raw_value % 10 : step.raw_value;
  std::string cell = std::to_string(units);
  if (step.carry_in > 0) {
    cell += "+(" + std::to_string(step.carry_in) + ")";
  }
  return cell;
}

const nlohmann::json& member(const nlohmann::json& object, const char* name,
                             const std::string& path) {
  const auto it = object.find(name);
  if (it == object.end()) {
    throw ValidationError("missing field " + path + name, path + name);
  }
  return *it;
}

int int_member(const nlohmann::json& object, const char* name, const std::string& path) {
  const auto& value = member(object, name, path);
  if (!value.is_number_integer()) {
    throw ValidationError("field " + path + name + " must be an integer", path + name);
  }
  return value.get<int>();
}

std::string string_member(const nlohmann::json& object, const char* name,
                          const std::string& path) {
  const auto& value = member(object, name, path);
  if (!value.is_string()) {
    throw ValidationError("field " + path + name + " must be a string", path + name);
  }
  return value.get<std::string>();
}

DigitString number_member(const nlohmann::json& object, const char* name,
                          const std::string& path) {
  try {
    return parse(string_member(object, name, path));
  } catch (const ParseError& e) {
    throw ValidationError(std::string(e.what()), path + name);
  }
}

}  // namespace

std::string render_table(const ComputationTrace& trace) {
  std::vector<Column> columns;  // most significant first
  if (trace.extra_leading_digit) {
    columns.push_back({"", "", "(" + std::to_string(*trace.extra_leading_digit) + ")",
                       std::to_string(*trace.extra_leading_digit)});
  }
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    const TraceStep& step = *it;
    const bool trivial_leading = step.role == PositionRole::Leading && step.raw_value == 0 &&
                                 step.carry_in == 0 && trace.steps.size() > 1;
    if (trivial_leading) {
      continue;
    }
    columns.push_back({step.role == PositionRole::Leading ? "" : std::to_string(step.digit),
                       step.formula_rendering, carried_cell(step),
                       std::to_string(step.result_digit)});
  }

  std::vector<std::size_t> widths;
  widths.reserve(columns.size());
  for (const auto& column : columns) {
    widths.push_back(std::max({display_width(column.multiplicand), display_width(column.raw),
                               display_width(column.carried), display_width(column.result)}));
  }

  const auto row = [&](std::string_view label, std::string Column::*cell) {
    std::string line = pad(std::string(label), 12);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      line += " | ";
      line += pad(columns[i].*cell, widths[i]);
    }
    return rtrim(std::move(line)) + "\n";
  };

  std::ostringstream out;
  out << to_text(trace.multiplicand) << " × " << trace.multiplier.value() << " = "
      << to_text(trace.product) << "\n";
  out << row("multiplicand", &Column::multiplicand);
  out << row("raw", &Column::raw);
  out << row("carried", &Column::carried);
  out << row("result", &Column::result);
  return out.str();
}

nlohmann::json to_structured(const ComputationTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : trace.steps) {
    steps.push_back({
        {"position_index", step.position_index},
        {"role", std::string(to_string(step.role))},
        {"digit", step.digit},
        {"neighbour", step.neighbour},
        {"raw_value", step.raw_value},
        {"carry_in", step.carry_in},
        {"sum", step.sum},
        {"result_digit", step.result_digit},
        {"carry_out", step.carry_out},
        {"formula", step.formula_rendering},
    });
  }
  return {
      {"multiplicand", to_text(trace.multiplicand)},
      {"multiplier", trace.multiplier.value()},
      {"steps", std::move(steps)},
      {"extra_leading_digit", trace.extra_leading_digit ? nlohmann::json(*trace.extra_leading_digit)
                                                        : nlohmann::json(nullptr)},
      {"product", to_text(trace.product)},
  };
}

ComputationTrace from_structured(const nlohmann::json& document) {
  if (!document.is_object()) {
    throw ValidationError("trace document must be an object");
  }
  ComputationTrace trace;
  trace.multiplicand = number_member(document, "multiplicand", "");
  const int m = int_member(document, "multiplier", "");
  const auto multiplier = Multiplier::try_from(m);
  if (!multiplier) {
    throw ValidationError("unsupported multiplier " + std::to_string(m), "multiplier");
  }
  trace.multiplier = *multiplier;

  const auto& steps = member(document, "steps", "");
  if (!steps.is_array()) {
    throw ValidationError("field steps must be an array", "steps");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string path = "steps[" + std::to_string(i) + "].";
    const auto& item = steps[i];
    if (!item.is_object()) {
      throw ValidationError("step " + std::to_string(i) + " must be an object", path);
    }
    TraceStep step;
    step.position_index = int_member(item, "position_index", path);
    const auto role = role_from_string(string_member(item, "role", path));
    if (!role) {
      throw ValidationError("unknown role", path + "role");
    }
    step.role = *role;
    step.digit = int_member(item, "digit", path);
    step.neighbour = int_member(item, "neighbour", path);
    step.raw_value = int_member(item, "raw_value", path);
    step.carry_in = int_member(item, "carry_in", path);
    step.sum = int_member(item, "sum", path);
    step.result_digit = int_member(item, "result_digit", path);
    step.carry_out = int_member(item, "carry_out", path);
    step.formula_rendering = string_member(item, "formula", path);
    trace.steps.push_back(std::move(step));
  }

  const auto& extra = member(document, "extra_leading_digit", "");
  if (!extra.is_null()) {
    if (!extra.is_number_integer()) {
      throw ValidationError("field extra_leading_digit must be an integer or null",
                            "extra_leading_digit");
    }
    trace.extra_leading_digit = extra.get<int>();
  }
  trace.product = number_member(document, "product", "");
  return trace;
}

std::vector<std::string> trace_violations(const ComputationTrace& trace) {
  std::vector<std::string> violations;
  const auto report = [&](std::size_t position, const std::string& what) {
    violations.push_back(to_text(trace.multiplicand) + " x " +
                         std::to_string(trace.multiplier.value()) + " position " +
                         std::to_string(position) + ": " + what);
  };

  const std::size_t length = trace.multiplicand.size();
  if (trace.steps.size() != length + 1) {
    violations.push_back("expected " + std::to_string(length + 1) + " steps, found " +
                         std::to_string(trace.steps.size()));
    return violations;
  }

  std::vector<Digit> reversed;
  int previous_carry = 0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& step = trace.steps[i];
    const PositionRole expected_role = i == length ? PositionRole::Leading
                                       : i == 0    ? PositionRole::Rightmost
                                                   : PositionRole::Interior;
    if (step.position_index != static_cast<int>(i)) report(i, "position_index out of order");
    if (step.role != expected_role) report(i, "wrong role");
    if (step.digit != trace.multiplicand.digit_from_right(i)) report(i, "digit mismatch");
    const int expected_neighbour = i == 0 ? 0 : trace.multiplicand.digit_from_right(i - 1);
    if (step.neighbour != expected_neighbour) report(i, "neighbour mismatch");
    if (step.raw_value < -2 || step.raw_value > 27) report(i, "raw value outside [-2, 27]");
    if (step.carry_in != previous_carry) report(i, "carry does not chain");
    if (step.carry_in < 0 || step.carry_in > 2) report(i, "carry_in outside {0,1,2}");
    if (step.carry_out < 0 || step.carry_out > 2) report(i, "carry_out outside {0,1,2}");
    if (step.sum != step.raw_value + step.carry_in) report(i, "sum != raw + carry_in");
    if (step.sum < 0) report(i, "negative sum");
    if (step.result_digit < 0 || step.result_digit > 9) report(i, "result digit outside [0, 9]");
    if (step.sum >= 0 && (step.result_digit != step.sum % 10 || step.carry_out != step.sum / 10)) {
      report(i, "result digit or carry_out inconsistent with sum");
    }
    previous_carry = step.carry_out;
    reversed.push_back(static_cast<Digit>(std::clamp(step.result_digit, 0, 9)));
  }

  const int final_carry = trace.steps.back().carry_out;
  const int m = trace.multiplier.value();
  const int carry_bound = m <= 9 ? 0 : 1;
  if (final_carry > carry_bound) {
    report(length, "final carry " + std::to_string(final_carry) + " exceeds " +
                       std::to_string(carry_bound));
  }
  if (final_carry == 0) {
    if (trace.extra_leading_digit) report(length, "unexpected extra leading digit");
  } else {
    if (trace.extra_leading_digit != final_carry) {
      report(length, "extra leading digit does not hold the final carry");
    }
    reversed.push_back(static_cast<Digit>(std::clamp(final_carry, 0, 9)));
  }
  if (DigitString::from_reversed_digits(reversed) != trace.product) {
    report(length, "product does not match the result digits");
  }
  return violations;
}

}  // namespace trachtenberg
