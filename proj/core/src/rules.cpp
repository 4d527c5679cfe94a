#include "trachtenberg/rules.hpp"

#include <algorithm>
#include <vector>

#include "trachtenberg/errors.hpp"

namespace trachtenberg {
namespace {

constexpr std::array<int, 9> kSupported = {3, 4, 5, 6, 7, 8, 9, 11, 12};

int half_unchecked(int x) { return x / 2; }
int odd_unchecked(int d) { return (d % 2 != 0) ? 5 : 0; }

PositionFormula uniform_formula(BaseTerm base, bool neighbour, bool half, bool odd) {
  return PositionFormula{base, neighbour, half, odd};
}

RuleSpec same_for_all_roles(int m, PositionFormula formula) {
  return RuleSpec{Multiplier(m), {formula, formula, formula}};
}

RuleSpec by_role(int m, PositionFormula rightmost, PositionFormula interior,
                 PositionFormula leading) {
  return RuleSpec{Multiplier(m), {rightmost, interior, leading}};
}

std::vector<RuleSpec> build_rules() {
  using B = BaseTerm;
  std::vector<RuleSpec> rules;
  rules.push_back(by_role(3, uniform_formula(B::DoubleTenComplement, false, false, true),
                          uniform_formula(B::DoubleNineComplement, false, true, true),
                          uniform_formula(B::HalfNeighbourMinusTwo, false, false, false)));
  rules.push_back(by_role(4, uniform_formula(B::TenComplement, false, false, true),
                          uniform_formula(B::NineComplement, false, true, true),
                          uniform_formula(B::HalfNeighbourMinusOne, false, false, false)));
  rules.push_back(same_for_all_roles(5, uniform_formula(B::Zero, false, true, true)));
  rules.push_back(same_for_all_roles(6, uniform_formula(B::Digit, false, true, true)));
  rules.push_back(same_for_all_roles(7, uniform_formula(B::DoubleDigit, false, true, true)));
  rules.push_back(by_role(8, uniform_formula(B::DoubleTenComplement, false, false, false),
                          uniform_formula(B::DoubleNineComplement, true, false, false),
                          uniform_formula(B::NeighbourMinusTwo, false, false, false)));
  rules.push_back(by_role(9, uniform_formula(B::TenComplement, false, false, false),
                          uniform_formula(B::NineComplement, true, false, false),
                          uniform_formula(B::NeighbourMinusOne, false, false, false)));
  rules.push_back(same_for_all_roles(11, uniform_formula(B::Digit, true, false, false)));
  rules.push_back(same_for_all_roles(12, uniform_formula(B::DoubleDigit, true, false, false)));
  return rules;
}

int base_value(BaseTerm base, int d, int n) {
  switch (base) {
    case BaseTerm::Zero: return 0;
    case BaseTerm::Digit: return d;
    case BaseTerm::DoubleDigit: return 2 * d;
    case BaseTerm::TenComplement: return 10 - d;
    case BaseTerm::DoubleTenComplement: return 2 * (10 - d);
    case BaseTerm::NineComplement: return 9 - d;
    case BaseTerm::DoubleNineComplement: return 2 * (9 - d);
    case BaseTerm::NeighbourMinusOne: return n - 1;
    case BaseTerm::NeighbourMinusTwo: return n - 2;
    case BaseTerm::HalfNeighbourMinusOne: return half_unchecked(n) - 1;
    case BaseTerm::HalfNeighbourMinusTwo: return half_unchecked(n) - 2;
  }
  return 0;
}

std::string_view base_symbol(BaseTerm base) {
  switch (base) {
    case BaseTerm::Zero: return "";
    case BaseTerm::Digit: return "d";
    case BaseTerm::DoubleDigit: return "2d";
    case BaseTerm::TenComplement: return "10-d";
    case BaseTerm::DoubleTenComplement: return "2(10-d)";
    case BaseTerm::NineComplement: return "9-d";
    case BaseTerm::DoubleNineComplement: return "2(9-d)";
    case BaseTerm::NeighbourMinusOne: return "n-1";
    case BaseTerm::NeighbourMinusTwo: return "n-2";
    case BaseTerm::HalfNeighbourMinusOne: return "half(n)-1";
    case BaseTerm::HalfNeighbourMinusTwo: return "half(n)-2";
  }
  return "";
}

std::string base_worked(BaseTerm base, int d, int n) {
  const std::string ds = std::to_string(d);
  const std::string ns = std::to_string(n);
  switch (base) {
    case BaseTerm::Zero: return "";
    case BaseTerm::Digit: return ds;
    case BaseTerm::DoubleDigit: return ds + "×2";
    case BaseTerm::TenComplement: return "10-" + ds;
    case BaseTerm::DoubleTenComplement: return "(10-" + ds + ")×2";
    case BaseTerm::NineComplement: return "9-" + ds;
    case BaseTerm::DoubleNineComplement: return "(9-" + ds + ")×2";
    case BaseTerm::NeighbourMinusOne: return ns + "-1";
    case BaseTerm::NeighbourMinusTwo: return ns + "-2";
    case BaseTerm::HalfNeighbourMinusOne: return ns + "/2-1";
    case BaseTerm::HalfNeighbourMinusTwo: return ns + "/2-2";
  }
  return "";
}

std::string join_terms(const std::vector<std::string>& terms) {
  std::string out;
  for (const auto& term : terms) {
    if (!out.empty()) {
      out += '+';
    }
    out += term;
  }
  return out.empty() ? "0" : out;
}

void check_digit(int value, const char* what) {
  if (value < 0 || value > 9) {
    throw DomainError(std::string(what) + " " + std::to_string(value) + " is not a digit");
  }
}

}  // namespace

Multiplier::Multiplier(int value) : value_(value) {
  if (!is_supported(value)) {
    throw DomainError("unsupported multiplier " + std::to_string(value) +
                      " (supported: 3-9, 11, 12)");
  }
}

bool Multiplier::is_supported(int value) noexcept {
  return std::find(kSupported.begin(), kSupported.end(), value) != kSupported.end();
}

std::optional<Multiplier> Multiplier::try_from(int value) noexcept {
  if (!is_supported(value)) {
    return std::nullopt;
  }
  return Multiplier(value, Unchecked{});
}

const std::array<Multiplier, 9>& Multiplier::all() noexcept {
  static const std::array<Multiplier, 9> all = [] {
    std::array<Multiplier, 9> out{
        Multiplier(3, Unchecked{}),  Multiplier(4, Unchecked{}), Multiplier(5, Unchecked{}),
        Multiplier(6, Unchecked{}),  Multiplier(7, Unchecked{}), Multiplier(8, Unchecked{}),
        Multiplier(9, Unchecked{}),  Multiplier(11, Unchecked{}), Multiplier(12, Unchecked{})};
    return out;
  }();
  return all;
}

std::string_view to_string(PositionRole role) noexcept {
  switch (role) {
    case PositionRole::Rightmost: return "Rightmost";
    case PositionRole::Interior: return "Interior";
    case PositionRole::Leading: return "Leading";
  }
  return "Rightmost";
}

std::optional<PositionRole> role_from_string(std::string_view name) noexcept {
  for (const auto role : {PositionRole::Rightmost, PositionRole::Interior, PositionRole::Leading}) {
    if (name == to_string(role)) {
      return role;
    }
  }
  return std::nullopt;
}

int half_floor(int x) {
  if (x < 0 || x > 10) {
    throw DomainError("half_floor argument " + std::to_string(x) + " outside 0-10");
  }
  return half_unchecked(x);
}

int odd_bonus(int digit) {
  check_digit(digit, "odd_bonus argument");
  return odd_unchecked(digit);
}

int PositionFormula::evaluate(int digit, int neighbour) const {
  int value = base_value(base, digit, neighbour);
  if (add_neighbour) value += neighbour;
  if (add_half_neighbour) value += half_unchecked(neighbour);
  if (add_odd_bonus) value += odd_unchecked(digit);
  return value;
}

std::string PositionFormula::describe() const {
  std::vector<std::string> terms;
  if (base != BaseTerm::Zero) terms.emplace_back(base_symbol(base));
  if (add_neighbour) terms.emplace_back("n");
  if (add_half_neighbour) terms.emplace_back("half(n)");
  if (add_odd_bonus) terms.emplace_back("odd5(d)");
  return join_terms(terms);
}

std::string PositionFormula::render(int digit, int neighbour) const {
  std::vector<std::string> terms;
  if (base != BaseTerm::Zero) terms.push_back(base_worked(base, digit, neighbour));
  if (add_neighbour) terms.push_back(std::to_string(neighbour));
  if (add_half_neighbour) terms.push_back(std::to_string(half_unchecked(neighbour)));
  if (add_odd_bonus) {
    // The +5 is only written for odd digits, except for x5 where the bonus is
    // the second of only two terms and is written as +0.
    if (digit % 2 != 0) {
      terms.emplace_back("5");
    } else if (base == BaseTerm::Zero) {
      terms.emplace_back("0");
    }
  }
  return join_terms(terms);
}

const RuleSpec& rule_for(Multiplier multiplier) {
  static const std::vector<RuleSpec> rules = build_rules();
  for (const auto& rule : rules) {
    if (rule.multiplier == multiplier) {
      return rule;
    }
  }
  throw DomainError("no rule for multiplier " + std::to_string(multiplier.value()));
}

int position_raw_value(Multiplier multiplier, PositionRole role, int digit, int neighbour) {
  check_digit(digit, "digit");
  check_digit(neighbour, "neighbour");
  if (role == PositionRole::Leading && digit != 0) {
    throw DomainError("the leading position holds the prepended zero, got digit " +
                      std::to_string(digit));
  }
  if (role == PositionRole::Rightmost && neighbour != 0) {
    throw DomainError("the rightmost position has no neighbour, got " +
                      std::to_string(neighbour));
  }
  return rule_for(multiplier).formula(role).evaluate(digit, neighbour);
}

std::string render_step_formula(const PositionFormula& formula, int digit, int neighbour,
                                int raw_value) {
  std::string out = formula.render(digit, neighbour);
  out += '=';
  if (raw_value >= 10) {
    out += '(' + std::to_string(raw_value / 10) + ')' + std::to_string(raw_value % 10);
  } else {
    out += std::to_string(raw_value);
  }
  return out;
}

ComputationTrace multiply_by_rule(const DigitString& multiplicand, Multiplier multiplier) {
  const RuleSpec& rule = rule_for(multiplier);
  const std::size_t length = multiplicand.size();

  ComputationTrace trace;
  trace.multiplicand = multiplicand;
  trace.multiplier = multiplier;
  trace.steps.reserve(length + 1);

  std::vector<Digit> reversed;
  reversed.reserve(length + 2);

  int carry = 0;
  for (std::size_t position = 0; position <= length; ++position) {
    const PositionRole role = position == length ? PositionRole::Leading
                              : position == 0    ? PositionRole::Rightmost
                                                 : PositionRole::Interior;
    const int digit = multiplicand.digit_from_right(position);
    const int neighbour = position == 0 ? 0 : multiplicand.digit_from_right(position - 1);
    const PositionFormula& formula = rule.formula(role);

    TraceStep step;
    step.position_index = static_cast<int>(position);
    step.role = role;
    step.digit = digit;
    step.neighbour = neighbour;
    step.raw_value = formula.evaluate(digit, neighbour);
    step.carry_in = carry;
    step.sum = step.raw_value + carry;
    if (step.sum < 0) {
      throw InvariantError("negative column sum " + std::to_string(step.sum) + " at position " +
                           std::to_string(position) + " of " + to_text(multiplicand) + " x " +
                           std::to_string(multiplier.value()));
    }
    step.result_digit = step.sum % 10;
    step.carry_out = step.sum / 10;
    step.formula_rendering = render_step_formula(formula, digit, neighbour, step.raw_value);

    carry = step.carry_out;
    reversed.push_back(static_cast<Digit>(step.result_digit));
    trace.steps.push_back(std::move(step));
  }
  if (carry != 0) {
    trace.extra_leading_digit = carry;
    reversed.push_back(static_cast<Digit>(carry));
  }
  trace.product = DigitString::from_reversed_digits(reversed);
  return trace;
}

}  // namespace trachtenberg
