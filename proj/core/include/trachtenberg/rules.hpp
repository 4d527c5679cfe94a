#pragma once

#include <array>
#include <string>

#include "trachtenberg/digits.hpp"
#include "trachtenberg/multiplier.hpp"
#include "trachtenberg/trace.hpp"

namespace trachtenberg {

/// floor(x / 2) for 0 <= x <= 10; the odd half is thrown away.
int half_floor(int x);

/// 5 for an odd digit, 0 for an even one.
int odd_bonus(int digit);

enum class BaseTerm {
  Zero,
  Digit,                  // d
  DoubleDigit,            // 2d
  TenComplement,          // 10-d
  DoubleTenComplement,    // 2(10-d)
  NineComplement,         // 9-d
  DoubleNineComplement,   // 2(9-d)
  NeighbourMinusOne,      // n-1
  NeighbourMinusTwo,      // n-2
  HalfNeighbourMinusOne,  // half(n)-1
  HalfNeighbourMinusTwo,  // half(n)-2
};

/// A position formula over the current digit d and its right neighbour n:
/// base + [n] + [half(n)] + [odd5(d)].
struct PositionFormula {
  BaseTerm base = BaseTerm::Zero;
  bool add_neighbour = false;
  bool add_half_neighbour = false;
  bool add_odd_bonus = false;

  int evaluate(int digit, int neighbour) const;

  /// Symbolic form, e.g. "2(9-d)+half(n)+odd5(d)".
  std::string describe() const;

  /// Worked expression for concrete inputs in hand notation, e.g. "9+3+5" or
  /// "(10-7)×2+5". Does not include the "=value" part.
  std::string render(int digit, int neighbour) const;

  friend bool operator==(const PositionFormula&, const PositionFormula&) = default;
};

struct RuleSpec {
  Multiplier multiplier;
  std::array<PositionFormula, 3> formulas;  // indexed by PositionRole

  const PositionFormula& formula(PositionRole role) const {
    return formulas[static_cast<std::size_t>(role)];
  }
};

const RuleSpec& rule_for(Multiplier multiplier);

/// Raw formula value at one position, before the incoming carry. Leading
/// positions must have digit 0 and Rightmost positions neighbour 0; anything
/// else is a DomainError.
int position_raw_value(Multiplier multiplier, PositionRole role, int digit, int neighbour);

/// "expr=value" with the tens of a two-digit value in parentheses, e.g.
/// "4+9=(1)3".
std::string render_step_formula(const PositionFormula& formula, int digit, int neighbour,
                                int raw_value);

/// Multiplies right to left over 0·multiplicand, adding each carry after the
/// raw value. A carry left over after the leading position becomes one extra
/// product digit.
ComputationTrace multiply_by_rule(const DigitString& multiplicand, Multiplier multiplier);

}  // namespace trachtenberg
