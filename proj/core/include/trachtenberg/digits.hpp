#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trachtenberg {

using Digit = std::uint8_t;

/// Canonical nonnegative decimal number, most-significant digit first.
///
/// Always holds at least one digit and never a leading zero unless the value
/// is zero itself, in which case the sequence is exactly {0}.
class DigitString {
 public:
  /// The number zero.
  DigitString() : digits_{0} {}

  /// Builds from most-significant-first digits, stripping leading zeros.
  /// Throws DomainError if any element exceeds 9. An empty sequence is zero.
  static DigitString from_digits(std::vector<Digit> digits);

  /// Builds from least-significant-first digits (the order carries run in).
  static DigitString from_reversed_digits(std::span<const Digit> digits);

  static DigitString from_uint(std::uint64_t value);

  std::span<const Digit> digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool is_zero() const noexcept { return digits_.size() == 1 && digits_[0] == 0; }

  /// Digit at `position` counted from the right (0 = units); 0 past the end.
  Digit digit_from_right(std::size_t position) const noexcept {
    return position < digits_.size() ? digits_[digits_.size() - 1 - position] : Digit{0};
  }

  friend bool operator==(const DigitString&, const DigitString&) = default;
  friend std::strong_ordering operator<=>(const DigitString& a, const DigitString& b);

 private:
  explicit DigitString(std::vector<Digit> canonical) : digits_(std::move(canonical)) {}

  std::vector<Digit> digits_;
};

/// Parses a string of ASCII digits. Leading zeros are accepted and stripped;
/// anything else (signs, spaces, separators, empty text) is a ParseError.
DigitString parse(std::string_view text);

std::string to_text(const DigitString& number);

}  // namespace trachtenberg
