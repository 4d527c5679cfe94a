#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace trachtenberg {

/// One of the small factors that have a digit rule: 3-9, 11 and 12.
class Multiplier {
 public:
  /// Throws DomainError for any unsupported value.
  explicit Multiplier(int value);

  static bool is_supported(int value) noexcept;
  static std::optional<Multiplier> try_from(int value) noexcept;

  /// Every supported multiplier in ascending order.
  static const std::array<Multiplier, 9>& all() noexcept;

  int value() const noexcept { return value_; }

  friend auto operator<=>(const Multiplier&, const Multiplier&) = default;

 private:
  struct Unchecked {};
  constexpr Multiplier(int value, Unchecked) noexcept : value_(value) {}

  int value_;
};

/// Where a position sits in the multiplicand extended by one prepended zero.
enum class PositionRole {
  Rightmost,  // last digit of the multiplicand
  Interior,   // every other actual digit, including the leftmost one
  Leading,    // the prepended zero
};

std::string_view to_string(PositionRole role) noexcept;

/// Inverse of to_string; nullopt for unknown names.
std::optional<PositionRole> role_from_string(std::string_view name) noexcept;

}  // namespace trachtenberg
