#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trachtenberg/digits.hpp"
#include "trachtenberg/multiplier.hpp"

namespace trachtenberg {

/// Primitive-operation tally of one schoolbook multiplication.
struct SchoolbookTally {
  std::size_t table_lookups = 0;
  std::size_t additions = 0;
};

/// Schoolbook long multiplication of `a` by 0 <= m <= 12. Shares no code with
/// the digit rules. Multipliers 10-12 are split as a*10 + a*(m-10) so every
/// table product stays single digit. When `tally` is given the lookups and
/// additions performed are accumulated into it.
DigitString reference_multiply(const DigitString& a, int m, SchoolbookTally* tally = nullptr);

struct Mismatch {
  std::string multiplicand;
  int multiplier = 0;
  std::string expected;
  std::string actual;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerificationReport {
  static constexpr std::size_t kMaxRecorded = 100;

  std::uint64_t cases_run = 0;
  std::vector<Mismatch> mismatches;  // capped at kMaxRecorded, ordered by (multiplier, value)
  std::uint64_t mismatch_count = 0;  // uncapped
  std::vector<std::string> invariant_violations;  // capped at kMaxRecorded
  std::uint64_t violation_count = 0;
  std::chrono::duration<double> duration{};

  bool passed() const noexcept { return mismatch_count == 0 && violation_count == 0; }

  /// Associative merge used to combine per-worker partial reports.
  void merge(const VerificationReport& other);
};

/// Compares the digit rules with the schoolbook reference for every
/// multiplicand 0..max_value and every listed multiplier, checking the trace
/// invariants of each case. `workers` == 0 picks the hardware concurrency.
VerificationReport exhaustive_verify(std::uint64_t max_value,
                                     const std::vector<Multiplier>& multipliers,
                                     unsigned workers = 0);

/// Same comparison over `count` pseudo-random multiplicands of 1..max_length
/// digits (nonzero leading digit) with uniformly drawn multipliers. Seeded
/// with mt19937_64, so a given seed always checks the same cases.
VerificationReport random_verify(std::size_t count, std::size_t max_length, std::uint64_t seed,
                                 const std::vector<Multiplier>& multipliers);

}  // namespace trachtenberg
