#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "trachtenberg/digits.hpp"
#include "trachtenberg/multiplier.hpp"
#include "trachtenberg/trace.hpp"

namespace trachtenberg {

enum class CountMethod { Trachtenberg, Schoolbook };

std::string_view to_string(CountMethod method) noexcept;

/// Elementary operations spent on one multiplication.
///
/// Cost model for the digit rules: each +n, +half(n), +odd5(d), n-1 and n-2
/// term is one addition, and an incoming carry is one more addition when it
/// is nonzero. Each doubling, halving and 9-d / 10-d complement is one
/// operation of its kind; each odd5(d) term is also one odd_check. The schoolbook
/// baseline counts single-digit table products and the additions that absorb
/// carries or combine partial products.
struct OpCountReport {
  CountMethod method = CountMethod::Trachtenberg;
  std::size_t multiplicand_length = 0;
  int multiplier = 0;
  std::size_t additions = 0;
  std::size_t doublings = 0;
  std::size_t halvings = 0;
  std::size_t complements = 0;
  std::size_t odd_checks = 0;
  std::size_t table_lookups = 0;

  std::size_t total() const noexcept {
    return additions + doublings + halvings + complements + odd_checks + table_lookups;
  }

  friend bool operator==(const OpCountReport&, const OpCountReport&) = default;
};

OpCountReport count_trace_ops(const ComputationTrace& trace);

OpCountReport count_schoolbook_ops(const DigitString& a, Multiplier multiplier);

/// Comma-separated header and rows, columns in OpCountReport field order.
std::string csv_header();
std::string to_csv_row(const OpCountReport& report);

/// Space-aligned table of reports with a header line.
std::string render_reports(const std::vector<OpCountReport>& reports);

}  // namespace trachtenberg
