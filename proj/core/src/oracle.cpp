#include "trachtenberg/oracle.hpp"

#include <algorithm>
#include <thread>

#include "trachtenberg/errors.hpp"
#include "trachtenberg/random.hpp"
#include "trachtenberg/rules.hpp"

namespace trachtenberg {
namespace {

// The single-digit multiplication table.
constexpr auto kTable = [] {
  std::array<std::array<int, 10>, 10> table{};
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) {
      table[a][b] = a * b;
    }
  }
  return table;
}();

// Product of `a` and a single digit, least significant digit first.
std::vector<Digit> times_digit(const DigitString& a, int digit, SchoolbookTally& tally) {
  std::vector<Digit> out;
  out.reserve(a.size() + 1);
  int carry = 0;
  const auto digits = a.digits();
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    int partial = kTable[*it][digit];
    ++tally.table_lookups;
    if (carry != 0) {
      partial += carry;
      ++tally.additions;
    }
    out.push_back(static_cast<Digit>(partial % 10));
    carry = partial / 10;
  }
  if (carry != 0) {
    out.push_back(static_cast<Digit>(carry));
  }
  return out;
}

// Column addition of two least-significant-first digit vectors.
std::vector<Digit> add_columns(const std::vector<Digit>& x, const std::vector<Digit>& y,
                               SchoolbookTally& tally) {
  std::vector<Digit> out;
  const std::size_t width = std::max(x.size(), y.size());
  out.reserve(width + 1);
  int carry = 0;
  for (std::size_t i = 0; i < width; ++i) {
    int column = 0;
    if (i < x.size() && i < y.size()) {
      column = x[i] + y[i];
      ++tally.additions;
    } else {
      column = i < x.size() ? x[i] : y[i];
    }
    if (carry != 0) {
      column += carry;
      ++tally.additions;
    }
    out.push_back(static_cast<Digit>(column % 10));
    carry = column / 10;
  }
  if (carry != 0) {
    out.push_back(static_cast<Digit>(carry));
  }
  return out;
}

bool mismatch_less(const Mismatch& a, const Mismatch& b) {
  if (a.multiplier != b.multiplier) return a.multiplier < b.multiplier;
  if (a.multiplicand.size() != b.multiplicand.size()) {
    return a.multiplicand.size() < b.multiplicand.size();
  }
  return a.multiplicand < b.multiplicand;
}

template <typename T, typename Less>
void merge_capped(std::vector<T>& into, const std::vector<T>& from, Less less) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end(), less);
  if (into.size() > VerificationReport::kMaxRecorded) {
    into.resize(VerificationReport::kMaxRecorded);
  }
}

void check_case(const DigitString& a, Multiplier m, VerificationReport& report) {
  ++report.cases_run;
  ComputationTrace trace;
  try {
    trace = multiply_by_rule(a, m);
  } catch (const InvariantError& e) {
    ++report.violation_count;
    if (report.invariant_violations.size() < VerificationReport::kMaxRecorded) {
      report.invariant_violations.emplace_back(e.what());
    }
    return;
  }
  for (auto& violation : trace_violations(trace)) {
    ++report.violation_count;
    if (report.invariant_violations.size() < VerificationReport::kMaxRecorded) {
      report.invariant_violations.push_back(std::move(violation));
    }
  }
  const DigitString expected = reference_multiply(a, m.value());
  if (expected != trace.product) {
    ++report.mismatch_count;
    if (report.mismatches.size() < VerificationReport::kMaxRecorded) {
      report.mismatches.push_back({to_text(a), m.value(), to_text(expected), to_text(trace.product)});
    }
  }
}

void normalize(VerificationReport& report) {
  merge_capped(report.mismatches, {}, mismatch_less);
  merge_capped(report.invariant_violations, {}, std::less<>{});
}

}  // namespace

DigitString reference_multiply(const DigitString& a, int m, SchoolbookTally* tally) {
  if (m < 0 || m > 12) {
    throw DomainError("reference multiplier " + std::to_string(m) + " outside 0-12");
  }
  SchoolbookTally local;
  std::vector<Digit> reversed;
  if (m < 10) {
    reversed = times_digit(a, m, local);
  } else {
    // a*10 is a shift: prepend a zero in least-significant-first order.
    std::vector<Digit> shifted;
    shifted.reserve(a.size() + 1);
    shifted.push_back(0);
    const auto digits = a.digits();
    shifted.insert(shifted.end(), digits.rbegin(), digits.rend());
    reversed = add_columns(shifted, times_digit(a, m - 10, local), local);
  }
  if (tally != nullptr) {
    tally->table_lookups += local.table_lookups;
    tally->additions += local.additions;
  }
  return DigitString::from_reversed_digits(reversed);
}

void VerificationReport::merge(const VerificationReport& other) {
  cases_run += other.cases_run;
  mismatch_count += other.mismatch_count;
  violation_count += other.violation_count;
  merge_capped(mismatches, other.mismatches, mismatch_less);
  merge_capped(invariant_violations, other.invariant_violations, std::less<>{});
  duration = std::max(duration, other.duration);
}

VerificationReport exhaustive_verify(std::uint64_t max_value,
                                     const std::vector<Multiplier>& multipliers,
                                     unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  const std::uint64_t total = max_value + 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));

  std::vector<VerificationReport> partial(workers);
  const auto run_range = [&](unsigned index) {
    const std::uint64_t begin = total * index / workers;
    const std::uint64_t end = total * (index + 1) / workers;
    for (std::uint64_t value = begin; value < end; ++value) {
      const DigitString a = DigitString::from_uint(value);
      for (const Multiplier m : multipliers) {
        check_case(a, m, partial[index]);
      }
    }
    normalize(partial[index]);
  };

  if (workers == 1) {
    run_range(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) {
      threads.emplace_back(run_range, i);
    }
  }

  VerificationReport report;
  for (const auto& part : partial) {
    report.merge(part);
  }
  report.duration = std::chrono::steady_clock::now() - start;
  return report;
}

VerificationReport random_verify(std::size_t count, std::size_t max_length, std::uint64_t seed,
                                 const std::vector<Multiplier>& multipliers) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  if (count == 0 || multipliers.empty()) {
    return report;
  }
  max_length = std::max<std::size_t>(max_length, 1);
  Generator generator(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto length = static_cast<std::size_t>(1 + uniform_below(generator, max_length));
    const DigitString a = random_multiplicand(generator, length);
    const Multiplier m = multipliers[uniform_below(generator, multipliers.size())];
    check_case(a, m, report);
  }
  normalize(report);
  report.duration = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace trachtenberg
