#include "trachtenberg/oracle.hpp"

#include <gtest/gtest.h>

#include "test_oracles.hpp"
#include "trachtenberg/errors.hpp"

namespace trachtenberg {
namespace {

std::string ref(const char* a, int m) { return to_text(reference_multiply(parse(a), m)); }

TEST(ReferenceMultiply, Examples) {
  EXPECT_EQ(ref("497", 6), "2982");
  EXPECT_EQ(ref("123", 1), "123");
  EXPECT_EQ(testing::repeated_addition("38", 12), "456");
  EXPECT_EQ(ref("38", 12), "456");
  EXPECT_EQ(ref("497", 0), "0");
  EXPECT_EQ(ref("497", 10), "4970");
  EXPECT_EQ(ref("0", 12), "0");
}

TEST(ReferenceMultiply, RejectsOutOfRangeMultipliers) {
  EXPECT_THROW(reference_multiply(parse("1"), 13), DomainError);
  EXPECT_THROW(reference_multiply(parse("1"), -1), DomainError);
}

TEST(ReferenceMultiply, AgreesWithRepeatedAdditionOnASample) {
  for (int a = 0; a <= 999; a += 7) {
    for (int m = 0; m <= 12; ++m) {
      const std::string text = std::to_string(a);
      ASSERT_EQ(ref(text.c_str(), m), testing::repeated_addition(text, m)) << a << " x " << m;
    }
  }
}

TEST(ReferenceMultiply, TalliesTableLookupsAndAdditions) {
  SchoolbookTally tally;
  reference_multiply(parse("7"), 6, &tally);
  EXPECT_EQ(tally.table_lookups, 1u);
  EXPECT_EQ(tally.additions, 0u);

  tally = {};
  reference_multiply(parse("497"), 9, &tally);
  EXPECT_EQ(tally.table_lookups, 3u);
  EXPECT_EQ(tally.additions, 2u);  // carries 6 into 9x9, 8 into 4x9

  // 123 x 11 = 1230 + 123: three lookups for 123 x 1, three overlapping
  // columns, no carries.
  tally = {};
  reference_multiply(parse("123"), 11, &tally);
  EXPECT_EQ(tally.table_lookups, 3u);
  EXPECT_EQ(tally.additions, 3u);
}

TEST(ExhaustiveVerify, SmallRuns) {
  const auto zero = exhaustive_verify(0, {Multiplier(9)});
  EXPECT_EQ(zero.cases_run, 1u);
  EXPECT_TRUE(zero.mismatches.empty());
  EXPECT_TRUE(zero.passed());

  const auto ten = exhaustive_verify(9, {Multiplier(3)});
  EXPECT_EQ(ten.cases_run, 10u);
  EXPECT_TRUE(ten.mismatches.empty());
}

TEST(ExhaustiveVerify, VerdictIndependentOfWorkerCount) {
  std::vector<Multiplier> all(Multiplier::all().begin(), Multiplier::all().end());
  const auto one = exhaustive_verify(4999, all, 1);
  const auto three = exhaustive_verify(4999, all, 3);
  EXPECT_EQ(one.cases_run, 45000u);
  EXPECT_EQ(three.cases_run, one.cases_run);
  EXPECT_EQ(three.mismatches, one.mismatches);
  EXPECT_EQ(three.invariant_violations, one.invariant_violations);
  EXPECT_TRUE(one.passed());
}

TEST(VerificationReport, MergeIsAssociativeAndCapped) {
  const auto report_with = [](int first, int count) {
    VerificationReport r;
    for (int i = first; i < first + count; ++i) {
      r.cases_run += 1;
      r.mismatch_count += 1;
      r.mismatches.push_back({std::to_string(i), 3, "x", "y"});
    }
    return r;
  };
  const auto a = report_with(0, 60);
  const auto b = report_with(200, 60);
  const auto c = report_with(100, 60);

  auto left = a;
  left.merge(b);
  left.merge(c);
  auto bc = b;
  bc.merge(c);
  auto right = a;
  right.merge(bc);

  EXPECT_EQ(left.mismatches, right.mismatches);
  EXPECT_EQ(left.mismatch_count, 180u);
  EXPECT_EQ(left.cases_run, 180u);
  ASSERT_EQ(left.mismatches.size(), VerificationReport::kMaxRecorded);
  EXPECT_EQ(left.mismatches.front().multiplicand, "0");
  EXPECT_EQ(left.mismatches.back().multiplicand, "139");
  EXPECT_FALSE(left.passed());
}

TEST(RandomVerify, DeterministicPerSeed) {
  std::vector<Multiplier> all(Multiplier::all().begin(), Multiplier::all().end());
  const auto first = random_verify(2000, 60, 99, all);
  const auto second = random_verify(2000, 60, 99, all);
  EXPECT_EQ(first.cases_run, 2000u);
  EXPECT_TRUE(first.passed());
  EXPECT_EQ(first.mismatches, second.mismatches);
}

}  // namespace
}  // namespace trachtenberg
