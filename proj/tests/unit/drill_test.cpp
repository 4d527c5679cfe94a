#include "trachtenberg/drill.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "trachtenberg/errors.hpp"
#include "trachtenberg/rules.hpp"

namespace trachtenberg {
namespace {

DrillConfig config_for(std::vector<int> multipliers, int min_digits, int max_digits,
                       std::uint64_t seed, int problems, DrillMode mode = DrillMode::GuidedSteps) {
  DrillConfig config;
  for (const int m : multipliers) config.multipliers.emplace_back(m);
  config.min_digits = min_digits;
  config.max_digits = max_digits;
  config.seed = seed;
  config.problem_count = problems;
  config.mode = mode;
  return config;
}

// Smallest seed whose first generated problem is `multiplicand` (x6, 3 digits).
std::uint64_t seed_for_first_problem(const std::string& multiplicand) {
  for (std::uint64_t seed = 0; seed < 1'000'000; ++seed) {
    auto problems = generate_problems(config_for({6}, 3, 3, seed, 1));
    if (to_text(problems[0].multiplicand) == multiplicand) {
      return seed;
    }
  }
  throw std::runtime_error("no seed found");
}

DrillSession session_on_497_times_6(DrillMode mode = DrillMode::GuidedSteps, int problems = 1) {
  static const std::uint64_t seed = seed_for_first_problem("497");
  return DrillSession::create(config_for({6}, 3, 3, seed, problems, mode), "test", 1000);
}

Answer digit_carry(int digit, int carry) { return Answer{digit, carry, std::nullopt, std::nullopt}; }

// Answers every challenge, correctly when `correct` says so, and returns the
// issued challenges in order.
std::vector<StepChallenge> drive(DrillSession& session, std::int64_t& clock,
                                 const std::function<bool(std::size_t)>& correct) {
  std::vector<StepChallenge> issued;
  while (const auto challenge = session.next_challenge(++clock)) {
    issued.push_back(*challenge);
    const DrillProblem& problem = session.problems()[challenge->problem_index];
    Answer answer;
    const bool right = correct(issued.size() - 1);
    switch (challenge->asked) {
      case AskedValue::ResultDigitAndCarry: {
        const TraceStep& step = problem.trace.steps[static_cast<std::size_t>(challenge->position_index)];
        answer = digit_carry(right ? step.result_digit : (step.result_digit + 1) % 10, step.carry_out);
        break;
      }
      case AskedValue::RawValue: {
        const TraceStep& step = problem.trace.steps[static_cast<std::size_t>(challenge->position_index)];
        answer.raw_value = right ? step.raw_value : step.raw_value + 1;
        break;
      }
      case AskedValue::FinalProduct:
        answer.product = right ? to_text(problem.trace.product) : "1" + to_text(problem.trace.product);
        break;
    }
    session.submit(challenge->challenge_id, answer, ++clock);
  }
  return issued;
}

TEST(DrillConfig, Validation) {
  EXPECT_THROW(config_for({}, 1, 3, 1, 1).validate(), ConfigError);
  EXPECT_THROW(config_for({6}, 0, 3, 1, 1).validate(), ConfigError);
  EXPECT_THROW(config_for({6}, 4, 3, 1, 1).validate(), ConfigError);
  EXPECT_THROW(config_for({6}, 1, 13, 1, 1).validate(), ConfigError);
  EXPECT_THROW(config_for({6}, 1, 3, 1, 0).validate(), ConfigError);
  EXPECT_NO_THROW(config_for({6}, 12, 12, 1, 1).validate());
  EXPECT_THROW(new_session(config_for({}, 1, 3, 1, 1)), ConfigError);
}

TEST(DrillConfig, JsonRoundTrip) {
  DrillConfig config = config_for({12, 3, 9}, 2, 5, 18446744073709551615ull, 7, DrillMode::AnswerOnly);
  config.ask_raw_value = true;
  const DrillConfig parsed = config_from_json(nlohmann::json::parse(to_json(config).dump()));
  EXPECT_EQ(parsed.seed, config.seed);
  EXPECT_EQ(parsed.mode, DrillMode::AnswerOnly);
  EXPECT_EQ(parsed.multipliers, (std::vector<Multiplier>{Multiplier(3), Multiplier(9), Multiplier(12)}));
  EXPECT_TRUE(parsed.ask_raw_value);
}

TEST(DrillConfig, JsonErrorsNameTheField) {
  const auto field_of = [](const char* text) {
    try {
      config_from_json(nlohmann::json::parse(text));
    } catch (const ValidationError& e) {
      return e.field();
    }
    return std::string("<no validation error>");
  };
  EXPECT_EQ(field_of(R"({"min_digits": 1})"), "multipliers");
  EXPECT_EQ(field_of(R"({"multipliers": "6"})"), "multipliers");
  EXPECT_EQ(field_of(R"({"multipliers": [6], "min_digits": "2"})"), "min_digits");
  EXPECT_EQ(field_of(R"({"multipliers": [6], "mode": "Fast"})"), "mode");
  EXPECT_EQ(field_of(R"({"multipliers": [6], "seed": -4})"), "seed");
  EXPECT_EQ(field_of(R"({"multipliers": [6], "seed": "12x"})"), "seed");
  EXPECT_EQ(field_of(R"({"multipliers": [6], "seed": "18446744073709551616"})"), "seed");
  EXPECT_EQ(field_of(R"({"multipliers": [6], "ask_raw_value": 1})"), "ask_raw_value");
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"multipliers": [2]})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"multipliers": []})")), ConfigError);
  EXPECT_EQ(config_from_json(nlohmann::json::parse(R"({"multipliers": [6], "seed": 42})")).seed, 42u);
}

TEST(GenerateProblems, DeterministicAndWithinBounds) {
  const DrillConfig config = config_for({3, 7, 11}, 2, 6, 42, 200);
  const auto first = generate_problems(config);
  const auto second = generate_problems(config);
  ASSERT_EQ(first.size(), 200u);
  std::set<int> seen;
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].multiplicand, second[i].multiplicand);
    EXPECT_EQ(first[i].multiplier, second[i].multiplier);
    EXPECT_GE(first[i].multiplicand.size(), 2u);
    EXPECT_LE(first[i].multiplicand.size(), 6u);
    EXPECT_NE(first[i].multiplicand.digits()[0], 0);
    EXPECT_EQ(first[i].trace, multiply_by_rule(first[i].multiplicand, first[i].multiplier));
    seen.insert(first[i].multiplier.value());
  }
  EXPECT_EQ(seen, (std::set<int>{3, 7, 11}));
}

// Pins the generator so a change of algorithm cannot go unnoticed: seeds
// must replay the same problems on every platform.
TEST(GenerateProblems, SeedStable) {
  const auto problems = generate_problems(config_for({3, 4, 5, 6, 7, 8, 9, 11, 12}, 1, 12, 42, 3));
  std::string fingerprint;
  for (const auto& p : problems) {
    fingerprint += to_text(p.multiplicand) + "x" + std::to_string(p.multiplier.value()) + ";";
  }
  EXPECT_EQ(fingerprint, "521864075x6;2x3;709194599x9;");
}

TEST(GenerateProblems, DegenerateBounds) {
  const auto problems = generate_problems(config_for({9}, 1, 1, 5, 3));
  ASSERT_EQ(problems.size(), 3u);
  for (const auto& p : problems) {
    EXPECT_EQ(p.multiplicand.size(), 1u);
    EXPECT_EQ(p.multiplier.value(), 9);
  }
}

TEST(NextChallenge, GuidedStartsAtTheRightmostPosition) {
  DrillSession session = session_on_497_times_6();
  const auto challenge = session.next_challenge(1001);
  ASSERT_TRUE(challenge);
  EXPECT_EQ(challenge->multiplicand, "497");
  EXPECT_EQ(challenge->multiplier, 6);
  EXPECT_EQ(challenge->position_index, 0);
  EXPECT_EQ(challenge->role, PositionRole::Rightmost);
  EXPECT_EQ(challenge->digit, 7);
  EXPECT_EQ(challenge->neighbour, 0);
  EXPECT_EQ(challenge->carry_in, 0);
  EXPECT_EQ(challenge->asked, AskedValue::ResultDigitAndCarry);
  EXPECT_EQ(challenge->position_count, 4u);
  // Asking again does not issue a new challenge.
  EXPECT_EQ(session.next_challenge(1002), challenge);
  EXPECT_EQ(session.events().size(), 2u);
}

TEST(NextChallenge, AnswerOnlyAsksForTheProduct) {
  DrillSession session = session_on_497_times_6(DrillMode::AnswerOnly);
  const auto challenge = session.next_challenge(1001);
  ASSERT_TRUE(challenge);
  EXPECT_EQ(challenge->asked, AskedValue::FinalProduct);
  const StepResponse response =
      session.submit(challenge->challenge_id, Answer{{}, {}, {}, "02982"}, 1002);
  EXPECT_EQ(response.verdict, Verdict::Correct);
  EXPECT_EQ(response.expected.product, "2982");
  EXPECT_EQ(response.explanation, "497 × 6 = 2982: 0+2=2 | 4+4=8 | 9+3+5=(1)7 | 7+0+5=(1)2");
}

TEST(NextChallenge, FinishedSessionHasNone) {
  DrillSession session = session_on_497_times_6(DrillMode::AnswerOnly);
  const auto challenge = session.next_challenge(1);
  session.submit(challenge->challenge_id, Answer{{}, {}, {}, "1"}, 2);
  EXPECT_TRUE(session.finished());
  EXPECT_FALSE(session.next_challenge(3).has_value());
  EXPECT_THROW(session.submit(challenge->challenge_id, Answer{{}, {}, {}, "1"}, 4), ChallengeError);
}

TEST(SubmitResponse, CorrectAnswer) {
  DrillSession session = session_on_497_times_6();
  const auto challenge = session.next_challenge(1001);
  const StepResponse response = session.submit(challenge->challenge_id, digit_carry(2, 1), 1002);
  EXPECT_EQ(response.verdict, Verdict::Correct);
  EXPECT_EQ(response.explanation, "7+0+5=(1)2");
  EXPECT_EQ(session.score(), (Score{1, 1}));
  const auto next = session.next_challenge(1003);
  EXPECT_EQ(next->position_index, 1);
  EXPECT_EQ(next->carry_in, 1);
}

TEST(SubmitResponse, IncorrectAnswerCarriesExpectedValues) {
  DrillSession session = session_on_497_times_6();
  const auto challenge = session.next_challenge(1001);
  const StepResponse response = session.submit(challenge->challenge_id, digit_carry(3, 0), 1002);
  EXPECT_EQ(response.verdict, Verdict::Incorrect);
  EXPECT_EQ(response.expected.digit, 2);
  EXPECT_EQ(response.expected.carry, 1);
  EXPECT_EQ(response.explanation, "7+0+5=(1)2");
  EXPECT_EQ(session.score(), (Score{0, 1}));
}

TEST(SubmitResponse, RejectsStaleAndUnknownChallenges) {
  DrillSession session = session_on_497_times_6();
  const auto challenge = session.next_challenge(1001);
  session.submit(challenge->challenge_id, digit_carry(2, 1), 1002);
  EXPECT_THROW(session.submit(challenge->challenge_id, digit_carry(2, 1), 1003), ChallengeError);
  EXPECT_THROW(session.submit("nonsense", digit_carry(2, 1), 1003), ChallengeError);
  EXPECT_EQ(session.score().total, 1u);
}

TEST(SubmitResponse, RejectsMalformedAnswersWithoutSideEffects) {
  DrillSession session = session_on_497_times_6();
  const auto challenge = session.next_challenge(1001);
  const auto events = session.events().size();
  EXPECT_THROW(session.submit(challenge->challenge_id, Answer{2, {}, {}, {}}, 1002), ValidationError);
  EXPECT_THROW(session.submit(challenge->challenge_id, digit_carry(12, 1), 1002), ValidationError);
  EXPECT_THROW(session.submit(challenge->challenge_id, digit_carry(2, -1), 1002), ValidationError);
  EXPECT_THROW(session.submit(challenge->challenge_id, Answer{{}, {}, {}, "2982"}, 1002),
               ValidationError);
  EXPECT_EQ(session.events().size(), events);
  EXPECT_EQ(session.score().total, 0u);
  EXPECT_EQ(session.next_challenge(1003), challenge);

  DrillSession answer_only = session_on_497_times_6(DrillMode::AnswerOnly);
  const auto product_challenge = answer_only.next_challenge(1);
  EXPECT_THROW(answer_only.submit(product_challenge->challenge_id, Answer{{}, {}, {}, "29a"}, 2),
               ValidationError);
}

TEST(SubmitResponse, SubmittingWithoutFetchingStillLogsTheChallenge) {
  DrillSession session = session_on_497_times_6();
  session.submit("p0-s0-d", digit_carry(2, 1), 5);
  ASSERT_EQ(session.events().size(), 3u);
  EXPECT_EQ(session.events()[1]["kind"], "challenge");
  EXPECT_EQ(session.events()[2]["kind"], "response");
}

TEST(DrillSession, GuidedProblemTakesOneSubmissionPerPosition) {
  DrillSession session = DrillSession::create(config_for({3, 8, 12}, 1, 8, 7, 25), "s", 0);
  std::int64_t clock = 0;
  const auto issued = drive(session, clock, [](std::size_t) { return true; });
  std::size_t expected = 0;
  for (const auto& p : session.problems()) expected += p.multiplicand.size() + 1;
  EXPECT_EQ(issued.size(), expected);
  EXPECT_TRUE(session.finished());

  // Monotone cursor: challenge ids unique, positions visited right to left
  // without gaps.
  std::set<std::string> ids;
  for (std::size_t i = 0; i < issued.size(); ++i) {
    EXPECT_TRUE(ids.insert(issued[i].challenge_id).second);
    if (i > 0 && issued[i].problem_index == issued[i - 1].problem_index) {
      EXPECT_EQ(issued[i].position_index, issued[i - 1].position_index + 1);
    } else {
      EXPECT_EQ(issued[i].position_index, 0);
    }
  }
  EXPECT_EQ(session.events().back()["kind"], "finished");
}

TEST(DrillSession, RawValueQuestionsPrecedeResultQuestions) {
  DrillConfig config = config_for({4}, 2, 2, 3, 1);
  config.ask_raw_value = true;
  DrillSession session = DrillSession::create(config, "s", 0);
  std::int64_t clock = 0;
  const auto issued = drive(session, clock, [](std::size_t) { return true; });
  ASSERT_EQ(issued.size(), 6u);
  for (std::size_t i = 0; i < issued.size(); ++i) {
    EXPECT_EQ(issued[i].asked, i % 2 == 0 ? AskedValue::RawValue : AskedValue::ResultDigitAndCarry);
    EXPECT_EQ(issued[i].position_index, static_cast<int>(i / 2));
  }
  EXPECT_EQ(session.score(), (Score{6, 6}));
}

TEST(DrillSession, VerdictsAgreeWithTheRuleEngine) {
  DrillSession session = DrillSession::create(config_for({3, 4, 5, 6, 7, 8, 9, 11, 12}, 1, 6, 99, 40), "s", 0);
  std::mt19937_64 rng(1);
  std::int64_t clock = 0;
  while (const auto challenge = session.next_challenge(++clock)) {
    const Answer answer = digit_carry(static_cast<int>(rng() % 10), static_cast<int>(rng() % 3));
    const StepResponse response = session.submit(challenge->challenge_id, answer, ++clock);
    const ComputationTrace trace = multiply_by_rule(parse(challenge->multiplicand),
                                                    Multiplier(challenge->multiplier));
    const TraceStep& step = trace.steps[static_cast<std::size_t>(challenge->position_index)];
    const bool matches = *answer.digit == step.result_digit && *answer.carry == step.carry_out;
    EXPECT_EQ(response.verdict == Verdict::Correct, matches);
    EXPECT_EQ(response.expected.digit, step.result_digit);
    EXPECT_EQ(response.expected.carry, step.carry_out);
    EXPECT_EQ(response.explanation, step.formula_rendering);
  }
}

TEST(SessionSummary, Accuracy) {
  DrillSession all_right = DrillSession::create(config_for({6, 9}, 1, 3, 4, 5), "a", 0);
  std::int64_t clock = 0;
  drive(all_right, clock, [](std::size_t) { return true; });
  EXPECT_EQ(all_right.summary().accuracy, 1.0);
  EXPECT_TRUE(all_right.summary().finished);

  DrillSession mixed = DrillSession::create(config_for({6}, 3, 3, 4, 1), "b", 0);
  clock = 0;
  drive(mixed, clock, [](std::size_t i) { return i != 2; });
  const SessionSummary summary = mixed.summary();
  EXPECT_EQ(summary.score, (Score{3, 4}));
  EXPECT_EQ(summary.accuracy, 0.75);
  ASSERT_EQ(summary.per_multiplier.size(), 1u);
  EXPECT_EQ(summary.per_multiplier[0].accuracy, 0.75);
  EXPECT_DOUBLE_EQ(summary.elapsed_seconds, 0.008);

  DrillSession empty = DrillSession::create(config_for({6, 7}, 1, 3, 4, 3), "c", 0);
  EXPECT_EQ(empty.summary().score.total, 0u);
  EXPECT_FALSE(empty.summary().accuracy.has_value());
  EXPECT_FALSE(empty.summary().finished);
  for (const auto& entry : empty.summary().per_multiplier) {
    EXPECT_FALSE(entry.accuracy.has_value());
  }
}

TEST(SessionSummary, PerMultiplierBreakdown) {
  DrillSession session = DrillSession::create(config_for({3, 11}, 1, 2, 8, 12), "p", 0);
  std::int64_t clock = 0;
  drive(session, clock, [](std::size_t i) { return i % 3 != 0; });
  const SessionSummary summary = session.summary();
  std::size_t correct = 0;
  std::size_t total = 0;
  for (const auto& entry : summary.per_multiplier) {
    correct += entry.score.correct;
    total += entry.score.total;
  }
  EXPECT_EQ(correct, summary.score.correct);
  EXPECT_EQ(total, summary.score.total);
}

TEST(Replay, RebuildsTheSameSession) {
  DrillConfig config = config_for({3, 7}, 1, 4, 21, 6);
  config.ask_raw_value = true;
  DrillSession original = DrillSession::create(config, "replay-me", 50);
  std::int64_t clock = 50;
  // Stop part way through.
  for (int i = 0; i < 9; ++i) {
    const auto challenge = original.next_challenge(++clock);
    Answer answer;
    if (challenge->asked == AskedValue::RawValue) {
      answer.raw_value = i;
    } else {
      answer = digit_carry(i % 10, 0);
    }
    original.submit(challenge->challenge_id, answer, ++clock);
  }
  original.next_challenge(++clock);

  const DrillSession replayed = DrillSession::replay(original.events());
  EXPECT_EQ(replayed.id(), original.id());
  EXPECT_EQ(replayed.config(), original.config());
  EXPECT_EQ(replayed.cursor(), original.cursor());
  EXPECT_EQ(replayed.responses(), original.responses());
  EXPECT_EQ(replayed.summary(), original.summary());
  EXPECT_EQ(replayed.events(), original.events());
}

TEST(Replay, RejectsInconsistentLogs) {
  DrillSession session = session_on_497_times_6();
  const auto challenge = session.next_challenge(1001);
  session.submit(challenge->challenge_id, digit_carry(2, 1), 1002);
  auto events = session.events();

  auto flipped = events;
  flipped[2]["verdict"] = "Incorrect";
  try {
    DrillSession::replay(flipped);
    FAIL() << "expected PersistenceError";
  } catch (const PersistenceError& e) {
    EXPECT_EQ(e.line(), 3u);
  }

  auto wrong_start = events;
  wrong_start.erase(wrong_start.begin());
  EXPECT_THROW(DrillSession::replay(wrong_start), PersistenceError);

  auto unknown = events;
  unknown.push_back({{"kind", "party"}, {"at", 5}});
  EXPECT_THROW(DrillSession::replay(unknown), PersistenceError);

  EXPECT_THROW(DrillSession::replay(std::vector<nlohmann::json>{}), PersistenceError);
}

TEST(SessionIds, AreValidAndDistinct) {
  std::set<std::string> ids;
  for (int i = 0; i < 100; ++i) {
    const std::string id = make_session_id();
    EXPECT_TRUE(is_valid_session_id(id));
    ids.insert(id);
  }
  EXPECT_EQ(ids.size(), 100u);
  EXPECT_FALSE(is_valid_session_id("../etc/passwd"));
  EXPECT_FALSE(is_valid_session_id(""));
}

}  // namespace
}  // namespace trachtenberg
