#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "trachtenberg/digits.hpp"
#include "trachtenberg/multiplier.hpp"
#include "trachtenberg/trace.hpp"

namespace trachtenberg {

enum class DrillMode { GuidedSteps, AnswerOnly };
enum class AskedValue { RawValue, ResultDigitAndCarry, FinalProduct };
enum class Verdict { Correct, Incorrect };

std::string_view to_string(DrillMode mode) noexcept;
std::string_view to_string(AskedValue asked) noexcept;
std::string_view to_string(Verdict verdict) noexcept;

struct DrillConfig {
  static constexpr int kMaxDigits = 12;

  std::vector<Multiplier> multipliers;
  int min_digits = 1;
  int max_digits = 3;
  DrillMode mode = DrillMode::GuidedSteps;
  std::uint64_t seed = 0;
  int problem_count = 10;
  // GuidedSteps only: ask for the raw value of each position before the
  // result digit and carry.
  bool ask_raw_value = false;

  /// Throws ConfigError describing the first violated bound.
  void validate() const;

  friend bool operator==(const DrillConfig&, const DrillConfig&) = default;
};

nlohmann::json to_json(const DrillConfig& config);

/// Parses a config document. Missing optional members take the defaults
/// above; `multipliers` is required. Type errors raise ValidationError with
/// the member name; bound violations raise ConfigError.
DrillConfig config_from_json(const nlohmann::json& document);

struct DrillProblem {
  DigitString multiplicand;
  Multiplier multiplier;
  ComputationTrace trace;
};

/// Deterministic problem list for a config.
std::vector<DrillProblem> generate_problems(const DrillConfig& config);

struct Cursor {
  std::size_t problem = 0;
  std::size_t step = 0;  // trace step (position) within the problem
  std::size_t part = 0;  // 0 = raw value when asked, else the result question

  friend bool operator==(const Cursor&, const Cursor&) = default;
};

struct StepChallenge {
  std::string challenge_id;
  std::size_t problem_index = 0;
  std::size_t problem_count = 0;
  std::string multiplicand;
  int multiplier = 0;
  std::size_t position_count = 0;
  int position_index = 0;
  PositionRole role = PositionRole::Rightmost;
  int digit = 0;
  int neighbour = 0;
  int carry_in = 0;
  AskedValue asked = AskedValue::ResultDigitAndCarry;

  friend bool operator==(const StepChallenge&, const StepChallenge&) = default;
};

/// A learner's answer, or the expected values. Which members are set depends
/// on the question: digit+carry, raw_value, or product.
struct Answer {
  std::optional<int> digit;
  std::optional<int> carry;
  std::optional<int> raw_value;
  std::optional<std::string> product;

  friend bool operator==(const Answer&, const Answer&) = default;
};

struct StepResponse {
  std::string challenge_id;
  std::size_t problem_index = 0;
  int multiplier = 0;
  AskedValue asked = AskedValue::ResultDigitAndCarry;
  Answer answered;
  Verdict verdict = Verdict::Incorrect;
  Answer expected;
  std::string explanation;
  std::int64_t answered_at_ms = 0;

  friend bool operator==(const StepResponse&, const StepResponse&) = default;
};

struct Score {
  std::size_t correct = 0;
  std::size_t total = 0;

  friend bool operator==(const Score&, const Score&) = default;
};

struct MultiplierAccuracy {
  int multiplier = 0;
  Score score;
  std::optional<double> accuracy;

  friend bool operator==(const MultiplierAccuracy&, const MultiplierAccuracy&) = default;
};

struct SessionSummary {
  std::string session_id;
  Score score;
  std::optional<double> accuracy;  // absent while nothing has been answered
  std::vector<MultiplierAccuracy> per_multiplier;
  double elapsed_seconds = 0.0;
  bool finished = false;

  friend bool operator==(const SessionSummary&, const SessionSummary&) = default;
};

nlohmann::json to_json(const StepChallenge& challenge);
nlohmann::json to_json(const Answer& answer);
nlohmann::json to_json(const StepResponse& response);
nlohmann::json to_json(const SessionSummary& summary);

/// Reads an answer body: `digit` and `carry`, `raw_value`, or `product`.
/// Throws ValidationError on wrongly typed members.
Answer answer_from_json(const nlohmann::json& document);

/// One practice session. Every state change is also appended to an event
/// log (`created`, `challenge`, `response`, `finished` records) from which
/// the session can be rebuilt exactly.
///
/// Not internally synchronized; callers serialize access per session.
class DrillSession {
 public:
  /// Throws ConfigError for an invalid config.
  static DrillSession create(DrillConfig config, std::string session_id,
                             std::int64_t created_at_ms);

  /// Rebuilds a session by replaying log records in order. Throws
  /// PersistenceError (with the 1-based record number) on records that are
  /// malformed or inconsistent with the replayed state.
  /// `line_numbers`, when given, maps each record to its line in the log
  /// file for error messages.
  static DrillSession replay(std::span<const nlohmann::json> events,
                             std::span<const std::size_t> line_numbers = {});

  const std::string& id() const noexcept { return id_; }
  const DrillConfig& config() const noexcept { return config_; }
  std::int64_t created_at_ms() const noexcept { return created_at_ms_; }
  const std::vector<DrillProblem>& problems() const noexcept { return problems_; }
  const Cursor& cursor() const noexcept { return cursor_; }
  const std::vector<StepResponse>& responses() const noexcept { return responses_; }
  const Score& score() const noexcept { return score_; }
  bool finished() const noexcept { return finished_; }
  const std::vector<nlohmann::json>& events() const noexcept { return events_; }

  /// The open challenge, or nullopt once the session is finished. Asking
  /// again before answering returns the same challenge.
  std::optional<StepChallenge> next_challenge(std::int64_t now_ms);

  /// Judges an answer to the open challenge and advances the cursor.
  /// Throws ChallengeError for a stale or unknown challenge id and
  /// ValidationError for an answer of the wrong shape or range.
  StepResponse submit(std::string_view challenge_id, const Answer& answer, std::int64_t now_ms);

  SessionSummary summary() const;

 private:
  DrillSession() = default;

  StepChallenge current_challenge() const;
  void advance();

  std::string id_;
  DrillConfig config_;
  std::int64_t created_at_ms_ = 0;
  std::vector<DrillProblem> problems_;
  Cursor cursor_;
  bool challenge_logged_ = false;
  std::vector<StepResponse> responses_;
  Score score_;
  bool finished_ = false;
  std::vector<nlohmann::json> events_;
};

std::int64_t now_ms();

/// Random 16-hex-digit session id.
std::string make_session_id();

bool is_valid_session_id(std::string_view id) noexcept;

// Free-function forms of the session operations.
DrillSession new_session(const DrillConfig& config);
std::optional<StepChallenge> next_challenge(DrillSession& session);
StepResponse submit_response(DrillSession& session, std::string_view challenge_id,
                             const Answer& answer);
SessionSummary session_summary(const DrillSession& session);

}  // namespace trachtenberg
