#include "trachtenberg/drill.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <map>
#include <random>

#include "trachtenberg/errors.hpp"
#include "trachtenberg/random.hpp"
#include "trachtenberg/rules.hpp"

namespace trachtenberg {
namespace {

using nlohmann::json;

constexpr int kMaxProblems = 10000;

template <typename Enum, std::size_t N>
std::optional<Enum> enum_from_string(std::string_view name, const std::array<Enum, N>& values) {
  for (const Enum value : values) {
    if (name == to_string(value)) {
      return value;
    }
  }
  return std::nullopt;
}

std::optional<Verdict> verdict_from_string(std::string_view name) {
  return enum_from_string(name, std::array{Verdict::Correct, Verdict::Incorrect});
}

int int_field(const json& document, const char* name, int fallback) {
  const auto it = document.find(name);
  if (it == document.end() || it->is_null()) {
    return fallback;
  }
  if (!it->is_number_integer()) {
    throw ValidationError(std::string(name) + " must be an integer", name);
  }
  const auto value = it->get<std::int64_t>();
  if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
    throw ValidationError(std::string(name) + " is out of range", name);
  }
  return static_cast<int>(value);
}

std::optional<int> optional_int(const json& document, const char* name) {
  const auto it = document.find(name);
  if (it == document.end() || it->is_null()) {
    return std::nullopt;
  }
  return int_field(document, name, 0);
}

std::string challenge_id_for(const Cursor& cursor, AskedValue asked) {
  const char tag = asked == AskedValue::RawValue             ? 'r'
                   : asked == AskedValue::ResultDigitAndCarry ? 'd'
                                                              : 'f';
  return "p" + std::to_string(cursor.problem) + "-s" + std::to_string(cursor.step) + "-" + tag;
}

std::string product_explanation(const ComputationTrace& trace) {
  std::string out = to_text(trace.multiplicand) + " × " + std::to_string(trace.multiplier.value()) +
                    " = " + to_text(trace.product) + ":";
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    out += (it == trace.steps.rbegin() ? " " : " | ") + it->formula_rendering;
  }
  return out;
}

std::optional<double> ratio(const Score& score) {
  if (score.total == 0) {
    return std::nullopt;
  }
  return static_cast<double>(score.correct) / static_cast<double>(score.total);
}

json optional_json(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

}  // namespace

std::string_view to_string(DrillMode mode) noexcept {
  return mode == DrillMode::GuidedSteps ? "GuidedSteps" : "AnswerOnly";
}

std::string_view to_string(AskedValue asked) noexcept {
  switch (asked) {
    case AskedValue::RawValue: return "RawValue";
    case AskedValue::ResultDigitAndCarry: return "ResultDigitAndCarry";
    case AskedValue::FinalProduct: return "FinalProduct";
  }
  return "ResultDigitAndCarry";
}

std::string_view to_string(Verdict verdict) noexcept {
  return verdict == Verdict::Correct ? "Correct" : "Incorrect";
}

void DrillConfig::validate() const {
  if (multipliers.empty()) {
    throw ConfigError("multipliers must not be empty");
  }
  if (min_digits < 1 || min_digits > kMaxDigits) {
    throw ConfigError("min_digits must be between 1 and " + std::to_string(kMaxDigits));
  }
  if (max_digits < min_digits || max_digits > kMaxDigits) {
    throw ConfigError("max_digits must be between min_digits and " + std::to_string(kMaxDigits));
  }
  if (problem_count < 1 || problem_count > kMaxProblems) {
    throw ConfigError("problem_count must be between 1 and " + std::to_string(kMaxProblems));
  }
}

json to_json(const DrillConfig& config) {
  json multipliers = json::array();
  for (const Multiplier m : config.multipliers) {
    multipliers.push_back(m.value());
  }
  return {
      {"multipliers", std::move(multipliers)},
      {"min_digits", config.min_digits},
      {"max_digits", config.max_digits},
      {"mode", std::string(to_string(config.mode))},
      // Decimal string: 64-bit seeds do not survive JavaScript numbers.
      {"seed", std::to_string(config.seed)},
      {"problem_count", config.problem_count},
      {"ask_raw_value", config.ask_raw_value},
  };
}

DrillConfig config_from_json(const json& document) {
  if (!document.is_object()) {
    throw ValidationError("config must be a JSON object");
  }
  DrillConfig config;

  const auto multipliers = document.find("multipliers");
  if (multipliers == document.end()) {
    throw ValidationError("multipliers is required", "multipliers");
  }
  if (!multipliers->is_array()) {
    throw ValidationError("multipliers must be an array of integers", "multipliers");
  }
  for (const auto& item : *multipliers) {
    if (!item.is_number_integer()) {
      throw ValidationError("multipliers must be an array of integers", "multipliers");
    }
    const auto value = item.get<std::int64_t>();
    if (value < 0 || value > 100 || !Multiplier::is_supported(static_cast<int>(value))) {
      throw ConfigError("unsupported multiplier " + std::to_string(value));
    }
    const Multiplier m(static_cast<int>(value));
    if (std::find(config.multipliers.begin(), config.multipliers.end(), m) ==
        config.multipliers.end()) {
      config.multipliers.push_back(m);
    }
  }
  std::sort(config.multipliers.begin(), config.multipliers.end());

  config.min_digits = int_field(document, "min_digits", config.min_digits);
  config.max_digits = int_field(document, "max_digits", config.max_digits);
  config.problem_count = int_field(document, "problem_count", config.problem_count);

  if (const auto mode = document.find("mode"); mode != document.end() && !mode->is_null()) {
    if (!mode->is_string()) {
      throw ValidationError("mode must be a string", "mode");
    }
    const auto parsed =
        enum_from_string(mode->get<std::string>(),
                         std::array{DrillMode::GuidedSteps, DrillMode::AnswerOnly});
    if (!parsed) {
      throw ValidationError("mode must be GuidedSteps or AnswerOnly", "mode");
    }
    config.mode = *parsed;
  }

  if (const auto seed = document.find("seed"); seed != document.end() && !seed->is_null()) {
    if (seed->is_number_unsigned()) {
      config.seed = seed->get<std::uint64_t>();
    } else if (seed->is_string()) {
      const auto text = seed->get<std::string>();
      try {
        const DigitString digits = parse(text);
        if (digits.size() > 20 || (digits.size() == 20 && to_text(digits) > "18446744073709551615")) {
          throw ParseError("too large");
        }
        config.seed = std::stoull(to_text(digits));
      } catch (const ParseError&) {
        throw ValidationError("seed must be an unsigned 64-bit integer", "seed");
      }
    } else {
      throw ValidationError("seed must be an unsigned 64-bit integer", "seed");
    }
  }

  if (const auto flag = document.find("ask_raw_value");
      flag != document.end() && !flag->is_null()) {
    if (!flag->is_boolean()) {
      throw ValidationError("ask_raw_value must be a boolean", "ask_raw_value");
    }
    config.ask_raw_value = flag->get<bool>();
  }

  config.validate();
  return config;
}

std::vector<DrillProblem> generate_problems(const DrillConfig& config) {
  config.validate();
  std::vector<Multiplier> choices = config.multipliers;
  std::sort(choices.begin(), choices.end());
  choices.erase(std::unique(choices.begin(), choices.end()), choices.end());

  Generator generator(config.seed);
  const auto span = static_cast<std::uint64_t>(config.max_digits - config.min_digits + 1);
  std::vector<DrillProblem> problems;
  problems.reserve(static_cast<std::size_t>(config.problem_count));
  for (int i = 0; i < config.problem_count; ++i) {
    const Multiplier m = choices[uniform_below(generator, choices.size())];
    const auto length = static_cast<std::size_t>(config.min_digits) +
                        static_cast<std::size_t>(uniform_below(generator, span));
    DigitString multiplicand = random_multiplicand(generator, length);
    ComputationTrace trace = multiply_by_rule(multiplicand, m);
    problems.push_back({std::move(multiplicand), m, std::move(trace)});
  }
  return problems;
}

json to_json(const StepChallenge& c) {
  json out = {
      {"challenge_id", c.challenge_id},
      {"problem_index", c.problem_index},
      {"problem_count", c.problem_count},
      {"multiplicand", c.multiplicand},
      {"multiplier", c.multiplier},
      {"position_count", c.position_count},
      {"asked", std::string(to_string(c.asked))},
  };
  if (c.asked != AskedValue::FinalProduct) {
    out["position_index"] = c.position_index;
    out["role"] = std::string(to_string(c.role));
    out["digit"] = c.digit;
    out["neighbour"] = c.neighbour;
    out["carry_in"] = c.carry_in;
  }
  return out;
}

json to_json(const Answer& answer) {
  json out = json::object();
  if (answer.digit) out["digit"] = *answer.digit;
  if (answer.carry) out["carry"] = *answer.carry;
  if (answer.raw_value) out["raw_value"] = *answer.raw_value;
  if (answer.product) out["product"] = *answer.product;
  return out;
}

Answer answer_from_json(const json& document) {
  if (!document.is_object()) {
    throw ValidationError("answer must be a JSON object");
  }
  Answer answer;
  answer.digit = optional_int(document, "digit");
  answer.carry = optional_int(document, "carry");
  answer.raw_value = optional_int(document, "raw_value");
  if (const auto it = document.find("product"); it != document.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw ValidationError("product must be a string of digits", "product");
    }
    answer.product = it->get<std::string>();
  }
  return answer;
}

json to_json(const StepResponse& r) {
  return {
      {"challenge_id", r.challenge_id},
      {"problem_index", r.problem_index},
      {"multiplier", r.multiplier},
      {"asked", std::string(to_string(r.asked))},
      {"answered", to_json(r.answered)},
      {"verdict", std::string(to_string(r.verdict))},
      {"expected", to_json(r.expected)},
      {"explanation", r.explanation},
      {"answered_at", r.answered_at_ms},
  };
}

json to_json(const SessionSummary& s) {
  json per_multiplier = json::array();
  for (const auto& entry : s.per_multiplier) {
    per_multiplier.push_back({{"multiplier", entry.multiplier},
                              {"correct", entry.score.correct},
                              {"total", entry.score.total},
                              {"accuracy", optional_json(entry.accuracy)}});
  }
  return {
      {"session_id", s.session_id},
      {"correct", s.score.correct},
      {"total", s.score.total},
      {"accuracy", optional_json(s.accuracy)},
      {"per_multiplier", std::move(per_multiplier)},
      {"elapsed_seconds", s.elapsed_seconds},
      {"finished", s.finished},
  };
}

DrillSession DrillSession::create(DrillConfig config, std::string session_id,
                                  std::int64_t created_at_ms) {
  config.validate();
  DrillSession session;
  session.id_ = std::move(session_id);
  session.problems_ = generate_problems(config);
  session.config_ = std::move(config);
  session.created_at_ms_ = created_at_ms;
  session.events_.push_back({{"kind", "created"},
                             {"session_id", session.id_},
                             {"at", created_at_ms},
                             {"config", to_json(session.config_)}});
  return session;
}

StepChallenge DrillSession::current_challenge() const {
  const DrillProblem& problem = problems_.at(cursor_.problem);
  StepChallenge c;
  c.problem_index = cursor_.problem;
  c.problem_count = problems_.size();
  c.multiplicand = to_text(problem.multiplicand);
  c.multiplier = problem.multiplier.value();
  c.position_count = problem.trace.steps.size();
  if (config_.mode == DrillMode::AnswerOnly) {
    c.asked = AskedValue::FinalProduct;
  } else {
    const TraceStep& step = problem.trace.steps.at(cursor_.step);
    c.asked = (config_.ask_raw_value && cursor_.part == 0) ? AskedValue::RawValue
                                                           : AskedValue::ResultDigitAndCarry;
    c.position_index = step.position_index;
    c.role = step.role;
    c.digit = step.digit;
    c.neighbour = step.neighbour;
    c.carry_in = step.carry_in;
  }
  c.challenge_id = challenge_id_for(cursor_, c.asked);
  return c;
}

std::optional<StepChallenge> DrillSession::next_challenge(std::int64_t now_ms) {
  if (finished_) {
    return std::nullopt;
  }
  StepChallenge challenge = current_challenge();
  if (!challenge_logged_) {
    events_.push_back({{"kind", "challenge"},
                       {"at", now_ms},
                       {"challenge_id", challenge.challenge_id},
                       {"problem_index", challenge.problem_index},
                       {"asked", std::string(to_string(challenge.asked))}});
    challenge_logged_ = true;
  }
  return challenge;
}

StepResponse DrillSession::submit(std::string_view challenge_id, const Answer& answer,
                                  std::int64_t now_ms) {
  if (finished_) {
    throw ChallengeError("session is finished; challenge " + std::string(challenge_id) +
                         " is no longer open");
  }
  const StepChallenge challenge = current_challenge();
  if (challenge_id != challenge.challenge_id) {
    throw ChallengeError("challenge " + std::string(challenge_id) +
                         " is not the open challenge");
  }

  const DrillProblem& problem = problems_[cursor_.problem];
  StepResponse response;
  response.challenge_id = challenge.challenge_id;
  response.problem_index = cursor_.problem;
  response.multiplier = problem.multiplier.value();
  response.asked = challenge.asked;

  switch (challenge.asked) {
    case AskedValue::ResultDigitAndCarry: {
      if (!answer.digit || !answer.carry) {
        throw ValidationError("answer needs both digit and carry",
                              answer.digit ? "carry" : "digit");
      }
      if (*answer.digit < 0 || *answer.digit > 9) {
        throw ValidationError("digit must be between 0 and 9", "digit");
      }
      if (*answer.carry < 0 || *answer.carry > 9) {
        throw ValidationError("carry must be between 0 and 9", "carry");
      }
      const TraceStep& step = problem.trace.steps[cursor_.step];
      response.answered.digit = answer.digit;
      response.answered.carry = answer.carry;
      response.expected.digit = step.result_digit;
      response.expected.carry = step.carry_out;
      response.explanation = step.formula_rendering;
      break;
    }
    case AskedValue::RawValue: {
      if (!answer.raw_value) {
        throw ValidationError("answer needs raw_value", "raw_value");
      }
      if (*answer.raw_value < -99 || *answer.raw_value > 99) {
        throw ValidationError("raw_value must be between -99 and 99", "raw_value");
      }
      const TraceStep& step = problem.trace.steps[cursor_.step];
      response.answered.raw_value = answer.raw_value;
      response.expected.raw_value = step.raw_value;
      response.explanation = step.formula_rendering;
      break;
    }
    case AskedValue::FinalProduct: {
      if (!answer.product) {
        throw ValidationError("answer needs product", "product");
      }
      try {
        response.answered.product = to_text(parse(*answer.product));
      } catch (const ParseError& e) {
        throw ValidationError(std::string("product: ") + e.what(), "product");
      }
      response.expected.product = to_text(problem.trace.product);
      response.explanation = product_explanation(problem.trace);
      break;
    }
  }
  response.verdict =
      response.answered == response.expected ? Verdict::Correct : Verdict::Incorrect;
  response.answered_at_ms = now_ms;

  if (!challenge_logged_) {
    next_challenge(now_ms);
  }
  events_.push_back({{"kind", "response"},
                     {"at", now_ms},
                     {"challenge_id", response.challenge_id},
                     {"answer", to_json(response.answered)},
                     {"verdict", std::string(to_string(response.verdict))},
                     {"expected", to_json(response.expected)}});
  ++score_.total;
  if (response.verdict == Verdict::Correct) {
    ++score_.correct;
  }
  responses_.push_back(response);
  advance();
  if (finished_) {
    events_.push_back({{"kind", "finished"}, {"at", now_ms}});
  }
  return response;
}

void DrillSession::advance() {
  challenge_logged_ = false;
  if (config_.mode == DrillMode::AnswerOnly) {
    ++cursor_.problem;
  } else if (config_.ask_raw_value && cursor_.part == 0) {
    cursor_.part = 1;
  } else {
    cursor_.part = 0;
    if (++cursor_.step == problems_[cursor_.problem].trace.steps.size()) {
      cursor_.step = 0;
      ++cursor_.problem;
    }
  }
  finished_ = cursor_.problem >= problems_.size();
}

SessionSummary DrillSession::summary() const {
  SessionSummary s;
  s.session_id = id_;
  s.score = score_;
  s.accuracy = ratio(score_);
  s.finished = finished_;

  std::map<int, Score> by_multiplier;
  for (const Multiplier m : config_.multipliers) {
    by_multiplier[m.value()];
  }
  for (const auto& response : responses_) {
    Score& score = by_multiplier[response.multiplier];
    ++score.total;
    if (response.verdict == Verdict::Correct) {
      ++score.correct;
    }
  }
  for (const auto& [m, score] : by_multiplier) {
    s.per_multiplier.push_back({m, score, ratio(score)});
  }

  std::int64_t last = created_at_ms_;
  for (const auto& event : events_) {
    last = std::max(last, event.at("at").get<std::int64_t>());
  }
  s.elapsed_seconds = static_cast<double>(last - created_at_ms_) / 1000.0;
  return s;
}

DrillSession DrillSession::replay(std::span<const json> events,
                                  std::span<const std::size_t> line_numbers) {
  const auto fail = [&](std::size_t index, const std::string& what) -> PersistenceError {
    const std::size_t line = index < line_numbers.size() ? line_numbers[index] : index + 1;
    return PersistenceError(what, line);
  };
  if (events.empty()) {
    throw PersistenceError("session log is empty", 0);
  }

  const auto kind_of = [&](std::size_t index) {
    const json& event = events[index];
    if (!event.is_object() || !event.contains("kind") || !event["kind"].is_string() ||
        !event.contains("at") || !event["at"].is_number_integer()) {
      throw fail(index, "record needs string 'kind' and integer 'at'");
    }
    return event["kind"].get<std::string>();
  };

  if (kind_of(0) != "created") {
    throw fail(0, "first record must be 'created'");
  }
  std::optional<DrillSession> session;
  try {
    const json& created = events[0];
    const auto& id = created.at("session_id");
    if (!id.is_string() || !is_valid_session_id(id.get<std::string>())) {
      throw fail(0, "invalid session_id");
    }
    session = create(config_from_json(created.at("config")), id.get<std::string>(),
                     created.at("at").get<std::int64_t>());
  } catch (const PersistenceError&) {
    throw;
  } catch (const std::exception& e) {
    throw fail(0, std::string("bad 'created' record: ") + e.what());
  }

  for (std::size_t i = 1; i < events.size(); ++i) {
    const std::string kind = kind_of(i);
    const json& event = events[i];
    const auto at = event["at"].get<std::int64_t>();
    if (kind == "challenge") {
      if (session->finished_) {
        throw fail(i, "challenge after the session finished");
      }
      if (session->challenge_logged_) {
        throw fail(i, "duplicate challenge record");
      }
      const auto id = event.find("challenge_id");
      const auto challenge = session->next_challenge(at);
      if (id == event.end() || !id->is_string() || *id != challenge->challenge_id) {
        throw fail(i, "challenge does not match the replayed cursor");
      }
    } else if (kind == "response") {
      const auto id = event.find("challenge_id");
      const auto verdict_field = event.find("verdict");
      if (id == event.end() || !id->is_string() || !event.contains("answer") ||
          verdict_field == event.end() || !verdict_field->is_string()) {
        throw fail(i, "response record needs challenge_id, answer and verdict");
      }
      const auto logged = verdict_from_string(verdict_field->get<std::string>());
      if (!logged) {
        throw fail(i, "unknown verdict");
      }
      try {
        const StepResponse response =
            session->submit(id->get<std::string>(), answer_from_json(event["answer"]), at);
        if (response.verdict != *logged) {
          throw fail(i, "logged verdict disagrees with the replayed verdict");
        }
      } catch (const PersistenceError&) {
        throw;
      } catch (const std::exception& e) {
        throw fail(i, std::string("response cannot be replayed: ") + e.what());
      }
    } else if (kind == "finished") {
      if (!session->finished_ || session->events_.back().at("kind") != "finished") {
        throw fail(i, "finished record before the last response");
      }
      if (i + 1 != events.size()) {
        throw fail(i + 1, "records after 'finished'");
      }
    } else {
      throw fail(i, "unknown record kind '" + kind + "'");
    }
  }
  return std::move(*session);
}

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string make_session_id() {
  std::random_device device;
  const std::uint64_t value = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

bool is_valid_session_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 64) {
    return false;
  }
  return std::all_of(id.begin(), id.end(), [](char ch) {
    return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
           ch == '-' || ch == '_';
  });
}

DrillSession new_session(const DrillConfig& config) {
  return DrillSession::create(config, make_session_id(), now_ms());
}

std::optional<StepChallenge> next_challenge(DrillSession& session) {
  return session.next_challenge(now_ms());
}

StepResponse submit_response(DrillSession& session, std::string_view challenge_id,
                             const Answer& answer) {
  return session.submit(challenge_id, answer, now_ms());
}

SessionSummary session_summary(const DrillSession& session) { return session.summary(); }

}  // namespace trachtenberg
