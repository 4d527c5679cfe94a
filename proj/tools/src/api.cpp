#include "trachtenberg/cli/api.hpp"

#include <charconv>

#include "trachtenberg/errors.hpp"
#include "trachtenberg/rules.hpp"
#include "trachtenberg/trace.hpp"

namespace trachtenberg::cli {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto slash = path.find('/');
    const auto part = path.substr(0, slash);
    if (!part.empty()) {
      parts.push_back(part);
    }
    if (slash == std::string_view::npos) {
      break;
    }
    path.remove_prefix(slash + 1);
  }
  return parts;
}

std::optional<json> parse_body(std::string_view body, ApiResponse& error) {
  auto document = json::parse(body, nullptr, false);
  if (document.is_discarded()) {
    error = error_response(400, "invalid_json", "request body is not valid JSON");
    return std::nullopt;
  }
  return document;
}

ApiResponse method_not_allowed(std::string_view method, std::string_view path) {
  return error_response(405, "method_not_allowed",
                        std::string(method) + " is not allowed on " + std::string(path));
}

}  // namespace

ApiResponse error_response(int status, std::string code, std::string message, std::string field) {
  json body = {{"error", std::move(code)}, {"message", std::move(message)}};
  if (!field.empty()) {
    body["field"] = std::move(field);
  }
  return {status, std::move(body)};
}

json rules_document() {
  json rules = json::array();
  for (const Multiplier m : Multiplier::all()) {
    const RuleSpec& rule = rule_for(m);
    rules.push_back({
        {"multiplier", m.value()},
        {"formulas",
         {{"rightmost", rule.formula(PositionRole::Rightmost).describe()},
          {"interior", rule.formula(PositionRole::Interior).describe()},
          {"leading", rule.formula(PositionRole::Leading).describe()}}},
    });
  }
  return {{"multipliers", std::move(rules)},
          {"symbols",
           {{"d", "current digit"},
            {"n", "neighbour: the digit immediately to the right, 0 when none"},
            {"half(n)", "n divided by 2, remainder dropped"},
            {"odd5(d)", "5 if d is odd, else 0"}}}};
}

ApiResponse Api::handle(std::string_view method, std::string_view path, const QueryParams& query,
                        std::string_view body) const {
  try {
    const auto parts = split_path(path);
    if (parts.size() == 1 && parts[0] == "health") {
      if (method != "GET") return method_not_allowed(method, path);
      return {200, {{"status", "ok"}}};
    }
    if (parts.size() == 1 && parts[0] == "rules") {
      if (method != "GET") return method_not_allowed(method, path);
      return {200, rules_document()};
    }
    if (parts.size() == 1 && parts[0] == "trace") {
      if (method != "GET") return method_not_allowed(method, path);
      return trace(query);
    }
    if (parts.size() == 1 && parts[0] == "sessions") {
      if (method != "POST") return method_not_allowed(method, path);
      return create_session(body);
    }
    if (parts.size() == 3 && parts[0] == "sessions") {
      return session_route(method, parts[1], parts[2], body);
    }
    return error_response(404, "not_found", "no route for " + std::string(path));
  } catch (const NotFound& e) {
    return error_response(404, "not_found", e.what());
  } catch (const ChallengeError& e) {
    return error_response(409, "stale_challenge", e.what(), "challenge_id");
  } catch (const ValidationError& e) {
    return error_response(400, "invalid_request", e.what(), e.field());
  } catch (const ConfigError& e) {
    return error_response(400, "invalid_config", e.what());
  } catch (const PersistenceError& e) {
    return error_response(500, "persistence_error", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

ApiResponse Api::trace(const QueryParams& query) const {
  const auto n = query.find("n");
  if (n == query.end() || n->second.empty()) {
    return error_response(400, "invalid_request", "query parameter n is required", "n");
  }
  const auto m = query.find("m");
  if (m == query.end() || m->second.empty()) {
    return error_response(400, "invalid_request", "query parameter m is required", "m");
  }
  int value = 0;
  const auto& text = m->second;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    return error_response(400, "invalid_request", "m must be an integer", "m");
  }
  const auto multiplier = Multiplier::try_from(value);
  if (!multiplier) {
    return error_response(400, "unsupported_multiplier",
                          "unsupported multiplier " + text + " (supported: 3-9, 11, 12)", "m");
  }
  DigitString multiplicand;
  try {
    multiplicand = parse(n->second);
  } catch (const ParseError& e) {
    return error_response(400, "invalid_number", e.what(), "n");
  }
  return {200, to_structured(multiply_by_rule(multiplicand, *multiplier))};
}

ApiResponse Api::create_session(std::string_view body) const {
  ApiResponse error;
  const auto document = parse_body(body, error);
  if (!document) {
    return error;
  }
  const DrillConfig config = config_from_json(*document);
  const std::string id = store_.create(config);
  const DrillSession session = store_.snapshot(id);
  return {201,
          {{"session_id", id}, {"config", to_json(config)}, {"created_at", session.created_at_ms()}}};
}

ApiResponse Api::session_route(std::string_view method, std::string_view id,
                               std::string_view action, std::string_view body) const {
  if (!is_valid_session_id(id)) {
    return error_response(404, "not_found", "no session " + std::string(id));
  }
  const std::string path = "/sessions/" + std::string(id) + "/" + std::string(action);
  if (action == "next") {
    if (method != "GET") return method_not_allowed(method, path);
    const auto challenge = store_.next(id);
    if (!challenge) {
      return {200, {{"finished", true}}};
    }
    return {200, {{"finished", false}, {"challenge", to_json(*challenge)}}};
  }
  if (action == "respond") {
    if (method != "POST") return method_not_allowed(method, path);
    ApiResponse error;
    const auto document = parse_body(body, error);
    if (!document) {
      return error;
    }
    if (!document->is_object()) {
      return error_response(400, "invalid_request", "body must be a JSON object");
    }
    const auto challenge_id = document->find("challenge_id");
    if (challenge_id == document->end() || !challenge_id->is_string()) {
      return error_response(400, "invalid_request", "challenge_id is required", "challenge_id");
    }
    const StepResponse response =
        store_.respond(id, challenge_id->get<std::string>(), answer_from_json(*document));
    return {200, to_json(response)};
  }
  if (action == "summary") {
    if (method != "GET") return method_not_allowed(method, path);
    return {200, to_json(store_.summary(id))};
  }
  return error_response(404, "not_found", "no route for " + path);
}

}  // namespace trachtenberg::cli
