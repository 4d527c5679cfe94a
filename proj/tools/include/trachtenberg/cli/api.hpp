#pragma once

#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "trachtenberg/session_store.hpp"

namespace trachtenberg::cli {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

using QueryParams = std::map<std::string, std::string, std::less<>>;

/// Transport-independent JSON API. Routes:
///   GET  /health
///   GET  /rules
///   GET  /trace?n=<digits>&m=<multiplier>
///   POST /sessions
///   GET  /sessions/{id}/next
///   POST /sessions/{id}/respond
///   GET  /sessions/{id}/summary
/// Errors carry `error` (machine code) and `message`, plus `field` for
/// request validation failures.
class Api {
 public:
  explicit Api(SessionStore& store) : store_(store) {}

  ApiResponse handle(std::string_view method, std::string_view path, const QueryParams& query,
                     std::string_view body) const;

 private:
  ApiResponse trace(const QueryParams& query) const;
  ApiResponse create_session(std::string_view body) const;
  ApiResponse session_route(std::string_view method, std::string_view id,
                            std::string_view action, std::string_view body) const;

  SessionStore& store_;
};

ApiResponse error_response(int status, std::string code, std::string message,
                           std::string field = {});

nlohmann::json rules_document();

}  // namespace trachtenberg::cli
