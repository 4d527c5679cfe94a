#include "trachtenberg/cli/service.hpp"

#include <algorithm>
#include <stdexcept>

#include "httplib.h"

namespace trachtenberg::cli {
namespace {

bool origin_allowed(const std::vector<std::string>& allowed, const std::string& origin) {
  return std::any_of(allowed.begin(), allowed.end(),
                     [&](const std::string& entry) { return entry == "*" || entry == origin; });
}

}  // namespace

Service::Service(ServiceOptions options)
    : options_(std::move(options)),
      store_(options_.store_directory),
      api_(store_),
      server_(std::make_unique<httplib::Server>()) {
  const auto cors = [this](const httplib::Request& request, httplib::Response& response) {
    const auto origin = request.get_header_value("Origin");
    if (!origin.empty() && origin_allowed(options_.allowed_origins, origin)) {
      response.set_header("Access-Control-Allow-Origin", origin);
      response.set_header("Vary", "Origin");
    }
  };

  const auto dispatch = [this, cors](const httplib::Request& request,
                                     httplib::Response& response) {
    QueryParams query;
    for (const auto& [key, value] : request.params) {
      query.emplace(key, value);
    }
    const ApiResponse result = api_.handle(request.method, request.path, query, request.body);
    response.status = result.status;
    response.set_content(result.body.dump(), "application/json; charset=utf-8");
    cors(request, response);
  };

  server_->Get(".*", dispatch);
  server_->Post(".*", dispatch);
  server_->Put(".*", dispatch);
  server_->Delete(".*", dispatch);
  server_->Options(".*", [cors](const httplib::Request& request, httplib::Response& response) {
    response.status = 204;
    response.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    response.set_header("Access-Control-Allow-Headers", "Content-Type");
    cors(request, response);
  });
}

Service::~Service() { stop(); }

int Service::bind() {
  int port = options_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(options_.host);
  } else if (!server_->bind_to_port(options_.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw std::runtime_error("cannot bind " + options_.host + ":" + std::to_string(options_.port));
  }
  return port;
}

void Service::run() { server_->listen_after_bind(); }

void Service::stop() {
  if (server_) {
    server_->stop();
  }
}

}  // namespace trachtenberg::cli
