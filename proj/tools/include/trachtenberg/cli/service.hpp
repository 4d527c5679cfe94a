#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "trachtenberg/cli/api.hpp"
#include "trachtenberg/session_store.hpp"

namespace httplib {
class Server;
}

namespace trachtenberg::cli {

struct ServiceOptions {
  std::string host = "0.0.0.0";
  int port = 8080;  // 0 binds an ephemeral port
  std::filesystem::path store_directory = default_store_directory();
  // Origins allowed to make cross-origin requests; "*" allows any.
  std::vector<std::string> allowed_origins = {"http://localhost:5173", "http://127.0.0.1:5173"};
};

/// HTTP front end for Api, one session store per service.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the listening socket; returns the bound port. Throws
  /// std::runtime_error when the address cannot be bound.
  int bind();

  /// Serves until stop() is called. bind() must have succeeded.
  void run();

  void stop();

 private:
  ServiceOptions options_;
  SessionStore store_;
  Api api_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace trachtenberg::cli
