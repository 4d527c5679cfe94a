#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "trachtenberg/drill.hpp"

namespace trachtenberg {

/// Writes the full event log of `session` to `<directory>/<id>.log`, one
/// JSON record per line, replacing any previous file.
void save_session(const DrillSession& session, const std::filesystem::path& directory);

/// Replays `<directory>/<id>.log`. Throws NotFound when the file does not
/// exist and PersistenceError naming the line for corrupt records. An
/// unterminated final line that does not parse is treated as a torn write and
/// ignored.
DrillSession load_session(const std::filesystem::path& directory, std::string_view id);

/// `$TRACHTENBERG_STORE` when set, else `./sessions`.
std::filesystem::path default_store_directory();

/// Registry of live sessions, optionally backed by per-session append-only
/// logs. Lookups of different sessions run concurrently; operations on one
/// session are serialized by a per-session lock. Sessions not in memory are
/// loaded from the directory on first access, so a restarted process picks up
/// where the logs left off.
class SessionStore {
 public:
  using Clock = std::function<std::int64_t()>;

  explicit SessionStore(std::optional<std::filesystem::path> directory,
                        Clock clock = &now_ms);

  const std::optional<std::filesystem::path>& directory() const noexcept { return directory_; }

  /// Returns the new session's id.
  std::string create(const DrillConfig& config);

  std::optional<StepChallenge> next(std::string_view id);
  StepResponse respond(std::string_view id, std::string_view challenge_id, const Answer& answer);
  SessionSummary summary(std::string_view id);

  /// Copy of the session state.
  DrillSession snapshot(std::string_view id);

 private:
  struct Entry {
    explicit Entry(DrillSession s, std::size_t persisted_events)
        : session(std::move(s)), persisted(persisted_events) {}

    std::mutex mutex;
    DrillSession session;
    std::size_t persisted;
  };

  std::shared_ptr<Entry> find(std::string_view id);
  void flush(Entry& entry);

  std::optional<std::filesystem::path> directory_;
  Clock clock_;
  std::shared_mutex sessions_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
};

}  // namespace trachtenberg
