#include "trachtenberg/session_store.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "trachtenberg/errors.hpp"

namespace trachtenberg {
namespace {

std::filesystem::path log_path(const std::filesystem::path& directory, std::string_view id) {
  return directory / (std::string(id) + ".log");
}

void append_lines(const std::filesystem::path& path, std::span<const nlohmann::json> events,
                  bool truncate) {
  std::ofstream out(path, truncate ? std::ios::trunc : std::ios::app);
  if (!out) {
    throw PersistenceError("cannot open " + path.string() + " for writing", 0);
  }
  for (const auto& event : events) {
    out << event.dump() << '\n';
  }
  out.flush();
  if (!out) {
    throw PersistenceError("write to " + path.string() + " failed", 0);
  }
}

}  // namespace

void save_session(const DrillSession& session, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  append_lines(log_path(directory, session.id()), session.events(), true);
}

DrillSession load_session(const std::filesystem::path& directory, std::string_view id) {
  if (!is_valid_session_id(id)) {
    throw NotFound("no session " + std::string(id));
  }
  const auto path = log_path(directory, id);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw NotFound("no session " + std::string(id));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<nlohmann::json> events;
  std::vector<std::size_t> lines;
  std::size_t line_number = 0;
  std::size_t offset = 0;
  while (offset < text.size()) {
    const std::size_t end = text.find('\n', offset);
    const bool terminated = end != std::string::npos;
    const std::string_view line(text.data() + offset,
                                (terminated ? end : text.size()) - offset);
    offset = terminated ? end + 1 : text.size();
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      continue;
    }
    auto parsed = nlohmann::json::parse(line, nullptr, false);
    if (parsed.is_discarded()) {
      if (!terminated) {
        break;  // torn final write
      }
      throw PersistenceError("corrupt record in " + path.string(), line_number);
    }
    events.push_back(std::move(parsed));
    lines.push_back(line_number);
  }
  DrillSession session = DrillSession::replay(events, lines);
  if (session.id() != id) {
    throw PersistenceError("log " + path.string() + " belongs to session " + session.id(), 1);
  }
  return session;
}

std::filesystem::path default_store_directory() {
  if (const char* env = std::getenv("TRACHTENBERG_STORE"); env != nullptr && *env != '\0') {
    return env;
  }
  return "sessions";
}

SessionStore::SessionStore(std::optional<std::filesystem::path> directory, Clock clock)
    : directory_(std::move(directory)), clock_(std::move(clock)) {
  if (directory_) {
    std::filesystem::create_directories(*directory_);
  }
}

std::string SessionStore::create(const DrillConfig& config) {
  for (;;) {
    std::string id = make_session_id();
    auto entry = std::make_shared<Entry>(DrillSession::create(config, id, clock_()), 0);
    {
      std::unique_lock lock(sessions_mutex_);
      if (sessions_.contains(id) ||
          (directory_ && std::filesystem::exists(log_path(*directory_, id)))) {
        continue;
      }
      sessions_.emplace(id, entry);
    }
    std::lock_guard guard(entry->mutex);
    flush(*entry);
    return id;
  }
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(std::string_view id) {
  const std::string key(id);
  {
    std::shared_lock lock(sessions_mutex_);
    if (const auto it = sessions_.find(key); it != sessions_.end()) {
      return it->second;
    }
  }
  if (!directory_) {
    throw NotFound("no session " + key);
  }
  DrillSession loaded = load_session(*directory_, key);
  const std::size_t persisted = loaded.events().size();
  std::unique_lock lock(sessions_mutex_);
  // Another thread may have loaded it meanwhile; keep the first copy.
  auto [it, inserted] = sessions_.try_emplace(key, nullptr);
  if (inserted) {
    it->second = std::make_shared<Entry>(std::move(loaded), persisted);
  }
  return it->second;
}

void SessionStore::flush(Entry& entry) {
  const auto& events = entry.session.events();
  if (!directory_ || entry.persisted == events.size()) {
    return;
  }
  append_lines(log_path(*directory_, entry.session.id()),
               std::span(events).subspan(entry.persisted), entry.persisted == 0);
  entry.persisted = events.size();
}

std::optional<StepChallenge> SessionStore::next(std::string_view id) {
  auto entry = find(id);
  std::lock_guard guard(entry->mutex);
  auto challenge = entry->session.next_challenge(clock_());
  flush(*entry);
  return challenge;
}

StepResponse SessionStore::respond(std::string_view id, std::string_view challenge_id,
                                   const Answer& answer) {
  auto entry = find(id);
  std::lock_guard guard(entry->mutex);
  StepResponse response = entry->session.submit(challenge_id, answer, clock_());
  flush(*entry);
  return response;
}

SessionSummary SessionStore::summary(std::string_view id) {
  auto entry = find(id);
  std::lock_guard guard(entry->mutex);
  return entry->session.summary();
}

DrillSession SessionStore::snapshot(std::string_view id) {
  auto entry = find(id);
  std::lock_guard guard(entry->mutex);
  return entry->session;
}

}  // namespace trachtenberg
