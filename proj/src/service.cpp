#include "clearmm/service.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace clearmm {

using nlohmann::json;

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
    case ErrorCode::invalid_configuration:
    case ErrorCode::inconsistent: return 400;
    case ErrorCode::not_found: return 404;
    case ErrorCode::invalid_state: return 409;
    case ErrorCode::resource_exhausted: return 503;
  }
  return 500;
}

HttpResponse error_response(int status, std::string_view code, std::string_view message) {
  json body = {{"error", {{"code", code}, {"message", message}}}};
  return {status, body.dump()};
}

HttpResponse ok(const json& body, int status = 200) { return {status, body.dump()}; }

json round_json(int round, const Round& r, std::size_t set_size) {
  return {{"round", round},
          {"guess", r.guess.to_string()},
          {"feedback", to_string(r.feedback)},
          {"set_size", set_size}};
}

json summary(const Session& s, bool with_history) {
  json j = {{"id", s.id()},
            {"k", s.params().k},
            {"n", s.params().n},
            {"mode", to_string(s.params().mode.kind)},
            {"feedback_kind", to_string(s.params().mode.feedback)},
            {"opponent", to_string(s.opponent())},
            {"seed", s.seed()},
            {"status", to_string(s.status())},
            {"round", s.round()},
            {"set_size", s.set_size()},
            {"solved", s.status() == SessionStatus::solved}};
  if (with_history) {
    json history = json::array();
    for (std::size_t i = 0; i < s.history().size(); ++i)
      history.push_back(round_json(static_cast<int>(i) + 1, s.history()[i], s.set_sizes()[i + 1]));
    j["history"] = std::move(history);
  }
  if (s.status() == SessionStatus::solved && s.answer()) j["answer"] = s.answer()->to_string();
  return j;
}

template <typename T>
T field(const json& body, const char* name) {
  auto it = body.find(name);
  if (it == body.end()) throw Error(ErrorCode::invalid_input, std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::invalid_input, std::string("field '") + name + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> optional_field(const json& body, const char* name) {
  if (!body.contains(name) || body.at(name).is_null()) return std::nullopt;
  return field<T>(body, name);
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  const auto q = path.find('?');
  if (q != std::string_view::npos) path = path.substr(0, q);
  std::size_t pos = 0;
  while (pos < path.size()) {
    while (pos < path.size() && path[pos] == '/') ++pos;
    const std::size_t end = path.find('/', pos);
    if (pos < path.size())
      parts.push_back(path.substr(pos, end == std::string_view::npos ? end : end - pos));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return parts;
}

}  // namespace

class SessionService::Impl {
 public:
  explicit Impl(ServiceOptions options) : options_(std::move(options)), ids_(std::random_device{}()) {}

  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
      const auto parts = split_path(path);
      if (parts.size() == 1 && parts[0] == "health" && method == "GET")
        return ok({{"status", "ok"}, {"version", kVersion}});
      if (parts.empty() || parts[0] != "games") return error_response(404, "not_found", "no such route");
      if (parts.size() == 1 && method == "POST") return create(parse(body));
      if (parts.size() == 2 && method == "GET") return with_session(parts[1], [](Session& s) {
          return ok(summary(s, true));
        });
      if (parts.size() == 3 && parts[2] == "guess" && method == "POST") {
        const json request = parse(body);
        const auto guess = CodeString::parse(field<std::string>(request, "guess"));
        return with_session(parts[1], [&](Session& s) {
          RoundResult r = s.guess(guess);
          return ok({{"id", s.id()},
                     {"round", r.round},
                     {"guess", guess.to_string()},
                     {"feedback", to_string(r.feedback)},
                     {"set_size", r.set_size},
                     {"solved", r.solved},
                     {"status", to_string(s.status())}});
        });
      }
      if (parts.size() == 3 && parts[2] == "hint" && method == "GET") {
        return with_session(parts[1], [&](Session& s) {
          Hint h = s.hint(options_.hint);
          json j = {{"id", s.id()}, {"available", h.available}};
          if (h.available) {
            j["guess"] = h.guess->to_string();
            j["worst_case"] = h.worst_case;
          } else {
            j["reason"] = h.reason;
          }
          return ok(j);
        });
      }
      return error_response(405, "method_not_allowed", "unsupported method for this route");
    } catch (const Error& e) {
      return error_response(http_status(e.code()), to_string(e.code()), e.what());
    } catch (const std::exception& e) {
      return error_response(500, "internal", e.what());
    }
  }

  std::size_t count() const {
    std::shared_lock lock(registry_mutex_);
    return sessions_.size();
  }

  std::size_t expire_idle() {
    const auto now = std::chrono::steady_clock::now();
    std::unique_lock lock(registry_mutex_);
    std::size_t dropped = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      std::lock_guard slot_lock(it->second->mutex);
      if (now - it->second->last_access > options_.idle_ttl) {
        it->second->session.abandon();
        it = sessions_.erase(it);
        ++dropped;
      } else {
        ++it;
      }
    }
    return dropped;
  }

  void snapshot(const std::string& path) const {
    json all = json::array();
    {
      std::shared_lock lock(registry_mutex_);
      for (const auto& [id, slot] : sessions_) {
        std::lock_guard slot_lock(slot->mutex);
        json j = summary(slot->session, true);
        if (slot->session.answer()) j["answer"] = slot->session.answer()->to_string();
        all.push_back(std::move(j));
      }
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::invalid_configuration, "cannot write snapshot to " + path);
    out << all.dump(2) << '\n';
  }

  const ServiceOptions& options() const noexcept { return options_; }

 private:
  struct Slot {
    explicit Slot(Session s) : session(std::move(s)), last_access(std::chrono::steady_clock::now()) {}
    std::mutex mutex;
    Session session;
    std::chrono::steady_clock::time_point last_access;
  };

  static json parse(std::string_view body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw Error(ErrorCode::invalid_input, "request body must be a JSON object");
    return j;
  }

  HttpResponse create(const json& request) {
    SessionConfig config;
    config.params.k = field<int>(request, "k");
    config.params.n = field<int>(request, "n");
    const ModeKind mode = parse_mode_kind(optional_field<std::string>(request, "mode").value_or("full"));
    config.params.mode = default_mode(mode);
    if (auto fb = optional_field<std::string>(request, "feedback"))
      config.params.mode.feedback = parse_feedback_kind(*fb);
    config.opponent = parse_opponent_kind(optional_field<std::string>(request, "opponent").value_or("fixed"));
    if (auto answer = optional_field<std::string>(request, "answer"))
      config.answer = CodeString::parse(*answer);
    config.seed = optional_field<std::uint64_t>(request, "seed");

    expire_idle();
    std::unique_lock lock(registry_mutex_);
    if (sessions_.size() >= options_.max_sessions)
      throw Error(ErrorCode::resource_exhausted, "too many live sessions");
    std::string id;
    do {
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(ids_()));
      id = buf;
    } while (sessions_.count(id));
    auto slot = std::make_shared<Slot>(Session(id, std::move(config)));
    json body = summary(slot->session, true);
    sessions_.emplace(id, std::move(slot));
    return ok(body, 201);
  }

  template <typename F>
  HttpResponse with_session(std::string_view id, F&& f) {
    std::shared_ptr<Slot> slot;
    {
      std::shared_lock lock(registry_mutex_);
      auto it = sessions_.find(std::string(id));
      if (it == sessions_.end())
        throw Error(ErrorCode::not_found, "no session '" + std::string(id) + "'");
      slot = it->second;
    }
    std::lock_guard slot_lock(slot->mutex);
    slot->last_access = std::chrono::steady_clock::now();
    return f(slot->session);
  }

  ServiceOptions options_;
  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mt19937_64 ids_;
};

SessionService::SessionService(ServiceOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}
SessionService::~SessionService() = default;

HttpResponse SessionService::handle(std::string_view method, std::string_view path,
                                    std::string_view body) {
  return impl_->handle(method, path, body);
}

std::size_t SessionService::session_count() const { return impl_->count(); }
std::size_t SessionService::expire_idle() { return impl_->expire_idle(); }
void SessionService::snapshot(const std::string& path) const { impl_->snapshot(path); }

// ---------------------------------------------------------------------------

class HttpServer::Impl {
 public:
  explicit Impl(ServiceOptions options) : snapshot_path_(options.snapshot_path), service_(std::move(options)) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      HttpResponse r = service_.handle(req.method, req.path, req.body);
      res.status = r.status;
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_content(r.body, "application/json");
    };
    server_.Get(R"(/.*)", handler);
    server_.Post(R"(/.*)", handler);
    server_.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
  }

  ~Impl() { stop(); }

  int start(const std::string& host, int port) {
    if (thread_.joinable()) throw Error(ErrorCode::invalid_state, "server already running");
    int bound = port;
    if (port == 0) {
      bound = server_.bind_to_any_port(host);
      if (bound <= 0) bound = -1;
    } else if (!server_.bind_to_port(host, port)) {
      bound = -1;
    }
    if (bound < 0)
      throw Error(ErrorCode::invalid_configuration,
                  "cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return bound;
  }

  void stop() {
    if (!thread_.joinable()) return;
    server_.stop();
    thread_.join();
    if (!snapshot_path_.empty()) service_.snapshot(snapshot_path_);
  }

  bool running() const noexcept { return thread_.joinable(); }
  SessionService& service() noexcept { return service_; }

 private:
  std::string snapshot_path_;
  SessionService service_;
  httplib::Server server_;
  std::thread thread_;
};

HttpServer::HttpServer(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
HttpServer::~HttpServer() = default;
int HttpServer::start(const std::string& host, int port) { return impl_->start(host, port); }
void HttpServer::stop() { impl_->stop(); }
bool HttpServer::running() const noexcept { return impl_->running(); }
SessionService& HttpServer::service() noexcept { return impl_->service(); }

}  // namespace clearmm
