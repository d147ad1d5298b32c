#pragma once

// Session service over HTTP with JSON bodies.
//
//   GET  /health               {"status":"ok","version":...}
//   POST /games                {k, n, mode, opponent, [feedback], [answer], [seed]}
//   GET  /games/{id}           session summary with history
//   POST /games/{id}/guess     {guess: "1,2,3"}
//   GET  /games/{id}/hint      {available, guess, worst_case} or {available:false, reason}
//
// Errors: {"error": {"code": <machine code>, "message": <text>}}.

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include "clearmm/session.hpp"

namespace clearmm {

inline constexpr const char* kVersion = "0.1.0";

struct ServiceOptions {
  std::chrono::seconds idle_ttl{3600};
  std::size_t max_sessions = 10000;
  std::string snapshot_path;  // written by snapshot() / on server shutdown
  HintPolicy hint;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

class SessionService {
 public:
  explicit SessionService(ServiceOptions options = {});
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  // Transport-independent dispatch; the HTTP server is a thin shell over this.
  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

  std::size_t session_count() const;
  // Drops sessions idle for longer than the configured TTL; returns how many.
  std::size_t expire_idle();
  // Writes all sessions (answers included) as JSON.
  void snapshot(const std::string& path) const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// Runs a SessionService behind cpp-httplib on a background thread.
class HttpServer {
 public:
  explicit HttpServer(ServiceOptions options = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and starts serving. Port 0 picks a free port. Returns the bound port;
  // throws invalid_configuration when binding fails.
  int start(const std::string& host, int port);
  // Stops serving and writes the snapshot if one is configured.
  void stop();
  bool running() const noexcept;

  SessionService& service() noexcept;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace clearmm
