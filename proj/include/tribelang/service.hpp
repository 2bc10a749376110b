#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "tribelang/env.hpp"
#include "tribelang/transcript.hpp"

namespace tribelang {

struct ServiceConfig {
  // Used when a create request names no language. A bundled name or a path.
  std::string default_language = "tinkatongue";
  EnvConfig defaults;
  // Finished sessions are written here as <session_id>.jsonl when set.
  std::optional<std::string> transcript_dir;
};

struct HttpReply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// The session facade, network-free. Each method maps to one route:
//   POST /sessions                    -> create
//   POST /sessions/<id>/message       -> message
//   GET  /sessions/<id>/transcript    -> transcript
//   GET  /sessions/<id>/metrics       -> metrics
// Replies carry the same outcome fields the in-process environment produces,
// so a remote driver sees byte-identical behavior for identical seeds and
// messages. Handling is serialized; sessions live until the process exits.
class SessionService {
 public:
  explicit SessionService(ServiceConfig config);
  ~SessionService();

  HttpReply create(const std::string& body);
  HttpReply message(const std::string& id, const std::string& body);
  HttpReply transcript(const std::string& id) const;
  HttpReply metrics(const std::string& id) const;

  int session_count() const;

 private:
  struct Session;

  ServiceConfig config_;
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<Session>> sessions_;
  int next_id_ = 1;
};

// Serves a SessionService over HTTP. start() binds and spawns the listener;
// port 0 picks a free ephemeral port. Returns the bound port, 0 on failure.
class ServiceServer {
 public:
  explicit ServiceServer(SessionService& service);
  ~ServiceServer();

  int start(const std::string& host, int port);
  // Blocks until stop() is called from another thread or the process dies.
  void wait();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tribelang
