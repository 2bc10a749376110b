#include "tribelang/service.hpp"

#include <cstdio>
#include <thread>
#include <utility>

#include "httplib.h"
#include "json.hpp"
#include "tribelang/bundled.hpp"
#include "tribelang/metrics.hpp"

namespace tribelang {

namespace {

using nlohmann::ordered_json;

HttpReply error_reply(int status, const std::string& message) {
  ordered_json body;
  body["error"] = message;
  return {status, body.dump(), "application/json"};
}

ordered_json metrics_body(const SessionMetrics& m) {
  ordered_json j;
  j["tvr"] = m.tvr;
  j["fr"] = m.fr;
  j["ac"] = m.ac;
  j["ttfk"] = m.ttfk;
  j["completions"] = m.completions;
  j["total_turns"] = m.total_turns;
  j["valid_turns"] = m.valid_turns;
  j["feedback_opportunities"] = m.feedback_opportunities;
  j["feedback_recoveries"] = m.feedback_recoveries;
  j["adj_total"] = m.adj_total;
  j["adj_matches"] = m.adj_matches;
  return j;
}

}  // namespace

struct SessionService::Session {
  std::string id;
  LanguageSpec spec;
  Environment env;
  Transcript log;
  int index = 0;
  std::chrono::steady_clock::time_point last_activity;

  Session(std::string session_id, LanguageSpec language, const EnvConfig& config,
          const std::string& agent_label)
      : id(std::move(session_id)), spec(std::move(language)), env(spec, config) {
    log.language = spec.name();
    log.agent_label = agent_label;
    log.t_max = config.t_max;
    log.target_completions = config.target_completions;
    log.seed = config.seed;

    TurnRecord opening;
    opening.index = index++;
    opening.role = Role::environment;
    opening.text = env.opening();
    opening.event = "opening";
    opening.completions = 0;
    log.turns.push_back(std::move(opening));
    last_activity = std::chrono::steady_clock::now();
  }
};

SessionService::SessionService(ServiceConfig config) : config_(std::move(config)) {}

SessionService::~SessionService() = default;

HttpReply SessionService::create(const std::string& body) {
  ordered_json req;
  try {
    req = body.empty() ? ordered_json::object() : ordered_json::parse(body);
  } catch (const ordered_json::parse_error&) {
    return error_reply(400, "body is not valid JSON");
  }
  if (!req.is_object()) return error_reply(400, "body must be a JSON object");

  std::lock_guard<std::mutex> lock(mu_);

  EnvConfig config = config_.defaults;
  std::string language_name = config_.default_language;
  std::string agent_label = "remote";
  try {
    if (req.contains("language")) language_name = req["language"].get<std::string>();
    if (req.contains("seed")) config.seed = req["seed"].get<uint64_t>();
    else config.seed = config_.defaults.seed + uint64_t(next_id_ - 1);
    if (req.contains("t_max")) config.t_max = req["t_max"].get<int>();
    if (req.contains("target_completions"))
      config.target_completions = req["target_completions"].get<int>();
    if (req.contains("agent")) agent_label = req["agent"].get<std::string>();
  } catch (const ordered_json::exception&) {
    return error_reply(400, "malformed field in create request");
  }

  std::unique_ptr<Session> session;
  const std::string id = "s-" + std::to_string(next_id_);
  try {
    LanguageSpec spec = resolve_language(language_name);
    session = std::make_unique<Session>(id, std::move(spec), config, agent_label);
  } catch (const std::exception& e) {
    return error_reply(400, e.what());
  }
  ++next_id_;

  ordered_json reply;
  reply["session_id"] = id;
  reply["language"] = session->log.language;
  reply["seed"] = config.seed;
  reply["t_max"] = config.t_max;
  reply["target_completions"] = config.target_completions;
  reply["opening"] = session->env.opening();
  sessions_.emplace(id, std::move(session));
  return {200, reply.dump(), "application/json"};
}

HttpReply SessionService::message(const std::string& id, const std::string& body) {
  std::lock_guard<std::mutex> lock(mu_);

  auto it = sessions_.find(id);
  if (it == sessions_.end()) return error_reply(404, "unknown session: " + id);
  Session& s = *it->second;
  if (s.env.is_ended()) return error_reply(409, "session " + id + " has ended");

  ordered_json req;
  try {
    req = ordered_json::parse(body);
  } catch (const ordered_json::parse_error&) {
    return error_reply(400, "body is not valid JSON");
  }
  if (!req.is_object() || !req.contains("text") || !req["text"].is_string())
    return error_reply(400, "body must carry a \"text\" string");
  const std::string text = req["text"].get<std::string>();

  const auto now = std::chrono::steady_clock::now();
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           now - s.last_activity)
                           .count();
  s.last_activity = now;

  TurnOutcome outcome = s.env.step(text);

  TurnRecord agent;
  agent.index = s.index++;
  agent.role = Role::agent;
  agent.text = text;
  agent.valid = outcome.valid;
  agent.elapsed_ms = elapsed;
  s.log.turns.push_back(std::move(agent));

  TurnRecord env;
  env.index = s.index++;
  env.role = Role::environment;
  env.text = outcome.reply;
  env.event = std::string(to_string(outcome.event));
  env.completions = outcome.completions;
  s.log.turns.push_back(std::move(env));

  if (s.env.is_ended()) {
    s.log.metrics = score_session(s.log);
    if (config_.transcript_dir) {
      try {
        write_transcript_file(s.log, *config_.transcript_dir + "/" + id + ".jsonl");
      } catch (const std::exception& e) {
        std::fprintf(stderr, "could not persist transcript for %s: %s\n", id.c_str(),
                     e.what());
      }
    }
  }

  ordered_json reply;
  reply["reply"] = outcome.reply;
  reply["valid"] = outcome.valid;
  reply["event"] = std::string(to_string(outcome.event));
  reply["immediate_recovery"] = outcome.immediate_recovery;
  reply["completions"] = outcome.completions;
  reply["done"] = s.env.is_ended();
  return {200, reply.dump(), "application/json"};
}

HttpReply SessionService::transcript(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);

  auto it = sessions_.find(id);
  if (it == sessions_.end()) return error_reply(404, "unknown session: " + id);
  const Session& s = *it->second;

  // Snapshot of the live log, metrics attached on the fly for running
  // sessions so the document is always complete.
  Transcript snapshot = s.log;
  if (!snapshot.metrics) snapshot.metrics = score_session(snapshot);
  return {200, transcript_to_string(snapshot), "application/x-ndjson"};
}

HttpReply SessionService::metrics(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);

  auto it = sessions_.find(id);
  if (it == sessions_.end()) return error_reply(404, "unknown session: " + id);
  const Session& s = *it->second;

  SessionMetrics m = s.log.metrics ? *s.log.metrics : score_session(s.log);
  return {200, metrics_body(m).dump(), "application/json"};
}

int SessionService::session_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return int(sessions_.size());
}

struct ServiceServer::Impl {
  SessionService& service;
  httplib::Server server;
  std::thread listener;
  int port = 0;

  explicit Impl(SessionService& svc) : service(svc) {
    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.create(req.body));
    });
    server.Post(R"(/sessions/([^/]+)/message)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  send(res, service.message(req.matches[1], req.body));
                });
    server.Get(R"(/sessions/([^/]+)/transcript)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 send(res, service.transcript(req.matches[1]));
               });
    server.Get(R"(/sessions/([^/]+)/metrics)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 send(res, service.metrics(req.matches[1]));
               });
  }

  static void send(httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  }
};

ServiceServer::ServiceServer(SessionService& service)
    : impl_(std::make_unique<Impl>(service)) {}

ServiceServer::~ServiceServer() { stop(); }

int ServiceServer::start(const std::string& host, int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
    if (impl_->port <= 0) return 0;
  } else {
    if (!impl_->server.bind_to_port(host, port)) return 0;
    impl_->port = port;
  }
  impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void ServiceServer::wait() {
  if (impl_->listener.joinable()) impl_->listener.join();
}

void ServiceServer::stop() {
  if (impl_->listener.joinable()) {
    impl_->server.stop();
    impl_->listener.join();
  }
}

int ServiceServer::port() const { return impl_->port; }

}  // namespace tribelang
