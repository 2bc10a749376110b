#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <string>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "tribelang/bundled.hpp"
#include "tribelang/env.hpp"
#include "tribelang/metrics.hpp"
#include "tribelang/rng.hpp"
#include "tribelang/service.hpp"
#include "tribelang/transcript.hpp"

using namespace tribelang;
using nlohmann::ordered_json;

namespace {

ServiceConfig default_config() {
  ServiceConfig config;
  config.defaults.seed = 2;
  return config;
}

ordered_json parse(const HttpReply& reply) { return ordered_json::parse(reply.body); }

std::string text_body(const std::string& text) {
  ordered_json j;
  j["text"] = text;
  return j.dump();
}

// A deterministic message mix: mostly enumerated sentences, some invalid
// noise, independent of the environment's own random stream.
std::string nth_message(const LanguageSpec& spec, Xoshiro256& rng) {
  if (rng.below(4) == 0) return "zzz krk";
  return spec.sentences()[size_t(rng.below(uint64_t(spec.sentences().size())))].text();
}

}  // namespace

TEST_CASE("create starts a session and announces the opening") {
  SessionService service(default_config());
  HttpReply reply = service.create(R"({"seed": 2, "agent": "tester"})");
  REQUIRE(reply.status == 200);

  ordered_json body = parse(reply);
  CHECK(body["session_id"] == "s-1");
  CHECK(body["language"] == "tinkatongue");
  CHECK(body["seed"] == 2);
  CHECK(body["t_max"] == 100);
  CHECK(body["target_completions"] == 3);
  CHECK(body["opening"] == "banu tira lomo");
  CHECK(service.session_count() == 1);
}

TEST_CASE("sessions without an explicit seed take consecutive derived seeds") {
  ServiceConfig config = default_config();
  config.defaults.seed = 100;
  SessionService service(config);

  CHECK(parse(service.create(""))["seed"] == 100);
  CHECK(parse(service.create("{}"))["seed"] == 101);
  CHECK(parse(service.create(R"({"seed": 7})"))["seed"] == 7);
  CHECK(parse(service.create("{}"))["seed"] == 103);
}

TEST_CASE("create rejects malformed requests") {
  SessionService service(default_config());
  CHECK(service.create("not json").status == 400);
  CHECK(service.create("[1, 2]").status == 400);
  CHECK(service.create(R"({"language": "klingon"})").status == 400);
  CHECK(service.create(R"({"t_max": 0})").status == 400);
  CHECK(service.create(R"({"seed": "nope"})").status == 400);
  CHECK(service.session_count() == 0);

  ordered_json body = parse(service.create(R"({"language": "klingon"})"));
  CHECK(body.contains("error"));
}

TEST_CASE("message walks the feedback protocol") {
  SessionService service(default_config());
  service.create(R"({"seed": 2})");  // opening "banu tira lomo"

  HttpReply invalid = service.message("s-1", text_body("lomo sora kina"));
  REQUIRE(invalid.status == 200);
  ordered_json inv = parse(invalid);
  CHECK(inv["reply"] == "moko lira bani");
  CHECK(inv["valid"] == false);
  CHECK(inv["event"] == "feedback_negative");
  CHECK(inv["completions"] == 0);
  CHECK(inv["done"] == false);

  HttpReply valid = service.message("s-1", text_body("lumo banu kina"));
  ordered_json val = parse(valid);
  CHECK(val["reply"] == "koro lumo tira fanu");
  CHECK(val["valid"] == true);
  CHECK(val["event"] == "feedback_positive");
  CHECK(val["immediate_recovery"] == true);

  CHECK(service.message("s-1", "not json").status == 400);
  CHECK(service.message("s-1", R"({"sentence": "x"})").status == 400);
  CHECK(service.message("s-9", text_body("banu tira lomo")).status == 404);
}

TEST_CASE("a finished session answers conflict to further messages") {
  SessionService service(default_config());
  service.create(R"({"seed": 2, "target_completions": 1})");

  CHECK(parse(service.message("s-1", text_body("lumo banu kina")))["done"] == false);
  ordered_json last = parse(service.message("s-1", text_body("fanu kina riko")));
  CHECK(last["event"] == "session_end");
  CHECK(last["completions"] == 1);
  CHECK(last["done"] == true);

  CHECK(service.message("s-1", text_body("banu tira lomo")).status == 409);
}

TEST_CASE("transcripts are served as replayable logs at any point") {
  SessionService service(default_config());
  service.create(R"({"seed": 2, "agent": "tester"})");
  service.message("s-1", text_body("lumo banu kina"));

  HttpReply reply = service.transcript("s-1");
  REQUIRE(reply.status == 200);
  CHECK(reply.content_type == "application/x-ndjson");

  Transcript t = read_transcript_string(reply.body);
  CHECK(t.language == "tinkatongue");
  CHECK(t.agent_label == "tester");
  CHECK(t.seed == 2);
  REQUIRE(t.turns.size() == 3);
  CHECK(t.turns[0].text == "banu tira lomo");
  CHECK(t.turns[2].text == "koro lumo tira fanu");
  REQUIRE(t.metrics.has_value());
  CHECK(t.metrics->total_turns == 1);
  CHECK(t.metrics->valid_turns == 1);

  CHECK(service.transcript("s-9").status == 404);
}

TEST_CASE("metrics are served for running and finished sessions") {
  SessionService service(default_config());
  service.create(R"({"seed": 2, "target_completions": 1})");
  service.message("s-1", text_body("zzz krk"));
  service.message("s-1", text_body("lumo banu kina"));

  ordered_json running = parse(service.metrics("s-1"));
  CHECK(running["total_turns"] == 2);
  CHECK(running["valid_turns"] == 1);
  CHECK(running["feedback_opportunities"] == 1);
  CHECK(running["feedback_recoveries"] == 1);
  CHECK(running["ttfk"] == 2);
  CHECK(running["completions"] == 0);

  service.message("s-1", text_body("fanu kina riko"));
  ordered_json done = parse(service.metrics("s-1"));
  CHECK(done["completions"] == 1);
  CHECK(done["tvr"] == doctest::Approx(2.0 / 3.0));

  CHECK(service.metrics("s-9").status == 404);
}

TEST_CASE("finished sessions are persisted when a transcript dir is set") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "tribelang-service-test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  ServiceConfig config = default_config();
  config.transcript_dir = dir.string();
  SessionService service(config);
  service.create(R"({"seed": 2, "target_completions": 1, "agent": "tester"})");
  service.message("s-1", text_body("lumo banu kina"));
  CHECK_FALSE(fs::exists(dir / "s-1.jsonl"));
  service.message("s-1", text_body("fanu kina riko"));
  REQUIRE(fs::exists(dir / "s-1.jsonl"));

  Transcript t = read_transcript_file((dir / "s-1.jsonl").string());
  CHECK(t.agent_label == "tester");
  REQUIRE(t.metrics.has_value());
  CHECK(t.metrics->completions == 1);
  CHECK(t.turns.back().event == "session_end");

  fs::remove_all(dir);
}

TEST_CASE("service sessions mirror the in-process environment exactly") {
  for (uint64_t seed : {0ULL, 2ULL, 8ULL, 41ULL}) {
    SessionService service(default_config());
    ordered_json created =
        parse(service.create(R"({"seed": )" + std::to_string(seed) + "}"));
    const std::string id = created["session_id"];

    EnvConfig config;
    config.seed = seed;
    Environment env(tinkatongue(), config);
    REQUIRE(created["opening"] == env.opening());

    Xoshiro256 driver(seed * 977 + 13);
    int steps = 0;
    while (!env.is_ended() && steps < 120) {
      const std::string text = nth_message(tinkatongue(), driver);
      TurnOutcome expected = env.step(text);
      ordered_json got = parse(service.message(id, text_body(text)));
      REQUIRE(got["reply"] == expected.reply);
      REQUIRE(got["valid"] == expected.valid);
      REQUIRE(got["event"] == std::string(to_string(expected.event)));
      REQUIRE(got["completions"] == expected.completions);
      REQUIRE(got["done"] == env.is_ended());
      ++steps;
    }
    CHECK(env.is_ended());
    CHECK(service.message(id, text_body("banu tira lomo")).status == 409);
  }
}

TEST_CASE("the http server exposes all four routes") {
  SessionService service(default_config());
  ServiceServer server(service);
  const int port = server.start("127.0.0.1", 0);
  REQUIRE(port > 0);

  httplib::Client client("127.0.0.1", port);

  auto created = client.Post("/sessions", R"({"seed": 2, "target_completions": 1})",
                             "application/json");
  REQUIRE(created);
  REQUIRE(created->status == 200);
  ordered_json body = ordered_json::parse(created->body);
  const std::string id = body["session_id"];
  CHECK(body["opening"] == "banu tira lomo");

  auto replied = client.Post("/sessions/" + id + "/message",
                             text_body("lumo banu kina"), "application/json");
  REQUIRE(replied);
  REQUIRE(replied->status == 200);
  CHECK(ordered_json::parse(replied->body)["reply"] == "koro lumo tira fanu");

  auto transcript = client.Get("/sessions/" + id + "/transcript");
  REQUIRE(transcript);
  REQUIRE(transcript->status == 200);
  Transcript t = read_transcript_string(transcript->body);
  CHECK(t.turns.size() == 3);

  auto metrics = client.Get("/sessions/" + id + "/metrics");
  REQUIRE(metrics);
  REQUIRE(metrics->status == 200);
  CHECK(ordered_json::parse(metrics->body)["valid_turns"] == 1);

  auto missing = client.Get("/sessions/nope/metrics");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  auto conflict_probe = client.Post("/sessions/" + id + "/message",
                                    text_body("fanu kina riko"), "application/json");
  REQUIRE(conflict_probe);
  CHECK(ordered_json::parse(conflict_probe->body)["done"] == true);
  auto conflict = client.Post("/sessions/" + id + "/message",
                              text_body("banu tira lomo"), "application/json");
  REQUIRE(conflict);
  CHECK(conflict->status == 409);

  server.stop();
}

TEST_CASE("http replies match the in-process environment") {
  SessionService service(default_config());
  ServiceServer server(service);
  const int port = server.start("127.0.0.1", 0);
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);

  auto created = client.Post("/sessions", R"({"seed": 5})", "application/json");
  REQUIRE(created);
  const std::string id = ordered_json::parse(created->body)["session_id"];

  EnvConfig config;
  config.seed = 5;
  Environment env(tinkatongue(), config);

  Xoshiro256 driver(99);
  int steps = 0;
  while (!env.is_ended() && steps < 120) {
    const std::string text = nth_message(tinkatongue(), driver);
    TurnOutcome expected = env.step(text);
    auto got = client.Post("/sessions/" + id + "/message", text_body(text),
                           "application/json");
    REQUIRE(got);
    REQUIRE(got->status == 200);
    ordered_json outcome = ordered_json::parse(got->body);
    REQUIRE(outcome["reply"] == expected.reply);
    REQUIRE(outcome["valid"] == expected.valid);
    ++steps;
  }
  CHECK(env.is_ended());

  server.stop();
}
