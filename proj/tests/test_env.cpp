#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "tribelang/bundled.hpp"
#include "tribelang/env.hpp"
#include "tribelang/generator.hpp"

using namespace tribelang;

// Seed 2 draws conversation 1 first, then conversation 8 ("banu sira naku").
// Conversation 1: banu tira lomo / lumo banu kina / lumo tira fanu /
// fanu kina riko.

TEST_CASE("opening announces the drawn conversation") {
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 2});
  CHECK(env.opening() == "banu tira lomo");
  CHECK(env.active_conversation() == 0);
  CHECK(env.awaiting_index() == 1);
  CHECK_FALSE(env.is_ended());

  Environment env20(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 20});
  CHECK(env20.opening() == "soro kina batu");
  CHECK(env20.active_conversation() == 2);
}

TEST_CASE("valid mid-conversation sentence is acknowledged and advanced") {
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 2});
  auto out = env.step("lumo banu kina");
  CHECK(out.valid);
  CHECK(out.event == TurnEvent::feedback_positive);
  CHECK(out.reply == "koro lumo tira fanu");
  CHECK_FALSE(out.immediate_recovery);
  CHECK_FALSE(out.completed);
  CHECK(out.completions == 0);
  CHECK(env.awaiting_index() == 3);
}

TEST_CASE("surface form does not matter for validity") {
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 2});
  auto out = env.step("  Lumo   BANU kina \n");
  CHECK(out.valid);
  CHECK(out.reply == "koro lumo tira fanu");
}

TEST_CASE("invalid message confuses the tribe and resets the position") {
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 2});
  REQUIRE(env.step("lumo banu kina").valid);
  REQUIRE(env.awaiting_index() == 3);

  auto out = env.step("banu tira");
  CHECK_FALSE(out.valid);
  CHECK(out.event == TurnEvent::feedback_negative);
  CHECK(out.reply == "moko lira bani");
  CHECK(env.awaiting_index() == 1);
  CHECK(env.active_conversation() == 0);

  // recovery flag on the next valid message
  auto again = env.step("lumo banu kina");
  CHECK(again.valid);
  CHECK(again.immediate_recovery);
  CHECK(again.reply == "koro lumo tira fanu");
}

TEST_CASE("malformed characters never validate") {
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 2});
  CHECK_FALSE(env.step("lumo banu kina!").valid);
  CHECK_FALSE(env.step("lumo banu k1na").valid);
  CHECK_FALSE(env.step("").valid);
}

TEST_CASE("completion draws a fresh conversation and announces it") {
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 2});
  REQUIRE(env.step("lumo banu kina").valid);
  auto out = env.step("fanu kina riko");
  CHECK(out.valid);
  CHECK(out.event == TurnEvent::completion);
  CHECK(out.completed);
  CHECK(out.completions == 1);
  CHECK(out.reply == "koro banu sira naku");
  CHECK(env.active_conversation() == 7);
  CHECK(env.awaiting_index() == 1);
  CHECK_FALSE(env.is_ended());
}

TEST_CASE("valid final sentence that matches no conversation repeats the cue") {
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 2});
  REQUIRE(env.step("lumo banu kina").valid);
  auto out = env.step("banu tira lomo");  // valid sentence, wrong closer
  CHECK(out.valid);
  CHECK(out.event == TurnEvent::feedback_positive);
  CHECK_FALSE(out.completed);
  CHECK(out.reply == "koro lumo tira fanu");
  CHECK(env.awaiting_index() == 3);

  // the right closer still works afterwards
  auto done = env.step("fanu kina riko");
  CHECK(done.event == TurnEvent::completion);
}

TEST_CASE("wrong recorded second sentence blocks completion") {
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 2});
  REQUIRE(env.step("banu tira lomo").valid);  // valid but not conversation 1's u2
  auto out = env.step("fanu kina riko");
  CHECK(out.valid);
  CHECK(out.event == TurnEvent::feedback_positive);
  CHECK_FALSE(out.completed);
  CHECK(out.reply == "koro lumo tira fanu");
}

TEST_CASE("session ends at the completion target") {
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 1, .seed = 2});
  REQUIRE(env.step("lumo banu kina").valid);
  auto out = env.step("fanu kina riko");
  CHECK(out.event == TurnEvent::session_end);
  CHECK(out.completed);
  CHECK(out.completions == 1);
  CHECK(env.is_ended());
  CHECK_THROWS_AS(env.step("banu tira lomo"), std::logic_error);
}

TEST_CASE("session ends at the turn budget") {
  Environment env(tinkatongue(), {.t_max = 3, .target_completions = 3, .seed = 2});
  CHECK(env.step("xxx").event == TurnEvent::feedback_negative);
  CHECK(env.step("xxx").event == TurnEvent::feedback_negative);
  auto last = env.step("xxx");
  CHECK(last.event == TurnEvent::session_end);
  CHECK_FALSE(last.valid);
  CHECK(env.is_ended());
  CHECK(env.agent_turns() == 3);
}

TEST_CASE("environment runs are deterministic") {
  const char* script[] = {"lumo banu kina", "zzz", "lumo banu kina",
                          "fanu kina riko", "banu sira naku"};
  EnvConfig cfg{.t_max = 100, .target_completions = 3, .seed = 2};
  Environment a(tinkatongue(), cfg), b(tinkatongue(), cfg);
  for (const char* msg : script) {
    auto oa = a.step(msg);
    auto ob = b.step(msg);
    CHECK(oa.valid == ob.valid);
    CHECK(oa.event == ob.event);
    CHECK(oa.reply == ob.reply);
    CHECK(oa.completions == ob.completions);
  }
}

TEST_CASE("completion works in conversations with known adjacency gaps") {
  // seed 4 draws conversation 7, whose listed sentences include pairs that
  // share no word; membership, not adjacency, is what the tribe checks
  Environment env(tinkatongue(), {.t_max = 100, .target_completions = 3, .seed = 4});
  REQUIRE(env.opening() == "kima nora falu");
  REQUIRE(env.step("tira lumo naku").valid);
  auto out = env.step("nira banu falu");
  CHECK(out.event == TurnEvent::completion);
  CHECK(out.completions == 1);
}

TEST_CASE("six-sentence conversations walk the same protocol") {
  GenParams p;
  p.seed = 3;
  p.conversation_count = 10;
  p.sentences_per_conversation = 6;
  p.lexicon_size = 40;
  LanguageSpec lang = gen_language(p);
  Environment env(lang, {.t_max = 100, .target_completions = 1, .seed = 5});
  const auto& conv =
      lang.conversations()[static_cast<size_t>(env.active_conversation())].sentences;
  CHECK(env.opening() == conv[0].text());

  auto r1 = env.step(conv[1].text());
  CHECK(r1.event == TurnEvent::feedback_positive);
  CHECK(r1.reply == lang.feedback().positive + " " + conv[2].text());
  auto r2 = env.step(conv[3].text());
  CHECK(r2.event == TurnEvent::feedback_positive);
  CHECK(r2.reply == lang.feedback().positive + " " + conv[4].text());
  auto r3 = env.step(conv[5].text());
  CHECK(r3.event == TurnEvent::session_end);
  CHECK(r3.completed);
}

TEST_CASE("odd conversation length is rejected") {
  LanguageSpec lang = load_language(
      R"({"name":"odd","feedback":{"positive":"koro","confusion":"moko lira bani"},
          "conversations":[["banu tira lomo","lumo banu kina","lumo tira fanu"]]})");
  CHECK_THROWS_AS(Environment(lang, EnvConfig{}), std::invalid_argument);
}

TEST_CASE("bad config is rejected") {
  CHECK_THROWS_AS(Environment(tinkatongue(), {.t_max = 0, .target_completions = 3, .seed = 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Environment(tinkatongue(), {.t_max = 10, .target_completions = 0, .seed = 1}),
                  std::invalid_argument);
}
