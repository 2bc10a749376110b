#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <unordered_set>

#include "tribelang/bundled.hpp"
#include "tribelang/generator.hpp"

using namespace tribelang;

TEST_CASE("gen_lexicon is deterministic, sized, and shaped") {
  auto lex1 = gen_lexicon(42, 25, {});
  auto lex2 = gen_lexicon(42, 25, {});
  CHECK(lex1 == lex2);
  CHECK(lex1.size() == 25);
  std::set<std::string> distinct(lex1.begin(), lex1.end());
  CHECK(distinct.size() == 25);
  for (const auto& w : lex1) {
    CHECK(w.size() == 4);
    CHECK(two_syllable(w));
  }
  CHECK(gen_lexicon(43, 25, {}) != lex1);
}

TEST_CASE("gen_lexicon honors exclusions") {
  auto base = gen_lexicon(7, 50, {});
  std::unordered_set<std::string> forbidden(base.begin(), base.end());
  auto lex = gen_lexicon(7, 50, forbidden);
  for (const auto& w : lex) CHECK_FALSE(forbidden.count(w));

  // feedback words can never appear
  for (const auto& w : gen_lexicon(11, 2000, {}))
    CHECK((w != "koro" && w != "moko" && w != "lira" && w != "bani"));
}

TEST_CASE("gen_lexicon fails when the pool runs dry") {
  CHECK_THROWS_AS(gen_lexicon(1, 8000, {}), GenerationError);
}

TEST_CASE("gen_language produces a constraint-clean language") {
  GenParams p;
  p.seed = 42;
  LanguageSpec lang = gen_language(p);

  CHECK(lang.name() == "gen-42");
  CHECK(lang.conversations().size() == 25);
  CHECK(lang.sentences_per_conversation() == 4);
  CHECK(lang.words_per_sentence() == 3);
  CHECK(lang.lexicon().size() == 25);
  CHECK(lang.diagnostics().empty());
  CHECK(lang.sentences().size() == 100);

  std::set<std::string> openings;
  for (const auto& conv : lang.conversations()) {
    openings.insert(conv.sentences[0].text());
    for (size_t i = 0; i + 1 < conv.sentences.size(); ++i)
      CHECK(adjacency(conv.sentences[i], conv.sentences[i + 1]));
    for (const auto& s : conv.sentences) {
      std::set<std::string> in_sentence(s.words.begin(), s.words.end());
      CHECK(in_sentence.size() == s.words.size());
    }
  }
  CHECK(openings.size() == 25);
}

TEST_CASE("generation is deterministic and seed-sensitive") {
  GenParams p;
  p.seed = 9;
  std::string a = serialize_language(gen_language(p));
  std::string b = serialize_language(gen_language(p));
  CHECK(a == b);

  p.seed = 10;
  CHECK(serialize_language(gen_language(p)) != a);
}

TEST_CASE("generated documents round trip through the loader") {
  GenParams p;
  p.seed = 3;
  p.conversation_count = 10;
  p.sentences_per_conversation = 6;
  p.lexicon_size = 40;
  LanguageSpec lang = gen_language(p, FeedbackTokens{}, "roundtrip");
  std::string doc = serialize_language(lang);
  LanguageSpec back = load_language(doc);
  CHECK(back.name() == "roundtrip");
  CHECK(back.conversations().size() == 10);
  CHECK(back.sentences_per_conversation() == 6);
  CHECK(back.generator_json() == lang.generator_json());
  CHECK(serialize_language(back) == doc);
  CHECK(back.generator_json().find("xoshiro256**") != std::string::npos);
}

TEST_CASE("min_shared_words is honored") {
  GenParams p;
  p.seed = 5;
  p.min_shared_words = 2;
  LanguageSpec lang = gen_language(p);
  for (const auto& conv : lang.conversations())
    for (size_t i = 0; i + 1 < conv.sentences.size(); ++i) {
      int shared = 0;
      for (const auto& wa : conv.sentences[i].words)
        for (const auto& wb : conv.sentences[i + 1].words)
          if (wa == wb) ++shared;
      CHECK(shared >= 2);
    }
}

TEST_CASE("disjoint generation against the bundled languages") {
  GenParams p;
  p.seed = 77;
  const auto& tink = tinkatongue();
  p.forbidden_words = tink.lexicon();
  LanguageSpec lang = gen_language(p);
  CHECK(check_disjoint(lang, tink));
  CHECK_FALSE(check_disjoint(lang, lang));
}

TEST_CASE("the bundled languages are not disjoint and the overlap is exact") {
  CHECK_FALSE(check_disjoint(tinkatongue(), zingaloom()));
  CHECK(lexical_overlap(tinkatongue(), zingaloom()) ==
        std::vector<std::string>{"kima", "laku", "lira", "tika"});
}

TEST_CASE("unsatisfiable parameters are rejected up front") {
  GenParams p;
  p.sentences_per_conversation = 5;
  CHECK_THROWS_AS(gen_language(p), GenerationError);

  p = GenParams{};
  p.min_shared_words = 3;
  CHECK_THROWS_AS(gen_language(p), GenerationError);

  p = GenParams{};
  p.lexicon_size = 2;
  CHECK_THROWS_AS(gen_language(p), GenerationError);

  p = GenParams{};
  p.conversation_count = 0;
  CHECK_THROWS_AS(gen_language(p), GenerationError);
}

TEST_CASE("backtrack budget exhaustion surfaces as an error") {
  GenParams p;
  p.seed = 1;
  p.lexicon_size = 3;  // every sentence is a permutation of the same 3 words
  CHECK_THROWS_WITH_AS(gen_language(p), doctest::Contains("backtrack"),
                       GenerationError);
}

TEST_CASE("generated language works with a custom feedback pair") {
  GenParams p;
  p.seed = 12;
  FeedbackTokens fb{"yesa", "no no no"};
  LanguageSpec lang = gen_language(p, fb, "custom");
  CHECK(lang.feedback().positive == "yesa");
  CHECK_FALSE(lang.contains_word("yesa"));
  CHECK_FALSE(lang.contains_word("no"));
}
