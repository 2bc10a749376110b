#include "tribelang/generator.hpp"

#include <algorithm>

#include "json.hpp"
#include "tribelang/rng.hpp"

namespace tribelang {

namespace {

constexpr std::string_view kConsonants = "bcdfghjklmnprstvz";
constexpr std::string_view kVowels = "aeiou";

std::vector<std::string> lexicon_pool(const std::unordered_set<std::string>& excluded) {
  std::vector<std::string> pool;
  std::string w(4, ' ');
  for (char c1 : kConsonants)
    for (char v1 : kVowels)
      for (char c2 : kConsonants)
        for (char v2 : kVowels) {
          w[0] = c1;
          w[1] = v1;
          w[2] = c2;
          w[3] = v2;
          if (!excluded.count(w)) pool.push_back(w);
        }
  return pool;
}

std::vector<std::string> sample_lexicon(Xoshiro256& rng, int size,
                                        const std::unordered_set<std::string>& forbidden,
                                        const FeedbackTokens& feedback) {
  std::unordered_set<std::string> excluded = forbidden;
  excluded.insert(feedback.positive);
  for (const auto& tok : normalize_utterance(feedback.confusion).tokens)
    excluded.insert(tok);
  std::vector<std::string> pool = lexicon_pool(excluded);
  if (static_cast<int>(pool.size()) < size)
    throw GenerationError("lexicon pool has " + std::to_string(pool.size()) +
                          " candidates, need " + std::to_string(size));
  rng.shuffle(pool);
  pool.resize(static_cast<size_t>(size));
  return pool;
}

void validate(const GenParams& p) {
  auto bad = [](const std::string& msg) { throw GenerationError(msg); };
  if (p.conversation_count < 1) bad("conversation_count must be at least 1");
  if (p.sentences_per_conversation < 2 || p.sentences_per_conversation % 2 != 0)
    bad("sentences_per_conversation must be even and at least 2");
  if (p.words_per_sentence < 1) bad("words_per_sentence must be at least 1");
  if (p.min_shared_words < 0 || p.min_shared_words > p.words_per_sentence - 1)
    bad("min_shared_words must lie in [0, words_per_sentence - 1]");
  if (p.lexicon_size < p.words_per_sentence)
    bad("lexicon_size must be at least words_per_sentence");
  if (p.max_backtracks < 0) bad("max_backtracks must be non-negative");
}

std::string generator_header(const GenParams& p) {
  nlohmann::ordered_json j;
  j["family"] = "xoshiro256**";
  j["seed"] = p.seed;
  j["conversation_count"] = p.conversation_count;
  j["sentences_per_conversation"] = p.sentences_per_conversation;
  j["words_per_sentence"] = p.words_per_sentence;
  j["min_shared_words"] = p.min_shared_words;
  j["lexicon_size"] = p.lexicon_size;
  j["enforce_unique_sentences"] = p.enforce_unique_sentences;
  j["max_backtracks"] = p.max_backtracks;
  auto forbidden = p.forbidden_words;
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  j["forbidden_words"] = forbidden;
  return j.dump();
}

// Picks one word uniformly from lexicon minus `taken`.
std::optional<std::string> pick_fresh(Xoshiro256& rng,
                                      const std::vector<std::string>& lexicon,
                                      const std::unordered_set<std::string>& taken) {
  std::vector<const std::string*> eligible;
  for (const auto& w : lexicon)
    if (!taken.count(w)) eligible.push_back(&w);
  if (eligible.empty()) return std::nullopt;
  return *eligible[rng.below(eligible.size())];
}

}  // namespace

std::vector<std::string> gen_lexicon(uint64_t seed, int size,
                                     const std::unordered_set<std::string>& forbidden,
                                     const FeedbackTokens& feedback) {
  if (size < 1) throw GenerationError("lexicon size must be at least 1");
  Xoshiro256 rng(seed);
  return sample_lexicon(rng, size, forbidden, feedback);
}

LanguageSpec gen_language(const GenParams& params, const FeedbackTokens& feedback,
                          std::string name) {
  validate(params);
  Xoshiro256 rng(params.seed);
  std::unordered_set<std::string> forbidden(params.forbidden_words.begin(),
                                            params.forbidden_words.end());
  std::vector<std::string> lexicon =
      sample_lexicon(rng, params.lexicon_size, forbidden, feedback);

  const int wps = params.words_per_sentence;
  int backtracks = 0;
  auto spend = [&](const std::string& where) {
    if (++backtracks > params.max_backtracks)
      throw GenerationError("backtrack budget (" +
                            std::to_string(params.max_backtracks) +
                            ") exhausted while generating " + where);
  };

  std::unordered_set<std::string> used_texts;
  std::vector<Conversation> conversations;
  for (int ci = 0; ci < params.conversation_count; ++ci) {
    Conversation conv;
    for (int si = 0; si < params.sentences_per_conversation; ++si) {
      const std::string where = "conversation " + std::to_string(ci + 1) +
                                " sentence " + std::to_string(si + 1);
      while (true) {
        Sentence cand;
        std::unordered_set<std::string> taken;
        bool dead = false;
        if (si == 0) {
          for (int wi = 0; wi < wps && !dead; ++wi) {
            auto w = pick_fresh(rng, lexicon, taken);
            if (!w) dead = true;
            else {
              taken.insert(*w);
              cand.words.push_back(std::move(*w));
            }
          }
        } else {
          const Sentence& prev = conv.sentences.back();
          const int share_span = wps - params.min_shared_words;
          const int k = params.min_shared_words +
                        static_cast<int>(rng.below(static_cast<uint64_t>(share_span)));
          std::vector<int> order(static_cast<size_t>(wps));
          for (int i = 0; i < wps; ++i) order[static_cast<size_t>(i)] = i;
          rng.shuffle(order);
          for (int i = 0; i < k; ++i) {
            const std::string& w = prev.words[static_cast<size_t>(order[static_cast<size_t>(i)])];
            taken.insert(w);
            cand.words.push_back(w);
          }
          for (int wi = k; wi < wps && !dead; ++wi) {
            auto w = pick_fresh(rng, lexicon, taken);
            if (!w) dead = true;
            else {
              taken.insert(*w);
              cand.words.push_back(std::move(*w));
            }
          }
          rng.shuffle(cand.words);
        }
        if (dead) {
          spend(where);
          continue;
        }
        const std::string text = cand.text();
        if (si > 0 && text == conv.sentences.back().text()) {
          spend(where);
          continue;
        }
        if (params.enforce_unique_sentences && used_texts.count(text)) {
          spend(where);
          continue;
        }
        used_texts.insert(text);
        conv.sentences.push_back(std::move(cand));
        break;
      }
    }
    conversations.push_back(std::move(conv));
  }

  if (name.empty()) name = "gen-" + std::to_string(params.seed);
  return LanguageSpec::build(std::move(name), feedback, std::move(conversations),
                             generator_header(params));
}

bool check_disjoint(const LanguageSpec& a, const LanguageSpec& b) {
  return lexical_overlap(a, b).empty();
}

std::vector<std::string> lexical_overlap(const LanguageSpec& a, const LanguageSpec& b) {
  std::vector<std::string> shared;
  for (const auto& w : a.lexicon())
    if (b.contains_word(w)) shared.push_back(w);
  return shared;
}

}  // namespace tribelang
