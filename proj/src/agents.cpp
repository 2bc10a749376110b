#include "tribelang/agents.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

#include "tribelang/rng.hpp"

namespace tribelang {

namespace {

// Classification of a tribe message from its surface form.
struct EnvMessage {
  enum Kind { opening, confusion, positive } kind = opening;
  std::string sentence;  // content sentence; empty for confusion
};

EnvMessage classify(const LanguageSpec& spec, const std::string& text) {
  EnvMessage m;
  const Normalized norm = normalize_utterance(text);
  if (norm.text() == normalize_utterance(spec.feedback().confusion).text()) {
    m.kind = EnvMessage::confusion;
    return m;
  }
  if (!norm.tokens.empty() && norm.tokens[0] == spec.feedback().positive) {
    m.kind = EnvMessage::positive;
    Normalized rest;
    rest.tokens.assign(norm.tokens.begin() + 1, norm.tokens.end());
    m.sentence = rest.text();
    return m;
  }
  m.kind = EnvMessage::opening;
  m.sentence = norm.text();
  return m;
}

class OracleAgent final : public Agent {
 public:
  explicit OracleAgent(const LanguageSpec& spec) : spec_(&spec) { reset(); }

  std::string label() const override { return "oracle"; }

  void reset() override {
    observed_.clear();
    committed_.clear();
    awaiting_ = 1;
    last_sent_.clear();
    last_was_reset_ = false;
  }

  std::string respond(const std::vector<ChatTurn>& history) override {
    if (history.empty() || history.back().role != Role::environment)
      throw AgentError("oracle needs a tribe message to respond to");
    absorb(classify(*spec_, history.back().text), history.size() == 1);

    auto candidates = compatible();
    if (candidates.empty()) {
      // A committed sentence can no longer lead to a listed conversation.
      // One invalid token resets the exchange; the observations stay valid.
      last_was_reset_ = true;
      last_sent_ = spec_->feedback().positive;
      return last_sent_;
    }
    const auto& conv = spec_->conversations()[candidates.front()].sentences;
    last_was_reset_ = false;
    last_sent_ = conv[static_cast<size_t>(awaiting_)].text();
    return last_sent_;
  }

 private:
  void absorb(const EnvMessage& msg, bool first) {
    if (first) {
      start_episode(msg.sentence);
      return;
    }
    switch (msg.kind) {
      case EnvMessage::confusion:
        committed_.clear();
        awaiting_ = 1;
        return;
      case EnvMessage::opening:
        start_episode(msg.sentence);
        return;
      case EnvMessage::positive:
        if (last_was_reset_) {
          // should not happen: a reset draws confusion; treat as a cue
          committed_.clear();
          awaiting_ = 1;
        }
        if (awaiting_ == final_index()) {
          // only sent when completion was assured, so this is a fresh opening
          start_episode(msg.sentence);
        } else {
          committed_[awaiting_] = last_sent_;
          observed_[awaiting_ + 1] = msg.sentence;
          awaiting_ += 2;
        }
        return;
    }
  }

  void start_episode(const std::string& opening) {
    observed_.clear();
    committed_.clear();
    observed_[0] = opening;
    awaiting_ = 1;
  }

  int final_index() const { return spec_->sentences_per_conversation() - 1; }

  std::vector<size_t> compatible() const {
    std::vector<size_t> out;
    const auto& convs = spec_->conversations();
    for (size_t ci = 0; ci < convs.size(); ++ci) {
      const auto& s = convs[ci].sentences;
      bool ok = true;
      for (const auto& [idx, text] : observed_)
        if (s[static_cast<size_t>(idx)].text() != text) {
          ok = false;
          break;
        }
      for (const auto& [idx, text] : committed_)
        if (ok && s[static_cast<size_t>(idx)].text() != text) ok = false;
      if (ok) out.push_back(ci);
    }
    return out;
  }

  const LanguageSpec* spec_;
  std::map<int, std::string> observed_;   // announced sentences, by position
  std::map<int, std::string> committed_;  // accepted own sentences, by position
  int awaiting_ = 1;
  std::string last_sent_;
  bool last_was_reset_ = false;
};

class RandomValidAgent final : public Agent {
 public:
  RandomValidAgent(const LanguageSpec& spec, uint64_t seed)
      : spec_(&spec), seed_(seed), rng_(seed) {}

  std::string label() const override { return "random-valid"; }
  void reset() override { rng_ = Xoshiro256(seed_); }

  std::string respond(const std::vector<ChatTurn>&) override {
    const auto& sentences = spec_->sentences();
    return sentences[rng_.below(sentences.size())].text();
  }

 private:
  const LanguageSpec* spec_;
  uint64_t seed_;
  Xoshiro256 rng_;
};

class RandomInvalidAgent final : public Agent {
 public:
  RandomInvalidAgent(const LanguageSpec& spec, uint64_t seed)
      : spec_(&spec), seed_(seed), rng_(seed) {}

  std::string label() const override { return "random-invalid"; }
  void reset() override { rng_ = Xoshiro256(seed_); }

  std::string respond(const std::vector<ChatTurn>&) override {
    // word salad from the real lexicon, rejected if it happens to be a
    // sentence; the fallback can never be valid
    const auto& lex = spec_->lexicon();
    for (int attempt = 0; attempt < 100; ++attempt) {
      std::vector<std::string> words;
      for (int i = 0; i < spec_->words_per_sentence(); ++i)
        words.push_back(lex[rng_.below(lex.size())]);
      Sentence s;
      s.words = words;
      if (!spec_->contains_sentence_text(s.text())) return s.text();
    }
    return spec_->feedback().positive;
  }

 private:
  const LanguageSpec* spec_;
  uint64_t seed_;
  Xoshiro256 rng_;
};

// Builds short utterances out of words it has heard, the way models were
// observed to probe the tribe early in a session.
class BabblerAgent final : public Agent {
 public:
  BabblerAgent(const LanguageSpec& spec, uint64_t seed)
      : spec_(&spec), seed_(seed), rng_(seed) {}

  std::string label() const override { return "babbler"; }

  void reset() override {
    rng_ = Xoshiro256(seed_);
    heard_.clear();
  }

  std::string respond(const std::vector<ChatTurn>& history) override {
    for (const auto& turn : history)
      if (turn.role == Role::environment)
        for (const auto& tok : normalize_utterance(turn.text).tokens)
          if (std::find(heard_.begin(), heard_.end(), tok) == heard_.end())
            heard_.push_back(tok);
    const int len = 1 + static_cast<int>(rng_.below(4));
    std::vector<std::string> words;
    for (int i = 0; i < len; ++i)
      words.push_back(heard_[rng_.below(heard_.size())]);
    Sentence s;
    s.words = words;
    return s.text();
  }

 private:
  const LanguageSpec* spec_;
  uint64_t seed_;
  Xoshiro256 rng_;
  std::vector<std::string> heard_;
};

// Repeats the tribe's latest content sentence back at it.
class ImitatorAgent final : public Agent {
 public:
  explicit ImitatorAgent(const LanguageSpec& spec) : spec_(&spec) {}

  std::string label() const override { return "imitator"; }
  void reset() override { last_content_.clear(); }

  std::string respond(const std::vector<ChatTurn>& history) override {
    for (const auto& turn : history) {
      if (turn.role != Role::environment) continue;
      EnvMessage msg = classify(*spec_, turn.text);
      if (msg.kind != EnvMessage::confusion && !msg.sentence.empty())
        last_content_ = msg.sentence;
    }
    return last_content_.empty() ? spec_->feedback().positive : last_content_;
  }

 private:
  const LanguageSpec* spec_;
  std::string last_content_;
};

class HumanAgent final : public Agent {
 public:
  HumanAgent(std::istream& in, std::ostream& out) : in_(&in), out_(&out) {}

  std::string label() const override { return "human"; }

  std::string respond(const std::vector<ChatTurn>& history) override {
    if (!history.empty())
      *out_ << "tribe: " << history.back().text << "\n";
    *out_ << "you: " << std::flush;
    std::string line;
    if (!std::getline(*in_, line)) throw AgentError("input closed");
    return line;
  }

 private:
  std::istream* in_;
  std::ostream* out_;
};

}  // namespace

std::unique_ptr<Agent> make_oracle_agent(const LanguageSpec& spec) {
  return std::make_unique<OracleAgent>(spec);
}

ScriptedKind scripted_kind_from_string(std::string_view name) {
  if (name == "random-valid") return ScriptedKind::random_valid;
  if (name == "random-invalid") return ScriptedKind::random_invalid;
  if (name == "babbler") return ScriptedKind::babbler;
  if (name == "imitator") return ScriptedKind::imitator;
  throw std::invalid_argument("unknown scripted agent: " + std::string(name));
}

std::unique_ptr<Agent> make_scripted_agent(ScriptedKind kind, const LanguageSpec& spec,
                                           uint64_t seed) {
  switch (kind) {
    case ScriptedKind::random_valid:
      return std::make_unique<RandomValidAgent>(spec, seed);
    case ScriptedKind::random_invalid:
      return std::make_unique<RandomInvalidAgent>(spec, seed);
    case ScriptedKind::babbler:
      return std::make_unique<BabblerAgent>(spec, seed);
    case ScriptedKind::imitator:
      return std::make_unique<ImitatorAgent>(spec);
  }
  throw std::invalid_argument("unknown scripted agent kind");
}

std::unique_ptr<Agent> make_human_agent(std::istream& in, std::ostream& out) {
  return std::make_unique<HumanAgent>(in, out);
}

}  // namespace tribelang
