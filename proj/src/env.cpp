#include "tribelang/env.hpp"

#include <stdexcept>

namespace tribelang {

std::string_view to_string(TurnEvent event) {
  switch (event) {
    case TurnEvent::feedback_negative: return "feedback_negative";
    case TurnEvent::feedback_positive: return "feedback_positive";
    case TurnEvent::completion: return "completion";
    case TurnEvent::session_end: return "session_end";
  }
  return "unknown";
}

Environment::Environment(const LanguageSpec& spec, EnvConfig config)
    : spec_(&spec), config_(config), rng_(config.seed) {
  if (spec.sentences_per_conversation() % 2 != 0)
    throw std::invalid_argument(
        "environment needs an even number of sentences per conversation, got " +
        std::to_string(spec.sentences_per_conversation()));
  if (config.t_max < 1) throw std::invalid_argument("t_max must be at least 1");
  if (config.target_completions < 1)
    throw std::invalid_argument("target_completions must be at least 1");
  active_ = static_cast<int>(rng_.below(spec.conversations().size()));
}

std::string Environment::opening() const {
  return spec_->conversations()[static_cast<size_t>(active_)].sentences[0].text();
}

TurnOutcome Environment::step(std::string_view agent_text) {
  if (ended_) throw std::logic_error("step called after session end");
  ++turns_;

  const auto& conv = spec_->conversations()[static_cast<size_t>(active_)].sentences;
  const int final_index = static_cast<int>(conv.size()) - 1;
  const Normalized norm = normalize_utterance(agent_text);

  TurnOutcome out;
  out.valid = sentence_validity(*spec_, norm);
  out.immediate_recovery =
      last_semantic_ == TurnEvent::feedback_negative && out.valid;

  TurnEvent semantic;
  if (!out.valid) {
    semantic = TurnEvent::feedback_negative;
    out.reply = spec_->feedback().confusion;
    awaiting_ = 1;
    agent_sentences_.clear();
  } else {
    Sentence said;
    said.words = norm.tokens;
    if (awaiting_ < final_index) {
      semantic = TurnEvent::feedback_positive;
      agent_sentences_.push_back(std::move(said));
      out.reply = spec_->feedback().positive + " " +
                  conv[static_cast<size_t>(awaiting_ + 1)].text();
      awaiting_ += 2;
    } else {
      std::vector<Sentence> assembled;
      for (int i = 0; i < final_index; i += 2) {
        assembled.push_back(conv[static_cast<size_t>(i)]);
        if (i / 2 < static_cast<int>(agent_sentences_.size()))
          assembled.push_back(agent_sentences_[static_cast<size_t>(i / 2)]);
      }
      assembled.push_back(said);
      if (conversation_validity(*spec_, assembled)) {
        semantic = TurnEvent::completion;
        ++completions_;
        out.completed = true;
        active_ = static_cast<int>(rng_.below(spec_->conversations().size()));
        awaiting_ = 1;
        agent_sentences_.clear();
        out.reply = spec_->feedback().positive + " " + opening();
      } else {
        semantic = TurnEvent::feedback_positive;
        out.reply = spec_->feedback().positive + " " +
                    conv[static_cast<size_t>(awaiting_ - 1)].text();
      }
    }
  }

  last_semantic_ = semantic;
  out.completions = completions_;
  if (completions_ >= config_.target_completions || turns_ >= config_.t_max) {
    ended_ = true;
    out.event = TurnEvent::session_end;
  } else {
    out.event = semantic;
  }
  return out;
}

}  // namespace tribelang
