#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tribelang/language.hpp"
#include "tribelang/rng.hpp"

namespace tribelang {

struct EnvConfig {
  int t_max = 100;
  int target_completions = 3;
  uint64_t seed = 0;
};

enum class TurnEvent { feedback_negative, feedback_positive, completion, session_end };

std::string_view to_string(TurnEvent event);

struct TurnOutcome {
  bool valid = false;
  TurnEvent event = TurnEvent::feedback_negative;
  std::string reply;
  bool immediate_recovery = false;
  // True when this turn finished a conversation, also on the terminal turn
  // where event reads session_end.
  bool completed = false;
  int completions = 0;
};

// The tribe. Announces the opening sentence of a randomly drawn conversation
// and reacts to each agent message:
//   invalid sentence   -> confusion phrase, conversation position resets
//   valid, mid         -> recorded; positive token + the next tribe sentence
//   valid, final, hit  -> completion; positive token + a fresh opening
//   valid, final, miss -> positive token + the current tribe sentence again
// The session ends after target_completions completions or t_max agent turns.
class Environment {
 public:
  Environment(const LanguageSpec& spec, EnvConfig config);

  // Current announced opening (changes after each completion).
  std::string opening() const;

  TurnOutcome step(std::string_view agent_text);

  bool is_ended() const { return ended_; }
  int completions() const { return completions_; }
  int agent_turns() const { return turns_; }
  int active_conversation() const { return active_; }
  // 0-based index into the active conversation of the sentence the agent is
  // expected to produce next (always odd).
  int awaiting_index() const { return awaiting_; }
  const EnvConfig& config() const { return config_; }
  const LanguageSpec& spec() const { return *spec_; }

 private:
  const LanguageSpec* spec_;
  EnvConfig config_;
  Xoshiro256 rng_;
  int active_ = 0;
  int awaiting_ = 1;
  std::vector<Sentence> agent_sentences_;
  int completions_ = 0;
  int turns_ = 0;
  bool ended_ = false;
  std::optional<TurnEvent> last_semantic_;
};

}  // namespace tribelang
