#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tribelang/language.hpp"
#include "tribelang/transcript.hpp"

namespace tribelang {

// Transport or protocol failure while obtaining an agent response; the
// harness turns it into an aborted transcript.
class AgentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChatTurn {
  Role role = Role::environment;
  std::string text;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string label() const = 0;
  // Produces the next utterance. `history` holds the whole dialogue so far,
  // ending with the tribe's latest message.
  virtual std::string respond(const std::vector<ChatTurn>& history) = 0;
  // Called once before a session starts.
  virtual void reset() {}
};

// Perfect-information reference player. Mirrors the tribe's bookkeeping,
// narrows the candidate conversations by every announced sentence, and when
// its committed guess turns out unfixable it deliberately sends one invalid
// token to reset the exchange and replays the now-identified conversation.
std::unique_ptr<Agent> make_oracle_agent(const LanguageSpec& spec);

enum class ScriptedKind { random_valid, random_invalid, babbler, imitator };

ScriptedKind scripted_kind_from_string(std::string_view name);

std::unique_ptr<Agent> make_scripted_agent(ScriptedKind kind, const LanguageSpec& spec,
                                           uint64_t seed);

// Interactive player for the play command: prints the tribe's message to
// `out` and reads the reply from `in`.
std::unique_ptr<Agent> make_human_agent(std::istream& in, std::ostream& out);

}  // namespace tribelang
