#include "tribelang/session.hpp"

#include <chrono>

namespace tribelang {

Transcript run_session(Agent& agent, const LanguageSpec& spec,
                       const RunOptions& options) {
  using clock = std::chrono::steady_clock;

  Environment env(spec, options.env);
  agent.reset();

  Transcript t;
  t.language = spec.name();
  t.agent_label = agent.label();
  t.t_max = options.env.t_max;
  t.target_completions = options.env.target_completions;
  t.seed = options.env.seed;
  t.recovery_mode = std::string(to_string(options.recovery));
  t.prompt_variant = options.prompt_variant;

  std::vector<ChatTurn> history;
  int index = 0;
  auto add_env = [&](const std::string& text, std::string event, int completions) {
    TurnRecord rec;
    rec.index = index++;
    rec.role = Role::environment;
    rec.text = text;
    rec.event = std::move(event);
    rec.completions = completions;
    t.turns.push_back(rec);
    history.push_back({Role::environment, text});
  };

  add_env(env.opening(), "opening", 0);

  while (!env.is_ended()) {
    std::string reply;
    const auto started = clock::now();
    try {
      reply = agent.respond(history);
    } catch (const AgentError& e) {
      t.abort_reason = std::string("agent failure: ") + e.what();
      break;
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             clock::now() - started)
                             .count();

    TurnOutcome outcome = env.step(reply);

    TurnRecord rec;
    rec.index = index++;
    rec.role = Role::agent;
    rec.text = reply;
    rec.valid = outcome.valid;
    rec.elapsed_ms = elapsed;
    t.turns.push_back(rec);
    history.push_back({Role::agent, reply});

    add_env(outcome.reply, std::string(to_string(outcome.event)), outcome.completions);

    if (elapsed > options.turn_timeout_ms) {
      t.abort_reason = "turn timeout after " + std::to_string(elapsed) + " ms";
      break;
    }
  }

  t.metrics = score_session(t, options.recovery);
  return t;
}

}  // namespace tribelang
