#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tribelang/agents.hpp"
#include "tribelang/env.hpp"
#include "tribelang/metrics.hpp"
#include "tribelang/transcript.hpp"

namespace tribelang {

struct RunOptions {
  EnvConfig env;
  RecoveryMode recovery = RecoveryMode::distinct_retry;
  // Echoed into the transcript header for remote agents.
  std::optional<std::string> prompt_variant;
  int64_t turn_timeout_ms = 60000;
};

// Drives one full session of agent vs tribe and returns the finished
// transcript, metrics attached. Agent failures abort the session; the
// transcript then carries an abort record and the metrics of the turns that
// did happen.
Transcript run_session(Agent& agent, const LanguageSpec& spec, const RunOptions& options);

}  // namespace tribelang
