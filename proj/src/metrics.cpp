#include "tribelang/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "tribelang/language.hpp"
#include "tribelang/transcript.hpp"

namespace tribelang {

namespace {

// Sentence content carried by an environment message: the opening itself,
// or everything after the positive feedback token. The confusion phrase
// carries none.
std::vector<std::string> content_tokens(const TurnRecord& env_turn) {
  if (!env_turn.event) return {};
  const std::string& event = *env_turn.event;
  auto tokens = normalize_utterance(env_turn.text).tokens;
  if (event == "opening") return tokens;
  if (event == "feedback_positive" || event == "completion" ||
      event == "session_end") {
    // session_end records still carry the branch reply; drop the leading
    // feedback token when present
    if (tokens.size() > 1) return {tokens.begin() + 1, tokens.end()};
  }
  return {};
}

bool shares_word(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  for (const auto& wa : a)
    for (const auto& wb : b)
      if (wa == wb) return true;
  return false;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

MetricStats stats_of(const std::vector<double>& xs) {
  MetricStats s;
  s.mean = mean_of(xs);
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

std::string_view to_string(RecoveryMode mode) {
  return mode == RecoveryMode::distinct_retry ? "distinct_retry" : "valid_retry";
}

RecoveryMode recovery_mode_from_string(std::string_view name) {
  if (name == "distinct_retry") return RecoveryMode::distinct_retry;
  if (name == "valid_retry") return RecoveryMode::valid_retry;
  throw std::invalid_argument("unknown recovery mode: " + std::string(name));
}

SessionMetrics score_session(const Transcript& t, RecoveryMode mode) {
  SessionMetrics m;
  const TurnRecord* prev_env = nullptr;
  const TurnRecord* rejected_agent = nullptr;  // agent turn the tribe rejected
  const TurnRecord* last_agent = nullptr;
  int agent_ordinal = 0;
  bool any_completion_field = false;

  for (const auto& turn : t.turns) {
    if (turn.role == Role::environment) {
      if (turn.completions) {
        any_completion_field = true;
        if (*turn.completions > m.completions) m.completions = *turn.completions;
      }
      if (!any_completion_field && turn.event && *turn.event == "completion")
        ++m.completions;
      if (turn.event && (*turn.event == "feedback_negative"))
        rejected_agent = last_agent;
      else if (turn.event && *turn.event != "session_end")
        rejected_agent = nullptr;
      prev_env = &turn;
      continue;
    }

    ++agent_ordinal;
    ++m.total_turns;
    const bool valid = turn.valid.value_or(false);
    if (valid) {
      ++m.valid_turns;
      if (m.ttfk < 0) m.ttfk = agent_ordinal;
    }

    if (rejected_agent) {
      ++m.feedback_opportunities;
      const bool recovered = mode == RecoveryMode::distinct_retry
                                 ? turn.text != rejected_agent->text
                                 : valid;
      if (recovered) ++m.feedback_recoveries;
      rejected_agent = nullptr;
    }

    if (valid && prev_env) {
      auto context = content_tokens(*prev_env);
      if (!context.empty()) {
        ++m.adj_total;
        if (shares_word(context, normalize_utterance(turn.text).tokens))
          ++m.adj_matches;
      }
    }
    last_agent = &turn;
  }

  m.tvr = m.total_turns ? static_cast<double>(m.valid_turns) / m.total_turns : 0.0;
  m.fr = m.feedback_opportunities
             ? static_cast<double>(m.feedback_recoveries) / m.feedback_opportunities
             : 0.0;
  m.ac = m.adj_total ? static_cast<double>(m.adj_matches) / m.adj_total : 0.0;
  return m;
}

AggregateReport aggregate(const std::vector<SessionMetrics>& sessions,
                          std::string label) {
  AggregateReport r;
  r.label = std::move(label);
  r.sessions = static_cast<int>(sessions.size());
  std::vector<double> tvr, fr, ac, completions, ttfk;
  for (const auto& s : sessions) {
    tvr.push_back(s.tvr);
    fr.push_back(s.fr);
    ac.push_back(s.ac);
    completions.push_back(static_cast<double>(s.completions));
    if (s.ttfk >= 0) ttfk.push_back(static_cast<double>(s.ttfk));
  }
  r.tvr = stats_of(tvr);
  r.fr = stats_of(fr);
  r.ac = stats_of(ac);
  r.completions = stats_of(completions);
  r.ttfk = stats_of(ttfk);
  r.ttfk_sessions = static_cast<int>(ttfk.size());
  return r;
}

}  // namespace tribelang
