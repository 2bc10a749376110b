#pragma once

#include <string>
#include <vector>

namespace tribelang {

struct Transcript;

// How a feedback recovery is recognized on the turn after a rejection:
// distinct_retry counts any changed message, valid_retry only a valid one.
enum class RecoveryMode { distinct_retry, valid_retry };

std::string_view to_string(RecoveryMode mode);
RecoveryMode recovery_mode_from_string(std::string_view name);

struct SessionMetrics {
  int total_turns = 0;
  int valid_turns = 0;
  int feedback_opportunities = 0;
  int feedback_recoveries = 0;
  int adj_total = 0;
  int adj_matches = 0;
  int completions = 0;
  // 1-based index of the first valid agent turn, -1 if none.
  int ttfk = -1;
  double tvr = 0.0;
  double fr = 0.0;
  double ac = 0.0;
};

// Computes all metrics from a transcript alone; no language definition is
// consulted, so foreign transcripts score identically to live sessions.
SessionMetrics score_session(const Transcript& transcript,
                             RecoveryMode mode = RecoveryMode::distinct_retry);

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for fewer than 2 values
};

struct AggregateReport {
  std::string label;
  int sessions = 0;
  MetricStats tvr, fr, ac, completions;
  // Restricted to sessions that produced a first valid turn.
  MetricStats ttfk;
  int ttfk_sessions = 0;
};

AggregateReport aggregate(const std::vector<SessionMetrics>& sessions,
                          std::string label = "");

}  // namespace tribelang
