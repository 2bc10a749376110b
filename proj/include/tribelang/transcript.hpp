#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tribelang/metrics.hpp"

namespace tribelang {

class TranscriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Role { environment, agent };

struct TurnRecord {
  int index = 0;
  Role role = Role::environment;
  std::string text;
  std::optional<bool> valid;          // agent turns
  std::optional<std::string> event;   // environment turns
  std::optional<int> completions;     // environment turns, running total
  int64_t elapsed_ms = 0;
  // Unknown fields from foreign writers, preserved verbatim.
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

// One session, serialized as JSON lines: a header record, alternating turn
// records starting with the tribe's opening, then optional abort and metrics
// records.
struct Transcript {
  std::string language;
  std::string agent_label;
  int t_max = 100;
  int target_completions = 3;
  uint64_t seed = 0;
  std::string recovery_mode = "distinct_retry";
  std::optional<std::string> prompt_variant;
  nlohmann::ordered_json header_extra = nlohmann::ordered_json::object();

  std::vector<TurnRecord> turns;
  std::optional<std::string> abort_reason;
  std::optional<SessionMetrics> metrics;
};

std::string transcript_to_string(const Transcript& transcript);
void write_transcript_file(const Transcript& transcript, const std::string& path);

Transcript read_transcript(std::istream& in);
Transcript read_transcript_string(const std::string& text);
Transcript read_transcript_file(const std::string& path);

}  // namespace tribelang
