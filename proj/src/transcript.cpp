#include "tribelang/transcript.hpp"

#include <fstream>
#include <sstream>

namespace tribelang {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* role_name(Role role) {
  return role == Role::environment ? "environment" : "agent";
}

// Copies every key of `rec` not consumed by the reader into `extra`.
void stash_extras(const ordered_json& rec, std::initializer_list<const char*> known,
                  ordered_json& extra) {
  for (auto it = rec.begin(); it != rec.end(); ++it) {
    bool is_known = false;
    for (const char* k : known)
      if (it.key() == k) {
        is_known = true;
        break;
      }
    if (!is_known) extra[it.key()] = it.value();
  }
}

void append_extras(ordered_json& rec, const ordered_json& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) rec[it.key()] = it.value();
}

[[noreturn]] void fail(size_t line_no, const std::string& what) {
  throw TranscriptError("line " + std::to_string(line_no) + ": " + what);
}

ordered_json metrics_to_json(const SessionMetrics& m) {
  ordered_json j;
  j["record"] = "metrics";
  j["tvr"] = m.tvr;
  j["fr"] = m.fr;
  j["ac"] = m.ac;
  j["ttfk"] = m.ttfk;
  j["completions"] = m.completions;
  j["total_turns"] = m.total_turns;
  j["valid_turns"] = m.valid_turns;
  j["feedback_opportunities"] = m.feedback_opportunities;
  j["feedback_recoveries"] = m.feedback_recoveries;
  j["adj_total"] = m.adj_total;
  j["adj_matches"] = m.adj_matches;
  return j;
}

SessionMetrics metrics_from_json(const ordered_json& j, size_t line_no) {
  SessionMetrics m;
  auto need = [&](const char* key) -> const ordered_json& {
    if (!j.contains(key)) fail(line_no, std::string("metrics record misses \"") + key + "\"");
    return j[key];
  };
  m.tvr = need("tvr").get<double>();
  m.fr = need("fr").get<double>();
  m.ac = need("ac").get<double>();
  m.ttfk = need("ttfk").get<int>();
  m.completions = need("completions").get<int>();
  m.total_turns = need("total_turns").get<int>();
  m.valid_turns = need("valid_turns").get<int>();
  m.feedback_opportunities = need("feedback_opportunities").get<int>();
  m.feedback_recoveries = need("feedback_recoveries").get<int>();
  m.adj_total = need("adj_total").get<int>();
  m.adj_matches = need("adj_matches").get<int>();
  return m;
}

}  // namespace

std::string transcript_to_string(const Transcript& t) {
  std::ostringstream out;
  ordered_json header;
  header["record"] = "header";
  header["language"] = t.language;
  header["agent"] = t.agent_label;
  header["t_max"] = t.t_max;
  header["target_completions"] = t.target_completions;
  header["seed"] = t.seed;
  header["recovery_mode"] = t.recovery_mode;
  if (t.prompt_variant) header["prompt_variant"] = *t.prompt_variant;
  append_extras(header, t.header_extra);
  out << header.dump() << "\n";

  for (const auto& turn : t.turns) {
    ordered_json rec;
    rec["record"] = "turn";
    rec["index"] = turn.index;
    rec["role"] = role_name(turn.role);
    rec["text"] = turn.text;
    if (turn.valid) rec["valid"] = *turn.valid;
    if (turn.event) rec["event"] = *turn.event;
    if (turn.completions) rec["completions"] = *turn.completions;
    rec["elapsed_ms"] = turn.elapsed_ms;
    append_extras(rec, turn.extra);
    out << rec.dump() << "\n";
  }

  if (t.abort_reason) {
    ordered_json rec;
    rec["record"] = "abort";
    rec["reason"] = *t.abort_reason;
    out << rec.dump() << "\n";
  }
  if (t.metrics) out << metrics_to_json(*t.metrics).dump() << "\n";
  return out.str();
}

void write_transcript_file(const Transcript& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TranscriptError("cannot open for writing: " + path);
  out << transcript_to_string(t);
  if (!out) throw TranscriptError("write failed: " + path);
}

Transcript read_transcript(std::istream& in) {
  Transcript t;
  std::string line;
  size_t line_no = 0;
  bool saw_header = false;
  bool turns_done = false;
  int expected_index = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json rec;
    try {
      rec = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(line_no, std::string("not valid JSON: ") + e.what());
    }
    if (!rec.is_object() || !rec.contains("record") || !rec["record"].is_string())
      fail(line_no, "record type missing");
    const std::string kind = rec["record"].get<std::string>();

    if (!saw_header) {
      if (kind != "header") fail(line_no, "first record must be the header");
      for (const char* key : {"language", "agent"})
        if (!rec.contains(key) || !rec[key].is_string())
          fail(line_no, std::string("header misses \"") + key + "\"");
      t.language = rec["language"].get<std::string>();
      t.agent_label = rec["agent"].get<std::string>();
      if (rec.contains("t_max")) t.t_max = rec["t_max"].get<int>();
      if (rec.contains("target_completions"))
        t.target_completions = rec["target_completions"].get<int>();
      if (rec.contains("seed")) t.seed = rec["seed"].get<uint64_t>();
      if (rec.contains("recovery_mode"))
        t.recovery_mode = rec["recovery_mode"].get<std::string>();
      if (rec.contains("prompt_variant"))
        t.prompt_variant = rec["prompt_variant"].get<std::string>();
      stash_extras(rec,
                   {"record", "language", "agent", "t_max", "target_completions",
                    "seed", "recovery_mode", "prompt_variant"},
                   t.header_extra);
      saw_header = true;
      continue;
    }

    if (kind == "turn") {
      if (turns_done) fail(line_no, "turn record after abort or metrics");
      TurnRecord turn;
      if (!rec.contains("index") || !rec["index"].is_number_integer())
        fail(line_no, "turn misses \"index\"");
      turn.index = rec["index"].get<int>();
      if (turn.index != expected_index)
        fail(line_no, "turn index " + std::to_string(turn.index) + ", expected " +
                          std::to_string(expected_index));
      ++expected_index;
      if (!rec.contains("role") || !rec["role"].is_string())
        fail(line_no, "turn misses \"role\"");
      const std::string role = rec["role"].get<std::string>();
      if (role == "environment") turn.role = Role::environment;
      else if (role == "agent") turn.role = Role::agent;
      else fail(line_no, "unknown role \"" + role + "\"");
      const Role expected_role = turn.index % 2 == 0 ? Role::environment : Role::agent;
      if (turn.role != expected_role)
        fail(line_no, "roles must alternate starting with the environment");
      if (!rec.contains("text") || !rec["text"].is_string())
        fail(line_no, "turn misses \"text\"");
      turn.text = rec["text"].get<std::string>();
      if (turn.role == Role::agent) {
        if (!rec.contains("valid") || !rec["valid"].is_boolean())
          fail(line_no, "agent turn misses \"valid\"");
        turn.valid = rec["valid"].get<bool>();
      } else {
        if (!rec.contains("event") || !rec["event"].is_string())
          fail(line_no, "environment turn misses \"event\"");
        turn.event = rec["event"].get<std::string>();
        if (rec.contains("completions"))
          turn.completions = rec["completions"].get<int>();
      }
      if (rec.contains("elapsed_ms")) turn.elapsed_ms = rec["elapsed_ms"].get<int64_t>();
      stash_extras(rec,
                   {"record", "index", "role", "text", "valid", "event",
                    "completions", "elapsed_ms"},
                   turn.extra);
      t.turns.push_back(std::move(turn));
      continue;
    }

    if (kind == "abort") {
      turns_done = true;
      if (!rec.contains("reason") || !rec["reason"].is_string())
        fail(line_no, "abort record misses \"reason\"");
      t.abort_reason = rec["reason"].get<std::string>();
      continue;
    }

    if (kind == "metrics") {
      turns_done = true;
      t.metrics = metrics_from_json(rec, line_no);
      continue;
    }

    fail(line_no, "unknown record type \"" + kind + "\"");
  }

  if (!saw_header) throw TranscriptError("empty transcript: no header record");
  return t;
}

Transcript read_transcript_string(const std::string& text) {
  std::istringstream in(text);
  return read_transcript(in);
}

Transcript read_transcript_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TranscriptError("cannot open transcript: " + path);
  return read_transcript(in);
}

}  // namespace tribelang
