#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tribelang/agents.hpp"
#include "tribelang/bundled.hpp"
#include "tribelang/generator.hpp"
#include "tribelang/language.hpp"
#include "tribelang/llm_client.hpp"
#include "tribelang/metrics.hpp"
#include "tribelang/report.hpp"
#include "tribelang/service.hpp"
#include "tribelang/session.hpp"
#include "tribelang/transcript.hpp"

namespace {

using namespace tribelang;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kAgentFailure = 3;

struct GenArgs {
  GenParams params;
  std::string name;
  std::string disjoint_from;
  std::string out;
  bool allow_repeats = false;
};

struct RunArgs {
  std::string language = "tinkatongue";
  std::string agent;
  std::string endpoints_file;
  int trials = 1;
  EnvConfig env;
  std::string recovery = "distinct_retry";
  int64_t turn_timeout_ms = 60000;
  std::string out_dir;
  std::string format = "text";
};

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string recovery = "distinct_retry";
  std::string format = "text";
};

struct PlayArgs {
  std::string language = "tinkatongue";
  EnvConfig env;
  std::string recovery = "distinct_retry";
  std::string out;
};

struct ServeArgs {
  std::string bind = "127.0.0.1";
  int port = 8077;
  std::string language = "tinkatongue";
  EnvConfig defaults;
  std::string transcript_dir;
};

void print_language_summary(const LanguageSpec& spec) {
  std::cout << spec.name() << ": " << spec.conversations().size() << " conversations, "
            << spec.sentences_per_conversation() << " sentences each, "
            << spec.words_per_sentence() << " words per sentence, lexicon "
            << spec.lexicon().size() << " words\n";
}

int cmd_lang_gen(const GenArgs& args) {
  GenParams params = args.params;
  params.enforce_unique_sentences = !args.allow_repeats;
  try {
    if (!args.disjoint_from.empty())
      params.forbidden_words = resolve_language(args.disjoint_from).lexicon();
    LanguageSpec spec = gen_language(params, FeedbackTokens{}, args.name);
    const std::string path = args.out.empty() ? spec.name() + ".json" : args.out;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return kFailure;
    }
    out << serialize_language(spec);
    std::cout << "wrote " << path << "\n";
    print_language_summary(spec);
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  }
}

int cmd_lang_check(const std::string& language) {
  LanguageSpec spec = [&] { return resolve_language(language); }();
  print_language_summary(spec);
  if (spec.diagnostics().empty()) {
    std::cout << "constraints satisfied\n";
    return kOk;
  }
  for (const auto& d : spec.diagnostics()) {
    std::cout << "violation (" << d.constraint << ")";
    if (!d.location.empty()) std::cout << " at " << d.location;
    if (!d.detail.empty()) std::cout << ": " << d.detail;
    std::cout << "\n";
  }
  std::cout << spec.diagnostics().size() << " constraint violation"
            << (spec.diagnostics().size() == 1 ? "" : "s") << "\n";
  return kFailure;
}

int cmd_lang_diff(const std::string& first, const std::string& second) {
  LanguageSpec a = resolve_language(first);
  LanguageSpec b = resolve_language(second);
  std::vector<std::string> shared = lexical_overlap(a, b);
  std::cout << "overlap: " << shared.size() << " word" << (shared.size() == 1 ? "" : "s");
  if (!shared.empty()) {
    std::cout << ":";
    for (const auto& w : shared) std::cout << " " << w;
  }
  std::cout << "\n";
  return kOk;
}

// Builds a fresh agent for one trial. Scripted agents draw from the trial
// seed so repeated trials differ the same way repeated sessions do.
std::unique_ptr<Agent> build_agent(const RunArgs& args, const LanguageSpec& spec,
                                   uint64_t trial_seed,
                                   std::optional<AgentEndpoint>& endpoint_out) {
  if (args.agent == "oracle") return make_oracle_agent(spec);
  if (args.agent == "human") return make_human_agent(std::cin, std::cout);
  try {
    ScriptedKind kind = scripted_kind_from_string(args.agent);
    return make_scripted_agent(kind, spec, trial_seed);
  } catch (const std::invalid_argument&) {
    // Not a scripted kind; fall through to the endpoint roster.
  }
  if (args.endpoints_file.empty())
    throw EndpointError("unknown agent \"" + args.agent +
                        "\" (scripted kinds: oracle, random-valid, random-invalid, "
                        "babbler, imitator, human; remote labels need --endpoints)");
  auto endpoints = load_endpoints_file(args.endpoints_file);
  const AgentEndpoint* ep = find_endpoint(endpoints, args.agent);
  if (!ep) {
    std::string known;
    for (const auto& e : endpoints) known += " " + e.label;
    throw EndpointError("no endpoint labeled \"" + args.agent + "\" in " +
                        args.endpoints_file + " (labels:" + known + ")");
  }
  endpoint_out = *ep;
  return make_remote_agent(*ep);
}

int cmd_run(const RunArgs& args) {
  std::optional<LanguageSpec> language;
  try {
    language.emplace(resolve_language(args.language));
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  }
  const LanguageSpec& spec = *language;

  RunOptions options;
  options.recovery = recovery_mode_from_string(args.recovery);
  options.turn_timeout_ms = args.turn_timeout_ms;

  std::vector<SessionMetrics> rows;
  std::string label = args.agent;
  int finished = 0;
  for (int k = 0; k < args.trials; ++k) {
    options.env = args.env;
    options.env.seed = args.env.seed + uint64_t(k);

    std::unique_ptr<Agent> agent;
    std::optional<AgentEndpoint> endpoint;
    try {
      agent = build_agent(args, spec, options.env.seed, endpoint);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return kFailure;
    }
    options.prompt_variant =
        endpoint ? std::optional<std::string>(std::string(to_string(endpoint->prompt_variant)))
                 : std::nullopt;

    Transcript t = run_session(*agent, spec, options);
    label = t.agent_label;
    if (!args.out_dir.empty()) {
      std::error_code ec;
      fs::create_directories(args.out_dir, ec);
      const std::string path = args.out_dir + "/" + t.agent_label + "-trial-" +
                               std::to_string(k + 1) + ".jsonl";
      try {
        write_transcript_file(t, path);
      } catch (const std::exception& e) {
        std::cerr << "cannot write " << path << ": " << e.what() << "\n";
        return kFailure;
      }
    }
    if (t.abort_reason) {
      std::cerr << "trial " << k + 1 << " aborted: " << *t.abort_reason << "\n";
    } else {
      ++finished;
    }
    rows.push_back(*t.metrics);
  }

  std::cout << (args.format == "csv" ? trial_table_csv(label, rows)
                                     : trial_table_text(label, rows));
  return finished == 0 ? kAgentFailure : kOk;
}

int cmd_report(const ReportArgs& args) {
  RecoveryMode mode = recovery_mode_from_string(args.recovery);
  std::map<std::string, std::vector<SessionMetrics>> groups;
  int readable = 0;
  for (const auto& path : args.inputs) {
    try {
      Transcript t = read_transcript_file(path);
      groups[t.agent_label].push_back(score_session(t, mode));
      ++readable;
    } catch (const std::exception& e) {
      std::cerr << "skipping " << path << ": " << e.what() << "\n";
    }
  }
  if (readable == 0) {
    std::cerr << "no readable transcripts\n";
    return kFailure;
  }

  const bool csv = args.format == "csv";
  bool first = true;
  for (const auto& [label, rows] : groups) {
    if (!first) std::cout << "\n";
    first = false;
    std::cout << (csv ? trial_table_csv(label, rows) : trial_table_text(label, rows));
  }
  if (groups.size() > 1) {
    std::vector<AggregateReport> summary;
    for (const auto& [label, rows] : groups) summary.push_back(aggregate(rows, label));
    std::cout << "\n" << (csv ? aggregate_table_csv(summary) : aggregate_table_text(summary));
  }
  return kOk;
}

int cmd_play(const PlayArgs& args) {
  std::optional<LanguageSpec> language;
  try {
    language.emplace(resolve_language(args.language));
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  }
  const LanguageSpec& spec = *language;

  std::cout << "language " << spec.name() << ", seed " << args.env.seed << ", "
            << args.env.target_completions
            << (args.env.target_completions == 1 ? " conversation" : " conversations")
            << " to finish, up to " << args.env.t_max << " turns. Ctrl-D quits.\n";

  auto agent = make_human_agent(std::cin, std::cout);
  RunOptions options;
  options.env = args.env;
  options.recovery = recovery_mode_from_string(args.recovery);
  options.turn_timeout_ms = 86400000;  // interactive: no practical limit

  Transcript t = run_session(*agent, spec, options);
  if (t.abort_reason) std::cout << "session aborted: " << *t.abort_reason << "\n";
  std::cout << "\n" << trial_table_text("human", {*t.metrics});
  if (!args.out.empty()) {
    try {
      write_transcript_file(t, args.out);
      std::cout << "wrote " << args.out << "\n";
    } catch (const std::exception& e) {
      std::cerr << "cannot write " << args.out << ": " << e.what() << "\n";
      return kFailure;
    }
  }
  return kOk;
}

int cmd_serve(const ServeArgs& args) {
  ServiceConfig config;
  config.default_language = args.language;
  config.defaults = args.defaults;
  if (!args.transcript_dir.empty()) {
    std::error_code ec;
    fs::create_directories(args.transcript_dir, ec);
    config.transcript_dir = args.transcript_dir;
  }
  try {
    resolve_language(config.default_language);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  }

  SessionService service(config);
  ServiceServer server(service);
  const int port = server.start(args.bind, args.port);
  if (port == 0) {
    std::cerr << "cannot bind " << args.bind << ":" << args.port << "\n";
    return kFailure;
  }
  std::cout << "serving " << config.default_language << " on http://" << args.bind << ":"
            << port << "\n"
            << "  POST /sessions\n"
            << "  POST /sessions/<id>/message\n"
            << "  GET  /sessions/<id>/transcript\n"
            << "  GET  /sessions/<id>/metrics\n";
  server.wait();
  return kOk;
}

void add_env_options(CLI::App* cmd, EnvConfig& env) {
  cmd->add_option("--seed", env.seed, "base session seed");
  cmd->add_option("--t-max", env.t_max, "agent turn limit")->check(CLI::PositiveNumber);
  cmd->add_option("--target-completions", env.target_completions,
                  "conversations to finish")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructed-language acquisition environment"};
  app.require_subcommand(1);

  GenArgs gen_args;
  std::string check_language;
  std::string diff_first, diff_second;
  RunArgs run_args;
  ReportArgs report_args;
  PlayArgs play_args;
  ServeArgs serve_args;

  CLI::App* lang = app.add_subcommand("lang", "language dataset tools");
  lang->require_subcommand(1);

  CLI::App* gen = lang->add_subcommand("gen", "generate a language file");
  gen->add_option("--seed", gen_args.params.seed, "generator seed");
  gen->add_option("--name", gen_args.name, "language name (default gen-<seed>)");
  gen->add_option("--conversations", gen_args.params.conversation_count,
                  "conversation count")
      ->check(CLI::PositiveNumber);
  gen->add_option("--sentences", gen_args.params.sentences_per_conversation,
                  "sentences per conversation (even)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--words", gen_args.params.words_per_sentence, "words per sentence")
      ->check(CLI::PositiveNumber);
  gen->add_option("--min-shared", gen_args.params.min_shared_words,
                  "minimum shared words between consecutive sentences");
  gen->add_option("--lexicon-size", gen_args.params.lexicon_size, "lexicon size")
      ->check(CLI::PositiveNumber);
  gen->add_option("--max-backtracks", gen_args.params.max_backtracks,
                  "construction retry budget");
  gen->add_flag("--allow-repeats", gen_args.allow_repeats, "permit duplicate sentences");
  gen->add_option("--disjoint-from", gen_args.disjoint_from,
                  "language whose lexicon to exclude");
  gen->add_option("--out", gen_args.out, "output path (default <name>.json)");

  CLI::App* check = lang->add_subcommand("check", "validate a language file");
  check->add_option("language", check_language, "bundled name or path")->required();

  CLI::App* diff = lang->add_subcommand("diff", "lexical overlap of two languages");
  diff->add_option("first", diff_first)->required();
  diff->add_option("second", diff_second)->required();

  CLI::App* run = app.add_subcommand("run", "run scored sessions");
  run->add_option("--language", run_args.language, "bundled name or path");
  run->add_option("--agent", run_args.agent,
                  "oracle, random-valid, random-invalid, babbler, imitator, human, "
                  "or an endpoint label")
      ->required();
  run->add_option("--endpoints", run_args.endpoints_file,
                  "endpoint roster for remote agents");
  run->add_option("--trials", run_args.trials, "session count; seeds are seed, seed+1, ...")
      ->check(CLI::PositiveNumber);
  add_env_options(run, run_args.env);
  run->add_option("--recovery-mode", run_args.recovery)
      ->check(CLI::IsMember({"distinct_retry", "valid_retry"}));
  run->add_option("--turn-timeout-ms", run_args.turn_timeout_ms, "per-turn budget")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", run_args.out_dir, "directory for per-trial transcripts");
  run->add_option("--format", run_args.format)->check(CLI::IsMember({"text", "csv"}));

  CLI::App* report = app.add_subcommand("report", "score stored transcripts");
  report->add_option("transcripts", report_args.inputs, "transcript files")->required();
  report->add_option("--recovery-mode", report_args.recovery)
      ->check(CLI::IsMember({"distinct_retry", "valid_retry"}));
  report->add_option("--format", report_args.format)
      ->check(CLI::IsMember({"text", "csv"}));

  CLI::App* play = app.add_subcommand("play", "interactive session");
  play->add_option("--language", play_args.language, "bundled name or path");
  add_env_options(play, play_args.env);
  play->add_option("--recovery-mode", play_args.recovery)
      ->check(CLI::IsMember({"distinct_retry", "valid_retry"}));
  play->add_option("--out", play_args.out, "transcript file");

  CLI::App* serve = app.add_subcommand("serve", "HTTP session service");
  serve->add_option("--bind", serve_args.bind, "bind address");
  serve->add_option("--port", serve_args.port, "port, 0 picks a free one")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--language", serve_args.language, "default language");
  add_env_options(serve, serve_args.defaults);
  serve->add_option("--transcript-dir", serve_args.transcript_dir,
                    "persist finished sessions here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_lang_gen(gen_args);
    if (check->parsed()) return cmd_lang_check(check_language);
    if (diff->parsed()) return cmd_lang_diff(diff_first, diff_second);
    if (run->parsed()) return cmd_run(run_args);
    if (report->parsed()) return cmd_report(report_args);
    if (play->parsed()) return cmd_play(play_args);
    if (serve->parsed()) return cmd_serve(serve_args);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
