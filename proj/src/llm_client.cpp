#include "tribelang/llm_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace tribelang {

namespace {

using nlohmann::json;

constexpr std::string_view kFullPrompt =
    "You are a language expert talking with a primal tribe through chat. The "
    "tribe does not understand any language apart from their own. The "
    "following are features of the language: Each word is bisyllabic, each "
    "sentence consisting of three words. Every conversation in that language "
    "involves two exchanges per person, alternatively. Every consecutive "
    "sentence in a conversation has at least one common word. All "
    "conversations are predefined and are a particular combination of 4 "
    "sentences. The tribal language does not include any punctuation or "
    "uppercase letters or numbers. Your goal is to understand and reply back "
    "to the tribe accordingly. Whenever you reply with a valid sentence in "
    "the language, the tribe starts their reply with 'koro'. When you say an "
    "invalid sentence, they reply 'moko lira bani'. Do not start your replies "
    "with 'koro'. You are supposed to have three successful conversations "
    "with the tribe. Reply back in only the tribal language, a response you "
    "deem appropriate. Do not reply with anything else. You will interact "
    "with the tribe from now on.";

constexpr std::string_view kReducedPrompt =
    "You are a language expert talking with a primal tribe through chat. The "
    "tribe does not understand any language apart from their own. The tribal "
    "language does not include any punctuation or uppercase letters or "
    "numbers. Your goal is to understand and reply back to the tribe "
    "accordingly.  You are supposed to have three successful conversation "
    "with the tribe. Reply back in only the tribal language, a response you "
    "deem appropriate. Do not reply with anything else. You interact with the "
    "tribe from now.";

json history_as_openai(const AgentEndpoint& ep, const std::vector<ChatTurn>& history) {
  json messages = json::array();
  messages.push_back({{"role", "system"}, {"content", std::string(build_prompt(ep.prompt_variant))}});
  for (const auto& turn : history)
    messages.push_back(
        {{"role", turn.role == Role::environment ? "user" : "assistant"},
         {"content", turn.text}});
  return messages;
}

[[noreturn]] void malformed(const std::string& provider) {
  throw AgentError("malformed " + provider + " response payload");
}

}  // namespace

std::string_view to_string(PromptVariant variant) {
  return variant == PromptVariant::full ? "full" : "reduced";
}

PromptVariant prompt_variant_from_string(std::string_view name) {
  if (name == "full") return PromptVariant::full;
  if (name == "reduced") return PromptVariant::reduced;
  throw EndpointError("unknown prompt variant: " + std::string(name));
}

std::string_view build_prompt(PromptVariant variant) {
  return variant == PromptVariant::full ? kFullPrompt : kReducedPrompt;
}

std::vector<AgentEndpoint> load_endpoints(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw EndpointError(std::string("endpoints document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("endpoints") || !doc["endpoints"].is_array())
    throw EndpointError("endpoints document must be an object with an \"endpoints\" array");

  std::vector<AgentEndpoint> out;
  for (size_t i = 0; i < doc["endpoints"].size(); ++i) {
    const auto& e = doc["endpoints"][i];
    auto need = [&](const char* key) -> std::string {
      if (!e.contains(key) || !e[key].is_string() || e[key].get<std::string>().empty())
        throw EndpointError("endpoint " + std::to_string(i + 1) +
                            " misses required field \"" + key + "\"");
      return e[key].get<std::string>();
    };
    AgentEndpoint ep;
    ep.label = need("label");
    ep.provider = need("provider");
    if (ep.provider != "openai" && ep.provider != "anthropic" && ep.provider != "gemini")
      throw EndpointError("endpoint \"" + ep.label + "\" has unknown provider \"" +
                          ep.provider + "\"");
    ep.base_url = need("base_url");
    ep.model = need("model");
    ep.key_env = need("key_env");
    if (e.contains("prompt_variant"))
      ep.prompt_variant = prompt_variant_from_string(e["prompt_variant"].get<std::string>());
    if (e.contains("temperature")) ep.temperature = e["temperature"].get<double>();
    if (e.contains("max_tokens")) ep.max_tokens = e["max_tokens"].get<int>();
    if (e.contains("max_attempts")) ep.max_attempts = e["max_attempts"].get<int>();
    if (e.contains("backoff_ms")) ep.backoff_ms = e["backoff_ms"].get<int>();
    if (e.contains("timeout_ms")) ep.timeout_ms = e["timeout_ms"].get<int>();
    if (ep.max_attempts < 1)
      throw EndpointError("endpoint \"" + ep.label + "\": max_attempts must be positive");
    for (const auto& prev : out)
      if (prev.label == ep.label)
        throw EndpointError("duplicate endpoint label \"" + ep.label + "\"");
    out.push_back(std::move(ep));
  }
  return out;
}

std::vector<AgentEndpoint> load_endpoints_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw EndpointError("cannot open endpoints file: " + path);
  std::string text;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, n);
  std::fclose(f);
  return load_endpoints(text);
}

const AgentEndpoint* find_endpoint(const std::vector<AgentEndpoint>& endpoints,
                                   std::string_view label) {
  for (const auto& e : endpoints)
    if (e.label == label) return &e;
  return nullptr;
}

WireRequest build_chat_request(const AgentEndpoint& ep,
                               const std::vector<ChatTurn>& history,
                               const std::string& api_key) {
  WireRequest req;
  if (ep.provider == "openai") {
    req.path = "/v1/chat/completions";
    req.headers = {{"Authorization", "Bearer " + api_key}};
    json body;
    body["model"] = ep.model;
    body["messages"] = history_as_openai(ep, history);
    body["max_tokens"] = ep.max_tokens;
    if (ep.temperature) body["temperature"] = *ep.temperature;
    req.body = body.dump();
    return req;
  }
  if (ep.provider == "anthropic") {
    req.path = "/v1/messages";
    req.headers = {{"x-api-key", api_key}, {"anthropic-version", "2023-06-01"}};
    json body;
    body["model"] = ep.model;
    body["system"] = std::string(build_prompt(ep.prompt_variant));
    json messages = json::array();
    for (const auto& turn : history)
      messages.push_back(
          {{"role", turn.role == Role::environment ? "user" : "assistant"},
           {"content", turn.text}});
    body["messages"] = messages;
    body["max_tokens"] = ep.max_tokens;
    if (ep.temperature) body["temperature"] = *ep.temperature;
    req.body = body.dump();
    return req;
  }
  if (ep.provider == "gemini") {
    req.path = "/v1beta/models/" + ep.model + ":generateContent";
    req.headers = {{"x-goog-api-key", api_key}};
    json body;
    body["system_instruction"] = {
        {"parts", json::array({{{"text", std::string(build_prompt(ep.prompt_variant))}}})}};
    json contents = json::array();
    for (const auto& turn : history)
      contents.push_back(
          {{"role", turn.role == Role::environment ? "user" : "model"},
           {"parts", json::array({{{"text", turn.text}}})}});
    body["contents"] = contents;
    json gen;
    gen["maxOutputTokens"] = ep.max_tokens;
    if (ep.temperature) gen["temperature"] = *ep.temperature;
    body["generationConfig"] = gen;
    req.body = body.dump();
    return req;
  }
  throw EndpointError("unknown provider \"" + ep.provider + "\"");
}

std::string parse_chat_response(const AgentEndpoint& ep, const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error&) {
    malformed(ep.provider);
  }
  try {
    if (ep.provider == "openai")
      return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    if (ep.provider == "anthropic")
      return doc.at("content").at(0).at("text").get<std::string>();
    if (ep.provider == "gemini")
      return doc.at("candidates")
          .at(0)
          .at("content")
          .at("parts")
          .at(0)
          .at("text")
          .get<std::string>();
  } catch (const json::exception&) {
    malformed(ep.provider);
  }
  throw EndpointError("unknown provider \"" + ep.provider + "\"");
}

bool retryable_status(int status) {
  return status == 429 || (status >= 500 && status <= 599);
}

namespace {

class RemoteAgent final : public Agent {
 public:
  explicit RemoteAgent(AgentEndpoint endpoint) : ep_(std::move(endpoint)) {}

  std::string label() const override { return ep_.label; }

  std::string respond(const std::vector<ChatTurn>& history) override {
    const char* key = std::getenv(ep_.key_env.c_str());
    if (!key || !*key)
      throw AgentError("environment variable " + ep_.key_env +
                       " is not set; cannot authenticate endpoint \"" + ep_.label + "\"");

    WireRequest req = build_chat_request(ep_, history, key);
    std::string last_error;
    for (int attempt = 1; attempt <= ep_.max_attempts; ++attempt) {
      if (attempt > 1) {
        const auto delay =
            std::chrono::milliseconds(ep_.backoff_ms) * (1LL << (attempt - 2));
        std::this_thread::sleep_for(delay);
      }
      httplib::Client client(ep_.base_url);
      client.set_connection_timeout(std::chrono::milliseconds(ep_.timeout_ms));
      client.set_read_timeout(std::chrono::milliseconds(ep_.timeout_ms));
      httplib::Headers headers(req.headers.begin(), req.headers.end());
      auto result = client.Post(req.path, headers, req.body, "application/json");
      if (!result) {
        last_error = "transport error: " + httplib::to_string(result.error());
        continue;
      }
      if (result->status == 200) return parse_chat_response(ep_, result->body);
      if (retryable_status(result->status)) {
        last_error = "status " + std::to_string(result->status);
        continue;
      }
      throw AgentError("endpoint \"" + ep_.label + "\" rejected the request with status " +
                       std::to_string(result->status));
    }
    throw AgentError("endpoint \"" + ep_.label + "\" failed after " +
                     std::to_string(ep_.max_attempts) + " attempts (" + last_error + ")");
  }

 private:
  AgentEndpoint ep_;
};

}  // namespace

std::unique_ptr<Agent> make_remote_agent(const AgentEndpoint& endpoint) {
  return std::make_unique<RemoteAgent>(endpoint);
}

}  // namespace tribelang
