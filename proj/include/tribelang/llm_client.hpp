#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tribelang/agents.hpp"

namespace tribelang {

class EndpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The full variant spells out the language rules; the reduced variant
// withholds the syntactic specifics.
enum class PromptVariant { full, reduced };

std::string_view to_string(PromptVariant variant);
PromptVariant prompt_variant_from_string(std::string_view name);

// System prompt handed to remote models, byte for byte.
std::string_view build_prompt(PromptVariant variant);

struct AgentEndpoint {
  std::string label;
  std::string provider = "openai";  // openai | anthropic | gemini
  std::string base_url;
  std::string model;
  // Name of the environment variable holding the API key. The key itself is
  // never stored, logged, or serialized.
  std::string key_env;
  PromptVariant prompt_variant = PromptVariant::full;
  std::optional<double> temperature;
  int max_tokens = 256;
  int max_attempts = 3;
  int backoff_ms = 500;
  int timeout_ms = 60000;
};

std::vector<AgentEndpoint> load_endpoints(std::string_view document);
std::vector<AgentEndpoint> load_endpoints_file(const std::string& path);
const AgentEndpoint* find_endpoint(const std::vector<AgentEndpoint>& endpoints,
                                   std::string_view label);

struct WireRequest {
  std::string path;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
};

// The exact HTTP request a remote agent sends for a given history; exposed
// so the mapping can be tested without a network.
WireRequest build_chat_request(const AgentEndpoint& endpoint,
                               const std::vector<ChatTurn>& history,
                               const std::string& api_key);

// Extracts the assistant text from a provider response body. Throws
// AgentError on malformed payloads.
std::string parse_chat_response(const AgentEndpoint& endpoint, const std::string& body);

// True for statuses worth retrying (rate limits and server errors).
bool retryable_status(int status);

std::unique_ptr<Agent> make_remote_agent(const AgentEndpoint& endpoint);

}  // namespace tribelang
