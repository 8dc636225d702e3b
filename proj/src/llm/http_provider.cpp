// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>

#include <httplib.h>

#include "abridge/llm/provider.hpp"

namespace abridge::llm {

ProviderConfig ProviderConfig::from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("provider spec must look like scripted:<playbook> or http:<url>");
  }
  const auto kind = spec.substr(0, colon);
  const auto value = std::string(spec.substr(colon + 1));
  if (value.empty()) throw InputError("provider spec '" + std::string(spec) + "' has no target");
  ProviderConfig config;
  if (kind == "scripted") {
    config.kind = Kind::scripted;
    config.playbook = value;
  } else if (kind == "http") {
    config.kind = Kind::http_chat_api;
    config.endpoint = value;
  } else {
    throw InputError("unknown provider kind '" + std::string(kind) + "'");
  }
  return config;
}

void to_json(nlohmann::json& j, const ProviderConfig& c) {
  if (c.kind == ProviderConfig::Kind::scripted) {
    j = nlohmann::json{{"kind", "scripted"}, {"playbook", c.playbook.string()}};
  } else {
    j = nlohmann::json{{"kind", "http_chat_api"}, {"endpoint", c.endpoint}, {"model", c.model}};
  }
}

void from_json(const nlohmann::json& j, ProviderConfig& c) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "scripted") {
    c.kind = ProviderConfig::Kind::scripted;
    c.playbook = j.at("playbook").get<std::string>();
  } else if (kind == "http_chat_api") {
    c.kind = ProviderConfig::Kind::http_chat_api;
    c.endpoint = j.at("endpoint").get<std::string>();
    if (j.contains("model")) c.model = j.at("model").get<std::string>();
    if (j.contains("api_key")) c.api_key = j.at("api_key").get<std::string>();
  } else {
    throw InputError("unknown provider kind '" + kind + "'");
  }
}

std::shared_ptr<ChatProvider> make_provider(const ProviderConfig& config) {
  if (config.kind == ProviderConfig::Kind::scripted) {
    return std::make_shared<ScriptedProvider>(Playbook::load(config.playbook));
  }
  auto key = config.api_key;
  if (!key) {
    if (const char* env = std::getenv("LLM_API_KEY"); env != nullptr && *env != '\0') key = env;
  }
  return std::make_shared<HttpChatProvider>(config.endpoint, config.model, std::move(key));
}

HttpChatProvider::HttpChatProvider(std::string endpoint, std::string model, std::optional<std::string> api_key)
    : model_(std::move(model)), api_key_(std::move(api_key)) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) throw InputError("endpoint '" + endpoint + "' has no scheme");
  const auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    base_url_ = endpoint;
    path_ = "/v1/chat/completions";
  } else {
    base_url_ = endpoint.substr(0, path_start);
    path_ = endpoint.substr(path_start);
  }
}

nlohmann::json HttpChatProvider::request_body(const Conversation& conversation, const CompletionParams& params) const {
  return nlohmann::json{{"model", model_},
                        {"messages", conversation.messages},
                        {"temperature", params.temperature},
                        {"max_tokens", params.max_output_tokens}};
}

std::string HttpChatProvider::parse_response(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProtocolError(std::string("provider returned invalid JSON: ") + e.what());
  }
  const auto* choices = doc.is_object() && doc.contains("choices") ? &doc["choices"] : nullptr;
  if (choices == nullptr || !choices->is_array() || choices->empty()) {
    throw ProtocolError("provider response has no choices");
  }
  const auto& first = (*choices)[0];
  if (!first.is_object() || !first.contains("message") || !first["message"].is_object() ||
      !first["message"].contains("content") || !first["message"]["content"].is_string()) {
    throw ProtocolError("provider response has no message content");
  }
  return first["message"]["content"].get<std::string>();
}

std::string HttpChatProvider::send(const Conversation& conversation, const CompletionParams& params) {
  httplib::Client client(base_url_);
  if (!client.is_valid()) throw ProviderError("cannot create HTTP client for " + base_url_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(params.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(params.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers headers;
  if (api_key_) headers.emplace("Authorization", "Bearer " + *api_key_);

  const auto body = request_body(conversation, params).dump();
  auto result = client.Post(path_, headers, body, "application/json");
  if (!result) {
    const auto err = result.error();
    const auto what = httplib::to_string(err);
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
      throw TimeoutError("request to " + base_url_ + path_ + " timed out: " + what);
    }
    throw TransientError("request to " + base_url_ + path_ + " failed: " + what);
  }
  const int status = result->status;
  if (status == 429 || status >= 500) {
    throw TransientError("provider returned HTTP " + std::to_string(status));
  }
  if (status < 200 || status >= 300) {
    throw ProviderError("provider returned HTTP " + std::to_string(status) + ": " + result->body);
  }
  return parse_response(result->body);
}

}  // namespace abridge::llm
