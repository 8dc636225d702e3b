// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "abridge/core/errors.hpp"
#include "abridge/llm/chat.hpp"

namespace abridge::llm {

/// Retryable transport failure (connection refused, 5xx, rate limit).
class TransientError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

/// One chat-completion backend. `send` performs a single attempt; retries are
/// the gateway's business. Implementations must be callable concurrently.
class ChatProvider {
 public:
  virtual ~ChatProvider() = default;

  /// Returns the assistant text. Throws TransientError or TimeoutError for
  /// retryable failures, ProtocolError for malformed payloads, ProviderError otherwise.
  virtual std::string send(const Conversation& conversation, const CompletionParams& params) = 0;
};

struct ProviderConfig {
  enum class Kind { http_chat_api, scripted };

  Kind kind = Kind::scripted;
  std::string endpoint;                 // http_chat_api
  std::string model = "gpt-4.1-mini";   // http_chat_api
  std::optional<std::string> api_key;   // falls back to $LLM_API_KEY
  std::filesystem::path playbook;       // scripted

  /// Parses "scripted:<playbook.json>" or "http:<url>".
  static ProviderConfig from_spec(std::string_view spec);
};

void to_json(nlohmann::json& j, const ProviderConfig& c);
void from_json(const nlohmann::json& j, ProviderConfig& c);

std::shared_ptr<ChatProvider> make_provider(const ProviderConfig& config);

/// Talks to an OpenAI-compatible `/chat/completions` endpoint over HTTP(S).
class HttpChatProvider : public ChatProvider {
 public:
  HttpChatProvider(std::string endpoint, std::string model, std::optional<std::string> api_key);

  std::string send(const Conversation& conversation, const CompletionParams& params) override;

  /// Wire request body for `conversation`.
  nlohmann::json request_body(const Conversation& conversation, const CompletionParams& params) const;

  /// Extracts the first choice's message content; throws ProtocolError otherwise.
  static std::string parse_response(std::string_view body);

 private:
  std::string base_url_;  // scheme://host[:port]
  std::string path_;
  std::string model_;
  std::optional<std::string> api_key_;
};

struct PlaybookRule {
  Purpose purpose = Purpose::summarize;
  std::optional<std::string> match_substring;
  std::string response;
};

/// Ordered canned responses keyed by purpose and an optional substring of the
/// last user message. File format: JSON array of {purpose, match_substring?, response}.
class Playbook {
 public:
  Playbook() = default;
  explicit Playbook(std::vector<PlaybookRule> rules) : rules_(std::move(rules)) {}

  static Playbook parse(const nlohmann::json& doc);
  static Playbook load(const std::filesystem::path& path);

  const std::vector<PlaybookRule>& rules() const noexcept { return rules_; }

 private:
  std::vector<PlaybookRule> rules_;
};

/// First rule (in file order) whose purpose matches and whose substring, if
/// any, occurs in `last_user_message`. Throws ProtocolError naming the purpose on a miss.
const std::string& scripted_lookup(const Playbook& playbook, Purpose purpose, std::string_view last_user_message);

/// Deterministic offline provider driven by a Playbook. Records every conversation it receives.
class ScriptedProvider : public ChatProvider {
 public:
  explicit ScriptedProvider(Playbook playbook) : playbook_(std::move(playbook)) {}

  std::string send(const Conversation& conversation, const CompletionParams& params) override;

  std::vector<Conversation> received() const;

 private:
  const Playbook playbook_;
  mutable std::mutex mutex_;
  std::vector<Conversation> received_;
};

}  // namespace abridge::llm
