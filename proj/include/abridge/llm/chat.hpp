// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace abridge::llm {

enum class Role { system, user, assistant };

enum class Purpose { summarize, refine, extract_triples, cluster_entities, decompose_facts, verify_fact };

std::string_view to_string(Role role);
std::string_view to_string(Purpose purpose);
Role role_from_string(std::string_view name);
Purpose purpose_from_string(std::string_view name);

struct ChatMessage {
  Role role = Role::user;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct Conversation {
  Purpose purpose = Purpose::summarize;
  std::vector<ChatMessage> messages;

  /// Content of the final user message, or empty when there is none.
  std::string_view last_user_message() const;

  bool operator==(const Conversation&) const = default;
};

/// Throws ValidationError unless the conversation opens with a system message,
/// every content is non-empty, no assistant turn follows a system or assistant
/// turn, and the final message comes from the user. Back-to-back user turns are allowed.
void validate(const Conversation& conversation);

struct CompletionParams {
  double temperature = 0.0;
  int max_output_tokens = 1024;
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 3;
};

void to_json(nlohmann::json& j, const ChatMessage& m);
void from_json(const nlohmann::json& j, ChatMessage& m);

}  // namespace abridge::llm
