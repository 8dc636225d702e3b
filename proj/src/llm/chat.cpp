// SPDX-License-Identifier: Apache-2.0
#include "abridge/llm/chat.hpp"

#include <array>
#include <utility>

#include "abridge/core/errors.hpp"

namespace abridge::llm {

namespace {

constexpr std::array<std::pair<Purpose, std::string_view>, 6> kPurposeNames{{
    {Purpose::summarize, "summarize"},
    {Purpose::refine, "refine"},
    {Purpose::extract_triples, "extract_triples"},
    {Purpose::cluster_entities, "cluster_entities"},
    {Purpose::decompose_facts, "decompose_facts"},
    {Purpose::verify_fact, "verify_fact"},
}};

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::system:
      return "system";
    case Role::user:
      return "user";
    case Role::assistant:
      return "assistant";
  }
  return "user";
}

std::string_view to_string(Purpose purpose) {
  for (const auto& [p, name] : kPurposeNames) {
    if (p == purpose) return name;
  }
  return "summarize";
}

Role role_from_string(std::string_view name) {
  if (name == "system") return Role::system;
  if (name == "user") return Role::user;
  if (name == "assistant") return Role::assistant;
  throw ValidationError("unknown chat role '" + std::string(name) + "'");
}

Purpose purpose_from_string(std::string_view name) {
  for (const auto& [p, n] : kPurposeNames) {
    if (n == name) return p;
  }
  throw ValidationError("unknown purpose '" + std::string(name) + "'");
}

std::string_view Conversation::last_user_message() const {
  for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
    if (it->role == Role::user) return it->content;
  }
  return {};
}

void validate(const Conversation& conversation) {
  const auto& msgs = conversation.messages;
  if (msgs.empty() || msgs.front().role != Role::system) {
    throw ValidationError("conversation must open with a system message");
  }
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    if (msgs[i].content.empty()) {
      throw ValidationError("message " + std::to_string(i) + " has empty content");
    }
    if (i == 0) continue;
    if (msgs[i].role == Role::system) {
      throw ValidationError("system message at position " + std::to_string(i));
    }
    if (msgs[i].role == Role::assistant && msgs[i - 1].role != Role::user) {
      throw ValidationError("assistant message at position " + std::to_string(i) + " does not follow a user turn");
    }
  }
  if (msgs.back().role != Role::user) throw ValidationError("conversation must end with a user message");
}

void to_json(nlohmann::json& j, const ChatMessage& m) {
  j = nlohmann::json{{"role", to_string(m.role)}, {"content", m.content}};
}

void from_json(const nlohmann::json& j, ChatMessage& m) {
  m.role = role_from_string(j.at("role").get<std::string>());
  j.at("content").get_to(m.content);
}

}  // namespace abridge::llm
