// SPDX-License-Identifier: Apache-2.0
#include "abridge/llm/provider.hpp"

#include <fstream>

namespace abridge::llm {

Playbook Playbook::parse(const nlohmann::json& doc) {
  if (!doc.is_array()) throw InputError("playbook must be a JSON array");
  std::vector<PlaybookRule> rules;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& entry = doc[i];
    try {
      PlaybookRule rule;
      rule.purpose = purpose_from_string(entry.at("purpose").get<std::string>());
      if (entry.contains("match_substring") && !entry.at("match_substring").is_null()) {
        rule.match_substring = entry.at("match_substring").get<std::string>();
      }
      rule.response = entry.at("response").get<std::string>();
      rules.push_back(std::move(rule));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("playbook rule " + std::to_string(i) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw InputError("playbook rule " + std::to_string(i) + ": " + e.what());
    }
  }
  return Playbook(std::move(rules));
}

Playbook Playbook::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open playbook " + path.string());
  try {
    return parse(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("playbook " + path.string() + " is not valid JSON: " + e.what());
  }
}

const std::string& scripted_lookup(const Playbook& playbook, Purpose purpose, std::string_view last_user_message) {
  for (const auto& rule : playbook.rules()) {
    if (rule.purpose != purpose) continue;
    if (rule.match_substring && last_user_message.find(*rule.match_substring) == std::string_view::npos) continue;
    return rule.response;
  }
  throw ProtocolError("scripted playbook has no rule for purpose '" + std::string(to_string(purpose)) + "'");
}

std::string ScriptedProvider::send(const Conversation& conversation, const CompletionParams&) {
  {
    std::lock_guard lock(mutex_);
    received_.push_back(conversation);
  }
  return scripted_lookup(playbook_, conversation.purpose, conversation.last_user_message());
}

std::vector<Conversation> ScriptedProvider::received() const {
  std::lock_guard lock(mutex_);
  return received_;
}

}  // namespace abridge::llm
