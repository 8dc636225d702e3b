// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abridge/llm/chat.hpp"

namespace abridge::llm {

/// A placeholder value: plain text, or a list rendered as labelled blocks.
using BindingValue = std::variant<std::string, std::vector<std::string>>;
using Bindings = std::map<std::string, BindingValue, std::less<>>;

struct MessageTemplate {
  Role role = Role::user;
  std::string body;
};

/// Parsed form of a prompts/*.prompt file.
///
/// File grammar: optional leading `//` comment lines (the first one names the
/// template version), then blocks introduced by `@@ system|user|assistant`.
/// Placeholders are `{{name}}` for text and `{{name:LABEL}}` for lists, where
/// each item becomes LABEL (with `#` replaced by the 1-based index), a newline,
/// and the item text; items are separated by a newline.
struct PromptTemplate {
  std::string name;
  std::string header;
  std::vector<MessageTemplate> messages;

  /// Placeholder names in order of first appearance.
  std::vector<std::string> placeholders() const;
};

PromptTemplate parse_prompt_template(std::string_view name, std::string_view source);

/// Template compiled into the binary for `purpose`.
const PromptTemplate& prompt_template(Purpose purpose);

/// Substitutes bindings into the template for `purpose`. Values are inserted
/// verbatim. Throws TemplateError naming every missing or empty binding.
Conversation render_prompt(Purpose purpose, const Bindings& bindings);

/// Renders an arbitrary template; used by render_prompt and by tests.
std::vector<ChatMessage> render_messages(const PromptTemplate& tmpl, const Bindings& bindings);

}  // namespace abridge::llm
