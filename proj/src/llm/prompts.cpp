// SPDX-License-Identifier: Apache-2.0
#include "abridge/llm/prompts.hpp"

#include <algorithm>
#include <optional>

#include "abridge/core/errors.hpp"
#include "abridge/core/text.hpp"
#include "abridge/embedded_prompts.hpp"

namespace abridge::llm {

namespace {

struct Placeholder {
  std::size_t begin = 0;  // offset of "{{"
  std::size_t end = 0;    // one past "}}"
  std::string name;
  std::optional<std::string> label;
};

std::vector<Placeholder> scan_placeholders(std::string_view body) {
  std::vector<Placeholder> out;
  std::size_t pos = 0;
  while ((pos = body.find("{{", pos)) != std::string_view::npos) {
    const auto close = body.find("}}", pos + 2);
    if (close == std::string_view::npos) break;
    const auto inner = body.substr(pos + 2, close - pos - 2);
    Placeholder p;
    p.begin = pos;
    p.end = close + 2;
    if (const auto colon = inner.find(':'); colon != std::string_view::npos) {
      p.name = std::string(inner.substr(0, colon));
      p.label = std::string(inner.substr(colon + 1));
    } else {
      p.name = std::string(inner);
    }
    out.push_back(std::move(p));
    pos = close + 2;
  }
  return out;
}

std::string render_list(const std::vector<std::string>& items, const std::string& label) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += '\n';
    std::string heading = label;
    for (std::size_t at = heading.find('#'); at != std::string::npos; at = heading.find('#', at)) {
      const auto index = std::to_string(i + 1);
      heading.replace(at, 1, index);
      at += index.size();
    }
    out += heading;
    out += '\n';
    out += items[i];
  }
  return out;
}

bool is_empty_binding(const BindingValue& value) {
  if (const auto* text = std::get_if<std::string>(&value)) return text->empty();
  return std::get<std::vector<std::string>>(value).empty();
}

}  // namespace

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> names;
  for (const auto& msg : messages) {
    for (const auto& p : scan_placeholders(msg.body)) {
      if (std::find(names.begin(), names.end(), p.name) == names.end()) names.push_back(p.name);
    }
  }
  return names;
}

PromptTemplate parse_prompt_template(std::string_view name, std::string_view source) {
  PromptTemplate tmpl;
  tmpl.name = std::string(name);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    const auto nl = source.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.emplace_back(source.substr(pos));
      break;
    }
    lines.emplace_back(source.substr(pos, nl - pos));
    pos = nl + 1;
  }

  auto finish = [&](std::vector<std::string>& body) {
    while (!body.empty() && body.back().empty()) body.pop_back();
    std::string joined;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i > 0) joined += '\n';
      joined += body[i];
    }
    if (joined.empty()) throw TemplateError("template '" + tmpl.name + "' has an empty message");
    tmpl.messages.back().body = std::move(joined);
    body.clear();
  };

  std::vector<std::string> body;
  bool in_header = true;
  for (const auto& line : lines) {
    if (in_header && line.rfind("//", 0) == 0) {
      if (tmpl.header.empty()) tmpl.header = core::trim(std::string_view(line).substr(2));
      continue;
    }
    if (line.rfind("@@ ", 0) == 0) {
      if (!tmpl.messages.empty()) finish(body);
      in_header = false;
      Role role;
      try {
        role = role_from_string(core::trim(std::string_view(line).substr(3)));
      } catch (const ValidationError&) {
        throw TemplateError("template '" + tmpl.name + "' has unknown role in '" + line + "'");
      }
      tmpl.messages.push_back(MessageTemplate{role, {}});
      continue;
    }
    if (in_header) {
      if (line.empty()) continue;
      throw TemplateError("template '" + tmpl.name + "' has text before its first message marker");
    }
    body.push_back(line);
  }
  if (tmpl.messages.empty()) throw TemplateError("template '" + tmpl.name + "' has no messages");
  finish(body);
  return tmpl;
}

const PromptTemplate& prompt_template(Purpose purpose) {
  static const std::map<Purpose, PromptTemplate> templates = [] {
    std::map<Purpose, PromptTemplate> out;
    for (const auto& [name, source] : detail::kEmbeddedPrompts) {
      out.emplace(purpose_from_string(name), parse_prompt_template(name, source));
    }
    return out;
  }();
  const auto it = templates.find(purpose);
  if (it == templates.end()) {
    throw TemplateError("no prompt template for purpose '" + std::string(to_string(purpose)) + "'");
  }
  return it->second;
}

std::vector<ChatMessage> render_messages(const PromptTemplate& tmpl, const Bindings& bindings) {
  std::vector<std::string> missing;
  for (const auto& name : tmpl.placeholders()) {
    const auto it = bindings.find(name);
    if (it == bindings.end() || is_empty_binding(it->second)) missing.push_back(name);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw TemplateError("template '" + tmpl.name + "' is missing bindings: " + list);
  }

  std::vector<ChatMessage> out;
  for (const auto& msg : tmpl.messages) {
    std::string rendered;
    std::size_t cursor = 0;
    for (const auto& p : scan_placeholders(msg.body)) {
      rendered.append(msg.body, cursor, p.begin - cursor);
      const auto& value = bindings.find(p.name)->second;
      if (p.label) {
        const auto* items = std::get_if<std::vector<std::string>>(&value);
        if (items == nullptr) throw TemplateError("binding '" + p.name + "' must be a list");
        rendered += render_list(*items, *p.label);
      } else {
        const auto* text = std::get_if<std::string>(&value);
        if (text == nullptr) throw TemplateError("binding '" + p.name + "' must be text");
        rendered += *text;
      }
      cursor = p.end;
    }
    rendered.append(msg.body, cursor, std::string::npos);
    out.push_back(ChatMessage{msg.role, std::move(rendered)});
  }
  return out;
}

Conversation render_prompt(Purpose purpose, const Bindings& bindings) {
  return Conversation{purpose, render_messages(prompt_template(purpose), bindings)};
}

}  // namespace abridge::llm
