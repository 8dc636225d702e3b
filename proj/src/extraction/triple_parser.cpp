// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "abridge/core/text.hpp"
#include "abridge/extraction/triples.hpp"

namespace abridge::extraction {

namespace {

bool has_reserved(std::string_view s) { return s.find_first_of("<>|") != std::string_view::npos; }

std::vector<std::string> split_fields(std::string_view payload) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto bar = payload.find('|', start);
    fields.push_back(core::trim(payload.substr(start, bar == std::string_view::npos ? bar : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return fields;
}

}  // namespace

EntityCluster EntityCluster::singleton(std::string surface, std::uint64_t frequency) {
  EntityCluster c;
  c.representative = surface;
  c.mentions.push_back(Mention{std::move(surface), frequency});
  return c;
}

bool EntityCluster::has_surface(std::string_view surface) const {
  return std::any_of(mentions.begin(), mentions.end(), [&](const Mention& m) { return m.surface == surface; });
}

std::string EntityCluster::display() const {
  if (mentions.size() == 1) return mentions.front().surface;
  std::string out = "[";
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    if (i > 0) out += ", ";
    out += mentions[i].surface;
  }
  return out + "]";
}

void to_json(nlohmann::json& j, const Mention& m) {
  j = nlohmann::json{{"surface", m.surface}, {"frequency", m.frequency}};
}

void from_json(const nlohmann::json& j, Mention& m) {
  j.at("surface").get_to(m.surface);
  j.at("frequency").get_to(m.frequency);
}

void to_json(nlohmann::json& j, const EntityCluster& c) {
  j = nlohmann::json{{"representative", c.representative}, {"mentions", c.mentions}};
}

void from_json(const nlohmann::json& j, EntityCluster& c) {
  j.at("representative").get_to(c.representative);
  j.at("mentions").get_to(c.mentions);
}

void to_json(nlohmann::json& j, const Triple& t) {
  j = nlohmann::json{
      {"subject", t.subject}, {"relation", t.relation}, {"object", t.object}, {"source_line", t.source_line}};
}

void from_json(const nlohmann::json& j, Triple& t) {
  j.at("subject").get_to(t.subject);
  j.at("relation").get_to(t.relation);
  j.at("object").get_to(t.object);
  j.at("source_line").get_to(t.source_line);
}

LineParse parse_triple_line(std::string_view raw) {
  const auto line = core::trim(raw);
  LineParse out;
  if (line.empty()) return out;

  if (line.rfind("* ", 0) != 0) {
    if (has_reserved(line)) out.rejection = "line does not start with '* <'";
    return out;
  }
  const auto rest = core::trim(std::string_view(line).substr(2));
  if (rest.empty() || rest.front() != '<') {
    out.rejection = "line does not start with '* <'";
    return out;
  }
  const auto close = rest.find('>');
  if (close == std::string::npos) {
    out.rejection = "missing closing '>'";
    return out;
  }
  const auto payload = std::string_view(rest).substr(1, close - 1);
  const auto trailing = std::string_view(rest).substr(close + 1);
  if (payload.find('<') != std::string_view::npos) {
    out.rejection = "angle bracket inside triple";
    return out;
  }
  if (has_reserved(trailing)) {
    out.rejection = "unexpected '<', '>' or '|' after the triple";
    return out;
  }
  const auto fields = split_fields(payload);
  if (fields.size() != 3) {
    out.rejection = "expected 3 fields, found " + std::to_string(fields.size());
    return out;
  }
  if (std::any_of(fields.begin(), fields.end(), [](const std::string& f) { return f.empty(); })) {
    out.rejection = "empty field";
    return out;
  }
  out.fields = TripleFields{fields[0], fields[1], fields[2]};
  return out;
}

std::string format_triple_line(std::string_view subject, std::string_view relation, std::string_view object) {
  std::string out = "* <";
  out += subject;
  out += '|';
  out += relation;
  out += '|';
  out += object;
  out += '>';
  return out;
}

TripleParse parse_triple_lines(std::string_view text, std::string_view source) {
  TripleParse out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    const auto parsed = parse_triple_line(line);
    if (parsed.fields) {
      auto& f = *parsed.fields;
      out.triples.push_back(Triple{EntityCluster::singleton(f.subject), f.relation,
                                   EntityCluster::singleton(f.object), core::trim(line)});
    } else if (parsed.rejection) {
      out.warnings.push_back(core::Warning{std::string(source), core::trim(line), *parsed.rejection});
    }
    pos = nl + 1;
  }
  return out;
}

std::vector<std::string> split_group(std::string_view field) {
  const auto trimmed = core::trim(field);
  if (trimmed.size() < 2 || trimmed.front() != '[' || trimmed.back() != ']') return {trimmed};
  std::vector<std::string> members;
  const auto inner = std::string_view(trimmed).substr(1, trimmed.size() - 2);
  std::size_t start = 0;
  while (true) {
    const auto plus = inner.find('+', start);
    auto member = core::trim(inner.substr(start, plus == std::string_view::npos ? plus : plus - start));
    if (!member.empty()) members.push_back(std::move(member));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  if (members.empty()) return {trimmed};
  return members;
}

}  // namespace abridge::extraction
