// SPDX-License-Identifier: Apache-2.0
#include "abridge/summarization/summarizer.hpp"

#include <algorithm>

#include "abridge/core/errors.hpp"
#include "abridge/core/text.hpp"
#include "abridge/llm/prompts.hpp"

namespace abridge::summarization {

DialogueState::DialogueState(std::vector<llm::ChatMessage> base, std::deque<RefinementTurn> history)
    : base_(std::move(base)), history_(std::move(history)) {
  while (history_.size() > kHistoryBound) history_.pop_front();
}

void DialogueState::record(RefinementTurn turn) {
  history_.push_back(std::move(turn));
  while (history_.size() > kHistoryBound) history_.pop_front();
}

llm::Conversation DialogueState::conversation_with(llm::ChatMessage next) const {
  llm::Conversation c{llm::Purpose::refine, base_};
  for (const auto& turn : history_) {
    c.messages.push_back(turn.request);
    c.messages.push_back(turn.response);
  }
  c.messages.push_back(std::move(next));
  return c;
}

void to_json(nlohmann::json& j, const DialogueState& d) {
  auto history = nlohmann::json::array();
  for (const auto& t : d.history()) history.push_back({{"request", t.request}, {"response", t.response}});
  j = nlohmann::json{{"base", d.base()}, {"history", std::move(history)}};
}

void from_json(const nlohmann::json& j, DialogueState& d) {
  std::deque<RefinementTurn> history;
  for (const auto& t : j.at("history")) {
    history.push_back(
        RefinementTurn{t.at("request").get<llm::ChatMessage>(), t.at("response").get<llm::ChatMessage>()});
  }
  d = DialogueState(j.at("base").get<std::vector<llm::ChatMessage>>(), std::move(history));
}

ParsedSummary parse_summary_response(std::string_view text) {
  ParsedSummary out;
  std::size_t pos = 0;
  std::optional<std::size_t> body_start;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    if (core::lowercase(core::trim(text.substr(pos, nl - pos))) == "[summary]") {
      body_start = std::min(nl + 1, text.size());
      break;
    }
    pos = nl + 1;
  }
  if (body_start) {
    out.body = core::normalize_text(text.substr(*body_start));
  } else {
    out.body = core::normalize_text(text);
    out.warning = core::Warning{"summary", "", "response has no [Summary] header; using the whole text"};
  }
  if (out.body.empty()) throw EmptySummaryError("summary response has no content");
  return out;
}

SummaryResult summarize_auto(const llm::LlmGateway& gateway, const core::DocumentSet& docset) {
  if (docset.empty()) throw PreconditionError("summarization needs at least one document");
  std::vector<std::string> articles;
  for (const auto& doc : docset.documents()) articles.push_back(doc.body);
  auto conversation = llm::render_prompt(llm::Purpose::summarize, {{"articles", articles}});
  auto reply = gateway.complete(conversation);
  auto parsed = parse_summary_response(reply.content);

  SummaryResult out;
  out.summary = core::Summary::make(0, std::move(parsed.body), core::Provenance::automatic());
  if (parsed.warning) out.warnings.push_back(*parsed.warning);
  conversation.messages.push_back(std::move(reply));
  out.dialogue = DialogueState(std::move(conversation.messages));
  return out;
}

void validate_request(const RefinementRequest& request, std::size_t triple_count) {
  std::vector<std::size_t> overlap;
  std::set_intersection(request.include.begin(), request.include.end(), request.exclude.begin(),
                        request.exclude.end(), std::back_inserter(overlap));
  if (!overlap.empty()) {
    std::string list;
    for (auto i : overlap) list += (list.empty() ? "" : ", ") + std::to_string(i);
    throw ConflictError("triples both included and excluded: " + list);
  }
  for (const auto* set : {&request.include, &request.exclude}) {
    for (auto i : *set) {
      if (i >= triple_count) {
        throw ValidationError("triple index " + std::to_string(i) + " out of range (have " +
                              std::to_string(triple_count) + ")");
      }
    }
  }
  const bool has_freeform = request.freeform && !core::trim(*request.freeform).empty();
  if (request.include.empty() && request.exclude.empty() && !has_freeform) {
    throw ValidationError("refinement request is empty");
  }
}

std::string build_constraint_request(const RefinementRequest& request,
                                     const std::vector<extraction::Triple>& triples) {
  validate_request(request, triples.size());
  auto spell = [&](std::size_t i) {
    const auto& t = triples[i];
    return t.subject.representative + "-" + t.relation + "-" + t.object.representative;
  };
  std::string lines;
  auto add_line = [&](const std::string& line) {
    if (!lines.empty()) lines += '\n';
    lines += line;
  };
  for (auto i : request.include) {
    add_line("* Ensure that the summary includes content related to the triple " + spell(i) + ".");
  }
  for (auto i : request.exclude) add_line("* Remove any content related to the triple " + spell(i) + ".");
  if (request.freeform) {
    const auto text = core::trim(*request.freeform);
    if (!text.empty()) add_line(text);
  }
  const auto rendered = llm::render_prompt(llm::Purpose::refine, {{"requests", lines}});
  return rendered.messages.front().content;
}

SummaryResult refine_summary(const llm::LlmGateway& gateway, const DialogueState& state,
                             const RefinementRequest& request, const std::vector<extraction::Triple>& triples,
                             std::uint64_t previous_version) {
  if (state.empty()) throw PreconditionError("refinement needs an automatic summary first");
  llm::ChatMessage ask{llm::Role::user, build_constraint_request(request, triples)};
  auto reply = gateway.complete(state.conversation_with(ask));
  auto parsed = parse_summary_response(reply.content);

  SummaryResult out;
  out.summary =
      core::Summary::make(previous_version + 1, std::move(parsed.body), core::Provenance::refinement(request.id));
  if (parsed.warning) out.warnings.push_back(*parsed.warning);
  out.dialogue = state;
  out.dialogue.record(RefinementTurn{std::move(ask), std::move(reply)});
  return out;
}

}  // namespace abridge::summarization
