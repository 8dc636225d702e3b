// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "abridge/core/model.hpp"
#include "abridge/extraction/triples.hpp"
#include "abridge/llm/gateway.hpp"

namespace abridge::summarization {

/// Include/exclude triple indices plus optional free-form instructions.
struct RefinementRequest {
  std::uint64_t id = 0;
  std::set<std::size_t> include;
  std::set<std::size_t> exclude;
  std::optional<std::string> freeform;
};

struct RefinementTurn {
  llm::ChatMessage request;
  llm::ChatMessage response;

  bool operator==(const RefinementTurn&) const = default;
};

/// The summarize exchange plus the most recent refinement turns.
class DialogueState {
 public:
  static constexpr std::size_t kHistoryBound = 5;

  DialogueState() = default;
  explicit DialogueState(std::vector<llm::ChatMessage> base) : base_(std::move(base)) {}
  DialogueState(std::vector<llm::ChatMessage> base, std::deque<RefinementTurn> history);

  const std::vector<llm::ChatMessage>& base() const noexcept { return base_; }
  const std::deque<RefinementTurn>& history() const noexcept { return history_; }
  bool empty() const noexcept { return base_.empty(); }

  /// Appends a turn, dropping the oldest beyond kHistoryBound.
  void record(RefinementTurn turn);

  /// Base exchange, retained history, then `next`.
  llm::Conversation conversation_with(llm::ChatMessage next) const;

  bool operator==(const DialogueState&) const = default;

 private:
  std::vector<llm::ChatMessage> base_;
  std::deque<RefinementTurn> history_;
};

void to_json(nlohmann::json& j, const DialogueState& d);
void from_json(const nlohmann::json& j, DialogueState& d);

struct ParsedSummary {
  std::string body;
  std::optional<core::Warning> warning;
};

/// Text after the first line reading "[Summary]" (case-insensitive, trimmed);
/// without that header, the whole text plus a warning. Throws EmptySummaryError
/// when nothing is left.
ParsedSummary parse_summary_response(std::string_view text);

struct SummaryResult {
  core::Summary summary;
  DialogueState dialogue;
  std::vector<core::Warning> warnings;
};

/// Version-0 summary from the summarize prompt with one "[Article i]" block per document.
SummaryResult summarize_auto(const llm::LlmGateway& gateway, const core::DocumentSet& docset);

/// Throws ConflictError when include and exclude overlap, ValidationError for
/// an out-of-range index or an empty request.
void validate_request(const RefinementRequest& request, std::size_t triple_count);

/// The refinement user message. Constraint lines name representative surfaces.
std::string build_constraint_request(const RefinementRequest& request,
                                     const std::vector<extraction::Triple>& triples);

/// Sends the constraint message after the retained dialogue and returns
/// version `previous_version + 1`. Inputs are left untouched.
SummaryResult refine_summary(const llm::LlmGateway& gateway, const DialogueState& state,
                             const RefinementRequest& request, const std::vector<extraction::Triple>& triples,
                             std::uint64_t previous_version);

}  // namespace abridge::summarization
