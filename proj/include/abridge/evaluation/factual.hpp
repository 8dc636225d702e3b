// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "abridge/core/model.hpp"
#include "abridge/llm/gateway.hpp"

namespace abridge::evaluation {

enum class Verdict { verified, unverified, pending };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view name);

struct AtomicFact {
  std::string text;
  std::size_t sentence_index = 0;
  Verdict verdict = Verdict::pending;

  bool operator==(const AtomicFact&) const = default;
};

struct EvaluationReport {
  double compression = 0.0;
  double coverage = 0.0;
  double consistency = 0.0;
  std::vector<AtomicFact> facts;
  std::set<std::size_t> flagged_sentences;

  bool operator==(const EvaluationReport&) const = default;
};

void to_json(nlohmann::json& j, const AtomicFact& f);
void from_json(const nlohmann::json& j, AtomicFact& f);
void to_json(nlohmann::json& j, const EvaluationReport& r);
void from_json(const nlohmann::json& j, EvaluationReport& r);

struct EvaluationOptions {
  std::size_t parallelism = 4;
  /// Above this many characters the documents are verified one at a time and
  /// the verdicts OR-ed.
  std::size_t context_budget = 400'000;
};

/// Fact texts from lines starting with "* "; other lines are ignored.
std::vector<std::string> parse_fact_lines(std::string_view response);

struct Decomposition {
  std::vector<AtomicFact> facts;
  std::vector<core::Warning> warnings;
};

/// One decomposition prompt per sentence. Facts are deduplicated
/// case-insensitively across the summary; a sentence that yields nothing
/// contributes itself as a single fact.
Decomposition decompose_facts(const llm::LlmGateway& gateway, const core::Summary& summary);

/// true/false from the first word of a response, case-insensitive, punctuation ignored.
std::optional<bool> parse_verdict(std::string_view response);

struct VerdictOutcome {
  Verdict verdict = Verdict::pending;
  std::optional<core::Warning> warning;
};

/// Asks the verification prompt; an unreadable answer is retried once, then
/// counted as unverified with a warning.
VerdictOutcome verify_fact(const llm::LlmGateway& gateway, const AtomicFact& fact, const core::DocumentSet& docset,
                           const EvaluationOptions& options = {});

/// verified / total. Zero facts score 0.
double consistency_score(const std::vector<AtomicFact>& facts);

/// Sentences owning at least one unverified fact.
std::set<std::size_t> flagged_sentences(const std::vector<AtomicFact>& facts);

struct EvaluationResult {
  EvaluationReport report;
  std::vector<core::Warning> warnings;
};

/// Compression, coverage and factual consistency of `summary` against the documents.
EvaluationResult evaluate(const llm::LlmGateway& gateway, const core::DocumentSet& docset,
                          const core::Summary& summary, const EvaluationOptions& options = {});

}  // namespace abridge::evaluation
