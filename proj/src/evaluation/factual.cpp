// SPDX-License-Identifier: Apache-2.0
#include "abridge/evaluation/factual.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "abridge/core/errors.hpp"
#include "abridge/core/text.hpp"
#include "abridge/evaluation/metrics.hpp"
#include "abridge/llm/prompts.hpp"

namespace abridge::evaluation {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::verified:
      return "verified";
    case Verdict::unverified:
      return "unverified";
    case Verdict::pending:
      return "pending";
  }
  return "pending";
}

Verdict verdict_from_string(std::string_view name) {
  if (name == "verified") return Verdict::verified;
  if (name == "unverified") return Verdict::unverified;
  if (name == "pending") return Verdict::pending;
  throw InputError("unknown verdict '" + std::string(name) + "'");
}

void to_json(nlohmann::json& j, const AtomicFact& f) {
  j = nlohmann::json{{"text", f.text}, {"sentence_index", f.sentence_index}, {"verdict", to_string(f.verdict)}};
}

void from_json(const nlohmann::json& j, AtomicFact& f) {
  j.at("text").get_to(f.text);
  j.at("sentence_index").get_to(f.sentence_index);
  f.verdict = verdict_from_string(j.at("verdict").get<std::string>());
}

void to_json(nlohmann::json& j, const EvaluationReport& r) {
  j = nlohmann::json{{"compression", r.compression},
                     {"coverage", r.coverage},
                     {"consistency", r.consistency},
                     {"facts", r.facts},
                     {"flagged_sentences", r.flagged_sentences}};
}

void from_json(const nlohmann::json& j, EvaluationReport& r) {
  j.at("compression").get_to(r.compression);
  j.at("coverage").get_to(r.coverage);
  j.at("consistency").get_to(r.consistency);
  j.at("facts").get_to(r.facts);
  j.at("flagged_sentences").get_to(r.flagged_sentences);
}

std::vector<std::string> parse_fact_lines(std::string_view response) {
  std::vector<std::string> facts;
  std::size_t pos = 0;
  while (pos <= response.size()) {
    auto nl = response.find('\n', pos);
    if (nl == std::string_view::npos) nl = response.size();
    const auto line = core::trim(response.substr(pos, nl - pos));
    if (line.rfind("* ", 0) == 0) {
      auto fact = core::trim(std::string_view(line).substr(2));
      if (!fact.empty()) facts.push_back(std::move(fact));
    }
    pos = nl + 1;
  }
  return facts;
}

Decomposition decompose_facts(const llm::LlmGateway& gateway, const core::Summary& summary) {
  Decomposition out;
  std::set<std::string> seen;
  for (const auto& sentence : summary.sentences) {
    const auto conversation = llm::render_prompt(llm::Purpose::decompose_facts, {{"sentence", sentence.text}});
    auto texts = parse_fact_lines(gateway.complete(conversation).content);
    if (texts.empty()) {
      out.warnings.push_back(core::Warning{"decompose_facts", sentence.text,
                                           "no facts returned; using the whole sentence as one fact"});
      texts.push_back(sentence.text);
    }
    for (auto& text : texts) {
      if (!seen.insert(core::lowercase(text)).second) continue;
      out.facts.push_back(AtomicFact{std::move(text), sentence.index, Verdict::pending});
    }
  }
  return out;
}

std::optional<bool> parse_verdict(std::string_view response) {
  const auto tokens = tokenize(response);
  if (tokens.empty()) return std::nullopt;
  if (tokens.front().surface == "true") return true;
  if (tokens.front().surface == "false") return false;
  return std::nullopt;
}

namespace {

// One document context, with a single retry for unreadable answers.
std::optional<bool> ask_verdict(const llm::LlmGateway& gateway, const std::string& document,
                                const std::string& statement) {
  const auto conversation =
      llm::render_prompt(llm::Purpose::verify_fact, {{"document", document}, {"statement", statement}});
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (auto verdict = parse_verdict(gateway.complete(conversation).content)) return verdict;
  }
  return std::nullopt;
}

}  // namespace

VerdictOutcome verify_fact(const llm::LlmGateway& gateway, const AtomicFact& fact, const core::DocumentSet& docset,
                           const EvaluationOptions& options) {
  if (fact.text.empty()) throw PreconditionError("cannot verify an empty fact");
  const auto joined = docset.concatenated();
  std::vector<std::string> contexts;
  if (core::scalar_length(joined) <= options.context_budget || docset.size() == 1) {
    contexts.push_back(joined);
  } else {
    for (const auto& doc : docset.documents()) contexts.push_back(doc.body);
  }

  bool any_answer = false;
  for (const auto& context : contexts) {
    const auto verdict = ask_verdict(gateway, context, fact.text);
    if (verdict && *verdict) return VerdictOutcome{Verdict::verified, std::nullopt};
    any_answer = any_answer || verdict.has_value();
  }
  VerdictOutcome out{Verdict::unverified, std::nullopt};
  if (!any_answer) {
    out.warning = core::Warning{"verify_fact", fact.text, "no True/False answer after retry; marked unverified"};
  }
  return out;
}

double consistency_score(const std::vector<AtomicFact>& facts) {
  if (facts.empty()) return 0.0;
  const auto verified = std::count_if(facts.begin(), facts.end(),
                                      [](const AtomicFact& f) { return f.verdict == Verdict::verified; });
  return static_cast<double>(verified) / static_cast<double>(facts.size());
}

std::set<std::size_t> flagged_sentences(const std::vector<AtomicFact>& facts) {
  std::set<std::size_t> flagged;
  for (const auto& f : facts) {
    if (f.verdict == Verdict::unverified) flagged.insert(f.sentence_index);
  }
  return flagged;
}

EvaluationResult evaluate(const llm::LlmGateway& gateway, const core::DocumentSet& docset,
                          const core::Summary& summary, const EvaluationOptions& options) {
  const auto summary_tokens = tokenize(summary.text);
  if (summary_tokens.empty()) throw EmptySummaryError("cannot evaluate an empty summary");
  const auto article_tokens = tokenize(docset.concatenated());

  EvaluationResult out;
  auto& report = out.report;
  report.compression = compression(article_tokens.size(), summary_tokens.size());
  report.coverage = coverage(article_tokens, summary_tokens);

  auto decomposition = decompose_facts(gateway, summary);
  out.warnings = std::move(decomposition.warnings);
  report.facts = std::move(decomposition.facts);

  std::vector<VerdictOutcome> outcomes(report.facts.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < report.facts.size(); i = next++) {
      try {
        outcomes[i] = verify_fact(gateway, report.facts[i], docset, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = report.facts.size();
      }
    }
  };
  const auto threads = std::clamp<std::size_t>(options.parallelism, 1, std::max<std::size_t>(report.facts.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < report.facts.size(); ++i) {
    report.facts[i].verdict = outcomes[i].verdict;
    if (outcomes[i].warning) out.warnings.push_back(*outcomes[i].warning);
  }
  report.consistency = consistency_score(report.facts);
  report.flagged_sentences = flagged_sentences(report.facts);
  return out;
}

}  // namespace abridge::evaluation
