// SPDX-License-Identifier: Apache-2.0
#include "abridge/evaluation/metrics.hpp"

#include "abridge/core/errors.hpp"
#include "abridge/core/text.hpp"

namespace abridge::evaluation {

std::vector<Token> tokenize(std::string_view text) {
  const auto cps = core::to_u32(text);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && core::is_space(cps[i])) ++i;
    std::size_t begin = i;
    while (i < cps.size() && !core::is_space(cps[i])) ++i;
    std::size_t end = i;
    while (begin < end && core::is_punct(cps[begin])) ++begin;
    while (end > begin && core::is_punct(cps[end - 1])) --end;
    if (begin == end) continue;
    out.push_back(Token{core::to_utf8(core::lowercase(std::u32string_view(cps).substr(begin, end - begin))),
                        begin, end});
  }
  return out;
}

std::vector<Fragment> extractive_fragments(std::span<const Token> article, std::span<const Token> summary) {
  return greedy_fragments(article, summary,
                          [](const Token& a, const Token& b) { return a.surface == b.surface; });
}

double compression(std::size_t article_tokens, std::size_t summary_tokens) {
  if (summary_tokens == 0) throw EmptySummaryError("summary has no tokens");
  return static_cast<double>(article_tokens) / static_cast<double>(summary_tokens);
}

double compression(const core::DocumentSet& docset, std::string_view summary) {
  const auto summary_tokens = tokenize(summary).size();
  if (summary_tokens == 0) throw EmptySummaryError("summary has no tokens");
  return compression(tokenize(docset.concatenated()).size(), summary_tokens);
}

double coverage(std::span<const Token> article, std::span<const Token> summary) {
  if (summary.empty()) throw EmptySummaryError("summary has no tokens");
  std::size_t covered = 0;
  for (const auto& f : extractive_fragments(article, summary)) covered += f.length;
  return static_cast<double>(covered) / static_cast<double>(summary.size());
}

double coverage(const core::DocumentSet& docset, std::string_view summary) {
  const auto summary_tokens = tokenize(summary);
  if (summary_tokens.empty()) throw EmptySummaryError("summary has no tokens");
  const auto article_tokens = tokenize(docset.concatenated());
  return coverage(article_tokens, summary_tokens);
}

}  // namespace abridge::evaluation
