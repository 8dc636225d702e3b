// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abridge/core/model.hpp"

namespace abridge::evaluation {

struct Token {
  std::string surface;  // lowercased, edge punctuation removed
  std::size_t start = 0;
  std::size_t end = 0;  // scalar-value offsets of the kept characters

  bool operator==(const Token&) const = default;
};

/// Whitespace split, leading/trailing Unicode punctuation stripped, lowercased.
std::vector<Token> tokenize(std::string_view text);

/// Summary tokens [summary_start, summary_start + length) equal article tokens
/// [article_start, article_start + length).
struct Fragment {
  std::size_t summary_start = 0;
  std::size_t article_start = 0;
  std::size_t length = 0;

  bool operator==(const Fragment&) const = default;
};

/// Greedy left-to-right shared fragments: at each summary position take the
/// longest match starting anywhere in the article (smallest article start on
/// ties) and skip past it; advance by one when nothing matches.
template <typename T, typename Equal = std::equal_to<>>
std::vector<Fragment> greedy_fragments(std::span<const T> article, std::span<const T> summary, Equal eq = {}) {
  std::vector<Fragment> out;
  std::size_t i = 0;
  while (i < summary.size()) {
    const std::size_t remaining = summary.size() - i;
    std::size_t best_len = 0;
    std::size_t best_start = 0;
    for (std::size_t a = 0; a < article.size() && best_len < remaining; ++a) {
      std::size_t len = 0;
      while (len < remaining && a + len < article.size() && eq(summary[i + len], article[a + len])) ++len;
      if (len > best_len) {
        best_len = len;
        best_start = a;
      }
    }
    if (best_len == 0) {
      ++i;
      continue;
    }
    out.push_back(Fragment{i, best_start, best_len});
    i += best_len;
  }
  return out;
}

std::vector<Fragment> extractive_fragments(std::span<const Token> article, std::span<const Token> summary);

/// Article token count over summary token count. Throws EmptySummaryError for an empty summary.
double compression(std::size_t article_tokens, std::size_t summary_tokens);
double compression(const core::DocumentSet& docset, std::string_view summary);

/// Share of summary tokens inside extractive fragments. Throws EmptySummaryError for an empty summary.
double coverage(std::span<const Token> article, std::span<const Token> summary);
double coverage(const core::DocumentSet& docset, std::string_view summary);

}  // namespace abridge::evaluation
