// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "abridge/core/model.hpp"

namespace abridge::core {

/// Decodes UTF-8 into Unicode scalar values. Throws InputError on invalid encoding.
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);

/// Length of `utf8` in Unicode scalar values.
std::size_t scalar_length(std::string_view utf8);

/// Substring by scalar-value offsets [start, end).
std::string scalar_substr(std::string_view utf8, std::size_t start, std::size_t end);

/// NFC, CRLF/CR -> LF, surrounding whitespace trimmed. Interior runs are kept.
std::string normalize_text(std::string_view raw);

/// Per-code-point lowercase; preserves length so offsets stay valid.
std::u32string lowercase(std::u32string_view text);
std::string lowercase(std::string_view utf8);

/// Trims Unicode whitespace from both ends.
std::string trim(std::string_view text);

bool is_space(char32_t c);
bool is_punct(char32_t c);
bool is_alnum(char32_t c);
bool is_upper(char32_t c);

/// Rule-based sentence segmentation with a fixed abbreviation list.
/// Offsets are scalar-value indices into `text`.
std::vector<Sentence> split_sentences(std::string_view text);

/// Abbreviations (lowercase, with trailing period) that never end a sentence.
const std::vector<std::string>& sentence_abbreviations();

}  // namespace abridge::core
