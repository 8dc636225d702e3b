// SPDX-License-Identifier: Apache-2.0
#include "abridge/core/text.hpp"

#include <algorithm>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "abridge/core/errors.hpp"

namespace abridge::core {

std::u32string to_u32(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t offset = i;
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      throw InputError("invalid UTF-8 sequence at byte " + std::to_string(offset));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string to_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) throw InputError("code point outside the Unicode range");
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

std::size_t scalar_length(std::string_view utf8) { return to_u32(utf8).size(); }

std::string scalar_substr(std::string_view utf8, std::size_t start, std::size_t end) {
  const auto text = to_u32(utf8);
  end = std::min(end, text.size());
  if (start >= end) return {};
  return to_utf8(std::u32string_view(text).substr(start, end - start));
}

bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0; }

bool is_punct(char32_t c) { return u_ispunct(static_cast<UChar32>(c)) != 0; }

bool is_alnum(char32_t c) { return u_isalnum(static_cast<UChar32>(c)) != 0; }

bool is_upper(char32_t c) {
  const auto cp = static_cast<UChar32>(c);
  return u_isupper(cp) || u_istitle(cp);
}

std::u32string lowercase(std::u32string_view text) {
  std::u32string out(text);
  for (auto& c : out) c = static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
  return out;
}

std::string lowercase(std::string_view utf8) { return to_utf8(lowercase(to_u32(utf8))); }

std::string trim(std::string_view text) {
  const auto cps = to_u32(text);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && is_space(cps[b])) ++b;
  while (e > b && is_space(cps[e - 1])) --e;
  return to_utf8(std::u32string_view(cps).substr(b, e - b));
}

std::string normalize_text(std::string_view raw) {
  // Validates the encoding before ICU sees it; fromUTF8 would silently substitute.
  const auto decoded = to_u32(raw);

  std::u32string unified;
  unified.reserve(decoded.size());
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    if (decoded[i] == U'\r') {
      unified.push_back(U'\n');
      if (i + 1 < decoded.size() && decoded[i + 1] == U'\n') ++i;
    } else {
      unified.push_back(decoded[i]);
    }
  }

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(std::string("ICU NFC unavailable: ") + u_errorName(status));
  const auto utf8 = to_utf8(unified);
  icu::UnicodeString normalized =
      nfc->normalize(icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size()))),
                     status);
  if (U_FAILURE(status)) throw InputError(std::string("normalization failed: ") + u_errorName(status));
  std::string out;
  normalized.toUTF8String(out);
  return trim(out);
}

const std::vector<std::string>& sentence_abbreviations() {
  static const std::vector<std::string> list = {
      "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "u.s.", "u.k.", "e.g.", "i.e.", "vs.",
  };
  return list;
}

namespace {

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

bool is_opening(char32_t c) {
  const auto type = u_charType(static_cast<UChar32>(c));
  return c == U'"' || c == U'\'' || type == U_START_PUNCTUATION || type == U_INITIAL_PUNCTUATION;
}

bool is_closing(char32_t c) {
  const auto type = u_charType(static_cast<UChar32>(c));
  return c == U'"' || c == U'\'' || type == U_END_PUNCTUATION || type == U_FINAL_PUNCTUATION;
}

// The whitespace-delimited word ending at `period` (inclusive), minus opening punctuation.
bool ends_with_abbreviation(const std::u32string& text, std::size_t period) {
  std::size_t begin = period;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  while (begin < period && is_opening(text[begin])) ++begin;
  const auto word = to_utf8(lowercase(std::u32string_view(text).substr(begin, period - begin + 1)));
  const auto& list = sentence_abbreviations();
  return std::find(list.begin(), list.end(), word) != list.end();
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view input) {
  const auto text = to_u32(input);
  const std::size_t n = text.size();
  std::vector<Sentence> out;

  auto emit = [&](std::size_t start, std::size_t end) {
    while (end > start && is_space(text[end - 1])) --end;
    if (end == start) return;
    out.push_back(Sentence{out.size(), to_utf8(std::u32string_view(text).substr(start, end - start)), start, end});
  };

  std::size_t pos = 0;
  while (true) {
    while (pos < n && is_space(text[pos])) ++pos;
    if (pos >= n) break;
    const std::size_t start = pos;
    std::size_t end = n;

    for (std::size_t i = start; i < n; ++i) {
      if (!is_terminator(text[i])) continue;
      std::size_t j = i + 1;
      while (j < n && is_terminator(text[j])) ++j;
      const bool single_period = text[i] == U'.' && j == i + 1;
      while (j < n && is_closing(text[j])) ++j;
      if (j == n) {
        end = n;
        break;
      }
      if (!is_space(text[j])) {
        i = j - 1;
        continue;
      }
      std::size_t k = j;
      while (k < n && is_space(text[k])) ++k;
      while (k < n && is_opening(text[k])) ++k;
      if (k < n && is_upper(text[k]) && !(single_period && ends_with_abbreviation(text, i))) {
        end = j;
        break;
      }
      i = j - 1;
    }

    emit(start, end);
    pos = end;
  }
  return out;
}

}  // namespace abridge::core
