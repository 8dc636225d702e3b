// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "abridge/core/errors.hpp"
#include "abridge/core/model.hpp"
#include "abridge/core/text.hpp"
#include "support/test_support.hpp"

using namespace abridge;
using namespace abridge::core;

TEST_CASE("normalize_text canonicalizes newlines and trims") {
  CHECK(normalize_text("A\r\nB") == "A\nB");
  CHECK(normalize_text("A\rB") == "A\nB");
  CHECK(normalize_text("  x  ") == "x");
  CHECK(normalize_text("a  \n\n  b") == "a  \n\n  b");
  CHECK(normalize_text("") == "");
}

TEST_CASE("normalize_text composes to NFC") {
  const std::string composed = "caf\xC3\xA9";
  const std::string decomposed = "cafe\xCC\x81";
  CHECK(normalize_text(composed) == normalize_text(decomposed));
  CHECK(normalize_text(decomposed) == composed);
  CHECK(normalize_text(normalize_text(decomposed)) == normalize_text(decomposed));
}

TEST_CASE("invalid UTF-8 is an input error") {
  CHECK_THROWS_AS(normalize_text("bad \xC3\x28 byte"), InputError);
  CHECK_THROWS_AS(to_u32("\xFF"), InputError);
  CHECK_THROWS_AS(normalize_text("\xED\xA0\x80"), InputError);  // surrogate
}

TEST_CASE("scalar helpers count code points") {
  const std::string s = "h\xC3\xA9llo \xF0\x9F\x98\x80!";
  CHECK(scalar_length(s) == 8);
  CHECK(scalar_substr(s, 1, 2) == "\xC3\xA9");
  CHECK(scalar_substr(s, 6, 7) == "\xF0\x9F\x98\x80");
  CHECK(to_utf8(to_u32(s)) == s);
  CHECK(lowercase(std::string("\xC3\x89T\xC3\x89")) == "\xC3\xA9t\xC3\xA9");
}

TEST_CASE("split_sentences basic spans") {
  const auto two = split_sentences("He ran. She won.");
  REQUIRE(two.size() == 2);
  CHECK(two[0].start == 0);
  CHECK(two[0].end == 7);
  CHECK(two[0].text == "He ran.");
  CHECK(two[1].start == 8);
  CHECK(two[1].end == 16);
  CHECK(two[1].text == "She won.");
  CHECK(split_sentences("Dr. Kim arrived.").size() == 1);
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("   ").empty());
}

TEST_CASE("split_sentences matches the hand-segmented fixture") {
  const auto doc = nlohmann::json::parse(testing::read_file(testing::fixture("sentences_20.json")));
  const auto text = doc.at("text").get<std::string>();
  const auto got = split_sentences(text);
  const auto& expected = doc.at("sentences");
  REQUIRE(got.size() == expected.size());
  CHECK(got.size() == 20);
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(got[i].index == i);
    CHECK(got[i].start == expected[i].at("start").get<std::size_t>());
    CHECK(got[i].end == expected[i].at("end").get<std::size_t>());
    CHECK(got[i].text == expected[i].at("text").get<std::string>());
    CHECK(scalar_substr(text, got[i].start, got[i].end) == got[i].text);
  }
}

namespace {

std::string random_text(testing::Rng& rng) {
  static const std::vector<std::string> pieces = {
      "Alice", "bob",  "Dr.",  "U.S.", "e.g.", "vs.",   "ran", "Zoë", "\xC3\x89milie", ".",  "!",
      "?",     "\"",   ")",    "(",    "2.5",  "Mr.",   "etc.", " ",  "  ",            "\n", "Kim.",
      "won!",  "Why?", "a.m.", "'Yes.'", "The", "\xE2\x80\x9CQuoted.\xE2\x80\x9D"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 30);
  std::string out;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    out += pieces[pick(rng)];
    if (rng() % 2 == 0) out += ' ';
  }
  return normalize_text(out);
}

}  // namespace

TEST_CASE("property: sentence spans are ordered, disjoint and cover all non-whitespace") {
  testing::Rng rng(20261016);
  for (int round = 0; round < 2000; ++round) {
    const auto text = random_text(rng);
    CAPTURE(text);
    const auto u = to_u32(text);
    const auto sentences = split_sentences(text);
    std::vector<bool> covered(u.size(), false);
    std::size_t prev_end = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const auto& s = sentences[i];
      CHECK(s.index == i);
      CHECK(s.start < s.end);
      CHECK(s.start >= prev_end);
      CHECK(s.end <= u.size());
      CHECK(scalar_substr(text, s.start, s.end) == s.text);
      CHECK_FALSE(is_space(u[s.start]));
      CHECK_FALSE(is_space(u[s.end - 1]));
      for (auto k = s.start; k < s.end; ++k) covered[k] = true;
      prev_end = s.end;
    }
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (!is_space(u[k])) CHECK(covered[k]);
    }
    CHECK(split_sentences(text) == sentences);
    // Re-joining the sentences with single spaces segments the same way.
    std::string joined;
    for (const auto& s : sentences) joined += (joined.empty() ? "" : " ") + s.text;
    const auto again = split_sentences(joined);
    REQUIRE(again.size() == sentences.size());
    for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].text == sentences[i].text);
  }
}

TEST_CASE("DocumentSet assigns stable ids and rejects empty input") {
  const auto set = DocumentSet::create({{std::string("A"), "  first\r\nbody "}, {std::nullopt, "second"}});
  REQUIRE(set.size() == 2);
  CHECK(set.documents()[0].id == "doc-1");
  CHECK(set.documents()[1].id == "doc-2");
  CHECK(set.documents()[0].body == "first\nbody");
  CHECK(set.documents()[0].title == std::optional<std::string>("A"));
  CHECK_FALSE(set.documents()[1].title.has_value());
  CHECK(set.concatenated() == "first\nbody\n\nsecond");
  CHECK_THROWS_AS(DocumentSet::create({}), InputError);
  CHECK_THROWS_AS(DocumentSet::create({{std::nullopt, " \n "}}), InputError);
}

TEST_CASE("Summary::make segments its text and JSON round-trips") {
  const auto s = Summary::make(3, "One. Two!", Provenance::refinement(7));
  CHECK(s.sentences.size() == 2);
  const nlohmann::json j = s;
  CHECK(j.at("provenance").at("kind") == "refinement");
  CHECK(j.at("provenance").at("request_id") == 7);
  CHECK(j.get<Summary>() == s);
  const nlohmann::json a = Summary::make(0, "x", Provenance::automatic());
  CHECK(a.at("provenance") == nlohmann::json{{"kind", "automatic"}});

  const Warning w{"extract_triples", "* <a|b>", "expected 3 fields, found 2"};
  CHECK(nlohmann::json(w).get<Warning>() == w);
}
