// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abridge/cli/run.hpp"
#include "abridge/core/text.hpp"
#include "abridge/evaluation/factual.hpp"
#include "abridge/evaluation/metrics.hpp"
#include "abridge/extraction/triples.hpp"
#include "support/oracles.hpp"
#include "support/service_driver.hpp"
#include "support/test_support.hpp"

using namespace abridge;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

Verdict metric_oracle_equivalence() {
  const auto r = testing::exhaustive_fragment_check(8, 3);
  std::ostringstream d;
  d << r.pairs << " pairs, " << r.mismatches << " mismatches, " << r.seconds << " s";
  if (r.mismatches > 0) d << ", first: " << r.first_mismatch;
  return {r.mismatches == 0 && r.seconds < 60.0 && r.pairs == 9841ull * 9840ull, d.str()};
}

Verdict worked_metric_fixtures() {
  const auto article = evaluation::tokenize("The quick brown fox jumps over the lazy dog.");
  const auto s1 = evaluation::tokenize("Brown fox jumps over.");
  const auto s2 = evaluation::tokenize("the green fox");
  const double cov1 = evaluation::coverage(article, s1);
  const double comp1 = evaluation::compression(article.size(), s1.size());
  const double cov2 = evaluation::coverage(article, s2);
  std::ostringstream d;
  d.precision(17);
  d << "coverage " << cov1 << ", compression " << comp1 << ", coverage " << cov2;
  return {cov1 == 1.0 && comp1 == 2.25 && cov2 == 2.0 / 3.0, d.str()};
}

Verdict tom_jane_reproduction() {
  const auto rig = testing::scripted_rig(testing::fixture("tomjane/playbook.json"));
  const auto docset = testing::tom_jane_docset();
  const auto extracted = extraction::extract_triples(*rig.gateway, docset);
  const auto clustered = extraction::cluster_entities(*rig.gateway, docset, extracted.triples);
  bool cluster_ok = false;
  for (const auto& c : clustered.clusters) {
    std::set<std::string> surfaces;
    for (const auto& m : c.mentions) surfaces.insert(m.surface);
    if (surfaces == std::set<std::string>{"Tom's wife", "Jane"} && c.mentions.size() == 2) cluster_ok = true;
  }
  bool triple_ok = false;
  std::string shown;
  for (const auto& t : clustered.triples) {
    if (t.relation == "aged") {
      shown = "<" + t.subject.display() + "|" + t.relation + "|" + t.object.display() + ">";
      triple_ok = t.subject.display() == "[Tom's wife, Jane]" && t.object.display() == "30";
    }
  }
  return {cluster_ok && triple_ok, "cluster merged: " + std::string(cluster_ok ? "yes" : "no") + ", triple " + shown};
}

Verdict consistency_arithmetic() {
  int cases = 0;
  int failures = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t v = 0; v <= n; ++v) {
      std::string text;
      std::vector<llm::PlaybookRule> rules;
      for (std::size_t i = 0; i < n; ++i) {
        const auto sentence = "Statement " + std::to_string(i) + " is here.";
        text += (i ? " " : "") + sentence;
        rules.push_back({llm::Purpose::decompose_facts, "\n" + sentence, "* Fact " + std::to_string(i) + " holds."});
        rules.push_back({llm::Purpose::verify_fact, "\nFact " + std::to_string(i) + " holds.", i < v ? "True" : "False"});
      }
      const auto rig = testing::scripted_rig(llm::Playbook(rules));
      const auto docset = core::DocumentSet::create({{std::nullopt, text}});
      const auto summary = core::Summary::make(0, text, core::Provenance::automatic());
      const auto result = evaluation::evaluate(*rig.gateway, docset, summary);
      std::set<std::size_t> expected_flags;
      for (std::size_t i = v; i < n; ++i) expected_flags.insert(i);
      ++cases;
      if (result.report.consistency != static_cast<double>(v) / static_cast<double>(n) ||
          result.report.flagged_sentences != expected_flags || result.report.facts.size() != n) {
        ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(cases) + " (v, n) cases, " + std::to_string(failures) + " failures"};
}

Verdict grammar_robustness() {
  testing::Rng rng(2026);
  const std::vector<std::string> pieces = {"a", "Q", "7", " ", ".", "'", "-", "+", "[", "]", "\xC3\xA9", "\xE6\x9D\xB1"};
  auto field = [&] {
    std::string f;
    for (auto n = 1 + rng() % 10; n > 0; --n) f += pieces[rng() % pieces.size()];
    auto t = core::trim(f);
    return t.empty() ? std::string("z") : t;
  };
  int round_trips = 0;
  try {
    for (int i = 0; i < 1000; ++i) {
      const auto s = field(), r = field(), o = field();
      const auto parsed = extraction::parse_triple_line(extraction::format_triple_line(s, r, o));
      if (parsed.fields && parsed.fields->subject == s && parsed.fields->relation == r && parsed.fields->object == o) {
        ++round_trips;
      }
    }
    const auto malformed = testing::read_file(testing::fixture("triples_malformed_30.txt"));
    const auto result = extraction::parse_triple_lines(malformed);
    const bool ok = round_trips == 1000 && result.triples.empty() && result.warnings.size() == 30;
    return {ok, std::to_string(round_trips) + "/1000 round-trips, malformed: " + std::to_string(result.triples.size()) +
                    " accepted, " + std::to_string(result.warnings.size()) + "/30 warned"};
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

Verdict service_state_machine() {
  testing::TempDir dir("abridge-acceptance");
  const auto report = testing::run_service_state_machine(20261016, 200, 20, dir.path());
  std::string detail = std::to_string(report.calls) + " calls, " + std::to_string(report.sessions) + " sessions, " +
                       std::to_string(report.violations.size()) + " violations; final phases c/a/s " +
                       std::to_string(report.final_phase_counts[0]) + "/" + std::to_string(report.final_phase_counts[1]) +
                       "/" + std::to_string(report.final_phase_counts[2]) + "; statuses 200/201/400/404/409/502 " +
                       std::to_string(report.status_counts[0]) + "/" + std::to_string(report.status_counts[1]) + "/" +
                       std::to_string(report.status_counts[2]) + "/" + std::to_string(report.status_counts[3]) + "/" +
                       std::to_string(report.status_counts[4]) + "/" + std::to_string(report.status_counts[5]);
  if (!report.violations.empty()) detail += ", first: " + report.violations.front();
  return {report.violations.empty() && report.calls == 200, detail};
}

Verdict cli_determinism() {
  testing::TempDir dir("abridge-acceptance");
  auto run_into = [&](const fs::path& out) {
    const std::vector<std::string> args = {"abridge",
                                           "run",
                                           testing::fixture("tomjane/article1.txt").string(),
                                           testing::fixture("tomjane/article2.txt").string(),
                                           "--provider",
                                           "scripted:" + testing::fixture("tomjane/playbook.json").string(),
                                           "--emit-dot",
                                           "--refine-spec",
                                           testing::fixture("tomjane/refine.json").string(),
                                           "-o",
                                           out.string()};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream sink;
    return cli::main_entry(static_cast<int>(argv.size()), argv.data(), sink, sink);
  };
  if (run_into(dir.path() / "a") != 0 || run_into(dir.path() / "b") != 0) return {false, "a CLI run failed"};
  int files = 0;
  int differing = 0;
  for (const auto& entry : fs::directory_iterator(dir.path() / "a")) {
    ++files;
    const auto other = dir.path() / "b" / entry.path().filename();
    if (!fs::exists(other) || testing::read_file(entry.path()) != testing::read_file(other)) ++differing;
  }
  int files_b = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir.path() / "b")) ++files_b;
  return {differing == 0 && files == files_b && files == 7,
          std::to_string(files) + " files compared, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"metric-oracle-equivalence", metric_oracle_equivalence},
      {"worked-metric-fixtures", worked_metric_fixtures},
      {"tom-jane-cluster-reproduction", tom_jane_reproduction},
      {"consistency-arithmetic", consistency_arithmetic},
      {"grammar-robustness", grammar_robustness},
      {"service-state-machine", service_state_machine},
      {"cli-determinism", cli_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v{false, ""};
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
