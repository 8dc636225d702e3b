// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace abridge::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 1, kProviderError = 2 };

struct CliConfig {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path output_dir = ".";
  std::string provider;  // "scripted:<playbook>" or "http:<url>"
  bool emit_dot = false;
  bool emit_graph_json = true;
  std::optional<std::filesystem::path> refine_spec;
  std::size_t parallelism = 4;
};

/// Runs extraction, clustering, graph, summary, optional refinement and
/// evaluation, then writes the artifacts into `output_dir`. Diagnostics go to `err`.
int run(const CliConfig& config, std::ostream& err);

/// Command-line entry point with `run` and `serve` subcommands.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace abridge::cli
