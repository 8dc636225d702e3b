// SPDX-License-Identifier: Apache-2.0
#include "support/test_support.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "abridge/core/errors.hpp"

namespace abridge::testing {

namespace fs = std::filesystem;

fs::path fixture(const std::string& relative) { return fs::path(ABRIDGE_FIXTURE_DIR) / relative; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter.fetch_add(1)));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

ScriptedRig scripted_rig(llm::Playbook playbook) {
  ScriptedRig rig;
  rig.provider = std::make_shared<llm::ScriptedProvider>(std::move(playbook));
  rig.gateway = std::make_shared<llm::LlmGateway>(rig.provider, llm::CompletionParams{},
                                                  [](std::chrono::milliseconds) {});
  return rig;
}

ScriptedRig scripted_rig(const fs::path& playbook_file) { return scripted_rig(llm::Playbook::load(playbook_file)); }

core::DocumentSet tom_jane_docset() {
  return core::DocumentSet::create({{"article1", read_file(fixture("tomjane/article1.txt"))},
                                    {"article2", read_file(fixture("tomjane/article2.txt"))}});
}

std::string FlakyProvider::send(const llm::Conversation&, const llm::CompletionParams&) {
  ++calls_;
  if (calls_ <= failures_) {
    switch (kind_) {
      case Failure::timeout: throw TimeoutError("simulated timeout");
      case Failure::transient: throw llm::TransientError("simulated 503");
      case Failure::protocol: throw ProtocolError("simulated malformed body");
      case Failure::fatal: throw ProviderError("simulated 401");
    }
  }
  return reply_;
}

}  // namespace abridge::testing
