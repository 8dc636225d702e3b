// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "abridge/service/session.hpp"

namespace abridge::service {

/// One `<data_dir>/<id>.json` snapshot per session, replaced atomically on every save.
class SessionStore {
 public:
  /// Creates `data_dir` when missing.
  explicit SessionStore(std::filesystem::path data_dir);

  const std::filesystem::path& data_dir() const noexcept { return data_dir_; }

  /// Reads every snapshot. Unreadable files are skipped and described in `warnings`.
  std::vector<Session> load_all(std::vector<std::string>& warnings) const;

  /// Writes to a temporary sibling and renames over the target.
  void save(const Session& session) const;

  std::filesystem::path path_for(const std::string& id) const;

 private:
  std::filesystem::path data_dir_;
};

}  // namespace abridge::service
