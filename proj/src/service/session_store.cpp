// SPDX-License-Identifier: Apache-2.0
#include "abridge/service/session_store.hpp"

#include <algorithm>
#include <fstream>

#include "abridge/core/errors.hpp"

namespace abridge::service {

namespace fs = std::filesystem;

SessionStore::SessionStore(fs::path data_dir) : data_dir_(std::move(data_dir)) {
  std::error_code ec;
  fs::create_directories(data_dir_, ec);
  if (ec) throw InputError("cannot create data directory " + data_dir_.string() + ": " + ec.message());
}

fs::path SessionStore::path_for(const std::string& id) const { return data_dir_ / (id + ".json"); }

std::vector<Session> SessionStore::load_all(std::vector<std::string>& warnings) const {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(data_dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Session> sessions;
  for (const auto& path : files) {
    try {
      std::ifstream in(path);
      auto session = session_from_snapshot(nlohmann::json::parse(in));
      if (path.stem().string() != session.id) {
        throw InputError("file name does not match session id '" + session.id + "'");
      }
      sessions.push_back(std::move(session));
    } catch (const std::exception& e) {
      warnings.push_back("skipping snapshot " + path.string() + ": " + e.what());
    }
  }
  return sessions;
}

void SessionStore::save(const Session& session) const {
  const auto target = path_for(session.id);
  auto temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + temp.string());
    out << session_snapshot(session).dump(2) << '\n';
    out.flush();
    if (!out) throw Error("failed writing " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) throw Error("cannot replace " + target.string() + ": " + ec.message());
}

}  // namespace abridge::service
