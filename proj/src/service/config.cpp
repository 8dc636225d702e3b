// SPDX-License-Identifier: Apache-2.0
#include "abridge/service/config.hpp"

#include <fstream>

#include "abridge/core/errors.hpp"

namespace abridge::service {

namespace {

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

ServiceConfig service_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw InputError("service config must be a JSON object");
  ServiceConfig c;
  try {
    if (j.contains("listen")) {
      const auto& listen = j.at("listen");
      if (listen.contains("host")) c.host = listen.at("host").get<std::string>();
      if (listen.contains("port")) c.port = listen.at("port").get<int>();
    }
    if (j.contains("data_dir")) c.data_dir = resolve(j.at("data_dir").get<std::string>(), base_dir);
    if (j.contains("provider")) {
      c.provider = j.at("provider").get<llm::ProviderConfig>();
      if (c.provider.kind == llm::ProviderConfig::Kind::scripted) {
        c.provider.playbook = resolve(c.provider.playbook, base_dir);
      }
    }
    if (j.contains("parallelism")) c.parallelism = j.at("parallelism").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid service config: ") + e.what());
  }
  if (c.port < 0 || c.port > 65535) throw InputError("port out of range");
  if (c.parallelism == 0) throw InputError("parallelism must be at least 1");
  return c;
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InputError("config file " + path.string() + " is not valid JSON");
  return service_config_from_json(j, path.parent_path());
}

}  // namespace abridge::service
