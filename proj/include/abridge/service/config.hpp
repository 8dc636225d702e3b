// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "abridge/llm/provider.hpp"

namespace abridge::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "data";
  llm::ProviderConfig provider;
  std::size_t parallelism = 4;
};

/// Reads a JSON config file:
/// {"listen": {"host", "port"}, "data_dir", "provider": {...}, "parallelism"}.
/// Relative paths are resolved against the file's directory. Throws InputError.
ServiceConfig load_service_config(const std::filesystem::path& path);

ServiceConfig service_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

}  // namespace abridge::service
