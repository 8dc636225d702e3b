// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>

#include "abridge/service/session_service.hpp"

namespace httplib {
class Server;
}

namespace abridge::service {

struct HttpOptions {
  /// Sent as Access-Control-Allow-Origin when non-empty.
  std::string cors_origin = "*";
  /// Receives one JSON object per request; no logging when empty.
  std::function<void(const std::string&)> log_sink;
};

/// Registers the session routes on `server`.
void bind_routes(httplib::Server& server, SessionService& service, HttpOptions options = {});

}  // namespace abridge::service
