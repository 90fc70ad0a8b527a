// Copyright 2026 The LARB Translator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>

#include <json.hpp>

namespace larb::net {

struct Endpoint {
  std::string origin;       // scheme://host[:port]
  std::string path_prefix;  // "" or "/v1"
};

/// Splits "https://host:port/v1/" into origin and path prefix. Throws
/// ConfigError for anything but http(s) URLs.
Endpoint parse_base_url(std::string_view url);

/// Reads the named environment variable; nullopt when unset or empty.
std::optional<std::string> api_key_from_env(const std::string& variable);

struct ClientOptions {
  std::string base_url;
  std::optional<std::string> api_key;
  double timeout_s = 30.0;
  int max_retries = 3;
  double backoff_initial_s = 0.5;
  int max_in_flight = 4;
};

/// POSTs JSON and returns the parsed JSON reply.
///
/// Transport failures, 429 and 5xx replies are retried with exponential
/// backoff (a Retry-After header, when present, sets the delay). Other
/// non-2xx replies fail immediately. Afterwards, transport failures raise
/// TransportError and status failures BackendError. At most max_in_flight
/// requests run at once per client; the rest wait.
class JsonClient {
 public:
  explicit JsonClient(ClientOptions options);
  ~JsonClient();

  nlohmann::json post(std::string_view path, const nlohmann::json& body);

  const ClientOptions& options() const { return options_; }

 private:
  ClientOptions options_;
  Endpoint endpoint_;
  std::unique_ptr<std::counting_semaphore<>> slots_;
};

}  // namespace larb::net
