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

#include "larb/net/json_client.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "larb/error.hpp"

namespace larb::net {
namespace {

std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 200;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

void set_timeouts(httplib::Client& cli, double seconds) {
  const auto us = std::chrono::microseconds(
      static_cast<std::int64_t>(std::max(seconds, 1e-6) * 1e6));
  const auto sec = std::chrono::duration_cast<std::chrono::seconds>(us);
  const auto rest = us - sec;
  cli.set_connection_timeout(sec.count(), rest.count());
  cli.set_read_timeout(sec.count(), rest.count());
  cli.set_write_timeout(sec.count(), rest.count());
}

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<>& s) : s_(s) { s_.acquire(); }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<>& s_;
};

}  // namespace

Endpoint parse_base_url(std::string_view url) {
  std::string u(url);
  const auto scheme_end = u.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("base_url needs a scheme: " + u);
  const std::string scheme = u.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("base_url must be http or https: " + u);
  }
  const auto path_start = u.find('/', scheme_end + 3);
  Endpoint e;
  e.origin = u.substr(0, path_start);
  if (path_start != std::string::npos) e.path_prefix = u.substr(path_start);
  while (!e.path_prefix.empty() && e.path_prefix.back() == '/') e.path_prefix.pop_back();
  if (e.origin.size() <= scheme_end + 3) throw ConfigError("base_url has no host: " + u);
  return e;
}

std::optional<std::string> api_key_from_env(const std::string& variable) {
  if (variable.empty()) return std::nullopt;
  const char* v = std::getenv(variable.c_str());
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

JsonClient::JsonClient(ClientOptions options)
    : options_(std::move(options)),
      endpoint_(parse_base_url(options_.base_url)),
      slots_(std::make_unique<std::counting_semaphore<>>(std::max(1, options_.max_in_flight))) {
  if (!(options_.timeout_s > 0)) throw ConfigError("timeout must be positive");
  if (options_.max_retries < 0) throw ConfigError("max_retries must be >= 0");
}

JsonClient::~JsonClient() = default;

nlohmann::json JsonClient::post(std::string_view path, const nlohmann::json& body) {
  SlotGuard guard(*slots_);
  const std::string full_path = endpoint_.path_prefix + std::string(path);
  const std::string payload = body.dump();
  httplib::Headers headers;
  if (options_.api_key) headers.emplace("Authorization", "Bearer " + *options_.api_key);

  std::string last_problem;
  int last_status = 0;
  std::string last_body;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    double delay = options_.backoff_initial_s * std::pow(2.0, attempt);
    httplib::Client cli(endpoint_.origin);
    set_timeouts(cli, options_.timeout_s);
    auto res = cli.Post(full_path, headers, payload, "application/json");
    if (!res) {
      last_status = 0;
      last_problem = httplib::to_string(res.error());
    } else if (res->status >= 200 && res->status < 300) {
      try {
        return nlohmann::json::parse(res->body);
      } catch (const nlohmann::json::parse_error&) {
        throw BackendError(res->status, "invalid JSON: " + excerpt(res->body));
      }
    } else {
      last_status = res->status;
      last_body = res->body;
      last_problem = "HTTP " + std::to_string(res->status);
      const bool transient = res->status == 429 || res->status >= 500;
      if (!transient) break;
      if (res->has_header("Retry-After")) {
        try {
          delay = std::min(30.0, std::stod(res->get_header_value("Retry-After")));
        } catch (const std::exception&) {
        }
      }
    }
    if (attempt < options_.max_retries && delay > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
  }
  if (last_status == 0) {
    throw TransportError("request to " + endpoint_.origin + full_path + " failed after " +
                         std::to_string(options_.max_retries + 1) +
                         " attempt(s): " + last_problem);
  }
  throw BackendError(last_status, excerpt(last_body));
}

}  // namespace larb::net
