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

#include "larb/error.hpp"
#include "larb/llm/backends.hpp"

namespace larb::llm {
namespace {

net::ClientOptions client_options(const BackendConfig& c) {
  c.validate();
  if (c.base_url.empty()) throw ConfigError("live chat backend needs base_url");
  if (c.model_name.empty()) throw ConfigError("live chat backend needs a model name");
  net::ClientOptions o;
  o.base_url = c.base_url;
  o.api_key = net::api_key_from_env(c.api_key_env);
  o.timeout_s = c.timeout_s;
  o.max_retries = c.max_retries;
  o.backoff_initial_s = c.backoff_initial_s;
  o.max_in_flight = c.max_in_flight;
  return o;
}

}  // namespace

HttpChatBackend::HttpChatBackend(BackendConfig config)
    : config_(std::move(config)), client_(client_options(config_)) {}

nlohmann::json HttpChatBackend::request_body(const BackendConfig& config,
                                             const ChatRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  }
  nlohmann::json body{{"model", config.model_name}, {"messages", messages}, {"temperature", 0}};
  if (request.tool) {
    body["tools"] = nlohmann::json::array({{
        {"type", "function"},
        {"function",
         {{"name", request.tool->name},
          {"description", request.tool->description},
          {"parameters", request.tool->parameters}}},
    }});
    body["tool_choice"] = {{"type", "function"}, {"function", {{"name", request.tool->name}}}};
  }
  return body;
}

std::string HttpChatBackend::send(const ChatRequest& request) {
  const nlohmann::json reply = client_.post("/chat/completions", request_body(config_, request));
  try {
    const auto& message = reply.at("choices").at(0).at("message");
    if (message.contains("tool_calls") && message.at("tool_calls").is_array() &&
        !message.at("tool_calls").empty()) {
      const auto& args = message.at("tool_calls").at(0).at("function").at("arguments");
      return args.is_string() ? args.get<std::string>() : args.dump();
    }
    if (message.contains("content") && message.at("content").is_string()) {
      return message.at("content").get<std::string>();
    }
  } catch (const nlohmann::json::exception&) {
  }
  throw BackendError(200, "reply has no message content: " + reply.dump().substr(0, 160));
}

std::string MockChatBackend::send(const ChatRequest& request) {
  std::string last_user;
  for (const auto& m : request.messages) {
    if (m.role == Role::kUser) last_user = m.content;
  }
  if (const PromptTemplate* t = find_template(request.template_name)) {
    for (const auto& [user, assistant] : t->few_shots) {
      if (user == last_user) return assistant;
    }
  }
  if (request.template_name == "render") return mock_render(last_user);
  if (request.template_name == "segment") return mock_segment(last_user, false).dump();
  if (request.template_name == "segment-topic-verbs") {
    return mock_segment(last_user, true).dump();
  }
  throw InputError("mock backend has no behaviour for template '" + request.template_name + "'");
}

std::shared_ptr<ChatBackend> make_chat_backend(std::string_view kind,
                                               const BackendConfig& config) {
  if (kind == "mock") return std::make_shared<MockChatBackend>();
  if (kind == "live") return std::make_shared<HttpChatBackend>(config);
  throw ConfigError("unknown chat backend '" + std::string(kind) + "' (use mock or live)");
}

}  // namespace larb::llm
