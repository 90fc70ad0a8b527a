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
#include <string>
#include <string_view>

#include "larb/llm/chat.hpp"
#include "larb/net/json_client.hpp"

namespace larb::llm {

/// OpenAI-style /chat/completions client. Temperature is pinned to 0.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(BackendConfig config);

  std::string send(const ChatRequest& request) override;
  std::string model_name() const override { return config_.model_name; }

  /// The request body that send() posts; exposed for inspection.
  static nlohmann::json request_body(const BackendConfig& config, const ChatRequest& request);

 private:
  BackendConfig config_;
  net::JsonClient client_;
};

/// Offline backend. The reply is a pure function of the template name and
/// the final user message: a few-shot user message gets its paired
/// assistant reply, anything else goes through a rule-based stand-in for
/// the model (see mock_render / mock_segment).
class MockChatBackend : public ChatBackend {
 public:
  std::string send(const ChatRequest& request) override;
  std::string model_name() const override { return "mock"; }
};

/// Renders a structured-sentence prompt as "This/That <subject> <verb>
/// <this/that object>." Bracketed words pass through with hyphenated
/// endings.
std::string mock_render(std::string_view structured_json);

/// Splits English into simple sentences with a small rule-based parser.
/// Returns the bare JSON array the segment template asks for.
nlohmann::json mock_segment(std::string_view english, bool topic_verbs);

/// "mock" or "live"; live requires config.base_url and config.model_name.
std::shared_ptr<ChatBackend> make_chat_backend(std::string_view kind,
                                               const BackendConfig& config);

}  // namespace larb::llm
