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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace larb::llm {

enum class Role { kSystem, kUser, kAssistant };
std::string_view to_string(Role r);

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct PromptTemplate {
  std::string name;
  std::string system;
  std::vector<std::pair<std::string, std::string>> few_shots;  // (user, assistant)

  /// System message, the few-shot turns, then `user` as the final message.
  std::vector<ChatMessage> messages_for(std::string_view user) const;
};

/// Structured sentence → natural English, with its two few-shot turns.
const PromptTemplate& render_template();
/// English → list of simple SV/SVO sentences.
const PromptTemplate& segment_template();
/// Segmentation variant that asks for the topic verb instead of a light
/// verb ("went hiking" → hike).
const PromptTemplate& segment_topic_verbs_template();
const PromptTemplate* find_template(std::string_view name);

/// A function the model is asked to call; `parameters` is a JSON schema.
struct ToolSpec {
  std::string name;
  std::string description;
  nlohmann::json parameters;
};

struct ChatRequest {
  std::string template_name;
  std::vector<ChatMessage> messages;
  std::optional<ToolSpec> tool;
};

/// Connection settings for a live backend. The API key is never stored here;
/// only the name of the environment variable that holds it.
struct BackendConfig {
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string model_name;
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout_s = 30.0;
  int max_retries = 3;
  int max_in_flight = 4;
  double backoff_initial_s = 0.5;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

BackendConfig backend_config_from_json(const nlohmann::json& j);

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  /// Returns the assistant text, or the tool-call arguments when the request
  /// carries a tool. Implementations must be safe to call concurrently.
  virtual std::string send(const ChatRequest& request) = 0;
  virtual std::string model_name() const = 0;
};

/// Checks the transcript shape (leading system message, non-empty contents)
/// and forwards to the backend.
std::string complete(ChatBackend& backend, const ChatRequest& request);

struct StructuredSchema {
  ToolSpec tool;
  /// Validates a parsed reply and returns its canonical form; throws
  /// FormatError with a short reason on mismatch.
  std::function<nlohmann::json(const nlohmann::json&)> normalize;
};

/// Parses the reply as JSON (tolerating a surrounding code fence) and
/// normalizes it with `schema`. On failure the model gets one repair turn;
/// a second failure throws FormatError carrying the raw reply.
nlohmann::json complete_structured(ChatBackend& backend, ChatRequest request,
                                   const StructuredSchema& schema);

/// Schema for the segmenter: {"sentences": [{subject, verb, verb_tense,
/// object}]}; a bare array is accepted too. Normalizes to the bare array.
const StructuredSchema& simple_sentence_schema();

}  // namespace larb::llm
