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

#include "larb/llm/chat.hpp"

#include "larb/english/english.hpp"
#include "larb/error.hpp"
#include "larb/text/unicode.hpp"

namespace larb::llm {
namespace {

constexpr const char* kSegmentSystem =
    "You are an assistant that splits user input sentences into a set of simple SVO or SV "
    "sentences. The set of simple sentences should be as semantically equivalent as possible "
    "to the user input sentence. No adjectives, adverbs, prepositions, or conjunctions should "
    "be added to the simple sentences. Indirect objects and objects of prepositions should not "
    "be included in the simple sentences.";

const std::vector<std::pair<std::string, std::string>> kSegmentShots{
    {"I am sitting in a chair.",
     R"j([{"subject":"I","verb":"sit","verb_tense":"present_continuous","object":null}])j"},
    {"I saw two men walking their dogs yesterday at Starbucks while drinking a cup of coffee",
     R"j([{"subject":"I","verb":"see","verb_tense":"past","object":"man"},)j"
     R"j({"subject":"man","verb":"walk","verb_tense":"past_continuous","object":"dog"},)j"
     R"j({"subject":"man","verb":"drink","verb_tense":"past_continuous","object":"coffee"}])j"},
};

std::string strip_fence(std::string_view raw) {
  std::string s = text::trim(raw);
  if (s.rfind("```", 0) == 0) {
    const auto nl = s.find('\n');
    const auto end = s.rfind("```");
    if (nl != std::string::npos && end != std::string::npos && end > nl) {
      s = text::trim(std::string_view(s).substr(nl + 1, end - nl - 1));
    }
  }
  return s;
}

}  // namespace

std::string_view to_string(Role r) {
  switch (r) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

std::vector<ChatMessage> PromptTemplate::messages_for(std::string_view user) const {
  std::vector<ChatMessage> out{{Role::kSystem, system}};
  for (const auto& [u, a] : few_shots) {
    out.push_back({Role::kUser, u});
    out.push_back({Role::kAssistant, a});
  }
  out.push_back({Role::kUser, std::string(user)});
  return out;
}

const PromptTemplate& render_template() {
  static const PromptTemplate t{
      "render",
      "You are an assistant for translating structured sentences into simple natural English "
      "sentences.",
      {
          {R"j([{"part_of_speech":"subject","positional":"proximal","word":"wood"},)j"
           R"j({"part_of_speech":"object","positional":"proximal","word":"dog"},)j"
           R"j({"part_of_speech":"verb","tense":"present continuous (-ing)","word":"see"}])j",
           "This wood is seeing this dog."},
          {R"j([{"part_of_speech":"subject","positional":"distal","word":"pinenuts"},)j"
           R"j({"part_of_speech":"object","positional":"distal","word":"horse"},)j"
           R"j({"part_of_speech":"verb","tense":"future (will)","word":"see"}])j",
           "Those pinenuts will see that horse."},
      },
  };
  return t;
}

const PromptTemplate& segment_template() {
  static const PromptTemplate t{"segment", kSegmentSystem, kSegmentShots};
  return t;
}

const PromptTemplate& segment_topic_verbs_template() {
  static const PromptTemplate t{
      "segment-topic-verbs",
      std::string(kSegmentSystem) +
          " Prefer the verb that carries the topic of the sentence over light verbs such as "
          "go, do or make (for \"We went swimming.\" use the verb swim).",
      kSegmentShots,
  };
  return t;
}

const PromptTemplate* find_template(std::string_view name) {
  for (const PromptTemplate* t :
       {&render_template(), &segment_template(), &segment_topic_verbs_template()}) {
    if (t->name == name) return t;
  }
  return nullptr;
}

void BackendConfig::validate() const {
  if (!(timeout_s > 0)) throw ConfigError("backend timeout must be positive");
  if (max_retries < 0) throw ConfigError("backend max_retries must be >= 0");
  if (max_in_flight < 1) throw ConfigError("backend max_in_flight must be >= 1");
  if (backoff_initial_s < 0) throw ConfigError("backend backoff must be >= 0");
}

BackendConfig backend_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("backend config must be an object");
  BackendConfig c;
  try {
    c.base_url = j.value("base_url", c.base_url);
    c.model_name = j.value("model", c.model_name);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    c.timeout_s = j.value("timeout_s", c.timeout_s);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
    c.backoff_initial_s = j.value("backoff_initial_s", c.backoff_initial_s);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad backend config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string complete(ChatBackend& backend, const ChatRequest& request) {
  if (request.messages.empty() || request.messages.front().role != Role::kSystem) {
    throw InputError("chat transcript must start with a system message");
  }
  for (const auto& m : request.messages) {
    if (text::trim(m.content).empty()) throw InputError("chat message content is empty");
  }
  return backend.send(request);
}

nlohmann::json complete_structured(ChatBackend& backend, ChatRequest request,
                                   const StructuredSchema& schema) {
  request.tool = schema.tool;
  std::string raw;
  std::string problem;
  for (int attempt = 0; attempt < 2; ++attempt) {
    raw = complete(backend, request);
    try {
      auto parsed = nlohmann::json::parse(strip_fence(raw));
      return schema.normalize(parsed);
    } catch (const nlohmann::json::parse_error& e) {
      problem = std::string("not valid JSON: ") + e.what();
    } catch (const FormatError& e) {
      problem = e.what();
    }
    request.messages.push_back({Role::kAssistant, raw.empty() ? std::string("(empty)") : raw});
    request.messages.push_back(
        {Role::kUser, "That reply could not be used (" + problem +
                          "). Answer again with only JSON that matches the " +
                          schema.tool.name + " schema."});
  }
  throw FormatError("structured reply unusable after repair: " + problem, raw);
}

const StructuredSchema& simple_sentence_schema() {
  static const StructuredSchema s{
      ToolSpec{
          "simple_sentences",
          "Record the simple subject-verb(-object) sentences.",
          nlohmann::json::parse(R"j({
            "type": "object",
            "properties": {
              "sentences": {
                "type": "array",
                "items": {
                  "type": "object",
                  "properties": {
                    "subject": {"type": "string"},
                    "verb": {"type": "string"},
                    "verb_tense": {"type": "string", "enum": ["past", "present", "future",
                      "past_continuous", "present_continuous", "present_perfect"]},
                    "object": {"type": ["string", "null"]}
                  },
                  "required": ["subject", "verb", "verb_tense"]
                }
              }
            },
            "required": ["sentences"]
          })j"),
      },
      [](const nlohmann::json& reply) {
        const nlohmann::json* items = &reply;
        if (reply.is_object()) {
          if (!reply.contains("sentences")) throw FormatError("missing \"sentences\"");
          items = &reply.at("sentences");
        }
        if (!items->is_array() || items->empty()) {
          throw FormatError("expected a non-empty list of sentences");
        }
        nlohmann::json out = nlohmann::json::array();
        for (const auto& item : *items) {
          if (!item.is_object()) throw FormatError("sentence entries must be objects");
          auto str = [&](const char* key) -> std::string {
            if (!item.contains(key) || !item.at(key).is_string()) {
              throw FormatError(std::string("sentence field \"") + key + "\" must be a string");
            }
            return text::trim(item.at(key).get<std::string>());
          };
          const std::string subject = str("subject");
          const std::string verb = str("verb");
          const auto tense = english::parse_tense(str("verb_tense"));
          if (subject.empty() || verb.empty()) throw FormatError("empty subject or verb");
          if (!tense) throw FormatError("unknown verb_tense");
          nlohmann::json object = nullptr;
          if (item.contains("object") && !item.at("object").is_null()) {
            if (!item.at("object").is_string()) throw FormatError("object must be a string");
            const std::string o = text::trim(item.at("object").get<std::string>());
            if (!o.empty() && text::lower(o) != "null" && text::lower(o) != "none") object = o;
          }
          out.push_back({{"subject", subject},
                         {"verb", verb},
                         {"verb_tense", english::to_string(*tense)},
                         {"object", object}});
        }
        return out;
      },
  };
  return s;
}

}  // namespace larb::llm
