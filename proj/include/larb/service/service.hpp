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

// HTTP front end for the builder, both translation pipelines and the
// translation history.
//
//   GET  /healthz
//   GET  /api/meta
//   GET  /api/options?selections={json}   (or one query parameter per slot)
//   GET  /api/random?seed=N
//   POST /api/translate/ovp2en            {"subject": "<id>", ...}
//   POST /api/translate/en2ovp            {"text": ..., "score": bool, "type": ...}
//   GET  /api/history?limit=N&offset=M    newest first

#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "larb/builder/builder.hpp"
#include "larb/eval/embeddings.hpp"
#include "larb/grammar/lexicon.hpp"
#include "larb/llm/chat.hpp"
#include "larb/pipeline/en2ovp.hpp"

namespace httplib {
class Server;
}

namespace larb::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  int threads = 8;

  std::string chat_backend = "mock";  // mock | live
  llm::BackendConfig chat;
  std::string embeddings_backend = "none";  // none | mock | live
  llm::BackendConfig embeddings;
  int embeddings_batch_size = 64;

  std::filesystem::path history_path = "larb_history.jsonl";
  std::filesystem::path lexicon_path;   // empty: the shipped lexicon
  std::filesystem::path synonyms_path;  // empty: none
  std::filesystem::path static_dir;     // empty: no static files
  std::vector<std::string> cors_origins;

  bool topic_verbs = false;
  bool ti_as_past_continuous = false;
  int retry_after_s = 5;
  double relatedness_threshold = 0.757;

  /// Throws ConfigError on unknown keys or bad values.
  static ServiceConfig from_json(const nlohmann::json& j);
  static ServiceConfig load(const std::filesystem::path& path);

  using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
  /// LARB_CHAT_BACKEND, LARB_CHAT_URL, LARB_CHAT_MODEL, LARB_EMBEDDINGS_BACKEND,
  /// LARB_EMBEDDINGS_URL, LARB_EMBEDDINGS_MODEL, LARB_HISTORY_PATH, LARB_HOST,
  /// LARB_PORT. API keys stay in the variables named by api_key_env.
  void apply_env(const EnvLookup& env);
  void apply_env();

  void validate() const;
};

/// Append-only JSON-lines log of translation records. Appends are
/// serialized and fsync'd before append() returns. Lines that fail to parse
/// are skipped when reading.
class HistoryStore {
 public:
  explicit HistoryStore(std::filesystem::path path);
  ~HistoryStore();
  HistoryStore(const HistoryStore&) = delete;
  HistoryStore& operator=(const HistoryStore&) = delete;

  void append(const en2ovp::TranslationRecord& record);

  struct Page {
    std::vector<en2ovp::TranslationRecord> records;  // newest first
    std::size_t total = 0;
    std::size_t skipped = 0;  // unreadable lines
  };
  Page page(std::size_t limit, std::size_t offset) const;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  int fd_ = -1;
};

class Service {
 public:
  /// Builds backends from the config.
  explicit Service(ServiceConfig config);
  /// Explicit backends; `embeddings` may be null.
  Service(ServiceConfig config, std::shared_ptr<llm::ChatBackend> chat,
          std::shared_ptr<eval::EmbeddingBackend> embeddings);
  ~Service();

  void register_routes(httplib::Server& server) const;

  /// Binds config.host:config.port and serves until stop(). Returns false
  /// when the address cannot be bound.
  bool run();
  void stop();

  const ServiceConfig& config() const { return config_; }
  const HistoryStore& history() const { return *history_; }

 private:
  ServiceConfig config_;
  grammar::Lexicon lexicon_;
  builder::SentenceBuilder builder_;
  en2ovp::Synonyms synonyms_;
  std::shared_ptr<llm::ChatBackend> chat_;
  std::shared_ptr<eval::EmbeddingBackend> embeddings_;
  std::unique_ptr<HistoryStore> history_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace larb::service
