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

#include "larb/service/service.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include <httplib.h>

#include "larb/error.hpp"
#include "larb/eval/dataset.hpp"
#include "larb/eval/harness.hpp"
#include "larb/llm/backends.hpp"
#include "larb/pipeline/ovp2en.hpp"
#include "larb/text/unicode.hpp"

namespace larb::service {
namespace {

const std::set<std::string> kTopKeys{
    "host",        "port",           "threads",      "chat",
    "embeddings",  "history_path",   "lexicon_path", "synonyms_path",
    "static_dir",  "cors_origins",   "topic_verbs",  "ti_as_past_continuous",
    "retry_after_s", "relatedness_threshold",
};
const std::set<std::string> kBackendKeys{
    "backend", "base_url", "model", "api_key_env", "timeout_s",
    "max_retries", "max_in_flight", "backoff_initial_s", "batch_size",
};

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (key == "api_key") {
      throw ConfigError(where + ": API keys belong in the environment; set api_key_env instead");
    }
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

// Thrown inside handlers to pick a status that the exception type alone
// does not decide.
struct HttpError {
  int status;
  std::string message;
};

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view kind,
                const std::string& message, int retry_after = 0) {
  nlohmann::json body{{"error", message}, {"kind", kind}};
  if (retry_after > 0) {
    res.set_header("Retry-After", std::to_string(retry_after));
    body["retry_after_s"] = retry_after;
  }
  send_json(res, status, body);
}

template <typename F>
void guarded(httplib::Response& res, int retry_after, F&& body) {
  try {
    body();
  } catch (const HttpError& e) {
    send_error(res, e.status, "request", e.message, e.status == 502 ? retry_after : 0);
  } catch (const ValidationError& e) {
    send_error(res, 422, "incomplete", e.what());
  } catch (const InputError& e) {
    send_error(res, 400, "input", e.what());
  } catch (const LookupError& e) {
    send_error(res, 400, "lookup", e.what());
  } catch (const ConstraintError& e) {
    send_error(res, 400, "constraint", e.what());
  } catch (const CategoryError& e) {
    send_error(res, 400, "category", e.what());
  } catch (const ConfigError& e) {
    send_error(res, 409, "configuration", e.what());
  } catch (const TransportError& e) {
    send_error(res, 502, "transport", e.what(), retry_after);
  } catch (const BackendError& e) {
    send_error(res, 502, "backend", e.what(), retry_after);
  } catch (const FormatError& e) {
    send_error(res, 502, "format", e.what(), retry_after);
  } catch (const SegmentationError& e) {
    send_error(res, 502, "segmentation", e.what(), retry_after);
  } catch (const std::exception& e) {
    std::cerr << "larb: internal error: " << e.what() << "\n";
    send_error(res, 500, "internal", "internal error");
  }
}

nlohmann::json parse_body(const httplib::Request& req) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::exception&) {
    throw InputError("request body is not valid JSON");
  }
}

std::size_t parse_count(const httplib::Request& req, const char* name, std::size_t fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string v = req.get_param_value(name);
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw InputError(std::string("'") + name + "' must be a non-negative integer");
  }
  return out;
}

nlohmann::json verdict_json(const grammar::Verdict& v) {
  static constexpr const char* kStatus[] = {"complete", "incomplete", "invalid"};
  nlohmann::json missing = nlohmann::json::array();
  for (auto s : v.missing) missing.push_back(grammar::to_string(s));
  nlohmann::json violations = nlohmann::json::array();
  for (auto x : v.violations) violations.push_back(grammar::describe(x));
  return {{"status", kStatus[static_cast<int>(v.status)]},
          {"missing", missing},
          {"violations", violations}};
}

grammar::Lexicon load_lexicon(const ServiceConfig& c) {
  return c.lexicon_path.empty() ? grammar::Lexicon::load_default()
                                : grammar::Lexicon::load(c.lexicon_path);
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

ServiceConfig ServiceConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("service config must be a JSON object");
  check_keys(j, kTopKeys, "config");
  ServiceConfig c;
  try {
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    c.threads = j.value("threads", c.threads);
    if (j.contains("chat")) {
      check_keys(j.at("chat"), kBackendKeys, "config.chat");
      c.chat = llm::backend_config_from_json(j.at("chat"));
      c.chat_backend = j.at("chat").value("backend", c.chat_backend);
    }
    if (j.contains("embeddings")) {
      check_keys(j.at("embeddings"), kBackendKeys, "config.embeddings");
      c.embeddings = llm::backend_config_from_json(j.at("embeddings"));
      c.embeddings_backend = j.at("embeddings").value("backend", c.embeddings_backend);
      c.embeddings_batch_size = j.at("embeddings").value("batch_size", c.embeddings_batch_size);
    }
    c.history_path = j.value("history_path", c.history_path.string());
    c.lexicon_path = j.value("lexicon_path", std::string());
    c.synonyms_path = j.value("synonyms_path", std::string());
    c.static_dir = j.value("static_dir", std::string());
    c.cors_origins = j.value("cors_origins", c.cors_origins);
    c.topic_verbs = j.value("topic_verbs", c.topic_verbs);
    c.ti_as_past_continuous = j.value("ti_as_past_continuous", c.ti_as_past_continuous);
    c.retry_after_s = j.value("retry_after_s", c.retry_after_s);
    c.relatedness_threshold = j.value("relatedness_threshold", c.relatedness_threshold);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad service config: ") + e.what());
  }
  c.validate();
  return c;
}

ServiceConfig ServiceConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void ServiceConfig::apply_env(const EnvLookup& env) {
  if (auto v = env("LARB_HOST")) host = *v;
  if (auto v = env("LARB_PORT")) {
    int p = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), p);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
      throw ConfigError("LARB_PORT must be an integer");
    }
    port = p;
  }
  if (auto v = env("LARB_CHAT_BACKEND")) chat_backend = *v;
  if (auto v = env("LARB_CHAT_URL")) chat.base_url = *v;
  if (auto v = env("LARB_CHAT_MODEL")) chat.model_name = *v;
  if (auto v = env("LARB_EMBEDDINGS_BACKEND")) embeddings_backend = *v;
  if (auto v = env("LARB_EMBEDDINGS_URL")) embeddings.base_url = *v;
  if (auto v = env("LARB_EMBEDDINGS_MODEL")) embeddings.model_name = *v;
  if (auto v = env("LARB_HISTORY_PATH")) history_path = *v;
  validate();
}

void ServiceConfig::apply_env() {
  apply_env([](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  });
}

void ServiceConfig::validate() const {
  if (port < 0 || port > 65535) throw ConfigError("port out of range");
  if (threads < 1) throw ConfigError("threads must be positive");
  if (chat_backend != "mock" && chat_backend != "live") {
    throw ConfigError("chat backend must be mock or live");
  }
  if (embeddings_backend != "none" && embeddings_backend != "mock" &&
      embeddings_backend != "live") {
    throw ConfigError("embeddings backend must be none, mock or live");
  }
  if (embeddings_batch_size < 1) throw ConfigError("embeddings batch_size must be positive");
  if (history_path.empty()) throw ConfigError("history_path is required");
  if (retry_after_s < 1) throw ConfigError("retry_after_s must be positive");
  chat.validate();
  embeddings.validate();
}

// ---------------------------------------------------------------------------
// History

HistoryStore::HistoryStore(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw ConfigError("cannot open history " + path_.string() + ": " + std::strerror(errno));
  }
  // A crash mid-append can leave a torn last line; terminate it so the next
  // record starts on its own line.
  std::ifstream in(path_, std::ios::binary | std::ios::ate);
  if (in && in.tellg() > 0) {
    in.seekg(-1, std::ios::end);
    if (in.get() != '\n' && ::write(fd_, "\n", 1) != 1) {
      throw ConfigError("cannot repair history " + path_.string());
    }
  }
}

HistoryStore::~HistoryStore() {
  if (fd_ >= 0) ::close(fd_);
}

void HistoryStore::append(const en2ovp::TranslationRecord& record) {
  const std::string line = record.to_json().dump() + "\n";
  std::lock_guard lock(mu_);
  std::size_t done = 0;
  while (done < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + done, line.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error("history write failed: " + std::string(std::strerror(errno)));
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) {
    throw std::runtime_error("history fsync failed: " + std::string(std::strerror(errno)));
  }
}

HistoryStore::Page HistoryStore::page(std::size_t limit, std::size_t offset) const {
  std::vector<std::string> lines;
  {
    std::lock_guard lock(mu_);
    std::ifstream in(path_);
    for (std::string line; std::getline(in, line);) {
      if (!text::trim(line).empty()) lines.push_back(std::move(line));
    }
  }
  Page out;
  std::vector<en2ovp::TranslationRecord> all;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      all.push_back(en2ovp::TranslationRecord::from_json(nlohmann::json::parse(lines[i])));
    } catch (const std::exception& e) {
      ++out.skipped;
      std::cerr << "larb: history " << path_.string() << ":" << i + 1 << " skipped: " << e.what()
                << "\n";
    }
  }
  out.total = all.size();
  std::reverse(all.begin(), all.end());
  for (std::size_t i = offset; i < all.size() && out.records.size() < limit; ++i) {
    out.records.push_back(std::move(all[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Service

Service::Service(ServiceConfig config)
    : Service(config, llm::make_chat_backend(config.chat_backend, config.chat),
              config.embeddings_backend == "none"
                  ? nullptr
                  : eval::make_embedding_backend(config.embeddings_backend, config.embeddings,
                                                 config.embeddings_batch_size)) {}

Service::Service(ServiceConfig config, std::shared_ptr<llm::ChatBackend> chat,
                 std::shared_ptr<eval::EmbeddingBackend> embeddings)
    : config_(std::move(config)),
      lexicon_(load_lexicon(config_)),
      builder_(lexicon_),
      chat_(std::move(chat)),
      embeddings_(std::move(embeddings)),
      history_(std::make_unique<HistoryStore>(config_.history_path)) {
  config_.validate();
  if (!config_.synonyms_path.empty()) synonyms_ = en2ovp::Synonyms::load(config_.synonyms_path);
}

Service::~Service() = default;

void Service::register_routes(httplib::Server& server) const {
  const int retry = config_.retry_after_s;

  if (!config_.cors_origins.empty()) {
    const auto origins = config_.cors_origins;
    server.set_post_routing_handler([origins](const httplib::Request& req,
                                              httplib::Response& res) {
      const std::string origin = req.get_header_value("Origin");
      const bool any = std::find(origins.begin(), origins.end(), "*") != origins.end();
      if (origin.empty() && !any) return;
      if (any || std::find(origins.begin(), origins.end(), origin) != origins.end()) {
        res.set_header("Access-Control-Allow-Origin", any ? "*" : origin);
        res.set_header("Vary", "Origin");
      }
    });
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Access-Control-Max-Age", "600");
    });
  }

  server.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"status", "ok"}, {"lexicon", lexicon_.version()}});
  });

  server.Get("/api/meta", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200,
              {{"lexicon", lexicon_.version()},
               {"chat_model", chat_->model_name()},
               {"embedding_model", embeddings_ ? nlohmann::json(embeddings_->model_name())
                                               : nlohmann::json()},
               {"relatedness_threshold", config_.relatedness_threshold},
               {"sentence_types", eval::kSentenceTypes}});
  });

  server.Get("/api/options", [this, retry](const httplib::Request& req, httplib::Response& res) {
    guarded(res, retry, [&] {
      nlohmann::json sel = nlohmann::json::object();
      if (req.has_param("selections")) {
        try {
          sel = nlohmann::json::parse(req.get_param_value("selections"));
        } catch (const nlohmann::json::exception&) {
          throw InputError("'selections' is not valid JSON");
        }
      } else {
        for (const auto& [key, value] : req.params) sel[key] = value;
      }
      const auto selections = grammar::selections_from_json(sel, lexicon_);
      nlohmann::json choices = nlohmann::json::array();
      for (const auto& c : builder_.valid_choices(selections)) {
        choices.push_back(builder::to_json(c));
      }
      const auto verdict = grammar::validate(selections);
      nlohmann::json out{{"selections", grammar::selections_to_json(selections)},
                         {"choices", choices},
                         {"verdict", verdict_json(verdict)}};
      if (verdict.complete()) out["surface"] = grammar::render(selections, lexicon_.word_order());
      send_json(res, 200, out);
    });
  });

  server.Get("/api/random", [this, retry](const httplib::Request& req, httplib::Response& res) {
    guarded(res, retry, [&] {
      const std::uint64_t seed =
          req.has_param("seed") ? parse_count(req, "seed", 0) : std::random_device{}();
      const auto s = builder_.random_sentence(seed);
      send_json(res, 200,
                {{"seed", seed},
                 {"selections", grammar::selections_to_json(s)},
                 {"surface", grammar::render(s, lexicon_.word_order())}});
    });
  });

  server.Post("/api/translate/ovp2en",
              [this, retry](const httplib::Request& req, httplib::Response& res) {
                guarded(res, retry, [&] {
                  const auto selections = grammar::selections_from_json(parse_body(req), lexicon_);
                  const auto verdict = grammar::validate(selections);
                  if (!verdict.complete()) {
                    send_json(res, 422,
                              {{"error", "selections do not form a complete sentence: " +
                                             verdict.summary()},
                               {"kind", "incomplete"},
                               {"verdict", verdict_json(verdict)}});
                    return;
                  }
                  const auto t = ovp2en::translate_ovp(
                      selections, lexicon_, *chat_, {config_.ti_as_past_continuous});
                  auto out = t.to_json();
                  out["selections"] = grammar::selections_to_json(selections);
                  out["model"] = chat_->model_name();
                  send_json(res, 200, out);
                });
              });

  server.Post("/api/translate/en2ovp",
              [this, retry](const httplib::Request& req, httplib::Response& res) {
                guarded(res, retry, [&] {
                  const auto body = parse_body(req);
                  if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
                    throw InputError("body needs a string 'text'");
                  }
                  const std::string input = text::trim(body["text"].get<std::string>());
                  if (input.empty()) throw InputError("text is empty");
                  const bool score = body.value("score", false);
                  const std::string type = body.value("type", "");
                  if (!type.empty() && !eval::is_sentence_type(type)) {
                    throw InputError("unknown sentence type '" + type + "'");
                  }
                  if (score && !embeddings_) {
                    throw ConfigError("scoring requested but no embeddings backend is configured");
                  }
                  auto record = en2ovp::translate_english(
                      input, lexicon_, *chat_,
                      {config_.topic_verbs, config_.synonyms_path.empty() ? nullptr : &synonyms_});
                  record.type = type;
                  if (score) {
                    const bool any_back = std::any_of(record.backwards.begin(),
                                                      record.backwards.end(),
                                                      [](const auto& b) { return !b.empty(); });
                    if (!any_back) {
                      throw HttpError{502, "every backwards translation failed: " +
                                               record.errors.front()};
                    }
                    record = eval::score_record(std::move(record), *embeddings_);
                  }
                  history_->append(record);
                  send_json(res, 200, record.to_json());
                });
              });

  server.Get("/api/history", [this, retry](const httplib::Request& req, httplib::Response& res) {
    guarded(res, retry, [&] {
      const std::size_t limit = parse_count(req, "limit", 20);
      const std::size_t offset = parse_count(req, "offset", 0);
      if (limit > 1000) throw InputError("limit must be at most 1000");
      const auto page = history_->page(limit, offset);
      nlohmann::json records = nlohmann::json::array();
      for (const auto& r : page.records) records.push_back(r.to_json());
      send_json(res, 200,
                {{"total", page.total},
                 {"limit", limit},
                 {"offset", offset},
                 {"skipped", page.skipped},
                 {"records", records}});
    });
  });

  if (!config_.static_dir.empty()) {
    if (!server.set_mount_point("/", config_.static_dir.string())) {
      throw ConfigError("static_dir " + config_.static_dir.string() + " is not a directory");
    }
  }
}

bool Service::run() {
  server_ = std::make_unique<httplib::Server>();
  const int threads = config_.threads;
  server_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  register_routes(*server_);
  if (!server_->bind_to_port(config_.host, config_.port)) return false;
  std::cerr << "larb: serving on http://" << config_.host << ":" << config_.port << "\n";
  return server_->listen_after_bind();
}

void Service::stop() {
  if (server_) server_->stop();
}

}  // namespace larb::service
