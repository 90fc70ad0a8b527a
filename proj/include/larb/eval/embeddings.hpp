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

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "larb/llm/chat.hpp"
#include "larb/net/json_client.hpp"

namespace larb::eval {

struct EmbeddingVector {
  std::vector<double> values;
  std::string model_name;
};

class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  /// One vector per text, in order. Must be safe to call concurrently.
  virtual std::vector<std::vector<double>> embed_texts(const std::vector<std::string>& texts) = 0;
  virtual std::string model_name() const = 0;
};

/// Checks the input is non-empty and the reply has one finite vector of a
/// single length per text. Throws InputError / BackendError.
std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts,
                                   EmbeddingBackend& backend);

/// Feature-hashed bag of words and character trigrams, plus a constant bias
/// component. Deterministic across runs and platforms.
class MockEmbeddingBackend : public EmbeddingBackend {
 public:
  static constexpr std::size_t kDimensions = 384;

  std::vector<std::vector<double>> embed_texts(const std::vector<std::string>& texts) override;
  std::string model_name() const override { return "mock-hash-384"; }

  static std::vector<double> vectorize(std::string_view text);
};

struct RankingBenchmark;

/// Embeds a ranking benchmark so that every case's candidates score in
/// strictly decreasing order of their ground-truth position. Texts outside
/// the benchmark get an orthogonal axis each. Throws ConfigError when a base
/// sentence is reused.
class OracleEmbeddingBackend : public EmbeddingBackend {
 public:
  explicit OracleEmbeddingBackend(const RankingBenchmark& benchmark);

  std::vector<std::vector<double>> embed_texts(const std::vector<std::string>& texts) override;
  std::string model_name() const override { return "oracle"; }

 private:
  std::map<std::string, std::vector<double>> table_;
  std::size_t dimensions_ = 0;
};

/// OpenAI-style POST /embeddings {"model", "input": [...]}. Inputs go out in
/// batches of `batch_size`, concurrently up to config.max_in_flight.
class HttpEmbeddingBackend : public EmbeddingBackend {
 public:
  explicit HttpEmbeddingBackend(llm::BackendConfig config, int batch_size = 64);

  std::vector<std::vector<double>> embed_texts(const std::vector<std::string>& texts) override;
  std::string model_name() const override { return config_.model_name; }

 private:
  llm::BackendConfig config_;
  int batch_size_;
  net::JsonClient client_;
};

/// "mock" or "live".
std::shared_ptr<EmbeddingBackend> make_embedding_backend(std::string_view kind,
                                                         const llm::BackendConfig& config,
                                                         int batch_size = 64);

}  // namespace larb::eval
