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

#include "larb/eval/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>

#include "larb/error.hpp"
#include "larb/eval/harness.hpp"
#include "larb/text/unicode.hpp"

namespace larb::eval {
namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void add_feature(std::vector<double>& v, std::string_view feature, double weight) {
  const std::uint64_t h = fnv1a(feature, 0);
  // Last slot is the bias component.
  const std::size_t slot = h % (v.size() - 1);
  v[slot] += (h >> 63) ? weight : -weight;
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text::lower(text)) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80 || c == '\'') {
      cur += c;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

net::ClientOptions client_options(const llm::BackendConfig& c) {
  c.validate();
  if (c.base_url.empty()) throw ConfigError("live embeddings backend needs base_url");
  if (c.model_name.empty()) throw ConfigError("live embeddings backend needs a model name");
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

std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts,
                                   EmbeddingBackend& backend) {
  if (texts.empty()) throw InputError("nothing to embed");
  auto raw = backend.embed_texts(texts);
  if (raw.size() != texts.size()) {
    throw BackendError(200, "embeddings reply has " + std::to_string(raw.size()) +
                                " vectors for " + std::to_string(texts.size()) + " inputs");
  }
  const std::size_t dim = raw.front().size();
  std::vector<EmbeddingVector> out;
  out.reserve(raw.size());
  const std::string model = backend.model_name();
  for (auto& v : raw) {
    if (v.empty() || v.size() != dim) throw BackendError(200, "embedding lengths differ");
    if (!std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); })) {
      throw BackendError(200, "embedding has non-finite entries");
    }
    out.push_back({std::move(v), model});
  }
  return out;
}

std::vector<double> MockEmbeddingBackend::vectorize(std::string_view text) {
  std::vector<double> v(kDimensions, 0.0);
  for (const auto& w : words(text)) {
    add_feature(v, "w:" + w, 1.0);
    const std::string padded = " " + w + " ";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      add_feature(v, "c:" + padded.substr(i, 3), 0.35);
    }
  }
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0) {
    for (double& x : v) x /= norm;
  }
  v.back() = 0.6;
  return v;
}

std::vector<std::vector<double>> MockEmbeddingBackend::embed_texts(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(vectorize(t));
  return out;
}

OracleEmbeddingBackend::OracleEmbeddingBackend(const RankingBenchmark& benchmark) {
  // Axis per case for the base, then one private axis per candidate text.
  // Candidate i of n has weight (n - i) / (n + 1) on its case axis, scaled
  // by 1/sqrt(m) where m is the most cases any text appears in, and the
  // private axis tops its norm up to 1.
  std::set<std::string> bases;
  std::map<std::string, std::vector<std::pair<std::size_t, double>>> weights;
  std::size_t max_cases = 1;
  for (std::size_t k = 0; k < benchmark.cases.size(); ++k) {
    const auto& c = benchmark.cases[k];
    if (!bases.insert(c.base).second) {
      throw ConfigError("oracle embeddings need distinct base sentences ('" + c.base + "')");
    }
    const double n = static_cast<double>(c.candidates.size());
    for (std::size_t i = 0; i < c.candidates.size(); ++i) {
      auto& w = weights[c.candidates[i]];
      w.emplace_back(k, (n - static_cast<double>(i)) / (n + 1));
      max_cases = std::max(max_cases, w.size());
    }
  }
  for (const auto& b : bases) {
    if (weights.count(b)) throw ConfigError("oracle embeddings: '" + b + "' is base and candidate");
  }
  const std::size_t ncases = benchmark.cases.size();
  dimensions_ = ncases + weights.size() + 1;
  for (std::size_t k = 0; k < ncases; ++k) {
    std::vector<double> v(dimensions_, 0.0);
    v[k] = 1;
    table_[benchmark.cases[k].base] = std::move(v);
  }
  std::size_t axis = ncases;
  const double scale = 1 / std::sqrt(static_cast<double>(max_cases));
  for (const auto& [text, ws] : weights) {
    std::vector<double> v(dimensions_, 0.0);
    double sq = 0;
    for (const auto& [k, w] : ws) {
      v[k] = w * scale;
      sq += v[k] * v[k];
    }
    v[axis++] = std::sqrt(std::max(0.0, 1 - sq));
    table_[text] = std::move(v);
  }
}

std::vector<std::vector<double>> OracleEmbeddingBackend::embed_texts(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<double>> out;
  for (const auto& t : texts) {
    const auto it = table_.find(t);
    if (it != table_.end()) {
      out.push_back(it->second);
    } else {
      // Unknown text: orthogonal to everything in the benchmark.
      std::vector<double> v(dimensions_, 0.0);
      v.back() = 1;
      out.push_back(std::move(v));
    }
  }
  return out;
}

HttpEmbeddingBackend::HttpEmbeddingBackend(llm::BackendConfig config, int batch_size)
    : config_(std::move(config)), batch_size_(batch_size), client_(client_options(config_)) {
  if (batch_size_ < 1) throw ConfigError("embeddings batch_size must be positive");
}

std::vector<std::vector<double>> HttpEmbeddingBackend::embed_texts(
    const std::vector<std::string>& texts) {
  const std::size_t step = static_cast<std::size_t>(batch_size_);
  std::vector<std::future<std::vector<std::vector<double>>>> batches;
  for (std::size_t start = 0; start < texts.size(); start += step) {
    const std::vector<std::string> chunk(
        texts.begin() + static_cast<std::ptrdiff_t>(start),
        texts.begin() + static_cast<std::ptrdiff_t>(std::min(texts.size(), start + step)));
    batches.push_back(std::async(std::launch::async, [this, chunk] {
      const auto reply =
          client_.post("/embeddings", {{"model", config_.model_name}, {"input", chunk}});
      std::vector<std::vector<double>> out(chunk.size());
      try {
        const auto& data = reply.at("data");
        if (data.size() != chunk.size()) throw BackendError(200, "embeddings count mismatch");
        for (std::size_t i = 0; i < data.size(); ++i) {
          const std::size_t index = data[i].value("index", i);
          if (index >= out.size()) throw BackendError(200, "embeddings index out of range");
          out[index] = data[i].at("embedding").get<std::vector<double>>();
        }
      } catch (const nlohmann::json::exception&) {
        throw BackendError(200, "malformed embeddings reply: " + reply.dump().substr(0, 160));
      }
      return out;
    }));
  }
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (auto& f : batches) {
    for (auto& v : f.get()) out.push_back(std::move(v));
  }
  return out;
}

std::shared_ptr<EmbeddingBackend> make_embedding_backend(std::string_view kind,
                                                         const llm::BackendConfig& config,
                                                         int batch_size) {
  if (kind == "mock") return std::make_shared<MockEmbeddingBackend>();
  if (kind == "live") return std::make_shared<HttpEmbeddingBackend>(config, batch_size);
  throw ConfigError("unknown embeddings backend '" + std::string(kind) + "' (use mock or live)");
}

}  // namespace larb::eval
