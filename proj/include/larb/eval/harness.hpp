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

// Similarity scoring of translations and the benchmarks used to choose an
// embeddings model.

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "larb/eval/embeddings.hpp"
#include "larb/eval/metrics.hpp"
#include "larb/pipeline/en2ovp.hpp"

namespace larb::eval {

struct RankingCase {
  std::string base;
  std::vector<std::string> candidates;  // most to least similar
};

struct RankingBenchmark {
  std::string name;
  std::vector<RankingCase> cases;
};

/// {"name": ..., "cases": [{"base": ..., "candidates": [...]}]}. Each case
/// needs two or more distinct candidates (InputError).
RankingBenchmark load_benchmark(const std::filesystem::path& path);
RankingBenchmark benchmark_from_json(const nlohmann::json& j);

struct CaseResult {
  std::string base;
  std::vector<std::string> computed;  // candidates by descending score
  double displacement = 0;
  double rbo = 0;
};

struct RankingReport {
  std::string model_name;
  double p = kDefaultRboP;
  std::vector<CaseResult> cases;
  MeanStd displacement;
  MeanStd rbo;

  nlohmann::json to_json() const;
  /// One header line and one row: model, displacement mean/std, RBO mean/std.
  std::string to_tsv() const;
};

/// Scores every candidate of a case against its base.
using CaseScorer =
    std::function<std::vector<double>(const std::string& base, const std::vector<std::string>&)>;

/// Ranks candidates by descending score (ties keep candidate order) and
/// compares with the ground truth.
RankingReport evaluate_rankings(const RankingBenchmark& benchmark, const CaseScorer& scorer,
                                double p = kDefaultRboP);

/// evaluate_rankings with normalized cosine between embeddings. Every
/// distinct text is embedded once.
RankingReport evaluate_embedding_model(const RankingBenchmark& benchmark,
                                       EmbeddingBackend& backend, double p = kDefaultRboP);

struct HistogramBin {
  double lo = 0;
  double hi = 0;
  std::size_t count = 0;
};

struct BaselineStats {
  std::string model_name;
  std::size_t sentences = 0;
  std::size_t pairs = 0;
  double mean = 0;
  double std = 0;  // population
  std::vector<HistogramBin> histogram;  // equal-width bins over [0, 1]

  /// mean + 3 std: scores above it are unlikely between unrelated sentences.
  double threshold() const { return mean + 3 * std; }

  nlohmann::json to_json() const;
  /// "lo\thi\tcount" lines under a header.
  std::string histogram_tsv() const;
};

/// Normalized cosine over all unordered pairs of distinct positions.
/// Throws InputError for fewer than two sentences.
BaselineStats baseline(const std::vector<std::string>& sentences, EmbeddingBackend& backend,
                       std::size_t bins = 20);

/// Similarity between `reference` and the members of `set` joined by single
/// spaces. Throws InputError on an empty set.
double sentence_set_similarity(const std::string& reference,
                               const std::vector<std::string>& set, EmbeddingBackend& backend);

/// Fills record.scores: input against the simple sentences, the comparators
/// and the backwards translations. Items whose backwards translation failed
/// are left out of the backwards set; if none succeeded, throws InputError.
en2ovp::TranslationRecord score_record(en2ovp::TranslationRecord record,
                                       EmbeddingBackend& backend);

struct TypeSummary {
  std::string model;
  std::string type;
  std::size_t records = 0;
  double simple = 0;
  double comparator = 0;
  double backwards = 0;
  double mean = 0;  // over all three scores
};

struct ByTypeReport {
  std::vector<TypeSummary> rows;      // model order of first appearance, then type order
  std::vector<std::string> warnings;  // (model, type) pairs without records

  std::string to_tsv() const;
};

/// Mean scores per (model, sentence type). Records must be scored and carry
/// one of the five sentence types (InputError otherwise).
ByTypeReport summarize_by_type(const std::vector<en2ovp::TranslationRecord>& records);

}  // namespace larb::eval
