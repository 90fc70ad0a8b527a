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

#include "larb/eval/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "larb/error.hpp"
#include "larb/eval/dataset.hpp"

namespace larb::eval {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

// Embeds the distinct texts once; lookup by text afterwards.
class EmbeddingTable {
 public:
  EmbeddingTable(const std::vector<std::string>& texts, EmbeddingBackend& backend) {
    std::vector<std::string> unique;
    for (const auto& t : texts) {
      if (index_.emplace(t, unique.size()).second) unique.push_back(t);
    }
    vectors_ = embed(unique, backend);
  }

  const std::vector<double>& operator[](const std::string& text) const {
    return vectors_.at(index_.at(text)).values;
  }

  double similarity(const std::string& a, const std::string& b) const {
    return normalized_cosine((*this)[a], (*this)[b]);
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<EmbeddingVector> vectors_;
};

}  // namespace

RankingBenchmark benchmark_from_json(const nlohmann::json& j) {
  RankingBenchmark out;
  try {
    out.name = j.value("name", "");
    for (const auto& c : j.at("cases")) {
      RankingCase rc{c.at("base").get<std::string>(),
                     c.at("candidates").get<std::vector<std::string>>()};
      if (rc.candidates.size() < 2) {
        throw InputError("benchmark case '" + rc.base + "' needs at least two candidates");
      }
      if (std::set<std::string>(rc.candidates.begin(), rc.candidates.end()).size() !=
          rc.candidates.size()) {
        throw InputError("benchmark case '" + rc.base + "' repeats a candidate");
      }
      out.cases.push_back(std::move(rc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad benchmark: ") + e.what());
  }
  if (out.cases.empty()) throw InputError("benchmark has no cases");
  return out;
}

RankingBenchmark load_benchmark(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open benchmark " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  auto b = benchmark_from_json(j);
  if (b.name.empty()) b.name = path.stem().string();
  return b;
}

nlohmann::json RankingReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cases) {
    cs.push_back({{"base", c.base},
                  {"computed", c.computed},
                  {"displacement", c.displacement},
                  {"rbo", c.rbo}});
  }
  return {{"model", model_name},
          {"p", p},
          {"displacement", {{"mean", displacement.mean}, {"std", displacement.std}}},
          {"rbo", {{"mean", rbo.mean}, {"std", rbo.std}}},
          {"cases", cs}};
}

std::string RankingReport::to_tsv() const {
  return "model\tdisplacement_mean\tdisplacement_std\trbo_mean\trbo_std\n" + model_name + "\t" +
         fmt(displacement.mean) + "\t" + fmt(displacement.std) + "\t" + fmt(rbo.mean) + "\t" +
         fmt(rbo.std) + "\n";
}

RankingReport evaluate_rankings(const RankingBenchmark& benchmark, const CaseScorer& scorer,
                                double p) {
  if (!(p > 0 && p < 1)) throw ParameterError("rbo persistence p must lie in (0, 1)");
  RankingReport report;
  report.p = p;
  std::vector<double> disp, overlap;
  for (const auto& c : benchmark.cases) {
    const auto scores = scorer(c.base, c.candidates);
    if (scores.size() != c.candidates.size()) {
      throw InputError("scorer returned the wrong number of scores for '" + c.base + "'");
    }
    std::vector<std::size_t> order(c.candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    CaseResult r;
    r.base = c.base;
    for (std::size_t i : order) r.computed.push_back(c.candidates[i]);
    r.displacement = average_displacement(c.candidates, r.computed);
    r.rbo = rbo(c.candidates, r.computed, p);
    disp.push_back(r.displacement);
    overlap.push_back(r.rbo);
    report.cases.push_back(std::move(r));
  }
  report.displacement = mean_std(disp);
  report.rbo = mean_std(overlap);
  return report;
}

RankingReport evaluate_embedding_model(const RankingBenchmark& benchmark,
                                       EmbeddingBackend& backend, double p) {
  std::vector<std::string> texts;
  for (const auto& c : benchmark.cases) {
    texts.push_back(c.base);
    texts.insert(texts.end(), c.candidates.begin(), c.candidates.end());
  }
  const EmbeddingTable table(texts, backend);
  auto report = evaluate_rankings(
      benchmark,
      [&](const std::string& base, const std::vector<std::string>& candidates) {
        std::vector<double> s;
        for (const auto& c : candidates) s.push_back(table.similarity(base, c));
        return s;
      },
      p);
  report.model_name = backend.model_name();
  return report;
}

nlohmann::json BaselineStats::to_json() const {
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& b : histogram) hist.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  return {{"model", model_name}, {"sentences", sentences}, {"pairs", pairs},
          {"mean", mean},        {"std", std},             {"threshold", threshold()},
          {"histogram", hist}};
}

std::string BaselineStats::histogram_tsv() const {
  std::string out = "lo\thi\tcount\n";
  for (const auto& b : histogram) {
    out += fmt(b.lo) + "\t" + fmt(b.hi) + "\t" + std::to_string(b.count) + "\n";
  }
  return out;
}

BaselineStats baseline(const std::vector<std::string>& sentences, EmbeddingBackend& backend,
                       std::size_t bins) {
  if (sentences.size() < 2) throw InputError("baseline needs at least two sentences");
  if (bins == 0) throw ParameterError("histogram needs at least one bin");
  const EmbeddingTable table(sentences, backend);
  std::vector<double> scores;
  scores.reserve(sentences.size() * (sentences.size() - 1) / 2);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (std::size_t j = i + 1; j < sentences.size(); ++j) {
      scores.push_back(table.similarity(sentences[i], sentences[j]));
    }
  }
  BaselineStats out;
  out.model_name = backend.model_name();
  out.sentences = sentences.size();
  out.pairs = scores.size();
  const auto ms = mean_std(scores);
  out.mean = ms.mean;
  out.std = ms.std;
  const double width = 1.0 / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out.histogram.push_back({b * width, (b + 1) * width, 0});
  }
  for (double s : scores) {
    const auto b = std::min(bins - 1, static_cast<std::size_t>(s / width));
    ++out.histogram[b].count;
  }
  return out;
}

double sentence_set_similarity(const std::string& reference,
                               const std::vector<std::string>& set, EmbeddingBackend& backend) {
  if (set.empty()) throw InputError("cannot score against an empty sentence set");
  const auto v = embed({reference, join(set)}, backend);
  return normalized_cosine(v[0].values, v[1].values);
}

en2ovp::TranslationRecord score_record(en2ovp::TranslationRecord record,
                                       EmbeddingBackend& backend) {
  if (!record.consistent() || record.simples.empty()) {
    throw InputError("record has no simple sentences to score");
  }
  std::vector<std::string> backs;
  for (const auto& b : record.backwards) {
    if (!b.empty()) backs.push_back(b);
  }
  if (backs.empty()) throw InputError("record has no backwards translations to score");
  const std::vector<std::string> texts{record.input, join(record.simple_english),
                                       join(record.comparators), join(backs)};
  const auto v = embed(texts, backend);
  record.scores = en2ovp::Scores{normalized_cosine(v[0].values, v[1].values),
                                 normalized_cosine(v[0].values, v[2].values),
                                 normalized_cosine(v[0].values, v[3].values)};
  record.embedding_model = backend.model_name();
  return record;
}

std::string ByTypeReport::to_tsv() const {
  std::string out = "model\ttype\trecords\tsimple\tcomparator\tbackwards\tmean\n";
  for (const auto& r : rows) {
    out += r.model + "\t" + r.type + "\t" + std::to_string(r.records) + "\t" + fmt(r.simple) +
           "\t" + fmt(r.comparator) + "\t" + fmt(r.backwards) + "\t" + fmt(r.mean) + "\n";
  }
  return out;
}

ByTypeReport summarize_by_type(const std::vector<en2ovp::TranslationRecord>& records) {
  std::vector<std::string> models;
  std::map<std::pair<std::string, std::string>, std::vector<en2ovp::Scores>> groups;
  for (const auto& r : records) {
    if (!is_sentence_type(r.type)) {
      throw InputError("record '" + r.input + "' has unknown sentence type '" + r.type + "'");
    }
    if (!r.scores) throw InputError("record '" + r.input + "' is not scored");
    if (std::find(models.begin(), models.end(), r.model_name) == models.end()) {
      models.push_back(r.model_name);
    }
    groups[{r.model_name, r.type}].push_back(*r.scores);
  }
  ByTypeReport out;
  for (const auto& model : models) {
    for (std::string_view type : kSentenceTypes) {
      const auto it = groups.find({model, std::string(type)});
      if (it == groups.end()) {
        out.warnings.push_back("no records for model " + model + ", type " + std::string(type));
        continue;
      }
      TypeSummary row{model, std::string(type), it->second.size()};
      for (const auto& s : it->second) {
        row.simple += s.simple;
        row.comparator += s.comparator;
        row.backwards += s.backwards;
      }
      const double n = static_cast<double>(row.records);
      row.simple /= n;
      row.comparator /= n;
      row.backwards /= n;
      row.mean = (row.simple + row.comparator + row.backwards) / 3;
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace larb::eval
