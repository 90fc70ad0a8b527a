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

#include "larb/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "larb/error.hpp"

namespace larb::eval {
namespace {

void require_distinct(const std::vector<std::string>& v, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& s : v) {
    if (!seen.insert(s).second) {
      throw InputError(std::string(what) + " repeats '" + s + "'");
    }
  }
}

}  // namespace

double normalized_cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InputError("vector lengths differ: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) throw DegenerateInputError("cosine of a zero vector");
  // sqrt(na * nb) is exact when na == nb, so (v, v) gives exactly 1.
  const double cos = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
  return (cos + 1) / 2;
}

double average_displacement(const std::vector<std::string>& target,
                            const std::vector<std::string>& computed) {
  if (target.size() != computed.size()) throw InputError("rankings differ in length");
  require_distinct(target, "target ranking");
  require_distinct(computed, "computed ranking");
  if (target.empty()) return 0;
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < computed.size(); ++i) pos.emplace(computed[i], i);
  double total = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const auto it = pos.find(target[i]);
    if (it == pos.end()) throw InputError("'" + target[i] + "' missing from computed ranking");
    total += std::abs(static_cast<double>(i) - static_cast<double>(it->second));
  }
  return total / static_cast<double>(target.size());
}

double rbo(const std::vector<std::string>& a, const std::vector<std::string>& b, double p) {
  if (!(p > 0 && p < 1)) throw ParameterError("rbo persistence p must lie in (0, 1)");
  require_distinct(a, "ranking");
  require_distinct(b, "ranking");
  const auto& S = a.size() <= b.size() ? a : b;
  const auto& L = a.size() <= b.size() ? b : a;
  const std::size_t s = S.size();
  const std::size_t l = L.size();
  if (l == 0) return 1;
  if (s == 0) return 0;

  // X_d = |S[:min(d, s)] ∩ L[:d]|, tracked incrementally.
  std::unordered_set<std::string> seen_s, seen_l;
  std::vector<double> X(l + 1, 0);
  double overlap = 0;
  for (std::size_t d = 1; d <= l; ++d) {
    const auto& y = L[d - 1];
    if (seen_s.count(y)) ++overlap;
    seen_l.insert(y);
    if (d <= s) {
      const auto& x = S[d - 1];
      if (seen_l.count(x)) ++overlap;
      seen_s.insert(x);
    }
    X[d] = overlap;
  }

  const double Xs = X[s];
  double sum = 0;
  double pd = 1;
  for (std::size_t d = 1; d <= l; ++d) {
    pd *= p;
    sum += X[d] / static_cast<double>(d) * pd;
    if (d > s) {
      sum += Xs * static_cast<double>(d - s) / static_cast<double>(s * d) * pd;
    }
  }
  const double tail = ((X[l] - Xs) / static_cast<double>(l) + Xs / static_cast<double>(s)) * pd;
  return std::clamp((1 - p) / p * sum + tail, 0.0, 1.0);
}

MeanStd mean_std(std::span<const double> xs) {
  if (xs.empty()) return {};
  double sum = 0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double sq = 0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(xs.size()))};
}

}  // namespace larb::eval
