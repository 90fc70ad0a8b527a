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

#include <span>
#include <string>
#include <vector>

namespace larb::eval {

/// (cos(a, b) + 1) / 2. Throws InputError on a length mismatch and
/// DegenerateInputError on a zero vector.
double normalized_cosine(std::span<const double> a, std::span<const double> b);

/// Mean |position in target - position in computed| over all elements.
/// Both orders must hold the same elements without repeats (InputError).
double average_displacement(const std::vector<std::string>& target,
                            const std::vector<std::string>& computed);

inline constexpr double kDefaultRboP = 0.9;

/// Extrapolated rank-biased overlap (Webber, Moffat & Zobel 2010, eq. 32),
/// which handles rankings of different lengths. Throws ParameterError unless
/// 0 < p < 1, InputError on repeated elements. Two empty rankings score 1.
double rbo(const std::vector<std::string>& a, const std::vector<std::string>& b,
           double p = kDefaultRboP);

struct MeanStd {
  double mean = 0;
  double std = 0;  // population
};
MeanStd mean_std(std::span<const double> xs);

}  // namespace larb::eval
