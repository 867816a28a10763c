// Copyright 2026 The VSP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <vector>

namespace vsp::eval {

class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Correlation {
  double r = 0.0;
  double p = 1.0;  // two-sided, t distribution with n - 2 degrees of freedom
};

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& values);

// Throws DegenerateInputError for unequal lengths, n < 3 or a constant input.
Correlation pearson(const std::vector<double>& x, const std::vector<double>& y);
// Pearson on average ranks.
Correlation spearman(const std::vector<double>& x, const std::vector<double>& y);

enum class WilcoxonMode { kAuto, kExact, kNormal };

struct WilcoxonOptions {
  WilcoxonMode mode = WilcoxonMode::kAuto;
  // Auto picks exact enumeration when n + m <= this.
  std::size_t exact_limit = 12;
  // Normal mode only: z = (R - E[R] - 0.5) / sd instead of (R - E[R]) / sd.
  bool continuity_correction = true;
};

struct WilcoxonResult {
  double u = 0.0;         // rank sum of a minus n(n + 1) / 2
  double rank_sum = 0.0;  // of a, midranks
  double z = 0.0;         // uncorrected standardised rank sum (0 if variance is 0)
  double p = 1.0;         // one-sided, H1: a tends to be larger than b
  bool exact = false;
};

// Exact p = P(R >= observed) over all C(n + m, n) assignments of the pooled
// midranks. Normal variance uses the tie correction. Throws
// std::invalid_argument when either sample is empty.
WilcoxonResult wilcoxon_rank_sum_one_sided(const std::vector<double>& a,
                                           const std::vector<double>& b,
                                           const WilcoxonOptions& options = {});

}  // namespace vsp::eval
