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

#include "vsp/eval/statistics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace vsp::eval {
namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void check_pair(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DegenerateInputError("correlation inputs differ in length");
  if (x.size() < 3) throw DegenerateInputError("correlation needs at least 3 pairs");
}

}  // namespace

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    // Positions i..j (0-based) share the mean of ranks i+1..j+1.
    const double r = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

Correlation pearson(const std::vector<double>& x, const std::vector<double>& y) {
  check_pair(x, y);
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInputError("constant correlation input");
  Correlation c;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(x.size()) - 2.0;
  if (std::abs(c.r) >= 1.0) {
    c.p = 0.0;
  } else {
    const double t = c.r * std::sqrt(df / (1.0 - c.r * c.r));
    boost::math::students_t dist(df);
    c.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  }
  return c;
}

Correlation spearman(const std::vector<double>& x, const std::vector<double>& y) {
  check_pair(x, y);
  return pearson(average_ranks(x), average_ranks(y));
}

WilcoxonResult wilcoxon_rank_sum_one_sided(const std::vector<double>& a,
                                           const std::vector<double>& b,
                                           const WilcoxonOptions& options) {
  if (a.empty() || b.empty()) throw std::invalid_argument("wilcoxon needs two non-empty samples");
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t total = n + m;
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = average_ranks(pooled);

  WilcoxonResult result;
  result.rank_sum = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(n), 0.0);
  result.u = result.rank_sum - static_cast<double>(n * (n + 1)) / 2.0;

  const double expected = static_cast<double>(n) * static_cast<double>(total + 1) / 2.0;
  double tie_term = 0.0;
  {
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
  }
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  const double nt = static_cast<double>(total);
  const double variance =
      total > 1 ? nn * mm / 12.0 * ((nt + 1.0) - tie_term / (nt * (nt - 1.0))) : 0.0;
  const double sd = variance > 0.0 ? std::sqrt(variance) : 0.0;
  result.z = sd > 0.0 ? (result.rank_sum - expected) / sd : 0.0;

  const bool use_exact = options.mode == WilcoxonMode::kExact ||
                         (options.mode == WilcoxonMode::kAuto && total <= options.exact_limit);
  result.exact = use_exact;
  if (use_exact) {
    // Midranks are multiples of 1/2, so doubled ranks are integers. ways[k][s]
    // counts k-subsets of the pooled ranks with doubled sum s.
    std::vector<long> twice(total);
    long max_sum = 0;
    for (std::size_t i = 0; i < total; ++i) {
      twice[i] = std::lround(ranks[i] * 2.0);
      max_sum += twice[i];
    }
    std::vector<std::vector<double>> ways(n + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t k = std::min(n, i + 1); k >= 1; --k) {
        for (long s = max_sum; s >= twice[i]; --s) ways[k][s] += ways[k - 1][s - twice[i]];
      }
    }
    const long observed = std::lround(result.rank_sum * 2.0);
    double at_least = 0.0, all = 0.0;
    for (long s = 0; s <= max_sum; ++s) {
      all += ways[n][s];
      if (s >= observed) at_least += ways[n][s];
    }
    result.p = at_least / all;
    return result;
  }
  if (sd == 0.0) {
    // Every value tied: no evidence either way.
    result.p = options.continuity_correction ? 1.0 : 0.5;
    return result;
  }
  const double shift = options.continuity_correction ? 0.5 : 0.0;
  const double z = (result.rank_sum - expected - shift) / sd;
  boost::math::normal standard;
  result.p = boost::math::cdf(boost::math::complement(standard, z));
  return result;
}

}  // namespace vsp::eval
