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

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vsp::assess {

// Polarity of one utterance in [0, 1]; 0.5 is neutral.
class SentimentScorer {
 public:
  virtual ~SentimentScorer() = default;
  virtual double score(std::string_view text) const = 0;
};

class ConstantSentiment : public SentimentScorer {
 public:
  explicit ConstantSentiment(double value) : value_(value) {}
  double score(std::string_view) const override { return value_; }

 private:
  double value_;
};

// pos / (pos + neg) over word hits, 0.5 when neither list hits. Latin words
// match whole tokens (ASCII case-folded); CJK words match as substrings.
class LexiconSentiment : public SentimentScorer {
 public:
  LexiconSentiment();  // built-in English and Chinese lists
  LexiconSentiment(std::vector<std::string> positive, std::vector<std::string> negative);

  // One word per line; blank lines and '#' comments ignored.
  static LexiconSentiment from_files(const std::string& positive_path,
                                     const std::string& negative_path);

  double score(std::string_view text) const override;

 private:
  struct Words {
    std::set<std::string, std::less<>> latin;
    std::vector<std::string> cjk;
  };
  static Words split_words(std::vector<std::string> words);
  std::size_t hits(const Words& words, std::string_view text) const;

  Words positive_;
  Words negative_;
};

}  // namespace vsp::assess
