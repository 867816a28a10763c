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

#include "vsp/assess/sentiment.h"

#include <fstream>
#include <stdexcept>

#include "vsp/common/text.h"

namespace vsp::assess {
namespace {

// Keep in sync with data/sentiment/*.txt.
const char* const kPositive[] = {
    "good",   "great",   "thank",    "thanks",   "please", "glad",    "happy",
    "better", "well",    "fine",     "kind",     "welcome", "hope",   "relief",
    "comfortable", "okay", "nice",   "appreciate", "gentle", "reassure",
    "谢谢",   "请",      "放心",     "舒服",     "不错",   "很好",    "别担心",
};
const char* const kNegative[] = {
    "bad",    "worse",   "worst",    "pain",     "painful", "hurt",   "sorry",
    "worry",  "worried", "afraid",   "terrible", "awful",  "sad",     "angry",
    "problem", "difficult", "unfortunately", "serious", "fear", "sick",
    "疼",     "痛",      "难受",     "担心",     "害怕",   "糟糕",    "严重",
};

std::vector<std::string> read_words(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = text::trim(line);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace

LexiconSentiment::LexiconSentiment()
    : LexiconSentiment(std::vector<std::string>(std::begin(kPositive), std::end(kPositive)),
                       std::vector<std::string>(std::begin(kNegative), std::end(kNegative))) {}

LexiconSentiment::LexiconSentiment(std::vector<std::string> positive,
                                   std::vector<std::string> negative)
    : positive_(split_words(std::move(positive))), negative_(split_words(std::move(negative))) {}

LexiconSentiment LexiconSentiment::from_files(const std::string& positive_path,
                                              const std::string& negative_path) {
  return LexiconSentiment(read_words(positive_path), read_words(negative_path));
}

LexiconSentiment::Words LexiconSentiment::split_words(std::vector<std::string> words) {
  Words out;
  for (auto& w : words) {
    w = text::trim(w);
    if (w.empty()) continue;
    if (text::contains_cjk(w)) {
      out.cjk.push_back(w);
    } else {
      out.latin.insert(text::to_lower_ascii(w));
    }
  }
  return out;
}

std::size_t LexiconSentiment::hits(const Words& words, std::string_view text) const {
  std::size_t n = 0;
  for (const auto& token : text::tokenize(text)) {
    if (!token.cjk && words.latin.count(text::to_lower_ascii(token.text))) ++n;
  }
  for (const auto& w : words.cjk) {
    for (auto at = text.find(w); at != std::string_view::npos; at = text.find(w, at + w.size())) {
      ++n;
    }
  }
  return n;
}

double LexiconSentiment::score(std::string_view text) const {
  const double pos = static_cast<double>(hits(positive_, text));
  const double neg = static_cast<double>(hits(negative_, text));
  if (pos + neg == 0.0) return 0.5;
  return pos / (pos + neg);
}

}  // namespace vsp::assess
