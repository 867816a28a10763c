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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vsp {

// The student is the inquiring party (a human trainee or a virtual doctor).
enum class Speaker { kStudent, kPatient };

std::string_view to_string(Speaker speaker);

struct Turn {
  Speaker speaker = Speaker::kStudent;
  std::string text;
  std::int64_t timestamp_ms = 0;
  std::optional<std::string> evidence_used;

  friend bool operator==(const Turn&, const Turn&) = default;
};

using Transcript = std::vector<Turn>;

class TranscriptFormatError : public std::runtime_error {
 public:
  TranscriptFormatError(std::size_t line, const std::string& message)
      : std::runtime_error("transcript line " + std::to_string(line) + ": " +
                           message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

nlohmann::json to_json(const Turn& turn);
// Accepts "doctor" as a synonym for "student".
Turn turn_from_json(const nlohmann::json& value);

// One compact JSON object per line, newline-terminated.
std::string turn_to_jsonl(const Turn& turn);
std::string to_jsonl(const Transcript& transcript);
Transcript parse_jsonl(std::string_view text);

Transcript read_transcript_file(const std::string& path);

}  // namespace vsp
