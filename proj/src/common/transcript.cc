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

#include "vsp/common/transcript.h"

#include <fstream>
#include <sstream>

#include "vsp/common/text.h"

namespace vsp {

std::string_view to_string(Speaker speaker) {
  return speaker == Speaker::kStudent ? "student" : "patient";
}

nlohmann::json to_json(const Turn& turn) {
  nlohmann::json out = {{"speaker", to_string(turn.speaker)},
                        {"text", turn.text},
                        {"timestamp", turn.timestamp_ms}};
  if (turn.evidence_used) out["evidence_used"] = *turn.evidence_used;
  return out;
}

Turn turn_from_json(const nlohmann::json& value) {
  if (!value.is_object()) throw std::invalid_argument("turn must be an object");
  Turn turn;
  const std::string speaker = value.at("speaker").get<std::string>();
  if (speaker == "student" || speaker == "doctor") {
    turn.speaker = Speaker::kStudent;
  } else if (speaker == "patient") {
    turn.speaker = Speaker::kPatient;
  } else {
    throw std::invalid_argument("unknown speaker '" + speaker + "'");
  }
  turn.text = value.at("text").get<std::string>();
  if (turn.text.empty()) throw std::invalid_argument("turn text is empty");
  if (auto it = value.find("timestamp"); it != value.end()) {
    turn.timestamp_ms = it->get<std::int64_t>();
  }
  if (auto it = value.find("evidence_used");
      it != value.end() && !it->is_null()) {
    turn.evidence_used = it->get<std::string>();
  }
  return turn;
}

std::string turn_to_jsonl(const Turn& turn) {
  return to_json(turn).dump() + "\n";
}

std::string to_jsonl(const Transcript& transcript) {
  std::string out;
  for (const Turn& turn : transcript) out += turn_to_jsonl(turn);
  return out;
}

Transcript parse_jsonl(std::string_view text) {
  Transcript transcript;
  std::size_t line_no = 0;
  for (const std::string& raw : text::split(text, '\n')) {
    ++line_no;
    const std::string line = text::trim(raw);
    if (line.empty()) continue;
    try {
      transcript.push_back(turn_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw TranscriptFormatError(line_no, e.what());
    }
  }
  return transcript;
}

Transcript read_transcript_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open transcript " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_jsonl(buf.str());
}

}  // namespace vsp
