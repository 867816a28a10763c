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

#include "vsp/graph/graph_io.h"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "vsp/common/text.h"

namespace vsp::graph {
namespace {

std::string escape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape(std::string_view field, std::size_t line) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\') {
      out.push_back(field[i]);
      continue;
    }
    if (++i >= field.size()) throw FormatError(line, "dangling backslash");
    switch (field[i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: throw FormatError(line, "unknown escape sequence");
    }
  }
  return out;
}

}  // namespace

std::string serialize(const CaseGraph& graph) {
  std::ostringstream out;
  out << kGraphFileMagic << '\t' << escape(graph.case_id()) << '\n';
  for (const auto& [id, node] : graph.nodes()) {
    out << "N\t" << escape(node.id) << '\t' << to_string(node.kind) << '\t'
        << (node.entity_class ? to_string(*node.entity_class) : "-") << '\t'
        << escape(node.label) << '\n';
  }
  for (const Triple& t : graph.triples()) {
    out << "S\t" << escape(t.subject) << '\t' << escape(t.predicate) << '\t'
        << escape(t.object) << '\t' << to_string(t.provenance) << '\n';
  }
  return out.str();
}

CaseGraph deserialize(std::string_view text, PredicatePolicy policy) {
  CaseGraph graph(std::string(), std::move(policy));
  std::vector<std::pair<std::size_t, Triple>> triples;
  std::map<std::string, std::size_t> node_lines;

  std::size_t line_no = 0;
  for (std::string line : text::split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line_no == 1 && line.starts_with(kGraphFileMagic)) {
        const std::string rest = line.substr(kGraphFileMagic.size());
        if (!rest.empty()) {
          if (rest[0] != '\t') throw FormatError(line_no, "malformed header");
          graph.set_case_id(unescape(rest.substr(1), line_no));
        }
      }
      continue;
    }
    const std::vector<std::string> fields = text::split(line, '\t');
    if (fields[0] == "N") {
      if (fields.size() != 5) {
        throw FormatError(line_no, "node record needs 5 fields");
      }
      Node node;
      node.id = unescape(fields[1], line_no);
      const auto kind = parse_node_kind(fields[2]);
      if (!kind) throw FormatError(line_no, "unknown node kind '" + fields[2] + "'");
      node.kind = *kind;
      if (fields[3] != "-") {
        node.entity_class = parse_entity_class(fields[3]);
        if (!node.entity_class) {
          throw FormatError(line_no, "unknown entity class '" + fields[3] + "'");
        }
      }
      node.label = unescape(fields[4], line_no);
      if (node_lines.contains(node.id)) {
        throw FormatError(line_no, "duplicate node id '" + node.id + "'");
      }
      try {
        graph.add_node(node);
      } catch (const GraphError& e) {
        throw FormatError(line_no, e.what());
      }
      node_lines.emplace(node.id, line_no);
    } else if (fields[0] == "S") {
      if (fields.size() != 5) {
        throw FormatError(line_no, "triple record needs 5 fields");
      }
      const auto provenance = parse_provenance(fields[4]);
      if (!provenance) {
        throw FormatError(line_no, "unknown provenance '" + fields[4] + "'");
      }
      triples.emplace_back(line_no, Triple{unescape(fields[1], line_no),
                                           unescape(fields[2], line_no),
                                           unescape(fields[3], line_no),
                                           *provenance});
    } else {
      throw FormatError(line_no, "unknown record type '" + fields[0] + "'");
    }
  }

  for (const auto& [at, triple] : triples) {
    try {
      graph.insert_triple(triple);
    } catch (const GraphError& e) {
      throw FormatError(at, e.what());
    }
  }
  std::map<std::string, bool> literal_used;
  for (const Triple& t : graph.triples()) literal_used[t.object] = true;
  for (const auto& [id, node] : graph.nodes()) {
    if (node.kind == NodeKind::kLiteral && !literal_used.contains(id)) {
      throw FormatError(node_lines.at(id),
                        "literal '" + id + "' is not the object of a triple");
    }
  }
  return graph;
}

CaseGraph read_graph_file(const std::string& path, PredicatePolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str(), std::move(policy));
}

void write_graph_file(const std::string& path, const CaseGraph& graph) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write graph file " + path);
  out << serialize(graph);
  if (!out) throw std::runtime_error("failed writing graph file " + path);
}

}  // namespace vsp::graph
