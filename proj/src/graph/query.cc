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

#include "vsp/graph/query.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "vsp/common/text.h"

namespace vsp::graph {
namespace {

// ---------------------------------------------------------------------------
// Lexer / parser

enum class TokenKind { kWord, kVariable, kString, kLBrace, kRBrace, kDot, kEnd };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;
};

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_delimiter(char c) {
  return is_ws(c) || c == '{' || c == '}' || c == '"';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && is_ws(text_[pos_])) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {TokenKind::kEnd, "", start};
    const char c = text_[pos_];
    if (c == '{') return single(TokenKind::kLBrace);
    if (c == '}') return single(TokenKind::kRBrace);
    if (c == '"') return quoted();
    // A lone dot, or a dot directly followed by a delimiter, separates
    // patterns.
    if (c == '.' && (pos_ + 1 >= text_.size() || is_delimiter(text_[pos_ + 1]))) {
      return single(TokenKind::kDot);
    }
    std::size_t end = pos_;
    while (end < text_.size() && !is_delimiter(text_[end])) ++end;
    // "?s." at the end of a pattern: the trailing dot is a separator.
    if (end - pos_ > 1 && text_[end - 1] == '.') --end;
    std::string word(text_.substr(pos_, end - pos_));
    pos_ = end;
    if (word[0] == '?') {
      if (word.size() == 1) throw ParseError(start, "empty variable name");
      return {TokenKind::kVariable, word.substr(1), start};
    }
    return {TokenKind::kWord, std::move(word), start};
  }

 private:
  Token single(TokenKind kind) {
    return {kind, std::string(1, text_[pos_]), pos_++};
  }

  Token quoted() {
    const std::size_t start = pos_++;
    std::string value;
    while (pos_ < text_.size()) {
      const char c = text_[pos_++];
      if (c == '"') return {TokenKind::kString, std::move(value), start};
      if (c == '\\') {
        if (pos_ >= text_.size()) break;
        const char esc = text_[pos_++];
        switch (esc) {
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          case '"': value.push_back('"'); break;
          case '\\': value.push_back('\\'); break;
          default:
            throw ParseError(pos_ - 2, std::string("unknown escape \\") + esc);
        }
        continue;
      }
      value.push_back(c);
    }
    throw ParseError(start, "unterminated string literal");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  Query parse() {
    Query query;
    expect_keyword("SELECT");
    while (current_.kind == TokenKind::kVariable) {
      query.select.push_back(current_.text);
      advance();
    }
    expect_keyword("WHERE");
    expect(TokenKind::kLBrace, "'{'");
    if (current_.kind == TokenKind::kRBrace) {
      throw ParseError(current_.position, "empty pattern block");
    }
    while (true) {
      query.patterns.push_back(parse_pattern());
      if (current_.kind == TokenKind::kDot) {
        advance();
        if (current_.kind == TokenKind::kRBrace) break;
        continue;
      }
      if (current_.kind == TokenKind::kRBrace) break;
      throw ParseError(current_.position, "expected '.' or '}'");
    }
    advance();  // '}'
    if (current_.kind != TokenKind::kEnd) {
      throw ParseError(current_.position, "unexpected text after '}'");
    }
    if (query.patterns.size() > kMaxPatterns) {
      throw ParseError(current_.position,
                       "at most " + std::to_string(kMaxPatterns) +
                           " patterns are supported");
    }
    return query;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  void expect_keyword(std::string_view keyword) {
    if (current_.kind != TokenKind::kWord ||
        text::to_lower_ascii(current_.text) != text::to_lower_ascii(keyword)) {
      throw ParseError(current_.position,
                       "expected " + std::string(keyword));
    }
    advance();
  }

  void expect(TokenKind kind, std::string_view what) {
    if (current_.kind != kind) {
      throw ParseError(current_.position, "expected " + std::string(what));
    }
    advance();
  }

  Term parse_term() {
    Term term;
    switch (current_.kind) {
      case TokenKind::kVariable:
        term = Term::variable(current_.text);
        break;
      case TokenKind::kWord:
      case TokenKind::kString:
        term = Term::constant(current_.text);
        break;
      default:
        throw ParseError(current_.position, "expected a term");
    }
    advance();
    return term;
  }

  TriplePattern parse_pattern() {
    TriplePattern pattern;
    pattern.subject = parse_term();
    pattern.predicate = parse_term();
    pattern.object = parse_term();
    return pattern;
  }

  Lexer lexer_;
  Token current_{TokenKind::kEnd, "", 0};
};

bool needs_quotes(const std::string& text) {
  if (text.empty() || text[0] == '?' || text.back() == '.') return true;
  return std::any_of(text.begin(), text.end(), [](char c) {
    return is_delimiter(c) || c == '\\';
  });
}

std::string render_term(const Term& term) {
  if (term.is_variable()) return "?" + term.text;
  if (!needs_quotes(term.text)) return term.text;
  std::string out = "\"";
  for (char c : term.text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

// ---------------------------------------------------------------------------
// Execution: backtracking join that always extends with the most
// constrained remaining pattern.

class Solver {
 public:
  Solver(const CaseGraph& graph, const Query& query)
      : graph_(graph), query_(query), used_(query.patterns.size(), false) {
    for (const auto& [id, node] : graph.nodes()) {
      ids_by_label_[node.label].push_back(id);
    }
  }

  template <typename OnSolution>
  void run(OnSolution&& on_solution) {
    chosen_.assign(query_.patterns.size(), nullptr);
    search(0, on_solution);
  }

  const std::map<std::string, std::string>& bindings() const {
    return bindings_;
  }
  const std::vector<const Triple*>& chosen() const { return chosen_; }

 private:
  bool node_constant_matches(const std::string& node_id,
                             const std::string& text) const {
    if (node_id == text) return true;
    const Node* node = graph_.find_node(node_id);
    return node != nullptr && node->label == text;
  }

  bool bound(const Term& term) const {
    return !term.is_variable() || bindings_.contains(term.text);
  }

  std::size_t pick_next() const {
    std::size_t best = query_.patterns.size();
    int best_score = -1;
    for (std::size_t i = 0; i < query_.patterns.size(); ++i) {
      if (used_[i]) continue;
      const TriplePattern& p = query_.patterns[i];
      const int score = (bound(p.subject) ? 2 : 0) + (bound(p.object) ? 2 : 0) +
                        (bound(p.predicate) ? 1 : 0);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }

  // Subject ids the pattern can start from, or nullopt for "any".
  std::optional<std::vector<std::string>> subject_candidates(
      const Term& subject) const {
    if (subject.is_variable()) {
      auto it = bindings_.find(subject.text);
      if (it == bindings_.end()) return std::nullopt;
      return std::vector<std::string>{it->second};
    }
    std::set<std::string> ids;
    if (graph_.has_node(subject.text)) ids.insert(subject.text);
    if (auto it = ids_by_label_.find(subject.text); it != ids_by_label_.end()) {
      ids.insert(it->second.begin(), it->second.end());
    }
    return std::vector<std::string>(ids.begin(), ids.end());
  }

  // Tries to unify one position; records new bindings in `added`.
  bool unify(const Term& term, const std::string& value, bool node_position,
             std::vector<std::string>& added) {
    if (!term.is_variable()) {
      return node_position ? node_constant_matches(value, term.text)
                           : value == term.text;
    }
    auto it = bindings_.find(term.text);
    if (it != bindings_.end()) return it->second == value;
    bindings_.emplace(term.text, value);
    added.push_back(term.text);
    return true;
  }

  template <typename OnSolution>
  void try_triple(std::size_t index, const Triple& triple, std::size_t depth,
                  OnSolution& on_solution) {
    const TriplePattern& p = query_.patterns[index];
    std::vector<std::string> added;
    const bool ok = unify(p.subject, triple.subject, true, added) &&
                    unify(p.predicate, triple.predicate, false, added) &&
                    unify(p.object, triple.object, true, added);
    if (ok) {
      chosen_[index] = &triple;
      search(depth + 1, on_solution);
      chosen_[index] = nullptr;
    }
    for (const std::string& name : added) bindings_.erase(name);
  }

  template <typename OnSolution>
  void search(std::size_t depth, OnSolution& on_solution) {
    if (depth == query_.patterns.size()) {
      on_solution(*this);
      return;
    }
    const std::size_t index = pick_next();
    used_[index] = true;
    const TriplePattern& p = query_.patterns[index];
    if (auto subjects = subject_candidates(p.subject)) {
      for (const std::string& s : *subjects) {
        for (auto it = graph_.triples().lower_bound(
                 Triple{s, std::string(), std::string()});
             it != graph_.triples().end() && it->subject == s; ++it) {
          try_triple(index, *it, depth, on_solution);
        }
      }
    } else {
      for (const Triple& t : graph_.triples()) {
        try_triple(index, t, depth, on_solution);
      }
    }
    used_[index] = false;
  }

  const CaseGraph& graph_;
  const Query& query_;
  std::vector<bool> used_;
  std::map<std::string, std::string> bindings_;
  std::vector<const Triple*> chosen_;
  std::map<std::string, std::vector<std::string>> ids_by_label_;
};

}  // namespace

void validate(const Query& query) {
  if (query.patterns.empty() || query.patterns.size() > kMaxPatterns) {
    throw QueryError("a query needs 1 to " + std::to_string(kMaxPatterns) +
                     " patterns");
  }
  std::set<std::string> names;
  for (const TriplePattern& p : query.patterns) {
    for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
      if (t->text.empty()) throw QueryError("empty query term");
      if (t->is_variable()) names.insert(t->text);
    }
  }
  for (const std::string& v : query.select) {
    if (!names.contains(v)) throw UnboundVariableError(v);
  }
}

Query parse_query(std::string_view text) {
  Query query = Parser(text).parse();
  validate(query);
  return query;
}

std::string unparse(const Query& query) {
  std::string out = "SELECT";
  for (const std::string& v : query.select) out += " ?" + v;
  out += " WHERE {";
  for (std::size_t i = 0; i < query.patterns.size(); ++i) {
    const TriplePattern& p = query.patterns[i];
    if (i > 0) out += " .";
    out += " " + render_term(p.subject) + " " + render_term(p.predicate) +
           " " + render_term(p.object);
  }
  return out + " }";
}

QueryResult execute_query(const CaseGraph& graph, const Query& query) {
  validate(query);
  QueryResult result;
  result.variables = query.select;
  std::set<std::vector<std::string>> rows;
  Solver solver(graph, query);
  solver.run([&](const Solver& s) {
    std::vector<std::string> row;
    row.reserve(query.select.size());
    for (const std::string& v : query.select) row.push_back(s.bindings().at(v));
    rows.insert(std::move(row));
  });
  result.rows.assign(rows.begin(), rows.end());
  return result;
}

std::vector<Triple> matched_triples(const CaseGraph& graph,
                                    const Query& query) {
  validate(query);
  std::set<Triple, SpoLess> matched;
  Solver solver(graph, query);
  solver.run([&](const Solver& s) {
    for (const Triple* t : s.chosen()) matched.insert(*t);
  });
  return {matched.begin(), matched.end()};
}

CaseGraph matched_subgraph(const CaseGraph& graph, const Query& query) {
  return subgraph_of(graph, matched_triples(graph, query));
}

}  // namespace vsp::graph
