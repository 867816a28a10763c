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

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 runtime
// error.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "vsp/assess/assessor.h"
#include "vsp/assess/containment_judge.h"
#include "vsp/eval/elo.h"
#include "vsp/eval/export.h"
#include "vsp/graph/graph_io.h"
#include "vsp/ingest/graph_builder.h"
#include "vsp/ingest/lexicon.h"
#include "vsp/ingest/rule_extractor.h"
#include "vsp/service/http_server.h"
#include "vsp/service/service.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vsp;

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

service::ServiceConfig service_config(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    auto env = service::config_path_from_env();
    if (!env) throw UsageError("no --config given and CUREFUN_CONFIG is not set");
    path = *env;
  }
  return service::load_config(path);
}

ingest::CaseScript read_case(const std::string& path, const std::string& case_id) {
  if (fs::path(path).extension() == ".json") return ingest::read_case_script_file(path);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  return ingest::import_plain_text(text, case_id.empty() ? fs::path(path).stem().string() : case_id);
}

// ---- ingest -------------------------------------------------------------

struct IngestArgs {
  std::string case_file;
  std::string case_id;
  std::string lexicon;
  std::string patterns;
  std::string out;
};

int run_ingest(const IngestArgs& a) {
  const auto script = read_case(a.case_file, a.case_id);
  ingest::Lexicon lexicon;
  if (!a.lexicon.empty()) lexicon = ingest::Lexicon::from_file(a.lexicon);
  auto patterns = a.patterns.empty() ? ingest::default_attribute_patterns()
                                     : ingest::read_attribute_patterns(a.patterns);
  ingest::RuleBasedExtractor extractor(std::move(lexicon), std::move(patterns));
  const auto graph = ingest::ingest_case(script, extractor);
  if (a.out.empty()) {
    std::cout << graph::serialize(graph);
  } else {
    graph::write_graph_file(a.out, graph);
    std::cerr << "wrote " << a.out << ": " << graph.nodes().size() << " nodes, "
              << graph.triples().size() << " triples\n";
  }
  return 0;
}

// ---- chat ---------------------------------------------------------------

struct ChatArgs {
  std::string config;
  std::string case_file;
  std::string checklist;
  std::string backend = "patient";
  int max_turns = 0;
};

int run_chat(const ChatArgs& a) {
  service::Service svc(service_config(a.config));
  const auto added = svc.add_case({{"script", ingest::to_json(read_case(a.case_file, ""))},
                                   {"checklist", read_json(a.checklist)}});
  json body = {{"case_id", added["case_id"]}, {"backend_id", a.backend}};
  if (a.max_turns > 0) body["max_turns"] = a.max_turns;
  const json session = svc.create_session(body);
  const std::string id = session["session_id"];
  std::cout << "Session " << id << " (" << session["max_turns"].get<int>()
            << " turns). Type /end to finish.\n";
  std::string line;
  while (std::cout << "doctor> " << std::flush, std::getline(std::cin, line)) {
    if (line == "/end") break;
    if (line.empty()) continue;
    try {
      const json reply = svc.post_message(id, {{"text", line}});
      std::cout << "patient> " << reply["reply"].get<std::string>() << "\n";
      if (reply["status"] == "ended") {
        std::cout << "(turn budget spent)\n";
        break;
      }
    } catch (const dialogue::SessionEndedError&) {
      break;
    }
  }
  const json report = svc.end_session(id);
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---- assess -------------------------------------------------------------

struct AssessArgs {
  std::string transcript;
  std::string checklist;
  std::string judges;
  std::string config;
  std::string case_file;
  std::string lexicon;
  bool json_out = false;
};

int run_assess(const AssessArgs& a) {
  const auto transcript = read_transcript_file(a.transcript);
  llm::BackendRegistry registry;
  assess::register_containment_kind(registry);
  assess::JudgeRoster roster;
  const llm::ChatBackend* classifier = nullptr;
  std::shared_ptr<const llm::ChatBackend> classifier_handle;
  if (!a.judges.empty()) {
    roster = assess::load_roster(read_json(a.judges), registry,
                                 fs::absolute(a.judges).parent_path().string());
  } else {
    const auto config = service_config(a.config);
    for (const auto& b : config.backends) registry.add_from_config(b, config.base_dir);
    roster = assess::roster_from_registry(registry, config.judges);
    if (!config.classifier.empty()) {
      classifier_handle = registry.get(config.classifier);
      classifier = classifier_handle.get();
    }
  }
  const auto program = assess::compile_checklist(assess::read_raw_checklist(a.checklist), classifier);

  // The entity index only feeds the information-density indicator.
  graph::CaseGraph graph("none");
  if (!a.case_file.empty()) {
    ingest::Lexicon lexicon;
    if (!a.lexicon.empty()) lexicon = ingest::Lexicon::from_file(a.lexicon);
    ingest::RuleBasedExtractor extractor(std::move(lexicon));
    graph = ingest::ingest_case(read_case(a.case_file, ""), extractor);
  }
  const graph::EntityIndex index(graph);
  const assess::LexiconSentiment sentiment;
  assess::AssessOptions options;
  options.transcript_ref = a.transcript;
  const auto report = assess::assess(transcript, program, roster, index, sentiment, options);
  if (a.json_out) {
    std::cout << assess::to_json(report).dump(2) << "\n";
    return 0;
  }
  std::printf("score: %.4g\n", report.score);
  std::printf("aspects: %.4g  information: %.4g\n", report.aspect_fraction, report.info_fraction);
  for (const auto& item : report.items) {
    std::printf("  [%s] %-4s %-11s %d-%d-%d %s\n", item.achieved ? "x" : " ", item.item_id.c_str(),
                std::string(assess::to_string(item.kind)).c_str(), item.votes.achieved, item.votes.not_achieved,
                item.votes.abstain, item.description.c_str());
  }
  for (const auto& flag : report.flags) std::printf("flag: %s\n", flag.c_str());
  return 0;
}

// ---- arena --------------------------------------------------------------

struct ArenaArgs {
  std::string records;
  int shuffles = 1000;
  std::uint64_t seed = eval::EloConfig{}.rng_seed;
  double k_factor = 100.0;
  double initial = 1600.0;
  std::string export_dir;
};

int run_arena(const ArenaArgs& a) {
  const auto records = eval::read_records_file(a.records);
  eval::EloConfig config;
  config.shuffles = a.shuffles;
  config.rng_seed = a.seed;
  config.k_factor = a.k_factor;
  config.initial_rating = a.initial;
  const auto table = eval::bootstrap_elo(records, config);
  std::printf("%-16s %12s %12s\n", "player", "elo", "b_elo");
  for (const auto& [player, rating] : table.vanilla) {
    std::printf("%-16s %12.6f %12.6f\n", player.c_str(), rating, table.median.at(player));
  }
  if (!a.export_dir.empty()) {
    for (const auto& path : eval::export_reports({records, table, {}}, a.export_dir)) {
      std::cerr << "wrote " << path << "\n";
    }
  }
  return 0;
}

// ---- vd-eval ------------------------------------------------------------

// {"service": "service.json", "cases": [{"script": path, "checklist": path}],
//  "candidate": id, "patient": id, "repeats": 5, "max_turns": 20,
//  "export": dir?}; paths relative to the file.
int run_vd(const std::string& path) {
  const json spec = read_json(path);
  const fs::path base = fs::absolute(path).parent_path();
  auto rel = [&](const std::string& p) { return (base / p).lexically_normal().string(); };
  service::Service svc(service::load_config(rel(spec.at("service").get<std::string>())));
  json case_ids = json::array();
  for (const auto& c : spec.at("cases")) {
    const auto added = svc.add_case(
        {{"script", ingest::to_json(read_case(rel(c.at("script").get<std::string>()), ""))},
         {"checklist", read_json(rel(c.at("checklist").get<std::string>()))}});
    case_ids.push_back(added["case_id"]);
  }
  json body = {{"candidate", spec.at("candidate")},
               {"patient", spec.at("patient")},
               {"case_ids", case_ids},
               {"repeats", spec.value("repeats", 5)},
               {"max_turns", spec.value("max_turns", svc.config().default_max_turns)}};
  const json result = svc.vd_eval(body);
  std::cout << result["summary"].dump(2) << "\n";
  if (spec.contains("export")) {
    std::string lines;
    for (const auto& run : result["runs"]) lines += run.dump() + "\n";
    const fs::path dir = rel(spec.at("export").get<std::string>());
    fs::create_directories(dir);
    eval::write_text_file((dir / "vd_runs.jsonl").string(), lines);
    std::cerr << "wrote " << (dir / "vd_runs.jsonl").string() << "\n";
  }
  return result["summary"]["failures"].get<std::size_t>() == 0 ? 0 : kRuntime;
}

// ---- serve --------------------------------------------------------------

service::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const std::string& config_path, const std::string& host, int port) {
  auto config = service_config(config_path);
  if (!host.empty()) config.host = host;
  if (port >= 0) config.port = port;
  service::Service svc(config);
  service::HttpServer server(svc);
  const int bound = server.bind(config.host, config.port);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on " << config.host << ":" << bound << " (data " << svc.data_dir()
            << ")\n";
  server.listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual standardized patient toolkit"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a case graph from a case script");
  ingest_cmd->add_option("--case", ingest_args.case_file, "Case script (.json or plain text)")
      ->required()
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--case-id", ingest_args.case_id, "Case id for plain-text input");
  ingest_cmd->add_option("--lexicon", ingest_args.lexicon, "Entity lexicon TSV")
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--patterns", ingest_args.patterns, "Attribute pattern TSV")
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--out", ingest_args.out, "Graph file to write (default stdout)");

  ChatArgs chat_args;
  auto* chat_cmd = app.add_subcommand("chat", "Interactive terminal session");
  chat_cmd->add_option("--config", chat_args.config, "Service config (default $CUREFUN_CONFIG)");
  chat_cmd->add_option("--case", chat_args.case_file, "Case script")->required()->check(CLI::ExistingFile);
  chat_cmd->add_option("--checklist", chat_args.checklist, "Checklist JSON")
      ->required()
      ->check(CLI::ExistingFile);
  chat_cmd->add_option("--backend", chat_args.backend, "Patient backend id");
  chat_cmd->add_option("--max-turns", chat_args.max_turns, "Student turn budget");

  AssessArgs assess_args;
  auto* assess_cmd = app.add_subcommand("assess", "Score a transcript against a checklist");
  assess_cmd->add_option("--transcript", assess_args.transcript, "Transcript JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  assess_cmd->add_option("--checklist", assess_args.checklist, "Checklist JSON")
      ->required()
      ->check(CLI::ExistingFile);
  assess_cmd->add_option("--judges", assess_args.judges, "Judge roster JSON")
      ->check(CLI::ExistingFile);
  assess_cmd->add_option("--config", assess_args.config, "Service config providing the roster");
  assess_cmd->add_option("--case", assess_args.case_file, "Case script, for the density indicator")
      ->check(CLI::ExistingFile);
  assess_cmd->add_option("--lexicon", assess_args.lexicon, "Entity lexicon TSV")
      ->check(CLI::ExistingFile);
  assess_cmd->add_flag("--json", assess_args.json_out, "Print the full report as JSON");

  ArenaArgs arena_args;
  auto* arena_cmd = app.add_subcommand("arena", "Vanilla and bootstrap ELO from comparison records");
  arena_cmd->add_option("--records", arena_args.records, "Comparison records JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  arena_cmd->add_option("--shuffles", arena_args.shuffles, "Bootstrap orderings")
      ->check(CLI::PositiveNumber);
  arena_cmd->add_option("--seed", arena_args.seed, "Shuffle seed");
  arena_cmd->add_option("--k", arena_args.k_factor, "K factor")->check(CLI::PositiveNumber);
  arena_cmd->add_option("--initial", arena_args.initial, "Initial rating");
  arena_cmd->add_option("--export", arena_args.export_dir, "Directory for CSV exports");

  std::string vd_config;
  auto* vd_cmd = app.add_subcommand("vd-eval", "Evaluate a model acting as the doctor");
  vd_cmd->add_option("--config", vd_config, "VD evaluation JSON")->required()->check(CLI::ExistingFile);

  std::string serve_config;
  std::string serve_host;
  int serve_port = -1;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", serve_config, "Service config (default $CUREFUN_CONFIG)");
  serve_cmd->add_option("--host", serve_host, "Override listen host");
  serve_cmd->add_option("--port", serve_port, "Override listen port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kUsage;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest_args);
    if (*chat_cmd) return run_chat(chat_args);
    if (*assess_cmd) return run_assess(assess_args);
    if (*arena_cmd) return run_arena(arena_args);
    if (*vd_cmd) return run_vd(vd_config);
    if (*serve_cmd) return run_serve(serve_config, serve_host, serve_port);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
