// SPDX-License-Identifier: Apache-2.0
#include "abridge/cli/run.hpp"

#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "abridge/core/errors.hpp"
#include "abridge/evaluation/factual.hpp"
#include "abridge/extraction/triples.hpp"
#include "abridge/graph/semantic_graph.hpp"
#include "abridge/llm/gateway.hpp"
#include "abridge/service/config.hpp"
#include "abridge/service/http_api.hpp"
#include "abridge/service/session_service.hpp"
#include "abridge/summarization/summarizer.hpp"

namespace abridge::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
  if (!out.flush()) throw InputError("cannot write " + path.string());
}

std::string pretty(const nlohmann::json& j) { return j.dump(2) + "\n"; }

summarization::RefinementRequest load_refine_spec(const fs::path& path) {
  auto j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw InputError(path.string() + " is not a JSON object");
  summarization::RefinementRequest request;
  request.id = 1;
  try {
    if (j.contains("include")) request.include = j.at("include").get<std::set<std::size_t>>();
    if (j.contains("exclude")) request.exclude = j.at("exclude").get<std::set<std::size_t>>();
    if (j.contains("freeform") && !j.at("freeform").is_null()) request.freeform = j.at("freeform").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return request;
}

void report_warnings(std::ostream& err, const std::vector<core::Warning>& warnings) {
  for (const auto& w : warnings) {
    err << "warning [" << w.source << "] " << w.reason;
    if (!w.line.empty()) err << ": " << w.line;
    err << "\n";
  }
}

}  // namespace

int run(const CliConfig& config, std::ostream& err) {
  try {
    if (config.inputs.empty()) throw InputError("at least one input file is required");
    if (config.parallelism == 0) throw InputError("parallelism must be at least 1");
    std::vector<core::DocumentInput> inputs;
    for (const auto& path : config.inputs) {
      inputs.push_back(core::DocumentInput{path.filename().string(), read_file(path)});
    }
    // Creation time is irrelevant to the artifacts; a fixed epoch keeps runs reproducible.
    const auto docset = core::DocumentSet::create(inputs, core::DocumentSet::Clock::time_point{});
    std::optional<summarization::RefinementRequest> refinement;
    if (config.refine_spec) refinement = load_refine_spec(*config.refine_spec);

    const llm::LlmGateway gateway(llm::make_provider(llm::ProviderConfig::from_spec(config.provider)));

    auto extracted = extraction::extract_triples(gateway, docset);
    report_warnings(err, extracted.warnings);
    auto clustered = extraction::cluster_entities(gateway, docset, extracted.triples);
    report_warnings(err, clustered.warnings);
    const auto graph = graph::build_graph(clustered.triples, clustered.clusters);

    auto summary = summarization::summarize_auto(gateway, docset);
    report_warnings(err, summary.warnings);
    auto latest = summary.summary;
    std::optional<core::Summary> refined;
    if (refinement) {
      auto result = summarization::refine_summary(gateway, summary.dialogue, *refinement, clustered.triples,
                                                  summary.summary.version);
      report_warnings(err, result.warnings);
      refined = result.summary;
      latest = result.summary;
    }

    evaluation::EvaluationOptions options;
    options.parallelism = config.parallelism;
    auto evaluated = evaluation::evaluate(gateway, docset, latest, options);
    report_warnings(err, evaluated.warnings);

    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw InputError("cannot create " + config.output_dir.string() + ": " + ec.message());
    write_file(config.output_dir / "summary.txt", summary.summary.text + "\n");
    if (refined) write_file(config.output_dir / "summary.v1.txt", refined->text + "\n");
    write_file(config.output_dir / "triples.json", pretty(clustered.triples));
    write_file(config.output_dir / "clusters.json", pretty(clustered.clusters));
    if (config.emit_graph_json) write_file(config.output_dir / "graph.json", pretty(graph::export_graph_json(graph)));
    if (config.emit_dot) write_file(config.output_dir / "graph.dot", graph::export_dot(graph));
    write_file(config.output_dir / "report.json", pretty(evaluated.report));
    return kSuccess;
  } catch (const ExtractionEmptyError& e) {
    err << "error: " << e.what() << "\nraw response:\n" << e.raw_response() << "\n";
    return kProviderError;
  } catch (const ProviderError& e) {
    err << "error: provider failure: " << e.what() << "\n";
    return kProviderError;
  } catch (const EmptySummaryError& e) {
    err << "error: " << e.what() << "\n";
    return kProviderError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

namespace {

int serve(const service::ServiceConfig& config, std::ostream& out, std::ostream& err) {
  const auto gateway = std::make_shared<const llm::LlmGateway>(llm::make_provider(config.provider));
  service::ServiceOptions options;
  options.evaluation.parallelism = config.parallelism;
  service::SessionService sessions(gateway, config.data_dir, options);
  for (const auto& w : sessions.startup_warnings()) err << "warning: " << w << "\n";

  httplib::Server server;
  auto log_mutex = std::make_shared<std::mutex>();
  service::HttpOptions http;
  http.log_sink = [&out, log_mutex](const std::string& line) {
    std::lock_guard lock(*log_mutex);
    out << line << std::endl;
  };
  service::bind_routes(server, sessions, http);
  out << nlohmann::json{{"event", "listening"}, {"host", config.host}, {"port", config.port}}.dump() << std::endl;
  if (!server.listen(config.host, config.port)) {
    err << "error: cannot listen on " << config.host << ":" << config.port << "\n";
    return kInputError;
  }
  return kSuccess;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interactive multi-document summarization"};
  app.require_subcommand(1);

  CliConfig run_config;
  std::vector<std::string> inputs;
  std::string output_dir = ".";
  std::string refine_spec;
  auto* run_cmd = app.add_subcommand("run", "Run the full pipeline on local files");
  run_cmd->add_option("inputs", inputs, "Input article files")->required();
  run_cmd->add_option("-o,--output", output_dir, "Output directory");
  run_cmd->add_option("--provider", run_config.provider, "scripted:<playbook.json> or http:<endpoint>")->required();
  run_cmd->add_flag("--emit-dot", run_config.emit_dot, "Also write graph.dot");
  run_cmd->add_flag("--emit-graph-json,!--no-emit-graph-json", run_config.emit_graph_json, "Write graph.json");
  run_cmd->add_option("--refine-spec", refine_spec, "Refinement request JSON {include, exclude, freeform}");
  run_cmd->add_option("--parallelism", run_config.parallelism, "Concurrent fact verifications");

  std::string config_path;
  service::ServiceConfig serve_config;
  std::string provider_spec;
  std::string data_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Start the session REST service");
  serve_cmd->add_option("-c,--config", config_path, "JSON config file");
  serve_cmd->add_option("--host", serve_config.host, "Listen address");
  serve_cmd->add_option("--port", serve_config.port, "Listen port");
  serve_cmd->add_option("--data-dir", data_dir, "Snapshot directory");
  serve_cmd->add_option("--provider", provider_spec, "scripted:<playbook.json> or http:<endpoint>");
  serve_cmd->add_option("--parallelism", serve_config.parallelism, "Concurrent fact verifications");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  if (run_cmd->parsed()) {
    for (const auto& in : inputs) run_config.inputs.emplace_back(in);
    run_config.output_dir = output_dir;
    if (!refine_spec.empty()) run_config.refine_spec = refine_spec;
    return run(run_config, err);
  }

  try {
    auto config = config_path.empty() ? service::ServiceConfig{} : service::load_service_config(config_path);
    if (serve_cmd->count("--host") > 0) config.host = serve_config.host;
    if (serve_cmd->count("--port") > 0) config.port = serve_config.port;
    if (serve_cmd->count("--parallelism") > 0) config.parallelism = serve_config.parallelism;
    if (!data_dir.empty()) config.data_dir = data_dir;
    if (!provider_spec.empty()) config.provider = llm::ProviderConfig::from_spec(provider_spec);
    if (config.provider.kind == llm::ProviderConfig::Kind::scripted && config.provider.playbook.empty()) {
      throw InputError("serve needs a provider (--provider or config file)");
    }
    return serve(config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace abridge::cli
