// skillgraph: build the occupation similarity graph bundle.
//
//   skillgraph <subcommand> --config <path> [--out <dir>] [--k N] [--seed N]
//              [--threads N] [--log-level L]
//
// Subcommands: ingest, graph, annotate, layout, export, all, stats.
// Exit codes: 0 ok, 2 config, 3 input, 4 consistency. Failures print a
// one-line JSON error report on stderr.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "skillgraph/pipeline.hpp"

namespace {

int report_error(const skillgraph::Error& e) {
  const int code = skillgraph::exit_code(e.kind());
  nlohmann::json doc = {{"error",
                         {{"kind", std::string(skillgraph::to_string(e.kind()))},
                          {"message", e.detail()},
                          {"line", e.line()}}},
                        {"exit_code", code}};
  std::cerr << doc.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Occupation similarity graph pipeline"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> log_level;

  const char* const kStages[] = {"ingest", "graph", "annotate", "layout", "export", "all", "stats"};
  for (const char* name : kStages) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "pipeline config (JSON); defaults to $SKILLGRAPH_CONFIG");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--k", k, "links kept per occupation");
    sub->add_option("--seed", seed, "layout seed");
    sub->add_option("--threads", threads, "worker threads");
    sub->add_option("--log-level", log_level, "trace|debug|info|warn|error|off");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return report_error(skillgraph::Error(skillgraph::ErrorKind::ConfigInvalid, e.what()));
  }
  const std::string stage = app.get_subcommands().front()->get_name();

  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv("SKILLGRAPH_CONFIG")) config_path = env;
    }
    if (config_path.empty())
      throw skillgraph::Error(skillgraph::ErrorKind::ConfigInvalid,
                              "no config given (use --config or SKILLGRAPH_CONFIG)");

    skillgraph::PipelineConfig cfg = skillgraph::load_config(config_path);
    if (out_dir) cfg.output_dir = *out_dir;
    if (k) {
      if (*k < 1) throw skillgraph::Error(skillgraph::ErrorKind::ConfigInvalid, "--k must be >= 1");
      cfg.k = *k;
    }
    if (seed) cfg.layout.seed = *seed;
    if (threads) cfg.threads = *threads;
    if (log_level) cfg.log_level = *log_level;
    cfg.validate(/*needs_output=*/stage != "stats");

    auto logger = spdlog::stderr_color_mt("skillgraph");
    logger->set_level(spdlog::level::from_str(cfg.log_level));
    logger->set_pattern("[%l] %v");
    const skillgraph::LogSink log = [&](skillgraph::LogLevel level, const std::string& msg) {
      switch (level) {
        case skillgraph::LogLevel::Debug: logger->debug(msg); break;
        case skillgraph::LogLevel::Info: logger->info(msg); break;
        case skillgraph::LogLevel::Warn: logger->warn(msg); break;
      }
    };

    if (stage == "ingest") skillgraph::stage_ingest(cfg, log);
    else if (stage == "graph") skillgraph::stage_graph(cfg, log);
    else if (stage == "annotate") skillgraph::stage_annotate(cfg, log);
    else if (stage == "layout") skillgraph::stage_layout(cfg, log);
    else if (stage == "export") skillgraph::stage_export(cfg, log);
    else if (stage == "all") skillgraph::stage_all(cfg, log);
    else if (stage == "stats") std::cout << skillgraph::stage_stats(cfg, log).dump(2) << std::endl;
  } catch (const skillgraph::Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    return report_error(skillgraph::Error(skillgraph::ErrorKind::IoFailure, e.what()));
  }
  return 0;
}
