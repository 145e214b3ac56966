#pragma once

// Stage orchestration for the command-line tool. Each stage reads the
// canonical CSV files left by its predecessors under `<out>/work` and
// writes its own; `export` writes the viewer bundle to `<out>/bundle`.
//
//   ingest   -> occupations.csv skills.csv essential.csv crosswalk.csv
//               automation_table.csv ingest_report.json
//   graph    -> links_directed.csv display_edges.csv
//   annotate -> occupation_automation.csv coverage.csv cube.csv annotate_report.json
//   layout   -> layout.csv layout_report.json
//   export   -> bundle/{nodes.csv,links.csv,counts.csv,graph.json}

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "skillgraph/bundle.hpp"
#include "skillgraph/classifier.hpp"
#include "skillgraph/csv.hpp"
#include "skillgraph/error.hpp"
#include "skillgraph/layout.hpp"
#include "skillgraph/megatrend.hpp"
#include "skillgraph/similarity.hpp"
#include "skillgraph/supply_demand.hpp"

namespace skillgraph {

namespace fs = std::filesystem;

struct InputPaths {
  fs::path esco_triples;
  fs::path crosswalk;
  fs::path automation;
  fs::path cv;
  fs::path vacancies;
};

struct PipelineConfig {
  InputPaths inputs;
  fs::path output_dir;
  std::size_t k = 3;
  double min_ratio = 0.0;
  LayoutConfig layout;
  double megatrend_threshold = 0.7;
  std::string log_level = "info";
  std::optional<std::string> build_timestamp;
  TripleParseOptions triples;
  unsigned threads = 1;

  void validate(bool needs_output = true) const {
    if (needs_output && output_dir.empty()) throw Error(ErrorKind::ConfigInvalid, "output_dir is required");
    if (k < 1) throw Error(ErrorKind::ConfigInvalid, "k must be >= 1");
    if (!(megatrend_threshold >= 0.0 && megatrend_threshold <= 1.0))
      throw Error(ErrorKind::ConfigInvalid, "megatrend_threshold must be in [0, 1]");
    if (threads < 1) throw Error(ErrorKind::ConfigInvalid, "threads must be >= 1");
    static const char* const kLevels[] = {"trace", "debug", "info", "warn", "error", "off"};
    if (std::find(std::begin(kLevels), std::end(kLevels), log_level) == std::end(kLevels))
      throw Error(ErrorKind::ConfigInvalid, "unknown log_level '" + log_level + "'");
    layout.validate();
  }
};

/// Builds a config from a JSON document. Relative paths resolve against
/// `base_dir` (the directory holding the config file).
inline PipelineConfig config_from_json(const nlohmann::json& doc, const fs::path& base_dir) {
  PipelineConfig cfg;
  auto resolve = [&](const std::string& p) -> fs::path {
    if (p.empty()) return {};
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  try {
    if (!doc.is_object()) throw Error(ErrorKind::ConfigInvalid, "config must be a JSON object");
    if (doc.contains("inputs")) {
      const auto& in = doc.at("inputs");
      cfg.inputs.esco_triples = resolve(in.value("esco_triples", ""));
      cfg.inputs.crosswalk = resolve(in.value("crosswalk", ""));
      cfg.inputs.automation = resolve(in.value("automation", ""));
      cfg.inputs.cv = resolve(in.value("cv", ""));
      cfg.inputs.vacancies = resolve(in.value("vacancies", ""));
    }
    cfg.output_dir = resolve(doc.value("output_dir", ""));
    if (doc.contains("k")) {
      const auto k = doc.at("k").get<std::int64_t>();
      if (k < 1) throw Error(ErrorKind::ConfigInvalid, "k must be >= 1");
      cfg.k = static_cast<std::size_t>(k);
    }
    cfg.min_ratio = doc.value("min_ratio", cfg.min_ratio);
    cfg.megatrend_threshold = doc.value("megatrend_threshold", cfg.megatrend_threshold);
    cfg.log_level = doc.value("log_level", cfg.log_level);
    if (doc.contains("build_timestamp") && !doc.at("build_timestamp").is_null())
      cfg.build_timestamp = doc.at("build_timestamp").get<std::string>();
    if (doc.contains("threads")) {
      const auto t = doc.at("threads").get<std::int64_t>();
      if (t < 1) throw Error(ErrorKind::ConfigInvalid, "threads must be >= 1");
      cfg.threads = static_cast<unsigned>(t);
    }
    if (doc.contains("layout")) {
      const auto& l = doc.at("layout");
      cfg.layout.seed = l.value("seed", cfg.layout.seed);
      cfg.layout.K = l.value("K", cfg.layout.K);
      cfg.layout.C = l.value("C", cfg.layout.C);
      cfg.layout.theta = l.value("theta", cfg.layout.theta);
      cfg.layout.max_iterations = l.value("max_iterations", cfg.layout.max_iterations);
      cfg.layout.tol = l.value("tol", cfg.layout.tol);
      cfg.layout.multilevel = l.value("multilevel", cfg.layout.multilevel);
      cfg.layout.coarsen_floor = l.value("coarsen_floor", cfg.layout.coarsen_floor);
    }
    if (doc.contains("vocabulary")) {
      const auto& v = doc.at("vocabulary");
      auto& voc = cfg.triples.vocabulary;
      voc.type_predicate = v.value("type_predicate", voc.type_predicate);
      voc.occupation_class = v.value("occupation_class", voc.occupation_class);
      voc.skill_class = v.value("skill_class", voc.skill_class);
      voc.pref_label = v.value("pref_label", voc.pref_label);
      voc.essential_skill = v.value("essential_skill", voc.essential_skill);
      voc.isco_group = v.value("isco_group", voc.isco_group);
      voc.label_language = v.value("label_language", voc.label_language);
    }
    if (doc.contains("dangling")) {
      const auto policy = doc.at("dangling").get<std::string>();
      if (policy == "warn") cfg.triples.dangling = DanglingPolicy::WarnAndDrop;
      else if (policy == "fail") cfg.triples.dangling = DanglingPolicy::Fail;
      else throw Error(ErrorKind::ConfigInvalid, "dangling must be \"warn\" or \"fail\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigInvalid, e.what());
  }
  return cfg;
}

inline PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigInvalid, "cannot open config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigInvalid, path.string() + ": " + e.what());
  }
  return config_from_json(doc, path.parent_path());
}

// ---------------------------------------------------------------------------

enum class LogLevel { Debug, Info, Warn };
using LogSink = std::function<void(LogLevel, const std::string&)>;

namespace pipeline_detail {

inline fs::path work_dir(const PipelineConfig& cfg) { return cfg.output_dir / "work"; }
inline fs::path bundle_dir(const PipelineConfig& cfg) { return cfg.output_dir / "bundle"; }

inline std::ifstream open_input(const fs::path& path, const char* what) {
  if (path.empty())
    throw Error(ErrorKind::ConfigInvalid, std::string("inputs.") + what + " is not configured");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, std::string("cannot open ") + what + " input " + path.string());
  return in;
}

/// Opens a predecessor's output; a missing file means the stage ran too early.
inline std::ifstream open_stage_file(const PipelineConfig& cfg, const char* name,
                                     const char* producer) {
  const fs::path path = work_dir(cfg) / name;
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::StageInputMissing,
                path.string() + " not found; run the '" + producer + "' stage first");
  return in;
}

/// Write-to-temp then rename.
inline void write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorKind::IoFailure, "cannot create " + path.parent_path().string());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw Error(ErrorKind::IoFailure, "cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::IoFailure, "cannot move " + path.string() + " into place");
  }
}

template <typename Writer>
void write_atomic_with(const fs::path& path, Writer&& writer) {
  std::ostringstream out;
  writer(out);
  write_atomic(path, out.str());
}

inline ClassifierStore read_store(const PipelineConfig& cfg) {
  auto occ = open_stage_file(cfg, "occupations.csv", "ingest");
  auto skills = open_stage_file(cfg, "skills.csv", "ingest");
  auto essential = open_stage_file(cfg, "essential.csv", "ingest");
  return read_store_csv(occ, skills, essential);
}

inline nlohmann::json stats_json(const StoreStats& s) {
  return {{"n_occupations", s.n_occupations},
          {"n_skills", s.n_skills},
          {"n_relations", s.n_relations},
          {"n_distinct_isco", s.n_distinct_isco}};
}

inline std::vector<DisplayEdge> read_display_edges(const PipelineConfig& cfg) {
  auto in = open_stage_file(cfg, "display_edges.csv", "graph");
  csv::Reader r(in);
  csv::Row row;
  std::vector<DisplayEdge> edges;
  if (!r.next(row)) throw Error(ErrorKind::ParseFailure, "display_edges.csv: empty");
  csv::Header h(row);
  const auto ca = h.require("a"), cb = h.require("b"), cr = h.require("ratio");
  while (r.next(row)) {
    auto ratio = parse_double(detail::field(row, cr, r.line(), ErrorKind::ParseFailure));
    if (!ratio) throw Error(ErrorKind::ParseFailure, "display_edges.csv: bad ratio", r.line());
    edges.push_back({OccupationId(row[ca]), OccupationId(row[cb]), *ratio});
  }
  return edges;
}

inline std::optional<std::string> resolve_timestamp(const PipelineConfig& cfg) {
  if (cfg.build_timestamp) return cfg.build_timestamp;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    auto secs = parse_uint(epoch);
    if (!secs) throw Error(ErrorKind::ConfigInvalid, "SOURCE_DATE_EPOCH is not an integer");
    std::time_t t = static_cast<std::time_t>(*secs);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
  }
  return std::nullopt;
}

}  // namespace pipeline_detail

// ---------------------------------------------------------------------------
// Stages

inline void stage_ingest(const PipelineConfig& cfg, const LogSink& log) {
  using namespace pipeline_detail;
  auto triples_in = open_input(cfg.inputs.esco_triples, "esco_triples");
  auto crosswalk_in = open_input(cfg.inputs.crosswalk, "crosswalk");
  auto automation_in = open_input(cfg.inputs.automation, "automation");

  TripleParseReport report;
  const ClassifierStore store = parse_esco_triples(triples_in, cfg.triples, &report);
  const CrosswalkTable crosswalk = parse_crosswalk(crosswalk_in);
  const AutomationTable automation = parse_automation(automation_in);
  for (const auto& w : report.warnings) log(LogLevel::Warn, w);

  const StoreStats stats = store_stats(store);
  log(LogLevel::Info, "ingest: " + std::to_string(stats.n_occupations) + " occupations, " +
                          std::to_string(stats.n_skills) + " skills, " +
                          std::to_string(stats.n_relations) + " essential relations");

  const fs::path dir = work_dir(cfg);
  write_atomic_with(dir / "occupations.csv", [&](auto& o) { write_occupations_csv(store, o); });
  write_atomic_with(dir / "skills.csv", [&](auto& o) { write_skills_csv(store, o); });
  write_atomic_with(dir / "essential.csv", [&](auto& o) { write_essential_csv(store, o); });
  write_atomic_with(dir / "crosswalk.csv", [&](auto& o) { write_crosswalk(crosswalk, o); });
  write_atomic_with(dir / "automation_table.csv", [&](auto& o) { write_automation(automation, o); });

  nlohmann::json missing = nlohmann::json::array();
  for (const auto& id : report.missing_isco) missing.push_back(id.str());
  const nlohmann::json doc = {
      {"store", stats_json(stats)},
      {"triples",
       {{"lines", report.lines},
        {"triples", report.triples},
        {"unrecognized_predicates", report.unrecognized_predicates},
        {"dangling_dropped", report.dangling_dropped},
        {"relations_of_dropped_occupations", report.relations_of_dropped_occupations},
        {"invalid_isco_objects", report.invalid_isco_objects},
        {"missing_isco", missing}}},
      {"crosswalk_rows", crosswalk.rows.size()},
      {"automation_rows", automation.probs.size()},
  };
  write_atomic(dir / "ingest_report.json", doc.dump(2) + "\n");
}

inline void stage_graph(const PipelineConfig& cfg, const LogSink& log) {
  using namespace pipeline_detail;
  const ClassifierStore store = read_store(cfg);
  const auto links = top_k_links(store, {cfg.k, cfg.min_ratio, cfg.threads});
  const auto edges = merge_undirected(links);
  log(LogLevel::Info, "graph: " + std::to_string(links.size()) + " directed links, " +
                          std::to_string(edges.size()) + " display edges");

  const fs::path dir = work_dir(cfg);
  write_atomic_with(dir / "links_directed.csv", [&](auto& o) {
    csv::write_row(o, {"from", "to", "shared", "from_size", "ratio"});
    for (const auto& l : links)
      csv::write_row(o, {l.from.str(), l.to.str(), std::to_string(l.shared),
                         std::to_string(l.from_size), format_shortest(l.ratio())});
  });
  write_atomic_with(dir / "display_edges.csv", [&](auto& o) {
    csv::write_row(o, {"a", "b", "ratio"});
    for (const auto& e : edges) csv::write_row(o, {e.a.str(), e.b.str(), format_shortest(e.ratio)});
  });
}

inline void stage_annotate(const PipelineConfig& cfg, const LogSink& log) {
  using namespace pipeline_detail;
  const ClassifierStore store = read_store(cfg);
  auto crosswalk_in = open_stage_file(cfg, "crosswalk.csv", "ingest");
  auto automation_in = open_stage_file(cfg, "automation_table.csv", "ingest");
  const CrosswalkTable crosswalk = parse_crosswalk(crosswalk_in);
  const AutomationTable automation = parse_automation(automation_in);

  CoverageReport coverage;
  const auto isco_probs = isco_automation(crosswalk, automation, &coverage);
  const auto occ_probs = occupation_automation(store, isco_probs);
  const auto counts = coverage_counts(store, isco_probs);
  log(LogLevel::Info, "annotate: " + std::to_string(counts.annotated) + " ISCO codes annotated, " +
                          std::to_string(counts.unannotated) + " without automation data");

  auto cv_in = open_input(cfg.inputs.cv, "cv");
  auto vac_in = open_input(cfg.inputs.vacancies, "vacancies");
  CvAggregate cv;
  VacancyAggregate vac;
  RecordIssues cv_issues, vac_issues;
  aggregate_cv(cv_in, cv, cv_issues);
  aggregate_vacancies(vac_in, vac, vac_issues);
  for (const auto& m : cv_issues.messages) log(LogLevel::Warn, "cv: " + m);
  for (const auto& m : vac_issues.messages) log(LogLevel::Warn, "vacancies: " + m);

  AttachReport attach;
  const SupplyDemandCube cube = attach_counts(store, cv, vac, &attach);
  if (attach.orphaned_vacancies > 0)
    log(LogLevel::Warn, std::string(to_string(ErrorKind::UnmappedIsco)) + ": " +
                            std::to_string(attach.unmapped_isco.size()) + " ISCO codes, " +
                            std::to_string(attach.orphaned_vacancies) +
                            " vacancies without an ESCO occupation");

  const fs::path dir = work_dir(cfg);
  write_atomic_with(dir / "occupation_automation.csv", [&](auto& o) {
    csv::write_row(o, {"esco_id", "prob_max", "prob_avg", "n_socs_matched"});
    for (const auto& [id, a] : occ_probs)
      csv::write_row(o, {id.str(), format_probability(a.prob_max), format_probability(a.prob_avg),
                         std::to_string(a.n_socs_matched)});
  });
  write_atomic_with(dir / "coverage.csv", [&](auto& o) { write_coverage_csv(store, isco_probs, o); });
  write_atomic_with(dir / "cube.csv", [&](auto& o) { write_cube_csv(cube, o); });

  nlohmann::json unmapped = nlohmann::json::array(), unknown = nlohmann::json::array(),
                 missing_socs = nlohmann::json::array();
  for (const auto& c : attach.unmapped_isco) unmapped.push_back(c.str());
  for (const auto& o : attach.unknown_occupations) unknown.push_back(o.str());
  for (const auto& s : coverage.missing_socs) missing_socs.push_back(s.str());
  const nlohmann::json doc = {
      {"coverage",
       {{"annotated_isco", counts.annotated},
        {"unannotated_isco", counts.unannotated},
        {"missing_socs", missing_socs}}},
      {"cv", {{"malformed", cv_issues.malformed}}},
      {"vacancies", {{"malformed", vac_issues.malformed}}},
      {"unmapped_isco", {{"codes", unmapped}, {"orphaned_vacancies", attach.orphaned_vacancies}}},
      {"unknown_cv_occupations", unknown},
      {"vacancy_fanout_duplicated", true},
  };
  write_atomic(dir / "annotate_report.json", doc.dump(2) + "\n");
}

inline void stage_layout(const PipelineConfig& cfg, const LogSink& log) {
  using namespace pipeline_detail;
  const ClassifierStore store = read_store(cfg);
  const auto edges = read_display_edges(cfg);
  std::vector<OccupationId> ids;
  for (const auto& [id, info] : store.occupations) ids.push_back(id);
  const NodeIndex index = assign_indices(ids);
  const auto index_edges = to_index_edges(edges, index);
  const LayoutResult result = sfdp_layout(index.size(), index_edges, cfg.layout, cfg.threads);
  const auto digest = layout_hash(result);
  log(LogLevel::Info, "layout: " + std::to_string(index.size()) + " nodes, " +
                          std::to_string(result.iterations_used) + " iterations" +
                          (result.converged ? "" : " (not converged)"));

  const fs::path dir = work_dir(cfg);
  write_atomic_with(dir / "layout.csv", [&](auto& o) {
    csv::write_row(o, {"idx", "esco_id", "x", "y"});
    for (std::uint32_t i = 0; i < index.size(); ++i)
      csv::write_row(o, {std::to_string(i), index.id(i).str(), format_shortest(result.coords[i].x),
                         format_shortest(result.coords[i].y)});
  });
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest));
  const nlohmann::json doc = {{"nodes", index.size()},
                              {"edges", index_edges.size()},
                              {"converged", result.converged},
                              {"iterations_used", result.iterations_used},
                              {"layout_hash", hex},
                              {"seed", cfg.layout.seed}};
  write_atomic(dir / "layout_report.json", doc.dump(2) + "\n");
}

inline void stage_export(const PipelineConfig& cfg, const LogSink& log) {
  using namespace pipeline_detail;
  const ClassifierStore store = read_store(cfg);
  const auto edges = read_display_edges(cfg);

  std::uint64_t n_directed = 0;
  {
    auto in = open_stage_file(cfg, "links_directed.csv", "graph");
    csv::Reader r(in);
    csv::Row row;
    if (r.next(row))
      while (r.next(row)) ++n_directed;
  }

  std::vector<OccupationId> ids;
  for (const auto& [id, info] : store.occupations) ids.push_back(id);
  const NodeIndex index = assign_indices(ids);

  LayoutResult layout;
  {
    auto in = open_stage_file(cfg, "layout.csv", "layout");
    csv::Reader r(in);
    csv::Row row;
    if (!r.next(row)) throw Error(ErrorKind::ParseFailure, "layout.csv: empty");
    csv::Header h(row);
    const auto c_idx = h.require("idx"), c_id = h.require("esco_id"), c_x = h.require("x"),
               c_y = h.require("y");
    while (r.next(row)) {
      auto idx = parse_uint(detail::field(row, c_idx, r.line(), ErrorKind::ParseFailure));
      auto x = parse_double(detail::field(row, c_x, r.line(), ErrorKind::ParseFailure));
      auto y = parse_double(detail::field(row, c_y, r.line(), ErrorKind::ParseFailure));
      if (!idx || !x || !y || *idx != layout.coords.size() ||
          *idx >= index.size() || index.id(static_cast<std::uint32_t>(*idx)).str() != row[c_id])
        throw Error(ErrorKind::ConsistencyViolation,
                    "layout.csv does not match the current store; rerun 'layout'", r.line());
      layout.coords.push_back({*x, *y});
    }
    if (layout.coords.size() != index.size())
      throw Error(ErrorKind::ConsistencyViolation,
                  "layout.csv does not match the current store; rerun 'layout'");
  }

  std::map<OccupationId, AutomationAnnotation> automation;
  {
    auto in = open_stage_file(cfg, "occupation_automation.csv", "annotate");
    csv::Reader r(in);
    csv::Row row;
    if (!r.next(row)) throw Error(ErrorKind::ParseFailure, "occupation_automation.csv: empty");
    csv::Header h(row);
    const auto c_id = h.require("esco_id"), c_max = h.require("prob_max"),
               c_avg = h.require("prob_avg");
    while (r.next(row)) {
      AutomationAnnotation a;
      a.prob_max = detail::optional_real_field(row, c_max, r.line());
      a.prob_avg = detail::optional_real_field(row, c_avg, r.line());
      automation.emplace(OccupationId(row[c_id]), a);
    }
  }

  SupplyDemandCube cube;
  {
    auto in = open_stage_file(cfg, "cube.csv", "annotate");
    cube = read_cube_csv(in);
  }

  BundleParams params;
  params.k = cfg.k;
  params.min_ratio = cfg.min_ratio;
  params.seed = cfg.layout.seed;
  params.megatrend_threshold = cfg.megatrend_threshold;
  params.build_timestamp = resolve_timestamp(cfg);
  params.n_directed_links = n_directed;

  const GraphBundle bundle = build_bundle(store, index, layout, edges, cube, automation, params);
  write_bundle(bundle, bundle_dir(cfg));
  log(LogLevel::Info, "export: " + std::to_string(bundle.nodes.size()) + " nodes, " +
                          std::to_string(bundle.links.size()) + " links, " +
                          std::to_string(bundle.counts.size()) + " count rows -> " +
                          bundle_dir(cfg).string());
}

/// Parses the configured inputs directly and reports cardinalities and
/// automation coverage. Needs no earlier stage.
inline nlohmann::json stage_stats(const PipelineConfig& cfg, const LogSink& log) {
  using namespace pipeline_detail;
  auto triples_in = open_input(cfg.inputs.esco_triples, "esco_triples");
  TripleParseReport report;
  const ClassifierStore store = parse_esco_triples(triples_in, cfg.triples, &report);
  for (const auto& w : report.warnings) log(LogLevel::Warn, w);
  nlohmann::json doc = {{"store", stats_json(store_stats(store))}};

  if (!cfg.inputs.crosswalk.empty() && !cfg.inputs.automation.empty()) {
    auto cw_in = open_input(cfg.inputs.crosswalk, "crosswalk");
    auto auto_in = open_input(cfg.inputs.automation, "automation");
    CoverageReport coverage;
    const auto isco_probs =
        isco_automation(parse_crosswalk(cw_in), parse_automation(auto_in), &coverage);
    const auto counts = coverage_counts(store, isco_probs);
    doc["coverage"] = {{"annotated_isco", counts.annotated},
                       {"unannotated_isco", counts.unannotated},
                       {"missing_socs", coverage.missing_socs.size()}};
  }
  if (!cfg.output_dir.empty()) write_atomic(cfg.output_dir / "stats.json", doc.dump(2) + "\n");
  return doc;
}

inline void stage_all(const PipelineConfig& cfg, const LogSink& log) {
  stage_ingest(cfg, log);
  stage_graph(cfg, log);
  stage_annotate(cfg, log);
  stage_layout(cfg, log);
  stage_export(cfg, log);
}

}  // namespace skillgraph
