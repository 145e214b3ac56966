#pragma once

// The static export the viewer loads: nodes.csv, links.csv, counts.csv and
// graph.json, which carries the same rows plus a meta block.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "skillgraph/classifier.hpp"
#include "skillgraph/csv.hpp"
#include "skillgraph/error.hpp"
#include "skillgraph/format.hpp"
#include "skillgraph/layout.hpp"
#include "skillgraph/megatrend.hpp"
#include "skillgraph/similarity.hpp"
#include "skillgraph/supply_demand.hpp"

namespace skillgraph {

inline constexpr int kBundleSchemaVersion = 1;
inline constexpr int kCoordDecimals = 6;
inline constexpr int kRatioDecimals = 4;

struct OccupationNode {
  std::uint32_t idx = 0;
  std::string esco_id;
  std::string label;
  std::string isco4;
  char isco1 = '0';
  std::optional<double> prob_max;
  std::optional<double> prob_avg;
  double x = 0.0;
  double y = 0.0;
  std::uint64_t vac_total = 0;
  std::uint64_t cv_total = 0;

  friend bool operator==(const OccupationNode&, const OccupationNode&) = default;
};

struct BundleLink {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  double ratio = 0.0;

  friend bool operator==(const BundleLink&, const BundleLink&) = default;
};

struct CountRow {
  std::uint32_t idx = 0;
  std::string country;
  std::uint64_t vacancies = 0;
  std::uint64_t seekers = 0;

  friend bool operator==(const CountRow&, const CountRow&) = default;
};

struct BundleMeta {
  int schema_version = kBundleSchemaVersion;
  std::optional<std::string> build_timestamp;
  std::uint64_t k = 3;
  double min_ratio = 0.0;
  std::uint64_t seed = 1;
  double megatrend_threshold = 0.7;
  bool vacancy_fanout_duplicated = true;
  std::uint64_t n_nodes = 0;
  std::uint64_t n_links = 0;
  std::uint64_t n_directed_links = 0;
  std::uint64_t n_count_rows = 0;

  friend bool operator==(const BundleMeta&, const BundleMeta&) = default;
};

struct GraphBundle {
  BundleMeta meta;
  std::vector<OccupationNode> nodes;
  std::vector<BundleLink> links;
  std::vector<CountRow> counts;

  friend bool operator==(const GraphBundle&, const GraphBundle&) = default;
};

struct BundleParams {
  std::uint64_t k = 3;
  double min_ratio = 0.0;
  std::uint64_t seed = 1;
  double megatrend_threshold = 0.7;
  std::optional<std::string> build_timestamp;
  std::uint64_t n_directed_links = 0;
};

/// Checks every invariant; throws `kind` (ConsistencyViolation on write,
/// ParseFailure on read) on the first violation.
inline void validate_bundle(const GraphBundle& b, ErrorKind kind = ErrorKind::ConsistencyViolation) {
  const auto n = b.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = b.nodes[i];
    if (node.idx != i) throw Error(kind, "node indices are not contiguous at " + std::to_string(i));
    if (node.esco_id.empty()) throw Error(kind, "node " + std::to_string(i) + " has no esco_id");
    if (!parse_isco4(node.isco4)) throw Error(kind, "node " + std::to_string(i) + " has bad isco4");
    if (node.isco1 != node.isco4.front())
      throw Error(kind, "node " + std::to_string(i) + ": isco1 differs from isco4");
    if (node.prob_max.has_value() != node.prob_avg.has_value())
      throw Error(kind, "node " + std::to_string(i) + ": only one probability present");
    for (const auto& p : {node.prob_max, node.prob_avg})
      if (p && !(*p >= 0.0 && *p <= 1.0))
        throw Error(kind, "node " + std::to_string(i) + ": probability out of range");
  }
  for (const auto& l : b.links) {
    if (l.source >= n || l.target >= n)
      throw Error(kind, "link (" + std::to_string(l.source) + ", " + std::to_string(l.target) +
                            ") references a node >= " + std::to_string(n));
    if (l.source == l.target) throw Error(kind, "self-link on " + std::to_string(l.source));
    if (!(l.ratio > 0.0 && l.ratio <= 1.0)) throw Error(kind, "link ratio out of (0, 1]");
  }
  for (const auto& c : b.counts) {
    if (c.idx >= n) throw Error(kind, "count row references node " + std::to_string(c.idx));
    if (!normalize_country(c.country) || *normalize_country(c.country) != c.country)
      throw Error(kind, "count row has bad country '" + c.country + "'");
  }
  if (b.meta.n_nodes != n || b.meta.n_links != b.links.size() ||
      b.meta.n_count_rows != b.counts.size())
    throw Error(kind, "meta counts disagree with bundle contents");
}

/// Assembles the bundle. Coordinates and ratios are rounded to their
/// serialized precision; reading the files back reproduces them exactly.
inline GraphBundle build_bundle(const ClassifierStore& store, const NodeIndex& index,
                                const LayoutResult& layout, const std::vector<DisplayEdge>& edges,
                                const SupplyDemandCube& cube,
                                const std::map<OccupationId, AutomationAnnotation>& automation,
                                const BundleParams& params) {
  if (layout.coords.size() != index.size())
    throw Error(ErrorKind::ConsistencyViolation, "layout size differs from node count");
  GraphBundle b;
  for (std::uint32_t i = 0; i < index.size(); ++i) {
    const auto& id = index.id(i);
    auto occ = store.occupations.find(id);
    if (occ == store.occupations.end())
      throw Error(ErrorKind::ConsistencyViolation, "indexed node not in store: " + id.str());
    OccupationNode node;
    node.idx = i;
    node.esco_id = id.str();
    node.label = occ->second.label;
    node.isco4 = occ->second.isco.str();
    node.isco1 = isco_major_group(occ->second.isco);
    if (auto a = automation.find(id); a != automation.end() && a->second.present()) {
      node.prob_max = a->second.prob_max;
      node.prob_avg = a->second.prob_avg;
    }
    node.x = round_fixed(layout.coords[i].x, kCoordDecimals);
    node.y = round_fixed(layout.coords[i].y, kCoordDecimals);
    const auto total = cube.cell(id, kTotal);
    node.vac_total = total.vacancies;
    node.cv_total = total.seekers;
    b.nodes.push_back(std::move(node));

    if (auto row = cube.cells.find(id); row != cube.cells.end())
      for (const auto& [country, cell] : row->second) {
        if (country == kTotal) continue;
        b.counts.push_back({i, country, cell.vacancies, cell.seekers});
      }
  }
  for (const auto& e : edges)
    b.links.push_back({index.at(e.a), index.at(e.b), round_fixed(e.ratio, kRatioDecimals)});

  b.meta.build_timestamp = params.build_timestamp;
  b.meta.k = params.k;
  b.meta.min_ratio = params.min_ratio;
  b.meta.seed = params.seed;
  b.meta.megatrend_threshold = params.megatrend_threshold;
  b.meta.n_nodes = b.nodes.size();
  b.meta.n_links = b.links.size();
  b.meta.n_directed_links = params.n_directed_links;
  b.meta.n_count_rows = b.counts.size();
  return b;
}

// ---------------------------------------------------------------------------
// Serialization

inline void write_nodes_csv(const GraphBundle& b, std::ostream& out) {
  csv::write_row(out, {"idx", "esco_id", "label", "isco4", "isco1", "prob_max", "prob_avg", "x",
                       "y", "vac_total", "cv_total"});
  for (const auto& n : b.nodes)
    csv::write_row(out, {std::to_string(n.idx), n.esco_id, n.label, n.isco4,
                         std::string(1, n.isco1), format_probability(n.prob_max),
                         format_probability(n.prob_avg), format_fixed(n.x, kCoordDecimals),
                         format_fixed(n.y, kCoordDecimals), std::to_string(n.vac_total),
                         std::to_string(n.cv_total)});
}

inline void write_links_csv(const GraphBundle& b, std::ostream& out) {
  csv::write_row(out, {"source", "target", "ratio"});
  for (const auto& l : b.links)
    csv::write_row(out, {std::to_string(l.source), std::to_string(l.target),
                         format_fixed(l.ratio, kRatioDecimals)});
}

inline void write_counts_csv(const GraphBundle& b, std::ostream& out) {
  csv::write_row(out, {"idx", "country", "vacancies", "seekers"});
  for (const auto& c : b.counts)
    csv::write_row(out, {std::to_string(c.idx), c.country, std::to_string(c.vacancies),
                         std::to_string(c.seekers)});
}

inline nlohmann::json to_json(const GraphBundle& b) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& p) { return p ? json(*p) : json(nullptr); };
  json meta = {
      {"schema_version", b.meta.schema_version},
      {"build_timestamp", b.meta.build_timestamp ? json(*b.meta.build_timestamp) : json(nullptr)},
      {"k", b.meta.k},
      {"min_ratio", b.meta.min_ratio},
      {"seed", b.meta.seed},
      {"megatrend_threshold", b.meta.megatrend_threshold},
      {"vacancy_fanout_duplicated", b.meta.vacancy_fanout_duplicated},
      {"counts",
       {{"nodes", b.meta.n_nodes},
        {"links", b.meta.n_links},
        {"directed_links", b.meta.n_directed_links},
        {"count_rows", b.meta.n_count_rows}}},
  };
  json nodes = json::array();
  for (const auto& n : b.nodes)
    nodes.push_back({{"idx", n.idx},
                     {"esco_id", n.esco_id},
                     {"label", n.label},
                     {"isco4", n.isco4},
                     {"isco1", std::string(1, n.isco1)},
                     {"prob_max", opt(n.prob_max)},
                     {"prob_avg", opt(n.prob_avg)},
                     {"x", n.x},
                     {"y", n.y},
                     {"vac_total", n.vac_total},
                     {"cv_total", n.cv_total}});
  json links = json::array();
  for (const auto& l : b.links)
    links.push_back({{"source", l.source}, {"target", l.target}, {"ratio", l.ratio}});
  json counts = json::array();
  for (const auto& c : b.counts)
    counts.push_back(
        {{"idx", c.idx}, {"country", c.country}, {"vacancies", c.vacancies}, {"seekers", c.seekers}});
  return {{"meta", meta}, {"nodes", nodes}, {"links", links}, {"counts", counts}};
}

/// Parses graph.json content. Throws SchemaMismatch for an unknown
/// schema_version and ParseFailure for anything else that is off.
inline GraphBundle bundle_from_json(const std::string& text) {
  using nlohmann::json;
  GraphBundle b;
  try {
    const json doc = json::parse(text);
    const json& meta = doc.at("meta");
    const int version = meta.at("schema_version").get<int>();
    if (version != kBundleSchemaVersion)
      throw Error(ErrorKind::SchemaMismatch,
                  "schema_version " + std::to_string(version) + ", expected " +
                      std::to_string(kBundleSchemaVersion));
    b.meta.schema_version = version;
    if (!meta.at("build_timestamp").is_null())
      b.meta.build_timestamp = meta.at("build_timestamp").get<std::string>();
    b.meta.k = meta.at("k").get<std::uint64_t>();
    b.meta.min_ratio = meta.at("min_ratio").get<double>();
    b.meta.seed = meta.at("seed").get<std::uint64_t>();
    b.meta.megatrend_threshold = meta.at("megatrend_threshold").get<double>();
    b.meta.vacancy_fanout_duplicated = meta.at("vacancy_fanout_duplicated").get<bool>();
    const json& counts = meta.at("counts");
    b.meta.n_nodes = counts.at("nodes").get<std::uint64_t>();
    b.meta.n_links = counts.at("links").get<std::uint64_t>();
    b.meta.n_directed_links = counts.at("directed_links").get<std::uint64_t>();
    b.meta.n_count_rows = counts.at("count_rows").get<std::uint64_t>();

    auto opt = [](const json& v) {
      return v.is_null() ? std::optional<double>{} : std::optional<double>{v.get<double>()};
    };
    auto count = [](const json& v) {
      if (!v.is_number_unsigned()) throw Error(ErrorKind::ParseFailure, "count is not a non-negative integer");
      return v.get<std::uint64_t>();
    };
    for (const auto& n : doc.at("nodes")) {
      OccupationNode node;
      node.idx = n.at("idx").get<std::uint32_t>();
      node.esco_id = n.at("esco_id").get<std::string>();
      node.label = n.at("label").get<std::string>();
      node.isco4 = n.at("isco4").get<std::string>();
      const auto isco1 = n.at("isco1").get<std::string>();
      if (isco1.size() != 1) throw Error(ErrorKind::ParseFailure, "isco1 must be one character");
      node.isco1 = isco1.front();
      node.prob_max = opt(n.at("prob_max"));
      node.prob_avg = opt(n.at("prob_avg"));
      node.x = n.at("x").get<double>();
      node.y = n.at("y").get<double>();
      node.vac_total = count(n.at("vac_total"));
      node.cv_total = count(n.at("cv_total"));
      b.nodes.push_back(std::move(node));
    }
    for (const auto& l : doc.at("links"))
      b.links.push_back({l.at("source").get<std::uint32_t>(), l.at("target").get<std::uint32_t>(),
                         l.at("ratio").get<double>()});
    for (const auto& c : doc.at("counts"))
      b.counts.push_back({c.at("idx").get<std::uint32_t>(), c.at("country").get<std::string>(),
                          count(c.at("vacancies")), count(c.at("seekers"))});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseFailure, std::string("graph.json: ") + e.what());
  }
  validate_bundle(b, ErrorKind::ParseFailure);
  return b;
}

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::uint64_t count_field(const csv::Row& row, std::size_t col, std::size_t line) {
  auto v = parse_uint(field(row, col, line, ErrorKind::ParseFailure));
  if (!v) throw Error(ErrorKind::ParseFailure, "bad count '" + row[col] + "'", line);
  return *v;
}

inline std::uint32_t index_field(const csv::Row& row, std::size_t col, std::size_t line) {
  auto v = parse_uint(field(row, col, line, ErrorKind::ParseFailure));
  if (!v || *v > UINT32_MAX) throw Error(ErrorKind::ParseFailure, "bad index '" + row[col] + "'", line);
  return static_cast<std::uint32_t>(*v);
}

inline double real_field(const csv::Row& row, std::size_t col, std::size_t line) {
  auto v = parse_double(field(row, col, line, ErrorKind::ParseFailure));
  if (!v) throw Error(ErrorKind::ParseFailure, "bad number '" + row[col] + "'", line);
  return *v;
}

inline std::optional<double> optional_real_field(const csv::Row& row, std::size_t col,
                                                 std::size_t line) {
  if (field(row, col, line, ErrorKind::ParseFailure).empty()) return std::nullopt;
  return real_field(row, col, line);
}

}  // namespace detail

/// Reads the three CSV tables; meta is taken from `meta`.
inline GraphBundle bundle_from_csv(std::istream& nodes, std::istream& links, std::istream& counts,
                                   const BundleMeta& meta) {
  GraphBundle b;
  b.meta = meta;
  csv::Row row;
  {
    csv::Reader r(nodes);
    if (!r.next(row)) throw Error(ErrorKind::ParseFailure, "nodes.csv: empty");
    csv::Header h(row);
    const auto c_idx = h.require("idx"), c_id = h.require("esco_id"), c_label = h.require("label"),
               c_isco4 = h.require("isco4"), c_isco1 = h.require("isco1"),
               c_max = h.require("prob_max"), c_avg = h.require("prob_avg"), c_x = h.require("x"),
               c_y = h.require("y"), c_vac = h.require("vac_total"), c_cv = h.require("cv_total");
    while (r.next(row)) {
      const auto line = r.line();
      OccupationNode n;
      n.idx = detail::index_field(row, c_idx, line);
      n.esco_id = detail::field(row, c_id, line, ErrorKind::ParseFailure);
      n.label = detail::field(row, c_label, line, ErrorKind::ParseFailure);
      n.isco4 = detail::field(row, c_isco4, line, ErrorKind::ParseFailure);
      const auto& isco1 = detail::field(row, c_isco1, line, ErrorKind::ParseFailure);
      if (isco1.size() != 1) throw Error(ErrorKind::ParseFailure, "nodes.csv: bad isco1", line);
      n.isco1 = isco1.front();
      n.prob_max = detail::optional_real_field(row, c_max, line);
      n.prob_avg = detail::optional_real_field(row, c_avg, line);
      n.x = detail::real_field(row, c_x, line);
      n.y = detail::real_field(row, c_y, line);
      n.vac_total = detail::count_field(row, c_vac, line);
      n.cv_total = detail::count_field(row, c_cv, line);
      b.nodes.push_back(std::move(n));
    }
  }
  {
    csv::Reader r(links);
    if (!r.next(row)) throw Error(ErrorKind::ParseFailure, "links.csv: empty");
    csv::Header h(row);
    const auto c_s = h.require("source"), c_t = h.require("target"), c_r = h.require("ratio");
    while (r.next(row))
      b.links.push_back({detail::index_field(row, c_s, r.line()),
                         detail::index_field(row, c_t, r.line()),
                         detail::real_field(row, c_r, r.line())});
  }
  {
    csv::Reader r(counts);
    if (!r.next(row)) throw Error(ErrorKind::ParseFailure, "counts.csv: empty");
    csv::Header h(row);
    const auto c_idx = h.require("idx"), c_country = h.require("country"),
               c_vac = h.require("vacancies"), c_seek = h.require("seekers");
    while (r.next(row))
      b.counts.push_back({detail::index_field(row, c_idx, r.line()),
                          detail::field(row, c_country, r.line(), ErrorKind::ParseFailure),
                          detail::count_field(row, c_vac, r.line()),
                          detail::count_field(row, c_seek, r.line())});
  }
  validate_bundle(b, ErrorKind::ParseFailure);
  return b;
}

/// Writes the four bundle files into `dir`. Files are staged in a sibling
/// directory and renamed into place only after every file is complete.
inline void write_bundle(const GraphBundle& b, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  validate_bundle(b, ErrorKind::ConsistencyViolation);

  std::ostringstream nodes, links, counts;
  write_nodes_csv(b, nodes);
  write_links_csv(b, links);
  write_counts_csv(b, counts);
  const std::string json_text = to_json(b).dump() + "\n";

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
  const fs::path staging = dir / ".staging";
  fs::remove_all(staging, ec);
  fs::create_directories(staging, ec);
  if (ec) throw Error(ErrorKind::IoFailure, "cannot create " + staging.string());

  const char* const names[] = {"nodes.csv", "links.csv", "counts.csv", "graph.json"};
  const std::string contents[] = {nodes.str(), links.str(), counts.str(), json_text};
  try {
    for (std::size_t i = 0; i < 4; ++i) {
      std::ofstream out(staging / names[i], std::ios::binary | std::ios::trunc);
      out << contents[i];
      out.flush();
      if (!out) throw Error(ErrorKind::IoFailure, std::string("cannot write ") + names[i]);
    }
    for (std::size_t i = 0; i < 4; ++i) {
      fs::rename(staging / names[i], dir / names[i], ec);
      if (ec) throw Error(ErrorKind::IoFailure, std::string("cannot move ") + names[i] + ": " + ec.message());
    }
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  fs::remove_all(staging, ec);
}

/// Reads graph.json and the CSV tables of `dir`, checks that both carry the
/// same rows, and validates referential integrity.
inline GraphBundle read_bundle(const std::filesystem::path& dir) {
  const GraphBundle from_json = bundle_from_json(detail::read_file(dir / "graph.json"));
  std::istringstream nodes(detail::read_file(dir / "nodes.csv"));
  std::istringstream links(detail::read_file(dir / "links.csv"));
  std::istringstream counts(detail::read_file(dir / "counts.csv"));
  const GraphBundle from_csv = bundle_from_csv(nodes, links, counts, from_json.meta);
  if (!(from_csv == from_json))
    throw Error(ErrorKind::ParseFailure, "CSV tables and graph.json disagree");
  return from_json;
}

}  // namespace skillgraph
