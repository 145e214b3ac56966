#pragma once

// Streaming crosstab of distinct jobseekers (supply) and vacancies (demand)
// per occupation and country, with a TOTAL column per occupation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "skillgraph/classifier.hpp"
#include "skillgraph/csv.hpp"
#include "skillgraph/error.hpp"
#include "skillgraph/format.hpp"
#include "skillgraph/ids.hpp"

namespace skillgraph {

inline constexpr std::string_view kTotal = "TOTAL";

struct CvRecord {
  std::string jobseeker_id;
  std::string country;
  OccupationId desired_occupation;
  std::string snapshot_month;
};

struct VacancyRecord {
  std::string vacancy_id;
  std::string country;
  Isco4Code isco;
  std::uint64_t n = 1;
};

/// Counted-and-skipped input problems.
struct RecordIssues {
  std::size_t malformed = 0;
  std::vector<std::string> messages;

  void add(std::size_t line, const std::string& what) {
    ++malformed;
    if (messages.size() < 100)
      messages.push_back(std::string(to_string(ErrorKind::MalformedRecord)) + " at line " +
                         std::to_string(line) + ": " + what);
  }
};

/// Uppercases; returns nullopt unless the result matches `^[A-Z]{2}$`.
inline std::optional<std::string> normalize_country(std::string_view raw) {
  raw = detail::trim(raw);
  if (raw.size() != 2) return std::nullopt;
  std::string out;
  for (char c : raw) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    if (c < 'A' || c > 'Z') return std::nullopt;
    out += c;
  }
  return out;
}

/// `^\d{4}-(0[1-9]|1[0-2])$`
inline bool valid_month(std::string_view m) {
  if (m.size() != 7 || m[4] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u})
    if (!detail::is_digit(m[i])) return false;
  int month = (m[5] - '0') * 10 + (m[6] - '0');
  return month >= 1 && month <= 12;
}

// ---------------------------------------------------------------------------

/// Distinct-seeker state per (occupation, country) and (occupation, TOTAL).
/// Partial aggregates from different shards merge by set union.
class CvAggregate {
 public:
  using Key = std::pair<OccupationId, std::string>;

  void add(const CvRecord& r) {
    cells_[{r.desired_occupation, r.country}].insert(r.jobseeker_id);
    cells_[{r.desired_occupation, std::string(kTotal)}].insert(r.jobseeker_id);
  }

  void merge(const CvAggregate& other) {
    for (const auto& [key, ids] : other.cells_) cells_[key].insert(ids.begin(), ids.end());
  }

  std::map<Key, std::uint64_t> counts() const {
    std::map<Key, std::uint64_t> out;
    for (const auto& [key, ids] : cells_) out.emplace(key, ids.size());
    return out;
  }

  std::uint64_t count(const OccupationId& occ, std::string_view country) const {
    auto it = cells_.find({occ, std::string(country)});
    return it == cells_.end() ? 0 : it->second.size();
  }

  bool empty() const { return cells_.empty(); }

 private:
  std::map<Key, std::unordered_set<std::string>> cells_;
};

/// Summed vacancy multiplicities per (ISCO, country) and (ISCO, TOTAL).
class VacancyAggregate {
 public:
  using Key = std::pair<Isco4Code, std::string>;

  void add(const VacancyRecord& r) {
    cells_[{r.isco, r.country}] += r.n;
    cells_[{r.isco, std::string(kTotal)}] += r.n;
  }

  void merge(const VacancyAggregate& other) {
    for (const auto& [key, n] : other.cells_) cells_[key] += n;
  }

  const std::map<Key, std::uint64_t>& counts() const { return cells_; }

  std::uint64_t count(const Isco4Code& isco, std::string_view country) const {
    auto it = cells_.find({isco, std::string(country)});
    return it == cells_.end() ? 0 : it->second;
  }

  bool empty() const { return cells_.empty(); }

 private:
  std::map<Key, std::uint64_t> cells_;
};

/// Streams `jobseeker_id,country,desired_occupation,snapshot_month` rows into
/// `agg`. Malformed rows are counted in `issues` and skipped.
inline void aggregate_cv(std::istream& in, CvAggregate& agg, RecordIssues& issues) {
  csv::Reader reader(in);
  csv::Row row;
  if (!reader.next(row)) return;
  csv::Header header(row);
  const auto id_col = header.require("jobseeker_id");
  const auto country_col = header.require("country");
  const auto occ_col = header.require("desired_occupation");
  const auto month_col = header.require("snapshot_month");
  const auto width = std::max({id_col, country_col, occ_col, month_col}) + 1;

  while (reader.next(row)) {
    if (row.size() < width) {
      issues.add(reader.line(), "expected " + std::to_string(width) + " fields");
      continue;
    }
    auto id = std::string(detail::trim(row[id_col]));
    auto occ = std::string(detail::trim(row[occ_col]));
    auto country = normalize_country(row[country_col]);
    auto month = detail::trim(row[month_col]);
    if (id.empty()) { issues.add(reader.line(), "empty jobseeker_id"); continue; }
    if (occ.empty()) { issues.add(reader.line(), "empty desired_occupation"); continue; }
    if (!country) { issues.add(reader.line(), "bad country '" + row[country_col] + "'"); continue; }
    if (!valid_month(month)) { issues.add(reader.line(), "bad month '" + row[month_col] + "'"); continue; }
    agg.add({std::move(id), std::move(*country), OccupationId(std::move(occ)), std::string(month)});
  }
}

/// Streams `vacancy_id,country,isco_code[,n]` rows into `agg`.
inline void aggregate_vacancies(std::istream& in, VacancyAggregate& agg, RecordIssues& issues) {
  csv::Reader reader(in);
  csv::Row row;
  if (!reader.next(row)) return;
  csv::Header header(row);
  const auto id_col = header.require("vacancy_id");
  const auto country_col = header.require("country");
  const auto isco_col = header.require("isco_code");
  const auto n_col = header.find("n");
  const auto width = std::max({id_col, country_col, isco_col}) + 1;

  while (reader.next(row)) {
    if (row.size() < width) {
      issues.add(reader.line(), "expected " + std::to_string(width) + " fields");
      continue;
    }
    auto id = detail::trim(row[id_col]);
    auto country = normalize_country(row[country_col]);
    auto isco = parse_isco4(row[isco_col]);
    std::uint64_t n = 1;
    if (n_col && *n_col < row.size() && !detail::trim(row[*n_col]).empty()) {
      auto parsed = parse_uint(detail::trim(row[*n_col]));
      if (!parsed || *parsed == 0) { issues.add(reader.line(), "bad n '" + row[*n_col] + "'"); continue; }
      n = *parsed;
    }
    if (id.empty()) { issues.add(reader.line(), "empty vacancy_id"); continue; }
    if (!country) { issues.add(reader.line(), "bad country '" + row[country_col] + "'"); continue; }
    if (!isco) { issues.add(reader.line(), "bad isco_code '" + row[isco_col] + "'"); continue; }
    agg.add({std::string(id), std::move(*country), std::move(*isco), n});
  }
}

// ---------------------------------------------------------------------------

struct CountCell {
  std::uint64_t vacancies = 0;
  std::uint64_t seekers = 0;

  friend bool operator==(const CountCell&, const CountCell&) = default;
};

/// Per-occupation rows keyed by country code or "TOTAL". Every occupation of
/// the store has at least its TOTAL cell.
struct SupplyDemandCube {
  std::map<OccupationId, std::map<std::string, CountCell>> cells;

  CountCell cell(const OccupationId& occ, std::string_view country) const {
    auto row = cells.find(occ);
    if (row == cells.end()) return {};
    auto it = row->second.find(std::string(country));
    return it == row->second.end() ? CountCell{} : it->second;
  }

  friend bool operator==(const SupplyDemandCube&, const SupplyDemandCube&) = default;
};

struct AttachReport {
  std::vector<Isco4Code> unmapped_isco;  // vacancy codes with no ESCO occupation
  std::uint64_t orphaned_vacancies = 0;  // TOTAL over unmapped_isco
  std::vector<OccupationId> unknown_occupations;  // CV occupations not in the store
  std::uint64_t orphaned_seeker_cells = 0;
};

/// Joins both aggregates onto the store's occupations. Vacancies are fanned
/// out: every occupation under an ISCO code receives that code's full count.
inline SupplyDemandCube attach_counts(const ClassifierStore& store, const CvAggregate& cv,
                                      const VacancyAggregate& vacancies,
                                      AttachReport* report_out = nullptr) {
  AttachReport report;
  SupplyDemandCube cube;
  std::map<Isco4Code, std::vector<OccupationId>> children;
  for (const auto& [id, info] : store.occupations) {
    children[info.isco].push_back(id);
    cube.cells[id][std::string(kTotal)];
  }

  for (const auto& [key, n] : vacancies.counts()) {
    auto it = children.find(key.first);
    if (it == children.end()) {
      if (key.second == kTotal) {
        report.unmapped_isco.push_back(key.first);
        report.orphaned_vacancies += n;
      }
      continue;
    }
    for (const auto& occ : it->second) cube.cells[occ][key.second].vacancies = n;
  }

  std::set<OccupationId> unknown;
  for (const auto& [key, n] : cv.counts()) {
    auto row = cube.cells.find(key.first);
    if (row == cube.cells.end()) {
      unknown.insert(key.first);
      ++report.orphaned_seeker_cells;
      continue;
    }
    row->second[key.second].seekers = n;
  }
  report.unknown_occupations.assign(unknown.begin(), unknown.end());

  if (report_out) *report_out = std::move(report);
  return cube;
}

inline void write_cube_csv(const SupplyDemandCube& cube, std::ostream& out) {
  csv::write_row(out, {"esco_id", "country", "vacancies", "seekers"});
  for (const auto& [occ, row] : cube.cells)
    for (const auto& [country, cell] : row)
      csv::write_row(out, {occ.str(), country, std::to_string(cell.vacancies),
                           std::to_string(cell.seekers)});
}

inline SupplyDemandCube read_cube_csv(std::istream& in) {
  csv::Reader reader(in);
  csv::Row row;
  SupplyDemandCube cube;
  if (!reader.next(row)) throw Error(ErrorKind::ParseFailure, "cube: empty file");
  csv::Header header(row);
  const auto occ_col = header.require("esco_id"), country_col = header.require("country"),
             vac_col = header.require("vacancies"), seek_col = header.require("seekers");
  while (reader.next(row)) {
    auto vac = parse_uint(detail::field(row, vac_col, reader.line(), ErrorKind::ParseFailure));
    auto seek = parse_uint(detail::field(row, seek_col, reader.line(), ErrorKind::ParseFailure));
    if (!vac || !seek) throw Error(ErrorKind::ParseFailure, "cube: bad count", reader.line());
    cube.cells[OccupationId(detail::field(row, occ_col, reader.line(), ErrorKind::ParseFailure))]
              [detail::field(row, country_col, reader.line(), ErrorKind::ParseFailure)] = {*vac, *seek};
  }
  return cube;
}

}  // namespace skillgraph
