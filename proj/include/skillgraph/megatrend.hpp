#pragma once

// Automation probabilities mapped SOC -> ISCO -> ESCO occupation. The
// crosswalk is one-to-many, so each ISCO code carries both the maximum and
// the unweighted mean of its SOC probabilities.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "skillgraph/classifier.hpp"
#include "skillgraph/csv.hpp"
#include "skillgraph/format.hpp"
#include "skillgraph/ids.hpp"

namespace skillgraph {

/// Both fields are present or both absent. Absent means "no data", which is
/// not the same claim as probability 0.
struct AutomationAnnotation {
  std::optional<double> prob_max;
  std::optional<double> prob_avg;
  std::size_t n_socs_matched = 0;

  bool present() const { return prob_max.has_value(); }

  friend bool operator==(const AutomationAnnotation&, const AutomationAnnotation&) = default;
};

/// Max and mean of a non-empty collection. The mean is clamped into
/// [min, max] so floating-point summation cannot push it outside the range.
inline AutomationAnnotation summarize_probabilities(std::span<const double> probs) {
  AutomationAnnotation a;
  if (probs.empty()) return a;
  double sum = 0.0;
  double lo = probs.front();
  double hi = probs.front();
  for (double p : probs) {
    sum += p;
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  a.prob_max = hi;
  a.prob_avg = std::clamp(sum / static_cast<double>(probs.size()), lo, hi);
  a.n_socs_matched = probs.size();
  return a;
}

struct CoverageReport {
  std::vector<SocCode> missing_socs;  // crosswalked but absent from the probability table
};

/// Annotation for every ISCO code that appears in the crosswalk. Duplicate
/// (soc, isco) rows count once.
inline std::map<Isco4Code, AutomationAnnotation> isco_automation(
    const CrosswalkTable& crosswalk, const AutomationTable& automation,
    CoverageReport* coverage = nullptr) {
  std::map<Isco4Code, std::set<SocCode>> socs_of;
  for (const auto& row : crosswalk.rows) socs_of[row.isco].insert(row.soc);

  std::set<SocCode> missing;
  std::map<Isco4Code, AutomationAnnotation> out;
  std::vector<double> collected;
  for (const auto& [isco, socs] : socs_of) {
    collected.clear();
    for (const auto& soc : socs) {
      auto it = automation.probs.find(soc);
      if (it == automation.probs.end()) {
        missing.insert(soc);
        continue;
      }
      collected.push_back(it->second);
    }
    out.emplace(isco, summarize_probabilities(collected));
  }
  if (coverage) coverage->missing_socs.assign(missing.begin(), missing.end());
  return out;
}

/// Each occupation inherits its ISCO code's annotation verbatim.
inline std::map<OccupationId, AutomationAnnotation> occupation_automation(
    const ClassifierStore& store, const std::map<Isco4Code, AutomationAnnotation>& isco_probs) {
  std::map<OccupationId, AutomationAnnotation> out;
  for (const auto& [id, info] : store.occupations) {
    auto it = isco_probs.find(info.isco);
    out.emplace(id, it == isco_probs.end() ? AutomationAnnotation{} : it->second);
  }
  return out;
}

inline std::string format_probability(const std::optional<double>& p) {
  return p ? format_shortest(*p) : std::string();
}

/// `isco_code,n_socs_matched,prob_max,prob_avg` for every distinct ISCO code
/// of the store; unannotated codes have empty probability fields.
inline void write_coverage_csv(const ClassifierStore& store,
                               const std::map<Isco4Code, AutomationAnnotation>& isco_probs,
                               std::ostream& out) {
  std::set<Isco4Code> codes;
  for (const auto& [id, info] : store.occupations) codes.insert(info.isco);
  csv::write_row(out, {"isco_code", "n_socs_matched", "prob_max", "prob_avg"});
  for (const auto& code : codes) {
    auto it = isco_probs.find(code);
    AutomationAnnotation a = it == isco_probs.end() ? AutomationAnnotation{} : it->second;
    csv::write_row(out, {code.str(), std::to_string(a.n_socs_matched),
                         format_probability(a.prob_max), format_probability(a.prob_avg)});
  }
}

struct CoverageCounts {
  std::size_t annotated = 0;
  std::size_t unannotated = 0;
};

inline CoverageCounts coverage_counts(const ClassifierStore& store,
                                      const std::map<Isco4Code, AutomationAnnotation>& isco_probs) {
  std::set<Isco4Code> codes;
  for (const auto& [id, info] : store.occupations) codes.insert(info.isco);
  CoverageCounts c;
  for (const auto& code : codes) {
    auto it = isco_probs.find(code);
    if (it != isco_probs.end() && it->second.present()) ++c.annotated;
    else ++c.unannotated;
  }
  return c;
}

}  // namespace skillgraph
