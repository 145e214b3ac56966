#pragma once

// Directed skill-match similarity between occupations and top-k pruning.
//
// The ratio from a to b is |S_a ∩ S_b| / |S_a| over essential skills. It is
// carried as the integer pair (shared, from_size). Ranking and threshold
// tests compare the pairs exactly; `ratio()` is the correctly rounded quotient.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skillgraph/classifier.hpp"
#include "skillgraph/error.hpp"
#include "skillgraph/ids.hpp"
#include "skillgraph/parallel.hpp"

namespace skillgraph {

struct SimilarityLink {
  OccupationId from;
  OccupationId to;
  std::uint32_t shared = 0;
  std::uint32_t from_size = 0;

  double ratio() const { return static_cast<double>(shared) / static_cast<double>(from_size); }

  friend bool operator==(const SimilarityLink&, const SimilarityLink&) = default;
};

/// Undirected display edge, `a < b`.
struct DisplayEdge {
  OccupationId a;
  OccupationId b;
  double ratio = 0.0;

  friend bool operator==(const DisplayEdge&, const DisplayEdge&) = default;
};

/// Whole-percent rendering, e.g. 22/35 -> "63%".
inline std::string format_percent(double ratio) {
  return std::to_string(std::lround(ratio * 100.0)) + "%";
}

inline double skill_match(const ClassifierStore& store, const OccupationId& a,
                          const OccupationId& b) {
  for (const auto* id : {&a, &b})
    if (!store.occupations.contains(*id))
      throw Error(ErrorKind::UnknownOccupation, id->str());
  const auto& sa = store.skills_of(a);
  if (sa.empty()) return 0.0;
  const auto& sb = store.skills_of(b);
  std::size_t shared = 0;
  // Both sets are ordered; merge-count the intersection.
  auto i = sa.begin();
  auto j = sb.begin();
  while (i != sa.end() && j != sb.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++shared; ++i; ++j; }
  }
  return static_cast<double>(shared) / static_cast<double>(sa.size());
}

struct TopKOptions {
  std::size_t k = 3;
  double min_ratio = 0.0;
  unsigned workers = 1;
};

/// For every occupation, the k best-matching others with ratio above
/// max(0, min_ratio). Candidates come from a skill -> occupations inverted
/// index, so only pairs sharing at least one skill are ever scored. Output
/// order is (from asc, ratio desc, to asc) and independent of `workers`.
inline std::vector<SimilarityLink> top_k_links(const ClassifierStore& store,
                                               const TopKOptions& options = {}) {
  if (options.k == 0) throw Error(ErrorKind::ConfigInvalid, "k must be at least 1");

  std::vector<const OccupationId*> occupations;
  occupations.reserve(store.occupations.size());
  std::map<OccupationId, std::uint32_t> index_of;
  for (const auto& [id, info] : store.occupations) {
    index_of.emplace(id, static_cast<std::uint32_t>(occupations.size()));
    occupations.push_back(&id);
  }
  const std::size_t n = occupations.size();

  // Skill-major postings, each list ascending by occupation index.
  std::map<SkillId, std::vector<std::uint32_t>> postings;
  std::vector<std::vector<const std::vector<std::uint32_t>*>> skill_lists(n);
  for (const auto& [occ, set] : store.essential) {
    auto idx = index_of.at(occ);
    for (const auto& skill : set) postings[skill].push_back(idx);
  }
  for (const auto& [occ, set] : store.essential) {
    auto idx = index_of.at(occ);
    skill_lists[idx].reserve(set.size());
    for (const auto& skill : set) skill_lists[idx].push_back(&postings.at(skill));
  }

  const double threshold = std::max(0.0, options.min_ratio);
  std::vector<std::vector<SimilarityLink>> per_occupation(n);

  parallel_for(n, options.workers, [&](std::size_t begin, std::size_t end, unsigned) {
    std::vector<std::uint32_t> counts(n, 0);
    std::vector<std::uint32_t> touched;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;  // (shared, to)
    for (std::size_t a = begin; a < end; ++a) {
      const auto from_size = static_cast<std::uint32_t>(skill_lists[a].size());
      if (from_size == 0) continue;
      touched.clear();
      for (const auto* list : skill_lists[a])
        for (auto b : *list) {
          if (b == a) continue;
          if (counts[b]++ == 0) touched.push_back(b);
        }
      candidates.clear();
      for (auto b : touched) {
        const double ratio = static_cast<double>(counts[b]) / from_size;
        if (ratio > threshold) candidates.emplace_back(counts[b], b);
        counts[b] = 0;
      }
      auto better = [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
      };
      const auto keep = std::min(options.k, candidates.size());
      std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                        candidates.end(), better);
      auto& out = per_occupation[a];
      out.reserve(keep);
      for (std::size_t i = 0; i < keep; ++i)
        out.push_back({*occupations[a], *occupations[candidates[i].second],
                       candidates[i].first, from_size});
    }
  });

  std::vector<SimilarityLink> links;
  for (auto& part : per_occupation)
    for (auto& link : part) links.push_back(std::move(link));
  return links;
}

/// Collapses directed links into one edge per unordered pair carrying the
/// larger of the directed ratios. Sorted by (a, b).
inline std::vector<DisplayEdge> merge_undirected(const std::vector<SimilarityLink>& links) {
  std::map<std::pair<OccupationId, OccupationId>, double> best;
  for (const auto& link : links) {
    auto key = link.from < link.to ? std::pair{link.from, link.to} : std::pair{link.to, link.from};
    auto [it, inserted] = best.emplace(std::move(key), link.ratio());
    if (!inserted) it->second = std::max(it->second, link.ratio());
  }
  std::vector<DisplayEdge> edges;
  edges.reserve(best.size());
  for (auto& [pair, ratio] : best) edges.push_back({pair.first, pair.second, ratio});
  return edges;
}

}  // namespace skillgraph
