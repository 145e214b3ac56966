#pragma once

// Multilevel spring-electrical layout (SFDP style).
//
// Forces: attraction d^2/K along every edge, repulsion C*K^2/d between every
// pair of nodes, the latter approximated by a Barnes-Hut quadtree with
// opening angle theta. Nodes move a fixed step along their net force; the
// step follows the adaptive cooling schedule of Hu (2005): shrink by 0.9 when
// the energy rises, grow after five consecutive decreases.
//
// Every quantity is a pure function of (graph, config): positions are
// updated synchronously from a snapshot, per-node sums run in a fixed order
// and random draws are counter based. The worker count never changes the
// result.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skillgraph/error.hpp"
#include "skillgraph/format.hpp"
#include "skillgraph/ids.hpp"
#include "skillgraph/parallel.hpp"
#include "skillgraph/quadtree.hpp"
#include "skillgraph/rng.hpp"
#include "skillgraph/similarity.hpp"

namespace skillgraph {

struct LayoutConfig {
  std::uint64_t seed = 1;
  double K = 1.0;      // natural spring length
  double C = 0.2;      // relative repulsion strength
  double theta = 0.7;  // Barnes-Hut opening angle
  int max_iterations = 300;
  double tol = 1e-3;  // converged when mean node movement < tol * K
  bool multilevel = true;
  std::size_t coarsen_floor = 50;

  void validate() const {
    if (!(K > 0.0)) throw Error(ErrorKind::ConfigInvalid, "layout.K must be > 0");
    if (!(C > 0.0)) throw Error(ErrorKind::ConfigInvalid, "layout.C must be > 0");
    if (!(theta > 0.0 && theta < 2.0))
      throw Error(ErrorKind::ConfigInvalid, "layout.theta must be in (0, 2)");
    if (max_iterations < 1)
      throw Error(ErrorKind::ConfigInvalid, "layout.max_iterations must be >= 1");
    if (!(tol > 0.0)) throw Error(ErrorKind::ConfigInvalid, "layout.tol must be > 0");
    if (coarsen_floor < 1) throw Error(ErrorKind::ConfigInvalid, "layout.coarsen_floor must be >= 1");
  }
};

struct IndexEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  double weight = 1.0;
};

struct LayoutResult {
  std::vector<Point> coords;
  bool converged = false;
  int iterations_used = 0;
};

// ---------------------------------------------------------------------------
// Node indexing

/// Dense indices in ascending identifier order.
class NodeIndex {
 public:
  NodeIndex() = default;

  const std::vector<OccupationId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }

  std::uint32_t at(const OccupationId& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) throw Error(ErrorKind::UnknownOccupation, id.str());
    return static_cast<std::uint32_t>(it - ids_.begin());
  }

  const OccupationId& id(std::uint32_t idx) const { return ids_.at(idx); }

 private:
  template <typename Range>
  friend NodeIndex assign_indices(const Range& nodes);
  std::vector<OccupationId> ids_;
};

template <typename Range>
NodeIndex assign_indices(const Range& nodes) {
  NodeIndex index;
  for (const auto& id : nodes) index.ids_.push_back(id);
  if (index.ids_.empty()) throw Error(ErrorKind::EmptyGraph, "no nodes to index");
  std::sort(index.ids_.begin(), index.ids_.end());
  index.ids_.erase(std::unique(index.ids_.begin(), index.ids_.end()), index.ids_.end());
  return index;
}

inline std::vector<IndexEdge> to_index_edges(const std::vector<DisplayEdge>& edges,
                                             const NodeIndex& index) {
  std::vector<IndexEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back({index.at(e.a), index.at(e.b), e.ratio});
  return out;
}

// ---------------------------------------------------------------------------

namespace layout_detail {

struct Graph {
  std::size_t n = 0;
  std::vector<IndexEdge> edges;                // a < b, sorted, unique
  std::vector<std::uint32_t> offsets;          // CSR adjacency
  std::vector<std::uint32_t> neighbours;

  void build_adjacency() {
    offsets.assign(n + 1, 0);
    for (const auto& e : edges) {
      ++offsets[e.a + 1];
      ++offsets[e.b + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    neighbours.assign(offsets[n], 0);
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& e : edges) {
      neighbours[cursor[e.a]++] = e.b;
      neighbours[cursor[e.b]++] = e.a;
    }
    // Edges are sorted by (a, b), so each adjacency run is already ascending
    // for the b side; sort to make the a side ascending as well.
    for (std::size_t i = 0; i < n; ++i)
      std::sort(neighbours.begin() + offsets[i], neighbours.begin() + offsets[i + 1]);
  }
};

/// Orients, sorts and deduplicates (keeping the heaviest copy).
inline std::vector<IndexEdge> canonical_edges(std::size_t n, std::span<const IndexEdge> edges) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> unique;
  for (const auto& e : edges) {
    if (e.a >= n || e.b >= n)
      throw Error(ErrorKind::InvalidEdgeIndex,
                  "edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                      ") outside [0, " + std::to_string(n) + ")");
    if (e.a == e.b)
      throw Error(ErrorKind::InvalidEdgeIndex, "self-loop on " + std::to_string(e.a));
    auto key = std::minmax(e.a, e.b);
    auto [it, inserted] = unique.emplace(key, e.weight);
    if (!inserted) it->second = std::max(it->second, e.weight);
  }
  std::vector<IndexEdge> out;
  out.reserve(unique.size());
  for (const auto& [key, w] : unique) out.push_back({key.first, key.second, w});
  return out;
}

struct Coarsening {
  Graph coarse;
  std::vector<std::uint32_t> parent;  // fine -> coarse
};

/// Heavy-edge matching: edges by weight descending, then by index pair;
/// an edge is matched when both endpoints are still free. Coarse indices
/// follow the smallest fine index of each group.
inline Coarsening coarsen(const Graph& fine) {
  std::vector<IndexEdge> order = fine.edges;
  std::stable_sort(order.begin(), order.end(), [](const IndexEdge& x, const IndexEdge& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  constexpr auto kFree = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> mate(fine.n, kFree);
  for (const auto& e : order)
    if (mate[e.a] == kFree && mate[e.b] == kFree) {
      mate[e.a] = e.b;
      mate[e.b] = e.a;
    }

  Coarsening out;
  out.parent.assign(fine.n, kFree);
  std::uint32_t next = 0;
  for (std::uint32_t i = 0; i < fine.n; ++i) {
    if (out.parent[i] != kFree) continue;
    out.parent[i] = next;
    if (mate[i] != kFree) out.parent[mate[i]] = next;
    ++next;
  }
  out.coarse.n = next;

  std::map<std::pair<std::uint32_t, std::uint32_t>, double> merged;
  for (const auto& e : fine.edges) {
    auto ca = out.parent[e.a], cb = out.parent[e.b];
    if (ca == cb) continue;
    merged[std::minmax(ca, cb)] += e.weight;
  }
  for (const auto& [key, w] : merged) out.coarse.edges.push_back({key.first, key.second, w});
  out.coarse.build_adjacency();
  return out;
}

struct LevelOutcome {
  bool converged = false;
  int iterations = 0;
};

/// Force-directed refinement of one level, positions updated in place.
inline LevelOutcome refine(const Graph& g, std::vector<Point>& pos, const LayoutConfig& cfg,
                           double theta, double initial_step, unsigned workers) {
  constexpr double kCooling = 0.9;
  const double K = cfg.K;
  const double repulsion = cfg.C * K * K;
  const auto n = g.n;

  auto kernel = [repulsion](double dx, double dy, double d2, double mass) {
    const double s = repulsion * mass / d2;
    return Point{dx * s, dy * s};
  };

  std::vector<Point> force(n);
  std::vector<double> magnitude(n);
  double step = initial_step;
  double energy = std::numeric_limits<double>::infinity();
  int progress = 0;
  LevelOutcome outcome;

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    outcome.iterations = it;
    const std::span<const Point> snapshot(pos);
    QuadTree tree = theta > 0.0 ? QuadTree(snapshot) : QuadTree(std::span<const Point>{});

    parallel_for(n, workers, [&](std::size_t begin, std::size_t end, unsigned) {
      for (std::size_t i = begin; i < end; ++i) {
        const auto self = static_cast<std::uint32_t>(i);
        Point f = theta > 0.0 ? tree.force_on(self, theta, kernel)
                              : QuadTree::exact_force_on(snapshot, self, kernel);
        const Point pi = snapshot[i];
        for (auto k = g.offsets[i]; k < g.offsets[i + 1]; ++k) {
          const Point pj = snapshot[g.neighbours[k]];
          const double dx = pj.x - pi.x, dy = pj.y - pi.y;
          const double d = std::sqrt(dx * dx + dy * dy);
          // Unit direction times d^2/K.
          f.x += dx * d / K;
          f.y += dy * d / K;
        }
        force[i] = f;
        magnitude[i] = std::sqrt(f.x * f.x + f.y * f.y);
      }
    });

    double new_energy = 0.0;
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      new_energy += magnitude[i] * magnitude[i];
      if (magnitude[i] > 0.0 && std::isfinite(magnitude[i])) {
        pos[i].x += step * force[i].x / magnitude[i];
        pos[i].y += step * force[i].y / magnitude[i];
        moved += step;
      }
    }

    if (new_energy < energy) {
      if (++progress >= 5) {
        progress = 0;
        step = std::min(step / kCooling, initial_step);
      }
    } else {
      progress = 0;
      step *= kCooling;
    }
    energy = new_energy;

    if (moved / static_cast<double>(n) < cfg.tol * K) {
      outcome.converged = true;
      break;
    }
  }
  return outcome;
}

}  // namespace layout_detail

/// Lays out `n` nodes connected by `edges` (index pairs, no self-loops).
/// Coordinates are centred so that their centroid is the origin.
inline LayoutResult sfdp_layout(std::size_t n, std::span<const IndexEdge> edges,
                                const LayoutConfig& cfg, unsigned workers = 1) {
  using namespace layout_detail;
  cfg.validate();
  if (n == 0) throw Error(ErrorKind::EmptyGraph, "layout of an empty graph");
  if (n > std::numeric_limits<std::uint32_t>::max() / 2)
    throw Error(ErrorKind::ConfigInvalid, "graph too large");

  std::vector<Graph> levels(1);
  levels[0].n = n;
  levels[0].edges = canonical_edges(n, edges);
  levels[0].build_adjacency();
  std::vector<std::vector<std::uint32_t>> parents;

  if (cfg.multilevel) {
    while (levels.back().n > cfg.coarsen_floor) {
      auto c = coarsen(levels.back());
      // Stop once matching no longer shrinks the graph meaningfully.
      if (c.coarse.n * 20 > levels.back().n * 19) break;
      parents.push_back(std::move(c.parent));
      levels.push_back(std::move(c.coarse));
    }
  }

  constexpr std::uint64_t kPlacementStream = 0x706c6163656d656eull;
  constexpr std::uint64_t kJitterStream = 0x6a6974746572ull;

  // Coarsest level: seeded placement in the unit square. With multilevel on,
  // it is small enough for exact all-pairs repulsion.
  const Graph& coarsest = levels.back();
  std::vector<Point> pos(coarsest.n);
  for (std::uint64_t i = 0; i < coarsest.n; ++i)
    pos[i] = {rng::uniform01(rng::draw(cfg.seed, kPlacementStream, 2 * i)),
              rng::uniform01(rng::draw(cfg.seed, kPlacementStream, 2 * i + 1))};
  LevelOutcome outcome =
      refine(coarsest, pos, cfg, cfg.multilevel ? 0.0 : cfg.theta, cfg.K, workers);

  // Prolongation: each fine node starts at its parent's position, scaled so
  // the layout area grows with node count, plus a small seeded jitter.
  for (std::size_t level = levels.size() - 1; level-- > 0;) {
    const Graph& fine = levels[level];
    const auto& parent = parents[level];
    const double scale =
        std::sqrt(static_cast<double>(fine.n) / static_cast<double>(levels[level + 1].n));
    std::vector<Point> next(fine.n);
    for (std::uint64_t i = 0; i < fine.n; ++i) {
      const Point& p = pos[parent[i]];
      const std::uint64_t stream = kJitterStream + level;
      const double jx = rng::uniform01(rng::draw(cfg.seed, stream, 2 * i)) - 0.5;
      const double jy = rng::uniform01(rng::draw(cfg.seed, stream, 2 * i + 1)) - 0.5;
      next[i] = {p.x * scale + 0.1 * cfg.K * jx, p.y * scale + 0.1 * cfg.K * jy};
    }
    pos = std::move(next);
    outcome = refine(fine, pos, cfg, cfg.theta, 0.2 * cfg.K, workers);
  }

  double cx = 0.0, cy = 0.0;
  for (const auto& p : pos) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  for (auto& p : pos) {
    p.x -= cx;
    p.y -= cy;
  }

  return {std::move(pos), outcome.converged, outcome.iterations};
}

/// One "(x,y)" record per node with 6 decimals, joined by '\n'.
inline std::string layout_records(std::span<const Point> coords) {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i != 0) out += '\n';
    out += '(';
    out += format_fixed(coords[i].x, 6);
    out += ',';
    out += format_fixed(coords[i].y, 6);
    out += ')';
  }
  return out;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// FNV-1a over `layout_records`.
inline std::uint64_t layout_hash(const LayoutResult& result) {
  return fnv1a64(layout_records(result.coords));
}

}  // namespace skillgraph
