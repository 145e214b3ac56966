#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace skillgraph;
using testsupport::dist;
using testsupport::random_graph;
using testsupport::two_cliques;

namespace {

double diameter(const std::vector<Point>& p) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) d = std::max(d, dist(p[i], p[j]));
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Indexing

TEST(Indexing, AscendingIdentifierOrder) {
  std::vector<OccupationId> ids{OccupationId("c"), OccupationId("a"), OccupationId("b"),
                                OccupationId("a")};
  auto index = assign_indices(ids);
  ASSERT_EQ(index.size(), 3u);
  EXPECT_EQ(index.at(OccupationId("a")), 0u);
  EXPECT_EQ(index.at(OccupationId("c")), 2u);
  EXPECT_EQ(index.id(1).str(), "b");
  EXPECT_THROW(index.at(OccupationId("zz")), Error);
}

TEST(Indexing, EmptyGraph) {
  try {
    assign_indices(std::vector<OccupationId>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyGraph);
  }
  try {
    sfdp_layout(0, {}, LayoutConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyGraph);
  }
}

TEST(Indexing, InvalidEdgeIndex) {
  const IndexEdge out_of_range[] = {{0, 3, 1.0}};
  const IndexEdge self_loop[] = {{1, 1, 1.0}};
  for (auto edges : {std::span<const IndexEdge>(out_of_range), std::span<const IndexEdge>(self_loop)}) {
    try {
      sfdp_layout(3, edges, LayoutConfig{});
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidEdgeIndex);
    }
  }
}

TEST(Indexing, ConfigValidation) {
  LayoutConfig bad;
  bad.theta = 2.0;
  EXPECT_THROW(sfdp_layout(2, {}, bad), Error);
  bad = {};
  bad.K = 0.0;
  EXPECT_THROW(bad.validate(), Error);
  bad = {};
  bad.max_iterations = 0;
  EXPECT_THROW(bad.validate(), Error);
}

// ---------------------------------------------------------------------------
// Quadtree

TEST(QuadTree, ThetaZeroLimitMatchesExactSum) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<Point> pts(200);
  for (auto& p : pts) p = {u(rng), u(rng)};
  pts[7] = pts[8];  // coincident pair
  QuadTree tree(pts);
  auto kernel = [](double dx, double dy, double d2, double mass) {
    return Point{dx * mass / d2, dy * mass / d2};
  };
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    const auto approx = tree.force_on(i, 1e-9, kernel);
    const auto exact = QuadTree::exact_force_on(pts, i, kernel);
    EXPECT_NEAR(approx.x, exact.x, 1e-6 * (1.0 + std::abs(exact.x)));
    EXPECT_NEAR(approx.y, exact.y, 1e-6 * (1.0 + std::abs(exact.y)));
  }
}

TEST(QuadTree, ApproximationErrorIsSmall) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<Point> pts(500);
  for (auto& p : pts) p = {u(rng), u(rng)};
  QuadTree tree(pts);
  auto kernel = [](double dx, double dy, double d2, double mass) {
    return Point{dx * mass / d2, dy * mass / d2};
  };
  double err = 0.0, norm = 0.0;
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    const auto a = tree.force_on(i, 0.7, kernel);
    const auto e = QuadTree::exact_force_on(pts, i, kernel);
    err += std::hypot(a.x - e.x, a.y - e.y);
    norm += std::hypot(e.x, e.y);
  }
  EXPECT_LT(err / norm, 0.05);
}

// ---------------------------------------------------------------------------
// Layout

TEST(Layout, SingleNodeSitsAtTheOrigin) {
  auto r = sfdp_layout(1, {}, LayoutConfig{});
  ASSERT_EQ(r.coords.size(), 1u);
  EXPECT_EQ(r.coords[0], (Point{0.0, 0.0}));
  EXPECT_EQ(layout_records(r.coords), "(0.000000,0.000000)");
  EXPECT_EQ(layout_hash(r), fnv1a64("(0.000000,0.000000)"));
}

TEST(Layout, FnvReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
}

TEST(Layout, TwoNodesSettleAtTheForceBalanceDistance) {
  const IndexEdge edge[] = {{0, 1, 1.0}};
  for (double C : {0.2, 0.5, 1.0}) {
    for (double K : {1.0, 3.0}) {
      LayoutConfig cfg;
      cfg.C = C;
      cfg.K = K;
      auto r = sfdp_layout(2, edge, cfg);
      const double expected = std::cbrt(C) * K;
      EXPECT_NEAR(dist(r.coords[0], r.coords[1]), expected, 0.05 * expected) << "C=" << C << " K=" << K;
      EXPECT_LE(r.iterations_used, cfg.max_iterations);
    }
  }
}

TEST(Layout, CliquesStayTogether) {
  const auto edges = two_cliques();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    LayoutConfig cfg;
    cfg.seed = seed;
    auto r = sfdp_layout(20, edges, cfg);
    double intra = 0.0, inter = 0.0;
    int n_intra = 0, n_inter = 0;
    for (std::uint32_t i = 0; i < 20; ++i)
      for (std::uint32_t j = i + 1; j < 20; ++j) {
        if ((i < 10) == (j < 10)) {
          intra += dist(r.coords[i], r.coords[j]);
          ++n_intra;
        } else {
          inter += dist(r.coords[i], r.coords[j]);
          ++n_inter;
        }
      }
    EXPECT_LT(intra / n_intra, inter / n_inter) << "seed " << seed;
  }
}

TEST(Layout, SeedChangesTheLayout) {
  const auto edges = random_graph(1, 40, 80);
  LayoutConfig a, b;
  a.seed = 1;
  b.seed = 2;
  EXPECT_NE(layout_hash(sfdp_layout(40, edges, a)), layout_hash(sfdp_layout(40, edges, b)));
}

TEST(Layout, BitIdenticalAcrossRunsAndWorkers) {
  const auto edges = random_graph(2, 300, 700);
  LayoutConfig cfg;
  cfg.seed = 9;
  auto reference = sfdp_layout(300, edges, cfg, 1);
  for (unsigned workers : {1u, 2u, 4u}) {
    auto r = sfdp_layout(300, edges, cfg, workers);
    EXPECT_EQ(r.coords, reference.coords) << workers << " workers";
    EXPECT_EQ(r.iterations_used, reference.iterations_used);
  }
}

TEST(Layout, EdgeOrderDoesNotMatter) {
  auto edges = random_graph(3, 60, 120);
  LayoutConfig cfg;
  auto reference = sfdp_layout(60, edges, cfg);
  std::reverse(edges.begin(), edges.end());
  for (auto& e : edges) std::swap(e.a, e.b);
  EXPECT_EQ(sfdp_layout(60, edges, cfg).coords, reference.coords);
}

TEST(Layout, CentroidIsTheOrigin) {
  for (std::uint64_t seed : {1u, 5u}) {
    const auto edges = random_graph(seed, 120, 200);
    LayoutConfig cfg;
    cfg.seed = seed;
    auto r = sfdp_layout(120, edges, cfg);
    double cx = 0.0, cy = 0.0;
    for (const auto& p : r.coords) {
      cx += p.x;
      cy += p.y;
    }
    EXPECT_NEAR(cx / 120.0, 0.0, 1e-9);
    EXPECT_NEAR(cy / 120.0, 0.0, 1e-9);
    for (const auto& p : r.coords) {
      EXPECT_TRUE(std::isfinite(p.x));
      EXPECT_TRUE(std::isfinite(p.y));
    }
  }
}

TEST(Layout, IterationsNeverExceedTheBudget) {
  const auto edges = random_graph(4, 100, 150);
  for (int budget : {1, 5, 50}) {
    LayoutConfig cfg;
    cfg.max_iterations = budget;
    auto r = sfdp_layout(100, edges, cfg);
    EXPECT_GE(r.iterations_used, 1);
    EXPECT_LE(r.iterations_used, budget);
  }
}

TEST(Layout, DisconnectedNodesStayFinite) {
  LayoutConfig cfg;
  auto r = sfdp_layout(30, {}, cfg);
  for (const auto& p : r.coords) {
    EXPECT_TRUE(std::isfinite(p.x));
    EXPECT_TRUE(std::isfinite(p.y));
  }
  for (std::size_t i = 0; i < r.coords.size(); ++i)
    for (std::size_t j = i + 1; j < r.coords.size(); ++j) EXPECT_GT(dist(r.coords[i], r.coords[j]), 0.0);
}

TEST(Layout, ApproximationStaysCloseToExactForces) {
  // Mean per-node distance between the near-exact (theta -> 0) and the
  // default (theta = 0.7) layouts of a 100-node graph.
  const auto edges = random_graph(6, 100, 180);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    LayoutConfig exact_cfg;
    exact_cfg.seed = seed;
    exact_cfg.theta = 1e-9;
    LayoutConfig approx_cfg = exact_cfg;
    approx_cfg.theta = 0.7;
    auto exact = sfdp_layout(100, edges, exact_cfg);
    auto approx = sfdp_layout(100, edges, approx_cfg);
    double total = 0.0;
    for (std::size_t i = 0; i < 100; ++i) total += dist(exact.coords[i], approx.coords[i]);
    EXPECT_LT(total / 100.0, 0.10 * diameter(exact.coords)) << "seed " << seed;
  }
}

TEST(Layout, MultilevelCoarseningShrinksTheGraph) {
  layout_detail::Graph g;
  g.n = 200;
  g.edges = layout_detail::canonical_edges(200, random_graph(7, 200, 400));
  g.build_adjacency();
  auto c = layout_detail::coarsen(g);
  EXPECT_LT(c.coarse.n, g.n);
  EXPECT_GE(c.coarse.n, g.n / 2);
  std::vector<int> members(c.coarse.n, 0);
  for (auto p : c.parent) {
    ASSERT_LT(p, c.coarse.n);
    ++members[p];
  }
  for (int m : members) {
    EXPECT_GE(m, 1);
    EXPECT_LE(m, 2);
  }
  for (const auto& e : c.coarse.edges) EXPECT_LT(e.a, e.b);
}

TEST(Layout, HashCoversEveryCoordinate) {
  LayoutResult a;
  a.coords = {{0.0, 0.0}, {1.0, 2.0}};
  LayoutResult b = a;
  b.coords[1].y = 2.000001;
  EXPECT_NE(layout_hash(a), layout_hash(b));
  EXPECT_EQ(layout_records(a.coords), "(0.000000,0.000000)\n(1.000000,2.000000)");
}
