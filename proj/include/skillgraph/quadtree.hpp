#pragma once

// Barnes-Hut quadtree for far-field repulsion. The tree is rebuilt from an
// immutable position snapshot each iteration; both construction and
// traversal visit children in a fixed order. The force on a body is a
// deterministic function of the snapshot.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace skillgraph {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

class QuadTree {
 public:
  explicit QuadTree(std::span<const Point> points) : points_(points) {
    const auto n = points.size();
    order_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) order_[i] = i;
    scratch_.resize(n);
    if (n == 0) return;

    double minx = points[0].x, maxx = points[0].x, miny = points[0].y, maxy = points[0].y;
    for (const auto& p : points) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    double half = 0.5 * std::max(maxx - minx, maxy - miny);
    if (half <= 0.0) half = 1.0;
    half *= 1.0 + 1e-9;
    cells_.reserve(2 * n);
    build(0, static_cast<std::uint32_t>(n), 0.5 * (minx + maxx), 0.5 * (miny + maxy), half, 0);
  }

  /// Repulsive force on body `i`, summing `kernel(dx, dy, d2, mass)` over the
  /// bodies and approximated cells where (dx, dy) points from the source to
  /// body `i`. A cell is approximated by its centre of mass when its width
  /// over distance is below `theta` and it does not contain body `i`.
  template <typename Kernel>
  Point force_on(std::uint32_t i, double theta, Kernel&& kernel) const {
    Point f;
    if (cells_.empty()) return f;
    const Point pi = points_[i];
    std::vector<std::uint32_t>& stack = stack_buffer();
    stack.clear();
    stack.push_back(0);
    while (!stack.empty()) {
      const Cell& c = cells_[stack.back()];
      stack.pop_back();
      if (c.leaf) {
        for (std::uint32_t k = c.begin; k < c.end; ++k) {
          const auto j = order_[k];
          if (j == i) continue;
          accumulate(f, pi.x - points_[j].x, pi.y - points_[j].y, 1.0, i, j, kernel);
        }
        continue;
      }
      const double dx = pi.x - c.comx;
      const double dy = pi.y - c.comy;
      const double d2 = dx * dx + dy * dy;
      const double width = 2.0 * c.half;
      const bool inside = std::abs(pi.x - c.cx) <= c.half && std::abs(pi.y - c.cy) <= c.half;
      if (!inside && d2 > 0.0 && width * width < theta * theta * d2) {
        const auto r = kernel(dx, dy, d2, c.mass);
        f.x += r.x;
        f.y += r.y;
        continue;
      }
      // Push in reverse so children are visited in quadrant order 0..3.
      for (int q = 3; q >= 0; --q)
        if (c.child[q] >= 0) stack.push_back(static_cast<std::uint32_t>(c.child[q]));
    }
    return f;
  }

  /// Exact pairwise sum using the same kernel, in ascending index order.
  template <typename Kernel>
  static Point exact_force_on(std::span<const Point> points, std::uint32_t i, Kernel&& kernel) {
    Point f;
    const Point pi = points[i];
    for (std::uint32_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      accumulate(f, pi.x - points[j].x, pi.y - points[j].y, 1.0, i, j, kernel);
    }
    return f;
  }

 private:
  struct Cell {
    double cx = 0, cy = 0, half = 0;
    double comx = 0, comy = 0, mass = 0;
    std::array<std::int32_t, 4> child{-1, -1, -1, -1};
    std::uint32_t begin = 0, end = 0;
    bool leaf = false;
  };

  static constexpr int kMaxDepth = 40;

  // Coincident bodies get a fixed, antisymmetric unit direction derived from
  // the index pair instead of a 0/0 division.
  template <typename Kernel>
  static void accumulate(Point& f, double dx, double dy, double mass, std::uint32_t i,
                         std::uint32_t j, Kernel& kernel) {
    double d2 = dx * dx + dy * dy;
    if (d2 == 0.0) {
      const std::uint32_t lo = std::min(i, j), hi = std::max(i, j);
      const double angle = 2.399963229728653 * static_cast<double>(lo * 31u + hi);
      const double sign = i < j ? 1.0 : -1.0;
      dx = sign * std::cos(angle) * 1e-9;
      dy = sign * std::sin(angle) * 1e-9;
      d2 = dx * dx + dy * dy;
    }
    const auto r = kernel(dx, dy, d2, mass);
    f.x += r.x;
    f.y += r.y;
  }

  std::uint32_t build(std::uint32_t begin, std::uint32_t end, double cx, double cy, double half,
                      int depth) {
    const auto id = static_cast<std::uint32_t>(cells_.size());
    cells_.emplace_back();
    {
      Cell& c = cells_[id];
      c.cx = cx;
      c.cy = cy;
      c.half = half;
      c.begin = begin;
      c.end = end;
      double sx = 0.0, sy = 0.0;
      for (std::uint32_t k = begin; k < end; ++k) {
        sx += points_[order_[k]].x;
        sy += points_[order_[k]].y;
      }
      c.mass = static_cast<double>(end - begin);
      c.comx = sx / c.mass;
      c.comy = sy / c.mass;
      if (end - begin <= 1 || depth >= kMaxDepth) {
        c.leaf = true;
        return id;
      }
    }

    // Stable partition into quadrants: 0 = (-,-), 1 = (+,-), 2 = (-,+), 3 = (+,+).
    std::array<std::uint32_t, 5> bounds{};
    auto quadrant = [&](std::uint32_t body) {
      const Point& p = points_[body];
      return (p.x >= cx ? 1 : 0) + (p.y >= cy ? 2 : 0);
    };
    for (std::uint32_t k = begin; k < end; ++k) ++bounds[quadrant(order_[k]) + 1];
    for (int q = 0; q < 4; ++q) bounds[q + 1] += bounds[q];
    std::array<std::uint32_t, 4> cursor{bounds[0], bounds[1], bounds[2], bounds[3]};
    for (std::uint32_t k = begin; k < end; ++k) {
      const auto body = order_[k];
      scratch_[begin + cursor[quadrant(body)]++] = body;
    }
    std::copy(scratch_.begin() + begin, scratch_.begin() + end, order_.begin() + begin);

    const double h = 0.5 * half;
    for (int q = 0; q < 4; ++q) {
      const auto qb = begin + bounds[q], qe = begin + bounds[q + 1];
      if (qb == qe) continue;
      const double qx = cx + ((q & 1) ? h : -h);
      const double qy = cy + ((q & 2) ? h : -h);
      const auto child = build(qb, qe, qx, qy, h, depth + 1);
      cells_[id].child[q] = static_cast<std::int32_t>(child);
    }
    return id;
  }

  static std::vector<std::uint32_t>& stack_buffer() {
    thread_local std::vector<std::uint32_t> stack;
    return stack;
  }

  std::span<const Point> points_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> scratch_;
  std::vector<Cell> cells_;
};

}  // namespace skillgraph
