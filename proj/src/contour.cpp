#include "hhdr/contour.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "hhdr/errors.hpp"

namespace hhdr {

namespace {

using EdgeId = std::int64_t;

struct Segment {
  EdgeId a, b;
  bool used = false;
};

}  // namespace

std::vector<Polyline> contour_alpha(const SweepGrid& grid, double level) {
  const std::size_t nr = grid.rows();
  const std::size_t nc = grid.cols();
  if (nr < 2 || nc < 2) throw PreconditionError("contour extraction needs at least 2x2 points");

  // Edge (r,c)-(r+1,c) -> 2*(r*nc+c); edge (r,c)-(r,c+1) -> 2*(r*nc+c)+1.
  const auto x_edge = [nc](std::size_t r, std::size_t c) {
    return static_cast<EdgeId>(2 * (r * nc + c));
  };
  const auto y_edge = [nc](std::size_t r, std::size_t c) {
    return static_cast<EdgeId>(2 * (r * nc + c) + 1);
  };

  std::unordered_map<EdgeId, ContourPoint> points;
  const auto crossing = [&](EdgeId id, std::size_t r0, std::size_t c0, std::size_t r1,
                            std::size_t c1) {
    if (points.count(id)) return;
    const double v0 = grid.at(r0, c0);
    const double v1 = grid.at(r1, c1);
    const double t = (level - v0) / (v1 - v0);
    const double x0 = grid.delta_axis[r0], x1 = grid.delta_axis[r1];
    const double y0 = grid.omega_b1_axis[c0], y1 = grid.omega_b1_axis[c1];
    points[id] = {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
  };

  std::vector<Segment> segments;
  for (std::size_t r = 0; r + 1 < nr; ++r) {
    for (std::size_t c = 0; c + 1 < nc; ++c) {
      // Corners counter-clockwise in (x, y): c0=(r,c) c1=(r+1,c) c2=(r+1,c+1) c3=(r,c+1).
      const std::array<double, 4> v{grid.at(r, c), grid.at(r + 1, c), grid.at(r + 1, c + 1),
                                    grid.at(r, c + 1)};
      if (std::isnan(v[0]) || std::isnan(v[1]) || std::isnan(v[2]) || std::isnan(v[3])) continue;
      std::array<bool, 4> above{};
      for (int k = 0; k < 4; ++k) above[k] = v[k] > level;

      // Edges e0=c0c1, e1=c1c2, e2=c2c3, e3=c3c0.
      const std::array<EdgeId, 4> edge{x_edge(r, c), y_edge(r + 1, c), x_edge(r, c + 1),
                                       y_edge(r, c)};
      std::array<bool, 4> cut{};
      for (int k = 0; k < 4; ++k) cut[k] = above[k] != above[(k + 1) % 4];
      if (cut[0]) crossing(edge[0], r, c, r + 1, c);
      if (cut[1]) crossing(edge[1], r + 1, c, r + 1, c + 1);
      if (cut[2]) crossing(edge[2], r, c + 1, r + 1, c + 1);
      if (cut[3]) crossing(edge[3], r, c, r, c + 1);

      const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
      if (ncut == 2) {
        std::array<EdgeId, 2> ends{};
        int m = 0;
        for (int k = 0; k < 4; ++k) {
          if (cut[k]) ends[m++] = edge[k];
        }
        segments.push_back({ends[0], ends[1]});
      } else if (ncut == 4) {
        const double mean = 0.25 * (v[0] + v[1] + v[2] + v[3]);
        if ((mean > level) == above[0]) {
          // c0 and c2 connected through the centre: cut off c1 and c3.
          segments.push_back({edge[0], edge[1]});
          segments.push_back({edge[2], edge[3]});
        } else {
          segments.push_back({edge[3], edge[0]});
          segments.push_back({edge[1], edge[2]});
        }
      }
    }
  }

  std::unordered_map<EdgeId, std::vector<std::size_t>> at_edge;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    at_edge[segments[i].a].push_back(i);
    at_edge[segments[i].b].push_back(i);
  }

  const auto walk = [&](std::size_t start_seg, EdgeId start_edge) {
    Polyline line;
    line.points.push_back(points.at(start_edge));
    EdgeId cur = start_edge;
    std::size_t seg = start_seg;
    while (true) {
      segments[seg].used = true;
      const EdgeId next = segments[seg].a == cur ? segments[seg].b : segments[seg].a;
      if (next == start_edge) {
        line.closed = true;
        break;
      }
      line.points.push_back(points.at(next));
      cur = next;
      std::size_t follow = segments.size();
      for (std::size_t s : at_edge[cur]) {
        if (!segments[s].used) {
          follow = s;
          break;
        }
      }
      if (follow == segments.size()) break;
      seg = follow;
    }
    return line;
  };

  std::vector<Polyline> lines;
  // Open polylines start at edges touched by a single segment.
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].used) continue;
    for (EdgeId end : {segments[i].a, segments[i].b}) {
      if (at_edge[end].size() == 1 && !segments[i].used) lines.push_back(walk(i, end));
    }
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!segments[i].used) lines.push_back(walk(i, segments[i].a));
  }
  return lines;
}

}  // namespace hhdr
