#include <algorithm>
#include <cmath>
#include <sstream>

#include "torsionlab/errors.hpp"
#include "torsionlab/grid.hpp"

namespace torsionlab {

namespace {

// Nodes closer than this fraction of h to the boundary are treated as
// boundary nodes; it also bounds the cut fraction theta from below.
constexpr double kSnap = 1e-3;

int lattice_count(double length, double h, const char* what) {
  const double r = std::round(length / h);
  if (r < 1.0 || std::abs(r * h - length) > 1e-12 * std::max(1.0, length)) {
    std::ostringstream os;
    os << "grid spacing h=" << h << " does not divide the bounding-box " << what << ' ' << length;
    throw InvalidArgument(os.str());
  }
  return static_cast<int>(r);
}

bool on_lattice_line(double coord, double origin, double h) {
  const double r = (coord - origin) / h;
  return std::abs(r - std::round(r)) <= 1e-9;
}

// Smallest parameter t in [0,1] where p + t (q - p) meets segment s, or 2.
double first_hit(Point p, Point q, const Segment& s) {
  const Point r = q - p;
  const Point e = s.b - s.a;
  const double denom = cross(r, e);
  const double scale = std::max(dot(r, r), dot(e, e));
  const Point w = s.a - p;
  if (std::abs(denom) <= 1e-14 * scale) {
    if (std::abs(cross(w, r)) > 1e-12 * scale) return 2.0;  // parallel, apart
    const double rr = dot(r, r);
    double ta = dot(s.a - p, r) / rr;
    double tb = dot(s.b - p, r) / rr;
    if (ta > tb) std::swap(ta, tb);
    const double lo = std::max(ta, 0.0);
    const double hi = std::min(tb, 1.0);
    return lo <= hi + 1e-12 ? lo : 2.0;
  }
  const double t = cross(w, e) / denom;
  const double u = cross(w, r) / denom;
  constexpr double tol = 1e-12;
  if (t < -tol || t > 1.0 + tol || u < -tol || u > 1.0 + tol) return 2.0;
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

GridDomain rasterize(const SlitDomain& dom, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("grid spacing must be positive");
  const BoundingBox box = dom.bbox();
  const int cx = lattice_count(box.width(), h, "width");
  const int cy = lattice_count(box.height(), h, "height");
  if (static_cast<double>(cx + 1) * (cy + 1) > 2.0e8)
    throw InvalidArgument("grid would exceed 2e8 nodes");

  const double scale = std::max(box.width(), box.height());
  for (const Segment& s : dom.slits()) {
    const bool vertical = std::abs(s.a.x - s.b.x) <= 1e-12 * scale;
    const bool horizontal = std::abs(s.a.y - s.b.y) <= 1e-12 * scale;
    bool ok = false;
    if (vertical && horizontal)
      ok = on_lattice_line(s.a.x, box.lo.x, h) && on_lattice_line(s.a.y, box.lo.y, h);
    else if (vertical)
      ok = on_lattice_line(s.a.x, box.lo.x, h);
    else if (horizontal)
      ok = on_lattice_line(s.a.y, box.lo.y, h);
    if (!ok) {
      std::ostringstream os;
      os << "slit (" << s.a.x << ',' << s.a.y << ")-(" << s.b.x << ',' << s.b.y
         << ") does not lie on a grid line of spacing " << h;
      throw InvalidArgument(os.str());
    }
  }

  GridDomain g;
  g.h_ = h;
  g.nx_ = cx + 1;
  g.ny_ = cy + 1;
  g.origin_ = box.lo;
  g.label_ = dom.label();
  g.area_ = dom.area();

  const std::size_t nodes = static_cast<std::size_t>(g.nx_) * static_cast<std::size_t>(g.ny_);
  g.node_class_.assign(nodes, NodeClass::exterior);
  std::vector<double> dist(nodes, 0.0);

  const auto outer_edges = dom.boundary().first(dom.outer().size());
  const double on_tol = 1e-12 * scale;
#pragma omp parallel for schedule(dynamic, 8)
  for (int j = 0; j < g.ny_; ++j) {
    for (int i = 0; i < g.nx_; ++i) {
      const std::size_t id = static_cast<std::size_t>(g.node_id(i, j));
      const Point p = g.node(i, j);
      if (!dom.inside_outer(p)) {
        bool on_edge = false;
        for (const Segment& e : outer_edges)
          if (point_segment_distance(p, e) <= on_tol) {
            on_edge = true;
            break;
          }
        g.node_class_[id] = on_edge ? NodeClass::dirichlet : NodeClass::exterior;
        continue;
      }
      const double d = dom.distance_to_features(p);
      if (d <= kSnap * h) {
        g.node_class_[id] = NodeClass::dirichlet;
      } else {
        g.node_class_[id] = NodeClass::interior;
        dist[id] = d;
      }
    }
  }

  g.interior_index_.assign(nodes, -1);
  for (std::size_t id = 0; id < nodes; ++id)
    if (g.node_class_[id] == NodeClass::interior) {
      g.interior_index_[id] = static_cast<std::int32_t>(g.interior_nodes_.size());
      g.interior_nodes_.push_back(static_cast<std::int32_t>(id));
    }

  const std::size_t n = g.interior_nodes_.size();
  g.neighbours_.resize(n);
  g.diagonal_.resize(n);
  g.node_distance_.resize(n);
  const auto boundary = dom.boundary();
  constexpr int di[4] = {1, -1, 0, 0};
  constexpr int dj[4] = {0, 0, 1, -1};
  bool aligned = true;
#pragma omp parallel for schedule(static) reduction(&& : aligned)
  for (std::size_t k = 0; k < n; ++k) {
    const int id = g.interior_nodes_[k];
    const int i = id % g.nx_;
    const int j = id / g.nx_;
    const Point p = g.node(i, j);
    g.node_distance_[k] = dist[static_cast<std::size_t>(id)];
    double diag = 0.0;
    for (int d = 0; d < 4; ++d) {
      // the boundary ring is never interior, so neighbours exist
      const int nid = g.node_id(i + di[d], j + dj[d]);
      const std::int32_t nk = g.interior_index_[static_cast<std::size_t>(nid)];
      g.neighbours_[k][static_cast<std::size_t>(d)] = nk;
      if (nk >= 0) {
        diag += 1.0;
        continue;
      }
      double theta = 2.0;
      // only segments within reach of the edge can cut it
      if (g.node_distance_[k] <= h * (1.0 + 1e-9)) {
        const Point q = g.node(i + di[d], j + dj[d]);
        for (const Segment& s : boundary) theta = std::min(theta, first_hit(p, q, s));
      }
      if (theta >= 1.0 - 1e-9) {
        theta = 1.0;
      } else {
        theta = std::max(theta, kSnap);
        aligned = false;
      }
      diag += 1.0 / theta;
    }
    g.diagonal_[k] = diag;
  }
  g.aligned_ = aligned;

  g.cell_distance_.assign(static_cast<std::size_t>(g.num_cells()), 0.0);
  const int ncx = g.cells_x();
#pragma omp parallel for schedule(dynamic, 8)
  for (int j = 0; j < g.cells_y(); ++j)
    for (int i = 0; i < ncx; ++i) {
      const int c = j * ncx + i;
      g.cell_distance_[static_cast<std::size_t>(c)] = distance_to_boundary(dom, g.cell_center(c));
    }
  return g;
}

CellMask superlevel_mask(const GridDomain& grid, double eta) {
  if (!(eta > 0.0)) throw InvalidArgument("superlevel threshold eta must be positive");
  CellMask mask;
  const auto dist = grid.cell_distance();
  mask.cells.resize(dist.size(), 0);
  for (std::size_t c = 0; c < dist.size(); ++c)
    if (dist[c] >= eta) {
      mask.cells[c] = 1;
      ++mask.count;
    }
  mask.measure = static_cast<double>(mask.count) * grid.h() * grid.h();
  return mask;
}

}  // namespace torsionlab
