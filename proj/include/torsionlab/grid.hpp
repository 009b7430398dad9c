#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "torsionlab/geometry.hpp"

namespace torsionlab {

enum class NodeClass : std::uint8_t { interior, dirichlet, exterior };

/// Direction order of the stencil neighbour table.
enum Dir : int { east = 0, west = 1, north = 2, south = 3 };

/// Lattice discretisation of a SlitDomain.
///
/// Nodes sit at origin + (i h, j h) for 0 <= i < nx, 0 <= j < ny; the lattice
/// spans the outer bounding box exactly. Interior nodes are the unknowns,
/// numbered densely in row-major order. For every unknown the grid stores its
/// four neighbours (unknown index, or -1 for a boundary neighbour) and the
/// diagonal of the 5-point operator in units of 1/h^2. On grid-aligned domains
/// the diagonal is exactly 4. Where a grid edge leaves the domain at fraction
/// theta < 1 of its length, that direction contributes 1/theta instead of 1
/// (linear extrapolation to the boundary point), which keeps the operator
/// symmetric and second-order accurate on curved boundaries.
class GridDomain {
 public:
  double h() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Point origin() const { return origin_; }
  const std::string& label() const { return label_; }
  /// Exact measure of the continuum domain.
  double domain_area() const { return area_; }

  int node_id(int i, int j) const { return j * nx_ + i; }
  Point node(int i, int j) const { return {origin_.x + i * h_, origin_.y + j * h_}; }
  Point node(int id) const { return node(id % nx_, id / nx_); }
  NodeClass node_class(int id) const { return node_class_[static_cast<std::size_t>(id)]; }
  /// Unknown index of a node, -1 when the node is not interior.
  std::int32_t interior_index(int id) const { return interior_index_[static_cast<std::size_t>(id)]; }

  int num_interior() const { return static_cast<int>(interior_nodes_.size()); }
  std::span<const std::int32_t> interior_nodes() const { return interior_nodes_; }
  std::span<const std::array<std::int32_t, 4>> neighbours() const { return neighbours_; }
  std::span<const double> diagonal() const { return diagonal_; }
  /// Exact distance to the boundary at each unknown.
  std::span<const double> node_distance() const { return node_distance_; }
  /// True when every boundary edge is cut at its far node (diagonal == 4).
  bool aligned() const { return aligned_; }

  int cells_x() const { return nx_ - 1; }
  int cells_y() const { return ny_ - 1; }
  int num_cells() const { return cells_x() * cells_y(); }
  Point cell_center(int c) const {
    const int i = c % cells_x();
    const int j = c / cells_x();
    return {origin_.x + (i + 0.5) * h_, origin_.y + (j + 0.5) * h_};
  }
  /// Exact distance to the boundary at each cell center (0 outside).
  std::span<const double> cell_distance() const { return cell_distance_; }

 private:
  friend GridDomain rasterize(const SlitDomain& dom, double h);
  GridDomain() = default;

  double h_ = 0.0;
  int nx_ = 0;
  int ny_ = 0;
  Point origin_;
  std::string label_;
  double area_ = 0.0;
  bool aligned_ = true;
  std::vector<NodeClass> node_class_;
  std::vector<std::int32_t> interior_index_;
  std::vector<std::int32_t> interior_nodes_;
  std::vector<std::array<std::int32_t, 4>> neighbours_;
  std::vector<double> diagonal_;
  std::vector<double> node_distance_;
  std::vector<double> cell_distance_;
};

/// Rasterise at spacing h. h must divide the bounding-box sides, and every
/// slit must be axis-parallel and lie on a grid line; violations throw
/// InvalidArgument rather than letting a slit leak between nodes.
GridDomain rasterize(const SlitDomain& dom, double h);

/// Grid spacing 1/(n q) that puts every comb slit on a grid line.
inline double comb_spacing(int n, int q) { return 1.0 / (static_cast<double>(n) * q); }

/// Cells whose center has distance >= eta.
struct CellMask {
  std::vector<std::uint8_t> cells;
  std::size_t count = 0;
  double measure = 0.0;  ///< count * h^2
};

CellMask superlevel_mask(const GridDomain& grid, double eta);

}  // namespace torsionlab
