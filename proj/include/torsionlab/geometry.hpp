#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace torsionlab {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// Closed segment; slits are zero-width segments of this type.
struct Segment {
  Point a;
  Point b;
};

double point_segment_distance(Point p, const Segment& s);

struct BoundingBox {
  Point lo;
  Point hi;
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};

/// Simple counterclockwise polygon minus a finite set of slits.
///
/// The constructor validates the invariants (simple outer boundary, positive
/// area, every slit inside the closed polygon) and throws InvalidArgument.
/// Boundary features are cached in structure-of-arrays form so distance
/// queries stay a tight loop over segments.
class SlitDomain {
 public:
  SlitDomain(std::vector<Point> outer, std::vector<Segment> slits,
             std::string label = {});

  const std::vector<Point>& outer() const { return outer_; }
  const std::vector<Segment>& slits() const { return slits_; }
  const std::string& label() const { return label_; }

  /// All boundary features: outer edges followed by slits.
  std::span<const Segment> boundary() const { return boundary_; }

  double area() const { return area_; }
  BoundingBox bbox() const { return bbox_; }

  /// Strictly inside the outer polygon by the crossing rule; slits ignored.
  bool inside_outer(Point p) const;

  /// Minimum distance from p to every boundary feature, with no inside test.
  /// Walk-on-spheres uses this on points already known to lie in the domain.
  double distance_to_features(Point p) const;

  /// Copy with extra slits appended (validated like the originals).
  SlitDomain with_slits(std::span<const Segment> extra, std::string label) const;

 private:
  std::vector<Point> outer_;
  std::vector<Segment> slits_;
  std::string label_;
  std::vector<Segment> boundary_;
  double area_ = 0.0;
  BoundingBox bbox_;
  // packed boundary: origin, edge vector, 1/|edge|^2 (0 for degenerate)
  std::vector<double> ax_, ay_, ex_, ey_, inv_len2_;
};

/// True when every slit reaches the outer boundary through a chain of
/// touching slits. A floating slit leaves a hole, and then the strong Hardy
/// constant 16 is not guaranteed.
bool is_simply_connected(const SlitDomain& dom);

/// Exact Euclidean distance to the boundary; 0 outside or on the boundary.
double distance_to_boundary(const SlitDomain& dom, Point x);

/// Comb family parameters: eps = c n^-alpha, threshold N_{alpha,c}.
struct CombParams {
  double alpha = 2.0 / 3.0;
  double c = 1.0;
  int n = 16;

  double eps() const { return c * std::pow(static_cast<double>(n), -alpha); }
  int n_min() const { return threshold(alpha, c); }
  bool pre_asymptotic() const { return n < n_min(); }
  void validate() const;

  /// Smallest n with n^alpha >= 2c and c n^(1-alpha) >= 2.
  static int threshold(double alpha, double c);
};

SlitDomain make_unit_square();
/// Rectangle (0,a) x (0,b).
SlitDomain make_rectangle(double a, double b);
/// Regular polygon with a vertex at angle 0, circumscribed by B(center; radius).
SlitDomain make_regular_polygon(int sides, double radius, Point center = {});
/// Unit square minus n-1 vertical slits [(k/n,0),(k/n,1-eps)].
SlitDomain make_comb(int n, double eps);
/// As above with eps = c n^-alpha; warns when n < N_{alpha,c}.
SlitDomain make_comb(const CombParams& params);

/// Rectangle R = (p, p+b) x (0, a) of the localisation lemma and its sides.
struct LemmaThreeFrame {
  double p = 0.0;
  double a = 1.0;
  double b = 1.0;

  void validate() const;
  bool contains(Point x) const { return x.x > p && x.x < p + b && x.y > 0.0 && x.y < a; }
  Segment bottom() const { return {{p, 0.0}, {p + b, 0.0}}; }    // K1
  Segment left() const { return {{p, 0.0}, {p, a}}; }            // K2
  Segment right() const { return {{p + b, 0.0}, {p + b, a}}; }   // K3
  Segment top() const { return {{p + b, a}, {p, a}}; }           // K4
};

/// Ambient domain with K1, K2, K3 inserted as slits.
SlitDomain lemma_three_domain(const SlitDomain& ambient, const LemmaThreeFrame& frame);

struct Inradius {
  double value = 0.0;        ///< best sampled distance (a lower bound)
  double error_bound = 0.0;  ///< true inradius <= value + error_bound
  Point center;
};

/// Largest sampled distance on a lattice of `resolution` points per unit
/// length, polished by a local pattern search around the best node.
Inradius inradius(const SlitDomain& dom, int resolution);

}  // namespace torsionlab
