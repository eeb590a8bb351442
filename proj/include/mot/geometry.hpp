#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

namespace mot {

using Vector = Eigen::VectorXd;

/// Rank, membership and tightness threshold.
inline constexpr double kGeoTol = 1e-9;
/// Minimal convex-combination coefficient that counts as strictly positive.
inline constexpr double kRiTol = 1e-7;

/// Scale factor for absolute tolerances: max(1, largest |coordinate|).
double coordinate_scale(std::span<const Vector> points);

bool approx_equal(const Vector& a, const Vector& b, double tol = kGeoTol);

/// base_point + span(basis columns); basis columns are orthonormal.
struct AffineSubspace {
  Vector base_point;
  Eigen::MatrixXd basis;

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient_dim() const { return static_cast<int>(base_point.size()); }

  /// Coordinates of the orthogonal projection of x, relative to base_point.
  Vector local_coordinates(const Vector& x) const;
  double distance(const Vector& x) const;
  bool contains(const Vector& x, double tol = kGeoTol) const;
};

/// normal . x <= offset
struct Halfspace {
  Vector normal;
  double offset = 0.0;

  double slack(const Vector& x) const { return offset - normal.dot(x); }
};

/// Bounded convex polytope in V-representation. The vertex list is always
/// minimal: no stored vertex is a convex combination of the others.
class Polytope {
 public:
  /// Deduplicates and drops non-extreme points. Throws InvalidInput on empty
  /// input, DimensionMismatch on mixed dimensions.
  explicit Polytope(std::span<const Vector> points);
  explicit Polytope(const std::vector<Vector>& points)
      : Polytope(std::span<const Vector>(points)) {}

  /// Caller guarantees the points are distinct extreme points.
  static Polytope from_extreme_points(std::vector<Vector> vertices);

  const std::vector<Vector>& vertices() const { return vertices_; }
  int ambient_dim() const { return static_cast<int>(vertices_.front().size()); }
  const AffineSubspace& affine_hull() const { return hull_; }
  int affine_dim() const { return hull_.dim(); }
  bool is_singleton() const { return vertices_.size() == 1; }

 private:
  Polytope() = default;
  std::vector<Vector> vertices_;
  AffineSubspace hull_;
};

AffineSubspace affine_hull(std::span<const Vector> points);

Polytope convex_hull(std::span<const Vector> points);

/// LP membership: x is a convex combination of the vertices up to an L1
/// residual of kGeoTol (scaled).
bool contains(const Polytope& p, const Vector& x);

/// x lies in aff(P) and is a convex combination of all vertices with every
/// coefficient >= kRiTol.
bool in_relative_interior(const Vector& x, const Polytope& p);

/// Facets of P inside aff(P), expressed as ambient halfspaces. Together with
/// aff(P) they cut out P. Empty for a single point.
std::vector<Halfspace> facets(const Polytope& p);

/// The unique face F of P with x in ri(F). Throws PointOutsidePolytope.
Polytope minimal_face(const Vector& x, const Polytope& p);

bool relative_interiors_intersect(const Polytope& p, const Polytope& q);

/// Vertex enumeration for a bounded intersection of halfspaces in R^dim.
/// Returns nullopt when the intersection is empty. Intended for small dim.
std::optional<Polytope> polytope_from_halfspaces(std::span<const Halfspace> halfspaces, int dim);

/// Axis-aligned box [lower_i, upper_i] as a polytope.
Polytope box(const Vector& lower, const Vector& upper);

/// Equality of vertex sets up to tol.
bool same_vertex_set(const Polytope& p, const Polytope& q, double tol = 1e-7);

}  // namespace mot
