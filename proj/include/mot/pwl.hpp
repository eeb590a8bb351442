#pragma once

#include <span>
#include <vector>

#include "mot/geometry.hpp"
#include "mot/measures.hpp"

namespace mot {

struct AffineFunction {
  Vector gradient;
  double offset = 0.0;

  double operator()(const Vector& y) const { return gradient.dot(y) + offset; }
};

/// phi(y) = max_k <gradient_k, y> + offset_k.
class PwlConvex {
 public:
  /// Throws InvalidInput on an empty or non-finite piece list, DimensionMismatch
  /// on mixed gradient dimensions.
  explicit PwlConvex(std::vector<AffineFunction> pieces);

  double operator()(const Vector& y) const;
  const std::vector<AffineFunction>& pieces() const { return pieces_; }
  int dim() const { return static_cast<int>(pieces_.front().gradient.size()); }
  double lipschitz() const;

 private:
  std::vector<AffineFunction> pieces_;
};

/// Order used to pick among pieces that are all maximal at a point.
enum class TieBreak { LexMin, LexMax };

/// Indices of the pieces attaining phi(x), up to kGeoTol (scaled).
std::vector<std::size_t> active_pieces(const PwlConvex& phi, const Vector& x);

/// A piece b with b <= phi and b(x) = phi(x). Among tied pieces the
/// lexicographically smallest (gradient, offset) wins under LexMin, the
/// largest under LexMax.
AffineFunction supporting_affine(const PwlConvex& phi, const Vector& x, TieBreak order = TieBreak::LexMin);

/// phi(y) - b(y) for b = supporting_affine(phi, x); always >= 0.
double delta(const PwlConvex& phi, const Vector& x, const Vector& y);

/// {y : phi(y) = b(y)} as an inequality list, b = supporting_affine(phi, x, order).
/// Possibly unbounded.
std::vector<Halfspace> flat_region(const PwlConvex& phi, const Vector& x, TieBreak order = TieBreak::LexMin);

/// Facets of P plus the equalities of aff(P), as ambient halfspaces.
std::vector<Halfspace> halfspace_representation(const Polytope& p);

/// Face of (flat_region intersected with the box) whose relative interior
/// contains x. Throws PointOutsideBox.
Polytope affine_component(const PwlConvex& phi, const Vector& x, const Polytope& bounding_box,
                          TieBreak order = TieBreak::LexMin);

/// Finite surrogate for the component of x along a sequence (phi^n): over the
/// last ceil(N/2) functions, intersect {y in box : phi^n(y) - b(y) <= tol}
/// for every piece b of phi^n active at x, then take the face containing x in
/// its relative interior. Throws EmptyList, DimensionMismatch, PointOutsideBox.
Polytope asymptotic_component(std::span<const PwlConvex> phis, const Vector& x, const Polytope& bounding_box,
                              double tol);

struct BarycenterFaceReport {
  Vector barycenter;
  Polytope face;
  double outside_mass = 0.0;
};

/// Mass of alpha lying outside the minimal face of D at alpha's barycenter.
/// Throws AtomOutsideD when some atom is not in D.
BarycenterFaceReport check_barycenter_face(const DiscreteMeasure& alpha, const Polytope& domain);

}  // namespace mot
