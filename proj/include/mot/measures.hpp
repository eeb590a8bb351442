#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mot/geometry.hpp"

namespace mot {

class PwlConvex;

struct Atom {
  Vector point;
  double weight = 0.0;
};

/// Finitely supported measure with strictly positive weights. Atoms closer
/// than kGeoTol (coordinate-wise) are merged on construction, summing
/// weights; the order of first appearance is preserved.
class DiscreteMeasure {
 public:
  /// Throws InvalidInput (empty, non-positive or non-finite weight) or
  /// DimensionMismatch.
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Vector& point(std::size_t i) const { return atoms_[i].point; }
  double weight(std::size_t i) const { return atoms_[i].weight; }
  int ambient_dim() const { return static_cast<int>(atoms_.front().point.size()); }
  double total_mass() const;
  std::vector<Vector> support() const;

  /// Index of the atom at x (within tol), if any.
  std::optional<std::size_t> find(const Vector& x, double tol = kGeoTol) const;

 private:
  std::vector<Atom> atoms_;
};

/// Mass-weighted mean. Throws InvalidInput on zero mass.
Vector barycenter(const DiscreteMeasure& m);

/// u(x) = sum_i w_i |x - y_i| for a one-dimensional measure, stored exactly
/// by its values at the sorted support points and the outer slopes.
class PotentialFunction {
 public:
  explicit PotentialFunction(const DiscreteMeasure& lambda);

  double operator()(double x) const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  /// slopes()[0] applies left of the first breakpoint, slopes()[k] on
  /// (breakpoints[k-1], breakpoints[k]), the last one right of the last breakpoint.
  const std::vector<double>& slopes() const { return slopes_; }
  double total_mass() const { return mass_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  double mass_ = 0.0;
};

/// Throws DimensionMismatch unless lambda is one-dimensional.
PotentialFunction potential(const DiscreteMeasure& lambda);

struct OpenInterval {
  double lower;
  double upper;
};

/// Values of u_nu - u_mu at the union of both supports (sorted, merged).
std::vector<std::pair<double, double>> potential_difference(const DiscreteMeasure& mu,
                                                            const DiscreteMeasure& nu);

/// One-dimensional convex order via potentials: equal mass, equal
/// barycenter and u_nu >= u_mu at every support point.
bool convex_order_by_potential(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               double tol = kGeoTol);

/// Maximal open intervals where u_nu - u_mu > 0, with values below kRiTol
/// treated as zero. Throws NotInConvexOrder, DimensionMismatch.
std::vector<OpenInterval> potential_domain(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// <nu - mu, phi>
double pairing(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const PwlConvex& phi);

/// True iff the martingale coupling LP is feasible.
/// Throws MassMismatch, DimensionMismatch.
bool check_convex_order(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace mot
