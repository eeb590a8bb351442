#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mot/coupling.hpp"
#include "mot/geometry.hpp"
#include "mot/measures.hpp"

namespace mot {

/// A cell of the paving: its open component is ri(hull).
struct PavingCell {
  std::vector<std::size_t> members;  // mu-atom indices, ascending
  Polytope hull;

  int affine_dim() const { return hull.affine_dim(); }
  bool is_singleton() const { return hull.is_singleton(); }
};

/// Partition of supp(mu) into cells with pairwise disjoint relative
/// interiors. Points outside every cell are their own singleton component.
struct ConvexPaving {
  std::vector<PavingCell> cells;  // ordered by smallest member

  /// mu-atom indices whose cell is the singleton {x_i}.
  std::vector<std::size_t> singletons() const;
  /// Index of the cell containing mu-atom i.
  std::size_t cell_of(std::size_t atom) const;
};

/// Merges the hulls conv(reach[i]) until no two cells have intersecting
/// relative interiors. `order` is the order in which atoms enter the merge
/// loop; the fixpoint does not depend on it.
ConvexPaving merge_reachable_hulls(std::span<const std::vector<Vector>> reach, std::span<const std::size_t> order);

/// Reachable sets of every mu-atom from polar-pair LPs.
std::vector<std::vector<Vector>> reachable_sets(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                                double polar_tol = kPolarTol);

/// Throws NotInConvexOrder, MassMismatch, DimensionMismatch.
ConvexPaving compute_paving(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double polar_tol = kPolarTol);

/// The non-singleton cells.
std::vector<PavingCell> domain(const ConvexPaving& p);

/// Index of the non-singleton cell whose relative interior holds x, or
/// nullopt when x is its own singleton component.
std::optional<std::size_t> locate(const ConvexPaving& p, const Vector& x);

struct ConfinementViolation {
  std::size_t mu_index;
  std::size_t nu_index;
  double mass;
};

/// Pairs carrying mass (> polar_tol) to a point outside the source's cell hull.
std::vector<ConfinementViolation> verify_against_coupling(const ConvexPaving& p, const Coupling& c,
                                                          double polar_tol = kPolarTol);

}  // namespace mot
