#include "mot/paving.hpp"

#include <algorithm>
#include <numeric>

#include "mot/errors.hpp"

namespace mot {

namespace {

struct WorkingCell {
  std::vector<std::size_t> members;
  std::vector<Vector> points;
  Polytope hull;
};

}  // namespace

std::vector<std::size_t> ConvexPaving::singletons() const {
  std::vector<std::size_t> out;
  for (const PavingCell& c : cells) {
    if (c.is_singleton()) out.insert(out.end(), c.members.begin(), c.members.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ConvexPaving::cell_of(std::size_t atom) const {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (std::binary_search(cells[k].members.begin(), cells[k].members.end(), atom)) return k;
  }
  throw Error(ErrorCode::InvalidInput, "atom index not in paving");
}

ConvexPaving merge_reachable_hulls(std::span<const std::vector<Vector>> reach, std::span<const std::size_t> order) {
  if (order.size() != reach.size()) throw Error(ErrorCode::InvalidInput, "merge order must list every atom once");
  std::vector<WorkingCell> cells;
  cells.reserve(reach.size());
  for (std::size_t i : order) {
    if (i >= reach.size()) throw Error(ErrorCode::InvalidInput, "merge order index out of range");
    cells.push_back({{i}, reach[i], Polytope(reach[i])});
  }

  // At most |cells| - 1 merges; each merge restarts the scan at the merged cell.
  std::size_t a = 0;
  while (a < cells.size()) {
    bool merged = false;
    for (std::size_t b = 0; b < cells.size() && !merged; ++b) {
      if (b == a || !relative_interiors_intersect(cells[a].hull, cells[b].hull)) continue;
      WorkingCell& into = cells[a];
      WorkingCell& from = cells[b];
      into.members.insert(into.members.end(), from.members.begin(), from.members.end());
      into.points.insert(into.points.end(), from.points.begin(), from.points.end());
      into.hull = Polytope(into.points);
      into.points = into.hull.vertices();
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(b));
      if (b < a) --a;
      merged = true;
    }
    if (merged) {
      a = 0;  // hull grew: every pair involving it must be re-tested
    } else {
      ++a;
    }
  }

  ConvexPaving paving;
  for (WorkingCell& c : cells) {
    std::sort(c.members.begin(), c.members.end());
    paving.cells.push_back({std::move(c.members), std::move(c.hull)});
  }
  std::sort(paving.cells.begin(), paving.cells.end(),
            [](const PavingCell& x, const PavingCell& y) { return x.members.front() < y.members.front(); });
  return paving;
}

std::vector<std::vector<Vector>> reachable_sets(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                                double polar_tol) {
  const auto reach = reachability(mu, nu, polar_tol);
  std::vector<std::vector<Vector>> out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out[i].push_back(mu.point(i));
    for (std::size_t j = 0; j < nu.size(); ++j) {
      if (reach(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) &&
          !approx_equal(nu.point(j), mu.point(i))) {
        out[i].push_back(nu.point(j));
      }
    }
  }
  return out;
}

ConvexPaving compute_paving(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double polar_tol) {
  const std::vector<std::vector<Vector>> reach = reachable_sets(mu, nu, polar_tol);
  std::vector<std::size_t> order(mu.size());
  std::iota(order.begin(), order.end(), 0);
  return merge_reachable_hulls(reach, order);
}

std::vector<PavingCell> domain(const ConvexPaving& p) {
  std::vector<PavingCell> out;
  for (const PavingCell& c : p.cells) {
    if (!c.is_singleton()) out.push_back(c);
  }
  return out;
}

std::optional<std::size_t> locate(const ConvexPaving& p, const Vector& x) {
  for (std::size_t k = 0; k < p.cells.size(); ++k) {
    const PavingCell& c = p.cells[k];
    if (x.size() != c.hull.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "point/paving dimension");
    if (!c.is_singleton() && in_relative_interior(x, c.hull)) return k;
  }
  return std::nullopt;
}

std::vector<ConfinementViolation> verify_against_coupling(const ConvexPaving& p, const Coupling& c,
                                                          double polar_tol) {
  std::vector<ConfinementViolation> out;
  for (Eigen::Index i = 0; i < c.matrix.rows(); ++i) {
    const PavingCell& cell = p.cells[p.cell_of(static_cast<std::size_t>(i))];
    for (Eigen::Index j = 0; j < c.matrix.cols(); ++j) {
      if (c.matrix(i, j) <= polar_tol) continue;
      if (!contains(cell.hull, c.nu_support[static_cast<std::size_t>(j)])) {
        out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), c.matrix(i, j)});
      }
    }
  }
  return out;
}

}  // namespace mot
