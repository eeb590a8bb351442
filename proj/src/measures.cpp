#include "mot/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mot/coupling.hpp"
#include "mot/errors.hpp"
#include "mot/lp.hpp"
#include "mot/pwl.hpp"

namespace mot {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error(ErrorCode::InvalidInput, "measure needs at least one atom");
  const auto dim = atoms.front().point.size();
  if (dim == 0) throw Error(ErrorCode::InvalidInput, "atoms must have positive dimension");
  std::vector<Vector> points;
  for (const Atom& a : atoms) {
    if (a.point.size() != dim) throw Error(ErrorCode::DimensionMismatch, "atoms have different dimensions");
    if (!a.point.allFinite()) throw Error(ErrorCode::InvalidInput, "non-finite atom coordinate");
    if (!std::isfinite(a.weight) || a.weight <= 0.0) {
      throw Error(ErrorCode::InvalidInput, "atom weights must be finite and positive");
    }
    points.push_back(a.point);
  }
  const double tol = kGeoTol * coordinate_scale(points);
  for (Atom& a : atoms) {
    auto same = std::find_if(atoms_.begin(), atoms_.end(),
                             [&](const Atom& b) { return approx_equal(a.point, b.point, tol); });
    if (same != atoms_.end()) {
      same->weight += a.weight;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
}

double DiscreteMeasure::total_mass() const {
  return std::accumulate(atoms_.begin(), atoms_.end(), 0.0,
                         [](double s, const Atom& a) { return s + a.weight; });
}

std::vector<Vector> DiscreteMeasure::support() const {
  std::vector<Vector> pts;
  pts.reserve(atoms_.size());
  for (const Atom& a : atoms_) pts.push_back(a.point);
  return pts;
}

std::optional<std::size_t> DiscreteMeasure::find(const Vector& x, double tol) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (approx_equal(atoms_[i].point, x, tol)) return i;
  }
  return std::nullopt;
}

Vector barycenter(const DiscreteMeasure& m) {
  const double mass = m.total_mass();
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidInput, "barycenter of a zero measure");
  Vector b = Vector::Zero(m.ambient_dim());
  for (const Atom& a : m.atoms()) b += a.weight * a.point;
  return b / mass;
}

PotentialFunction::PotentialFunction(const DiscreteMeasure& lambda) {
  if (lambda.ambient_dim() != 1) throw Error(ErrorCode::DimensionMismatch, "potential needs a 1-D measure");
  std::vector<std::pair<double, double>> atoms;
  for (const Atom& a : lambda.atoms()) atoms.emplace_back(a.point(0), a.weight);
  std::sort(atoms.begin(), atoms.end());
  mass_ = lambda.total_mass();
  double slope = -mass_;
  slopes_.push_back(slope);
  for (const auto& [y, w] : atoms) {
    breakpoints_.push_back(y);
    double v = 0.0;
    for (const auto& [z, wz] : atoms) v += wz * std::abs(y - z);
    values_.push_back(v);
    slope += 2.0 * w;
    slopes_.push_back(slope);
  }
}

double PotentialFunction::operator()(double x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const auto k = static_cast<std::size_t>(it - breakpoints_.begin());
  if (k == 0) return values_.front() + slopes_.front() * (x - breakpoints_.front());
  return values_[k - 1] + slopes_[k] * (x - breakpoints_[k - 1]);
}

PotentialFunction potential(const DiscreteMeasure& lambda) { return PotentialFunction(lambda); }

std::vector<std::pair<double, double>> potential_difference(const DiscreteMeasure& mu,
                                                            const DiscreteMeasure& nu) {
  if (mu.ambient_dim() != 1 || nu.ambient_dim() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "potentials need 1-D measures");
  }
  const PotentialFunction umu(mu);
  const PotentialFunction unu(nu);
  std::vector<double> xs = umu.breakpoints();
  xs.insert(xs.end(), unu.breakpoints().begin(), unu.breakpoints().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= kGeoTol * std::max(1.0, std::abs(a)); }),
           xs.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(xs.size());
  for (double x : xs) out.emplace_back(x, unu(x) - umu(x));
  return out;
}

bool convex_order_by_potential(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double tol) {
  const double mm = mu.total_mass();
  const double mn = nu.total_mass();
  if (std::abs(mm - mn) > tol * std::max(1.0, mm)) return false;
  if (std::abs(barycenter(mu)(0) - barycenter(nu)(0)) > tol * coordinate_scale(mu.support())) return false;
  const auto diff = potential_difference(mu, nu);
  return std::all_of(diff.begin(), diff.end(), [&](const auto& p) { return p.second >= -tol; });
}

std::vector<OpenInterval> potential_domain(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.ambient_dim() != 1 || nu.ambient_dim() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "potential domain needs 1-D measures");
  }
  if (!convex_order_by_potential(mu, nu)) {
    throw Error(ErrorCode::NotInConvexOrder, "mu is not dominated by nu in convex order");
  }
  auto diff = potential_difference(mu, nu);
  for (auto& [x, v] : diff) {
    if (v <= kRiTol) v = 0.0;
  }
  // Outside the breakpoints the difference is constant zero, so the positive
  // set is a union of open segments between breakpoints, glued at positive
  // breakpoints.
  std::vector<OpenInterval> out;
  bool open = false;
  for (std::size_t k = 0; k + 1 < diff.size(); ++k) {
    const bool positive_segment = diff[k].second > 0.0 || diff[k + 1].second > 0.0;
    if (!positive_segment) continue;
    if (open && diff[k].second > 0.0) {
      out.back().upper = diff[k + 1].first;
    } else {
      out.push_back({diff[k].first, diff[k + 1].first});
    }
    open = true;
    if (diff[k + 1].second == 0.0) open = false;
  }
  return out;
}

double pairing(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const PwlConvex& phi) {
  if (mu.ambient_dim() != nu.ambient_dim() || mu.ambient_dim() != phi.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "pairing dimensions");
  }
  double s = 0.0;
  for (const Atom& a : nu.atoms()) s += a.weight * phi(a.point);
  for (const Atom& a : mu.atoms()) s -= a.weight * phi(a.point);
  return s;
}

bool check_convex_order(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return lp::feasible(build_martingale_lp(mu, nu));
}

}  // namespace mot
