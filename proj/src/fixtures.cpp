#include "mot/fixtures.hpp"

#include <cmath>

#include "mot/errors.hpp"

namespace mot::fixtures {

namespace {

Vector point2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

MeasurePair columns(const std::vector<double>& ts) {
  const double k = static_cast<double>(ts.size());
  std::vector<Atom> mu;
  std::vector<Atom> nu;
  for (double t : ts) {
    mu.push_back({point2(t, 0.0), 1.0 / k});
    nu.push_back({point2(t, 1.0), 1.0 / (2.0 * k)});
    nu.push_back({point2(t, -1.0), 1.0 / (2.0 * k)});
  }
  return {DiscreteMeasure(std::move(mu)), DiscreteMeasure(std::move(nu))};
}

}  // namespace

MeasurePair discrete_k(int k) {
  if (k < 2) throw Error(ErrorCode::InvalidParameter, "discrete_k needs k >= 2");
  std::vector<double> ts;
  for (int i = 0; i < k; ++i) ts.push_back(static_cast<double>(i) / static_cast<double>(k - 1));
  return columns(ts);
}

MeasurePair continuous_grid(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "continuous_grid needs n >= 1");
  std::vector<double> ts;
  for (int i = 0; i < n; ++i) ts.push_back((static_cast<double>(i) + 0.5) / static_cast<double>(n));
  return columns(ts);
}

MeasurePair mixed_k(int k) {
  MeasurePair base = discrete_k(k);
  std::vector<Atom> mu;
  for (const Atom& a : base.mu.atoms()) mu.push_back({a.point, 0.5 * a.weight});
  mu.push_back({point2(0.5, 0.0), 0.5});
  return {DiscreteMeasure(std::move(mu)), base.nu};
}

MeasurePair gaussian_grid(int n, double var_mu, double var_nu) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "gaussian_grid needs n >= 2");
  if (!(var_mu > 0.0) || !(var_nu > var_mu)) {
    throw Error(ErrorCode::InvalidParameter, "gaussian_grid needs 0 < var_mu < var_nu");
  }
  const double h = std::sqrt(2.0 * (var_nu - var_mu));
  const double mid = 0.5 * static_cast<double>(n - 1);
  std::vector<Atom> mu;
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Vector p = point2(h * (a - mid), h * (b - mid));
      const double w = std::exp(-p.squaredNorm() / (2.0 * var_mu));
      total += w;
      mu.push_back({std::move(p), w});
    }
  }
  Vector bary = Vector::Zero(2);
  for (Atom& atom : mu) {
    atom.weight /= total;
    bary += atom.weight * atom.point;
  }
  for (Atom& atom : mu) atom.point -= bary;

  std::vector<Atom> nu;
  const Vector steps[] = {point2(h, 0.0), point2(-h, 0.0), point2(0.0, h), point2(0.0, -h)};
  for (const Atom& atom : mu) {
    for (const Vector& s : steps) nu.push_back({atom.point + s, 0.25 * atom.weight});
  }
  return {DiscreteMeasure(std::move(mu)), DiscreteMeasure(std::move(nu))};
}

}  // namespace mot::fixtures
