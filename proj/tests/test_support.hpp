#pragma once

// Generators and brute-force oracles shared by the unit and acceptance tests.
// Oracles here never call the simplex solver.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <random>
#include <vector>

#include "mot/geometry.hpp"
#include "mot/measures.hpp"
#include "mot/pwl.hpp"

namespace mot::testing {

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline DiscreteMeasure measure(std::initializer_list<std::pair<Vector, double>> atoms) {
  std::vector<Atom> out;
  for (const auto& [p, w] : atoms) out.push_back({p, w});
  return DiscreteMeasure(std::move(out));
}

inline DiscreteMeasure measure_1d(std::initializer_list<std::pair<double, double>> atoms) {
  std::vector<Atom> out;
  for (const auto& [x, w] : atoms) out.push_back({vec({x}), w});
  return DiscreteMeasure(std::move(out));
}

inline Polytope square(double x0, double x1, double y0, double y1) { return box(vec({x0, y0}), vec({x1, y1})); }

struct Instance {
  DiscreteMeasure mu;
  DiscreteMeasure nu;
};

/// mu on integer points of [-3,3]^dim; nu obtained by a dilation kernel:
/// each atom either stays or is split symmetrically x +- v (optionally keeping
/// part at x). Convex order holds by construction. Both have <= max_atoms atoms.
inline Instance random_dilation_instance(std::mt19937& rng, int dim, std::size_t max_atoms = 8) {
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> step(-2, 2);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_int_distribution<int> action(0, 3);
  while (true) {
    std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_atoms / 2));
    const std::size_t m = count(rng);
    std::vector<Atom> mu;
    std::vector<Atom> nu;
    for (std::size_t k = 0; k < m; ++k) {
      Vector x(dim);
      for (int c = 0; c < dim; ++c) x(c) = coord(rng);
      const double w = weight(rng);
      mu.push_back({x, w});
      const int a = action(rng);
      if (a == 0) {
        nu.push_back({x, w});
        continue;
      }
      Vector v(dim);
      do {
        for (int c = 0; c < dim; ++c) v(c) = step(rng);
      } while (v.cwiseAbs().maxCoeff() == 0.0);
      if (a == 3) {
        nu.push_back({x, 0.5 * w});
        nu.push_back({x + v, 0.25 * w});
        nu.push_back({x - v, 0.25 * w});
      } else {
        nu.push_back({x + v, 0.5 * w});
        nu.push_back({x - v, 0.5 * w});
      }
    }
    DiscreteMeasure mum(std::move(mu));
    DiscreteMeasure num(std::move(nu));
    if (mum.size() <= max_atoms && num.size() <= max_atoms) return {std::move(mum), std::move(num)};
  }
}

inline PwlConvex random_pwl(std::mt19937& rng, int dim, std::size_t pieces = 5) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<AffineFunction> out;
  for (std::size_t k = 0; k < pieces; ++k) {
    Vector grad(dim);
    for (int c = 0; c < dim; ++c) grad(c) = g(rng);
    out.push_back({grad, g(rng)});
  }
  return PwlConvex(std::move(out));
}

/// Max of tangent planes of |x|^2 at the given points: exact on those points.
inline PwlConvex squared_norm_tangents(const std::vector<Vector>& points) {
  std::vector<AffineFunction> pieces;
  for (const Vector& p : points) pieces.push_back({2.0 * p, -p.squaredNorm()});
  return PwlConvex(std::move(pieces));
}

/// Direct evaluation of sum_i w_i |x - y_i|.
inline double potential_direct(const DiscreteMeasure& m, double x) {
  double s = 0.0;
  for (const Atom& a : m.atoms()) s += a.weight * std::abs(x - a.point(0));
  return s;
}

/// Positive runs of u_nu - u_mu on a uniform grid, as (first, last) grid points.
inline std::vector<std::pair<double, double>> positive_runs_on_grid(const DiscreteMeasure& mu,
                                                                    const DiscreteMeasure& nu, double lo,
                                                                    double hi, double step, double eps) {
  std::vector<std::pair<double, double>> runs;
  bool in_run = false;
  const auto steps = static_cast<long>(std::llround((hi - lo) / step));
  for (long s = 0; s <= steps; ++s) {
    const double x = lo + static_cast<double>(s) * step;
    const bool pos = potential_direct(nu, x) - potential_direct(mu, x) > eps;
    if (pos && !in_run) runs.push_back({x, x});
    if (pos) runs.back().second = x;
    in_run = pos;
  }
  return runs;
}

/// All vertices of {x >= 0 : A x = b} by enumerating column bases.
inline std::vector<Eigen::VectorXd> enumerate_vertices(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.cols();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::Index rank = lu.rank();
  std::vector<Eigen::VectorXd> out;
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(rank));
  std::function<void(Eigen::Index, Eigen::Index)> rec = [&](Eigen::Index start, Eigen::Index depth) {
    if (depth == rank) {
      Eigen::MatrixXd sub(a.rows(), rank);
      for (Eigen::Index k = 0; k < rank; ++k) sub.col(k) = a.col(idx[static_cast<std::size_t>(k)]);
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
      if (qr.rank() < rank) return;
      const Eigen::VectorXd xs = qr.solve(b);
      if ((sub * xs - b).norm() > 1e-10 || xs.minCoeff() < -1e-12) return;
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      for (Eigen::Index k = 0; k < rank; ++k) x(idx[static_cast<std::size_t>(k)]) = xs(k);
      for (const auto& v : out) {
        if ((v - x).norm() < 1e-10) return;
      }
      out.push_back(x);
      return;
    }
    for (Eigen::Index c = start; c < n; ++c) {
      idx[static_cast<std::size_t>(depth)] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace mot::testing
