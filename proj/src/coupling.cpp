#include "mot/coupling.hpp"

#include <cmath>
#include <string>

#include "mot/errors.hpp"

namespace mot {

namespace {

void require_compatible(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.ambient_dim() != nu.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "mu and nu dimensions differ");
  const double mm = mu.total_mass();
  const double mn = nu.total_mass();
  if (std::abs(mm - mn) > kGeoTol * std::max(1.0, mm)) {
    throw Error(ErrorCode::MassMismatch, "mu and nu have different total mass");
  }
}

void require_index(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t i, std::size_t j) {
  if (i >= mu.size() || j >= nu.size()) throw Error(ErrorCode::InvalidInput, "atom index out of range");
}

Eigen::MatrixXd to_matrix(const std::vector<double>& x, std::size_t rows, std::size_t cols) {
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = x[i * cols + j];
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v < lp::kTolerance ? 0.0 : v;
    }
  }
  return m;
}

lp::LpResult optimize_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t i, std::size_t j,
                           double sign, CouplingConstraints constraints) {
  require_index(mu, nu, i, j);
  lp::LinearProgram prog = build_martingale_lp(mu, nu, constraints);
  prog.objective[i * nu.size() + j] = sign;
  lp::LpResult res = lp::solve(prog);
  if (res.status != lp::Status::Optimal) {
    throw Error(ErrorCode::NotInConvexOrder, "no coupling exists");
  }
  return res;
}

}  // namespace

lp::LinearProgram build_martingale_lp(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                      CouplingConstraints constraints) {
  require_compatible(mu, nu);
  const std::size_t m = mu.size();
  const std::size_t n = nu.size();
  const std::size_t vars = m * n;
  const auto d = static_cast<std::size_t>(mu.ambient_dim());
  const double nu_scale = mu.total_mass() / nu.total_mass();

  lp::LinearProgram prog;
  prog.objective.assign(vars, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[i * n + j] = 1.0;
    prog.add_constraint(std::move(row), lp::Relation::Equal, mu.weight(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t i = 0; i < m; ++i) row[i * n + j] = 1.0;
    prog.add_constraint(std::move(row), lp::Relation::Equal, nu.weight(j) * nu_scale);
  }
  if (constraints == CouplingConstraints::Martingale) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < d; ++c) {
        const auto ci = static_cast<Eigen::Index>(c);
        std::vector<double> row(vars, 0.0);
        for (std::size_t j = 0; j < n; ++j) row[i * n + j] = nu.point(j)(ci) - mu.point(i)(ci);
        prog.add_constraint(std::move(row), lp::Relation::Equal, 0.0);
      }
    }
  }
  return prog;
}

Coupling find_coupling(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const lp::LpResult res = lp::solve(build_martingale_lp(mu, nu));
  if (res.status != lp::Status::Optimal) throw Error(ErrorCode::NotInConvexOrder, "no martingale coupling exists");
  return {mu.support(), nu.support(), to_matrix(*res.solution, mu.size(), nu.size())};
}

double max_mass_on_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t i, std::size_t j,
                        CouplingConstraints constraints) {
  return *optimize_pair(mu, nu, i, j, 1.0, constraints).objective_value;
}

double min_mass_on_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t i, std::size_t j,
                        CouplingConstraints constraints) {
  return -*optimize_pair(mu, nu, i, j, -1.0, constraints).objective_value;
}

Eigen::MatrixXd polar_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu, CouplingConstraints constraints) {
  const std::size_t n = nu.size();
  const lp::PreparedProgram prog(build_martingale_lp(mu, nu, constraints));
  if (!prog.feasible()) throw Error(ErrorCode::NotInConvexOrder, "no coupling exists");
  Eigen::MatrixXd out(mu.size(), n);
  std::vector<double> objective(mu.size() * n, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      objective[i * n + j] = 1.0;
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = *prog.maximize(objective).objective_value;
      objective[i * n + j] = 0.0;
    }
  }
  return out;
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> reachability(const DiscreteMeasure& mu,
                                                                 const DiscreteMeasure& nu, double polar_tol) {
  const std::size_t m = mu.size();
  const std::size_t n = nu.size();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> reach =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(m, n, false);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> decided = reach;
  const lp::PreparedProgram prog(build_martingale_lp(mu, nu));
  if (!prog.feasible()) throw Error(ErrorCode::NotInConvexOrder, "no martingale coupling exists");
  std::vector<double> objective(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      if (decided(ii, jj)) continue;
      objective[i * n + j] = 1.0;
      const lp::LpResult res = prog.maximize(objective);
      objective[i * n + j] = 0.0;
      reach(ii, jj) = *res.objective_value > polar_tol;
      decided(ii, jj) = true;
      // Any coupling putting mass on a pair proves that pair is not polar.
      const std::vector<double>& x = *res.solution;
      for (std::size_t k = 0; k < m * n; ++k) {
        if (x[k] > polar_tol) {
          const auto r = static_cast<Eigen::Index>(k / n);
          const auto c = static_cast<Eigen::Index>(k % n);
          reach(r, c) = true;
          decided(r, c) = true;
        }
      }
    }
  }
  return reach;
}

std::vector<Vector> reachable_set(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t i,
                                  double polar_tol) {
  if (i >= mu.size()) throw Error(ErrorCode::InvalidInput, "atom index out of range");
  const std::size_t n = nu.size();
  const lp::PreparedProgram prog(build_martingale_lp(mu, nu));
  if (!prog.feasible()) throw Error(ErrorCode::NotInConvexOrder, "no martingale coupling exists");
  std::vector<double> objective(mu.size() * n, 0.0);
  std::vector<Vector> out{mu.point(i)};
  for (std::size_t j = 0; j < n; ++j) {
    objective[i * n + j] = 1.0;
    const double best = *prog.maximize(objective).objective_value;
    objective[i * n + j] = 0.0;
    if (best > polar_tol && !approx_equal(nu.point(j), mu.point(i))) out.push_back(nu.point(j));
  }
  return out;
}

Kernel disintegrate(const Coupling& c) {
  Kernel k;
  k.sources = c.mu_support;
  for (Eigen::Index i = 0; i < c.matrix.rows(); ++i) {
    const double row_mass = c.matrix.row(i).sum();
    if (!(row_mass > 0.0)) throw Error(ErrorCode::InvalidInput, "coupling row has no mass");
    std::vector<Atom> atoms;
    for (Eigen::Index j = 0; j < c.matrix.cols(); ++j) {
      if (c.matrix(i, j) > 0.0) atoms.push_back({c.nu_support[static_cast<std::size_t>(j)], c.matrix(i, j) / row_mass});
    }
    k.conditionals.emplace_back(std::move(atoms));
  }
  return k;
}

double coupling_violation(const Coupling& c, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < c.matrix.rows(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    worst = std::max(worst, std::abs(c.matrix.row(i).sum() - mu.weight(iu)));
    Vector drift = Vector::Zero(mu.ambient_dim());
    for (Eigen::Index j = 0; j < c.matrix.cols(); ++j) {
      drift += c.matrix(i, j) * (nu.point(static_cast<std::size_t>(j)) - mu.point(iu));
      worst = std::max(worst, std::max(0.0, -c.matrix(i, j)));
    }
    worst = std::max(worst, drift.cwiseAbs().maxCoeff());
  }
  for (Eigen::Index j = 0; j < c.matrix.cols(); ++j) {
    worst = std::max(worst, std::abs(c.matrix.col(j).sum() - nu.weight(static_cast<std::size_t>(j))));
  }
  return worst;
}

}  // namespace mot
