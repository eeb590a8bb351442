#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "mot/lp.hpp"
#include "mot/measures.hpp"

namespace mot {

/// Threshold separating a zero LP optimum from a positive one in polar tests.
inline constexpr double kPolarTol = 1e-8;

/// theta(i, j) = mass moved from mu-atom i to nu-atom j.
struct Coupling {
  std::vector<Vector> mu_support;
  std::vector<Vector> nu_support;
  Eigen::MatrixXd matrix;
};

/// gamma(x_i, .) for every mu-atom, each a probability measure on nu's support.
struct Kernel {
  std::vector<Vector> sources;
  std::vector<DiscreteMeasure> conditionals;
};

enum class CouplingConstraints {
  Martingale,     // marginals plus E[Y | X] = X
  MarginalsOnly,  // plain transport plans
};

/// Variables theta_ij >= 0 stored row-major (index i * |nu| + j); rows are the
/// mu marginals, then the nu marginals, then d martingale rows per mu-atom.
/// nu weights are rescaled to mu's total mass. Throws MassMismatch, DimensionMismatch.
lp::LinearProgram build_martingale_lp(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                      CouplingConstraints constraints = CouplingConstraints::Martingale);

/// Some martingale coupling; throws NotInConvexOrder when none exists.
Coupling find_coupling(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// max theta_ij over the coupling set. Throws NotInConvexOrder when it is empty.
double max_mass_on_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t i, std::size_t j,
                        CouplingConstraints constraints = CouplingConstraints::Martingale);

/// min theta_ij over the coupling set.
double min_mass_on_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t i, std::size_t j,
                        CouplingConstraints constraints = CouplingConstraints::Martingale);

/// max_mass_on_pair for every (i, j).
Eigen::MatrixXd polar_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             CouplingConstraints constraints = CouplingConstraints::Martingale);

/// reachable(i, j) iff max_mass_on_pair(i, j) > polar_tol. One LP per pair not
/// already witnessed by an earlier LP solution, in row-major order.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> reachability(const DiscreteMeasure& mu,
                                                                 const DiscreteMeasure& nu,
                                                                 double polar_tol = kPolarTol);

/// {y_j : pair (i, j) not polar} together with x_i itself.
std::vector<Vector> reachable_set(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t i,
                                  double polar_tol = kPolarTol);

Kernel disintegrate(const Coupling& c);

/// Largest violation of the marginal and martingale constraints.
double coupling_violation(const Coupling& c, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace mot
