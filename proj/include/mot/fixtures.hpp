#pragma once

#include "mot/measures.hpp"

// Generators for the reference instances in the plane [0,1] x [-1,1] and the
// Gaussian grid. All throw InvalidParameter on bad parameters.
namespace mot::fixtures {

struct MeasurePair {
  DiscreteMeasure mu;
  DiscreteMeasure nu;
};

/// mu: k atoms (i/(k-1), 0) of weight 1/k; nu: (i/(k-1), +-1) of weight 1/(2k). k >= 2.
MeasurePair discrete_k(int k);

/// Column discretization of the uniform segment/two-segment pair: n columns at
/// t_i = (i + 1/2)/n. n >= 1.
MeasurePair continuous_grid(int n);

/// discrete_k(k) with mu replaced by (mu + delta_(1/2, 0)) / 2.
MeasurePair mixed_k(int k);

/// n x n grid with spacing h = sqrt(2 (var_nu - var_mu)) and weights from the
/// N(0, var_mu I) density; nu splits every atom equally onto its four
/// neighbours at distance h, so nu has per-axis variance var_mu_grid + h^2/2.
MeasurePair gaussian_grid(int n, double var_mu = 1.0, double var_nu = 2.0);

}  // namespace mot::fixtures
