#include <doctest.h>

#include <random>

#include "mot/coupling.hpp"
#include "mot/errors.hpp"
#include "mot/fixtures.hpp"
#include "mot/pwl.hpp"
#include "test_support.hpp"

using namespace mot;
using mot::testing::measure;
using mot::testing::measure_1d;
using mot::testing::vec;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no mot::Error thrown");
  return ErrorCode::InvalidInput;
}

std::size_t index_of(const DiscreteMeasure& m, const Vector& x) {
  const auto i = m.find(x);
  REQUIRE(i.has_value());
  return *i;
}

bool same_point_set(std::vector<Vector> a, const std::vector<Vector>& b) {
  if (a.size() != b.size()) return false;
  for (const Vector& y : b) {
    bool found = false;
    for (const Vector& x : a) found = found || approx_equal(x, y);
    if (!found) return false;
  }
  return true;
}

// mixed_k(3) coupling: the centre spreads 3/4 of its mass like
// nu and 1/8 + 1/8 onto (1/2, -1), (1/2, 1); edge atoms split vertically.
Coupling mixed3_coupling(const fixtures::MeasurePair& pair) {
  Coupling c{pair.mu.support(), pair.nu.support(), Eigen::MatrixXd::Zero(3, 6)};
  const auto put = [&](const Vector& x, const Vector& y, double m) {
    c.matrix(static_cast<Eigen::Index>(index_of(pair.mu, x)), static_cast<Eigen::Index>(index_of(pair.nu, y))) = m;
  };
  for (double s : {-1.0, 1.0}) {
    put(vec({0, 0}), vec({0, s}), 1.0 / 12);
    put(vec({1, 0}), vec({1, s}), 1.0 / 12);
    put(vec({0.5, 0}), vec({0, s}), 1.0 / 12);
    put(vec({0.5, 0}), vec({1, s}), 1.0 / 12);
    put(vec({0.5, 0}), vec({0.5, s}), 1.0 / 6);
  }
  return c;
}

}  // namespace

TEST_CASE("build_martingale_lp sizes") {
  const auto a = build_martingale_lp(measure_1d({{0, 1}}), measure_1d({{0, 1}}));
  CHECK(a.num_variables() == 1);
  CHECK(a.num_constraints() == 3);

  const auto pair = fixtures::discrete_k(2);
  const auto b = build_martingale_lp(pair.mu, pair.nu);
  CHECK(b.num_variables() == 8);
  CHECK(b.num_constraints() == 10);
  CHECK(build_martingale_lp(pair.mu, pair.nu, CouplingConstraints::MarginalsOnly).num_constraints() == 6);

  const auto mu = measure({{vec({0, 0}), 1}});
  const auto nu = measure({{vec({0, 1}), 0.5}, {vec({0, -1}), 0.5}});
  const auto c = build_martingale_lp(mu, nu);
  CHECK(c.num_variables() == 2);
  CHECK(lp::feasible(c));
  const Coupling theta = find_coupling(mu, nu);
  CHECK(theta.matrix(0, 0) == doctest::Approx(0.5));
  CHECK(theta.matrix(0, 1) == doctest::Approx(0.5));

  CHECK(code_of([] { build_martingale_lp(measure_1d({{0, 1}}), measure_1d({{0, 2}})); }) ==
        ErrorCode::MassMismatch);
  CHECK(code_of([&] { build_martingale_lp(measure_1d({{0, 1}}), mu); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("find_coupling examples") {
  const auto pair = fixtures::discrete_k(2);
  const Coupling c = find_coupling(pair.mu, pair.nu);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const bool same_column = pair.mu.point(i)(0) == pair.nu.point(j)(0);
      CHECK(c.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) ==
            doctest::Approx(same_column ? 0.25 : 0.0));
    }
  }
  CHECK(code_of([] { find_coupling(measure_1d({{-1, 0.5}, {1, 0.5}}), measure_1d({{0, 1}})); }) ==
        ErrorCode::NotInConvexOrder);

  const auto same = measure({{vec({0, 0}), 0.2}, {vec({1, 0}), 0.3}, {vec({0, 1}), 0.5}});
  const Coupling id = find_coupling(same, same);
  CHECK(coupling_violation(id, same, same) <= lp::kTolerance);
}

TEST_CASE("max_mass_on_pair examples") {
  const auto pair = fixtures::discrete_k(2);
  const std::size_t origin = index_of(pair.mu, vec({0, 0}));
  CHECK(max_mass_on_pair(pair.mu, pair.nu, origin, index_of(pair.nu, vec({0, 1}))) == doctest::Approx(0.25));
  CHECK(max_mass_on_pair(pair.mu, pair.nu, origin, index_of(pair.nu, vec({1, 1}))) <= kPolarTol);
  CHECK(max_mass_on_pair(measure_1d({{0, 1}}), measure_1d({{0, 1}}), 0, 0) == doctest::Approx(1.0));
  CHECK(code_of([&] { max_mass_on_pair(pair.mu, pair.nu, 5, 0); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { max_mass_on_pair(measure_1d({{-1, 0.5}, {1, 0.5}}), measure_1d({{0, 1}}), 0, 0); }) ==
        ErrorCode::NotInConvexOrder);
}

TEST_CASE("reachable_set examples") {
  const auto pair = fixtures::discrete_k(2);
  CHECK(same_point_set(reachable_set(pair.mu, pair.nu, index_of(pair.mu, vec({0, 0}))),
                       {vec({0, 0}), vec({0, 1}), vec({0, -1})}));

  const auto mixed = fixtures::mixed_k(3);
  std::vector<Vector> expected = mixed.nu.support();
  expected.push_back(vec({0.5, 0}));
  CHECK(same_point_set(reachable_set(mixed.mu, mixed.nu, index_of(mixed.mu, vec({0.5, 0}))), expected));

  CHECK(same_point_set(reachable_set(measure_1d({{0, 1}}), measure_1d({{0, 1}}), 0), {vec({0})}));
}

TEST_CASE("disintegrate examples") {
  const auto pair = fixtures::discrete_k(2);
  const Kernel k = disintegrate(find_coupling(pair.mu, pair.nu));
  const DiscreteMeasure& g = k.conditionals[index_of(pair.mu, vec({0, 0}))];
  CHECK(g.size() == 2);
  CHECK(g.weight(index_of(g, vec({0, 1}))) == doctest::Approx(0.5));
  CHECK(g.weight(index_of(g, vec({0, -1}))) == doctest::Approx(0.5));

  const auto same = measure_1d({{-1, 0.25}, {2, 0.75}});
  const Coupling id{same.support(), same.support(), Eigen::Vector2d(0.25, 0.75).asDiagonal()};
  const Kernel ki = disintegrate(id);
  for (std::size_t i = 0; i < 2; ++i) {
    REQUIRE(ki.conditionals[i].size() == 1);
    CHECK(approx_equal(ki.conditionals[i].point(0), same.point(i)));
    CHECK(ki.conditionals[i].weight(0) == doctest::Approx(1.0));
  }

  const auto mixed = fixtures::mixed_k(3);
  const Coupling c = mixed3_coupling(mixed);
  REQUIRE(coupling_violation(c, mixed.mu, mixed.nu) <= 1e-12);
  const Kernel kc = disintegrate(c);
  const DiscreteMeasure& centre = kc.conditionals[index_of(mixed.mu, vec({0.5, 0}))];
  // (k/(k+1)) nu + (1/(2(k+1))) (delta_(1/2,-1) + delta_(1/2,1)) with k = 3
  for (const Atom& y : mixed.nu.atoms()) {
    double expected = 0.75 * y.weight;
    if (y.point(0) == 0.5) expected += 0.125;
    CHECK(centre.weight(index_of(centre, y.point)) == doctest::Approx(expected));
  }
  CHECK(approx_equal(barycenter(centre), vec({0.5, 0})));
}

TEST_CASE("returned couplings satisfy the coupling and kernel invariants") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 1 + trial % 3;
    const auto inst = testing::random_dilation_instance(rng, dim);
    const Coupling c = find_coupling(inst.mu, inst.nu);
    CHECK(c.matrix.minCoeff() >= 0.0);
    CHECK(coupling_violation(c, inst.mu, inst.nu) <= lp::kTolerance);
    const Kernel k = disintegrate(c);
    for (std::size_t i = 0; i < inst.mu.size(); ++i) {
      CHECK(k.conditionals[i].total_mass() == doctest::Approx(1.0).epsilon(lp::kTolerance));
      CHECK((barycenter(k.conditionals[i]) - inst.mu.point(i)).cwiseAbs().maxCoeff() <= 10 * lp::kTolerance);
    }
  }
}

TEST_CASE("kernels concentrate on the face of the reachable hull at the source") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 1 + trial % 3;
    const auto inst = testing::random_dilation_instance(rng, dim);
    const Kernel k = disintegrate(find_coupling(inst.mu, inst.nu));
    for (std::size_t i = 0; i < inst.mu.size(); ++i) {
      const Polytope hull = convex_hull(reachable_set(inst.mu, inst.nu, i));
      const Polytope face = minimal_face(inst.mu.point(i), hull);
      CHECK(contains(face, barycenter(k.conditionals[i])));
      double outside = 0.0;
      for (const Atom& y : k.conditionals[i].atoms()) {
        if (!contains(face, y.point)) outside += y.weight * inst.mu.weight(i);
      }
      CHECK(outside <= kPolarTol);
    }
  }
}

TEST_CASE("polar matrix and reachability agree with per-pair LPs") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + trial % 3;
    const auto inst = testing::random_dilation_instance(rng, dim, 6);
    const Eigen::MatrixXd pm = polar_matrix(inst.mu, inst.nu);
    const auto reach = reachability(inst.mu, inst.nu);
    for (std::size_t i = 0; i < inst.mu.size(); ++i) {
      for (std::size_t j = 0; j < inst.nu.size(); ++j) {
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        const double m = max_mass_on_pair(inst.mu, inst.nu, i, j);
        CHECK(pm(ii, jj) == doctest::Approx(m).epsilon(1e-9));
        CHECK(reach(ii, jj) == (m > kPolarTol));
      }
    }
  }
}

TEST_CASE("the discrete_k coupling set is a single point") {
  for (int k : {2, 3, 5}) {
    const auto pair = fixtures::discrete_k(k);
    for (std::size_t i = 0; i < pair.mu.size(); ++i) {
      for (std::size_t j = 0; j < pair.nu.size(); ++j) {
        const double hi = max_mass_on_pair(pair.mu, pair.nu, i, j);
        const double lo = min_mass_on_pair(pair.mu, pair.nu, i, j);
        CHECK(hi - lo <= 1e-7);
        const bool same_column = std::abs(pair.mu.point(i)(0) - pair.nu.point(j)(0)) < 1e-12;
        CHECK(hi == doctest::Approx(same_column ? 1.0 / (2 * k) : 0.0));
      }
    }
  }
}

TEST_CASE("without martingale rows no pair is polar") {
  const auto pair = fixtures::discrete_k(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(max_mass_on_pair(pair.mu, pair.nu, i, j, CouplingConstraints::MarginalsOnly) >= 0.25 - 1e-9);
      CHECK(min_mass_on_pair(pair.mu, pair.nu, i, j, CouplingConstraints::MarginalsOnly) <= 1e-9);
    }
  }
  std::mt19937 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testing::random_dilation_instance(rng, 2, 5);
    const Eigen::MatrixXd pm = polar_matrix(inst.mu, inst.nu, CouplingConstraints::MarginalsOnly);
    CHECK(pm.minCoeff() > kPolarTol);
  }
}
