#include <doctest.h>

#include "mot/errors.hpp"
#include "mot/fixtures.hpp"
#include "test_support.hpp"

using namespace mot;
using mot::testing::vec;

TEST_CASE("discrete_k(2)") {
  const auto p = fixtures::discrete_k(2);
  REQUIRE(p.mu.size() == 2);
  REQUIRE(p.nu.size() == 4);
  for (const Atom& a : p.mu.atoms()) CHECK(a.weight == doctest::Approx(0.5));
  for (const Atom& a : p.nu.atoms()) CHECK(a.weight == doctest::Approx(0.25));
  CHECK(p.mu.find(vec({1, 0})).has_value());
  CHECK(p.nu.find(vec({1, -1})).has_value());
  CHECK(check_convex_order(p.mu, p.nu));
}

TEST_CASE("mixed_k centre weight") {
  const auto p = fixtures::mixed_k(3);
  REQUIRE(p.mu.size() == 3);
  CHECK(p.mu.weight(*p.mu.find(vec({0.5, 0}))) == doctest::Approx(2.0 / 3.0));
  CHECK(p.mu.total_mass() == doctest::Approx(1.0));
  // even k: the centre is a new atom of weight 1/2
  const auto q = fixtures::mixed_k(4);
  REQUIRE(q.mu.size() == 5);
  CHECK(q.mu.weight(*q.mu.find(vec({0.5, 0}))) == doctest::Approx(0.5));
  CHECK(check_convex_order(q.mu, q.nu));
}

TEST_CASE("continuous_grid columns") {
  const auto p = fixtures::continuous_grid(10);
  REQUIRE(p.mu.size() == 10);
  REQUIRE(p.nu.size() == 20);
  CHECK(p.mu.point(0)(0) == doctest::Approx(0.05));
  CHECK(p.mu.point(9)(0) == doctest::Approx(0.95));
  for (const Atom& a : p.mu.atoms()) CHECK(a.weight == doctest::Approx(0.1));
}

TEST_CASE("bad parameters") {
  for (auto f : {+[] { fixtures::discrete_k(1); }, +[] { fixtures::mixed_k(0); }, +[] { fixtures::continuous_grid(0); },
                 +[] { fixtures::gaussian_grid(1); }, +[] { fixtures::gaussian_grid(5, 2.0, 1.0); }}) {
    try {
      f();
      FAIL("expected InvalidParameter");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidParameter);
    }
  }
}
