#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "mot/coupling.hpp"
#include "mot/errors.hpp"
#include "mot/fixtures.hpp"
#include "mot/io.hpp"
#include "mot/paving.hpp"
#include "test_support.hpp"

using namespace mot;
using mot::io::json;
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

json reparse(const json& j) { return json::parse(j.dump()); }

bool bit_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return false;
  }
  return true;
}

DiscreteMeasure awkward_measure(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::uniform_real_distribution<double> w(1e-6, 1.0);
  std::vector<Atom> atoms;
  for (int k = 0; k < 7; ++k) atoms.push_back({Vector::NullaryExpr(dim, [&] { return u(rng) / 3.0; }), w(rng) / 7.0});
  return DiscreteMeasure(atoms);
}

}  // namespace

TEST_CASE("measure round trip keeps order and exact doubles") {
  std::mt19937 rng(127);
  for (int trial = 0; trial < 30; ++trial) {
    const DiscreteMeasure m = awkward_measure(rng, 1 + trial % 3);
    const DiscreteMeasure back = io::measure_from_json(reparse(io::to_json(m)));
    REQUIRE(back.size() == m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK(bit_equal(back.point(i), m.point(i)));
      CHECK(back.weight(i) == m.weight(i));
    }
    CHECK(io::to_json(back) == io::to_json(m));
  }
}

TEST_CASE("polytope, pwl and coupling round trips") {
  std::mt19937 rng(131);
  const Polytope p = testing::square(0.1, 1.0 / 3, -2.0 / 7, 1);
  const Polytope pb = io::polytope_from_json(reparse(io::to_json(p)));
  REQUIRE(pb.vertices().size() == p.vertices().size());
  for (std::size_t k = 0; k < p.vertices().size(); ++k) CHECK(bit_equal(pb.vertices()[k], p.vertices()[k]));
  CHECK(io::to_json(p)["affine_dim"] == 2);

  const PwlConvex phi = testing::random_pwl(rng, 3, 6);
  const PwlConvex phib = io::pwl_from_json(reparse(io::to_json(phi)));
  REQUIRE(phib.pieces().size() == phi.pieces().size());
  for (std::size_t k = 0; k < phi.pieces().size(); ++k) {
    CHECK(bit_equal(phib.pieces()[k].gradient, phi.pieces()[k].gradient));
    CHECK(phib.pieces()[k].offset == phi.pieces()[k].offset);
  }

  const auto pair = fixtures::mixed_k(3);
  const Coupling c = find_coupling(pair.mu, pair.nu);
  const Coupling cb = io::coupling_from_json(reparse(io::to_json(c)));
  CHECK(cb.matrix == c.matrix);
  CHECK(cb.mu_support.size() == c.mu_support.size());
  CHECK(io::to_json(cb) == io::to_json(c));
}

TEST_CASE("paving round trip") {
  const auto pair = fixtures::mixed_k(3);
  const ConvexPaving p = compute_paving(pair.mu, pair.nu);
  const json j = io::to_json(p);
  CHECK(j["cells"].size() == 3);
  CHECK(j["singletons"].empty());
  const ConvexPaving back = io::paving_from_json(reparse(j), pair.mu);
  REQUIRE(back.cells.size() == p.cells.size());
  for (std::size_t k = 0; k < p.cells.size(); ++k) {
    CHECK(back.cells[k].members == p.cells[k].members);
    CHECK(same_vertex_set(back.cells[k].hull, p.cells[k].hull, 0.0));
  }
  CHECK(io::to_json(back) == j);

  const auto same = testing::measure_1d({{-1, 0.5}, {1, 0.5}});
  const json s = io::to_json(compute_paving(same, same));
  CHECK(s["cells"].empty());
  CHECK(s["singletons"] == json::array({0, 1}));
  CHECK(io::paving_from_json(s, same).cells.size() == 2);
}

TEST_CASE("parse failures map to ParseError, semantic failures keep their code") {
  CHECK(code_of([] { io::measure_from_json(json::parse(R"({"atoms": []})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::measure_from_json(json::parse(R"({"dim": 2, "atoms": [{"point": [1], "weight": 1}]})")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::measure_from_json(json::parse(R"({"dim": 1, "atoms": [{"point": ["a"], "weight": 1}]})")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::measure_from_json(json::parse(R"({"dim": 1, "atoms": [{"point": [0], "weight": -1}]})")); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] { io::pwl_from_json(json::parse(R"({"dim": 1, "pieces": [{"gradient": [1]}]})")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::vector_from_json(json::parse(R"({"x": 1})")); }) == ErrorCode::ParseError);

  const auto dir = std::filesystem::temp_directory_path() / "mot_io_test";
  std::filesystem::create_directories(dir);
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK(code_of([&] { io::read_file(bad.string()); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { io::read_file((dir / "missing.json").string()); }) == ErrorCode::ParseError);

  const auto good = dir / "good.json";
  const json m = io::to_json(testing::measure_1d({{0.1, 0.3}, {0.7, 0.7}}));
  io::write_file(good.string(), m);
  CHECK(io::read_file(good.string()) == m);
  std::filesystem::remove_all(dir);
}
