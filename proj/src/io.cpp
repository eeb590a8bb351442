#include "mot/io.hpp"

#include <fstream>
#include <sstream>

#include "mot/errors.hpp"

namespace mot::io {

namespace {

// Wraps nlohmann's type/lookup errors so callers only see ParseError.
template <typename F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

int read_dim(const json& j) {
  const int d = j.at("dim").get<int>();
  if (d <= 0) throw Error(ErrorCode::ParseError, "dim must be positive");
  return d;
}

void require_dim(const Vector& v, int d) {
  if (v.size() != d) throw Error(ErrorCode::ParseError, "vector length does not match dim");
}

json points_to_json(const std::vector<Vector>& pts) {
  json arr = json::array();
  for (const Vector& p : pts) arr.push_back(to_json(p));
  return arr;
}

std::vector<Vector> points_from_json(const json& j) {
  std::vector<Vector> pts;
  for (const json& p : j) pts.push_back(vector_from_json(p));
  return pts;
}

}  // namespace

json to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector vector_from_json(const json& j) {
  return parsing("vector", [&] {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "vector must be an array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
  });
}

json to_json(const DiscreteMeasure& m) {
  json atoms = json::array();
  for (const Atom& a : m.atoms()) atoms.push_back({{"point", to_json(a.point)}, {"weight", a.weight}});
  return {{"dim", m.ambient_dim()}, {"atoms", std::move(atoms)}};
}

DiscreteMeasure measure_from_json(const json& j) {
  return parsing("measure", [&] {
    const int d = read_dim(j);
    std::vector<Atom> atoms;
    for (const json& a : j.at("atoms")) {
      Vector p = vector_from_json(a.at("point"));
      require_dim(p, d);
      const double w = a.at("weight").get<double>();
      atoms.push_back({std::move(p), w});
    }
    return DiscreteMeasure(std::move(atoms));
  });
}

json to_json(const Polytope& p) {
  return {{"dim", p.ambient_dim()}, {"vertices", points_to_json(p.vertices())}, {"affine_dim", p.affine_dim()}};
}

Polytope polytope_from_json(const json& j) {
  return parsing("polytope", [&] {
    const int d = read_dim(j);
    std::vector<Vector> pts = points_from_json(j.at("vertices"));
    for (const Vector& p : pts) require_dim(p, d);
    return Polytope(pts);
  });
}

json to_json(const Coupling& c) {
  json matrix = json::array();
  for (Eigen::Index i = 0; i < c.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < c.matrix.cols(); ++j) row.push_back(c.matrix(i, j));
    matrix.push_back(std::move(row));
  }
  return {{"mu_support", points_to_json(c.mu_support)},
          {"nu_support", points_to_json(c.nu_support)},
          {"matrix", std::move(matrix)}};
}

Coupling coupling_from_json(const json& j) {
  return parsing("coupling", [&] {
    Coupling c;
    c.mu_support = points_from_json(j.at("mu_support"));
    c.nu_support = points_from_json(j.at("nu_support"));
    const json& m = j.at("matrix");
    if (m.size() != c.mu_support.size()) throw Error(ErrorCode::ParseError, "matrix row count");
    c.matrix.resize(static_cast<Eigen::Index>(c.mu_support.size()), static_cast<Eigen::Index>(c.nu_support.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].size() != c.nu_support.size()) throw Error(ErrorCode::ParseError, "matrix column count");
      for (std::size_t k = 0; k < m[i].size(); ++k) {
        c.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = m[i][k].get<double>();
      }
    }
    return c;
  });
}

json to_json(const ConvexPaving& p) {
  json cells = json::array();
  for (const PavingCell& c : p.cells) {
    if (c.is_singleton()) continue;
    cells.push_back({{"members", c.members},
                     {"hull_vertices", points_to_json(c.hull.vertices())},
                     {"affine_dim", c.affine_dim()}});
  }
  return {{"cells", std::move(cells)}, {"singletons", p.singletons()}};
}

ConvexPaving paving_from_json(const json& j, const DiscreteMeasure& mu) {
  return parsing("paving", [&] {
    ConvexPaving p;
    for (const json& c : j.at("cells")) {
      auto members = c.at("members").get<std::vector<std::size_t>>();
      std::sort(members.begin(), members.end());
      Polytope hull(points_from_json(c.at("hull_vertices")));
      p.cells.push_back({std::move(members), std::move(hull)});
    }
    for (std::size_t i : j.at("singletons").get<std::vector<std::size_t>>()) {
      if (i >= mu.size()) throw Error(ErrorCode::ParseError, "singleton index out of range");
      const std::vector<Vector> pt{mu.point(i)};
      p.cells.push_back({{i}, Polytope(pt)});
    }
    std::sort(p.cells.begin(), p.cells.end(),
              [](const PavingCell& x, const PavingCell& y) { return x.members.front() < y.members.front(); });
    return p;
  });
}

json to_json(const PwlConvex& phi) {
  json pieces = json::array();
  for (const AffineFunction& a : phi.pieces()) pieces.push_back({{"gradient", to_json(a.gradient)}, {"offset", a.offset}});
  return {{"dim", phi.dim()}, {"pieces", std::move(pieces)}};
}

PwlConvex pwl_from_json(const json& j) {
  return parsing("pwl", [&] {
    const int d = read_dim(j);
    std::vector<AffineFunction> pieces;
    for (const json& p : j.at("pieces")) {
      Vector g = vector_from_json(p.at("gradient"));
      require_dim(g, d);
      const double c = p.at("offset").get<double>();
      pieces.push_back({std::move(g), c});
    }
    return PwlConvex(std::move(pieces));
  });
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace mot::io
