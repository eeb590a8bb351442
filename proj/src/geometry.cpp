#include "mot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mot/errors.hpp"
#include "mot/lp.hpp"

namespace mot {

namespace {

void check_same_dim(std::span<const Vector> points) {
  for (const Vector& p : points) {
    if (p.size() != points.front().size()) {
      throw Error(ErrorCode::DimensionMismatch, "points have different dimensions");
    }
    if (!p.allFinite()) throw Error(ErrorCode::InvalidInput, "non-finite coordinate");
  }
}

// Calls visit(indices) for every size-k subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Minimal L1 residual of x against conv(vertices).
double hull_residual(std::span<const Vector> vertices, const Vector& x) {
  const std::size_t n = vertices.size();
  const std::size_t d = static_cast<std::size_t>(x.size());
  lp::LinearProgram prog;
  prog.objective.assign(n + 2 * d, 0.0);
  for (std::size_t c = n; c < n + 2 * d; ++c) prog.objective[c] = -1.0;
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<double> row(n + 2 * d, 0.0);
    for (std::size_t k = 0; k < n; ++k) row[k] = vertices[k](static_cast<Eigen::Index>(r));
    row[n + r] = 1.0;
    row[n + d + r] = -1.0;
    prog.add_constraint(std::move(row), lp::Relation::Equal, x(static_cast<Eigen::Index>(r)));
  }
  std::vector<double> ones(n + 2 * d, 0.0);
  std::fill(ones.begin(), ones.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
  prog.add_constraint(std::move(ones), lp::Relation::Equal, 1.0);
  const lp::LpResult res = lp::solve(prog);
  return res.status == lp::Status::Optimal ? -*res.objective_value
                                           : std::numeric_limits<double>::infinity();
}

bool in_hull_of(std::span<const Vector> vertices, const Vector& x) {
  const double tol = kGeoTol * std::max(coordinate_scale(vertices), coordinate_scale({&x, 1}));
  if (vertices.size() == 1) return (vertices.front() - x).lpNorm<1>() <= tol;
  return hull_residual(vertices, x) <= tol;
}

// Largest t such that each group of points admits convex-combination
// coefficients all >= t, with every group producing the same point (equal to
// target when one is given). nullopt if no such representation exists.
std::optional<double> max_min_coefficient(const std::vector<std::vector<Vector>>& groups,
                                          const Vector* target) {
  // Variables: t, then s_k >= 0 per vertex with lambda_k = t + s_k.
  std::size_t nvars = 1;
  std::vector<std::size_t> offset;
  for (const auto& g : groups) {
    offset.push_back(nvars);
    nvars += g.size();
  }
  const auto d = groups.front().front().size();
  lp::LinearProgram prog;
  prog.objective.assign(nvars, 0.0);
  prog.objective[0] = 1.0;
  prog.bounds.assign(nvars, lp::Bound{});
  prog.bounds[0].upper = 1.0;

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    std::vector<double> row(nvars, 0.0);
    row[0] = static_cast<double>(groups[gi].size());
    for (std::size_t k = 0; k < groups[gi].size(); ++k) row[offset[gi] + k] = 1.0;
    prog.add_constraint(std::move(row), lp::Relation::Equal, 1.0);
  }
  auto accumulate = [&](std::size_t gi, Eigen::Index r, double sign, std::vector<double>& row) {
    for (std::size_t k = 0; k < groups[gi].size(); ++k) {
      const double v = sign * groups[gi][k](r);
      row[offset[gi] + k] += v;
      row[0] += v;
    }
  };
  for (Eigen::Index r = 0; r < d; ++r) {
    if (target != nullptr) {
      std::vector<double> row(nvars, 0.0);
      accumulate(0, r, 1.0, row);
      prog.add_constraint(std::move(row), lp::Relation::Equal, (*target)(r));
    }
    for (std::size_t gi = 1; gi < groups.size(); ++gi) {
      std::vector<double> row(nvars, 0.0);
      accumulate(0, r, 1.0, row);
      accumulate(gi, r, -1.0, row);
      prog.add_constraint(std::move(row), lp::Relation::Equal, 0.0);
    }
  }
  const lp::LpResult res = lp::solve(prog);
  if (res.status != lp::Status::Optimal) return std::nullopt;
  return *res.objective_value;
}

std::vector<Vector> to_local(const AffineSubspace& aff, std::span<const Vector> points) {
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const Vector& p : points) out.push_back(aff.local_coordinates(p));
  return out;
}

}  // namespace

double coordinate_scale(std::span<const Vector> points) {
  double s = 1.0;
  for (const Vector& p : points) {
    if (p.size() > 0) s = std::max(s, p.cwiseAbs().maxCoeff());
  }
  return s;
}

bool approx_equal(const Vector& a, const Vector& b, double tol) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

Vector AffineSubspace::local_coordinates(const Vector& x) const {
  return basis.transpose() * (x - base_point);
}

double AffineSubspace::distance(const Vector& x) const {
  const Vector diff = x - base_point;
  return (diff - basis * (basis.transpose() * diff)).norm();
}

bool AffineSubspace::contains(const Vector& x, double tol) const {
  const Vector pts[] = {x, base_point};
  return distance(x) <= tol * coordinate_scale(pts);
}

AffineSubspace affine_hull(std::span<const Vector> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "affine hull of an empty point set");
  check_same_dim(points);
  const Eigen::Index d = points.front().size();
  const auto n = static_cast<Eigen::Index>(points.size());
  Vector centroid = Vector::Zero(d);
  for (const Vector& p : points) centroid += p;
  centroid /= static_cast<double>(n);

  Eigen::MatrixXd centered(d, n);
  for (Eigen::Index k = 0; k < n; ++k) centered.col(k) = points[static_cast<std::size_t>(k)] - centroid;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
  const double tol = kGeoTol * coordinate_scale(points);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > tol) ++rank;
  }
  return AffineSubspace{centroid, svd.matrixU().leftCols(rank)};
}

Polytope::Polytope(std::span<const Vector> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "polytope needs at least one point");
  check_same_dim(points);
  const double tol = kGeoTol * coordinate_scale(points);

  std::vector<Vector> unique;
  for (const Vector& p : points) {
    const bool dup = std::any_of(unique.begin(), unique.end(),
                                 [&](const Vector& q) { return approx_equal(p, q, tol); });
    if (!dup) unique.push_back(p);
  }

  if (unique.size() > 2) {
    const AffineSubspace aff = mot::affine_hull(unique);
    if (aff.dim() == 1) {
      // Collinear: only the two extreme points survive.
      std::size_t lo = 0, hi = 0;
      std::vector<double> t(unique.size());
      for (std::size_t k = 0; k < unique.size(); ++k) {
        t[k] = aff.local_coordinates(unique[k])(0);
        if (t[k] < t[lo]) lo = k;
        if (t[k] > t[hi]) hi = k;
      }
      unique = {unique[std::min(lo, hi)], unique[std::max(lo, hi)]};
    } else {
      std::vector<char> keep(unique.size(), 1);
      std::vector<Vector> others;
      for (std::size_t k = 0; k < unique.size(); ++k) {
        others.clear();
        for (std::size_t j = 0; j < unique.size(); ++j) {
          if (j != k && keep[j]) others.push_back(unique[j]);
        }
        if (in_hull_of(others, unique[k])) keep[k] = 0;
      }
      std::vector<Vector> extreme;
      for (std::size_t k = 0; k < unique.size(); ++k) {
        if (keep[k]) extreme.push_back(unique[k]);
      }
      unique = std::move(extreme);
    }
  }
  vertices_ = std::move(unique);
  hull_ = mot::affine_hull(vertices_);
}

Polytope Polytope::from_extreme_points(std::vector<Vector> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidInput, "polytope needs at least one point");
  check_same_dim(vertices);
  Polytope p;
  p.vertices_ = std::move(vertices);
  p.hull_ = mot::affine_hull(p.vertices_);
  return p;
}

Polytope convex_hull(std::span<const Vector> points) { return Polytope(points); }

bool contains(const Polytope& p, const Vector& x) {
  if (x.size() != p.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "point/polytope dimension");
  return in_hull_of(p.vertices(), x);
}

bool in_relative_interior(const Vector& x, const Polytope& p) {
  if (x.size() != p.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "point/polytope dimension");
  const AffineSubspace& aff = p.affine_hull();
  if (!aff.contains(x)) return false;
  if (p.is_singleton()) return true;
  const std::vector<std::vector<Vector>> groups{to_local(aff, p.vertices())};
  const Vector local = aff.local_coordinates(x);
  const std::optional<double> t = max_min_coefficient(groups, &local);
  return t && *t >= kRiTol;
}

std::vector<Halfspace> facets(const Polytope& p) {
  const AffineSubspace& aff = p.affine_hull();
  const int k = aff.dim();
  std::vector<Halfspace> local;
  if (k == 0) return {};
  const std::vector<Vector> pts = to_local(aff, p.vertices());
  const double tol = kGeoTol * coordinate_scale(p.vertices());

  auto add_unique = [&](Halfspace h) {
    for (const Halfspace& e : local) {
      if (approx_equal(e.normal, h.normal, 1e-7) && std::abs(e.offset - h.offset) <= 1e-7 * (1.0 + std::abs(h.offset))) {
        return;
      }
    }
    local.push_back(std::move(h));
  };

  if (k == 1) {
    double lo = pts.front()(0), hi = lo;
    for (const Vector& v : pts) {
      lo = std::min(lo, v(0));
      hi = std::max(hi, v(0));
    }
    local.push_back({Vector::Constant(1, -1.0), -lo});
    local.push_back({Vector::Constant(1, 1.0), hi});
  } else {
    const auto ku = static_cast<std::size_t>(k);
    for_each_combination(pts.size(), ku, [&](std::span<const std::size_t> idx) {
      Eigen::MatrixXd diffs(k - 1, k);
      for (std::size_t r = 1; r < ku; ++r) diffs.row(static_cast<Eigen::Index>(r - 1)) = (pts[idx[r]] - pts[idx[0]]).transpose();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      for (Eigen::Index r = 0; r < sv.size(); ++r) {
        if (sv(r) <= tol) return;  // degenerate subset
      }
      Vector normal = svd.matrixV().col(k - 1);
      const double offset = normal.dot(pts[idx[0]]);
      double max_side = -std::numeric_limits<double>::infinity();
      double min_side = std::numeric_limits<double>::infinity();
      for (const Vector& v : pts) {
        const double s = normal.dot(v) - offset;
        max_side = std::max(max_side, s);
        min_side = std::min(min_side, s);
      }
      if (max_side <= tol) {
        add_unique({normal, offset});
      } else if (min_side >= -tol) {
        add_unique({-normal, -offset});
      }
    });
  }

  std::vector<Halfspace> ambient;
  ambient.reserve(local.size());
  for (const Halfspace& h : local) {
    Vector n = aff.basis * h.normal;
    const double off = h.offset + n.dot(aff.base_point);
    ambient.push_back({std::move(n), off});
  }
  return ambient;
}

Polytope minimal_face(const Vector& x, const Polytope& p) {
  if (!contains(p, x)) throw Error(ErrorCode::PointOutsidePolytope, "point is not in the polytope");
  if (p.is_singleton()) return p;
  const Vector pts[] = {x};
  const double tol = kGeoTol * std::max(coordinate_scale(p.vertices()), coordinate_scale(pts));
  std::vector<Halfspace> tight;
  for (Halfspace& h : facets(p)) {
    if (std::abs(h.slack(x)) <= tol) tight.push_back(std::move(h));
  }
  if (tight.empty()) return p;
  std::vector<Vector> face;
  for (const Vector& v : p.vertices()) {
    const bool on_all = std::all_of(tight.begin(), tight.end(),
                                    [&](const Halfspace& h) { return std::abs(h.slack(v)) <= tol; });
    if (on_all) face.push_back(v);
  }
  return Polytope::from_extreme_points(std::move(face));
}

bool relative_interiors_intersect(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "polytope dimensions");
  const std::vector<std::vector<Vector>> groups{p.vertices(), q.vertices()};
  const std::optional<double> t = max_min_coefficient(groups, nullptr);
  return t && *t >= kRiTol;
}

std::optional<Polytope> polytope_from_halfspaces(std::span<const Halfspace> halfspaces, int dim) {
  std::vector<Halfspace> hs;
  for (const Halfspace& h : halfspaces) {
    if (h.normal.size() != dim) throw Error(ErrorCode::DimensionMismatch, "halfspace dimension");
    const double norm = h.normal.norm();
    if (norm <= kGeoTol) {
      if (h.offset < -kGeoTol) return std::nullopt;  // 0 <= negative
      continue;
    }
    hs.push_back({h.normal / norm, h.offset / norm});
  }
  double scale = 1.0;
  for (const Halfspace& h : hs) scale = std::max(scale, std::abs(h.offset));
  const double tol = kGeoTol * scale;

  std::vector<Vector> candidates;
  const auto du = static_cast<std::size_t>(dim);
  for_each_combination(hs.size(), du, [&](std::span<const std::size_t> idx) {
    Eigen::MatrixXd a(dim, dim);
    Vector b(dim);
    for (std::size_t r = 0; r < du; ++r) {
      a.row(static_cast<Eigen::Index>(r)) = hs[idx[r]].normal.transpose();
      b(static_cast<Eigen::Index>(r)) = hs[idx[r]].offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() < dim) return;
    Vector v = lu.solve(b);
    for (const Halfspace& h : hs) {
      if (h.slack(v) < -tol) return;
    }
    for (const Vector& c : candidates) {
      if (approx_equal(c, v, tol)) return;
    }
    candidates.push_back(std::move(v));
  });
  if (candidates.empty()) return std::nullopt;
  return Polytope(candidates);
}

Polytope box(const Vector& lower, const Vector& upper) {
  if (lower.size() != upper.size()) throw Error(ErrorCode::DimensionMismatch, "box bounds");
  const auto d = static_cast<std::size_t>(lower.size());
  if (d == 0 || d > 20) throw Error(ErrorCode::InvalidInput, "box dimension must be in 1..20");
  std::vector<Vector> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Vector c(lower.size());
    for (std::size_t i = 0; i < d; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      c(ii) = (mask >> i) & 1u ? upper(ii) : lower(ii);
    }
    corners.push_back(std::move(c));
  }
  return Polytope(corners);
}

bool same_vertex_set(const Polytope& p, const Polytope& q, double tol) {
  if (p.vertices().size() != q.vertices().size() || p.ambient_dim() != q.ambient_dim()) return false;
  return std::all_of(p.vertices().begin(), p.vertices().end(), [&](const Vector& v) {
    return std::any_of(q.vertices().begin(), q.vertices().end(),
                       [&](const Vector& w) { return approx_equal(v, w, tol); });
  });
}

}  // namespace mot
