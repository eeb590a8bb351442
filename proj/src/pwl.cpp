#include "mot/pwl.hpp"

#include <algorithm>
#include <cmath>

#include "mot/errors.hpp"

namespace mot {

namespace {

bool lex_less(const AffineFunction& a, const AffineFunction& b) {
  for (Eigen::Index i = 0; i < a.gradient.size(); ++i) {
    if (a.gradient(i) != b.gradient(i)) return a.gradient(i) < b.gradient(i);
  }
  return a.offset < b.offset;
}

void require_dim(const PwlConvex& phi, const Vector& x) {
  if (x.size() != phi.dim()) throw Error(ErrorCode::DimensionMismatch, "point/function dimension");
}

void require_in_box(const Vector& x, const Polytope& bounding_box) {
  if (x.size() != bounding_box.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "point/box dimension");
  if (!contains(bounding_box, x)) throw Error(ErrorCode::PointOutsideBox, "point is outside the bounding box");
}

Polytope face_in_region(std::vector<Halfspace> region, const Vector& x, const Polytope& bounding_box) {
  const std::vector<Halfspace> box_hs = halfspace_representation(bounding_box);
  region.insert(region.end(), box_hs.begin(), box_hs.end());
  const std::optional<Polytope> p = polytope_from_halfspaces(region, static_cast<int>(x.size()));
  if (!p) throw Error(ErrorCode::PointOutsidePolytope, "flat region misses the point");
  return minimal_face(x, *p);
}

}  // namespace

PwlConvex::PwlConvex(std::vector<AffineFunction> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::InvalidInput, "piecewise-linear function needs a piece");
  const auto d = pieces_.front().gradient.size();
  if (d == 0) throw Error(ErrorCode::InvalidInput, "gradients must be nonempty");
  for (const AffineFunction& p : pieces_) {
    if (p.gradient.size() != d) throw Error(ErrorCode::DimensionMismatch, "pieces have different dimensions");
    if (!p.gradient.allFinite() || !std::isfinite(p.offset)) {
      throw Error(ErrorCode::InvalidInput, "non-finite piece");
    }
  }
}

double PwlConvex::operator()(const Vector& y) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const AffineFunction& p : pieces_) best = std::max(best, p(y));
  return best;
}

double PwlConvex::lipschitz() const {
  double l = 0.0;
  for (const AffineFunction& p : pieces_) l = std::max(l, p.gradient.norm());
  return l;
}

std::vector<std::size_t> active_pieces(const PwlConvex& phi, const Vector& x) {
  require_dim(phi, x);
  const double value = phi(x);
  const double tol = kGeoTol * std::max({1.0, std::abs(value), phi.lipschitz() * x.cwiseAbs().maxCoeff()});
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < phi.pieces().size(); ++k) {
    if (phi.pieces()[k](x) >= value - tol) out.push_back(k);
  }
  return out;
}

AffineFunction supporting_affine(const PwlConvex& phi, const Vector& x, TieBreak order) {
  const std::vector<std::size_t> active = active_pieces(phi, x);
  std::size_t best = active.front();
  for (std::size_t k : active) {
    const AffineFunction& cand = phi.pieces()[k];
    const AffineFunction& cur = phi.pieces()[best];
    if (order == TieBreak::LexMin ? lex_less(cand, cur) : lex_less(cur, cand)) best = k;
  }
  return phi.pieces()[best];
}

double delta(const PwlConvex& phi, const Vector& x, const Vector& y) {
  require_dim(phi, y);
  const AffineFunction b = supporting_affine(phi, x);
  return phi(y) - b(y);
}

std::vector<Halfspace> flat_region(const PwlConvex& phi, const Vector& x, TieBreak order) {
  const AffineFunction b = supporting_affine(phi, x, order);
  std::vector<Halfspace> out;
  for (const AffineFunction& p : phi.pieces()) {
    Vector normal = p.gradient - b.gradient;
    const double offset = b.offset - p.offset;
    if (normal.cwiseAbs().maxCoeff() == 0.0) continue;  // parallel piece: b >= p everywhere
    out.push_back({std::move(normal), offset});
  }
  return out;
}

std::vector<Halfspace> halfspace_representation(const Polytope& p) {
  std::vector<Halfspace> out = facets(p);
  const AffineSubspace& aff = p.affine_hull();
  if (aff.dim() < aff.ambient_dim()) {
    // Orthogonal complement of the hull directions gives the equalities.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(aff.basis.transpose(), Eigen::ComputeFullV);
    const Eigen::MatrixXd& v = svd.matrixV();
    for (Eigen::Index c = aff.dim(); c < v.cols(); ++c) {
      Vector n = v.col(c);
      const double off = n.dot(aff.base_point);
      out.push_back({n, off});
      out.push_back({-n, -off});
    }
  }
  return out;
}

Polytope affine_component(const PwlConvex& phi, const Vector& x, const Polytope& bounding_box, TieBreak order) {
  require_dim(phi, x);
  require_in_box(x, bounding_box);
  return face_in_region(flat_region(phi, x, order), x, bounding_box);
}

Polytope asymptotic_component(std::span<const PwlConvex> phis, const Vector& x, const Polytope& bounding_box,
                              double tol) {
  if (phis.empty()) throw Error(ErrorCode::EmptyList, "asymptotic component of an empty sequence");
  for (const PwlConvex& phi : phis) require_dim(phi, x);
  require_in_box(x, bounding_box);
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be nonnegative");

  const std::size_t window = (phis.size() + 1) / 2;
  std::vector<Halfspace> region;
  for (std::size_t n = phis.size() - window; n < phis.size(); ++n) {
    const PwlConvex& phi = phis[n];
    for (std::size_t a : active_pieces(phi, x)) {
      const AffineFunction& b = phi.pieces()[a];
      for (const AffineFunction& p : phi.pieces()) {
        Vector normal = p.gradient - b.gradient;
        if (normal.cwiseAbs().maxCoeff() == 0.0) continue;
        region.push_back({std::move(normal), b.offset - p.offset + tol});
      }
    }
  }
  return face_in_region(std::move(region), x, bounding_box);
}

BarycenterFaceReport check_barycenter_face(const DiscreteMeasure& alpha, const Polytope& domain) {
  if (alpha.ambient_dim() != domain.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "measure/polytope dimension");
  for (const Atom& a : alpha.atoms()) {
    if (!contains(domain, a.point)) throw Error(ErrorCode::AtomOutsideD, "atom lies outside the convex set");
  }
  Vector b = barycenter(alpha);
  Polytope face = minimal_face(b, domain);
  double outside = 0.0;
  for (const Atom& a : alpha.atoms()) {
    if (!contains(face, a.point)) outside += a.weight;
  }
  return {std::move(b), std::move(face), outside};
}

}  // namespace mot
