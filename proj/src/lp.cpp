#include "mot/lp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <limits>
#include <stdexcept>
#include <string>

#include "mot/errors.hpp"

namespace mot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MassMismatch: return "MassMismatch";
    case ErrorCode::NotInConvexOrder: return "NotInConvexOrder";
    case ErrorCode::PointOutsidePolytope: return "PointOutsidePolytope";
    case ErrorCode::PointOutsideBox: return "PointOutsideBox";
    case ErrorCode::AtomOutsideD: return "AtomOutsideD";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace mot

namespace mot::lp {

void LinearProgram::add_constraint(std::vector<double> row, Relation rel, double b) {
  rows.push_back(std::move(row));
  relations.push_back(rel);
  rhs.push_back(b);
}

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-10;
constexpr std::size_t kDegenerateStreak = 50;

// How an original variable maps onto nonnegative standard-form columns.
struct VarMap {
  enum class Kind { Shift, Reflect, Split } kind = Kind::Shift;
  std::size_t column = 0;  // first standard column
  double anchor = 0.0;     // lower bound (Shift) or upper bound (Reflect)
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double rhs(std::size_t r) const { return at(r, n_); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  // Objective row m_ holds reduced costs c_j - c_B B^-1 A_j and -z in the rhs slot.
  void set_objective(const std::vector<double>& cost) {
    for (std::size_t c = 0; c <= n_; ++c) at(m_, c) = c < n_ ? cost[c] : 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) at(m_, c) -= cb * at(r, c);
    }
  }

  double objective_value() const { return -at(m_, n_); }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t width = n_ + 1;
    double* prow = &data_[pr * width];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < width; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      double* row = &data_[r * width];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) {
        if (prow[c] != 0.0) row[c] -= f * prow[c];
      }
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  enum class Outcome { Optimal, Unbounded };

  // Maximizes the current objective row; columns with allowed[c] == false never enter.
  // Pricing is Dantzig (largest reduced cost) until kDegenerateStreak
  // consecutive degenerate pivots; from then on Bland's rule (lowest index)
  // until the objective strictly improves. Bland excludes cycling within a
  // degenerate run, so the run always ends and the method terminates.
  Outcome run(const std::vector<char>& allowed) {
    const std::size_t limit = 200 * (m_ + n_) + 10000;
    std::size_t degenerate_run = 0;
    for (std::size_t iter = 0; iter < limit; ++iter) {
      const bool bland = degenerate_run >= kDegenerateStreak;
      std::size_t entering = n_;
      double best_cost = kCostTol;
      for (std::size_t c = 0; c < n_; ++c) {
        if (!allowed[c] || at(m_, c) <= best_cost) continue;
        entering = c;
        if (bland) break;
        best_cost = at(m_, c);
      }
      if (entering == n_) return Outcome::Optimal;

      // Ratio test; ties broken by the lowest basic variable index.
      std::size_t leaving = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = at(r, entering);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(rhs(r), 0.0) / a;
        if (leaving == m_ || ratio < best - 1e-12) {
          best = ratio;
          leaving = r;
        } else if (ratio <= best + 1e-12 && basis_[r] < basis_[leaving]) {
          leaving = r;
        }
      }
      if (leaving == m_) return Outcome::Unbounded;
      const double before = at(m_, n_);
      pivot(leaving, entering);
      degenerate_run = at(m_, n_) < before - 1e-13 ? 0 : degenerate_run + 1;
    }
    throw std::runtime_error("simplex iteration limit exceeded");
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (lp.rows.size() != lp.relations.size() || lp.rows.size() != lp.rhs.size()) {
    throw Error(ErrorCode::InvalidInput, "constraint rows, relations and rhs differ in length");
  }
  if (!lp.bounds.empty() && lp.bounds.size() != n) {
    throw Error(ErrorCode::InvalidInput, "bounds length differs from variable count");
  }
  for (double v : lp.objective) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "non-finite objective coefficient");
  }
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    if (lp.rows[r].size() != n) {
      throw Error(ErrorCode::InvalidInput, "constraint row " + std::to_string(r) + " has wrong length");
    }
    for (double v : lp.rows[r]) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "non-finite constraint coefficient");
    }
    if (!std::isfinite(lp.rhs[r])) throw Error(ErrorCode::InvalidInput, "non-finite rhs");
  }
  for (const Bound& b : lp.bounds) {
    if (std::isnan(b.lower) || b.lower == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::InvalidInput, "invalid lower bound");
    }
    if (b.upper && std::isnan(*b.upper)) throw Error(ErrorCode::InvalidInput, "invalid upper bound");
  }
}

// Standard form: rows of A x' (rel) b with x' >= 0 and b >= 0, built from the user LP.
struct StandardForm {
  std::vector<VarMap> maps;
  std::size_t structural = 0;
  std::vector<std::vector<double>> rows;
  std::vector<Relation> relations;
  std::vector<double> rhs;
};

// Rewrites coefficients over original variables as coefficients over
// standard-form columns plus the constant contributed by the bound shifts.
void expand_coefficients(const StandardForm& sf, std::span<const double> coeffs, std::vector<double>& out,
                         double& constant) {
  out.assign(sf.structural, 0.0);
  constant = 0.0;
  for (std::size_t j = 0; j < sf.maps.size(); ++j) {
    const double a = coeffs[j];
    if (a == 0.0) continue;
    const VarMap& vm = sf.maps[j];
    switch (vm.kind) {
      case VarMap::Kind::Shift:
        out[vm.column] += a;
        constant += a * vm.anchor;
        break;
      case VarMap::Kind::Reflect:
        out[vm.column] -= a;
        constant += a * vm.anchor;
        break;
      case VarMap::Kind::Split:
        out[vm.column] += a;
        out[vm.column + 1] -= a;
        break;
    }
  }
}

StandardForm standardize(const LinearProgram& lp) {
  StandardForm sf;
  const std::size_t n = lp.objective.size();
  sf.maps.resize(n);
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, bound) for x' <= bound
  for (std::size_t j = 0; j < n; ++j) {
    const Bound b = lp.bounds.empty() ? Bound{} : lp.bounds[j];
    const bool has_upper = b.upper && std::isfinite(*b.upper);
    VarMap& vm = sf.maps[j];
    vm.column = sf.structural;
    if (std::isfinite(b.lower)) {
      vm.kind = VarMap::Kind::Shift;
      vm.anchor = b.lower;
      if (has_upper) upper_rows.emplace_back(sf.structural, *b.upper - b.lower);
      sf.structural += 1;
    } else if (has_upper) {
      vm.kind = VarMap::Kind::Reflect;
      vm.anchor = *b.upper;
      sf.structural += 1;
    } else {
      vm.kind = VarMap::Kind::Split;
      sf.structural += 2;
    }
  }

  auto expand = [&](const std::vector<double>& coeffs, std::vector<double>& out, double& constant) {
    expand_coefficients(sf, coeffs, out, constant);
  };

  auto push_row = [&](std::vector<double> row, Relation rel, double b) {
    if (b < 0.0) {
      for (double& v : row) v = -v;
      b = -b;
      if (rel == Relation::LessEqual) {
        rel = Relation::GreaterEqual;
      } else if (rel == Relation::GreaterEqual) {
        rel = Relation::LessEqual;
      }
    }
    sf.rows.push_back(std::move(row));
    sf.relations.push_back(rel);
    sf.rhs.push_back(b);
  };

  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    std::vector<double> row;
    double constant = 0.0;
    expand(lp.rows[r], row, constant);
    push_row(std::move(row), lp.relations[r], lp.rhs[r] - constant);
  }
  for (const auto& [col, bound] : upper_rows) {
    std::vector<double> row(sf.structural, 0.0);
    row[col] = 1.0;
    push_row(std::move(row), Relation::LessEqual, bound);
  }
  return sf;
}

struct Prepared {
  StandardForm sf;
  Tableau tableau;
  std::size_t first_artificial = 0;
  bool phase1_feasible = false;
};

Prepared prepare_and_run_phase1(const LinearProgram& lp) {
  validate(lp);
  StandardForm sf = standardize(lp);
  const std::size_t m = sf.rows.size();
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (Relation rel : sf.relations) {
    if (rel != Relation::Equal) ++slacks;
    if (rel != Relation::LessEqual) ++artificials;
  }
  const std::size_t first_slack = sf.structural;
  const std::size_t first_art = first_slack + slacks;
  const std::size_t ncols = first_art + artificials;

  Tableau t(m, ncols);
  std::size_t next_slack = first_slack;
  std::size_t next_art = first_art;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < sf.structural; ++c) t.at(r, c) = sf.rows[r][c];
    t.rhs(r) = sf.rhs[r];
    switch (sf.relations[r]) {
      case Relation::LessEqual:
        t.at(r, next_slack) = 1.0;
        t.basis()[r] = next_slack++;
        break;
      case Relation::GreaterEqual:
        t.at(r, next_slack++) = -1.0;
        t.at(r, next_art) = 1.0;
        t.basis()[r] = next_art++;
        break;
      case Relation::Equal:
        t.at(r, next_art) = 1.0;
        t.basis()[r] = next_art++;
        break;
    }
  }

  Prepared p{std::move(sf), std::move(t), first_art, true};
  if (artificials == 0) return p;

  std::vector<double> phase1_cost(ncols, 0.0);
  for (std::size_t c = first_art; c < ncols; ++c) phase1_cost[c] = -1.0;
  p.tableau.set_objective(phase1_cost);
  std::vector<char> allowed(ncols, 1);
  p.tableau.run(allowed);
  p.phase1_feasible = -p.tableau.objective_value() <= kTolerance;
  return p;
}

// Pivots zero-level artificials out of the basis where a structural/slack column allows it.
void drive_out_artificials(Tableau& t, std::size_t first_art) {
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] < first_art) continue;
    std::size_t best = first_art;
    double best_abs = 1e-9;
    for (std::size_t c = 0; c < first_art; ++c) {
      const double a = std::abs(t.at(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = c;
      }
    }
    if (best < first_art) t.pivot(r, best);
    // Otherwise the row is redundant; its artificial stays basic at zero.
  }
}

std::vector<double> recover(const Prepared& p) {
  const Tableau& t = p.tableau;
  std::vector<double> standard(t.cols(), 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) standard[t.basis()[r]] = std::max(t.rhs(r), 0.0);
  std::vector<double> x(p.sf.maps.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const VarMap& vm = p.sf.maps[j];
    switch (vm.kind) {
      case VarMap::Kind::Shift: x[j] = vm.anchor + standard[vm.column]; break;
      case VarMap::Kind::Reflect: x[j] = vm.anchor - standard[vm.column]; break;
      case VarMap::Kind::Split: x[j] = standard[vm.column] - standard[vm.column + 1]; break;
    }
  }
  return x;
}

}  // namespace

struct PreparedProgram::State {
  Prepared prepared;
};

PreparedProgram::PreparedProgram(const LinearProgram& lp)
    : state_(std::make_unique<State>(State{prepare_and_run_phase1(lp)})) {
  if (state_->prepared.phase1_feasible) {
    drive_out_artificials(state_->prepared.tableau, state_->prepared.first_artificial);
  }
}

PreparedProgram::~PreparedProgram() = default;
PreparedProgram::PreparedProgram(PreparedProgram&&) noexcept = default;
PreparedProgram& PreparedProgram::operator=(PreparedProgram&&) noexcept = default;

bool PreparedProgram::feasible() const { return state_->prepared.phase1_feasible; }

LpResult PreparedProgram::maximize(std::span<const double> objective) const {
  const Prepared& p = state_->prepared;
  if (objective.size() != p.sf.maps.size()) {
    throw Error(ErrorCode::InvalidInput, "objective length differs from variable count");
  }
  for (double v : objective) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "non-finite objective coefficient");
  }
  LpResult result;
  if (!p.phase1_feasible) {
    result.status = Status::Infeasible;
    return result;
  }
  Prepared work = p;
  Tableau& t = work.tableau;
  std::vector<double> structural_cost;
  double constant = 0.0;
  expand_coefficients(work.sf, objective, structural_cost, constant);
  std::vector<double> cost(t.cols(), 0.0);
  std::copy(structural_cost.begin(), structural_cost.end(), cost.begin());
  t.set_objective(cost);
  std::vector<char> allowed(t.cols(), 1);
  for (std::size_t c = work.first_artificial; c < t.cols(); ++c) allowed[c] = 0;
  if (t.run(allowed) == Tableau::Outcome::Unbounded) {
    result.status = Status::Unbounded;
    return result;
  }

  std::vector<double> x = recover(work);
  double value = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) value += objective[j] * x[j];
  result.status = Status::Optimal;
  result.solution = std::move(x);
  result.objective_value = value;
  return result;
}

LpResult solve(const LinearProgram& lp) { return PreparedProgram(lp).maximize(lp.objective); }

bool feasible(const LinearProgram& lp) { return prepare_and_run_phase1(lp).phase1_feasible; }

}  // namespace mot::lp
