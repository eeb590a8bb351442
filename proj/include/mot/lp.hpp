#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace mot::lp {

/// Primal feasibility tolerance reported on optimal solutions.
inline constexpr double kTolerance = 1e-9;

enum class Relation { LessEqual, Equal, GreaterEqual };

enum class Status { Optimal, Infeasible, Unbounded };

struct Bound {
  double lower = 0.0;  // may be -infinity
  std::optional<double> upper;
};

/// maximize objective . x  subject to  rows[r] . x  (relations[r])  rhs[r],
/// bounds[j].lower <= x_j <= bounds[j].upper.
/// An empty bounds vector means x >= 0 for every variable.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Relation> relations;
  std::vector<double> rhs;
  std::vector<Bound> bounds;

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_constraints() const { return rows.size(); }

  void add_constraint(std::vector<double> row, Relation rel, double b);
};

struct LpResult {
  Status status = Status::Infeasible;
  std::optional<std::vector<double>> solution;
  std::optional<double> objective_value;
};

/// Dense two-phase primal simplex. Entering columns are priced by largest
/// reduced cost; after a run of degenerate pivots the solver switches to
/// Bland's rule until the objective improves, which rules out cycling.
/// Output is deterministic for identical input.
/// Throws Error(InvalidInput) on non-finite data or inconsistent shapes.
LpResult solve(const LinearProgram& lp);

/// Constraints with phase 1 already solved, so several objectives over the
/// same feasible region share one feasibility pass.
class PreparedProgram {
 public:
  explicit PreparedProgram(const LinearProgram& lp);
  ~PreparedProgram();
  PreparedProgram(PreparedProgram&&) noexcept;
  PreparedProgram& operator=(PreparedProgram&&) noexcept;

  bool feasible() const;
  /// Phase 2 from the stored feasible basis. The objective of the original
  /// program is ignored.
  LpResult maximize(std::span<const double> objective) const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Phase 1 only: true iff the minimal total infeasibility is <= kTolerance.
bool feasible(const LinearProgram& lp);

}  // namespace mot::lp
