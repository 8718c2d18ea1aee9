#pragma once

#include <vector>

namespace gamelab {

/// Dense two-phase primal simplex for the small LPs used by the statics module
/// (maximin value programs and mixed-dominance feasibility checks).
///
///   maximize c.z   subject to  A z (<= | ==) b,  z >= 0
///
/// Bland's rule throughout, so the pivot sequence (and hence the returned
/// vertex of a degenerate optimal face) is deterministic.
class LinearProgram {
 public:
  enum class Status { Optimal, Infeasible, Unbounded };

  struct Result {
    Status status = Status::Infeasible;
    std::vector<double> z;
    double value = 0.0;
  };

  explicit LinearProgram(int num_vars) : num_vars_(num_vars) {}

  void add_le(std::vector<double> coeffs, double rhs);
  void add_eq(std::vector<double> coeffs, double rhs);
  void set_objective(std::vector<double> coeffs);

  Result solve() const;

 private:
  struct Row {
    std::vector<double> a;
    double b;
    bool equality;
  };

  int num_vars_;
  std::vector<Row> rows_;
  std::vector<double> objective_;
};

}  // namespace gamelab
