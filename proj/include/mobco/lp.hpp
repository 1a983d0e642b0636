#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mobco::lp {

enum class Sense { Le, Eq, Ge };

struct Term {
  std::size_t column;
  double coefficient;
};

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::Le;
  double rhs = 0.0;
  std::string name;
};

/// min c^T x  s.t.  rows, 0 <= x <= upper.
class LinearProgram {
 public:
  std::size_t add_column(double cost, std::string name = {},
                         std::optional<double> upper = std::nullopt);
  /// Throws std::invalid_argument for unknown columns or non-finite data.
  std::size_t add_row(std::vector<Term> terms, Sense sense, double rhs, std::string name = {});

  std::size_t num_columns() const { return cost_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<double>& cost() const { return cost_; }
  const std::vector<std::optional<double>>& upper() const { return upper_; }
  const std::vector<std::string>& column_names() const { return names_; }
  const std::vector<Row>& rows() const { return rows_; }
  void set_cost(std::size_t column, double cost);

  double objective(const std::vector<double>& x) const;
  /// Largest violation of a row or bound, each divided by max(1, |rhs|, max |a_j x_j|).
  double scaled_residual(const std::vector<double>& x) const;
  /// Largest absolute violation of a row or bound.
  double residual(const std::vector<double>& x) const;

 private:
  std::vector<double> cost_;
  std::vector<std::optional<double>> upper_;
  std::vector<std::string> names_;
  std::vector<Row> rows_;
};

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };
const char* to_string(Status status);

struct Result {
  Status status = Status::NumericalFailure;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
  std::string message;
  /// Basic structural columns at the optimum, usable as a warm start.
  std::vector<std::size_t> basis;
};

/// Pluggable LP engine.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  /// `hint` lists structural columns to try to make basic first.
  virtual Result solve(const LinearProgram& lp,
                       const std::vector<std::size_t>& hint = {}) const = 0;
};

struct SimplexOptions {
  std::size_t max_iterations = 0;  // 0: 50 * (rows + columns), at least 20000
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  double residual_tolerance = 1e-9;  // on LinearProgram::scaled_residual
  std::size_t refactor_interval = 100;
  std::size_t degenerate_limit = 50;  // consecutive degenerate pivots before Bland's rule
};

/// Dense revised simplex with an explicit basis inverse, two phases,
/// Dantzig pricing and a switch to Bland's rule on degenerate stalls.
/// Deterministic: identical input gives an identical pivot sequence.
class RevisedSimplex : public LpSolver {
 public:
  explicit RevisedSimplex(SimplexOptions options = {}) : options_(options) {}
  Result solve(const LinearProgram& lp,
               const std::vector<std::size_t>& hint = {}) const override;
  const SimplexOptions& options() const { return options_; }

 private:
  SimplexOptions options_;
};

/// Solves with a default RevisedSimplex.
Result solve_lp(const LinearProgram& lp);

/// CPLEX LP text format, readable by common external solvers.
std::string to_lp_format(const LinearProgram& lp, const std::string& title = "mobco");

}  // namespace mobco::lp
