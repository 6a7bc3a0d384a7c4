#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "gapbp/column.hpp"

namespace gapbp {

/// Raised when the restricted master solve loses numerical footing
/// (singular basis, unbounded direction, or iteration runaway).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Optimal restricted-master solution over a column set.
struct LpSolution {
  Basis basis;
  std::vector<double> basic_values;  // aligned with basis.columns()
  Eigen::VectorXd task_duals;        // one per coupling row
  Eigen::VectorXd convexity_duals;   // one per agent
  double objective = 0.0;            // includes artificial penalty terms
};

/// All-artificial starting basis (one unit column per constraint row).
Basis big_m_basis(int n_agents, int n_tasks, double big_m);

/// Maximizes over the master restricted to `columns` (the full artificial
/// set is always added as candidates, so the problem is never infeasible).
///
/// The solve is canonical: the optimum is made unique by a lexicographic
/// perturbation of the right-hand side (ordered by constraint row) and of
/// the costs (ordered by column identity), so the returned basis depends
/// only on the column *set* — not on input order, duplicates, or the
/// optional warm-start basis, which affects the pivot path alone. Agents
/// rely on this to agree on bit-identical bases.
LpSolution solve_rmp(const std::vector<Column>& columns, int n_agents,
                     int n_tasks, double big_m, const Basis* warm_start = nullptr);

/// One column-admission step: re-solves over basis + candidate when the
/// candidate's reduced cost clears the admission tolerance; otherwise the
/// basis is returned unchanged. Never lowers the objective.
Basis pivot(const Basis& basis, const Column& candidate, double reduced_cost,
            int n_agents, int n_tasks, double big_m);

/// Per-agent fractional solution recovered from a basis: z(i, m) is the
/// weighted sum over agent i's basic columns of their task-m bits.
struct Extraction {
  Eigen::MatrixXd z;                 // n_agents x n_tasks
  double cost = 0.0;                 // objective without artificial terms
  double integral_cost = 0.0;        // exact cost sum of columns with weight
                                     // near 1; meaningful when z is integral
  bool contains_artificial = false;  // an artificial carries real weight
};

Extraction extract_solution(const Basis& basis, int n_agents, int n_tasks);

/// Optimality certificates for a finished solve, measured against every
/// supplied column: max primal residual of the basic system and max reduced
/// cost over the candidates.
struct RmpCertificate {
  double primal_residual = 0.0;
  double max_reduced_cost = 0.0;
};

RmpCertificate certify_rmp(const LpSolution& solution,
                           const std::vector<Column>& columns, int n_agents,
                           int n_tasks, double big_m);

}  // namespace gapbp
