#include "gapbp/rmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapbp/tolerances.hpp"

namespace gapbp {
namespace {

constexpr double kLexTol = 1e-9;

/// Dense revised-simplex state over a fixed, identity-sorted candidate set.
/// The candidate index doubles as the column's rank in the cost-perturbation
/// order, and constraint rows are the rank order of the right-hand-side
/// perturbation; both are global conventions, which is what makes the
/// returned optimum independent of caller-side column order.
struct Tableau {
  int rows = 0;
  std::vector<Column> cands;
  Eigen::MatrixXd A;
  Eigen::VectorXd c;
  Eigen::VectorXd b;

  std::vector<int> basis;      // slot -> candidate index
  std::vector<char> in_basis;  // per candidate
  Eigen::MatrixXd Binv;
  Eigen::VectorXd x;  // basic values per slot
  Eigen::VectorXd y;  // row duals
};

Tableau prepare(const std::vector<Column>& columns, int n_agents, int n_tasks,
                double big_m) {
  Tableau t;
  t.rows = n_tasks + n_agents;
  t.cands = columns;
  for (int row = 0; row < t.rows; ++row) {
    t.cands.push_back(make_artificial_column(row, big_m));
  }
  std::sort(t.cands.begin(), t.cands.end(), [](const Column& a, const Column& b) {
    return column_order(a, b) == std::strong_ordering::less;
  });
  t.cands.erase(std::unique(t.cands.begin(), t.cands.end(), column_equal_key),
                t.cands.end());

  const int k = static_cast<int>(t.cands.size());
  t.A.resize(t.rows, k);
  t.c.resize(k);
  for (int j = 0; j < k; ++j) {
    t.A.col(j) = constraint_column(t.cands[j], n_agents, n_tasks);
    t.c(j) = t.cands[j].cost;
  }
  t.b = Eigen::VectorXd::Ones(t.rows);
  t.basis.assign(t.rows, -1);
  t.in_basis.assign(k, 0);
  return t;
}

Eigen::MatrixXd basis_matrix(const Tableau& t) {
  Eigen::MatrixXd b_mat(t.rows, t.rows);
  for (int s = 0; s < t.rows; ++s) b_mat.col(s) = t.A.col(t.basis[s]);
  return b_mat;
}

void compute_duals(Tableau& t) {
  Eigen::VectorXd c_basic(t.rows);
  for (int s = 0; s < t.rows; ++s) c_basic(s) = t.c(t.basis[s]);
  t.y = t.Binv.transpose() * c_basic;
}

/// Factorizes the current basis from scratch; returns false when it is
/// singular. One iterative-refinement pass keeps residuals near machine
/// precision even after long pivot sequences.
bool refactorize(Tableau& t) {
  const Eigen::MatrixXd b_mat = basis_matrix(t);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b_mat);
  if (!lu.isInvertible()) return false;
  t.Binv = lu.inverse();
  t.Binv += t.Binv * (Eigen::MatrixXd::Identity(t.rows, t.rows) - b_mat * t.Binv);
  t.x = t.Binv * t.b;
  t.x += t.Binv * (t.b - b_mat * t.x);
  compute_duals(t);
  return true;
}

/// A basis is usable as a simplex start only if every row of [x | Binv] is
/// lexicographically positive — the invariant the perturbed ratio test
/// preserves. The all-artificial identity basis always qualifies.
bool rows_lex_positive(const Tableau& t) {
  for (int s = 0; s < t.rows; ++s) {
    double lead = t.x(s);
    if (std::abs(lead) <= kLexTol) {
      lead = 0.0;
      for (int p = 0; p < t.rows; ++p) {
        if (std::abs(t.Binv(s, p)) > kLexTol) {
          lead = t.Binv(s, p);
          break;
        }
      }
    }
    if (lead < 0.0) return false;
  }
  return true;
}

void set_artificial_basis(Tableau& t) {
  std::fill(t.in_basis.begin(), t.in_basis.end(), 0);
  int next = 0;
  for (int j = 0; j < static_cast<int>(t.cands.size()); ++j) {
    if (t.cands[j].artificial) {
      t.basis[next++] = j;
      t.in_basis[j] = 1;
    }
  }
  // Artificial columns are the identity in row order.
  t.Binv = Eigen::MatrixXd::Identity(t.rows, t.rows);
  t.x = t.b;
  compute_duals(t);
}

bool try_warm_start(Tableau& t, const Basis& warm) {
  if (warm.size() != t.rows) return false;
  std::vector<int> slots;
  slots.reserve(t.rows);
  for (const auto& column : warm.columns()) {
    const auto it = std::lower_bound(
        t.cands.begin(), t.cands.end(), column, [](const Column& a, const Column& b) {
          return column_order(a, b) == std::strong_ordering::less;
        });
    if (it == t.cands.end() || !column_equal_key(*it, column)) return false;
    slots.push_back(static_cast<int>(it - t.cands.begin()));
  }
  t.basis = slots;
  std::fill(t.in_basis.begin(), t.in_basis.end(), 0);
  for (const int j : slots) t.in_basis[j] = 1;
  if (!refactorize(t)) return false;
  if (t.x.minCoeff() < -kFeasTol) return false;
  return rows_lex_positive(t);
}

/// Sign of the cost-perturbed reduced cost for a candidate whose plain
/// reduced cost sits inside the tolerance band. The perturbed value is
/// rc - d^rank(j) + sum_s direction_s * d^rank(basis_s) for an infinitesimal
/// d, so the smallest participating rank decides.
bool tie_break_eligible(const Tableau& t, int j, const Eigen::VectorXd& direction) {
  int best_rank = j;
  double best_coeff = -1.0;
  for (int s = 0; s < t.rows; ++s) {
    if (std::abs(direction(s)) <= kCoeffTol) continue;
    if (t.basis[s] < best_rank) {
      best_rank = t.basis[s];
      best_coeff = direction(s);
    }
  }
  return best_coeff > 0.0;
}

/// Bland-style entering rule in identity order; ties inside the reduced-cost
/// tolerance band fall back to the cost-perturbation sign.
int choose_entering(const Tableau& t) {
  for (int j = 0; j < static_cast<int>(t.cands.size()); ++j) {
    if (t.in_basis[j]) continue;
    const double rc = t.c(j) - t.y.dot(t.A.col(j));
    if (rc > kReducedCostTol) return j;
    if (rc < -kReducedCostTol) continue;
    const Eigen::VectorXd direction = t.Binv * t.A.col(j);
    if (tie_break_eligible(t, j, direction)) return j;
  }
  return -1;
}

/// Lexicographic ratio test over the perturbed right-hand side: compares
/// (x_s, Binv row s) / direction_s componentwise. Rows of Binv are linearly
/// independent, so the minimum is unique up to numerical noise; the identity
/// rank of the basic column settles anything closer than the tolerance.
int choose_leaving(const Tableau& t, const Eigen::VectorXd& direction) {
  int best = -1;
  for (int s = 0; s < t.rows; ++s) {
    if (direction(s) <= kPivotTol) continue;
    if (best < 0) {
      best = s;
      continue;
    }
    const double inv_best = 1.0 / direction(best);
    const double inv_s = 1.0 / direction(s);
    double diff = t.x(s) * inv_s - t.x(best) * inv_best;
    if (std::abs(diff) <= kLexTol) {
      for (int p = 0; p < t.rows; ++p) {
        diff = t.Binv(s, p) * inv_s - t.Binv(best, p) * inv_best;
        if (std::abs(diff) > kLexTol) break;
        diff = 0.0;
      }
    }
    if (diff < 0.0 || (diff == 0.0 && t.basis[s] < t.basis[best])) best = s;
  }
  return best;
}

/// Rank-one tableau update after candidate j replaces the column in `slot`.
void apply_pivot(Tableau& t, int slot, int j, const Eigen::VectorXd& direction) {
  t.in_basis[t.basis[slot]] = 0;
  t.in_basis[j] = 1;
  t.basis[slot] = j;

  const double pivot_value = direction(slot);
  t.Binv.row(slot) /= pivot_value;
  for (int s = 0; s < t.rows; ++s) {
    if (s == slot) continue;
    t.Binv.row(s) -= direction(s) * t.Binv.row(slot);
  }
  t.x = t.Binv * t.b;
  compute_duals(t);
}

LpSolution finalize(Tableau& t, int n_agents, int n_tasks) {
  if (!refactorize(t)) {
    throw NumericalError("final master basis is singular");
  }
  std::vector<int> order(t.rows);
  for (int s = 0; s < t.rows; ++s) order[s] = s;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return t.basis[a] < t.basis[b]; });

  LpSolution solution;
  std::vector<Column> columns;
  columns.reserve(t.rows);
  solution.basic_values.reserve(t.rows);
  double objective = 0.0;
  for (const int s : order) {
    columns.push_back(t.cands[t.basis[s]]);
    solution.basic_values.push_back(t.x(s));
    objective += t.c(t.basis[s]) * t.x(s);
  }
  solution.basis = Basis(std::move(columns));
  solution.objective = objective;
  solution.task_duals = t.y.head(n_tasks);
  solution.convexity_duals = t.y.tail(n_agents);
  return solution;
}

}  // namespace

Basis big_m_basis(int n_agents, int n_tasks, double big_m) {
  std::vector<Column> columns;
  const int rows = n_agents + n_tasks;
  columns.reserve(rows);
  for (int row = 0; row < rows; ++row) {
    columns.push_back(make_artificial_column(row, big_m));
  }
  return Basis(std::move(columns));
}

LpSolution solve_rmp(const std::vector<Column>& columns, int n_agents,
                     int n_tasks, double big_m, const Basis* warm_start) {
  if (n_agents < 1 || n_tasks < 1) {
    throw std::invalid_argument("master problem needs positive dimensions");
  }
  Tableau t = prepare(columns, n_agents, n_tasks, big_m);

  if (warm_start == nullptr || !try_warm_start(t, *warm_start)) {
    set_artificial_basis(t);
  }

  const int max_pivots = 2000 + 50 * (static_cast<int>(t.cands.size()) + t.rows);
  for (int iteration = 0; iteration <= max_pivots; ++iteration) {
    const int entering = choose_entering(t);
    if (entering < 0) return finalize(t, n_agents, n_tasks);

    const Eigen::VectorXd direction = t.Binv * t.A.col(entering);
    const int leaving = choose_leaving(t, direction);
    if (leaving < 0) {
      throw NumericalError("unbounded master direction");
    }
    apply_pivot(t, leaving, entering, direction);
  }
  throw NumericalError("master solve exceeded the pivot budget");
}

Basis pivot(const Basis& basis, const Column& candidate, double reduced_cost,
            int n_agents, int n_tasks, double big_m) {
  if (reduced_cost <= kReducedCostTol) return basis;
  if (basis.contains_key(candidate)) return basis;
  std::vector<Column> columns = basis.columns();
  columns.push_back(candidate);
  return solve_rmp(columns, n_agents, n_tasks, big_m, &basis).basis;
}

Extraction extract_solution(const Basis& basis, int n_agents, int n_tasks) {
  const int rows = n_agents + n_tasks;
  if (basis.size() != rows) {
    throw std::invalid_argument("basis size does not match problem dimensions");
  }
  Eigen::MatrixXd b_mat(rows, rows);
  const auto& columns = basis.columns();
  for (int s = 0; s < rows; ++s) {
    b_mat.col(s) = constraint_column(columns[s], n_agents, n_tasks);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b_mat);
  if (!lu.isInvertible()) {
    throw NumericalError("basis is singular during extraction");
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(rows);
  Eigen::VectorXd values = lu.solve(ones);
  values += lu.solve(ones - b_mat * values);

  Extraction extraction;
  extraction.z = Eigen::MatrixXd::Zero(n_agents, n_tasks);
  for (int s = 0; s < rows; ++s) {
    const Column& column = columns[s];
    if (column.artificial) {
      if (values(s) > kFeasTol) extraction.contains_artificial = true;
      continue;
    }
    extraction.cost += column.cost * values(s);
    if (values(s) > 0.5) extraction.integral_cost += column.cost;
    for (int m = 0; m < n_tasks; ++m) {
      if (column.vertex[m]) extraction.z(column.owner, m) += values(s);
    }
  }
  return extraction;
}

RmpCertificate certify_rmp(const LpSolution& solution,
                           const std::vector<Column>& columns, int n_agents,
                           int n_tasks, double big_m) {
  const int rows = n_agents + n_tasks;
  Eigen::MatrixXd b_mat(rows, rows);
  Eigen::VectorXd values(rows);
  for (int s = 0; s < rows; ++s) {
    b_mat.col(s) = constraint_column(solution.basis.columns()[s], n_agents, n_tasks);
    values(s) = solution.basic_values[s];
  }
  RmpCertificate certificate;
  certificate.primal_residual =
      (b_mat * values - Eigen::VectorXd::Ones(rows)).cwiseAbs().maxCoeff();

  Eigen::VectorXd duals(rows);
  duals << solution.task_duals, solution.convexity_duals;

  std::vector<Column> all = columns;
  for (int row = 0; row < rows; ++row) all.push_back(make_artificial_column(row, big_m));
  certificate.max_reduced_cost = -std::numeric_limits<double>::infinity();
  for (const auto& column : all) {
    const double rc =
        column.cost - duals.dot(constraint_column(column, n_agents, n_tasks));
    certificate.max_reduced_cost = std::max(certificate.max_reduced_cost, rc);
  }
  return certificate;
}

}  // namespace gapbp
