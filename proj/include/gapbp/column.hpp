#pragma once

#include <Eigen/Dense>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gapbp/instance.hpp"

namespace gapbp {

/// One master-problem column. A real column represents a vertex of an
/// agent's capacity polytope: its constraint entries are the 0/1 task-bundle
/// vector stacked with that agent's convexity-row unit entry, and its cost is
/// the agent's profit over the bundle. An artificial column is a unit vector
/// on a single constraint row with a large negative cost; it keeps the master
/// problem feasible before real columns arrive.
struct Column {
  int owner = 0;              // agent index; for artificials the constraint row
  bool artificial = false;
  std::vector<std::uint8_t> vertex;  // one bit per task; empty for artificials
  double cost = 0.0;
};

/// Identity ordering used everywhere ties must break the same way on every
/// agent: real columns before artificial ones, then by owner, then by the
/// bundle bits. Cost is deliberately not part of the identity: a given owner
/// prices a given bundle to exactly one cost.
std::strong_ordering column_order(const Column& a, const Column& b);
bool column_equal_key(const Column& a, const Column& b);

Column make_agent_column(int owner, std::vector<std::uint8_t> vertex, double cost);
Column make_artificial_column(int row, double big_m);

/// Full constraint-matrix column of length n_tasks + n_agents.
Eigen::VectorXd constraint_column(const Column& column, int n_agents, int n_tasks);

/// Canonical one-line form "owner|cost|bits|flag"; doubles use full
/// round-trip precision so equal serializations mean equal columns.
std::string serialize_column(const Column& column);

/// Penalty cost magnitude for artificial columns: strictly larger than any
/// achievable objective swing on the instance.
double big_m_cost(const GapInstance& instance);

/// A set of n_tasks + n_agents linearly independent columns, kept sorted by
/// column_order. Two bases are equal exactly when their canonical
/// serializations match.
class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<Column> columns);

  const std::vector<Column>& columns() const { return columns_; }
  int size() const { return static_cast<int>(columns_.size()); }
  bool contains_key(const Column& column) const;

  /// Sorted columns serialized one per line.
  std::string canonical() const;
  std::size_t canonical_hash() const;

  bool operator==(const Basis& other) const;

 private:
  std::vector<Column> columns_;
};

}  // namespace gapbp
