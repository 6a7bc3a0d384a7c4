#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gapbp {

/// Branching decisions pinned on one agent: task -> forced value. Tasks not
/// present are free.
class FixingSet {
 public:
  void fix(int task, bool value);
  std::optional<bool> lookup(int task) const;
  bool empty() const { return fixed_.empty(); }
  std::size_t size() const { return fixed_.size(); }
  const std::map<int, bool>& entries() const { return fixed_; }
  std::string describe() const;

  bool operator==(const FixingSet& other) const { return fixed_ == other.fixed_; }

 private:
  std::map<int, bool> fixed_;
};

/// Best task bundle found by the pricing solve, with its objective value
/// sum_m value(m) * vertex(m) over the free and fixed-on tasks.
struct PricedVertex {
  std::vector<std::uint8_t> vertex;
  double value = 0.0;
};

/// Maximizes `values . z` over 0/1 bundles that respect integer task
/// weights, the capacity, and the fixing set. Exact dynamic program over
/// capacity states (weights must be integer-valued; the capacity may be
/// fractional and is floored, which is lossless for integer loads).
///
/// Returns nullopt when the fixed-on tasks alone exceed the capacity — that
/// signals an infeasible branching node, not an error. Ties between optimal
/// bundles resolve to the lexicographically smallest bit string, so every
/// caller reconstructs the identical vertex.
std::optional<PricedVertex> solve_pricing(const Eigen::VectorXd& values,
                                          const Eigen::VectorXd& weights,
                                          double capacity,
                                          const FixingSet& fixings);

}  // namespace gapbp
