#include "gapbp/column.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "gapbp/instance_io.hpp"

namespace gapbp {

std::strong_ordering column_order(const Column& a, const Column& b) {
  if (a.artificial != b.artificial) {
    return a.artificial ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (a.owner != b.owner) return a.owner <=> b.owner;
  return std::lexicographical_compare_three_way(
      a.vertex.begin(), a.vertex.end(), b.vertex.begin(), b.vertex.end());
}

bool column_equal_key(const Column& a, const Column& b) {
  return column_order(a, b) == std::strong_ordering::equal;
}

Column make_agent_column(int owner, std::vector<std::uint8_t> vertex, double cost) {
  Column column;
  column.owner = owner;
  column.vertex = std::move(vertex);
  column.cost = cost;
  return column;
}

Column make_artificial_column(int row, double big_m) {
  Column column;
  column.owner = row;
  column.artificial = true;
  column.cost = -big_m;
  return column;
}

Eigen::VectorXd constraint_column(const Column& column, int n_agents, int n_tasks) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_tasks + n_agents);
  if (column.artificial) {
    if (column.owner < 0 || column.owner >= n_tasks + n_agents) {
      throw std::invalid_argument("artificial column row out of range");
    }
    out(column.owner) = 1.0;
    return out;
  }
  if (column.owner < 0 || column.owner >= n_agents ||
      static_cast<int>(column.vertex.size()) != n_tasks) {
    throw std::invalid_argument("column does not match problem dimensions");
  }
  for (int m = 0; m < n_tasks; ++m) out(m) = column.vertex[m] ? 1.0 : 0.0;
  out(n_tasks + column.owner) = 1.0;
  return out;
}

std::string serialize_column(const Column& column) {
  std::string out = std::to_string(column.owner);
  out += '|';
  out += format_number(column.cost);
  out += '|';
  for (const auto bit : column.vertex) out += bit ? '1' : '0';
  out += '|';
  out += column.artificial ? '1' : '0';
  return out;
}

double big_m_cost(const GapInstance& instance) {
  return 1.0 + instance.profits.cwiseAbs().sum();
}

Basis::Basis(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::sort(columns_.begin(), columns_.end(), [](const Column& a, const Column& b) {
    return column_order(a, b) == std::strong_ordering::less;
  });
}

bool Basis::contains_key(const Column& column) const {
  return std::any_of(columns_.begin(), columns_.end(), [&](const Column& c) {
    return column_equal_key(c, column);
  });
}

std::string Basis::canonical() const {
  std::string out;
  for (const auto& column : columns_) {
    out += serialize_column(column);
    out += '\n';
  }
  return out;
}

std::size_t Basis::canonical_hash() const {
  return std::hash<std::string>{}(canonical());
}

bool Basis::operator==(const Basis& other) const {
  return canonical() == other.canonical();
}

}  // namespace gapbp
