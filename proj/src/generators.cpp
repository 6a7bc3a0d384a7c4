#include "gapbp/generators.hpp"

#include <cctype>
#include <stdexcept>

#include "gapbp/rng.hpp"

namespace gapbp {
namespace {

void draw_matrix(Rng& rng, Eigen::MatrixXd& out, int lo, int hi) {
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index m = 0; m < out.cols(); ++m) {
      out(i, m) = static_cast<double>(rng.uniform_int(lo, hi));
    }
  }
}

/// Shared capacity for model A: each task is claimed by its cheapest agent
/// (lowest index on ties); the capacity combines the task/agent ratio with
/// the heaviest such claimed bundle.
double model_a_capacity(const Eigen::MatrixXd& profits,
                        const Eigen::MatrixXd& weights) {
  const int n = static_cast<int>(profits.rows());
  const int m = static_cast<int>(profits.cols());
  Eigen::VectorXd claimed = Eigen::VectorXd::Zero(n);
  for (int task = 0; task < m; ++task) {
    int best = 0;
    for (int agent = 1; agent < n; ++agent) {
      if (profits(agent, task) < profits(best, task)) best = agent;
    }
    claimed(best) += weights(best, task);
  }
  return 9.0 * (static_cast<double>(m) / n) + 0.4 * claimed.maxCoeff();
}

/// Capacity for models C and D: 80% of each agent's weight-row total spread
/// over the fleet, the classic "tight" benchmark where aggregate capacity
/// falls short of aggregate demand and assignments compete for room.
Eigen::VectorXd row_share_capacity(const Eigen::MatrixXd& weights) {
  return 0.8 * weights.rowwise().sum() / static_cast<double>(weights.rows());
}

}  // namespace

char model_letter(Model model) {
  switch (model) {
    case Model::A: return 'A';
    case Model::B: return 'B';
    case Model::C: return 'C';
    case Model::D: return 'D';
  }
  return '?';
}

Model parse_model(const std::string& text) {
  if (text.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(text[0]))) {
      case 'A': return Model::A;
      case 'B': return Model::B;
      case 'C': return Model::C;
      case 'D': return Model::D;
      default: break;
    }
  }
  throw std::invalid_argument("unknown model '" + text + "' (expected A, B, C or D)");
}

GapInstance generate(Model model, int n_agents, int n_tasks, std::uint64_t seed) {
  if (n_agents < 1 || n_tasks < 1) {
    throw std::invalid_argument("need at least one agent and one task");
  }

  Rng rng(seed);
  GapInstance instance;
  instance.profits.resize(n_agents, n_tasks);
  instance.weights.resize(n_agents, n_tasks);
  instance.capacity.resize(n_agents);

  if (model == Model::D) {
    draw_matrix(rng, instance.weights, 1, 100);
    for (int i = 0; i < n_agents; ++i) {
      for (int m = 0; m < n_tasks; ++m) {
        const double k = static_cast<double>(rng.uniform_int(1, 21));
        instance.profits(i, m) = instance.weights(i, m) + k;
      }
    }
    instance.capacity = row_share_capacity(instance.weights);
    return instance;
  }

  // Models A, B and C share the same draw sequence so that equal seeds give
  // equal weight/profit matrices across the three.
  draw_matrix(rng, instance.weights, 10, 25);
  draw_matrix(rng, instance.profits, 5, 25);

  switch (model) {
    case Model::A:
      instance.capacity.setConstant(model_a_capacity(instance.profits, instance.weights));
      break;
    case Model::B:
      instance.capacity.setConstant(0.7 * model_a_capacity(instance.profits, instance.weights));
      break;
    case Model::C:
      instance.capacity = row_share_capacity(instance.weights);
      break;
    case Model::D:
      break;  // handled above
  }
  return instance;
}

}  // namespace gapbp
