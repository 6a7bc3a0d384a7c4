#pragma once

#include <cstdint>
#include <string>

#include "gapbp/instance.hpp"

namespace gapbp {

/// The four standard benchmark families. All draws are discrete uniform.
///
///   A: w ~ U(10,25), p ~ U(5,25); every agent gets the same capacity
///      9*(M/N) + 0.4 * max_l sum of agent l's weights over the tasks whose
///      cheapest row (ties to the lowest agent index) is l.
///   B: same weights and profits as A under the same seed; capacities are
///      A's scaled by 0.7.
///   C: same weights and profits as A under the same seed; agent l's
///      capacity is 80% of its weight-row total divided by the fleet size.
///   D: w ~ U(1,100), p = w + k with a fresh k ~ U(1,21) per entry;
///      capacities as in C.
enum class Model { A, B, C, D };

char model_letter(Model model);

/// Parses "A".."D" (case-insensitive). Throws std::invalid_argument on
/// anything else.
Model parse_model(const std::string& text);

/// Deterministically generates an instance: the same (model, n_agents,
/// n_tasks, seed) always produces the same data. Models A, B and C share
/// their weight/profit draws for equal seeds.
GapInstance generate(Model model, int n_agents, int n_tasks, std::uint64_t seed);

}  // namespace gapbp
