#pragma once

namespace gapbp {

/// Numeric tolerances shared across the solver stack. These values are part
/// of the solver contract: tests pin behaviour against them.
inline constexpr double kFeasTol = 1e-9;         // primal feasibility / residuals
inline constexpr double kReducedCostTol = 1e-9;  // pricing / pivot admission
inline constexpr double kIntegralityTol = 1e-6;  // branch vs. incumbent decisions
inline constexpr double kPivotTol = 1e-9;        // smallest usable pivot element
inline constexpr double kCoeffTol = 1e-9;        // "is this coefficient zero"

}  // namespace gapbp
