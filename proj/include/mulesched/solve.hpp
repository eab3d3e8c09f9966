#pragma once

#include <optional>
#include <vector>

#include "mulesched/linear_model.hpp"
#include "mulesched/types.hpp"

namespace mulesched {

/// Turns a full variable assignment into a SolveResult. Every row is checked
/// exactly and the objective is recomputed from the decoded schedule; any
/// mismatch with the assignment's objective raises, as does an assignment
/// that violates a constraint (for instance two transmissions sharing a
/// (sensor, slot) pair).
SolveResult decode_solution(const LinearModel& m,
                            const std::vector<Rational>& assignment);

/// Exact depth-first branch and bound over the transmission variables in
/// canonical event order, trying "selected" before "skipped" at every depth.
/// Deterministic: among optimal schedules it returns the first one in that
/// search order, which prefers transmissions at earlier (slot, sensor,
/// vehicle) events. With a time budget the best incumbent is returned,
/// proven_optimal=false, and stats.dual_bound carries a valid upper bound.
SolveResult solve_exact(const LinearModel& m,
                        std::optional<double> time_budget_s = std::nullopt);

/// Exhaustive reference solver for cross-checking solve_exact. Enumerates
/// all feasible 0-1 assignments directly against the model rows; refuses
/// models with more than 25 transmission variables.
SolveResult solve_bruteforce(const LinearModel& m);

}  // namespace mulesched
