#pragma once

#include <vector>

#include "mulesched/linear_model.hpp"
#include "mulesched/types.hpp"

namespace mulesched {

/// Independent feasibility check of a schedule straight against scenario
/// data: positions and ranges are recomputed from the trajectories, buffer
/// levels from the generation rate, spend and thresholds from the unit
/// price. Deliberately shares nothing with the constraint-matrix solvers so
/// the two can vouch for each other. Returns every violation found.
std::vector<Violation> validate_schedule(const Scenario& s,
                                         const Schedule& sched,
                                         const ProblemKind& kind);

}  // namespace mulesched
