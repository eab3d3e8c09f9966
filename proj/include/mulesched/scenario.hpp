#pragma once

#include <set>
#include <vector>

#include "mulesched/types.hpp"

namespace mulesched {

/// Returns every invariant violation found in the scenario, with
/// machine-readable codes. An empty result means the scenario is valid.
std::vector<Violation> validate_scenario(const Scenario& s);

/// Dollars owed to a vehicle for its transmissions in the schedule.
/// A known vehicle with no transmissions earns $0.
Rational compensation_of(const Schedule& sched, int vehicle,
                         const ParamSet& params);

/// Vehicles whose compensation strictly exceeds c_min.
std::set<int> participants_of(const Schedule& sched, const ParamSet& params);

/// Assembles a SolveResult from a schedule with participants, compensation,
/// and spend derived uniformly. Objective and stats are the caller's.
SolveResult make_solve_result(const Schedule& sched, const ParamSet& params,
                              const Rational& objective, SolverStats stats);

}  // namespace mulesched
