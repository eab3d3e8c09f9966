#pragma once

#include <vector>

#include "mulesched/geo.hpp"
#include "mulesched/scenario.hpp"
#include "mulesched/types.hpp"

namespace mulesched {

/// A greedy run plus what the pay-threshold cleanup did.
struct GreedyReport {
  SolveResult result;  // kept schedule, threshold cleanup applied
  Schedule raw;        // every unit handed out, including later-removed ones
  std::vector<int> excluded_vehicles;
  Rational reclaimed{0};  // payments returned by the cleanup
  int passes = 1;
};

/// Slot-by-slot heuristic: each sensor holding a transmittable unit hands it
/// to the lowest-indexed vehicle in range that has not received one this
/// slot, while the budget lasts. Vehicles finishing at or below the minimum
/// compensation are dropped afterwards and their payments reclaimed.
GreedyReport run_greedy(const Scenario& s, const ContactSet& contacts,
                        bool strict_buffer = false);

/// Recycling variant: payments reclaimed by the cleanup fund further passes
/// restricted to vehicles that are not yet participants, until no new
/// vehicle could reach the threshold or a pass qualifies nobody. Units
/// handed out and then removed stay consumed from the sensor buffers unless
/// return_removed_units is set.
GreedyReport run_greedy_recycling(const Scenario& s,
                                  const ContactSet& contacts,
                                  bool strict_buffer = false,
                                  bool return_removed_units = false);

/// Replanning pass for the penetration simulator: committed transmissions
/// stay fixed (their slots occupied, their units consumed), only eligible
/// vehicles receive new units, and at most budget_units new ones are bought.
/// Returns the kept fresh transmissions; the threshold cleanup applies to
/// vehicles with nothing committed.
Schedule greedy_residual(const Scenario& s, const ContactSet& contacts,
                         const Schedule& committed,
                         const std::vector<char>& vehicle_eligible,
                         long long budget_units, bool strict_buffer = false);

}  // namespace mulesched
