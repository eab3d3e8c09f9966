#pragma once

#include <optional>
#include <vector>

#include "mulesched/geo.hpp"
#include "mulesched/scenario.hpp"
#include "mulesched/types.hpp"

namespace mulesched {

/// Show-up randomness: one uniform draw per planned participant, taken in
/// ascending vehicle order, so outcomes are reproducible from the seed
/// alone. A participant shows iff its draw is strictly below show_rate
/// (rate 1 keeps everyone, rate 0 nobody).
struct PenetrationConfig {
  double show_rate = 1.0;
  unsigned long long seed = 0;
};

/// What to do about the units no-shows were planned to carry.
enum class ReplanMode { None, Exact, Greedy };

struct PenetrationOutcome {
  std::vector<int> shown;
  std::vector<int> no_shows;
  Schedule committed;  // planned transmissions whose vehicle showed up
  Schedule realized;   // committed plus any replanned transmissions
  SolveResult result;  // realized schedule with spend and participants
  long long replanned_units = 0;
};

/// Applies no-show randomness to a plan and optionally re-spends the freed
/// budget. No-show transmissions never consume sensor buffers: replanning
/// sees only the committed units. Eligible vehicles for new units are all
/// vehicles that did not no-show; the replanner may only buy
/// floor((c_max - committed spend) / unit_cost) fresh units.
PenetrationOutcome apply_penetration(
    const Scenario& s, const ContactSet& contacts, const SolveResult& planned,
    const PenetrationConfig& config, ReplanMode mode = ReplanMode::None,
    std::optional<double> time_budget_s = std::nullopt);

}  // namespace mulesched
