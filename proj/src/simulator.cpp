#include "mulesched/simulator.hpp"

#include <algorithm>
#include <set>

#include "mulesched/greedy.hpp"
#include "mulesched/rng.hpp"
#include "mulesched/solve.hpp"

namespace mulesched {

PenetrationOutcome apply_penetration(const Scenario& s,
                                     const ContactSet& contacts,
                                     const SolveResult& planned,
                                     const PenetrationConfig& config,
                                     ReplanMode mode,
                                     std::optional<double> time_budget_s) {
  PenetrationOutcome out;
  SplitMix64 rng(config.seed);
  std::set<int> shown;
  for (int v : planned.participants) {
    if (rng.next_unit() < config.show_rate) {
      shown.insert(v);
      out.shown.push_back(v);
    } else {
      out.no_shows.push_back(v);
    }
  }

  std::vector<Transmission> kept;
  for (const Transmission& tx : planned.schedule.transmissions)
    if (shown.count(tx.vehicle)) kept.push_back(tx);
  out.committed = Schedule::of(std::move(kept));

  Schedule fresh;
  if (mode != ReplanMode::None) {
    long long committed_units = static_cast<long long>(out.committed.size());
    long long budget_rem = s.params.budget_units() - committed_units;
    std::vector<char> eligible(s.vehicles.size(), 1);
    for (int v : out.no_shows) eligible[v] = 0;
    if (mode == ReplanMode::Exact) {
      LinearModel model = build_residual_model(s, contacts, out.committed,
                                               eligible, budget_rem);
      fresh = solve_exact(model, time_budget_s).schedule;
    } else {
      fresh = greedy_residual(s, contacts, out.committed, eligible,
                              budget_rem);
    }
  }
  out.replanned_units = static_cast<long long>(fresh.size());

  std::vector<Transmission> merged = out.committed.transmissions;
  merged.insert(merged.end(), fresh.transmissions.begin(),
                fresh.transmissions.end());
  out.realized = Schedule::of(std::move(merged));
  Rational objective(static_cast<long long>(out.realized.size()));
  out.result = make_solve_result(out.realized, s.params, objective, {});
  return out;
}

}  // namespace mulesched
