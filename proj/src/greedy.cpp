#include "mulesched/greedy.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace mulesched {

namespace {

struct PassConfig {
  std::vector<char> eligible;                 // empty = all vehicles
  std::set<std::pair<int, int>> occupied;     // (sensor, slot) taken
  std::set<std::pair<int, int>> busy;         // (vehicle, slot) taken
  std::vector<long long> consumed;            // units gone per sensor
  std::vector<long long> vehicle_units;       // committed + fresh per vehicle
  long long budget_units = 0;
};

std::vector<Transmission> greedy_pass(const Scenario& s,
                                      const ContactSet& contacts,
                                      bool strict_buffer, PassConfig& cfg) {
  const ParamSet& p = s.params;
  int n_vehicles = static_cast<int>(s.vehicles.size());
  int n_sensors = static_cast<int>(s.sensors.size());
  long long cap =
      p.per_vehicle_cap ? static_cast<long long>(*p.per_vehicle_cap) - 1
                        : INT64_MAX;
  std::vector<int> served_slot(n_vehicles, -1);
  std::vector<Transmission> fresh;
  long long budget_left = cfg.budget_units;

  for (int t = 0; t < s.grid.horizon_slots; ++t) {
    for (int j = 0; j < n_sensors; ++j) {
      if (budget_left <= 0) break;
      int g = contacts.find_group(j, t);
      if (g < 0) continue;
      if (cfg.occupied.count({j, t})) continue;
      if (p.units_available_through(t, strict_buffer) - cfg.consumed[j] < 1)
        continue;
      const ContactSet::Group& group = contacts.groups[g];
      for (int e = group.first; e < group.first + group.count; ++e) {
        int v = contacts.events[e].vehicle;
        if (!cfg.eligible.empty() && !cfg.eligible[v]) continue;
        if (served_slot[v] == t) continue;
        if (cfg.busy.count({v, t})) continue;
        if (cfg.vehicle_units[v] + 1 > cap) continue;
        fresh.push_back(Transmission{v, j, t});
        served_slot[v] = t;
        ++cfg.vehicle_units[v];
        ++cfg.consumed[j];
        --budget_left;
        break;
      }
    }
  }
  cfg.budget_units = budget_left;
  return fresh;
}

}  // namespace

GreedyReport run_greedy(const Scenario& s, const ContactSet& contacts,
                        bool strict_buffer) {
  const ParamSet& p = s.params;
  long long k_min = p.participation_min_units();

  PassConfig cfg;
  cfg.consumed.assign(s.sensors.size(), 0);
  cfg.vehicle_units.assign(s.vehicles.size(), 0);
  cfg.budget_units = p.budget_units();
  std::vector<Transmission> all = greedy_pass(s, contacts, strict_buffer, cfg);

  GreedyReport report;
  report.raw = Schedule::of(std::vector<Transmission>(all));
  std::vector<Transmission> kept;
  for (const Transmission& tx : all) {
    if (cfg.vehicle_units[tx.vehicle] >= k_min)
      kept.push_back(tx);
  }
  for (int v = 0; v < static_cast<int>(s.vehicles.size()); ++v) {
    if (cfg.vehicle_units[v] > 0 && cfg.vehicle_units[v] < k_min) {
      report.excluded_vehicles.push_back(v);
      report.reclaimed += Rational(cfg.vehicle_units[v]) * p.unit_cost;
    }
  }
  Schedule sched = Schedule::of(std::move(kept));
  Rational objective(static_cast<long long>(sched.size()));
  report.result = make_solve_result(sched, p, objective, {});
  return report;
}

GreedyReport run_greedy_recycling(const Scenario& s,
                                  const ContactSet& contacts,
                                  bool strict_buffer,
                                  bool return_removed_units) {
  const ParamSet& p = s.params;
  long long k_min = p.participation_min_units();
  int n_vehicles = static_cast<int>(s.vehicles.size());

  GreedyReport report;
  std::vector<Transmission> kept;
  std::vector<Transmission> raw;
  std::vector<char> participant(n_vehicles, 0);
  std::vector<long long> consumed(s.sensors.size(), 0);
  std::set<std::pair<int, int>> occupied;
  Rational pool{0};
  long long budget = p.budget_units();
  int passes = 0;

  while (true) {
    PassConfig cfg;
    cfg.consumed = consumed;
    cfg.vehicle_units.assign(n_vehicles, 0);
    cfg.budget_units = budget;
    cfg.occupied = occupied;
    if (passes > 0) {
      cfg.eligible.assign(n_vehicles, 1);
      for (int v = 0; v < n_vehicles; ++v)
        if (participant[v]) cfg.eligible[v] = 0;
    }
    std::vector<Transmission> fresh =
        greedy_pass(s, contacts, strict_buffer, cfg);
    ++passes;
    if (fresh.empty()) break;
    raw.insert(raw.end(), fresh.begin(), fresh.end());

    bool any_qualified = false;
    for (const Transmission& tx : fresh) {
      long long units = cfg.vehicle_units[tx.vehicle];
      if (units >= k_min) {
        kept.push_back(tx);
        occupied.insert({tx.sensor, tx.slot});
      }
    }
    consumed = cfg.consumed;
    for (int v = 0; v < n_vehicles; ++v) {
      long long units = cfg.vehicle_units[v];
      if (units == 0 || participant[v]) continue;
      Rational paid = Rational(units) * p.unit_cost;
      if (units >= k_min) {
        participant[v] = 1;
        any_qualified = true;
        if (passes > 1) pool -= paid;
      } else {
        // First-pass drops feed the pool; later drops return pool money that
        // was never deducted up front, so they are net-zero for it.
        if (passes == 1) pool += paid;
        if (std::find(report.excluded_vehicles.begin(),
                      report.excluded_vehicles.end(),
                      v) == report.excluded_vehicles.end())
          report.excluded_vehicles.push_back(v);
        report.reclaimed += paid;
        if (return_removed_units) {
          for (const Transmission& tx : fresh)
            if (tx.vehicle == v) --consumed[tx.sensor];
        }
      }
    }
    if (!any_qualified) break;
    budget = (pool / p.unit_cost).floor();
    if (budget < k_min) break;
  }

  report.raw = Schedule::of(std::move(raw));
  report.passes = passes;
  std::sort(report.excluded_vehicles.begin(), report.excluded_vehicles.end());
  Schedule sched = Schedule::of(std::move(kept));
  Rational objective(static_cast<long long>(sched.size()));
  report.result = make_solve_result(sched, p, objective, {});
  return report;
}

Schedule greedy_residual(const Scenario& s, const ContactSet& contacts,
                         const Schedule& committed,
                         const std::vector<char>& vehicle_eligible,
                         long long budget_units, bool strict_buffer) {
  const ParamSet& p = s.params;
  long long k_min = p.participation_min_units();
  int n_vehicles = static_cast<int>(s.vehicles.size());

  PassConfig cfg;
  cfg.eligible = vehicle_eligible;
  cfg.consumed.assign(s.sensors.size(), 0);
  cfg.vehicle_units.assign(n_vehicles, 0);
  cfg.budget_units = budget_units;
  std::vector<long long> committed_units(n_vehicles, 0);
  for (const Transmission& tx : committed.transmissions) {
    cfg.occupied.insert({tx.sensor, tx.slot});
    cfg.busy.insert({tx.vehicle, tx.slot});
    ++cfg.consumed[tx.sensor];
    ++cfg.vehicle_units[tx.vehicle];
    ++committed_units[tx.vehicle];
  }
  std::vector<Transmission> fresh =
      greedy_pass(s, contacts, strict_buffer, cfg);

  std::vector<Transmission> kept;
  for (const Transmission& tx : fresh) {
    if (committed_units[tx.vehicle] == 0 &&
        cfg.vehicle_units[tx.vehicle] < k_min)
      continue;
    kept.push_back(tx);
  }
  return Schedule::of(std::move(kept));
}

}  // namespace mulesched
