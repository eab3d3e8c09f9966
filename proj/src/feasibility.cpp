#include "mulesched/feasibility.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "mulesched/geo.hpp"

namespace mulesched {

namespace {

std::string tx_text(const Transmission& tx) {
  return "vehicle " + std::to_string(tx.vehicle) + ", sensor " +
         std::to_string(tx.sensor) + ", slot " + std::to_string(tx.slot);
}

}  // namespace

std::vector<Violation> validate_schedule(const Scenario& s,
                                         const Schedule& sched,
                                         const ProblemKind& kind) {
  std::vector<Violation> out;
  int n_vehicles = static_cast<int>(s.vehicles.size());
  int n_sensors = static_cast<int>(s.sensors.size());
  const ParamSet& p = s.params;

  std::vector<Transmission> valid;
  for (const Transmission& tx : sched.transmissions) {
    if (tx.vehicle < 0 || tx.vehicle >= n_vehicles || tx.sensor < 0 ||
        tx.sensor >= n_sensors || tx.slot < 0 ||
        tx.slot >= s.grid.horizon_slots) {
      out.push_back({Violation::Code::UnknownIndex,
                     "transmission outside the scenario: " + tx_text(tx)});
      continue;
    }
    valid.push_back(tx);
  }

  std::map<std::pair<int, int>, int> sensor_slot;
  for (const Transmission& tx : valid)
    if (++sensor_slot[{tx.sensor, tx.slot}] == 2)
      out.push_back({Violation::Code::DuplicateSensorSlot,
                     "sensor " + std::to_string(tx.sensor) +
                         " sends twice in slot " + std::to_string(tx.slot)});

  if (kind.vehicle_exclusivity) {
    std::map<std::pair<int, int>, int> vehicle_slot;
    for (const Transmission& tx : valid)
      if (++vehicle_slot[{tx.vehicle, tx.slot}] == 2)
        out.push_back({Violation::Code::VehicleSlotConflict,
                       "vehicle " + std::to_string(tx.vehicle) +
                           " receives twice in slot " +
                           std::to_string(tx.slot)});
  }

  for (const Transmission& tx : valid) {
    std::optional<LatLon> pos =
        position_at(s.vehicles[tx.vehicle], static_cast<double>(tx.slot));
    if (!pos) {
      out.push_back({Violation::Code::OutOfRangeTransmission,
                     "vehicle has no position: " + tx_text(tx)});
      continue;
    }
    const Sensor& sensor = s.sensors[tx.sensor];
    double d = haversine_distance(*pos, LatLon{sensor.lat, sensor.lon});
    if (d > p.range_m)
      out.push_back({Violation::Code::OutOfRangeTransmission,
                     "out of range (" + std::to_string(d) + " m): " +
                         tx_text(tx)});
  }

  // Buffer causality: cumulative units per sensor never outrun generation.
  {
    std::vector<std::vector<int>> slots(n_sensors);
    for (const Transmission& tx : valid) slots[tx.sensor].push_back(tx.slot);
    for (int j = 0; j < n_sensors; ++j) {
      std::sort(slots[j].begin(), slots[j].end());
      for (size_t k = 0; k < slots[j].size(); ++k) {
        long long cumulative = static_cast<long long>(k) + 1;
        if (cumulative > p.units_available_through(
                             slots[j][k], kind.strict_buffer_boundary)) {
          out.push_back({Violation::Code::BufferUnderflow,
                         "sensor " + std::to_string(j) + " has sent " +
                             std::to_string(cumulative) +
                             " units by slot " + std::to_string(slots[j][k]) +
                             " but generated fewer"});
          break;
        }
      }
    }
  }

  std::vector<long long> per_vehicle(n_vehicles, 0);
  for (const Transmission& tx : valid) ++per_vehicle[tx.vehicle];
  Rational spend{0};
  for (int v = 0; v < n_vehicles; ++v) {
    Rational comp = Rational(per_vehicle[v]) * p.unit_cost;
    spend += comp;
    if (per_vehicle[v] > 0 && comp <= p.c_min)
      out.push_back({Violation::Code::CompensationAtOrBelowMinimum,
                     "vehicle " + std::to_string(v) + " earns " +
                         comp.to_string() + " which does not exceed c_min"});
    if (kind.per_vehicle_cap && per_vehicle[v] >= *kind.per_vehicle_cap)
      out.push_back({Violation::Code::VehicleCapExceeded,
                     "vehicle " + std::to_string(v) + " relays " +
                         std::to_string(per_vehicle[v]) + " units"});
  }
  if (spend > p.c_max)
    out.push_back({Violation::Code::BudgetExceeded,
                   "schedule costs " + spend.to_string() + " of " +
                       p.c_max.to_string()});

  if (kind.has_delay() && kind.delay_bound_s) {
    Rational bound = kind.effective_delay_bound();
    std::vector<std::vector<int>> slots(n_sensors);
    for (const Transmission& tx : valid) slots[tx.sensor].push_back(tx.slot);
    for (int j = 0; j < n_sensors; ++j) {
      std::sort(slots[j].begin(), slots[j].end());
      for (size_t k = 0; k < slots[j].size(); ++k) {
        Rational delay = Rational(slots[j][k]) -
                         Rational(static_cast<long long>(k) + 1) / p.gen_rate;
        if (delay >= bound) {
          out.push_back({Violation::Code::DelayBoundExceeded,
                         "sensor " + std::to_string(j) + " unit " +
                             std::to_string(k + 1) + " waits " +
                             delay.to_string() + " s"});
          break;
        }
      }
    }
  }

  return out;
}

}  // namespace mulesched
