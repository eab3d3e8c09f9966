#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "mulesched/types.hpp"

namespace mulesched {

/// One in-range (vehicle, sensor, slot) triple. These are exactly the
/// transmission opportunities: schedules and models only ever reference
/// triples that appear here, which is how the range constraint is enforced.
struct ContactEvent {
  int vehicle = 0;
  int sensor = 0;
  int slot = 0;
  double distance_m = 0.0;
};

/// Contact events in canonical (slot, sensor, vehicle) order plus lookup
/// structures. A "group" is the run of events sharing one (sensor, slot)
/// pair; at most one of a group's events can carry a transmission.
struct ContactSet {
  struct Group {
    int slot = 0;
    int sensor = 0;
    int first = 0;  // index into events
    int count = 0;
  };

  std::vector<ContactEvent> events;
  std::vector<Group> groups;
  std::vector<std::vector<int>> events_by_vehicle;  // event indices
  std::vector<std::vector<int>> groups_by_sensor;   // group indices
  int n_vehicles = 0;
  int n_sensors = 0;
  int horizon_slots = 0;

  int find_group(int sensor, int slot) const {
    auto it = group_lookup.find(key(sensor, slot));
    return it == group_lookup.end() ? -1 : it->second;
  }

  /// Distance for an in-range triple; nullopt when out of range or absent.
  std::optional<double> distance(int vehicle, int sensor, int slot) const;

  void build_index();

 private:
  static long long key(int sensor, int slot) {
    return static_cast<long long>(slot) * 1000003LL + sensor;
  }
  std::unordered_map<long long, int> group_lookup;
};

/// Great-circle distance in meters on a sphere of radius 6,371,000 m.
double haversine_distance(const LatLon& a, const LatLon& b);

/// Linear interpolation of the trajectory at time t (seconds). Absent when
/// t falls outside the sampled span.
std::optional<LatLon> position_at(const VehicleTrajectory& traj, double t);

/// All in-range triples over the scenario grid, canonically ordered.
ContactSet extract_contacts(const Scenario& s);

/// Pointwise mean of equally long trajectories (timestamps averaged too).
/// Errors on mismatched lengths, empty input, or a non-monotone result.
VehicleTrajectory mean_trajectory(const std::vector<VehicleTrajectory>& trajs);

}  // namespace mulesched
