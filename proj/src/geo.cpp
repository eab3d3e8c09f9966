#include "mulesched/geo.hpp"

#include <algorithm>
#include <cmath>

namespace mulesched {

namespace {
constexpr double kEarthRadiusM = 6371000.0;
constexpr double kDegToRad = M_PI / 180.0;
}  // namespace

double haversine_distance(const LatLon& a, const LatLon& b) {
  double phi1 = a.lat * kDegToRad;
  double phi2 = b.lat * kDegToRad;
  double dphi = (b.lat - a.lat) * kDegToRad;
  double dlambda = (b.lon - a.lon) * kDegToRad;
  double h = std::sin(dphi / 2) * std::sin(dphi / 2) +
             std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) *
                 std::sin(dlambda / 2);
  return 2.0 * kEarthRadiusM * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

std::optional<LatLon> position_at(const VehicleTrajectory& traj, double t) {
  const auto& samples = traj.samples;
  if (samples.empty() || t < samples.front().t || t > samples.back().t)
    return std::nullopt;
  auto it = std::lower_bound(
      samples.begin(), samples.end(), t,
      [](const TrajectorySample& s, double value) { return s.t < value; });
  if (it->t == t) return LatLon{it->lat, it->lon};
  const TrajectorySample& hi = *it;
  const TrajectorySample& lo = *(it - 1);
  double w = (t - lo.t) / (hi.t - lo.t);
  return LatLon{lo.lat + w * (hi.lat - lo.lat),
                lo.lon + w * (hi.lon - lo.lon)};
}

void ContactSet::build_index() {
  groups.clear();
  group_lookup.clear();
  events_by_vehicle.assign(n_vehicles, {});
  groups_by_sensor.assign(n_sensors, {});
  for (size_t i = 0; i < events.size(); ++i) {
    const ContactEvent& e = events[i];
    if (groups.empty() || groups.back().slot != e.slot ||
        groups.back().sensor != e.sensor) {
      groups.push_back(
          Group{e.slot, e.sensor, static_cast<int>(i), 0});
      group_lookup[key(e.sensor, e.slot)] =
          static_cast<int>(groups.size()) - 1;
      groups_by_sensor[e.sensor].push_back(static_cast<int>(groups.size()) -
                                           1);
    }
    ++groups.back().count;
    events_by_vehicle[e.vehicle].push_back(static_cast<int>(i));
  }
}

std::optional<double> ContactSet::distance(int vehicle, int sensor,
                                           int slot) const {
  int g = find_group(sensor, slot);
  if (g < 0) return std::nullopt;
  const Group& group = groups[g];
  for (int i = group.first; i < group.first + group.count; ++i)
    if (events[i].vehicle == vehicle) return events[i].distance_m;
  return std::nullopt;
}

ContactSet extract_contacts(const Scenario& s) {
  ContactSet set;
  set.n_vehicles = static_cast<int>(s.vehicles.size());
  set.n_sensors = static_cast<int>(s.sensors.size());
  set.horizon_slots = s.grid.horizon_slots;

  for (int v = 0; v < set.n_vehicles; ++v) {
    const VehicleTrajectory& traj = s.vehicles[v];
    if (traj.samples.empty()) continue;
    int first_slot =
        std::max(0, static_cast<int>(std::ceil(traj.samples.front().t)));
    int last_slot =
        std::min(s.grid.horizon_slots - 1,
                 static_cast<int>(std::floor(traj.samples.back().t)));
    for (int t = first_slot; t <= last_slot; ++t) {
      auto pos = position_at(traj, static_cast<double>(t));
      if (!pos) continue;
      for (int j = 0; j < set.n_sensors; ++j) {
        double d =
            haversine_distance(*pos, LatLon{s.sensors[j].lat, s.sensors[j].lon});
        if (d <= s.params.range_m)
          set.events.push_back(ContactEvent{v, j, t, d});
      }
    }
  }

  std::sort(set.events.begin(), set.events.end(),
            [](const ContactEvent& a, const ContactEvent& b) {
              if (a.slot != b.slot) return a.slot < b.slot;
              if (a.sensor != b.sensor) return a.sensor < b.sensor;
              return a.vehicle < b.vehicle;
            });
  set.build_index();
  return set;
}

VehicleTrajectory mean_trajectory(
    const std::vector<VehicleTrajectory>& trajs) {
  if (trajs.empty()) throw Error("mean_trajectory: no trajectories");
  size_t n = trajs.front().samples.size();
  for (const VehicleTrajectory& t : trajs)
    if (t.samples.size() != n)
      throw Error("mean_trajectory: trajectories differ in length");
  if (n == 0) throw Error("mean_trajectory: empty trajectories");

  VehicleTrajectory out;
  out.id = trajs.front().id;
  out.samples.resize(n);
  double inv = 1.0 / static_cast<double>(trajs.size());
  for (size_t k = 0; k < n; ++k) {
    double t = 0.0, lat = 0.0, lon = 0.0;
    for (const VehicleTrajectory& traj : trajs) {
      t += traj.samples[k].t;
      lat += traj.samples[k].lat;
      lon += traj.samples[k].lon;
    }
    out.samples[k] = TrajectorySample{t * inv, lat * inv, lon * inv};
    if (k > 0 && !(out.samples[k].t > out.samples[k - 1].t))
      throw Error("mean_trajectory: mean timestamps not strictly increasing");
  }
  return out;
}

}  // namespace mulesched
