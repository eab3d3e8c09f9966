#include <algorithm>
#include <chrono>
#include <cstdint>
#include <vector>

#include "mulesched/solve.hpp"

namespace mulesched {

namespace {

using Clock = std::chrono::steady_clock;

// Depth-first branch and bound in canonical event order, selected branch
// first. Because events are sorted by (slot, sensor, vehicle) and at most
// one transmission per (sensor, slot) is allowed, a sensor's cumulative
// count through slot t is final the moment a variable of that group is
// selected, which makes the buffer and delay checks O(1) per decision.
struct Search {
  const LinearModel* m = nullptr;

  // Static per-variable data. cap_through is the minimum fresh buffer
  // headroom over this and all later constrained slots of the sensor;
  // committed units can make headroom dip after the transmission slot, so
  // the plain headroom at the slot itself would not be a safe gate.
  std::vector<int> group_id;
  std::vector<char> is_last_in_group;
  std::vector<long long> cap_through;
  std::vector<long long> need_fresh;  // fresh units needed through slot
  std::vector<char> never_selectable;

  // Static per-vehicle / per-sensor data.
  std::vector<char> has_threshold;       // vehicle still below pay threshold
  std::vector<long long> vehicle_cap;    // max fresh units per vehicle
  std::vector<long long> headroom_end;   // fresh buffer cap over the horizon

  // Search state.
  std::vector<char> chosen;
  std::vector<char> group_used;
  std::vector<long long> sensor_sel;
  std::vector<long long> vehicle_cnt;
  std::vector<long long> vehicle_rem;   // undecided variables per vehicle
  std::vector<int> vehicle_last_slot;   // slot of the latest selected unit
  std::vector<long long> avail_sensor;  // open groups per sensor
  long long avail_total = 0;
  long long total_sel = 0;

  Rational fw{0}, svt{1}, vt{1};
  long long k_min = 1;
  bool fairness = false;

  bool has_inc = false;
  Rational inc_obj{0};
  std::vector<int> inc_events;

  long long nodes = 0;
  bool aborted = false;
  Rational frontier_bound{0};
  bool has_frontier = false;
  std::optional<Clock::time_point> deadline;

  void init(const LinearModel& model) {
    m = &model;
    int n = model.n_transmissions;
    group_id.resize(n);
    is_last_in_group.assign(n, 0);
    cap_through.resize(n);
    need_fresh.resize(n);
    never_selectable.assign(n, 0);

    std::vector<std::vector<int>> sensor_slots(model.n_sensors);
    for (int i = 0; i < n; ++i)
      sensor_slots[model.events[i].sensor].push_back(model.events[i].slot);
    headroom_end.assign(model.n_sensors, 0);
    std::vector<std::vector<std::pair<int, long long>>> suffix_cap(
        model.n_sensors);
    for (int j = 0; j < model.n_sensors; ++j) {
      std::vector<int>& slots = sensor_slots[j];
      if (!model.committed_sensor_slots.empty())
        for (int t : model.committed_sensor_slots[j]) slots.push_back(t);
      std::sort(slots.begin(), slots.end());
      slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
      long long running = INT64_MAX;
      for (auto it = slots.rbegin(); it != slots.rend(); ++it) {
        running = std::min(running, model.buffer_headroom_through(j, *it));
        suffix_cap[j].push_back({*it, running});
      }
      std::reverse(suffix_cap[j].begin(), suffix_cap[j].end());
      headroom_end[j] =
          slots.empty() ? 0 : model.buffer_headroom_through(j, slots.back());
    }
    auto cap_at = [&](int sensor, int slot) {
      const auto& caps = suffix_cap[sensor];
      auto it = std::lower_bound(
          caps.begin(), caps.end(),
          std::pair<int, long long>{slot, INT64_MIN});
      return it == caps.end() ? INT64_MAX : it->second;
    };

    int groups = 0;
    for (int i = 0; i < n; ++i) {
      const ContactEvent& e = model.events[i];
      if (i > 0 && (e.slot != model.events[i - 1].slot ||
                    e.sensor != model.events[i - 1].sensor))
        ++groups;
      group_id[i] = groups;
      cap_through[i] = cap_at(e.sensor, e.slot);
      long long committed = model.committed_before(e.sensor, e.slot);
      need_fresh[i] = std::max(
          0LL, model.delay_floor(e.sensor, e.slot) - committed);
      if (need_fresh[i] > cap_through[i]) never_selectable[i] = 1;
    }
    for (int i = 0; i + 1 < n; ++i)
      if (group_id[i] != group_id[i + 1]) is_last_in_group[i] = 1;
    if (n > 0) is_last_in_group[n - 1] = 1;

    has_threshold.assign(model.n_vehicles, 0);
    for (int i = model.first_participation;
         i < model.first_participation + model.n_participation; ++i)
      has_threshold[model.variables[i].vehicle] = 1;
    vehicle_cap.assign(model.n_vehicles, INT64_MAX);
    for (const Row& row : model.rows) {
      if (row.cls != RowClass::VehicleCap) continue;
      int vehicle = model.events[row.terms.front().first].vehicle;
      vehicle_cap[vehicle] = row.rhs;
    }
    chosen.assign(std::max(n, 1), 0);
    group_used.assign(std::max(n > 0 ? groups + 1 : 1, 1), 0);
    sensor_sel.assign(model.n_sensors, 0);
    vehicle_cnt.assign(model.n_vehicles, 0);
    vehicle_rem.assign(model.n_vehicles, 0);
    vehicle_last_slot.assign(model.n_vehicles, -1);
    for (int i = 0; i < n; ++i) ++vehicle_rem[model.events[i].vehicle];
    avail_sensor.assign(model.n_sensors, 0);
    if (n > 0) {
      for (int i = 0; i < n; ++i)
        if (i == 0 || group_id[i] != group_id[i - 1])
          ++avail_sensor[model.events[i].sensor];
      avail_total = groups + 1;
    }

    fairness = model.kind.has_fairness() && model.fairness_max_var >= 0;
    fw = model.kind.fairness_weight;
    svt = Rational(model.n_sensors) * Rational(model.n_vehicles) *
          Rational(model.horizon_slots);
    vt = Rational(model.n_vehicles) * Rational(model.horizon_slots);
    k_min = model.participation_min_units;
  }

  Rational upper_bound() const {
    const LinearModel& model = *m;
    long long budget_rem = model.budget_units - total_sel;
    long long sensor_sum = 0;
    long long in_scope_max = 0, in_scope_min_reach = INT64_MAX;
    bool any_scope = false;
    for (int j = 0; j < model.n_sensors; ++j) {
      long long room =
          std::min(avail_sensor[j], headroom_end[j] - sensor_sel[j]);
      room = std::max(room, 0LL);
      sensor_sum += room;
      if (fairness && model.gap_scope[j]) {
        any_scope = true;
        in_scope_max = std::max(in_scope_max, sensor_sel[j]);
        in_scope_min_reach = std::min(in_scope_min_reach, sensor_sel[j] + room);
      }
    }
    long long vehicle_sum = 0;
    for (int v = 0; v < model.n_vehicles; ++v) {
      long long rem = vehicle_rem[v];
      if (vehicle_cap[v] != INT64_MAX)
        rem = std::min(rem, vehicle_cap[v] - vehicle_cnt[v]);
      rem = std::max(rem, 0LL);
      if (has_threshold[v] && vehicle_cnt[v] == 0 && rem < k_min) rem = 0;
      vehicle_sum += rem;
    }
    long long add = std::min(std::min(budget_rem, avail_total),
                             std::min(sensor_sum, vehicle_sum));
    add = std::max(add, 0LL);
    if (!fairness) return Rational(total_sel + add);
    long long gap_lb = 0;
    if (any_scope)
      gap_lb = std::max(0LL, in_scope_max - in_scope_min_reach);
    Rational value = svt.is_zero()
                         ? Rational(0)
                         : fw * Rational(total_sel + add) / svt;
    if (!vt.is_zero()) value -= (Rational(1) - fw) * Rational(gap_lb) / vt;
    return value;
  }

  Rational leaf_objective() const {
    const LinearModel& model = *m;
    if (!fairness) return Rational(total_sel);
    long long max_count = 0, min_count = INT64_MAX;
    bool any = false;
    for (int j = 0; j < model.n_sensors; ++j) {
      if (!model.gap_scope[j]) continue;
      any = true;
      max_count = std::max(max_count, sensor_sel[j]);
      min_count = std::min(min_count, sensor_sel[j]);
    }
    long long gap = any ? max_count - min_count : 0;
    Rational value =
        svt.is_zero() ? Rational(0) : fw * Rational(total_sel) / svt;
    if (!vt.is_zero()) value -= (Rational(1) - fw) * Rational(gap) / vt;
    return value;
  }

  void note_frontier(const Rational& bound) {
    if (!has_frontier || bound > frontier_bound) {
      frontier_bound = bound;
      has_frontier = true;
    }
  }

  void descend(int depth, const Rational& bound) {
    if (aborted) {
      note_frontier(bound);
      return;
    }
    if (has_inc && bound <= inc_obj) return;
    walk(depth);
  }

  void walk(int depth) {
    ++nodes;
    if ((nodes & 4095) == 0 && deadline && Clock::now() > *deadline)
      aborted = true;
    const LinearModel& model = *m;
    if (depth == model.n_transmissions) {
      Rational obj = leaf_objective();
      if (!has_inc || obj > inc_obj) {
        has_inc = true;
        inc_obj = obj;
        inc_events.clear();
        for (int i = 0; i < model.n_transmissions; ++i)
          if (chosen[i]) inc_events.push_back(i);
      }
      return;
    }

    const ContactEvent& e = model.events[depth];
    int g = group_id[depth];
    --vehicle_rem[e.vehicle];

    bool can_select =
        !never_selectable[depth] && !group_used[g] &&
        total_sel + 1 <= model.budget_units &&
        sensor_sel[e.sensor] + 1 <= cap_through[depth] &&
        sensor_sel[e.sensor] + 1 >= need_fresh[depth] &&
        vehicle_cnt[e.vehicle] + 1 <= vehicle_cap[e.vehicle] &&
        !(model.kind.vehicle_exclusivity &&
          vehicle_last_slot[e.vehicle] == e.slot) &&
        !(has_threshold[e.vehicle] &&
          vehicle_cnt[e.vehicle] + 1 + vehicle_rem[e.vehicle] < k_min);
    if (can_select) {
      chosen[depth] = 1;
      group_used[g] = 1;
      ++total_sel;
      ++sensor_sel[e.sensor];
      ++vehicle_cnt[e.vehicle];
      --avail_total;
      --avail_sensor[e.sensor];
      int prev_slot = vehicle_last_slot[e.vehicle];
      vehicle_last_slot[e.vehicle] = e.slot;
      descend(depth + 1, upper_bound());
      vehicle_last_slot[e.vehicle] = prev_slot;
      ++avail_sensor[e.sensor];
      ++avail_total;
      --vehicle_cnt[e.vehicle];
      --sensor_sel[e.sensor];
      --total_sel;
      group_used[g] = 0;
      chosen[depth] = 0;
    }

    bool dead = has_threshold[e.vehicle] && vehicle_cnt[e.vehicle] > 0 &&
                vehicle_cnt[e.vehicle] + vehicle_rem[e.vehicle] < k_min;
    if (!dead) {
      bool closes_group = is_last_in_group[depth] && !group_used[g];
      if (closes_group) {
        --avail_total;
        --avail_sensor[e.sensor];
      }
      descend(depth + 1, upper_bound());
      if (closes_group) {
        ++avail_sensor[e.sensor];
        ++avail_total;
      }
    }

    ++vehicle_rem[e.vehicle];
  }
};

}  // namespace

SolveResult solve_exact(const LinearModel& m,
                        std::optional<double> time_budget_s) {
  auto start = Clock::now();
  Search st;
  st.init(m);
  if (time_budget_s)
    st.deadline = start + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(*time_budget_s));

  st.descend(0, st.upper_bound());

  std::vector<int> events = st.has_inc ? st.inc_events : std::vector<int>{};
  std::vector<Rational> assignment(m.variables.size(), Rational(0));
  std::vector<long long> vehicle_count(m.n_vehicles, 0);
  std::vector<long long> sensor_count(m.n_sensors, 0);
  for (int i : events) {
    assignment[i] = Rational(1);
    ++vehicle_count[m.events[i].vehicle];
    ++sensor_count[m.events[i].sensor];
  }
  for (int i = m.first_participation;
       i < m.first_participation + m.n_participation; ++i)
    if (vehicle_count[m.variables[i].vehicle] > 0)
      assignment[i] = Rational(1);
  if (m.fairness_max_var >= 0) {
    long long max_count = 0, min_count = INT64_MAX;
    bool any = false;
    for (int j = 0; j < m.n_sensors; ++j) {
      if (!m.gap_scope[j]) continue;
      any = true;
      max_count = std::max(max_count, sensor_count[j]);
      min_count = std::min(min_count, sensor_count[j]);
    }
    if (!any) max_count = min_count = 0;
    assignment[m.fairness_max_var] = Rational(max_count);
    assignment[m.fairness_min_var] = Rational(min_count);
  }

  SolveResult result = decode_solution(m, assignment);
  result.stats.nodes_explored = st.nodes;
  result.stats.proven_optimal = !st.aborted;
  Rational dual = result.objective_value;
  if (st.aborted && st.has_frontier && st.frontier_bound > dual)
    dual = st.frontier_bound;
  result.stats.dual_bound = dual.to_double();
  result.stats.wall_time_s =
      std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace mulesched
