#include <algorithm>
#include <cstdint>
#include <vector>

#include "mulesched/solve.hpp"

namespace mulesched {

namespace {

constexpr int kMaxBruteVars = 25;

struct BruteState {
  const LinearModel* m = nullptr;
  std::vector<std::vector<std::pair<int, long long>>> var_rows;  // per x var
  std::vector<char> row_monotone;  // sense Le, all transmission coeffs >= 0
  std::vector<long long> row_lhs;
  std::vector<char> chosen;
  std::vector<long long> vehicle_count;
  long long nodes = 0;

  bool has_best = false;
  Rational best_obj{0};
  std::vector<int> best_events;

  void leaf() {
    const LinearModel& model = *m;
    for (int i = model.first_participation;
         i < model.first_participation + model.n_participation; ++i) {
      long long count = vehicle_count[model.variables[i].vehicle];
      if (count > 0 && count < model.participation_min_units) return;
    }
    for (size_t r = 0; r < model.rows.size(); ++r) {
      if (model.rows[r].cls != RowClass::Delay) continue;
      if (row_lhs[r] > model.rows[r].rhs) return;
    }

    std::vector<int> events;
    for (int i = 0; i < model.n_transmissions; ++i)
      if (chosen[i]) events.push_back(i);

    Rational obj{0};
    if (!model.kind.has_fairness()) {
      obj = Rational(static_cast<long long>(events.size()));
    } else {
      std::vector<Transmission> picks;
      for (int i : events) {
        const ContactEvent& e = model.events[i];
        picks.push_back(Transmission{e.vehicle, e.sensor, e.slot});
      }
      obj = model.objective_of(Schedule::of(std::move(picks)));
    }

    // Leaves are visited selected-before-skipped, so keeping the first
    // maximum reproduces solve_exact's deterministic tie-break.
    if (!has_best || obj > best_obj) {
      has_best = true;
      best_obj = obj;
      best_events = std::move(events);
    }
  }

  void walk(int depth) {
    ++nodes;
    const LinearModel& model = *m;
    if (depth == model.n_transmissions) {
      leaf();
      return;
    }

    bool feasible = true;
    for (const auto& [row, coeff] : var_rows[depth]) {
      row_lhs[row] += coeff;
      if (row_monotone[row] && row_lhs[row] > model.rows[row].rhs)
        feasible = false;
    }
    if (feasible) {
      chosen[depth] = 1;
      ++vehicle_count[model.events[depth].vehicle];
      walk(depth + 1);
      --vehicle_count[model.events[depth].vehicle];
      chosen[depth] = 0;
    }
    for (const auto& [row, coeff] : var_rows[depth]) row_lhs[row] -= coeff;

    walk(depth + 1);
  }
};

}  // namespace

SolveResult solve_bruteforce(const LinearModel& m) {
  if (m.n_transmissions > kMaxBruteVars)
    throw Error("exhaustive solver limited to " +
                std::to_string(kMaxBruteVars) + " transmission variables, got " +
                std::to_string(m.n_transmissions));

  BruteState st;
  st.m = &m;
  st.var_rows.resize(m.n_transmissions);
  st.row_monotone.assign(m.rows.size(), 0);
  st.row_lhs.assign(m.rows.size(), 0);
  st.chosen.assign(std::max(m.n_transmissions, 1), 0);
  st.vehicle_count.assign(m.n_vehicles, 0);

  for (size_t r = 0; r < m.rows.size(); ++r) {
    const Row& row = m.rows[r];
    bool x_only = true;
    bool nonneg = true;
    for (const auto& [var, coeff] : row.terms) {
      if (m.variables[var].role != VarRole::Transmission) {
        x_only = false;
        break;
      }
      if (coeff < 0) nonneg = false;
      st.var_rows[var].push_back({static_cast<int>(r), coeff});
    }
    if (!x_only) {
      // Participation and fairness rows are resolved at the leaves.
      for (const auto& [var, coeff] : row.terms)
        if (m.variables[var].role == VarRole::Transmission) {
          auto& vr = st.var_rows[var];
          vr.erase(std::remove_if(vr.begin(), vr.end(),
                                  [r](const std::pair<int, long long>& e) {
                                    return e.first == static_cast<int>(r);
                                  }),
                   vr.end());
        }
      continue;
    }
    st.row_monotone[r] = row.sense == RowSense::Le && nonneg;
  }

  st.walk(0);
  if (!st.has_best) throw Error("no feasible assignment found");

  std::vector<Rational> assignment(m.variables.size(), Rational(0));
  std::vector<long long> vehicle_count(m.n_vehicles, 0);
  std::vector<long long> sensor_count(m.n_sensors, 0);
  for (int i : st.best_events) {
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
      if (!m.gap_scope.empty() && !m.gap_scope[j]) continue;
      any = true;
      max_count = std::max(max_count, sensor_count[j]);
      min_count = std::min(min_count, sensor_count[j]);
    }
    if (!any) max_count = min_count = 0;
    assignment[m.fairness_max_var] = Rational(max_count);
    assignment[m.fairness_min_var] = Rational(min_count);
  }

  SolveResult result = decode_solution(m, assignment);
  if (result.objective_value != st.best_obj)
    throw Error("exhaustive solver objective mismatch after decode");
  result.stats.nodes_explored = st.nodes;
  result.stats.proven_optimal = true;
  result.stats.dual_bound = st.best_obj.to_double();
  return result;
}

}  // namespace mulesched
