#include "mulesched/metrics.hpp"

#include <algorithm>
#include <map>

#include "mulesched/solve.hpp"

namespace mulesched {

namespace {

// Transmissions regrouped per sensor in slot order, which is FIFO order for
// the units each sensor buffers.
std::vector<std::vector<Transmission>> by_sensor_in_order(
    const Schedule& sched, int n_sensors) {
  std::vector<std::vector<Transmission>> per(n_sensors);
  for (const Transmission& tx : sched.transmissions)
    per[tx.sensor].push_back(tx);
  for (std::vector<Transmission>& txs : per)
    std::stable_sort(txs.begin(), txs.end(),
                     [](const Transmission& a, const Transmission& b) {
                       return a.slot < b.slot;
                     });
  return per;
}

}  // namespace

std::vector<Rational> transmission_delays(const Schedule& sched,
                                          const ParamSet& params) {
  int max_sensor = -1;
  for (const Transmission& tx : sched.transmissions)
    max_sensor = std::max(max_sensor, tx.sensor);
  std::vector<Rational> delays;
  for (const std::vector<Transmission>& txs :
       by_sensor_in_order(sched, max_sensor + 1)) {
    long long k = 0;
    for (const Transmission& tx : txs) {
      ++k;
      delays.push_back(Rational(tx.slot) - Rational(k) / params.gen_rate);
    }
  }
  return delays;
}

MetricsReport compute_metrics(const Scenario& s, const Schedule& sched,
                              const ProblemKind& kind,
                              const std::vector<char>& gap_scope) {
  MetricsReport r;
  int n_sensors = static_cast<int>(s.sensors.size());
  int n_vehicles = static_cast<int>(s.vehicles.size());
  r.transmissions = static_cast<long long>(sched.size());
  r.per_sensor.assign(n_sensors, 0);
  r.per_vehicle.assign(n_vehicles, 0);
  for (const Transmission& tx : sched.transmissions) {
    ++r.per_sensor[tx.sensor];
    ++r.per_vehicle[tx.vehicle];
  }
  for (int v = 0; v < n_vehicles; ++v) {
    Rational comp = Rational(r.per_vehicle[v]) * s.params.unit_cost;
    r.total_spend += comp;
    if (comp > s.params.c_min) ++r.participants;
  }

  long long max_count = 0, min_count = 0;
  bool any = false;
  for (int j = 0; j < n_sensors; ++j) {
    if (!gap_scope.empty() && !gap_scope[j]) continue;
    if (!any) {
      max_count = min_count = r.per_sensor[j];
      any = true;
    } else {
      max_count = std::max(max_count, r.per_sensor[j]);
      min_count = std::min(min_count, r.per_sensor[j]);
    }
  }
  r.fairness_gap = any ? max_count - min_count : 0;

  if (!kind.has_fairness()) {
    r.objective = Rational(r.transmissions);
  } else {
    Rational svt = Rational(n_sensors) * Rational(n_vehicles) *
                   Rational(s.grid.horizon_slots);
    Rational vt = Rational(n_vehicles) * Rational(s.grid.horizon_slots);
    Rational fw = kind.fairness_weight;
    r.objective = svt.is_zero() ? Rational(0)
                                : fw * Rational(r.transmissions) / svt;
    if (!vt.is_zero())
      r.objective -= (Rational(1) - fw) * Rational(r.fairness_gap) / vt;
  }

  for (const std::vector<Transmission>& txs :
       by_sensor_in_order(sched, n_sensors)) {
    long long k = 0;
    for (const Transmission& tx : txs) {
      ++k;
      r.delay_order.push_back(tx);
      r.delays.push_back(Rational(tx.slot) - Rational(k) / s.params.gen_rate);
    }
  }
  if (!r.delays.empty()) {
    r.has_delays = true;
    Rational sum{0};
    r.max_delay = r.delays.front();
    for (const Rational& d : r.delays) {
      sum += d;
      if (d > r.max_delay) r.max_delay = d;
    }
    r.mean_delay = sum / Rational(static_cast<long long>(r.delays.size()));
  }
  return r;
}

std::vector<std::pair<double, double>> delay_cdf(
    const std::vector<Rational>& delays) {
  std::vector<Rational> sorted = delays;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> points;
  size_t n = sorted.size();
  for (size_t i = 0; i < n; ++i) {
    if (i + 1 < n && sorted[i + 1] == sorted[i]) continue;
    points.push_back({sorted[i].to_double(),
                      static_cast<double>(i + 1) / static_cast<double>(n)});
  }
  return points;
}

std::vector<SweepPoint> sweep_fairness(const Scenario& s,
                                       const ContactSet& contacts,
                                       const std::vector<Rational>& weights,
                                       ProblemFamily family,
                                       std::optional<double> time_budget_s) {
  std::vector<SweepPoint> points;
  for (const Rational& w : weights) {
    ProblemKind kind = ProblemKind::from_params(family, s.params);
    kind.fairness_weight = w;
    LinearModel model = build_model(s, contacts, kind);
    SolveResult res = solve_exact(model, time_budget_s);
    MetricsReport metrics =
        compute_metrics(s, res.schedule, kind, model.gap_scope);
    SweepPoint pt;
    pt.weight = w;
    pt.transmissions = metrics.transmissions;
    pt.fairness_gap = metrics.fairness_gap;
    pt.objective = res.objective_value;
    pt.proven_optimal = res.stats.proven_optimal;
    points.push_back(pt);
  }
  return points;
}

long long baseline_units(const Rational& spend, const Rational& price_per_mb,
                         long long unit_bytes) {
  if (!(price_per_mb > Rational(0)) || unit_bytes <= 0)
    throw Error("baseline pricing must be positive");
  Rational per_unit = price_per_mb * Rational(unit_bytes, 1 << 20);
  return (spend / per_unit).floor();
}

Rational direct_cost(long long units, const Rational& price_per_mb,
                     long long unit_bytes) {
  return price_per_mb * Rational(unit_bytes, 1 << 20) * Rational(units);
}

Rational cost_ratio(const Rational& direct, const Rational& mule) {
  if (mule.is_zero()) {
    if (direct.is_zero()) return Rational(1);
    throw Error("cost ratio undefined: nothing spent on mules");
  }
  return direct / mule;
}

}  // namespace mulesched
