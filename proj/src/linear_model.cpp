#include "mulesched/linear_model.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

namespace mulesched {

namespace {

long long checked_mul(long long a, long long b) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r > INT64_MAX || r < INT64_MIN)
    throw Error("model coefficient overflow");
  return static_cast<long long>(r);
}

std::string var_name(const ContactEvent& e) {
  return "x_v" + std::to_string(e.vehicle) + "_s" + std::to_string(e.sensor) +
         "_t" + std::to_string(e.slot);
}

}  // namespace

const char* problem_family_name(ProblemFamily family) {
  switch (family) {
    case ProblemFamily::Cspv: return "cspv";
    case ProblemFamily::FCspv: return "fcspv";
    case ProblemFamily::DfCspv: return "dfcspv";
  }
  return "?";
}

long long LinearModel::committed_units_total() const {
  long long total = 0;
  for (long long u : committed_vehicle_units) total += u;
  return total;
}

long long LinearModel::committed_before(int sensor, int slot_inclusive) const {
  if (committed_sensor_slots.empty()) return 0;
  const std::vector<int>& slots = committed_sensor_slots[sensor];
  return std::upper_bound(slots.begin(), slots.end(), slot_inclusive) -
         slots.begin();
}

long long LinearModel::buffer_headroom_through(int sensor, int slot) const {
  Rational generated =
      gen_rate * Rational(slot + (kind.strict_buffer_boundary ? 0 : 1));
  return generated.floor() - committed_before(sensor, slot);
}

long long LinearModel::delay_floor(int sensor, int slot) const {
  (void)sensor;
  if (!kind.has_delay()) return 0;
  Rational bound = kind.effective_delay_bound();
  return (gen_rate * (Rational(slot) - bound)).floor() + 1;
}

Rational LinearModel::objective_of(const Schedule& sched) const {
  long long n = static_cast<long long>(sched.size());
  if (!kind.has_fairness()) return Rational(n);
  std::vector<long long> counts(n_sensors, 0);
  for (const Transmission& tx : sched.transmissions) ++counts[tx.sensor];
  long long max_count = 0, min_count = INT64_MAX;
  bool any = false;
  for (int j = 0; j < n_sensors; ++j) {
    if (!gap_scope.empty() && !gap_scope[j]) continue;
    any = true;
    max_count = std::max(max_count, counts[j]);
    min_count = std::min(min_count, counts[j]);
  }
  long long gap = any ? max_count - min_count : 0;
  Rational svt = Rational(n_sensors) * Rational(n_vehicles) *
                 Rational(horizon_slots);
  Rational vt = Rational(n_vehicles) * Rational(horizon_slots);
  Rational fw = kind.fairness_weight;
  Rational value = svt.is_zero() ? Rational(0) : fw * Rational(n) / svt;
  if (!vt.is_zero()) value -= (Rational(1) - fw) * Rational(gap) / vt;
  return value;
}

namespace {

LinearModel build_impl(const Scenario& s, const ContactSet& contacts,
                       const ProblemKind& kind, const Schedule& committed,
                       const std::vector<char>& vehicle_eligible,
                       long long budget_units) {
  LinearModel m;
  m.kind = kind;
  m.n_vehicles = static_cast<int>(s.vehicles.size());
  m.n_sensors = static_cast<int>(s.sensors.size());
  m.horizon_slots = s.grid.horizon_slots;
  m.unit_cost = s.params.unit_cost;
  m.c_min = s.params.c_min;
  m.c_max = s.params.c_max;
  m.gen_rate = s.params.gen_rate;
  m.budget_units = budget_units;
  m.participation_min_units = s.params.participation_min_units();

  m.committed_vehicle_units.assign(m.n_vehicles, 0);
  m.committed_sensor_slots.assign(m.n_sensors, {});
  for (const Transmission& tx : committed.transmissions) {
    ++m.committed_vehicle_units[tx.vehicle];
    m.committed_sensor_slots[tx.sensor].push_back(tx.slot);
  }
  for (std::vector<int>& slots : m.committed_sensor_slots)
    std::sort(slots.begin(), slots.end());

  std::map<std::pair<int, int>, char> occupied;
  for (const Transmission& tx : committed.transmissions)
    occupied[{tx.sensor, tx.slot}] = 1;

  for (const ContactEvent& e : contacts.events) {
    if (!vehicle_eligible.empty() && !vehicle_eligible[e.vehicle]) continue;
    if (occupied.count({e.sensor, e.slot})) continue;
    m.events.push_back(e);
  }
  m.n_transmissions = static_cast<int>(m.events.size());

  for (int i = 0; i < m.n_transmissions; ++i) {
    Variable v;
    v.name = var_name(m.events[i]);
    v.role = VarRole::Transmission;
    v.event = i;
    m.variables.push_back(std::move(v));
  }

  std::vector<std::vector<int>> vehicle_vars(m.n_vehicles);
  for (int i = 0; i < m.n_transmissions; ++i)
    vehicle_vars[m.events[i].vehicle].push_back(i);

  // Participation indicators only for vehicles that could newly join; a
  // vehicle already committed past the threshold stays a participant.
  m.first_participation = static_cast<int>(m.variables.size());
  std::vector<int> participation_var(m.n_vehicles, -1);
  for (int v = 0; v < m.n_vehicles; ++v) {
    if (vehicle_vars[v].empty()) continue;
    long long committed_units = m.committed_vehicle_units[v];
    if (committed_units >= m.participation_min_units) continue;
    if (committed_units != 0)
      throw Error("committed plan leaves a vehicle below the pay threshold");
    Variable var;
    var.name = "y_v" + std::to_string(v);
    var.role = VarRole::Participation;
    var.vehicle = v;
    participation_var[v] = static_cast<int>(m.variables.size());
    m.variables.push_back(std::move(var));
  }
  m.n_participation =
      static_cast<int>(m.variables.size()) - m.first_participation;

  bool fairness = kind.has_fairness() && m.n_sensors > 0 && m.n_vehicles > 0 &&
                  m.horizon_slots > 0;
  if (fairness) {
    Variable zmax;
    zmax.name = "z_max";
    zmax.role = VarRole::FairnessMax;
    zmax.is_binary = false;
    zmax.ub = Rational(m.horizon_slots);
    m.fairness_max_var = static_cast<int>(m.variables.size());
    m.variables.push_back(std::move(zmax));
    Variable zmin;
    zmin.name = "z_min";
    zmin.role = VarRole::FairnessMin;
    zmin.is_binary = false;
    zmin.ub = Rational(m.horizon_slots);
    m.fairness_min_var = static_cast<int>(m.variables.size());
    m.variables.push_back(std::move(zmin));
  }

  m.gap_scope.assign(m.n_sensors, 1);
  if (kind.reachable_sensors_only) {
    m.gap_scope.assign(m.n_sensors, 0);
    for (const ContactEvent& e : contacts.events) m.gap_scope[e.sensor] = 1;
  }

  // (1) budget, in whole units.
  {
    Row row;
    row.name = "budget";
    row.cls = RowClass::Budget;
    row.sense = RowSense::Le;
    row.rhs = budget_units;
    for (int i = 0; i < m.n_transmissions; ++i) row.terms.push_back({i, 1});
    m.rows.push_back(std::move(row));
  }

  // (3) one transmission per (sensor, slot).
  {
    int i = 0;
    while (i < m.n_transmissions) {
      int j = i;
      while (j < m.n_transmissions && m.events[j].slot == m.events[i].slot &&
             m.events[j].sensor == m.events[i].sensor)
        ++j;
      if (j - i >= 2) {
        Row row;
        row.name = "uni_s" + std::to_string(m.events[i].sensor) + "_t" +
                   std::to_string(m.events[i].slot);
        row.cls = RowClass::SensorSlotUnicast;
        row.sense = RowSense::Le;
        row.rhs = 1;
        for (int k = i; k < j; ++k) row.terms.push_back({k, 1});
        m.rows.push_back(std::move(row));
      }
      i = j;
    }
  }

  // (4) buffer causality: cumulative transmissions per sensor never outrun
  // generation. Rows are needed at contacted slots and, because committed
  // units can make the remaining headroom dip later, at committed slots too;
  // slots in between are implied since the cap only grows there.
  {
    std::vector<std::vector<int>> sensor_vars(m.n_sensors);
    for (int i = 0; i < m.n_transmissions; ++i)
      sensor_vars[m.events[i].sensor].push_back(i);
    for (int sensor = 0; sensor < m.n_sensors; ++sensor) {
      const std::vector<int>& vars = sensor_vars[sensor];
      std::vector<int> slots;
      for (int i : vars) slots.push_back(m.events[i].slot);
      if (!m.committed_sensor_slots.empty())
        for (int t : m.committed_sensor_slots[sensor]) slots.push_back(t);
      std::sort(slots.begin(), slots.end());
      slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
      size_t next_var = 0;
      for (int slot : slots) {
        long long rhs = m.buffer_headroom_through(sensor, slot);
        if (rhs < 0)
          throw Error("committed plan violates buffer causality");
        while (next_var < vars.size() &&
               m.events[vars[next_var]].slot <= slot)
          ++next_var;
        if (next_var == 0) continue;
        Row row;
        row.name =
            "buf_s" + std::to_string(sensor) + "_t" + std::to_string(slot);
        row.cls = RowClass::BufferCausality;
        row.sense = RowSense::Le;
        row.rhs = rhs;
        for (size_t k = 0; k < next_var; ++k)
          row.terms.push_back({vars[k], 1});
        m.rows.push_back(std::move(row));
      }
    }
  }

  // (2)+(6)+(7) linearized participation: a vehicle either relays nothing or
  // relays enough units to be paid strictly more than c_min.
  for (int v = 0; v < m.n_vehicles; ++v) {
    int y = participation_var[v];
    if (y < 0) continue;
    long long upper = static_cast<long long>(vehicle_vars[v].size());
    Row ub;
    ub.name = "part_ub_v" + std::to_string(v);
    ub.cls = RowClass::ParticipationUpper;
    ub.sense = RowSense::Le;
    ub.rhs = 0;
    for (int i : vehicle_vars[v]) ub.terms.push_back({i, 1});
    ub.terms.push_back({y, -upper});
    m.rows.push_back(std::move(ub));
    Row lb;
    lb.name = "part_lb_v" + std::to_string(v);
    lb.cls = RowClass::ParticipationLower;
    lb.sense = RowSense::Ge;
    lb.rhs = 0;
    for (int i : vehicle_vars[v]) lb.terms.push_back({i, 1});
    lb.terms.push_back({y, -m.participation_min_units});
    m.rows.push_back(std::move(lb));
  }

  // Optional strict cap on units per vehicle.
  if (kind.per_vehicle_cap) {
    long long cap = *kind.per_vehicle_cap - 1;
    for (int v = 0; v < m.n_vehicles; ++v) {
      if (vehicle_vars[v].empty()) continue;
      Row row;
      row.name = "cap_v" + std::to_string(v);
      row.cls = RowClass::VehicleCap;
      row.sense = RowSense::Le;
      row.rhs = cap - m.committed_vehicle_units[v];
      if (row.rhs < 0)
        throw Error("committed plan already exceeds the per-vehicle cap");
      for (int i : vehicle_vars[v]) row.terms.push_back({i, 1});
      m.rows.push_back(std::move(row));
    }
  }

  // Optional: a vehicle accepts at most one unit per slot across sensors.
  if (kind.vehicle_exclusivity) {
    std::map<std::pair<int, int>, std::vector<int>> by_vehicle_slot;
    for (int i = 0; i < m.n_transmissions; ++i)
      by_vehicle_slot[{m.events[i].vehicle, m.events[i].slot}].push_back(i);
    for (const auto& [key, vars] : by_vehicle_slot) {
      if (vars.size() < 2) continue;
      Row row;
      row.name = "excl_v" + std::to_string(key.first) + "_t" +
                 std::to_string(key.second);
      row.cls = RowClass::VehicleExclusive;
      row.sense = RowSense::Le;
      row.rhs = 1;
      for (int i : vars) row.terms.push_back({i, 1});
      m.rows.push_back(std::move(row));
    }
  }

  // (9)+(10) fairness envelope: z_max / z_min bound every in-scope sensor's
  // unit count.
  if (fairness) {
    std::vector<std::vector<int>> sensor_vars(m.n_sensors);
    for (int i = 0; i < m.n_transmissions; ++i)
      sensor_vars[m.events[i].sensor].push_back(i);
    for (int sensor = 0; sensor < m.n_sensors; ++sensor) {
      if (!m.gap_scope[sensor]) continue;
      long long committed_units = m.committed_sensor_slots.empty()
                                      ? 0
                                      : static_cast<long long>(
                                            m.committed_sensor_slots[sensor]
                                                .size());
      Row ub;
      ub.name = "fair_ub_s" + std::to_string(sensor);
      ub.cls = RowClass::FairnessUpper;
      ub.sense = RowSense::Le;
      ub.rhs = -committed_units;
      for (int i : sensor_vars[sensor]) ub.terms.push_back({i, 1});
      ub.terms.push_back({m.fairness_max_var, -1});
      m.rows.push_back(std::move(ub));
      Row lb;
      lb.name = "fair_lb_s" + std::to_string(sensor);
      lb.cls = RowClass::FairnessLower;
      lb.sense = RowSense::Ge;
      lb.rhs = -committed_units;
      for (int i : sensor_vars[sensor]) lb.terms.push_back({i, 1});
      lb.terms.push_back({m.fairness_min_var, -1});
      m.rows.push_back(std::move(lb));
    }
  }

  // (11) delay rows, integerized exactly: with gen_rate = p/q and effective
  // bound = a/b, a transmission at slot t requires the sensor's cumulative
  // count S(t) to satisfy t - S(t)*q/p < a/b, i.e.
  //   p*b*t*x - q*b*S(t) <= a*p - 1.
  if (kind.has_delay()) {
    if (!kind.delay_bound_s)
      throw Error("delay-bounded model requires delay_bound_s");
    Rational bound = kind.effective_delay_bound();
    long long p = m.gen_rate.num();
    long long q = m.gen_rate.den();
    long long a = bound.num();
    long long b = bound.den();
    if (bound <= Rational(0)) throw Error("effective delay bound must be > 0");
    std::vector<std::vector<int>> sensor_vars(m.n_sensors);
    for (int i = 0; i < m.n_transmissions; ++i)
      sensor_vars[m.events[i].sensor].push_back(i);
    for (int e = 0; e < m.n_transmissions; ++e) {
      const ContactEvent& ev = m.events[e];
      Row row;
      row.name = "delay_v" + std::to_string(ev.vehicle) + "_s" +
                 std::to_string(ev.sensor) + "_t" + std::to_string(ev.slot);
      row.cls = RowClass::Delay;
      row.sense = RowSense::Le;
      long long committed_units = m.committed_before(ev.sensor, ev.slot);
      row.rhs = checked_mul(a, p) - 1 +
                checked_mul(checked_mul(q, b), committed_units);
      long long own = checked_mul(checked_mul(p, b), ev.slot);
      bool own_seen = false;
      for (int i : sensor_vars[ev.sensor]) {
        if (m.events[i].slot > ev.slot) break;
        long long coeff = -checked_mul(q, b);
        if (i == e) {
          coeff += own;
          own_seen = true;
        }
        if (coeff != 0) row.terms.push_back({i, coeff});
      }
      if (!own_seen && own != 0) row.terms.push_back({e, own});
      m.rows.push_back(std::move(row));
    }
  }

  // Objective.
  if (!kind.has_fairness()) {
    for (int i = 0; i < m.n_transmissions; ++i)
      m.objective.push_back({i, Rational(1)});
  } else if (fairness) {
    Rational svt = Rational(m.n_sensors) * Rational(m.n_vehicles) *
                   Rational(m.horizon_slots);
    Rational vt = Rational(m.n_vehicles) * Rational(m.horizon_slots);
    Rational fw = kind.fairness_weight;
    for (int i = 0; i < m.n_transmissions; ++i)
      m.objective.push_back({i, fw / svt});
    Rational gap_weight = (Rational(1) - fw) / vt;
    m.objective.push_back({m.fairness_max_var, -gap_weight});
    m.objective.push_back({m.fairness_min_var, gap_weight});
  }

  return m;
}

}  // namespace

LinearModel build_model(const Scenario& s, const ContactSet& contacts,
                        const ProblemKind& kind) {
  return build_impl(s, contacts, kind, Schedule{}, {},
                    s.params.budget_units());
}

LinearModel build_residual_model(const Scenario& s, const ContactSet& contacts,
                                 const Schedule& committed,
                                 const std::vector<char>& vehicle_eligible,
                                 long long budget_units) {
  ProblemKind kind;
  kind.family = ProblemFamily::Cspv;
  kind.per_vehicle_cap = s.params.per_vehicle_cap;
  return build_impl(s, contacts, kind, committed, vehicle_eligible,
                    budget_units);
}

namespace {

std::string coeff_text(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void write_terms(std::ostream& os, const LinearModel& m,
                 const std::vector<std::pair<int, long long>>& terms) {
  bool first = true;
  for (const auto& [var, coeff] : terms) {
    if (coeff >= 0)
      os << (first ? "" : " + ") << coeff;
    else
      os << (first ? "- " : " - ") << -coeff;
    os << " " << m.variables[var].name;
    first = false;
  }
}

}  // namespace

void write_lp(const LinearModel& m, std::ostream& os) {
  os << "\\ " << problem_family_name(m.kind.family) << " over "
     << m.n_transmissions << " contact events\n";
  os << "Maximize\n obj:";
  if (m.objective.empty()) os << " 0";
  bool first = true;
  for (const auto& [var, coeff] : m.objective) {
    double c = coeff.to_double();
    if (c >= 0)
      os << (first ? " " : " + ") << coeff_text(c);
    else
      os << (first ? " -" : " - ") << coeff_text(-c);
    os << " " << m.variables[var].name;
    first = false;
  }
  os << "\nSubject To\n";
  for (const Row& row : m.rows) {
    os << " " << row.name << ": ";
    write_terms(os, m, row.terms);
    os << (row.sense == RowSense::Le ? " <= " : " >= ") << row.rhs << "\n";
  }
  bool have_bounds = false;
  for (const Variable& v : m.variables) {
    if (v.is_binary) continue;
    if (!have_bounds) {
      os << "Bounds\n";
      have_bounds = true;
    }
    os << " " << coeff_text(v.lb.to_double()) << " <= " << v.name
       << " <= " << coeff_text(v.ub.to_double()) << "\n";
  }
  bool have_binaries = false;
  for (const Variable& v : m.variables) {
    if (!v.is_binary) continue;
    if (!have_binaries) {
      os << "Binaries\n";
      have_binaries = true;
    }
    os << " " << v.name << "\n";
  }
  os << "End\n";
}

}  // namespace mulesched
