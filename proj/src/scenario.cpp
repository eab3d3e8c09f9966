#include "mulesched/scenario.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace mulesched {

Schedule Schedule::of(std::vector<Transmission> list) {
  std::sort(list.begin(), list.end(),
            [](const Transmission& a, const Transmission& b) {
              if (canonical_less(a, b)) return true;
              if (canonical_less(b, a)) return false;
              return false;
            });
  list.erase(std::unique(list.begin(), list.end()), list.end());
  Schedule s;
  s.transmissions = std::move(list);
  return s;
}

const char* violation_code_name(Violation::Code code) {
  switch (code) {
    case Violation::Code::NonPositiveHorizon: return "NonPositiveHorizon";
    case Violation::Code::EmptyTrajectory: return "EmptyTrajectory";
    case Violation::Code::NonMonotoneTimestamps: return "NonMonotoneTimestamps";
    case Violation::Code::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case Violation::Code::TimestampOutOfHorizon: return "TimestampOutOfHorizon";
    case Violation::Code::DuplicateVehicleId: return "DuplicateVehicleId";
    case Violation::Code::DuplicateSensorId: return "DuplicateSensorId";
    case Violation::Code::FairnessWeightOutOfRange:
      return "FairnessWeightOutOfRange";
    case Violation::Code::NegativeMinCompensation:
      return "NegativeMinCompensation";
    case Violation::Code::NonPositiveBudget: return "NonPositiveBudget";
    case Violation::Code::MinCompensationExceedsBudget:
      return "MinCompensationExceedsBudget";
    case Violation::Code::NonPositiveRange: return "NonPositiveRange";
    case Violation::Code::NonPositiveGenRate: return "NonPositiveGenRate";
    case Violation::Code::NonPositiveUnitCost: return "NonPositiveUnitCost";
    case Violation::Code::NonPositiveUnitSize: return "NonPositiveUnitSize";
    case Violation::Code::NonPositiveVehicleCap:
      return "NonPositiveVehicleCap";
    case Violation::Code::NonPositiveDelayBound:
      return "NonPositiveDelayBound";
    case Violation::Code::NegativeDelayTolerance:
      return "NegativeDelayTolerance";
    case Violation::Code::BudgetExceeded: return "BudgetExceeded";
    case Violation::Code::CompensationAtOrBelowMinimum:
      return "CompensationAtOrBelowMinimum";
    case Violation::Code::DuplicateSensorSlot: return "DuplicateSensorSlot";
    case Violation::Code::BufferUnderflow: return "BufferUnderflow";
    case Violation::Code::OutOfRangeTransmission:
      return "OutOfRangeTransmission";
    case Violation::Code::UnknownIndex: return "UnknownIndex";
    case Violation::Code::VehicleCapExceeded: return "VehicleCapExceeded";
    case Violation::Code::DelayBoundExceeded: return "DelayBoundExceeded";
    case Violation::Code::VehicleSlotConflict: return "VehicleSlotConflict";
    case Violation::Code::InconsistentResult: return "InconsistentResult";
  }
  return "Unknown";
}

namespace {

bool coordinate_ok(double lat, double lon) {
  return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
}

void add(std::vector<Violation>& out, Violation::Code code,
         std::string message) {
  out.push_back(Violation{code, std::move(message)});
}

}  // namespace

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;

  if (s.grid.horizon_slots < 1)
    add(out, Violation::Code::NonPositiveHorizon,
        "horizon_slots must be at least 1");

  const ParamSet& p = s.params;
  if (p.fairness_weight < Rational(0) || p.fairness_weight > Rational(1))
    add(out, Violation::Code::FairnessWeightOutOfRange,
        "fairness_weight must lie in [0, 1]");
  if (p.c_min < Rational(0))
    add(out, Violation::Code::NegativeMinCompensation, "c_min must be >= 0");
  if (p.c_max <= Rational(0))
    add(out, Violation::Code::NonPositiveBudget, "c_max must be > 0");
  if (p.c_min >= p.c_max)
    add(out, Violation::Code::MinCompensationExceedsBudget,
        "c_min must be strictly below c_max");
  if (!(p.range_m > 0.0))
    add(out, Violation::Code::NonPositiveRange, "range_m must be > 0");
  if (p.gen_rate <= Rational(0))
    add(out, Violation::Code::NonPositiveGenRate, "gen_rate must be > 0");
  if (p.unit_cost <= Rational(0))
    add(out, Violation::Code::NonPositiveUnitCost, "unit_cost must be > 0");
  if (p.unit_size_bytes <= 0)
    add(out, Violation::Code::NonPositiveUnitSize,
        "unit_size_bytes must be > 0");
  if (p.per_vehicle_cap && *p.per_vehicle_cap <= 0)
    add(out, Violation::Code::NonPositiveVehicleCap,
        "per_vehicle_cap must be > 0");
  if (p.delay_bound_s && *p.delay_bound_s <= Rational(0))
    add(out, Violation::Code::NonPositiveDelayBound,
        "delay_bound_s must be > 0");
  if (p.delay_tolerance && *p.delay_tolerance < Rational(0))
    add(out, Violation::Code::NegativeDelayTolerance,
        "delay_tolerance must be >= 0");

  std::unordered_set<std::string> vehicle_ids;
  for (size_t i = 0; i < s.vehicles.size(); ++i) {
    const VehicleTrajectory& v = s.vehicles[i];
    if (!vehicle_ids.insert(v.id).second)
      add(out, Violation::Code::DuplicateVehicleId,
          "duplicate vehicle id: " + v.id);
    if (v.samples.empty()) {
      add(out, Violation::Code::EmptyTrajectory,
          "vehicle " + v.id + " has no samples");
      continue;
    }
    for (size_t k = 0; k < v.samples.size(); ++k) {
      const TrajectorySample& smp = v.samples[k];
      if (k > 0 && !(smp.t > v.samples[k - 1].t)) {
        add(out, Violation::Code::NonMonotoneTimestamps,
            "vehicle " + v.id + " timestamps not strictly increasing at #" +
                std::to_string(k));
        break;
      }
    }
    for (const TrajectorySample& smp : v.samples) {
      if (!coordinate_ok(smp.lat, smp.lon)) {
        add(out, Violation::Code::CoordinateOutOfRange,
            "vehicle " + v.id + " sample outside lat/lon bounds");
        break;
      }
    }
    if (s.grid.horizon_slots >= 1) {
      double horizon = static_cast<double>(s.grid.horizon_slots);
      if (v.samples.front().t < 0.0 || v.samples.back().t >= horizon)
        add(out, Violation::Code::TimestampOutOfHorizon,
            "vehicle " + v.id + " samples leave [0, horizon_slots)");
    }
  }

  std::unordered_set<std::string> sensor_ids;
  for (const Sensor& sensor : s.sensors) {
    if (!sensor_ids.insert(sensor.id).second)
      add(out, Violation::Code::DuplicateSensorId,
          "duplicate sensor id: " + sensor.id);
    if (!coordinate_ok(sensor.lat, sensor.lon))
      add(out, Violation::Code::CoordinateOutOfRange,
          "sensor " + sensor.id + " outside lat/lon bounds");
  }

  return out;
}

Rational compensation_of(const Schedule& sched, int vehicle,
                         const ParamSet& params) {
  if (vehicle < 0) throw Error("unknown vehicle index: negative");
  long long count = 0;
  for (const Transmission& tx : sched.transmissions)
    if (tx.vehicle == vehicle) ++count;
  return params.unit_cost * Rational(count);
}

std::set<int> participants_of(const Schedule& sched, const ParamSet& params) {
  std::map<int, long long> counts;
  for (const Transmission& tx : sched.transmissions) ++counts[tx.vehicle];
  std::set<int> result;
  for (const auto& [vehicle, count] : counts)
    if (params.unit_cost * Rational(count) > params.c_min)
      result.insert(vehicle);
  return result;
}

SolveResult make_solve_result(const Schedule& sched, const ParamSet& params,
                              const Rational& objective, SolverStats stats) {
  SolveResult r;
  r.schedule = sched;
  std::map<int, long long> counts;
  for (const Transmission& tx : sched.transmissions) ++counts[tx.vehicle];
  for (const auto& [vehicle, count] : counts) {
    Rational pay = params.unit_cost * Rational(count);
    r.compensation[vehicle] = pay;
    r.total_spend += pay;
    if (pay > params.c_min) r.participants.insert(vehicle);
  }
  r.objective_value = objective;
  r.stats = stats;
  return r;
}

}  // namespace mulesched
