#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mulesched/rational.hpp"

namespace mulesched {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

struct TrajectorySample {
  double t = 0.0;  // seconds since scenario epoch
  double lat = 0.0;
  double lon = 0.0;
};

struct VehicleTrajectory {
  std::string id;
  std::vector<TrajectorySample> samples;  // strictly increasing timestamps
};

struct Sensor {
  std::string id;
  double lat = 0.0;
  double lon = 0.0;
};

/// Discrete planning horizon. Slot t covers the second [t, t+1); slots are
/// 0-based and a data unit finishing generation during a slot may already be
/// transmitted in that slot.
struct TimeGrid {
  int horizon_slots = 0;
};

struct ParamSet {
  Rational unit_cost{1};   // dollars paid per relayed data unit
  double range_m = 2000.0; // communication range
  Rational gen_rate{1};    // data units generated per second per sensor
  Rational c_min{2};       // minimum total compensation to participate ($)
  Rational c_max{1000};    // campaign budget ($)
  Rational fairness_weight{1, 2};        // weight on throughput vs gap, in [0,1]
  std::optional<Rational> delay_bound_s; // per-unit delay bound
  std::optional<Rational> delay_tolerance;  // relative slack on the bound
  std::optional<int> per_vehicle_cap;       // strict cap: units per vehicle < cap
  int unit_size_bytes = 1024;

  static Rational unit_cost_from_price_per_mb(const Rational& price_per_mb,
                                              int unit_size_bytes) {
    return price_per_mb * Rational(unit_size_bytes, 1 << 20);
  }

  /// Smallest unit count whose pay strictly exceeds c_min.
  long long participation_min_units() const {
    return (c_min / unit_cost).floor() + 1;
  }

  /// Largest unit count affordable within c_max.
  long long budget_units() const { return (c_max / unit_cost).floor(); }

  /// Units a sensor may have transmitted through slot `slot` (cumulative).
  /// The strict variant excludes data generated during the slot itself.
  long long units_available_through(long long slot, bool strict) const {
    return (gen_rate * Rational(slot + (strict ? 0 : 1))).floor();
  }
};

struct Scenario {
  TimeGrid grid;
  std::vector<VehicleTrajectory> vehicles;
  std::vector<Sensor> sensors;
  ParamSet params;
};

struct Transmission {
  int vehicle = 0;
  int sensor = 0;
  int slot = 0;

  friend bool operator==(const Transmission&, const Transmission&) = default;
};

/// Canonical order used everywhere a deterministic sequence is needed.
inline bool canonical_less(const Transmission& a, const Transmission& b) {
  if (a.slot != b.slot) return a.slot < b.slot;
  if (a.sensor != b.sensor) return a.sensor < b.sensor;
  return a.vehicle < b.vehicle;
}

/// A set of planned transmissions, kept in canonical (slot, sensor, vehicle)
/// order. Uniqueness per (sensor, slot) is a solver guarantee checked by the
/// schedule validator, not a container invariant, so that the validator can
/// still describe violating inputs.
struct Schedule {
  std::vector<Transmission> transmissions;

  static Schedule of(std::vector<Transmission> list);

  size_t size() const { return transmissions.size(); }
  bool empty() const { return transmissions.empty(); }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct SolverStats {
  long long nodes_explored = 0;
  double wall_time_s = 0.0;
  bool proven_optimal = false;
  std::optional<double> dual_bound;  // valid upper bound when not proven
};

struct SolveResult {
  Schedule schedule;
  std::set<int> participants;            // vehicle indices
  std::map<int, Rational> compensation;  // vehicle index -> dollars
  Rational objective_value{0};
  Rational total_spend{0};
  SolverStats stats;
};

struct Violation {
  enum class Code {
    NonPositiveHorizon,
    EmptyTrajectory,
    NonMonotoneTimestamps,
    CoordinateOutOfRange,
    TimestampOutOfHorizon,
    DuplicateVehicleId,
    DuplicateSensorId,
    FairnessWeightOutOfRange,
    NegativeMinCompensation,
    NonPositiveBudget,
    MinCompensationExceedsBudget,
    NonPositiveRange,
    NonPositiveGenRate,
    NonPositiveUnitCost,
    NonPositiveUnitSize,
    NonPositiveVehicleCap,
    NonPositiveDelayBound,
    NegativeDelayTolerance,
    BudgetExceeded,
    CompensationAtOrBelowMinimum,
    DuplicateSensorSlot,
    BufferUnderflow,
    OutOfRangeTransmission,
    UnknownIndex,
    VehicleCapExceeded,
    DelayBoundExceeded,
    VehicleSlotConflict,
    InconsistentResult,
  };

  Code code;
  std::string message;
};

const char* violation_code_name(Violation::Code code);

}  // namespace mulesched
