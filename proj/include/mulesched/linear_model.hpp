#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mulesched/geo.hpp"
#include "mulesched/types.hpp"

namespace mulesched {

enum class ProblemFamily { Cspv, FCspv, DfCspv };

const char* problem_family_name(ProblemFamily family);

/// Which 0-1 program to build, with the knobs that change its rows.
///
/// The default buffer convention lets a unit generated during slot t be
/// transmitted in slot t (cumulative through t is capped by
/// floor((t+1) * gen_rate)); `strict_buffer_boundary` delays availability by
/// one slot. `vehicle_exclusivity` adds the rule that a vehicle accepts at
/// most one unit per slot across sensors. `reachable_sensors_only` restricts
/// the fairness gap to sensors with at least one contact.
struct ProblemKind {
  ProblemFamily family = ProblemFamily::Cspv;
  Rational fairness_weight{1, 2};
  std::optional<Rational> delay_bound_s;
  std::optional<Rational> delay_tolerance;
  std::optional<int> per_vehicle_cap;
  bool vehicle_exclusivity = false;
  bool reachable_sensors_only = false;
  bool strict_buffer_boundary = false;

  static ProblemKind from_params(ProblemFamily family, const ParamSet& p) {
    ProblemKind k;
    k.family = family;
    k.fairness_weight = p.fairness_weight;
    k.delay_bound_s = p.delay_bound_s;
    k.delay_tolerance = p.delay_tolerance;
    k.per_vehicle_cap = p.per_vehicle_cap;
    return k;
  }

  bool has_fairness() const { return family != ProblemFamily::Cspv; }
  bool has_delay() const { return family == ProblemFamily::DfCspv; }

  /// delay_bound_s * (1 + delay_tolerance); requires a bound to be set.
  Rational effective_delay_bound() const {
    Rational tol = delay_tolerance.value_or(Rational(0));
    return *delay_bound_s * (Rational(1) + tol);
  }
};

enum class VarRole { Transmission, Participation, FairnessMax, FairnessMin };

struct Variable {
  std::string name;
  VarRole role;
  bool is_binary = true;
  Rational lb{0};
  Rational ub{1};
  int event = -1;    // index into LinearModel::events for transmissions
  int vehicle = -1;  // vehicle index for participation variables
};

enum class RowSense { Le, Ge };

enum class RowClass {
  Budget,
  SensorSlotUnicast,
  BufferCausality,
  ParticipationUpper,
  ParticipationLower,
  VehicleCap,
  VehicleExclusive,
  FairnessUpper,
  FairnessLower,
  Delay,
};

/// One linear constraint with integer coefficients. Rows are integerized
/// exactly when built (rationals scaled by a common denominator, strict
/// inequalities tightened by one), so feasibility checks need no rounding.
struct Row {
  std::string name;
  RowClass cls;
  RowSense sense;
  long long rhs = 0;
  std::vector<std::pair<int, long long>> terms;  // (variable index, coeff)
};

/// The 0-1 program plus enough context to decode assignments back into
/// schedules and to recompute objectives from first principles. Transmission
/// variables come first and variable i corresponds to events[i].
struct LinearModel {
  std::vector<Variable> variables;
  std::vector<Row> rows;
  std::vector<std::pair<int, Rational>> objective;  // maximize

  ProblemKind kind;
  int n_vehicles = 0;
  int n_sensors = 0;
  int horizon_slots = 0;
  Rational unit_cost{1};
  Rational c_min{0};
  Rational c_max{0};
  Rational gen_rate{1};
  long long budget_units = 0;
  long long participation_min_units = 1;
  std::vector<ContactEvent> events;  // one per transmission variable

  // Residual context: transmissions fixed by an earlier commitment. Empty
  // for ordinary models. Committed units consume budget, buffer capacity,
  // and participation thresholds but have no variables.
  std::vector<long long> committed_vehicle_units;     // per vehicle
  std::vector<std::vector<int>> committed_sensor_slots;  // sorted, per sensor

  int n_transmissions = 0;
  int first_participation = 0;
  int n_participation = 0;
  int fairness_max_var = -1;
  int fairness_min_var = -1;

  long long committed_units_total() const;
  long long committed_before(int sensor, int slot_inclusive) const;

  /// Cumulative transmission cap for a sensor through `slot`, net of
  /// committed units.
  long long buffer_headroom_through(int sensor, int slot) const;

  /// Smallest cumulative count (committed + selected) that keeps a
  /// transmission at (sensor, slot) within the delay bound. 0 when the delay
  /// constraint is inactive or slack at that slot.
  long long delay_floor(int sensor, int slot) const;

  /// Sensors participating in the fairness gap (all by default, contacted
  /// ones only under reachable_sensors_only).
  std::vector<char> gap_scope;

  /// Objective value of a schedule of freshly selected transmissions under
  /// this model's kind, computed from per-sensor counts rather than from the
  /// objective row. Committed units are not part of the score.
  Rational objective_of(const Schedule& sched) const;
};

/// Builds the 0-1 program for the requested problem kind over the in-range
/// contact events. Feasible integer points are exactly the schedules
/// satisfying budget, participation-threshold, per-(sensor,slot) unicast,
/// buffer causality, binary bounds, fairness bookkeeping, and (for the
/// delay-bounded kind) the per-transmission delay rows.
LinearModel build_model(const Scenario& s, const ContactSet& contacts,
                        const ProblemKind& kind);

/// Residual throughput model used for replanning: `committed` transmissions
/// are kept fixed, only `vehicle_eligible` vehicles may receive new units,
/// and at most `budget_units` new units may be bought.
LinearModel build_residual_model(const Scenario& s, const ContactSet& contacts,
                                 const Schedule& committed,
                                 const std::vector<char>& vehicle_eligible,
                                 long long budget_units);

/// LP text format (maximize), coefficients printed with 12 significant
/// digits, rows and variables in model order.
void write_lp(const LinearModel& m, std::ostream& os);

}  // namespace mulesched
