#include <vector>

#include "doctest.h"
#include "mulesched/feasibility.hpp"
#include "mulesched/geo.hpp"
#include "mulesched/linear_model.hpp"
#include "mulesched/solve.hpp"
#include "support/tiny.hpp"

using namespace mulesched;
using testsupport::scripted_scenario;
using testsupport::tiny_scenario;

namespace {

// One vehicle, one sensor, contacts in slots 3..8, five affordable units.
Scenario t1_scenario() {
  Scenario s = scripted_scenario(
      1, {{-1, -1, -1, 0, 0, 0, 0, 0, 0, -1}});
  s.params.unit_cost = Rational(1);
  s.params.c_min = Rational(2);
  s.params.c_max = Rational(5);
  s.params.gen_rate = Rational(1);
  return s;
}

std::vector<ProblemKind> kinds_for(const Scenario& s) {
  std::vector<ProblemKind> kinds;
  kinds.push_back(ProblemKind::from_params(ProblemFamily::Cspv, s.params));
  for (Rational fw : {Rational(0), Rational(1, 2), Rational(1)}) {
    ProblemKind k = ProblemKind::from_params(ProblemFamily::FCspv, s.params);
    k.fairness_weight = fw;
    kinds.push_back(k);
  }
  for (long long delay : {2, 5}) {
    ProblemKind k = ProblemKind::from_params(ProblemFamily::DfCspv, s.params);
    k.fairness_weight = Rational(1, 2);
    k.delay_bound_s = Rational(delay);
    kinds.push_back(k);
  }
  return kinds;
}

}  // namespace

TEST_CASE("reference instance: five units, slots three through seven") {
  Scenario s = t1_scenario();
  ContactSet contacts = extract_contacts(s);
  LinearModel m = build_model(s, contacts, ProblemKind::from_params(
                                               ProblemFamily::Cspv, s.params));
  CHECK(m.n_transmissions == 6);
  CHECK(m.n_participation == 1);
  CHECK(m.budget_units == 5);

  SolveResult r = solve_exact(m);
  CHECK(r.objective_value == Rational(5));
  CHECK(r.total_spend == Rational(5));
  CHECK(r.participants == std::set<int>{0});
  CHECK(r.stats.proven_optimal);
  REQUIRE(r.schedule.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(r.schedule.transmissions[i].slot == 3 + i);

  SolveResult oracle = solve_bruteforce(m);
  CHECK(oracle.objective_value == Rational(5));
  CHECK(oracle.schedule == r.schedule);
}

TEST_CASE("exact solver equals the exhaustive oracle on seeded instances") {
  for (unsigned long long seed = 1; seed <= 15; ++seed) {
    Scenario s = tiny_scenario(seed);
    ContactSet contacts = extract_contacts(s);
    for (const ProblemKind& kind : kinds_for(s)) {
      CAPTURE(seed);
      CAPTURE(problem_family_name(kind.family));
      LinearModel m = build_model(s, contacts, kind);
      SolveResult fast = solve_exact(m);
      SolveResult slow = solve_bruteforce(m);
      CHECK(fast.objective_value == slow.objective_value);
      CHECK(fast.schedule == slow.schedule);
      CHECK(fast.stats.proven_optimal);
      CHECK(validate_schedule(s, fast.schedule, kind).empty());
    }
  }
}

TEST_CASE("branching order prefers earlier events among ties") {
  // Two vehicles both in range in every slot; only one unit is affordable.
  Scenario s = scripted_scenario(1, {{0, 0, 0}, {0, 0, 0}});
  s.params.c_max = Rational(1, 100);
  ContactSet contacts = extract_contacts(s);
  LinearModel m = build_model(s, contacts, ProblemKind::from_params(
                                               ProblemFamily::Cspv, s.params));
  SolveResult r = solve_exact(m);
  REQUIRE(r.schedule.size() == 1);
  CHECK(r.schedule.transmissions[0] == Transmission{0, 0, 0});
  CHECK(solve_bruteforce(m).schedule == r.schedule);
}

TEST_CASE("vehicle exclusivity forbids two sensors in one slot") {
  // One vehicle parked between two sensors in range of both.
  Scenario s = scripted_scenario(2, {{0, 0}});
  s.sensors[1].lon = 116.001;  // ~85 m away, inside range of the same spot
  ContactSet contacts = extract_contacts(s);
  REQUIRE(contacts.events.size() == 4);

  ProblemKind kind = ProblemKind::from_params(ProblemFamily::Cspv, s.params);
  SolveResult both = solve_exact(build_model(s, contacts, kind));
  CHECK(both.objective_value == Rational(4));

  kind.vehicle_exclusivity = true;
  LinearModel m = build_model(s, contacts, kind);
  SolveResult one = solve_exact(m);
  CHECK(one.objective_value == Rational(2));
  CHECK(solve_bruteforce(m).objective_value == Rational(2));
  CHECK(validate_schedule(s, one.schedule, kind).empty());
}

TEST_CASE("per-vehicle cap keeps unit counts strictly below the cap") {
  Scenario s = scripted_scenario(1, {{0, 0, 0, 0, 0, 0}});
  s.params.per_vehicle_cap = 3;
  ContactSet contacts = extract_contacts(s);
  LinearModel m = build_model(s, contacts, ProblemKind::from_params(
                                               ProblemFamily::Cspv, s.params));
  SolveResult r = solve_exact(m);
  CHECK(r.objective_value == Rational(2));
  CHECK(solve_bruteforce(m).objective_value == Rational(2));
}

TEST_CASE("fairness weight zero spreads units instead of stacking them") {
  // Sensor 0 is reachable five slots, sensor 1 only one.
  Scenario s = scripted_scenario(2, {{0, 0, 0, 0, 1}});
  s.params.c_max = Rational(4, 100);
  ContactSet contacts = extract_contacts(s);

  ProblemKind kind = ProblemKind::from_params(ProblemFamily::FCspv, s.params);
  kind.fairness_weight = Rational(0);
  LinearModel m = build_model(s, contacts, kind);
  SolveResult r = solve_exact(m);
  // Only the gap matters, so the optimum is any gap-zero set; the canonical
  // one pairs sensor 0's earliest slot with sensor 1's only slot.
  CHECK(r.objective_value == Rational(0));
  CHECK(r.schedule == Schedule::of({Transmission{0, 0, 0},
                                    Transmission{0, 1, 4}}));
  CHECK(solve_bruteforce(m).schedule == r.schedule);

  kind.fairness_weight = Rational(1);
  LinearModel all = build_model(s, contacts, kind);
  SolveResult full = solve_exact(all);
  CHECK(full.schedule.size() == 4);
  CHECK(solve_bruteforce(all).objective_value == full.objective_value);
}

TEST_CASE("delay rows force fresh units to ride out quickly") {
  // Rate 1/2 and bound 4: a transmission at slot 6 needs cumulative count
  // two, so a lone late unit is infeasible but an early pair is fine.
  Scenario s = scripted_scenario(1, {{-1, -1, -1, -1, -1, -1, 0}});
  s.params.gen_rate = Rational(1, 2);
  s.params.delay_bound_s = Rational(4);
  ContactSet contacts = extract_contacts(s);
  ProblemKind kind = ProblemKind::from_params(ProblemFamily::DfCspv, s.params);
  kind.fairness_weight = Rational(1);
  LinearModel m = build_model(s, contacts, kind);
  SolveResult r = solve_exact(m);
  CHECK(r.schedule.empty());
  CHECK(solve_bruteforce(m).schedule.empty());

  Scenario s2 = scripted_scenario(1, {{-1, -1, -1, 0, -1, -1, 0}});
  s2.params.gen_rate = Rational(1, 2);
  s2.params.delay_bound_s = Rational(4);
  ContactSet contacts2 = extract_contacts(s2);
  LinearModel m2 = build_model(s2, contacts2, kind);
  SolveResult r2 = solve_exact(m2);
  CHECK(r2.schedule.size() == 2);
  CHECK(validate_schedule(s2, r2.schedule, kind).empty());
}

TEST_CASE("residual solve respects buffer headroom at committed slots") {
  Scenario s = scripted_scenario(1, {{0, 0, 0, 0, 0, 0}});
  s.params.gen_rate = Rational(1, 2);
  ContactSet contacts = extract_contacts(s);
  Schedule committed =
      Schedule::of({Transmission{0, 0, 2}, Transmission{0, 0, 3}});
  LinearModel m = build_residual_model(s, contacts, committed, {}, 4);
  SolveResult r = solve_exact(m);
  // Slots 0 and 1 would overdraw the buffer once the committed pair lands;
  // only slot 5 still has a generated unit to give.
  REQUIRE(r.schedule.size() == 1);
  CHECK(r.schedule.transmissions[0].slot == 5);
  CHECK(solve_bruteforce(m).schedule == r.schedule);
}

TEST_CASE("decode rejects assignments that break a row") {
  Scenario s = t1_scenario();
  ContactSet contacts = extract_contacts(s);
  LinearModel m = build_model(s, contacts, ProblemKind::from_params(
                                               ProblemFamily::Cspv, s.params));

  std::vector<Rational> all_on(m.variables.size(), Rational(1));
  CHECK_THROWS_AS(decode_solution(m, all_on), Error);  // budget row: 6 > 5

  // One transmission without the participation flag breaks the upper row;
  // with the flag it breaks the lower row (threshold is three units).
  std::vector<Rational> one(m.variables.size(), Rational(0));
  one[0] = Rational(1);
  CHECK_THROWS_AS(decode_solution(m, one), Error);
  one[m.first_participation] = Rational(1);
  CHECK_THROWS_AS(decode_solution(m, one), Error);
}

TEST_CASE("oracle refuses models beyond its enumeration budget") {
  Scenario s;
  s.grid.horizon_slots = 30;
  s.params.c_max = Rational(1000);
  s.sensors.push_back(Sensor{"s0", 40.0, 116.0});
  VehicleTrajectory traj;
  traj.id = "v0";
  for (int t = 0; t < 30; ++t)
    traj.samples.push_back(TrajectorySample{static_cast<double>(t), 40.0,
                                            116.0});
  s.vehicles.push_back(traj);
  ContactSet contacts = extract_contacts(s);
  LinearModel m = build_model(s, contacts, ProblemKind::from_params(
                                               ProblemFamily::Cspv, s.params));
  REQUIRE(m.n_transmissions == 30);
  CHECK_THROWS_AS(solve_bruteforce(m), Error);
}

TEST_CASE("a spent time budget returns an incumbent and a valid bound") {
  // Enough variables that the solver hits its first deadline check while
  // still diving, before any leaf is reached.
  Scenario s;
  s.grid.horizon_slots = 60;
  s.params.c_max = Rational(100);
  s.params.unit_cost = Rational(1, 100);
  for (int j = 0; j < 70; ++j)
    s.sensors.push_back(Sensor{"s" + std::to_string(j), 40.0, 116.0});
  VehicleTrajectory traj;
  traj.id = "v0";
  for (int t = 0; t < 60; ++t)
    traj.samples.push_back(TrajectorySample{static_cast<double>(t), 40.0,
                                            116.0});
  s.vehicles.push_back(traj);
  ContactSet contacts = extract_contacts(s);
  REQUIRE(contacts.events.size() == 4200);

  LinearModel m = build_model(s, contacts, ProblemKind::from_params(
                                               ProblemFamily::Cspv, s.params));
  SolveResult r = solve_exact(m, 0.0);
  CHECK_FALSE(r.stats.proven_optimal);
  REQUIRE(r.stats.dual_bound.has_value());
  CHECK(*r.stats.dual_bound >= r.objective_value.to_double());
  CHECK(r.stats.nodes_explored >= 4096);

  SolveResult full = solve_exact(m);
  CHECK(full.stats.proven_optimal);
  CHECK(*r.stats.dual_bound >= full.objective_value.to_double() - 1e-9);
}
