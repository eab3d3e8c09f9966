#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "mulesched/feasibility.hpp"
#include "mulesched/greedy.hpp"
#include "mulesched/io.hpp"
#include "mulesched/metrics.hpp"
#include "mulesched/simulator.hpp"
#include "mulesched/solve.hpp"
#include "mulesched/version.hpp"

namespace py = pybind11;
using namespace mulesched;

namespace {

ProblemFamily family_of(const std::string& name) {
  if (name == "cspv") return ProblemFamily::Cspv;
  if (name == "fcspv") return ProblemFamily::FCspv;
  if (name == "dfcspv") return ProblemFamily::DfCspv;
  throw Error("unknown family: " + name);
}

py::list schedule_to_list(const Schedule& sched) {
  py::list out;
  for (const Transmission& tx : sched.transmissions)
    out.append(py::make_tuple(tx.vehicle, tx.sensor, tx.slot));
  return out;
}

py::dict result_to_dict(const Scenario& s, const ProblemKind& kind,
                        const SolveResult& res,
                        const std::vector<char>& gap_scope) {
  MetricsReport m = compute_metrics(s, res.schedule, kind, gap_scope);
  py::dict d;
  d["objective"] = res.objective_value.to_double();
  d["objective_exact"] = res.objective_value.to_string();
  d["transmissions"] = schedule_to_list(res.schedule);
  py::list participants;
  for (int v : res.participants) participants.append(v);
  d["participants"] = participants;
  py::dict pay;
  for (const auto& [vehicle, comp] : res.compensation)
    pay[py::int_(vehicle)] = comp.to_string();
  d["compensation"] = pay;
  d["total_spend"] = res.total_spend.to_double();
  d["total_spend_exact"] = res.total_spend.to_string();
  d["fairness_gap"] = m.fairness_gap;
  d["per_sensor_units"] = m.per_sensor;
  d["proven_optimal"] = res.stats.proven_optimal;
  d["nodes_explored"] = res.stats.nodes_explored;
  if (m.has_delays) {
    d["mean_delay_s"] = m.mean_delay.to_double();
    d["max_delay_s"] = m.max_delay.to_double();
  }
  return d;
}

ProblemKind kind_for(const Scenario& s, const std::string& family,
                     bool strict_buffer, bool vehicle_exclusivity,
                     bool reachable_only) {
  ProblemKind kind = ProblemKind::from_params(family_of(family), s.params);
  kind.strict_buffer_boundary = strict_buffer;
  kind.vehicle_exclusivity = vehicle_exclusivity;
  kind.reachable_sensors_only = reachable_only;
  return kind;
}

}  // namespace

PYBIND11_MODULE(mulesched, m) {
  m.doc() = "data mule scheduling over vehicle trajectories";
  m.attr("__version__") = kVersion;

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly(
          "n_vehicles",
          [](const Scenario& s) { return s.vehicles.size(); })
      .def_property_readonly(
          "n_sensors", [](const Scenario& s) { return s.sensors.size(); })
      .def_property_readonly(
          "horizon_slots",
          [](const Scenario& s) { return s.grid.horizon_slots; });

  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def(
      "scenario_from_json",
      [](const std::string& text) {
        return scenario_from_json(nlohmann::json::parse(text));
      },
      py::arg("text"));
  m.def(
      "scenario_to_json",
      [](const Scenario& s) { return scenario_to_json(s).dump(2); },
      py::arg("scenario"));

  m.def(
      "validate",
      [](const Scenario& s) {
        py::list out;
        for (const Violation& v : validate_scenario(s))
          out.append(py::make_tuple(violation_code_name(v.code), v.message));
        return out;
      },
      py::arg("scenario"), "scenario violations as (code, message) pairs");

  m.def(
      "validate_schedule",
      [](const Scenario& s, const std::vector<std::vector<int>>& txs,
         const std::string& family) {
        std::vector<Transmission> list;
        for (const std::vector<int>& t : txs) {
          if (t.size() != 3)
            throw Error("transmissions must be (vehicle, sensor, slot)");
          list.push_back(Transmission{t[0], t[1], t[2]});
        }
        ProblemKind kind = kind_for(s, family, false, false, false);
        py::list out;
        for (const Violation& v :
             validate_schedule(s, Schedule::of(std::move(list)), kind))
          out.append(py::make_tuple(violation_code_name(v.code), v.message));
        return out;
      },
      py::arg("scenario"), py::arg("transmissions"),
      py::arg("family") = "cspv");

  m.def(
      "solve",
      [](const Scenario& s, const std::string& family,
         std::optional<double> time_budget, bool strict_buffer,
         bool vehicle_exclusivity, bool reachable_only) {
        ProblemKind kind = kind_for(s, family, strict_buffer,
                                    vehicle_exclusivity, reachable_only);
        ContactSet contacts = extract_contacts(s);
        LinearModel model = build_model(s, contacts, kind);
        SolveResult res = solve_exact(model, time_budget);
        return result_to_dict(s, kind, res, model.gap_scope);
      },
      py::arg("scenario"), py::arg("family") = "cspv",
      py::arg("time_budget") = std::nullopt,
      py::arg("strict_buffer") = false,
      py::arg("vehicle_exclusivity") = false,
      py::arg("reachable_only") = false,
      "exact branch-and-bound plan; see solve.hpp for the tie-break rule");

  m.def(
      "oracle",
      [](const Scenario& s, const std::string& family) {
        ProblemKind kind = kind_for(s, family, false, false, false);
        ContactSet contacts = extract_contacts(s);
        LinearModel model = build_model(s, contacts, kind);
        SolveResult res = solve_bruteforce(model);
        return result_to_dict(s, kind, res, model.gap_scope);
      },
      py::arg("scenario"), py::arg("family") = "cspv",
      "exhaustive reference solve (tiny instances only)");

  m.def(
      "greedy",
      [](const Scenario& s, bool recycle, bool strict_buffer,
         bool return_removed_units) {
        ContactSet contacts = extract_contacts(s);
        GreedyReport report =
            recycle ? run_greedy_recycling(s, contacts, strict_buffer,
                                           return_removed_units)
                    : run_greedy(s, contacts, strict_buffer);
        ProblemKind kind =
            kind_for(s, "cspv", strict_buffer, false, false);
        py::dict d = result_to_dict(s, kind, report.result, {});
        d["passes"] = report.passes;
        d["excluded_vehicles"] = report.excluded_vehicles;
        d["reclaimed_exact"] = report.reclaimed.to_string();
        return d;
      },
      py::arg("scenario"), py::arg("recycle") = false,
      py::arg("strict_buffer") = false,
      py::arg("return_removed_units") = false);

  m.def(
      "penetration",
      [](const Scenario& s, double rate, unsigned long long seed,
         const std::string& planner, const std::string& replan,
         std::optional<double> time_budget) {
        ContactSet contacts = extract_contacts(s);
        ProblemKind kind = kind_for(s, "cspv", false, false, false);
        SolveResult planned;
        if (planner == "exact")
          planned = solve_exact(build_model(s, contacts, kind), time_budget);
        else if (planner == "greedy")
          planned = run_greedy(s, contacts).result;
        else
          throw Error("unknown planner: " + planner);
        ReplanMode mode;
        if (replan == "none") mode = ReplanMode::None;
        else if (replan == "exact") mode = ReplanMode::Exact;
        else if (replan == "greedy") mode = ReplanMode::Greedy;
        else throw Error("unknown replan mode: " + replan);
        PenetrationConfig config;
        config.show_rate = rate;
        config.seed = seed;
        PenetrationOutcome outcome =
            apply_penetration(s, contacts, planned, config, mode,
                              time_budget);
        py::dict d = result_to_dict(s, kind, outcome.result, {});
        d["planned_units"] = planned.schedule.size();
        d["committed_units"] = outcome.committed.size();
        d["replanned_units"] = outcome.replanned_units;
        d["shown"] = outcome.shown;
        d["no_shows"] = outcome.no_shows;
        return d;
      },
      py::arg("scenario"), py::arg("rate"), py::arg("seed") = 1,
      py::arg("planner") = "exact", py::arg("replan") = "none",
      py::arg("time_budget") = std::nullopt);

  m.def(
      "sweep_fairness",
      [](const Scenario& s, const std::vector<std::string>& weights,
         std::optional<double> time_budget) {
        ContactSet contacts = extract_contacts(s);
        std::vector<Rational> ws;
        for (const std::string& w : weights) ws.push_back(Rational::parse(w));
        py::list out;
        for (const SweepPoint& pt :
             sweep_fairness(s, contacts, ws, ProblemFamily::FCspv,
                            time_budget)) {
          py::dict d;
          d["weight"] = pt.weight.to_string();
          d["transmissions"] = pt.transmissions;
          d["fairness_gap"] = pt.fairness_gap;
          d["objective_exact"] = pt.objective.to_string();
          d["proven_optimal"] = pt.proven_optimal;
          out.append(d);
        }
        return out;
      },
      py::arg("scenario"), py::arg("weights"),
      py::arg("time_budget") = std::nullopt);

  m.def(
      "baseline_units",
      [](const std::string& spend, const std::string& price_per_mb,
         long long unit_bytes) {
        return baseline_units(Rational::parse(spend),
                              Rational::parse(price_per_mb), unit_bytes);
      },
      py::arg("spend"), py::arg("price_per_mb"), py::arg("unit_bytes") = 1024,
      "units a direct uplink ships for the same spend");

  m.def(
      "cost_ratio",
      [](const std::string& direct, const std::string& mule) {
        return cost_ratio(Rational::parse(direct), Rational::parse(mule))
            .to_string();
      },
      py::arg("direct"), py::arg("mule"));
}
