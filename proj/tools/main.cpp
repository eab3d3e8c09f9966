#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mulesched/feasibility.hpp"
#include "mulesched/greedy.hpp"
#include "mulesched/io.hpp"
#include "mulesched/metrics.hpp"
#include "mulesched/simulator.hpp"
#include "mulesched/solve.hpp"
#include "mulesched/version.hpp"

namespace {

using namespace mulesched;

struct Overrides {
  std::string unit_cost, price_per_mb, gen_rate, c_min, c_max;
  std::string fairness_weight, delay_bound, delay_tolerance;
  int per_vehicle_cap = 0;
  double range_m = 0.0;
  int horizon = 0;

  void apply(Scenario& s) const {
    ParamSet& p = s.params;
    if (!unit_cost.empty()) p.unit_cost = Rational::parse(unit_cost);
    if (!price_per_mb.empty())
      p.unit_cost = ParamSet::unit_cost_from_price_per_mb(
          Rational::parse(price_per_mb), p.unit_size_bytes);
    if (!gen_rate.empty()) p.gen_rate = Rational::parse(gen_rate);
    if (!c_min.empty()) p.c_min = Rational::parse(c_min);
    if (!c_max.empty()) p.c_max = Rational::parse(c_max);
    if (!fairness_weight.empty())
      p.fairness_weight = Rational::parse(fairness_weight);
    if (!delay_bound.empty()) p.delay_bound_s = Rational::parse(delay_bound);
    if (!delay_tolerance.empty())
      p.delay_tolerance = Rational::parse(delay_tolerance);
    if (per_vehicle_cap > 0) p.per_vehicle_cap = per_vehicle_cap;
    if (range_m > 0) p.range_m = range_m;
    if (horizon > 0) s.grid.horizon_slots = horizon;
  }
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--unit-cost", o.unit_cost, "dollars per unit, e.g. 3/1024");
  cmd->add_option("--price-per-mb", o.price_per_mb,
                  "derive unit cost from a $/MB price");
  cmd->add_option("--gen-rate", o.gen_rate, "units per second per sensor");
  cmd->add_option("--c-min", o.c_min, "participation threshold in dollars");
  cmd->add_option("--c-max", o.c_max, "campaign budget in dollars");
  cmd->add_option("--fairness-weight", o.fairness_weight,
                  "throughput weight in [0,1]");
  cmd->add_option("--delay-bound", o.delay_bound, "delay bound in seconds");
  cmd->add_option("--delay-tolerance", o.delay_tolerance,
                  "relative slack on the delay bound");
  cmd->add_option("--per-vehicle-cap", o.per_vehicle_cap,
                  "strict per-vehicle unit cap");
  cmd->add_option("--range-m", o.range_m, "communication range in meters");
  cmd->add_option("--horizon", o.horizon, "horizon in one-second slots");
}

ProblemFamily parse_family(const std::string& name) {
  if (name == "cspv") return ProblemFamily::Cspv;
  if (name == "fcspv") return ProblemFamily::FCspv;
  if (name == "dfcspv") return ProblemFamily::DfCspv;
  throw Error("unknown family: " + name + " (expected cspv|fcspv|dfcspv)");
}

Scenario load_checked(const std::string& path, const Overrides& o) {
  Scenario s = load_scenario(path);
  o.apply(s);
  std::vector<Violation> violations = validate_scenario(s);
  if (!violations.empty()) {
    for (const Violation& v : violations)
      std::cerr << violation_code_name(v.code) << ": " << v.message << "\n";
    throw Error("scenario fails validation");
  }
  return s;
}

int check_schedule(const Scenario& s, const Schedule& sched,
                   const ProblemKind& kind) {
  std::vector<Violation> violations = validate_schedule(s, sched, kind);
  for (const Violation& v : violations)
    std::cerr << violation_code_name(v.code) << ": " << v.message << "\n";
  return static_cast<int>(violations.size());
}

// Writes schedule.csv, metrics.csv, delay_cdf.csv, report.json and a
// manifest over them. Everything written here is wall-clock free, so a
// rerun over identical inputs is byte-identical.
void write_run_outputs(const Scenario& s, const ProblemKind& kind,
                       const SolveResult& res, const std::string& out_dir,
                       const std::vector<char>& gap_scope) {
  std::filesystem::create_directories(out_dir);
  MetricsReport m = compute_metrics(s, res.schedule, kind, gap_scope);
  {
    std::ostringstream os;
    write_schedule_csv(s, res.schedule, os);
    write_file(out_dir + "/schedule.csv", os.str());
  }
  {
    std::ostringstream os;
    write_metrics_csv(s, m, os);
    write_file(out_dir + "/metrics.csv", os.str());
  }
  {
    std::ostringstream os;
    write_delay_cdf_csv(delay_cdf(m.delays), os);
    write_file(out_dir + "/delay_cdf.csv", os.str());
  }
  write_file(out_dir + "/report.json",
             report_json(s, kind, res, m).dump(2) + "\n");
  nlohmann::json manifest = manifest_json(
      out_dir,
      {"schedule.csv", "metrics.csv", "delay_cdf.csv", "report.json"});
  write_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

void print_summary(const char* label, const SolveResult& res) {
  std::cout << label << ": objective=" << res.objective_value.to_string()
            << " transmissions=" << res.schedule.size()
            << " participants=" << res.participants.size()
            << " spend=" << res.total_spend.to_string();
  if (res.stats.nodes_explored > 0)
    std::cout << " nodes=" << res.stats.nodes_explored
              << (res.stats.proven_optimal ? " (optimal)" : " (incumbent)");
  std::cout << "\n";
}

double bbox_pad(double lo, double hi) { return lo == hi ? 0.01 : 0.0; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"data mule scheduling over vehicle trajectories"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // validate
  std::string v_scenario, v_schedule, v_family = "cspv";
  Overrides v_over;
  CLI::App* validate =
      app.add_subcommand("validate", "check a scenario (and optionally a "
                                     "schedule) for violations");
  validate->add_option("--scenario", v_scenario, "scenario JSON")->required();
  validate->add_option("--schedule", v_schedule, "schedule CSV to re-check");
  validate->add_option("--family", v_family, "constraint family for the "
                                             "schedule check");
  add_override_flags(validate, v_over);

  // ingest
  std::string i_input, i_output, i_day;
  std::vector<double> i_bbox;
  bool i_strict = false;
  int i_max_vehicles = 0, i_horizon = 0;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "build a scenario from a taxi position log");
  ingest->add_option("--input", i_input, "log file: id,datetime,lon,lat")
      ->required();
  ingest->add_option("--output", i_output, "scenario JSON to write")
      ->required();
  ingest->add_option("--day", i_day, "keep only records on YYYY-MM-DD");
  ingest
      ->add_option("--bbox", i_bbox,
                   "min_lat max_lat min_lon max_lon filter")
      ->expected(4);
  ingest->add_flag("--strict", i_strict, "fail on malformed lines");
  ingest->add_option("--max-vehicles", i_max_vehicles,
                     "keep the first N vehicle ids");
  ingest->add_option("--horizon", i_horizon,
                     "clip to this many slots (default: span of the data)");

  // deploy
  std::string d_scenario, d_output;
  int d_count = 0;
  unsigned long long d_seed = 1;
  std::vector<double> d_bbox;
  CLI::App* deploy = app.add_subcommand(
      "deploy", "place sensors uniformly at random into a scenario");
  deploy->add_option("--scenario", d_scenario, "scenario JSON")->required();
  deploy->add_option("--output", d_output, "scenario JSON to write")
      ->required();
  deploy->add_option("--count", d_count, "number of sensors")->required();
  deploy->add_option("--seed", d_seed, "placement seed");
  deploy
      ->add_option("--bbox", d_bbox,
                   "min_lat max_lat min_lon max_lon (default: data extent)")
      ->expected(4);

  // solve / oracle
  std::string s_scenario, s_family = "cspv", s_out, s_lp;
  double s_budget = 0.0;
  bool s_strict_buffer = false, s_vehicle_excl = false, s_reachable = false;
  Overrides s_over;
  CLI::App* solve = app.add_subcommand(
      "solve", "exact branch-and-bound plan for a constraint family");
  solve->add_option("--scenario", s_scenario, "scenario JSON")->required();
  solve->add_option("--family", s_family, "cspv|fcspv|dfcspv");
  solve->add_option("--out", s_out, "output directory")->required();
  solve->add_option("--lp-export", s_lp, "also write the program as LP text");
  solve->add_option("--time-budget", s_budget,
                    "seconds before returning the incumbent");
  solve->add_flag("--strict-buffer", s_strict_buffer,
                  "unit generated in a slot is transmittable next slot");
  solve->add_flag("--vehicle-exclusivity", s_vehicle_excl,
                  "at most one unit per vehicle per slot");
  solve->add_flag("--reachable-only", s_reachable,
                  "fairness gap over contacted sensors only");
  add_override_flags(solve, s_over);

  std::string o_scenario, o_family = "cspv", o_out;
  Overrides o_over;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "exhaustive reference solve (tiny instances only)");
  oracle->add_option("--scenario", o_scenario, "scenario JSON")->required();
  oracle->add_option("--family", o_family, "cspv|fcspv|dfcspv");
  oracle->add_option("--out", o_out, "output directory")->required();
  add_override_flags(oracle, o_over);

  // greedy / greedyn
  std::string g_scenario, g_out;
  bool g_strict_buffer = false;
  Overrides g_over;
  CLI::App* greedy =
      app.add_subcommand("greedy", "one-pass slot-by-slot heuristic plan");
  greedy->add_option("--scenario", g_scenario, "scenario JSON")->required();
  greedy->add_option("--out", g_out, "output directory")->required();
  greedy->add_flag("--strict-buffer", g_strict_buffer,
                   "unit generated in a slot is transmittable next slot");
  add_override_flags(greedy, g_over);

  std::string gn_scenario, gn_out;
  bool gn_strict_buffer = false, gn_return_units = false;
  Overrides gn_over;
  CLI::App* greedyn = app.add_subcommand(
      "greedyn", "greedy with reclaimed payments recycled into more passes");
  greedyn->add_option("--scenario", gn_scenario, "scenario JSON")->required();
  greedyn->add_option("--out", gn_out, "output directory")->required();
  greedyn->add_flag("--strict-buffer", gn_strict_buffer,
                    "unit generated in a slot is transmittable next slot");
  greedyn->add_flag("--return-removed-units", gn_return_units,
                    "dropped vehicles return their units to the buffers");
  add_override_flags(greedyn, gn_over);

  // sweep-fairness
  std::string sw_scenario, sw_out, sw_weights = "0,1/4,1/2,3/4,1";
  double sw_budget = 0.0;
  Overrides sw_over;
  CLI::App* sweep = app.add_subcommand(
      "sweep-fairness", "exact solves across fairness weights");
  sweep->add_option("--scenario", sw_scenario, "scenario JSON")->required();
  sweep->add_option("--out", sw_out, "output directory")->required();
  sweep->add_option("--weights", sw_weights, "comma-separated weights");
  sweep->add_option("--time-budget", sw_budget, "seconds per weight");
  add_override_flags(sweep, sw_over);

  // penetration
  std::string p_scenario, p_out, p_planner = "exact", p_replan = "none";
  double p_rate = 1.0;
  unsigned long long p_seed = 1;
  double p_budget = 0.0;
  Overrides p_over;
  CLI::App* pen = app.add_subcommand(
      "penetration", "simulate participant no-shows against a plan");
  pen->add_option("--scenario", p_scenario, "scenario JSON")->required();
  pen->add_option("--out", p_out, "output directory")->required();
  pen->add_option("--rate", p_rate, "show-up probability in [0,1]")
      ->required();
  pen->add_option("--seed", p_seed, "draw seed");
  pen->add_option("--planner", p_planner, "exact|greedy");
  pen->add_option("--replan", p_replan, "none|exact|greedy");
  pen->add_option("--time-budget", p_budget, "seconds for exact solves");
  add_override_flags(pen, p_over);

  // compare-baseline
  std::string b_scenario, b_out, b_price;
  double b_budget = 0.0;
  Overrides b_over;
  CLI::App* baseline = app.add_subcommand(
      "compare-baseline", "mule spend versus direct-uplink cost");
  baseline->add_option("--scenario", b_scenario, "scenario JSON")->required();
  baseline->add_option("--out", b_out, "output directory")->required();
  baseline
      ->add_option("--uplink-price-per-mb", b_price,
                   "direct transfer price in $/MB")
      ->required();
  baseline->add_option("--time-budget", b_budget, "seconds for the solve");
  add_override_flags(baseline, b_over);

  // bench
  std::string be_out, be_sizes = "10,50,100";
  int be_sensors = 5, be_horizon = 120;
  unsigned long long be_seed = 7;
  double be_budget = 2.0;
  int be_exact_max = 10;
  CLI::App* bench = app.add_subcommand(
      "bench", "timings on synthetic fleets of growing size");
  bench->add_option("--out", be_out, "output directory")->required();
  bench->add_option("--sizes", be_sizes, "comma-separated vehicle counts");
  bench->add_option("--sensors", be_sensors, "sensors per instance");
  bench->add_option("--horizon", be_horizon, "slots per instance");
  bench->add_option("--seed", be_seed, "generation seed");
  bench->add_option("--time-budget", be_budget, "seconds per exact solve");
  bench->add_option("--exact-max", be_exact_max,
                    "largest size also solved exactly");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      Scenario s = load_scenario(v_scenario);
      v_over.apply(s);
      std::vector<Violation> violations = validate_scenario(s);
      for (const Violation& v : violations)
        std::cout << violation_code_name(v.code) << ": " << v.message << "\n";
      if (!v_schedule.empty() && violations.empty()) {
        ProblemKind kind =
            ProblemKind::from_params(parse_family(v_family), s.params);
        Schedule sched = read_schedule_csv(v_schedule);
        std::vector<Violation> sv = validate_schedule(s, sched, kind);
        for (const Violation& v : sv)
          std::cout << violation_code_name(v.code) << ": " << v.message
                    << "\n";
        violations.insert(violations.end(), sv.begin(), sv.end());
      }
      if (!violations.empty()) {
        std::cout << violations.size() << " violation(s)\n";
        return 2;
      }
      std::cout << "ok: " << s.vehicles.size() << " vehicles, "
                << s.sensors.size() << " sensors, " << s.grid.horizon_slots
                << " slots\n";
      return 0;
    }

    if (*ingest) {
      IngestOptions opt;
      if (!i_day.empty()) opt.day = i_day;
      if (!i_bbox.empty()) {
        opt.min_lat = i_bbox[0];
        opt.max_lat = i_bbox[1];
        opt.min_lon = i_bbox[2];
        opt.max_lon = i_bbox[3];
      }
      opt.strict = i_strict;
      opt.max_vehicles = i_max_vehicles;
      IngestStats stats;
      std::vector<VehicleTrajectory> vehicles =
          ingest_taxi_log_file(i_input, opt, &stats);
      double max_t = 0.0;
      for (const VehicleTrajectory& v : vehicles)
        max_t = std::max(max_t, v.samples.back().t);
      int horizon = i_horizon > 0
                        ? i_horizon
                        : static_cast<int>(max_t) + 1;
      Scenario s;
      s.grid.horizon_slots = horizon;
      int clipped = 0;
      for (VehicleTrajectory& v : vehicles) {
        std::vector<TrajectorySample> kept;
        for (const TrajectorySample& sample : v.samples)
          if (sample.t >= 0 && sample.t < horizon) kept.push_back(sample);
        if (kept.size() < 2) {
          ++clipped;
          continue;
        }
        v.samples = std::move(kept);
        s.vehicles.push_back(std::move(v));
      }
      save_scenario(s, i_output);
      std::cout << "lines=" << stats.lines << " malformed=" << stats.malformed
                << " filtered=" << stats.filtered
                << " vehicles=" << s.vehicles.size()
                << " dropped=" << stats.vehicles_dropped + clipped
                << " horizon=" << horizon << "\n";
      return 0;
    }

    if (*deploy) {
      Scenario s = load_scenario(d_scenario);
      double lat_lo = 90, lat_hi = -90, lon_lo = 180, lon_hi = -180;
      if (!d_bbox.empty()) {
        lat_lo = d_bbox[0];
        lat_hi = d_bbox[1];
        lon_lo = d_bbox[2];
        lon_hi = d_bbox[3];
      } else {
        if (s.vehicles.empty())
          throw Error("no vehicles to derive a bounding box from");
        for (const VehicleTrajectory& v : s.vehicles)
          for (const TrajectorySample& sample : v.samples) {
            lat_lo = std::min(lat_lo, sample.lat);
            lat_hi = std::max(lat_hi, sample.lat);
            lon_lo = std::min(lon_lo, sample.lon);
            lon_hi = std::max(lon_hi, sample.lon);
          }
        lat_hi += bbox_pad(lat_lo, lat_hi);
        lon_hi += bbox_pad(lon_lo, lon_hi);
      }
      s.sensors =
          generate_deployment(d_count, lat_lo, lat_hi, lon_lo, lon_hi, d_seed);
      save_scenario(s, d_output);
      std::cout << "placed " << d_count << " sensors in [" << lat_lo << ", "
                << lat_hi << "] x [" << lon_lo << ", " << lon_hi << "]\n";
      return 0;
    }

    if (*solve) {
      Scenario s = load_checked(s_scenario, s_over);
      ProblemKind kind =
          ProblemKind::from_params(parse_family(s_family), s.params);
      kind.strict_buffer_boundary = s_strict_buffer;
      kind.vehicle_exclusivity = s_vehicle_excl;
      kind.reachable_sensors_only = s_reachable;
      ContactSet contacts = extract_contacts(s);
      LinearModel model = build_model(s, contacts, kind);
      if (!s_lp.empty()) {
        std::ostringstream os;
        write_lp(model, os);
        write_file(s_lp, os.str());
      }
      SolveResult res = solve_exact(
          model, s_budget > 0 ? std::optional<double>(s_budget)
                              : std::nullopt);
      if (check_schedule(s, res.schedule, kind) > 0) return 2;
      write_run_outputs(s, kind, res, s_out, model.gap_scope);
      print_summary("solve", res);
      return 0;
    }

    if (*oracle) {
      Scenario s = load_checked(o_scenario, o_over);
      ProblemKind kind =
          ProblemKind::from_params(parse_family(o_family), s.params);
      ContactSet contacts = extract_contacts(s);
      LinearModel model = build_model(s, contacts, kind);
      SolveResult res = solve_bruteforce(model);
      if (check_schedule(s, res.schedule, kind) > 0) return 2;
      write_run_outputs(s, kind, res, o_out, model.gap_scope);
      print_summary("oracle", res);
      return 0;
    }

    if (*greedy || *greedyn) {
      bool recycling = static_cast<bool>(*greedyn);
      Scenario s = load_checked(recycling ? gn_scenario : g_scenario,
                                recycling ? gn_over : g_over);
      bool strict = recycling ? gn_strict_buffer : g_strict_buffer;
      ContactSet contacts = extract_contacts(s);
      GreedyReport report =
          recycling
              ? run_greedy_recycling(s, contacts, strict, gn_return_units)
              : run_greedy(s, contacts, strict);
      ProblemKind kind = ProblemKind::from_params(ProblemFamily::Cspv,
                                                  s.params);
      kind.strict_buffer_boundary = strict;
      if (check_schedule(s, report.result.schedule, kind) > 0) return 2;
      write_run_outputs(s, kind, report.result,
                        recycling ? gn_out : g_out, {});
      print_summary(recycling ? "greedyn" : "greedy", report.result);
      std::cout << "passes=" << report.passes
                << " excluded=" << report.excluded_vehicles.size()
                << " reclaimed=" << report.reclaimed.to_string() << "\n";
      return 0;
    }

    if (*sweep) {
      Scenario s = load_checked(sw_scenario, sw_over);
      ContactSet contacts = extract_contacts(s);
      std::vector<Rational> weights;
      std::stringstream ss(sw_weights);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) weights.push_back(Rational::parse(item));
      if (weights.empty()) throw Error("no weights given");
      std::vector<SweepPoint> points = sweep_fairness(
          s, contacts, weights, ProblemFamily::FCspv,
          sw_budget > 0 ? std::optional<double>(sw_budget) : std::nullopt);
      std::filesystem::create_directories(sw_out);
      std::ostringstream os;
      os << "weight,transmissions,fairness_gap,objective,proven_optimal\n";
      for (const SweepPoint& pt : points)
        os << pt.weight.to_string() << ',' << pt.transmissions << ','
           << pt.fairness_gap << ',' << pt.objective.to_string() << ','
           << (pt.proven_optimal ? 1 : 0) << '\n';
      write_file(sw_out + "/sweep.csv", os.str());
      write_file(sw_out + "/manifest.json",
                 manifest_json(sw_out, {"sweep.csv"}).dump(2) + "\n");
      for (const SweepPoint& pt : points)
        std::cout << "w=" << pt.weight.to_string() << " n="
                  << pt.transmissions << " gap=" << pt.fairness_gap << "\n";
      return 0;
    }

    if (*pen) {
      Scenario s = load_checked(p_scenario, p_over);
      ContactSet contacts = extract_contacts(s);
      std::optional<double> budget =
          p_budget > 0 ? std::optional<double>(p_budget) : std::nullopt;
      ProblemKind kind =
          ProblemKind::from_params(ProblemFamily::Cspv, s.params);
      SolveResult planned;
      if (p_planner == "exact") {
        planned = solve_exact(build_model(s, contacts, kind), budget);
      } else if (p_planner == "greedy") {
        planned = run_greedy(s, contacts).result;
      } else {
        throw Error("unknown planner: " + p_planner);
      }
      ReplanMode mode;
      if (p_replan == "none") mode = ReplanMode::None;
      else if (p_replan == "exact") mode = ReplanMode::Exact;
      else if (p_replan == "greedy") mode = ReplanMode::Greedy;
      else throw Error("unknown replan mode: " + p_replan);
      PenetrationConfig config;
      config.show_rate = p_rate;
      config.seed = p_seed;
      PenetrationOutcome outcome =
          apply_penetration(s, contacts, planned, config, mode, budget);
      if (check_schedule(s, outcome.realized, kind) > 0) return 2;
      write_run_outputs(s, kind, outcome.result, p_out, {});
      nlohmann::json pj;
      pj["schema_version"] = kSchemaVersion;
      pj["show_rate"] = p_rate;
      pj["seed"] = p_seed;
      pj["planner"] = p_planner;
      pj["replan"] = p_replan;
      pj["planned_units"] = planned.schedule.size();
      pj["shown"] = outcome.shown;
      pj["no_shows"] = outcome.no_shows;
      pj["committed_units"] = outcome.committed.size();
      pj["replanned_units"] = outcome.replanned_units;
      pj["realized_units"] = outcome.realized.size();
      write_file(p_out + "/penetration.json", pj.dump(2) + "\n");
      print_summary("penetration", outcome.result);
      std::cout << "planned=" << planned.schedule.size() << " committed="
                << outcome.committed.size() << " replanned="
                << outcome.replanned_units << " no_shows="
                << outcome.no_shows.size() << "\n";
      return 0;
    }

    if (*baseline) {
      Scenario s = load_checked(b_scenario, b_over);
      ContactSet contacts = extract_contacts(s);
      ProblemKind kind =
          ProblemKind::from_params(ProblemFamily::Cspv, s.params);
      SolveResult res = solve_exact(
          build_model(s, contacts, kind),
          b_budget > 0 ? std::optional<double>(b_budget) : std::nullopt);
      Rational price = Rational::parse(b_price);
      long long units = static_cast<long long>(res.schedule.size());
      Rational direct =
          direct_cost(units, price, s.params.unit_size_bytes);
      Rational ratio = cost_ratio(direct, res.total_spend);
      long long same_spend_units =
          baseline_units(res.total_spend, price, s.params.unit_size_bytes);
      std::filesystem::create_directories(b_out);
      nlohmann::json j;
      j["schema_version"] = kSchemaVersion;
      j["uplink_price_per_mb"] = rational_to_json(price);
      j["mule_units"] = units;
      j["mule_spend"] = rational_to_json(res.total_spend);
      j["direct_cost_same_units"] = rational_to_json(direct);
      j["direct_units_same_spend"] = same_spend_units;
      j["cost_ratio"] = rational_to_json(ratio);
      j["cost_ratio_exact"] = ratio.to_string();
      write_file(b_out + "/baseline.json", j.dump(2) + "\n");
      std::cout << "mule units=" << units << " spend="
                << res.total_spend.to_string() << " direct="
                << direct.to_string() << " ratio=" << ratio.to_string()
                << "\n";
      return 0;
    }

    if (*bench) {
      std::vector<int> sizes;
      std::stringstream ss(be_sizes);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) sizes.push_back(std::stoi(item));
      std::filesystem::create_directories(be_out);
      std::ostringstream os;
      os << "vehicles,sensors,slots,events,greedy_units,greedy_seconds,"
            "exact_objective,exact_seconds,exact_proven\n";
      for (int size : sizes) {
        Scenario s;
        s.grid.horizon_slots = be_horizon;
        s.vehicles = synth_trajectories(size, be_horizon, 39.90, 39.99,
                                        116.30, 116.39, 0.002,
                                        be_seed + static_cast<unsigned>(size));
        s.sensors = generate_deployment(be_sensors, 39.90, 39.99, 116.30,
                                        116.39, be_seed ^ 0x5151);
        s.params.unit_cost = Rational(1, 100);
        s.params.c_min = Rational(1, 25);
        s.params.c_max = Rational(30);
        s.params.gen_rate = Rational(1, 2);
        s.params.range_m = 1500.0;
        ContactSet contacts = extract_contacts(s);
        auto t0 = std::chrono::steady_clock::now();
        GreedyReport greedy_report = run_greedy(s, contacts);
        double greedy_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        os << size << ',' << be_sensors << ',' << be_horizon << ','
           << contacts.events.size() << ','
           << greedy_report.result.schedule.size() << ',' << greedy_s << ',';
        if (size <= be_exact_max) {
          LinearModel model = build_model(
              s, contacts,
              ProblemKind::from_params(ProblemFamily::Cspv, s.params));
          SolveResult res = solve_exact(model, be_budget);
          os << res.objective_value.to_string() << ','
             << res.stats.wall_time_s << ','
             << (res.stats.proven_optimal ? 1 : 0) << '\n';
        } else {
          os << ",,\n";
        }
        std::cout << "size=" << size << " events=" << contacts.events.size()
                  << " greedy_units=" << greedy_report.result.schedule.size()
                  << " greedy_seconds=" << greedy_s << "\n";
      }
      write_file(be_out + "/bench.csv", os.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
