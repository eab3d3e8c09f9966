#include <cstdio>
#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "mulesched/geo.hpp"
#include "mulesched/io.hpp"
#include "mulesched/linear_model.hpp"
#include "mulesched/metrics.hpp"
#include "mulesched/solve.hpp"
#include "support/tiny.hpp"

using namespace mulesched;
using nlohmann::json;
using testsupport::scripted_scenario;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("mulesched_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  static int counter;
};

int TempDir::counter = 0;

}  // namespace

TEST_CASE("json numbers become exact rationals and back") {
  CHECK(rational_from_json(json::parse("0.1")) == Rational(1, 10));
  CHECK(rational_from_json(json::parse("5")) == Rational(5));
  CHECK(rational_from_json(json::parse("-2.5e-3")) == Rational(-1, 400));
  CHECK(rational_from_json(json("3/1024")) == Rational(3, 1024));
  CHECK_THROWS_AS(rational_from_json(json::parse("[1]")), Error);

  CHECK(rational_to_json(Rational(5)) == json(5));
  CHECK(rational_to_json(Rational(1, 10)) == json(0.1));
  // 1/3 has no finite decimal expansion and falls back to fraction text.
  CHECK(rational_to_json(Rational(1, 3)) == json("1/3"));
  for (Rational r : {Rational(3, 1024), Rational(-7, 3), Rational(1, 10)})
    CHECK(rational_from_json(rational_to_json(r)) == r);
}

TEST_CASE("scenario json round trips exactly") {
  Scenario s = scripted_scenario(2, {{0, 1, -1}, {-1, 0, 1}});
  s.params.gen_rate = Rational(1, 3);
  s.params.c_min = Rational(3, 1024);
  s.params.delay_bound_s = Rational(60);
  s.params.delay_tolerance = Rational(1, 10);
  s.params.per_vehicle_cap = 4;

  json j = scenario_to_json(s);
  Scenario back = scenario_from_json(j);
  CHECK(back.grid.horizon_slots == s.grid.horizon_slots);
  CHECK(back.params.gen_rate == Rational(1, 3));
  CHECK(back.params.c_min == Rational(3, 1024));
  CHECK(back.params.delay_bound_s == Rational(60));
  CHECK(back.params.delay_tolerance == Rational(1, 10));
  CHECK(back.params.per_vehicle_cap == 4);
  CHECK(back.vehicles.size() == s.vehicles.size());
  CHECK(back.sensors.size() == s.sensors.size());
  CHECK(scenario_to_json(back).dump() == j.dump());

  TempDir dir;
  save_scenario(s, dir.file("scenario.json"));
  Scenario loaded = load_scenario(dir.file("scenario.json"));
  CHECK(scenario_to_json(loaded).dump() == j.dump());
}

TEST_CASE("per-megabyte pricing and schema guards") {
  json j = {{"horizon_slots", 4},
            {"params", {{"unit_size_bytes", 1024},
                        {"price_per_mb", 1}}}};
  Scenario s = scenario_from_json(j);
  CHECK(s.params.unit_cost == Rational(1, 1024));

  json bad = {{"schema_version", 99}, {"horizon_slots", 4}};
  CHECK_THROWS_AS(scenario_from_json(bad), Error);
}

TEST_CASE("civil timestamps use the proleptic gregorian calendar") {
  CHECK(civil_seconds(1970, 1, 1, 0, 0, 0) == 0);
  CHECK(civil_seconds(1970, 1, 2, 0, 0, 0) == 86400);
  CHECK(civil_seconds(2008, 2, 2, 0, 0, 0) == 1201910400LL);
  CHECK(civil_seconds(2008, 2, 2, 15, 36, 8) == 1201966568LL);
  CHECK(civil_seconds(1969, 12, 31, 23, 59, 59) == -1);
}

TEST_CASE("taxi log ingest filters, sorts and rebases timestamps") {
  std::string log =
      "1,2008-02-02 15:36:08,116.51172,39.92123\n"
      "1,2008-02-02 15:46:08,116.51135,39.93883\n"
      "2,2008-02-02 15:36:08,116.39392,39.93026\n"
      "garbage line\n"
      "2,2008-02-02 15:46:08,116.39482,39.91283\n"
      "2,2008-02-02 15:46:08,117.00000,39.00000\n"
      "3,2008-02-03 01:00:00,116.40000,39.90000\n"
      "4,2008-02-02 15:40:00,116.40000,39.90000\n";

  IngestOptions opts;
  opts.day = "2008-02-02";
  IngestStats stats;
  std::istringstream in(log);
  auto trajs = ingest_taxi_log(in, opts, &stats);

  // Vehicle 3 is filtered by day; vehicle 4 has a single sample and drops.
  REQUIRE(trajs.size() == 2);
  CHECK(trajs[0].id == "1");
  CHECK(trajs[1].id == "2");
  CHECK(stats.lines == 8);
  CHECK(stats.malformed == 1);
  CHECK(stats.filtered == 1);
  CHECK(stats.vehicles_dropped == 1);
  CHECK(stats.vehicles_kept == 2);

  // Timestamps are seconds after the chosen day's midnight; the duplicate
  // keeps the first record.
  CHECK(trajs[0].samples[0].t == doctest::Approx(15 * 3600 + 36 * 60 + 8));
  CHECK(trajs[0].samples[0].lat == doctest::Approx(39.92123));
  CHECK(trajs[0].samples[0].lon == doctest::Approx(116.51172));
  REQUIRE(trajs[1].samples.size() == 2);
  CHECK(trajs[1].samples[1].lat == doctest::Approx(39.91283));

  IngestOptions strict = opts;
  strict.strict = true;
  std::istringstream again(log);
  CHECK_THROWS_AS(ingest_taxi_log(again, strict), Error);

  // Without a day option, the epoch is midnight of the earliest sample.
  // Vehicles 3 and 4 still drop: one sample each.
  IngestOptions free_day;
  std::istringstream third(log);
  auto all = ingest_taxi_log(third, free_day);
  REQUIRE(all.size() == 2);
  CHECK(all[0].samples[0].t == doctest::Approx(15 * 3600 + 36 * 60 + 8));

  IngestOptions bbox = opts;
  bbox.min_lon = 116.0;
  bbox.max_lon = 116.6;
  std::istringstream fourth(log);
  IngestStats bstats;
  auto boxed = ingest_taxi_log(fourth, bbox, &bstats);
  REQUIRE(boxed.size() == 2);
  CHECK(boxed[1].samples.size() == 2);
  CHECK(bstats.filtered == 2);

  IngestOptions capped = opts;
  capped.max_vehicles = 1;
  std::istringstream fifth(log);
  auto only_first = ingest_taxi_log(fifth, capped);
  REQUIRE(only_first.size() == 1);
  CHECK(only_first[0].id == "1");
}

TEST_CASE("deployment and synthetic trajectories are seed-deterministic") {
  auto a = generate_deployment(5, 39.8, 40.0, 116.2, 116.6, 11);
  auto b = generate_deployment(5, 39.8, 40.0, 116.2, 116.6, 11);
  auto c = generate_deployment(5, 39.8, 40.0, 116.2, 116.6, 12);
  REQUIRE(a.size() == 5);
  bool same = true, differ = false;
  for (int i = 0; i < 5; ++i) {
    same = same && a[i].lat == b[i].lat && a[i].lon == b[i].lon;
    differ = differ || a[i].lat != c[i].lat;
    CHECK(a[i].lat >= 39.8);
    CHECK(a[i].lat <= 40.0);
    CHECK(a[i].lon >= 116.2);
    CHECK(a[i].lon <= 116.6);
  }
  CHECK(same);
  CHECK(differ);

  auto t1 = synth_trajectories(3, 20, 39.8, 40.0, 116.2, 116.6, 0.001, 5);
  auto t2 = synth_trajectories(3, 20, 39.8, 40.0, 116.2, 116.6, 0.001, 5);
  REQUIRE(t1.size() == 3);
  for (int v = 0; v < 3; ++v) {
    REQUIRE(t1[v].samples.size() == 20);
    for (size_t k = 0; k < 20; ++k) {
      CHECK(t1[v].samples[k].t == t2[v].samples[k].t);
      CHECK(t1[v].samples[k].lat == t2[v].samples[k].lat);
      CHECK(t1[v].samples[k].lat >= 39.8);
      CHECK(t1[v].samples[k].lat <= 40.0);
    }
  }
  CHECK_THROWS_AS(synth_trajectories(1, 0, 0, 1, 0, 1, 0.1, 1), Error);
}

TEST_CASE("schedule csv round trips through disk") {
  Scenario s = scripted_scenario(2, {{0, 1, -1}, {-1, 0, 1}});
  Schedule sched = Schedule::of({Transmission{0, 0, 0},
                                 Transmission{1, 0, 1},
                                 Transmission{1, 1, 2}});
  std::ostringstream os;
  write_schedule_csv(s, sched, os);
  std::string text = os.str();
  CHECK(text.find("vehicle,sensor,slot") == 0);
  CHECK(text.find("0,0,0,v0,s0") != std::string::npos);

  TempDir dir;
  write_file(dir.file("schedule.csv"), text);
  Schedule back = read_schedule_csv(dir.file("schedule.csv"));
  CHECK(back == sched);
}

TEST_CASE("metrics and cdf csv writers emit one row per entry") {
  Scenario s = scripted_scenario(2, {{0, 1, -1}});
  Schedule sched = Schedule::of({Transmission{0, 0, 0}, Transmission{0, 1, 1}});
  ProblemKind kind = ProblemKind::from_params(ProblemFamily::Cspv, s.params);
  MetricsReport m = compute_metrics(s, sched, kind);

  std::ostringstream os;
  write_metrics_csv(s, m, os);
  std::string text = os.str();
  CHECK(text.find("kind,index,id,units,compensation") == 0);
  CHECK(text.find("sensor,0,s0,1") != std::string::npos);
  CHECK(text.find("vehicle,0,v0,2,1/50") != std::string::npos);

  std::ostringstream cdf_os;
  write_delay_cdf_csv({{1.0, 0.5}, {3.5, 1.0}}, cdf_os);
  CHECK(cdf_os.str() == "delay_s,fraction\n1.0,0.5\n3.5,1.0\n");
}

TEST_CASE("run report is deterministic and wall-clock free") {
  Scenario s = scripted_scenario(1, {{-1, 0, 0, 0}});
  s.params.c_min = Rational(1, 100);
  ContactSet contacts = extract_contacts(s);
  ProblemKind kind = ProblemKind::from_params(ProblemFamily::Cspv, s.params);
  LinearModel m = build_model(s, contacts, kind);
  SolveResult r1 = solve_exact(m);
  SolveResult r2 = solve_exact(m);
  // Wall times differ between runs; the report must not reflect that.
  r2.stats.wall_time_s = r1.stats.wall_time_s + 1.0;

  MetricsReport metrics = compute_metrics(s, r1.schedule, kind);
  json a = report_json(s, kind, r1, metrics);
  json b = report_json(s, kind, r2, metrics);
  CHECK(a.dump() == b.dump());
  CHECK(a.dump().find("wall") == std::string::npos);
  CHECK(a.at("transmissions").get<long long>() == 3);
  CHECK(a.at("family").get<std::string>() == "cspv");
  CHECK(a.at("solver").at("proven_optimal").get<bool>());
}

TEST_CASE("fnv1a64 matches the reference vectors") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("manifests list files with sizes and hashes, sorted by path") {
  TempDir dir;
  write_file(dir.file("b.txt"), "foobar");
  write_file(dir.file("a.txt"), "");
  json m = manifest_json(dir.path.string(), {"b.txt", "a.txt"});
  REQUIRE(m.at("files").size() == 2);
  CHECK(m.at("files")[0].at("path") == "a.txt");
  CHECK(m.at("files")[0].at("bytes") == 0);
  CHECK(m.at("files")[1].at("path") == "b.txt");
  CHECK(m.at("files")[1].at("fnv1a64") == "85944171f73967e8");
}
