#include "mulesched/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mulesched/rng.hpp"
#include "mulesched/version.hpp"

namespace mulesched {

namespace {

// Shortest round-trip text for a double, reusing the JSON dumper.
std::string double_text(double value) { return nlohmann::json(value).dump(); }

Rational get_rational(const nlohmann::json& obj, const char* key,
                      const Rational& fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  return rational_from_json(obj.at(key));
}

}  // namespace

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) {
    unsigned long long u = j.get<unsigned long long>();
    if (u > static_cast<unsigned long long>(INT64_MAX))
      throw Error("number too large: " + j.dump());
    return Rational(static_cast<long long>(u));
  }
  if (j.is_number_float()) return Rational::parse(j.dump());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw Error("expected a number or fraction string, got " + j.dump());
}

nlohmann::json rational_to_json(const Rational& r) {
  if (r.den() == 1) return nlohmann::json(r.num());
  nlohmann::json as_double = r.to_double();
  try {
    if (rational_from_json(as_double) == r) return as_double;
  } catch (const Error&) {
  }
  return nlohmann::json(r.to_string());
}

Scenario scenario_from_json(const nlohmann::json& j) {
  if (j.contains("schema_version") &&
      j.at("schema_version").get<int>() != kSchemaVersion)
    throw Error("unsupported schema_version");
  Scenario s;
  s.grid.horizon_slots = j.at("horizon_slots").get<int>();

  ParamSet defaults;
  const nlohmann::json empty = nlohmann::json::object();
  const nlohmann::json& pj = j.contains("params") ? j.at("params") : empty;
  ParamSet& p = s.params;
  if (pj.contains("unit_size_bytes"))
    p.unit_size_bytes = pj.at("unit_size_bytes").get<int>();
  if (pj.contains("unit_cost"))
    p.unit_cost = rational_from_json(pj.at("unit_cost"));
  else if (pj.contains("price_per_mb"))
    p.unit_cost = ParamSet::unit_cost_from_price_per_mb(
        rational_from_json(pj.at("price_per_mb")), p.unit_size_bytes);
  if (pj.contains("range_m")) p.range_m = pj.at("range_m").get<double>();
  p.gen_rate = get_rational(pj, "gen_rate", defaults.gen_rate);
  p.c_min = get_rational(pj, "c_min", defaults.c_min);
  p.c_max = get_rational(pj, "c_max", defaults.c_max);
  p.fairness_weight =
      get_rational(pj, "fairness_weight", defaults.fairness_weight);
  if (pj.contains("delay_bound_s") && !pj.at("delay_bound_s").is_null())
    p.delay_bound_s = rational_from_json(pj.at("delay_bound_s"));
  if (pj.contains("delay_tolerance") && !pj.at("delay_tolerance").is_null())
    p.delay_tolerance = rational_from_json(pj.at("delay_tolerance"));
  if (pj.contains("per_vehicle_cap") && !pj.at("per_vehicle_cap").is_null())
    p.per_vehicle_cap = pj.at("per_vehicle_cap").get<int>();

  for (const nlohmann::json& sj : j.value("sensors", nlohmann::json::array())) {
    Sensor sensor;
    sensor.id = sj.at("id").get<std::string>();
    sensor.lat = sj.at("lat").get<double>();
    sensor.lon = sj.at("lon").get<double>();
    s.sensors.push_back(std::move(sensor));
  }
  for (const nlohmann::json& vj :
       j.value("vehicles", nlohmann::json::array())) {
    VehicleTrajectory v;
    v.id = vj.at("id").get<std::string>();
    for (const nlohmann::json& sample : vj.at("samples")) {
      if (!sample.is_array() || sample.size() != 3)
        throw Error("trajectory samples must be [t, lat, lon] triples");
      v.samples.push_back(TrajectorySample{sample.at(0).get<double>(),
                                           sample.at(1).get<double>(),
                                           sample.at(2).get<double>()});
    }
    s.vehicles.push_back(std::move(v));
  }
  return s;
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["horizon_slots"] = s.grid.horizon_slots;
  nlohmann::json pj;
  const ParamSet& p = s.params;
  pj["unit_cost"] = rational_to_json(p.unit_cost);
  pj["range_m"] = p.range_m;
  pj["gen_rate"] = rational_to_json(p.gen_rate);
  pj["c_min"] = rational_to_json(p.c_min);
  pj["c_max"] = rational_to_json(p.c_max);
  pj["fairness_weight"] = rational_to_json(p.fairness_weight);
  pj["unit_size_bytes"] = p.unit_size_bytes;
  if (p.delay_bound_s) pj["delay_bound_s"] = rational_to_json(*p.delay_bound_s);
  if (p.delay_tolerance)
    pj["delay_tolerance"] = rational_to_json(*p.delay_tolerance);
  if (p.per_vehicle_cap) pj["per_vehicle_cap"] = *p.per_vehicle_cap;
  j["params"] = std::move(pj);
  nlohmann::json sensors = nlohmann::json::array();
  for (const Sensor& sensor : s.sensors)
    sensors.push_back(
        {{"id", sensor.id}, {"lat", sensor.lat}, {"lon", sensor.lon}});
  j["sensors"] = std::move(sensors);
  nlohmann::json vehicles = nlohmann::json::array();
  for (const VehicleTrajectory& v : s.vehicles) {
    nlohmann::json samples = nlohmann::json::array();
    for (const TrajectorySample& sample : v.samples)
      samples.push_back({sample.t, sample.lat, sample.lon});
    vehicles.push_back({{"id", v.id}, {"samples", std::move(samples)}});
  }
  j["vehicles"] = std::move(vehicles);
  return j;
}

Scenario load_scenario(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
  try {
    return scenario_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

void save_scenario(const Scenario& s, const std::string& path) {
  write_file(path, scenario_to_json(s).dump(2) + "\n");
}

long long civil_seconds(int year, int month, int day, int hour, int minute,
                        int second) {
  long long y = year;
  y -= month <= 2;
  long long era = (y >= 0 ? y : y - 399) / 400;
  long long yoe = y - era * 400;
  long long doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  long long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  long long days = era * 146097 + doe - 719468;
  return days * 86400 + hour * 3600 + minute * 60 + second;
}

namespace {

struct RawSample {
  long long t_abs;
  double lat, lon;
};

bool parse_taxi_line(const std::string& line, std::string& id,
                     long long& t_abs, double& lon, double& lat,
                     std::string& date_part) {
  size_t c1 = line.find(',');
  if (c1 == std::string::npos) return false;
  size_t c2 = line.find(',', c1 + 1);
  if (c2 == std::string::npos) return false;
  size_t c3 = line.find(',', c2 + 1);
  if (c3 == std::string::npos) return false;
  id = line.substr(0, c1);
  std::string stamp = line.substr(c1 + 1, c2 - c1 - 1);
  int y, mo, d, h, mi, sec;
  if (std::sscanf(stamp.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi,
                  &sec) != 6)
    return false;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 ||
      mi > 59 || sec < 0 || sec > 60)
    return false;
  t_abs = civil_seconds(y, mo, d, h, mi, sec);
  date_part = stamp.substr(0, stamp.find(' '));
  char* end = nullptr;
  std::string lon_text = line.substr(c2 + 1, c3 - c2 - 1);
  lon = std::strtod(lon_text.c_str(), &end);
  if (end == lon_text.c_str()) return false;
  std::string lat_text = line.substr(c3 + 1);
  lat = std::strtod(lat_text.c_str(), &end);
  if (end == lat_text.c_str()) return false;
  if (id.empty()) return false;
  return true;
}

}  // namespace

std::vector<VehicleTrajectory> ingest_taxi_log(std::istream& in,
                                               const IngestOptions& options,
                                               IngestStats* stats) {
  IngestStats local;
  std::vector<std::string> order;  // vehicle ids, first seen first
  std::map<std::string, std::vector<RawSample>> samples;
  std::string line;
  long long min_abs = 0;
  bool have_min = false;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++local.lines;
    std::string id, date_part;
    long long t_abs = 0;
    double lon = 0.0, lat = 0.0;
    if (!parse_taxi_line(line, id, t_abs, lon, lat, date_part)) {
      if (options.strict)
        throw Error("malformed record on line " +
                    std::to_string(local.lines) + ": " + line);
      ++local.malformed;
      continue;
    }
    if (options.day && date_part != *options.day) {
      ++local.filtered;
      continue;
    }
    if (lat < options.min_lat || lat > options.max_lat ||
        lon < options.min_lon || lon > options.max_lon) {
      ++local.filtered;
      continue;
    }
    auto it = samples.find(id);
    if (it == samples.end()) {
      if (options.max_vehicles > 0 &&
          static_cast<int>(order.size()) >= options.max_vehicles) {
        ++local.filtered;
        continue;
      }
      order.push_back(id);
      it = samples.emplace(id, std::vector<RawSample>{}).first;
    }
    it->second.push_back(RawSample{t_abs, lat, lon});
    ++local.kept_samples;
    if (!have_min || t_abs < min_abs) {
      min_abs = t_abs;
      have_min = true;
    }
  }

  long long base = 0;
  if (options.day) {
    int y, mo, d;
    if (std::sscanf(options.day->c_str(), "%d-%d-%d", &y, &mo, &d) != 3)
      throw Error("day filter must look like YYYY-MM-DD");
    base = civil_seconds(y, mo, d, 0, 0, 0);
  } else if (have_min) {
    long long days = min_abs / 86400;
    if (min_abs % 86400 < 0) --days;  // floor for pre-1970 stamps
    base = days * 86400;
  }

  std::vector<VehicleTrajectory> out;
  for (const std::string& id : order) {
    std::vector<RawSample>& raw = samples[id];
    std::stable_sort(raw.begin(), raw.end(),
                     [](const RawSample& a, const RawSample& b) {
                       return a.t_abs < b.t_abs;
                     });
    VehicleTrajectory traj;
    traj.id = id;
    for (const RawSample& sample : raw) {
      double t = static_cast<double>(sample.t_abs - base);
      if (!traj.samples.empty() && traj.samples.back().t == t)
        continue;  // duplicate timestamp: first record wins
      traj.samples.push_back(TrajectorySample{t, sample.lat, sample.lon});
    }
    if (traj.samples.size() < 2) {
      ++local.vehicles_dropped;
      continue;
    }
    ++local.vehicles_kept;
    out.push_back(std::move(traj));
  }
  if (stats) *stats = local;
  return out;
}

std::vector<VehicleTrajectory> ingest_taxi_log_file(
    const std::string& path, const IngestOptions& options,
    IngestStats* stats) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return ingest_taxi_log(in, options, stats);
}

std::vector<Sensor> generate_deployment(int n, double min_lat, double max_lat,
                                        double min_lon, double max_lon,
                                        unsigned long long seed) {
  if (n < 0 || min_lat > max_lat || min_lon > max_lon)
    throw Error("bad deployment request");
  SplitMix64 rng(seed);
  std::vector<Sensor> sensors;
  for (int i = 0; i < n; ++i) {
    Sensor s;
    s.id = "s" + std::to_string(i);
    s.lat = min_lat + rng.next_unit() * (max_lat - min_lat);
    s.lon = min_lon + rng.next_unit() * (max_lon - min_lon);
    sensors.push_back(std::move(s));
  }
  return sensors;
}

std::vector<VehicleTrajectory> synth_trajectories(
    int n, int horizon_slots, double min_lat, double max_lat, double min_lon,
    double max_lon, double step_deg, unsigned long long seed) {
  if (n < 0 || horizon_slots < 1 || min_lat > max_lat || min_lon > max_lon)
    throw Error("bad trajectory request");
  SplitMix64 rng(seed);
  std::vector<VehicleTrajectory> out;
  const double two_pi = 6.283185307179586;
  for (int v = 0; v < n; ++v) {
    VehicleTrajectory traj;
    traj.id = "v" + std::to_string(v);
    double lat = min_lat + rng.next_unit() * (max_lat - min_lat);
    double lon = min_lon + rng.next_unit() * (max_lon - min_lon);
    double heading = 0.0;
    for (int t = 0; t < horizon_slots; ++t) {
      if (t > 0) {
        heading += (rng.next_unit() - 0.5) * two_pi;
        double step = step_deg * (0.5 + rng.next_unit());
        lat = std::clamp(lat + step * std::cos(heading), min_lat, max_lat);
        lon = std::clamp(lon + step * std::sin(heading), min_lon, max_lon);
      }
      traj.samples.push_back(
          TrajectorySample{static_cast<double>(t), lat, lon});
    }
    out.push_back(std::move(traj));
  }
  return out;
}

void write_schedule_csv(const Scenario& s, const Schedule& sched,
                        std::ostream& os) {
  os << "vehicle,sensor,slot,vehicle_id,sensor_id\n";
  for (const Transmission& tx : sched.transmissions) {
    os << tx.vehicle << ',' << tx.sensor << ',' << tx.slot << ','
       << s.vehicles[tx.vehicle].id << ',' << s.sensors[tx.sensor].id << '\n';
  }
}

Schedule read_schedule_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<Transmission> txs;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;  // header
    }
    Transmission tx;
    if (std::sscanf(line.c_str(), "%d,%d,%d", &tx.vehicle, &tx.sensor,
                    &tx.slot) != 3)
      throw Error("bad schedule row: " + line);
    txs.push_back(tx);
  }
  return Schedule::of(std::move(txs));
}

void write_metrics_csv(const Scenario& s, const MetricsReport& m,
                       std::ostream& os) {
  os << "kind,index,id,units,compensation\n";
  for (size_t j = 0; j < m.per_sensor.size(); ++j)
    os << "sensor," << j << ',' << s.sensors[j].id << ',' << m.per_sensor[j]
       << ",\n";
  for (size_t v = 0; v < m.per_vehicle.size(); ++v) {
    Rational comp = Rational(m.per_vehicle[v]) * s.params.unit_cost;
    os << "vehicle," << v << ',' << s.vehicles[v].id << ','
       << m.per_vehicle[v] << ',' << comp.to_string() << '\n';
  }
}

void write_delay_cdf_csv(const std::vector<std::pair<double, double>>& cdf,
                         std::ostream& os) {
  os << "delay_s,fraction\n";
  for (const auto& [delay, fraction] : cdf)
    os << double_text(delay) << ',' << double_text(fraction) << '\n';
}

nlohmann::json report_json(const Scenario& s, const ProblemKind& kind,
                           const SolveResult& result,
                           const MetricsReport& m) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kVersion;
  j["family"] = problem_family_name(kind.family);
  if (kind.has_fairness())
    j["fairness_weight"] = rational_to_json(kind.fairness_weight);
  if (kind.has_delay()) {
    j["delay_bound_s"] = rational_to_json(*kind.delay_bound_s);
    j["delay_tolerance"] =
        rational_to_json(kind.delay_tolerance.value_or(Rational(0)));
  }
  j["objective"] = rational_to_json(result.objective_value);
  j["objective_exact"] = result.objective_value.to_string();
  j["transmissions"] = m.transmissions;
  j["fairness_gap"] = m.fairness_gap;
  j["total_spend"] = rational_to_json(result.total_spend);
  j["total_spend_exact"] = result.total_spend.to_string();

  nlohmann::json participants = nlohmann::json::array();
  for (int v : result.participants) participants.push_back(v);
  j["participants"] = std::move(participants);
  nlohmann::json pay = nlohmann::json::array();
  for (const auto& [vehicle, comp] : result.compensation) {
    pay.push_back({{"vehicle", vehicle},
                   {"id", s.vehicles[vehicle].id},
                   {"pay", rational_to_json(comp)},
                   {"pay_exact", comp.to_string()}});
  }
  j["compensation"] = std::move(pay);
  j["per_sensor_units"] = m.per_sensor;
  if (m.has_delays) {
    j["mean_delay_s"] = rational_to_json(m.mean_delay);
    j["max_delay_s"] = rational_to_json(m.max_delay);
  }
  nlohmann::json solver;
  solver["nodes_explored"] = result.stats.nodes_explored;
  solver["proven_optimal"] = result.stats.proven_optimal;
  if (result.stats.dual_bound) solver["dual_bound"] = *result.stats.dual_bound;
  j["solver"] = std::move(solver);
  return j;
}

unsigned long long fnv1a64(const std::string& bytes) {
  unsigned long long hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

nlohmann::json manifest_json(const std::string& dir,
                             std::vector<std::string> paths) {
  std::sort(paths.begin(), paths.end());
  nlohmann::json files = nlohmann::json::array();
  for (const std::string& path : paths) {
    std::string bytes = read_file(dir + "/" + path);
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", fnv1a64(bytes));
    files.push_back({{"path", path},
                     {"bytes", static_cast<long long>(bytes.size())},
                     {"fnv1a64", hex}});
  }
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["files"] = std::move(files);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace mulesched
