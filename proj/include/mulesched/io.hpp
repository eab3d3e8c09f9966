#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mulesched/linear_model.hpp"
#include "mulesched/metrics.hpp"
#include "mulesched/types.hpp"

namespace mulesched {

/// Exact JSON <-> Rational bridge. Numbers are re-read from their shortest
/// round-trip decimal text, so 0.1 becomes 1/10 rather than the nearest
/// binary double; strings accept "p/q" and decimal forms. Serialization
/// prefers an integer, then a double when it round-trips exactly, and falls
/// back to a "p/q" string.
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& r);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

/// Taxi log ingest. Lines look like
///   id,YYYY-MM-DD HH:MM:SS,longitude,latitude
/// Timestamps become seconds relative to midnight of `day` when set,
/// otherwise to midnight of the earliest accepted sample's date. Samples
/// are kept in file order per vehicle (stable sort by time, first wins on
/// duplicate timestamps); vehicles with fewer than two samples are dropped.
struct IngestOptions {
  std::optional<std::string> day;  // "YYYY-MM-DD"
  double min_lat = -90.0, max_lat = 90.0;
  double min_lon = -180.0, max_lon = 180.0;
  bool strict = false;     // raise on a malformed line instead of skipping
  int max_vehicles = 0;    // keep the first N vehicle ids seen; 0 = all
};

struct IngestStats {
  long long lines = 0;
  long long malformed = 0;
  long long filtered = 0;  // outside bbox or day
  long long kept_samples = 0;
  int vehicles_kept = 0;
  int vehicles_dropped = 0;  // fewer than two samples
};

std::vector<VehicleTrajectory> ingest_taxi_log(std::istream& in,
                                               const IngestOptions& options,
                                               IngestStats* stats = nullptr);
std::vector<VehicleTrajectory> ingest_taxi_log_file(
    const std::string& path, const IngestOptions& options,
    IngestStats* stats = nullptr);

/// Seconds since 1970-01-01 00:00:00 for a civil datetime (proleptic
/// Gregorian, no leap seconds).
long long civil_seconds(int year, int month, int day, int hour, int minute,
                        int second);

/// Uniform sensor placement in a bounding box: two draws per sensor, the
/// latitude first, in sensor index order.
std::vector<Sensor> generate_deployment(int n, double min_lat, double max_lat,
                                        double min_lon, double max_lon,
                                        unsigned long long seed);

/// Synthetic random-walk trajectories for benchmarks: per vehicle, one
/// start draw pair then a heading/step pair per slot, in index order.
std::vector<VehicleTrajectory> synth_trajectories(
    int n, int horizon_slots, double min_lat, double max_lat, double min_lon,
    double max_lon, double step_deg, unsigned long long seed);

void write_schedule_csv(const Scenario& s, const Schedule& sched,
                        std::ostream& os);

/// Reads a schedule back from write_schedule_csv output (only the first
/// three columns matter).
Schedule read_schedule_csv(const std::string& path);
void write_metrics_csv(const Scenario& s, const MetricsReport& m,
                       std::ostream& os);
void write_delay_cdf_csv(const std::vector<std::pair<double, double>>& cdf,
                         std::ostream& os);

/// Deterministic run summary: no wall-clock fields, so a repeated run over
/// the same inputs produces byte-identical output.
nlohmann::json report_json(const Scenario& s, const ProblemKind& kind,
                           const SolveResult& result, const MetricsReport& m);

/// 64-bit FNV-1a of a byte string.
unsigned long long fnv1a64(const std::string& bytes);

/// Manifest of output files (path, size, FNV-1a hash), paths sorted,
/// timestamp-free. `paths` are relative to `dir`.
nlohmann::json manifest_json(const std::string& dir,
                             std::vector<std::string> paths);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace mulesched
