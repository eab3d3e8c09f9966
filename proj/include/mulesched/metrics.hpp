#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mulesched/geo.hpp"
#include "mulesched/linear_model.hpp"
#include "mulesched/scenario.hpp"
#include "mulesched/types.hpp"

namespace mulesched {

/// Evaluation of one schedule against one scenario. Delays follow FIFO
/// accounting: the k-th unit a sensor sends was generated at time k/rate,
/// so a transmission in slot t carries delay t - k/rate seconds (negative
/// when the unit leaves before its nominal generation time).
struct MetricsReport {
  long long transmissions = 0;
  int participants = 0;
  Rational total_spend{0};
  Rational objective{0};  // under the kind the report was computed for
  long long fairness_gap = 0;
  std::vector<long long> per_sensor;
  std::vector<long long> per_vehicle;
  std::vector<Transmission> delay_order;  // per sensor, slot-ascending
  std::vector<Rational> delays;           // aligned with delay_order
  Rational mean_delay{0};
  Rational max_delay{0};
  bool has_delays = false;
};

/// gap_scope empty means every sensor counts toward the fairness gap.
MetricsReport compute_metrics(const Scenario& s, const Schedule& sched,
                              const ProblemKind& kind,
                              const std::vector<char>& gap_scope = {});

/// FIFO per-transmission delays in seconds, ordered like
/// MetricsReport::delay_order.
std::vector<Rational> transmission_delays(const Schedule& sched,
                                          const ParamSet& params);

/// Empirical CDF points (delay_seconds, fraction_at_or_below), one per
/// distinct delay, ascending.
std::vector<std::pair<double, double>> delay_cdf(
    const std::vector<Rational>& delays);

struct SweepPoint {
  Rational weight{0};
  long long transmissions = 0;
  long long fairness_gap = 0;
  Rational objective{0};
  bool proven_optimal = false;
};

/// Exact solves of the fairness-weighted program across weights. As the
/// weight grows, both the optimal transmission count and the optimal gap are
/// non-decreasing.
std::vector<SweepPoint> sweep_fairness(
    const Scenario& s, const ContactSet& contacts,
    const std::vector<Rational>& weights,
    ProblemFamily family = ProblemFamily::FCspv,
    std::optional<double> time_budget_s = std::nullopt);

/// Units deliverable over a direct cellular uplink for the same spend.
long long baseline_units(const Rational& spend, const Rational& price_per_mb,
                         long long unit_bytes);

/// Direct-uplink cost of shipping `units` data units.
Rational direct_cost(long long units, const Rational& price_per_mb,
                     long long unit_bytes);

/// direct / mule spend ratio; 0/0 is defined as 1, x/0 raises.
Rational cost_ratio(const Rational& direct, const Rational& mule);

}  // namespace mulesched
