#include <vector>

#include "mulesched/scenario.hpp"
#include "mulesched/solve.hpp"

namespace mulesched {

SolveResult decode_solution(const LinearModel& m,
                            const std::vector<Rational>& assignment) {
  if (assignment.size() != m.variables.size())
    throw Error("assignment length does not match variable count");

  for (size_t i = 0; i < m.variables.size(); ++i) {
    const Variable& v = m.variables[i];
    const Rational& value = assignment[i];
    if (v.is_binary) {
      if (value != Rational(0) && value != Rational(1))
        throw Error("non-binary value for " + v.name);
    } else if (value < v.lb || value > v.ub) {
      throw Error("value out of bounds for " + v.name);
    }
  }

  for (const Row& row : m.rows) {
    Rational lhs{0};
    for (const auto& [var, coeff] : row.terms)
      lhs += Rational(coeff) * assignment[var];
    bool ok = row.sense == RowSense::Le ? lhs <= Rational(row.rhs)
                                        : lhs >= Rational(row.rhs);
    if (!ok) throw Error("assignment violates constraint " + row.name);
  }

  std::vector<Transmission> picks;
  for (int i = 0; i < m.n_transmissions; ++i) {
    if (assignment[i] == Rational(1)) {
      const ContactEvent& e = m.events[i];
      picks.push_back(Transmission{e.vehicle, e.sensor, e.slot});
    }
  }
  Schedule schedule = Schedule::of(std::move(picks));

  Rational claimed{0};
  for (const auto& [var, coeff] : m.objective)
    claimed += coeff * assignment[var];
  Rational recomputed = m.objective_of(schedule);
  if (claimed != recomputed)
    throw Error("objective mismatch between assignment and decoded schedule");

  ParamSet p;
  p.unit_cost = m.unit_cost;
  p.c_min = m.c_min;
  p.c_max = m.c_max;
  p.gen_rate = m.gen_rate;
  SolveResult result = make_solve_result(schedule, p, recomputed, {});

  for (int i = m.first_participation;
       i < m.first_participation + m.n_participation; ++i) {
    const Variable& v = m.variables[i];
    bool flagged = assignment[i] == Rational(1);
    bool listed = result.participants.count(v.vehicle) > 0;
    if (flagged != listed)
      throw Error("participation flag disagrees with compensation for " +
                  v.name);
  }
  return result;
}

}  // namespace mulesched
