"""End-to-end check of the python bindings on a single-vehicle instance.

One vehicle parks beside the only sensor for slots 3..8. At $1 per unit,
a $2 participation threshold and a $5 budget, the optimal plan buys five
units in the first five contact slots.
"""

import json

import mulesched


def t1_scenario():
    samples = []
    for t in range(10):
        lat, lon = (40.0, 116.0) if 3 <= t <= 8 else (45.0, 100.0)
        samples.append([float(t), lat, lon])
    doc = {
        "horizon_slots": 10,
        "params": {
            "unit_cost": 1,
            "gen_rate": 1,
            "c_min": 2,
            "c_max": 5,
            "range_m": 1500.0,
        },
        "sensors": [{"id": "s0", "lat": 40.0, "lon": 116.0}],
        "vehicles": [{"id": "v0", "samples": samples}],
    }
    return mulesched.scenario_from_json(json.dumps(doc))


def main():
    scenario = t1_scenario()
    assert scenario.n_vehicles == 1
    assert scenario.n_sensors == 1
    assert scenario.horizon_slots == 10
    assert mulesched.validate(scenario) == []

    round_trip = mulesched.scenario_from_json(
        mulesched.scenario_to_json(scenario)
    )
    assert mulesched.scenario_to_json(round_trip) == mulesched.scenario_to_json(
        scenario
    )

    res = mulesched.solve(scenario)
    assert res["proven_optimal"]
    assert len(res["transmissions"]) == 5
    assert [slot for (_, _, slot) in res["transmissions"]] == [3, 4, 5, 6, 7]
    assert res["participants"] == [0]
    assert res["total_spend_exact"] == "5"
    assert res["compensation"] == {0: "5"}
    assert mulesched.validate_schedule(scenario, res["transmissions"]) == []

    ref = mulesched.oracle(scenario)
    assert ref["objective_exact"] == res["objective_exact"]
    assert ref["transmissions"] == res["transmissions"]

    greedy = mulesched.greedy(scenario)
    assert len(greedy["transmissions"]) == 5
    assert greedy["passes"] == 1

    pen = mulesched.penetration(scenario, rate=1.0, seed=3, replan="exact")
    assert pen["committed_units"] == 5
    assert pen["replanned_units"] == 0
    assert pen["no_shows"] == []

    sweep = mulesched.sweep_fairness(scenario, ["0", "1/2", "1"])
    counts = [point["transmissions"] for point in sweep]
    assert counts == sorted(counts)
    assert all(point["proven_optimal"] for point in sweep)

    assert mulesched.baseline_units("10", "1", 1024) == 10240
    assert mulesched.cost_ratio("2", "1") == "2"

    print("python smoke test ok")


if __name__ == "__main__":
    main()
