"""Writes the synthetic-city fixture, the vehicle catalog and scenario configs into data/."""

import json
import pathlib

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

COLS, ROWS = 3, 2
BLOCK_MILES = 1.0


def grid_edges():
    edges = []
    for y in range(ROWS):
        for x in range(COLS):
            i = y * COLS + x
            if x + 1 < COLS:
                edges.append((i, i + 1, "row%d" % y))
            if y + 1 < ROWS:
                edges.append((i, i + COLS, "col"))
    return edges


# row 0 is an arterial, row 1 a residential street, columns are collectors
AV_LIMIT = {"row0": 45.0, "row1": 25.0, "col": 35.0}
# each 1-mile arc aggregates a corridor of parallel streets
CAPACITY = {"row0": (24000.0, 6000.0), "row1": (12000.0, 4000.0), "col": (16000.0, 5000.0)}
MM_LIMIT = 15.0
STATIONS = {"S0": 0, "S1": 5}
TRANSIT_S = 240.0


def network():
    nodes, arcs = [], []
    for layer, prefix in (("walk", "W"), ("road_av", "R"), ("road_mm", "M")):
        for y in range(ROWS):
            for x in range(COLS):
                nodes.append({"id": "%s%d" % (prefix, y * COLS + x), "layer": layer,
                              "x": x * BLOCK_MILES, "y": y * BLOCK_MILES})
    for sid, at in STATIONS.items():
        nodes.append({"id": sid, "layer": "transit", "x": (at % COLS) * BLOCK_MILES,
                      "y": (at // COLS) * BLOCK_MILES})

    for a, b, cls in grid_edges():
        for t, h in ((a, b), (b, a)):
            arcs.append({"tail": "W%d" % t, "head": "W%d" % h, "kind": "walk",
                         "length_miles": BLOCK_MILES})
            cap, base = CAPACITY[cls]
            arcs.append({"tail": "R%d" % t, "head": "R%d" % h, "kind": "road_av",
                         "length_miles": BLOCK_MILES, "limit_av_mph": AV_LIMIT[cls],
                         "capacity_vph": cap, "baseline_vph": base})
            arcs.append({"tail": "M%d" % t, "head": "M%d" % h, "kind": "road_mm",
                         "length_miles": BLOCK_MILES, "limit_mm_mph": MM_LIMIT})
    for i in range(COLS * ROWS):
        for p in ("R", "M"):
            arcs.append({"tail": "W%d" % i, "head": "%s%d" % (p, i), "kind": "switch"})
            arcs.append({"tail": "%s%d" % (p, i), "head": "W%d" % i, "kind": "switch"})
    for sid, at in STATIONS.items():
        arcs.append({"tail": "W%d" % at, "head": sid, "kind": "switch",
                     "station_frequency_per_min": 1.0 / 6.0})
        arcs.append({"tail": sid, "head": "W%d" % at, "kind": "switch"})
    (s0, _), (s1, _) = STATIONS.items()
    arcs.append({"tail": s0, "head": s1, "kind": "transit", "transit_time_s": TRANSIT_S})
    arcs.append({"tail": s1, "head": s0, "kind": "transit", "transit_time_s": TRANSIT_S})
    return {"nodes": nodes, "arcs": arcs}


DEMAND = [("W0", "W5", 14400.0), ("W5", "W0", 10800.0), ("W2", "W3", 9000.0),
          ("W3", "W2", 7200.0), ("W1", "W2", 5400.0), ("W4", "W3", 4200.0)]

AV_2020 = {"20": 20000, "25": 30000, "30": 55000, "35": 90000, "40": 115000,
           "45": 130000, "50": 150000}
AV_2025 = {"20": 3700, "25": 4400, "30": 6200, "35": 8700, "40": 9800,
           "45": 12000, "50": 13000}
SPEEDS = ["20", "25", "30", "35", "40", "45", "50"]


def av(op, vehicle, automation):
    return {"op_cost_usd_per_mile": op, "vehicle_cost_usd": vehicle, "life_years": 5,
            "automation_cost_usd_by_speed_mph": automation}


def catalog():
    flat = lambda c: {s: c for s in SPEEDS}
    return {
        "scenarios": {
            "S1": {"av": av(0.084, 32000, flat(15000))},
            "S2-2020": {"av": av(0.084, 32000, AV_2020)},
            "S2-2025": {"av": av(0.062, 26000, AV_2025)},
            "S3": {"av": av(0.084, 32000, flat(500000))},
            "S4": {"av": av(0.50, 32000, flat(0))},
            "S5-2020": {"av": av(0.084, 32000, AV_2020), "micromobility": True},
            "S5-2025": {"av": av(0.062, 26000, AV_2025), "micromobility": True},
        },
        "mm_types": [
            {"id": "e-scooter", "speed_mph": 15, "fixed_cost_usd": 550,
             "op_cost_usd_per_mile": 0.79, "life_years": 0.085, "emissions_kg_per_mile": 0.101},
            {"id": "shared-bike", "speed_mph": 10, "fixed_cost_usd": 8860,
             "op_cost_usd_per_mile": 1.58, "life_years": 7.0, "emissions_kg_per_mile": 0.033},
            {"id": "moped", "speed_mph": 15, "fixed_cost_usd": 1000,
             "op_cost_usd_per_mile": 2.05, "life_years": 10, "emissions_kg_per_mile": 0.158},
            {"id": "four-wheeled", "speed_mph": 15, "fixed_cost_usd": 3000,
             "op_cost_usd_per_mile": 1.20, "life_years": 10, "emissions_kg_per_mile": 0.033},
        ],
        "subway": {
            "baseline_trains": 112, "fixed_cost_usd_per_train": 14500000, "life_years": 30,
            "op_cost_usd_per_year_by_level": {"1": 148000000, "1.5": 222000000,
                                              "2": 295000000},
            "baseline_frequency_per_min": 1.0 / 6.0, "emissions_kg_per_train_year": 140000,
        },
    }


def config(scenario, mm):
    grid = {"av_fleets": {"from": 0, "to": 4500, "step": 500},
            "subway_levels": [1, 1.5, 2]}
    if mm:
        grid["mm_fleets"] = {"from": 0, "to": 4000, "step": 500}
    return {"network": "city20.graph.json", "demand": "city20.demand.json",
            "catalog": {"file": "vehicles.catalog.json", "scenario": scenario},
            "grid": grid, "params": {"emission_price_usd_per_kg": 40, "hours_per_month": 730},
            "solver": {"jobs": 1}, "output_dir": "../results/" + scenario}


def dump(name, obj):
    (DATA / name).write_text(json.dumps(obj, indent=2) + "\n")


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    dump("city20.graph.json", network())
    dump("city20.demand.json", {"requests": [
        {"origin": o, "destination": d, "rate_per_hour": r} for o, d, r in DEMAND]})
    dump("vehicles.catalog.json", catalog())
    for s in catalog()["scenarios"]:
        dump(s + ".config.json", config(s, s.startswith("S5")))
