#!/usr/bin/env python3
"""Regenerates the bundled scenarios and the synthetic fleet table.

    python3 tools/make_scenarios.py [repo-root]
"""
import csv
import json
import math
import random
import sys
from pathlib import Path


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(v) for v in r])


def fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return v


def year_weight(start, span, base, rate):
    return sum((1 + rate) ** -(start + k - base) for k in range(span))


def load_shape(h, base, swing, peak_hour=18):
    x = math.cos(2 * math.pi * (h - peak_hour) / 24)
    return base + swing * (0.6 * x + 0.4 * max(0.0, x) ** 3)


def solar_pf(h, peak):
    if h < 6 or h > 19:
        return 0.0
    return round(peak * math.sin(math.pi * (h - 6) / 14) ** 1.5, 4)


def wind_pf(h, mean):
    return round(mean + 0.12 * math.cos(2 * math.pi * (h - 3) / 24), 4)


def hhmm(hours):
    hours %= 24
    return f"{int(hours):02d}:{int(round((hours - int(hours)) * 60)) % 60:02d}"


def desk(root):
    d = root / "scenarios" / "desk"
    rate = 0.05
    years = [2030, 2045]
    weights = [round(year_weight(2030, 15, 2025, rate), 4), round(year_weight(2045, 10, 2025, rate), 4)]
    system = {
        "name": "desk",
        "discount_rate": rate,
        "zones": [{"id": "CA", "policy_zone": True}, {"id": "NW"}],
        "time_grid": {
            "years": years,
            "year_weights": weights,
            "hours_per_period": 24,
            "periods": [{"id": "summer", "weight": 182.5}, {"id": "winter", "weight": 182.5}],
        },
        "ev": {"zone": "CA", "eta_charge": 0.95, "eta_discharge": 0.95, "cluster_threshold": 0.001,
               "soc_min_frac": 0.1, "soc_drive_frac": 1.0},
    }
    d.mkdir(parents=True, exist_ok=True)
    (d / "system.json").write_text(json.dumps(system, indent=2) + "\n")

    write_csv(d / "thermal.csv",
              ["id", "zone", "pmax", "pmin", "ramp_up", "ramp_down", "min_up", "min_down", "startup_cost",
               "shutdown_cost", "cost_slope", "cost_intercept", "emission_slope", "emission_intercept", "nqc",
               "candidate", "retire_year", "retirable"],
              [["ca_ccgt", "CA", 600, 200, 300, 300, 4, 4, 12000, 0, 32, 900, 0.37, 0, 0.95, 0, 0, 0],
               ["ca_peaker", "CA", 250, 50, 250, 250, 1, 1, 2000, 0, 65, 300, 0.55, 0, 0.95, 0, 0, 1],
               ["ca_ccgt_new", "CA", 400, 120, 200, 200, 4, 4, 8000, 0, 30, 600, 0.35, 0, 0.95, 1, 0, 0],
               ["nw_coal", "NW", 700, 350, 175, 175, 4, 4, 15000, 0, 21, 1250, 0.95, 0, 0.9, 0, 0, 0],
               ["nw_ct", "NW", 300, 60, 300, 300, 1, 1, 2500, 0, 55, 350, 0.52, 0, 0.9, 0, 0, 0]])
    write_csv(d / "renewables.csv",
              ["id", "zone", "technology", "curtailable", "rps_eligible", "curtailment_cost", "planned_mw",
               "candidate", "max_capacity_mw", "retirable"],
              [["ca_solar", "CA", "solar", 1, 1, 0, 300, 1, 3000, 0],
               ["ca_wind", "CA", "wind", 1, 1, 0, 200, 1, 2000, 0]])
    prof = []
    for period, (sp, wm) in {"summer": (0.85, 0.30), "winter": (0.55, 0.42)}.items():
        for h in range(24):
            prof.append(["ca_solar", period, h, solar_pf(h, sp)])
            prof.append(["ca_wind", period, h, wind_pf(h, wm)])
    write_csv(d / "profiles.csv", ["resource", "period", "hour", "factor"], prof)
    write_csv(d / "storage.csv",
              ["id", "zone", "planned_mw", "planned_mwh", "eta_charge", "eta_discharge", "self_discharge",
               "soc_max_frac", "soc_min_frac", "min_duration_h", "candidate", "max_power_mw", "max_energy_mwh",
               "retirable"],
              [["ca_batt", "CA", 0, 0, 0.92, 0.92, 0.0, 1.0, 0.0, 1, 1, 1500, 6000, 0]])
    write_csv(d / "hydro.csv", ["id", "zone", "pmax", "pmin", "ramp_up", "ramp_down", "budget_mwh", "nqc"],
              [["nw_hydro", "NW", 400, 50, 200, 200, 4800, 0.5]])
    write_csv(d / "lines.csv", ["id", "from_zone", "to_zone", "limit_mw", "wheeling_cost", "emission_rate"],
              [["nw_ca", "NW", "CA", 700, 3, 0.43]])
    rows = []
    for yi, y in enumerate(years):
        growth = 1.0 if yi == 0 else 1.15
        for period, scale in {"summer": 1.1, "winter": 0.95}.items():
            for h in range(24):
                rows.append(["CA", y, period, h, round(growth * scale * load_shape(h, 1000, 320), 3)])
                rows.append(["NW", y, period, h, round(growth * scale * load_shape(h, 650, 150, 19), 3)])
    write_csv(d / "load.csv", ["zone", "year", "period", "hour", "MW"], rows)
    write_csv(d / "elcc.csv", ["surface", "year", "intercept", "wind", "solar", "storage"],
              [["variable", 0, 0, 0.3, 0.4, 0],
               ["variable", 0, 150, 0.1, 0.1, 0],
               ["storage", 0, 0, 0, 0, 0.95],
               ["storage", 0, 400, 0, 0, 0.3]])
    write_csv(d / "policy.csv", ["year", "emissions_cap", "rps", "prm"],
              [[2030, 2.6e6, 0.35, 1500], [2045, 1.6e6, 0.6, 1850]])
    write_csv(d / "costs.csv", ["resource", "component", "capital", "maintenance", "lifetime"],
              [["ca_ccgt", "unit", 0, 9.0e6, 30],
               ["ca_peaker", "unit", 0, 3.0e6, 30],
               ["ca_ccgt_new", "unit", 4.0e8, 6.0e6, 30],
               ["nw_coal", "unit", 0, 1.2e7, 40],
               ["nw_ct", "unit", 0, 3.5e6, 30],
               ["ca_solar", "mw", 1.0e6, 20000, 30],
               ["ca_wind", "mw", 1.4e6, 40000, 30],
               ["ca_batt", "power", 3.0e5, 10000, 15],
               ["ca_batt", "energy", 2.5e5, 0, 15],
               ["nw_hydro", "mw", 0, 15000, 50]])

    rng = random.Random(2045)
    drives = []
    patterns = [
        ("8", "linehaul", (5.0, 5.85), (18.1, 18.9), (150, 250)),
        ("4-6", "delivery", (8.0, 8.9), (16.1, 16.9), (60, 120)),
        ("7", "drayage", (20.0, 20.9), (6.1, 6.9), (100, 180)),
    ]
    for cls, voc, start, end, miles in patterns:
        for _ in range(30):
            drives.append([cls, voc, hhmm(rng.uniform(*start)), hhmm(rng.uniform(*end)),
                           round(rng.uniform(*miles), 1)])
    write_csv(d / "drives.csv", ["class", "vocation", "start_hhmm", "end_hhmm", "miles"], drives)
    write_csv(d / "population.csv", ["year", "class", "vocation", "count"],
              [[2030, "8", "linehaul", 1500], [2030, "4-6", "delivery", 2000], [2030, "7", "drayage", 800],
               [2045, "8", "linehaul", 6000], [2045, "4-6", "delivery", 8000], [2045, "7", "drayage", 3000]])


def toy2z(root):
    d = root / "scenarios" / "toy2z"
    system = {
        "name": "toy2z",
        "discount_rate": 0.05,
        "zones": [{"id": "A", "policy_zone": True}, {"id": "B"}],
        "time_grid": {"years": [2030], "year_weights": [1.0], "hours_per_period": 24,
                      "periods": [{"id": "day", "weight": 365}]},
        "ev": {"zone": "A", "cluster_threshold": 0.001},
    }
    d.mkdir(parents=True, exist_ok=True)
    (d / "system.json").write_text(json.dumps(system, indent=2) + "\n")
    write_csv(d / "thermal.csv",
              ["id", "zone", "pmax", "pmin", "ramp_up", "ramp_down", "min_up", "min_down", "startup_cost",
               "shutdown_cost", "cost_slope", "cost_intercept", "emission_slope", "emission_intercept", "nqc"],
              [["a_gas", "A", 300, 80, 150, 150, 3, 3, 5000, 0, 35, 400, 0.4, 0, 0.95],
               ["b_coal", "B", 250, 100, 80, 80, 6, 6, 9000, 0, 22, 600, 0.9, 0, 0.9]])
    write_csv(d / "renewables.csv",
              ["id", "zone", "technology", "curtailable", "rps_eligible", "curtailment_cost", "planned_mw",
               "candidate", "max_capacity_mw"],
              [["a_solar", "A", "solar", 1, 1, 0, 50, 1, 400]])
    write_csv(d / "profiles.csv", ["resource", "period", "hour", "factor"],
              [["a_solar", "day", h, solar_pf(h, 0.8)] for h in range(24)])
    write_csv(d / "storage.csv",
              ["id", "zone", "planned_mw", "planned_mwh", "eta_charge", "eta_discharge", "candidate",
               "max_power_mw", "max_energy_mwh"],
              [["a_batt", "A", 0, 0, 0.9, 0.9, 1, 150, 600]])
    write_csv(d / "lines.csv", ["id", "from_zone", "to_zone", "limit_mw", "wheeling_cost", "emission_rate"],
              [["b_a", "B", "A", 120, 2, 0.5]])
    rows = []
    for h in range(24):
        rows.append(["A", 2030, "day", h, round(load_shape(h, 250, 80), 3)])
        rows.append(["B", 2030, "day", h, round(load_shape(h, 140, 30, 19), 3)])
    write_csv(d / "load.csv", ["zone", "year", "period", "hour", "MW"], rows)
    write_csv(d / "policy.csv", ["year", "emissions_cap", "rps", "prm"], [[2030, 1.2e6, 0.2, 330]])
    write_csv(d / "elcc.csv", ["surface", "year", "intercept", "wind", "solar", "storage"],
              [["variable", 0, 0, 0.3, 0.4, 0], ["storage", 0, 0, 0, 0, 0.9]])
    write_csv(d / "costs.csv", ["resource", "component", "capital", "maintenance", "lifetime"],
              [["a_gas", "unit", 0, 2.0e6, 30], ["b_coal", "unit", 0, 4.0e6, 40],
               ["a_solar", "mw", 1.0e6, 20000, 30], ["a_batt", "power", 3.0e5, 10000, 15],
               ["a_batt", "energy", 2.5e5, 0, 15]])
    rng = random.Random(7)
    drives = [["8", "regional", hhmm(rng.uniform(6.0, 6.9)), hhmm(rng.uniform(17.1, 17.9)),
               round(rng.uniform(120, 220), 1)] for _ in range(20)]
    drives += [["4-6", "delivery", hhmm(rng.uniform(7.0, 7.9)), hhmm(rng.uniform(15.1, 15.9)),
                round(rng.uniform(50, 110), 1)] for _ in range(20)]
    write_csv(d / "drives.csv", ["class", "vocation", "start_hhmm", "end_hhmm", "miles"], drives)
    write_csv(d / "population.csv", ["year", "class", "vocation", "count"],
              [[2030, "8", "regional", 300], [2030, "4-6", "delivery", 500]])


def fd_fleet(root):
    # Marginals: departure ~ N(6.8 h, 1.6 h), shift length ~ N(9.5 h, 2.2 h),
    # daily miles lognormal per class.
    d = root / "tests" / "data" / "fd_fleet"
    rng = random.Random(94)
    strata = [("2-3", "service", 45, 0.35), ("4-6", "delivery", 80, 0.4), ("7", "delivery", 110, 0.4),
              ("8", "regional", 170, 0.35), ("8", "drayage", 120, 0.45)]
    drives = []
    for cls, voc, median, sigma in strata:
        for _ in range(120):
            start = min(max(rng.gauss(6.8, 1.6), 2.0), 12.0)
            shift = min(max(rng.gauss(9.5, 2.2), 4.0), 15.0)
            miles = round(median * math.exp(rng.gauss(0.0, sigma)), 1)
            drives.append([cls, voc, hhmm(start), hhmm(start + shift), miles])
    write_csv(d / "drives.csv", ["class", "vocation", "start_hhmm", "end_hhmm", "miles"], drives)
    counts = {"2-3": 4000, "4-6": 9000, "7": 3000, "8": 6000}
    pop = []
    for year, scale in ((2030, 1.0), (2045, 3.0)):
        for cls, voc, *_ in strata:
            n = counts[cls] // (2 if cls == "8" else 1)
            pop.append([year, cls, voc, int(n * scale)])
    write_csv(d / "population.csv", ["year", "class", "vocation", "count"], pop)


if __name__ == "__main__":
    root = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent)
    desk(root)
    toy2z(root)
    fd_fleet(root)
