"""Side-by-side comparison of the three Wi-Fi implementations.

* ``normal_wifi``: nearest/strongest-AP association, serving APs at full
  power, idle APs silent.
* ``smart_ap``: secrecy-aware association, serving APs at full power, idle
  APs silent.
* ``rl_cfj``: secrecy-aware association, then every AP's power optimized
  (idle APs become jammers).

Baselines keep idle APs silent while ``rl_cfj`` lets every AP transmit;
the ``idle_ap_mode`` column of the emitted report records which applies.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .association import (BASELINE, associate_max_secrecy, associate_strongest_signal,
                          idle_ap_powers)
from .capacity import SecrecyReport, report
from .optimizer import PowerEnv, SolverConfig, cem_optimize, grid_search_oracle, sac_train
from .propagation import GainMatrix, gain_matrix
from .scenario import Scenario

NORMAL_WIFI = "normal_wifi"
SMART_AP = "smart_ap"
RL_CFJ = "rl_cfj"
IMPLEMENTATIONS = (NORMAL_WIFI, SMART_AP, RL_CFJ)
SOLVERS = ("grid", "cem", "sac")

CSV_COLUMNS = ["scenario", "implementation", "sum_secrecy_bps", "sum_eve_capacity_bps",
               "secrecy_ratio_pct", "idle_ap_mode", "association", "powers_w"]


@dataclass(frozen=True)
class Outcome:
    association: np.ndarray   # 0-based
    powers: np.ndarray
    report: SecrecyReport


@dataclass
class ComparisonReport:
    scenario_name: str
    per_implementation: dict
    solver_meta: dict = field(default_factory=dict)


def _baseline(scenario, g, association):
    p = idle_ap_powers(association, scenario.n_aps, BASELINE, scenario.radio.p_max_watts)
    return Outcome(association, p, report(scenario, g, p, association))


def run_normal_wifi(scenario: Scenario, g: GainMatrix | None = None) -> Outcome:
    g = gain_matrix(scenario) if g is None else g
    return _baseline(scenario, g, associate_strongest_signal(g))


def run_smart_ap(scenario: Scenario, g: GainMatrix | None = None) -> Outcome:
    g = gain_matrix(scenario) if g is None else g
    return _baseline(scenario, g, associate_max_secrecy(scenario, g))


def solve_powers(env: PowerEnv, solver: str, config: SolverConfig, warm_starts=()):
    """Dispatch to a power solver. Returns ``(powers, revenue, meta)``."""
    seed = config.seed
    if solver == "grid":
        powers, rev = grid_search_oracle(env, config.grid_step_watts, config.grid_budget)
        meta = {"grid_step_watts": config.grid_step_watts}
    elif solver == "cem":
        powers, rev = cem_optimize(env, config, seed, warm_starts=warm_starts)
        meta = {}
    elif solver == "sac":
        policy = sac_train(env, config, seed)
        powers = policy.act(env.observation)
        rev = env.step(powers)
        meta = {"sac": policy.meta}
    else:
        raise ValueError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    return np.asarray(powers, dtype=float), float(rev), meta


def run_rl_cfj(scenario: Scenario, config: SolverConfig | None = None, solver: str = "cem",
               g: GainMatrix | None = None, meta: dict | None = None) -> Outcome:
    """Secrecy-aware association, then optimized powers for every AP.

    CEM additionally scores the smart-AP allocation (idle APs silent) as a
    warm start, so its result never falls below that baseline.
    """
    config = SolverConfig() if config is None else config
    g = gain_matrix(scenario) if g is None else g
    a = associate_max_secrecy(scenario, g)
    env = PowerEnv(scenario, g, a)
    warm = [idle_ap_powers(a, scenario.n_aps, BASELINE, env.p_max)]
    started = time.perf_counter()
    powers, _, solver_meta = solve_powers(env, solver, config, warm)
    if meta is not None:
        meta.update(solver_meta, solver=solver, seed=config.seed,
                    wall_time_s=time.perf_counter() - started)
    return Outcome(a, powers, report(scenario, g, powers, a))


def run_comparison(scenario: Scenario, config: SolverConfig | None = None,
                   solver: str = "cem") -> ComparisonReport:
    config = SolverConfig() if config is None else config
    g = gain_matrix(scenario)
    meta = {}
    rows = {
        NORMAL_WIFI: run_normal_wifi(scenario, g),
        SMART_AP: run_smart_ap(scenario, g),
        RL_CFJ: run_rl_cfj(scenario, config, solver, g, meta),
    }
    return ComparisonReport(scenario.name, rows, meta)


def _fmt(x: float) -> str:
    return repr(float(x))


def report_rows(reports):
    """Flatten one or more ComparisonReports into CSV-ready string rows."""
    if isinstance(reports, ComparisonReport):
        reports = [reports]
    rows = []
    for rep in reports:
        for impl in IMPLEMENTATIONS:
            out = rep.per_implementation[impl]
            r = out.report
            rows.append([
                rep.scenario_name, impl, _fmt(r.sum_secrecy), _fmt(r.sum_eve_capacity),
                _fmt(r.secrecy_ratio), "jamming" if impl == RL_CFJ else "silent",
                ";".join(str(int(i) + 1) for i in out.association),
                ";".join(_fmt(p) for p in out.powers),
            ])
    return rows


def format_table(reports) -> str:
    rows = report_rows(reports)
    shown = [[r[0], r[1], f"{float(r[2]):.4f}", f"{float(r[3]):.4f}", f"{float(r[4]):.1f}",
              r[5], r[6], ";".join(f"{float(p):.4f}" for p in r[7].split(";"))] for r in rows]
    header = ["scenario", "implementation", "sum_secrecy", "sum_eve_cap", "secrecy_%",
              "idle_aps", "assoc (1-based)", "powers [W]"]
    widths = [max(len(h), *(len(r[i]) for r in shown)) for i, h in enumerate(header)]
    numeric = {2, 3, 4}

    def line(cells):
        return "  ".join(c.rjust(w) if i in numeric else c.ljust(w)
                         for i, (c, w) in enumerate(zip(cells, widths))).rstrip()

    out = [line(header), line(["-" * w for w in widths])]
    out += [line(r) for r in shown]
    out.append("capacities in bit/s (bps/Hz at W = 1 Hz); baselines keep idle APs silent, "
               "rl_cfj lets every AP transmit")
    return "\n".join(out) + "\n"


def format_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(report_rows(reports))
    return buf.getvalue()


def emit_report(reports, fmt: str = "csv", out=None) -> str:
    """Serialize comparison reports as CSV or an aligned text table.

    Writes to ``out`` when given and always returns the text.
    """
    if fmt == "csv":
        text = format_csv(reports)
    elif fmt == "table":
        text = format_table(reports)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text


def read_report_csv(path):
    """Parse an emitted CSV back into dicts with 0-based associations and float arrays."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            row["association"] = np.array([int(i) - 1 for i in row["association"].split(";")])
            row["powers_w"] = np.array([float(p) for p in row["powers_w"].split(";")])
            for key in ("sum_secrecy_bps", "sum_eve_capacity_bps", "secrecy_ratio_pct"):
                row[key] = float(row[key])
            rows.append(row)
    return rows
