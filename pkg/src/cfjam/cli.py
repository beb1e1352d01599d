"""Command-line entry point: ``cfjam simulate|train|evaluate|gen``.

Failures exit nonzero and print one JSON line ``{"error": <category>,
"message": ...}`` to stderr. Categories and exit codes: ``usage`` 2,
``input`` 3, ``io`` 4, ``solver`` 5.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from . import harness
from .association import associate_max_secrecy
from .capacity import report
from .optimizer import (BudgetExceeded, ConfigError, Policy, PowerEnv, SolverConfig,
                        TrainingDiverged, sac_train, write_training_curve)
from .propagation import gain_matrix
from .scenario import (MAP_SIDE_METERS, RandomSpec, ScenarioError, generate_random_scenario,
                       resolve_scenario, save_scenario)

EXIT_CODES = {"usage": 2, "input": 3, "io": 4, "solver": 5}


class CLIError(Exception):
    def __init__(self, category, message):
        super().__init__(message)
        self.category = category


def _config(args) -> SolverConfig:
    cfg = SolverConfig.load(args.config) if getattr(args, "config", None) else SolverConfig()
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "grid_step", None) is not None:
        cfg = replace(cfg, grid_step_watts=args.grid_step)
    return cfg


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_simulate(args):
    cfg = _config(args)
    reports = [harness.run_comparison(resolve_scenario(s), cfg, args.solver) for s in args.scenario]
    _write(harness.emit_report(reports, args.format), args.out)


def cmd_train(args):
    if args.solver != "sac":
        raise CLIError("usage", "train only supports --solver sac")
    cfg = _config(args)
    scenario = resolve_scenario(args.scenario)
    env = PowerEnv(scenario)
    policy = sac_train(env, cfg, cfg.seed)
    policy.save(args.checkpoint)
    if args.curve:
        write_training_curve(policy.curve, args.curve)
    json.dump({"checkpoint": args.checkpoint, **policy.meta}, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def cmd_evaluate(args):
    policy = Policy.load(args.checkpoint)
    scenario = resolve_scenario(args.scenario)
    g = gain_matrix(scenario)
    a = associate_max_secrecy(scenario, g)
    env = PowerEnv(scenario, g, a)
    if env.observation.shape != (policy.obs_dim,):
        raise CLIError("input", f"checkpoint expects a {policy.n_aps}-AP layout with "
                                f"observation size {policy.obs_dim}, scenario gives "
                                f"{env.observation.shape[0]}")
    powers = policy.act(env.observation)
    rows = {
        harness.NORMAL_WIFI: harness.run_normal_wifi(scenario, g),
        harness.SMART_AP: harness.run_smart_ap(scenario, g),
        harness.RL_CFJ: harness.Outcome(a, powers, report(scenario, g, powers, a)),
    }
    rep = harness.ComparisonReport(scenario.name, rows, {"solver": "sac-checkpoint"})
    _write(harness.emit_report(rep, args.format), args.out)


def cmd_gen(args):
    spec = RandomSpec(args.n_aps, args.n_users, args.n_eves, args.map)
    scenario = generate_random_scenario(spec, args.seed, args.name)
    if args.out:
        save_scenario(scenario, args.out)
    else:
        sys.stdout.write(json.dumps(scenario.to_dict(), indent=2) + "\n")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError("usage", message)


def build_parser():
    p = _Parser(prog="cfjam", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="compare normal Wi-Fi, smart AP and optimized jamming")
    s.add_argument("--scenario", action="append", required=True,
                   help="scenario file or builtin:1..6 (repeatable)")
    s.add_argument("--solver", choices=harness.SOLVERS, default="cem")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--grid-step", type=float, default=None)
    s.add_argument("--config", help="solver config JSON")
    s.add_argument("--out")
    s.add_argument("--format", choices=("csv", "table"), default="csv")
    s.set_defaults(func=cmd_simulate)

    t = sub.add_parser("train", help="train a SAC power-allocation policy")
    t.add_argument("--scenario", required=True)
    t.add_argument("--solver", default="sac")
    t.add_argument("--config")
    t.add_argument("--seed", type=int, default=None)
    t.add_argument("--checkpoint", required=True)
    t.add_argument("--curve", help="write the training curve CSV here")
    t.set_defaults(func=cmd_train)

    e = sub.add_parser("evaluate", help="report a trained policy's allocation on a scenario")
    e.add_argument("--checkpoint", required=True)
    e.add_argument("--scenario", required=True)
    e.add_argument("--out")
    e.add_argument("--format", choices=("csv", "table"), default="csv")
    e.set_defaults(func=cmd_evaluate)

    g = sub.add_parser("gen", help="generate a random scenario file")
    g.add_argument("--n-aps", type=int, required=True)
    g.add_argument("--n-users", type=int, required=True)
    g.add_argument("--n-eves", type=int, required=True)
    g.add_argument("--map", type=float, default=MAP_SIDE_METERS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--name")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        args.func(args)
        return 0
    except CLIError as exc:
        category, message = exc.category, str(exc)
    except (ScenarioError, ConfigError) as exc:
        category, message = "input", str(exc)
    except (BudgetExceeded, TrainingDiverged) as exc:
        category, message = "solver", str(exc)
    except OSError as exc:
        category, message = "io", str(exc)
    except ValueError as exc:
        category, message = "input", str(exc)
    print(json.dumps({"error": category, "message": message}), file=sys.stderr)
    return EXIT_CODES[category]


if __name__ == "__main__":
    sys.exit(main())
