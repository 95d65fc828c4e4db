"""Command-line front end.

    qudit-tradeoff tradeoff   --dim 2 --theta 0:pi/2:50 --out curve.csv
    qudit-tradeoff sequential --dim 3 --users 5 --theta 0:pi/2:50
    qudit-tradeoff two-user   --theta-a pi/9:4*pi/9:4 --theta-b 0:pi/2:50
    qudit-tradeoff simulate   --dim 2 --users 2 --theta 0.7 --samples 100000
    qudit-tradeoff verify

Angles accept numbers or simple expressions in ``pi``; a sweep is written
``start:stop:count`` and a list as ``a,b,c``. Flags override keys read from
``--config`` (a flat JSON object using the flag names).
"""
from __future__ import annotations

import argparse
import ast
import json
import math
import operator
import sys
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from . import sweeps
from .measurement import check_dim, check_theta
from .sequential import DEFAULT_BUDGET, ChainConfig, EnumerationBudgetError, simulate_chain_trajectories

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3

SUBCOMMANDS = ("tradeoff", "sequential", "two-user", "simulate", "verify")

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_angle(text: str) -> float:
    """Evaluate a number or an arithmetic expression in ``pi``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        raise ValueError(f"unsupported angle expression {text!r}")

    try:
        tree = ast.parse(str(text).strip(), mode="eval")
    except SyntaxError:
        raise ValueError(f"cannot parse angle {text!r}") from None
    return check_theta(ev(tree))


def parse_sweep(text) -> list[float]:
    """``v``, ``a,b,c`` or ``start:stop:count`` (endpoints included)."""
    if isinstance(text, (int, float)):
        return [check_theta(text)]
    text = str(text)
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"sweep must be start:stop:count, got {text!r}")
        start, stop = parse_angle(parts[0]), parse_angle(parts[1])
        count = int(parts[2])
        if count < 1:
            raise ValueError(f"sweep count must be positive, got {count}")
        return [check_theta(t) for t in np.linspace(start, stop, count)]
    return [parse_angle(p) for p in text.split(",")]


@dataclass
class RunConfig:
    subcommand: str
    dim: int = 2
    theta: Optional[str] = None
    theta_a: Optional[str] = None
    theta_b: Optional[str] = None
    chain: Optional[str] = None
    users: int = 1
    samples: int = 100000
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    tolerance: Optional[float] = None
    out: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        self.dim = check_dim(self.dim)
        for name in ("users", "samples", "budget"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"--{name} must be positive, got {getattr(self, name)}")
            setattr(self, name, int(getattr(self, name)))
        if self.format not in ("csv", "json"):
            raise ValueError(f"--format must be csv or json, got {self.format!r}")


CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"subcommand"}


def load_config_file(path: str) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: config must be a flat JSON object")
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
    for k, v in data.items():
        if isinstance(v, (dict, list)):
            raise ValueError(f"{path}: value of {k!r} must be a scalar")
    return data


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qudit-tradeoff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat JSON file of defaults")
        p.add_argument("--dim", type=int)
        p.add_argument("--out")
        p.add_argument("--format", choices=("csv", "json"))
        if name != "verify":
            p.add_argument("--theta")
        if name == "two-user":
            p.add_argument("--theta-a", dest="theta_a")
            p.add_argument("--theta-b", dest="theta_b")
        if name in ("sequential", "simulate"):
            p.add_argument("--users", type=int)
            p.add_argument("--chain", help="comma list of per-user angles (heterogeneous chain)")
            p.add_argument("--budget", type=int, help="max outcome records to enumerate")
        if name in ("simulate",):
            p.add_argument("--samples", type=int)
            p.add_argument("--seed", type=int)
        if name == "verify":
            p.add_argument("--tolerance", type=float, help="override every deterministic tolerance")
            p.add_argument("--quick", action="store_true", help="skip the statistical checks")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = load_config_file(args.config) if getattr(args, "config", None) else {}
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    return RunConfig(subcommand=args.subcommand, **values)


def _emit(cfg: RunConfig, header, rows) -> None:
    if cfg.out:
        sweeps.write_table(cfg.out, header, rows, cfg.format)
    else:
        sys.stdout.write(sweeps.render(header, rows, cfg.format))


def run_tradeoff(cfg: RunConfig) -> int:
    thetas = parse_sweep(cfg.theta or "0:pi/2:50")
    _emit(cfg, sweeps.TRADEOFF_HEADER, sweeps.tradeoff_rows(cfg.dim, thetas))
    return EXIT_OK


def run_sequential(cfg: RunConfig) -> int:
    if cfg.chain:
        row = sweeps.chain_row(cfg.dim, parse_sweep(cfg.chain), cfg.budget)
        _emit(cfg, sweeps.SEQUENTIAL_HEADER, [row])
    else:
        thetas = parse_sweep(cfg.theta or "0:pi/2:50")
        _emit(cfg, sweeps.SEQUENTIAL_HEADER, sweeps.sequential_rows(cfg.dim, cfg.users, thetas))
    return EXIT_OK


def run_two_user(cfg: RunConfig) -> int:
    thetas_a = parse_sweep(cfg.theta_a or "pi/9:4*pi/9:4")
    thetas_b = parse_sweep(cfg.theta_b or cfg.theta or "0:pi/2:50")
    _emit(cfg, sweeps.TWO_USER_HEADER, sweeps.two_user_rows(cfg.dim, thetas_a, thetas_b))
    return EXIT_OK


def run_simulate(cfg: RunConfig) -> int:
    if cfg.chain:
        config = ChainConfig(cfg.dim, tuple(parse_sweep(cfg.chain)))
    else:
        thetas = parse_sweep(cfg.theta or "pi/4")
        if len(thetas) != 1:
            raise ValueError("simulate takes a single --theta; use --chain for per-user angles")
        config = ChainConfig.homogeneous(cfg.dim, thetas[0], cfg.users)
    stats = simulate_chain_trajectories(config, cfg.samples, rng_seed=cfg.seed)
    header = ("user", *(f"count_{k}" for k in range(cfg.dim)))
    if cfg.format == "json":
        record = {
            "d": config.d,
            "thetas": list(config.thetas),
            "n_signals": stats.n_signals,
            "seed": cfg.seed,
            "F": stats.F,
            "stderr_F": stats.stderr_F,
            "G": stats.G,
            "stderr_G": stats.stderr_G,
            "outcome_counts": stats.outcome_counts.tolist(),
        }
        text = json.dumps(record, indent=1) + "\n"
    else:
        summary = sweeps.render(
            ("n_signals", "F", "stderr_F", "G", "stderr_G"),
            [(stats.n_signals, stats.F, stats.stderr_F, stats.G, stats.stderr_G)],
        )
        rows = [(u + 1, *map(int, c)) for u, c in enumerate(stats.outcome_counts)]
        text = summary + "\n" + sweeps.render(header, rows)
    if cfg.out:
        try:
            with open(cfg.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write {cfg.out}: {exc.strerror or exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


def run_verify(cfg: RunConfig, quick: bool = False) -> int:
    from .verify import format_report, run_checks

    results = run_checks(tolerance=cfg.tolerance, quick=quick)
    report = format_report(results)
    print(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(report + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if cfg.subcommand == "tradeoff":
            return run_tradeoff(cfg)
        if cfg.subcommand == "sequential":
            return run_sequential(cfg)
        if cfg.subcommand == "two-user":
            return run_two_user(cfg)
        if cfg.subcommand == "simulate":
            return run_simulate(cfg)
        return run_verify(cfg, quick=getattr(args, "quick", False))
    except EnumerationBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
