"""Command line front end.

Four subcommands: ``analyze`` evaluates the degree-of-freedom budget of
one configuration, ``sweep`` tabulates it along one parameter axis,
``simulate`` runs the Monte Carlo verification campaign, and ``tables``
exports special-function curve data.  Artifacts embed the seed, the
fully resolved configuration, and the tool version; JSON bodies carry no
timestamp and CSV carries it only on a comment line, so re-runs with the
same inputs are byte-identical up to that line.

Exit codes: 0 success, 2 invalid input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .channel import ChannelConfig
from .dofcore import DofReport, total_dof
from .specfun import bessel_j_table, chebyshev_first_kind, chebyshev_second_kind
from .verify import TrialPlan, run_campaign

__all__ = ["main", "RunManifest", "load_config_file", "parse_dof_csv"]

DEFAULT_CONFIG = {
    "f0": 1.5e9,
    "half_bw": 1.3e9,
    "radius": 0.1,
    "obs_time": 0.0,
    "wave_speed": 3e8,
    "noise_var": 1.0,
    "p_max": 1000.0,
    "gamma": 1.0,
}

_PLAN_KEYS = ("num_trials", "circle_samples", "n_probe", "freq_samples")

SWEEP_AXES = ("radius", "half_bw", "gamma", "obs_time")


class CliError(Exception):
    """Invalid input; maps to exit code 2."""


@dataclass(frozen=True)
class RunManifest:
    """What produced an artifact: command, inputs, seed, format."""

    command: str
    config_source: str
    out_dir: str
    seed: int
    fmt: str

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config_source": self.config_source,
            "out_dir": self.out_dir,
            "seed": self.seed,
            "format": self.fmt,
        }


def load_config_file(path: str) -> dict:
    """Flat key-value config: one ``key = value`` per line, # comments."""
    known = set(DEFAULT_CONFIG) | set(_PLAN_KEYS) | {"seed"}
    out: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in known:
            raise CliError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = float(val.strip())
        except ValueError as exc:
            raise CliError(f"{path}:{lineno}: bad number {val.strip()!r}") from exc
    return out


def _resolve_config(args) -> ChannelConfig:
    merged = dict(DEFAULT_CONFIG)
    if args.config:
        file_vals = load_config_file(args.config)
        merged.update({k: v for k, v in file_vals.items() if k in DEFAULT_CONFIG})
    for key in DEFAULT_CONFIG:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    try:
        return ChannelConfig(**merged)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _resolve_plan(args) -> TrialPlan:
    merged = {"num_trials": 2000, "circle_samples": 64, "n_probe": 16, "freq_samples": 257}
    if args.config:
        file_vals = load_config_file(args.config)
        merged.update({k: int(v) for k, v in file_vals.items() if k in _PLAN_KEYS})
    for key in _PLAN_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    try:
        plan = TrialPlan(seed=args.seed, **merged)
        plan.require_statistical()
        return plan
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _out_dir(args) -> Path:
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create output directory {out}: {exc}") from exc
    return out


def _manifest(args, command: str) -> RunManifest:
    return RunManifest(
        command=command,
        config_source=args.config if args.config else "flags+defaults",
        out_dir=str(args.out),
        seed=args.seed,
        fmt=args.format,
    )


def _json_artifact(manifest: RunManifest, payload: dict) -> str:
    body = {"version": __version__, "manifest": manifest.to_dict(), **payload}
    return json.dumps(body, indent=2, sort_keys=True)


def _csv_comments(manifest: RunManifest, resolved: dict) -> list[str]:
    resolved_line = " ".join(f"{k}={resolved[k]!r}" for k in sorted(resolved))
    return [
        f"# tool: wavedof {__version__}",
        f"# command: {manifest.command}",
        f"# seed: {manifest.seed}",
        f"# config: {resolved_line}",
        f"# generated: {datetime.now(timezone.utc).isoformat()}",
    ]


def parse_dof_csv(text: str) -> tuple[list[str], list[tuple[int, float, float, float]]]:
    """Split an emitted per-order CSV into comment lines and typed rows.

    Re-serializing with the emitter's formatting reproduces the input
    bytes; the row format %.9g is idempotent under parse/format cycles.
    """
    comments, rows = [], []
    for line in text.strip().split("\n"):
        if line.startswith("#"):
            comments.append(line)
        elif line and line != "n,f_crit_hz,w_eff_hz,dof":
            n, f_crit, w_eff, dof = line.split(",")
            rows.append((int(n), float(f_crit), float(w_eff), float(dof)))
    return comments, rows


def serialize_dof_csv(comments: list[str], rows: list[tuple[int, float, float, float]]) -> str:
    lines = list(comments) + ["n,f_crit_hz,w_eff_hz,dof"]
    for n, f_crit, w_eff, dof in rows:
        lines.append(f"{n:d},{f_crit:.9g},{w_eff:.9g},{dof:.9g}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    cfg = _resolve_config(args)
    manifest = _manifest(args, "analyze")
    try:
        report = total_dof(cfg)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    out = _out_dir(args)

    json_path = out / "dof_report.json"
    json_path.write_text(
        _json_artifact(manifest, {"seed": args.seed, "config": cfg.to_dict(), "report": report.to_dict()})
        + "\n"
    )
    csv_path = out / "dof_report.csv"
    comments = _csv_comments(manifest, cfg.to_dict())
    _, rows = parse_dof_csv(report.to_csv())
    csv_path.write_text(serialize_dof_csv(comments, rows))

    print(
        f"n_upper={report.n_upper} t_eff={report.t_eff:.9g} s total_dof={report.total:.9g}"
    )
    print(f"wrote {json_path} and {csv_path}")
    return 0


def cmd_sweep(args) -> int:
    values = args.values
    if len(values) < 1 or any(b <= a for a, b in zip(values, values[1:])):
        raise CliError("sweep values must be strictly increasing")
    base = _resolve_config(args).to_dict()
    rows = []
    # validate and evaluate every point before any output is written
    for v in values:
        point = dict(base)
        point[args.axis] = v
        try:
            cfg = ChannelConfig(**point)
            rep = total_dof(cfg)
        except ValueError as exc:
            raise CliError(f"{args.axis}={v!r}: {exc}") from exc
        rows.append((v, rep.n_upper, rep.t_eff, rep.total))

    manifest = _manifest(args, "sweep")
    out = _out_dir(args)
    if args.format == "csv":
        path = out / f"sweep_{args.axis}.csv"
        lines = _csv_comments(manifest, base)
        lines.append(f"{args.axis},n_upper,t_eff_s,total_dof")
        for v, n_up, t_eff, total in rows:
            lines.append(f"{v:.9g},{n_up:d},{t_eff:.9g},{total:.9g}")
        path.write_text("\n".join(lines) + "\n")
    else:
        path = out / f"sweep_{args.axis}.json"
        payload = {
            "seed": args.seed,
            "config": base,
            "axis": args.axis,
            "rows": [
              {"value": v, "n_upper": n, "t_eff": t, "total_dof": d} for v, n, t, d in rows
            ],
        }
        path.write_text(_json_artifact(manifest, payload) + "\n")
    print(f"wrote {len(rows)} sweep rows to {path}")
    return 0


def cmd_simulate(args) -> int:
    cfg = _resolve_config(args)
    plan = _resolve_plan(args)
    manifest = _manifest(args, "simulate")
    try:
        report = run_campaign(cfg, plan)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    out = _out_dir(args)
    path = out / "verification.json"
    path.write_text(_json_artifact(manifest, report.to_dict()) + "\n")
    print(report.summary_table())
    print(f"wrote {path}")
    return 0 if report.passed else 3


def cmd_tables(args) -> int:
    orders = args.orders
    if not orders or any(n < 0 for n in orders):
        raise CliError(f"orders must be nonnegative integers, got {orders}")
    if args.samples < 2:
        raise CliError(f"samples must be >= 2, got {args.samples}")
    manifest = _manifest(args, "tables")
    out = _out_dir(args)
    n_top = max(orders)
    params: dict = {"kind": args.kind, "orders": list(orders), "samples": args.samples}

    if args.kind == "bessel":
        if args.z_max <= 0.0:
            raise CliError(f"z-max must be positive, got {args.z_max}")
        params["z_max"] = args.z_max
        grid = np.linspace(0.0, args.z_max, args.samples)
        cols = {f"j{n}": [bessel_j_table(n_top, z)[n] for z in grid] for n in orders}
    else:
        grid = np.linspace(-1.0, 1.0, args.samples)
        cols = {}
        for n in orders:
            cols[f"t{n}"] = [chebyshev_first_kind(n, x) for x in grid]
            cols[f"u{n}"] = [chebyshev_second_kind(n, x) for x in grid]

    names = list(cols)
    if args.format == "csv":
        path = out / f"tables_{args.kind}.csv"
        lines = _csv_comments(manifest, params)
        lines.append("z," + ",".join(names))
        for i, z in enumerate(grid):
            lines.append(f"{z:.9g}," + ",".join(f"{cols[c][i]:.9g}" for c in names))
        path.write_text("\n".join(lines) + "\n")
    else:
        path = out / f"tables_{args.kind}.json"
        payload = {
            "seed": args.seed,
            "params": params,
            "z": [float(z) for z in grid],
            "columns": {c: [float(v) for v in cols[c]] for c in names},
        }
        path.write_text(_json_artifact(manifest, payload) + "\n")
    print(f"wrote {path}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavedof",
        description="Degrees of freedom of wideband multipath fields on a disk",
    )
    parser.add_argument("--version", action="version", version=f"wavedof {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key=value config file")
    common.add_argument("--out", metavar="DIR", default=".", help="output directory")
    common.add_argument("--seed", type=int, default=0, help="random seed recorded in artifacts")
    common.add_argument("--format", choices=("json", "csv"), default="csv",
                        help="artifact format for sweep/tables")
    for key in DEFAULT_CONFIG:
        common.add_argument(f"--{key.replace('_', '-')}", type=float, default=None,
                            dest=key, help=f"override {key}")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="degree-of-freedom budget of one configuration")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", parents=[common], help="budget along one parameter axis")
    p.add_argument("--axis", choices=SWEEP_AXES, required=True)
    p.add_argument("--values", type=float, nargs="+", required=True,
                   help="strictly increasing axis values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo verification campaign")
    p.add_argument("--num-trials", type=int, default=None, dest="num_trials")
    p.add_argument("--circle-samples", type=int, default=None, dest="circle_samples")
    p.add_argument("--n-probe", type=int, default=None, dest="n_probe")
    p.add_argument("--freq-samples", type=int, default=None, dest="freq_samples")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("tables", parents=[common], help="special-function curve data")
    p.add_argument("--kind", choices=("bessel", "chebyshev"), required=True)
    p.add_argument("--orders", type=int, nargs="+", required=True)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--z-max", type=float, default=20.0, dest="z_max",
                   help="top of the argument range for bessel tables")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
