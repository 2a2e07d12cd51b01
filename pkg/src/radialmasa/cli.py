"""Command-line front end for the verification sweeps and density exports.

Subcommands
    verify    exact identity sweeps in the group algebra
    density   evaluate the left-right density on a grid (CSV or JSON)
    pairing   three-way pairing checks (exact / case formula / quadrature)
    scan      near-zero census of the density
    moments   quadrature moments against exact walk counts

Exit codes: 0 when every declared check passes, 1 when a mathematical
identity or tolerance fails, 2 on resource-cap or convergence failures
(and on invalid configuration).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import density as density_mod
from . import identities
from .algebra import radial_moment_exact
from .errors import QuadratureError, ResourceCapError
from .identities import fraction_str
from .spectral import SpectralParams, quad_lambda

DEFAULT_SCAN_TOLS = (1e-1, 1e-3, 1e-5)

DEFAULT_TOLERANCES = {
    "verify": {},
    "density": {"tail": 1e-8},
    "pairing": {"quad": 1e-6, "norm": 1e-8},
    "scan": {},
    "moments": {"moment": 1e-8},
}


@dataclass
class RunConfig:
    """Fully resolved options for one command invocation."""

    command: str
    rank: int = 2
    grid_n: int = 64
    truncation: int = 60
    tolerances: dict = field(default_factory=dict)
    output_path: str | None = None
    format: str = "json"
    jobs: int = 1
    cap: int | None = None
    max_total: int = 6
    max_moment: int = 10
    scan_tols: tuple = DEFAULT_SCAN_TOLS
    method: str = "closed"
    inject_error: bool = False

    def validate(self) -> None:
        if self.command not in ("verify", "density", "pairing", "scan", "moments"):
            raise ValueError(f"unknown command {self.command!r}")
        if self.rank < 2:
            raise ValueError(f"rank must be at least 2 (rank-1 free groups are abelian), got {self.rank}")
        if self.grid_n < 1:
            raise ValueError("grid must be positive")
        if self.command == "scan" and self.grid_n < 16:
            raise ValueError("scan needs a grid of at least 16")
        if self.truncation < 2:
            raise ValueError("truncation must be at least 2")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")
        if self.method not in ("closed", "series", "both"):
            raise ValueError(f"method must be closed, series or both, got {self.method!r}")
        if self.max_total < 0 or self.max_moment < 0:
            raise ValueError("sweep bounds must be nonnegative")
        for name, value in self.tolerances.items():
            if value <= 0:
                raise ValueError(f"tolerance {name} must be positive")

    def tol(self, name: str) -> float:
        return self.tolerances.get(name, DEFAULT_TOLERANCES[self.command].get(name, 1e-8))

    def public_dict(self) -> dict:
        out = {}
        for f in fields(self):
            if f.name == "inject_error":
                continue
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = list(value)
            out[f.name] = value
        return out


# ----------------------------------------------------------------------
# output plumbing
# ----------------------------------------------------------------------


def atomic_write_text(path: str, content: str) -> None:
    """Write whole-file output via a same-directory temp file and rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".radialmasa-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(cfg: RunConfig, content: str) -> None:
    if cfg.output_path:
        atomic_write_text(cfg.output_path, content)
    else:
        sys.stdout.write(content)
        if not content.endswith("\n"):
            sys.stdout.write("\n")


def json_report(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def _sweep_worker(args: tuple) -> list[identities.CheckReport]:
    task, cap = args
    return identities.run_sweep_task(task, cap)


def cmd_verify(cfg: RunConfig) -> tuple[dict, bool]:
    t0 = time.perf_counter()
    tasks = identities.sweep_tasks(cfg.rank, cfg.max_total)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            blocks = list(pool.map(_sweep_worker, [(t, cfg.cap) for t in tasks]))
        reports = [r for block in blocks for r in block]
    else:
        cache = identities._SandwichCache(cfg.rank, cfg.cap)
        reports = []
        for task in tasks:
            reports.extend(identities.run_sweep_task(task, cfg.cap, _cache=cache))
    if cfg.inject_error and reports:
        reports[0].rhs = reports[0].rhs + " (perturbed)"
        reports[0].passed = False
    failed = sum(1 for r in reports if not r.passed)
    payload = {
        "command": "verify",
        "config": cfg.public_dict(),
        "checks": [r.to_json_dict() for r in reports],
        "summary": {"total": len(reports), "failed": failed, "pass": failed == 0},
        "elapsed_ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }
    return payload, failed == 0


def cmd_density(cfg: RunConfig) -> tuple[dict | str, bool]:
    params = SpectralParams(cfg.rank)
    pts = density_mod.interior_grid(cfg.grid_n, params)
    tt, ss = np.broadcast_arrays(pts[:, None], pts[None, :])
    rows: list[list] = []
    methods = ("closed", "series") if cfg.method == "both" else (cfg.method,)
    tail_tol = cfg.tol("tail")
    worst_tail = 0.0
    for method in methods:
        if method == "closed":
            values, guarded = density_mod.density_closed_grid(tt, ss, params)
            guard_tail = density_mod.series_tail_bound(density_mod.GUARD_SERIES_ORDER, params)
            for i in range(cfg.grid_n):
                for j in range(cfg.grid_n):
                    used_series = bool(guarded[i, j])
                    tail = guard_tail if used_series else 0.0
                    worst_tail = max(worst_tail, tail)
                    rows.append([
                        repr(float(tt[i, j])), repr(float(ss[i, j])),
                        repr(float(values[i, j])), repr(tail),
                        "series" if used_series else "closed",
                    ])
        else:
            values, tail = density_mod.density_series_grid(tt, ss, cfg.truncation, params)
            worst_tail = max(worst_tail, tail)
            for i in range(cfg.grid_n):
                for j in range(cfg.grid_n):
                    rows.append([
                        repr(float(tt[i, j])), repr(float(ss[i, j])),
                        repr(float(values[i, j])), repr(tail), "series",
                    ])
    if worst_tail > tail_tol:
        raise QuadratureError(
            f"series tail bound {worst_tail} exceeds requested tolerance {tail_tol}; "
            "raise the truncation order"
        )
    header = ["t", "s", "f", "tail_bound", "method"]
    if cfg.format == "csv":
        return csv_text(header, rows), True
    payload = {
        "command": "density",
        "config": cfg.public_dict(),
        "rows": [dict(zip(header, [float(r[0]), float(r[1]), float(r[2]), float(r[3]), r[4]]))
                 for r in rows],
    }
    return payload, True


def cmd_pairing(cfg: RunConfig) -> tuple[dict, bool]:
    t0 = time.perf_counter()
    params = SpectralParams(cfg.rank)
    reports = density_mod.pairing_sweep(params, cfg.max_total, cfg.tol("quad"), cfg.cap)
    norm = density_mod.density_normalization(params, cfg.tol("norm"))
    norm_ok = abs(norm - 1.0) <= cfg.tol("norm")
    ok = norm_ok and all(r.passed for r in reports)
    payload = {
        "command": "pairing",
        "config": cfg.public_dict(),
        "checks": [r.to_json_dict() for r in reports],
        "normalization": {"value": norm, "tol": cfg.tol("norm"), "pass": norm_ok},
        "summary": {
            "total": len(reports) + 1,
            "failed": sum(1 for r in reports if not r.passed) + (0 if norm_ok else 1),
            "pass": ok,
        },
        "elapsed_ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }
    return payload, ok


def cmd_scan(cfg: RunConfig) -> tuple[dict, bool]:
    t0 = time.perf_counter()
    params = SpectralParams(cfg.rank)
    report = density_mod.zero_scan(cfg.grid_n, list(cfg.scan_tols), params)
    tols = sorted(cfg.scan_tols, reverse=True)
    fracs = [report.fractions[t] for t in tols]
    monotone = all(fracs[i] >= fracs[i + 1] for i in range(len(fracs) - 1))
    ok = monotone and report.max_abs >= 1.0
    payload = {
        "command": "scan",
        "config": cfg.public_dict(),
        "report": report.to_json_dict(),
        "summary": {"monotone": monotone, "max_at_least_one": report.max_abs >= 1.0, "pass": ok},
        "elapsed_ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }
    return payload, ok


def cmd_moments(cfg: RunConfig) -> tuple[dict, bool]:
    t0 = time.perf_counter()
    params = SpectralParams(cfg.rank)
    tol = cfg.tol("moment")
    checks = []
    ok = True
    for k in range(cfg.max_moment + 1):
        exact = radial_moment_exact(k, cfg.rank, cfg.cap)
        quad = quad_lambda(lambda t, k=k: t**k, params, tol=min(tol, 1e-10))
        err = abs(quad - float(exact))
        passed = err <= tol
        ok = ok and passed
        checks.append({
            "k": k,
            "exact": fraction_str(exact),
            "quad": quad,
            "abs_err": err,
            "pass": passed,
        })
    payload = {
        "command": "moments",
        "config": cfg.public_dict(),
        "checks": checks,
        "summary": {"total": len(checks),
                    "failed": sum(1 for c in checks if not c["pass"]),
                    "pass": ok},
        "elapsed_ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }
    return payload, ok


COMMANDS = {
    "verify": cmd_verify,
    "density": cmd_density,
    "pairing": cmd_pairing,
    "scan": cmd_scan,
    "moments": cmd_moments,
}


# ----------------------------------------------------------------------
# argument parsing and config resolution
# ----------------------------------------------------------------------


def _parse_tol(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return name, float(value)


def _parse_scan_tols(text: str) -> tuple[float, ...]:
    if not text.strip():
        return ()
    return tuple(float(x) for x in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radialmasa",
        description="Exact and numerical checks for the radial subalgebra toolkit.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int, default=None, help="number of free generators (>= 2)")
    common.add_argument("--grid", type=int, default=None, dest="grid_n", help="grid points per axis")
    common.add_argument("--truncation", type=int, default=None, help="series truncation order")
    common.add_argument("--tol", type=_parse_tol, action="append", default=None,
                        metavar="NAME=VALUE", help="named tolerance (repeatable)")
    common.add_argument("--out", type=str, default=None, dest="output_path",
                        help="output path (default: stdout)")
    common.add_argument("--format", type=str, default=None, choices=("csv", "json"))
    common.add_argument("--config", type=str, default=None, help="JSON file with option overrides")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for sweeps")
    common.add_argument("--cap", type=int, default=None,
                        help="term-pair cap (overrides $RADIAL_MASA_CAP)")

    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", parents=[common],
                              help="exact identity sweeps in the group algebra")
    p_verify.add_argument("--max-total", type=int, default=None, dest="max_total",
                          help="largest n+m in the sweeps")
    p_verify.add_argument("--inject-error", action="store_true", dest="inject_error",
                          help="test mode: corrupt one check to confirm failures are caught")

    p_density = sub.add_parser("density", parents=[common],
                               help="evaluate the left-right density on a grid")
    p_density.add_argument("--method", type=str, default=None,
                           choices=("closed", "series", "both"))

    p_pairing = sub.add_parser("pairing", parents=[common],
                               help="exact / case / quadrature pairing agreement")
    p_pairing.add_argument("--max-total", type=int, default=None, dest="max_total",
                           help="largest j+k in the pairing sweep")

    p_scan = sub.add_parser("scan", parents=[common], help="near-zero census of the density")
    p_scan.add_argument("--scan-tols", type=_parse_scan_tols, default=None, dest="scan_tols",
                        metavar="T1,T2,...", help="comma-separated |f| thresholds")

    p_moments = sub.add_parser("moments", parents=[common],
                               help="quadrature moments against exact walk counts")
    p_moments.add_argument("--max-moment", type=int, default=None, dest="max_moment",
                           help="largest moment order")

    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, then the --config file, then explicit flags."""
    cfg = RunConfig(command=args.command)
    if args.command == "density":
        cfg.format = "csv"
    cfg.tolerances = dict(DEFAULT_TOLERANCES[args.command])

    if args.config:
        with open(args.config, encoding="utf-8") as handle:
            file_opts = json.load(handle)
        if not isinstance(file_opts, dict):
            raise ValueError("config file must hold a JSON object")
        for key, value in file_opts.items():
            if key == "tolerances":
                cfg.tolerances.update({str(k): float(v) for k, v in value.items()})
            elif key == "scan_tols":
                cfg.scan_tols = tuple(float(v) for v in value)
            elif key in {f.name for f in fields(RunConfig)}:
                setattr(cfg, key, value)
            else:
                raise ValueError(f"unknown config key {key!r}")

    for key in ("rank", "grid_n", "truncation", "output_path", "format", "jobs",
                "cap", "max_total", "max_moment", "method"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if getattr(args, "scan_tols", None) is not None:
        cfg.scan_tols = args.scan_tols
    if getattr(args, "tol", None):
        cfg.tolerances.update(dict(args.tol))
    if getattr(args, "inject_error", False):
        cfg.inject_error = True

    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        result, passed = COMMANDS[cfg.command](cfg)
    except (ResourceCapError, QuadratureError) as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        emit(cfg, result)
    else:
        emit(cfg, json_report(result))
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
