"""Command line front end.

Subcommands: ``ssf`` (shift-function sweeps), ``mu`` (flow functions at one
energy), ``det`` (determinant argument traces), ``check`` (property suites).
Exit codes: 0 success, 1 check/consistency failure, 2 configuration error.
Outputs are deterministic byte-for-byte for a fixed configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .checks import SUITES, run_suite
from .circleflow import FlowConfig, steps_match
from .engine import flow_by_index, flow_by_path, sweep_records, track_determinant
from .errors import SsfLabError
from .models import model_from_config


@dataclass
class RunConfig:
    """Parsed run configuration with spec defaults."""

    model_cfg: dict
    lambdas: list
    theta_samples: int = 64
    flow: FlowConfig = field(default_factory=FlowConfig)
    seed: int = 0
    out_path: str | None = None
    out_format: str = "jsonl"


def _parse_lambda_grid(spec) -> list:
    if isinstance(spec, list):
        if not spec:
            raise ValueError("explicit lambda list may not be empty")
        return [float(x) for x in spec]
    start, stop, count = float(spec["start"]), float(spec["stop"]), int(spec["count"])
    if count < 1:
        raise ValueError("lambda_grid.count must be >= 1")
    if count > 1 and not start < stop:
        raise ValueError("lambda_grid needs start < stop")
    return [float(x) for x in np.linspace(start, stop, count)]


def load_run_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    flow_raw = raw.get("flow", {})
    flow = FlowConfig(
        eps_gap=float(flow_raw.get("eps_gap", 1e-3)),
        max_depth=int(flow_raw.get("max_depth", 40)),
        y_max=float(flow_raw.get("y_max", 1e3)),
        grid_ratio=float(flow_raw.get("grid_ratio", 0.8)),
    )
    grid = raw.get("lambda_grid")
    lambdas = _parse_lambda_grid(grid) if grid is not None else []
    output = raw.get("output", {})
    return RunConfig(
        model_cfg=raw,
        lambdas=lambdas,
        theta_samples=int(raw.get("theta_samples", 64)),
        flow=flow,
        seed=int(raw.get("seed", 0)),
        out_path=output.get("path"),
        out_format=output.get("format", "jsonl"),
    )


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _emit_lines(lines, path):
    out, close = _open_out(path)
    try:
        for line in lines:
            out.write(line + "\n")
    finally:
        if close:
            out.close()


def _default_jobs(args_jobs) -> int:
    if args_jobs is not None:
        return max(1, int(args_jobs))
    env = os.environ.get("SSF_LAB_JOBS")
    return max(1, int(env)) if env else 1


def cmd_ssf(args) -> int:
    cfg = load_run_config(args.config)
    if not cfg.lambdas:
        raise ValueError("configuration has no lambda_grid")
    model = model_from_config(cfg.model_cfg)
    records = sweep_records(model, cfg.lambdas, cfg.flow, jobs=_default_jobs(args.jobs))
    fmt = args.format or cfg.out_format
    path = args.out or cfg.out_path
    if fmt == "jsonl":
        lines = [json.dumps(r.to_json_obj()) for r in records]
    elif fmt == "csv":
        lines = [records[0].CSV_HEADER] + [r.to_csv_row() for r in records]
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    _emit_lines(lines, path)
    return 0


def _mu_json(flow_obj, method: str) -> str:
    obj = flow_obj.step.to_json_obj()
    obj["lambda"] = flow_obj.energy
    obj["method"] = method
    return json.dumps(obj)


def cmd_mu(args) -> int:
    cfg = load_run_config(args.config)
    model = model_from_config(cfg.model_cfg)
    lam = float(args.lam)
    lines = []
    status = 0
    trace_rows = [] if args.trace else None
    if args.method in ("index", "both"):
        lines.append(_mu_json(flow_by_index(model, lam), "index"))
    if args.method in ("flow", "both"):
        flow = flow_by_path(model, lam, cfg.flow, trace=trace_rows)
        lines.append(_mu_json(flow, "flow"))
    if args.method == "both":
        f_index = flow_by_index(model, lam)
        f_path = flow_by_path(model, lam, cfg.flow)
        if not steps_match(f_index.step, f_path.step):
            print("method disagreement: index and flow constructions differ",
                  file=sys.stderr)
            status = 1
    _emit_lines(lines, args.out)
    if trace_rows is not None:
        rows = sorted(trace_rows)
        _emit_lines(
            (json.dumps({"t": t, "phases": list(ph)}) for t, ph in rows),
            args.trace,
        )
    return status


def cmd_det(args) -> int:
    cfg = load_run_config(args.config)
    model = model_from_config(cfg.model_cfg)
    trace = track_determinant(model, float(args.lam), cfg.flow)
    lines = ["y,re_d,im_d,arg"]
    lines += [f"{y!r},{re!r},{im!r},{arg!r}" for y, re, im, arg in trace.rows]
    _emit_lines(lines, args.out)
    return 0


def cmd_check(args) -> int:
    try:
        reports = run_suite(args.suite, args.seed)
    except KeyError:
        print(f"unknown suite {args.suite!r}; choose from "
              f"{['all'] + sorted(SUITES)}", file=sys.stderr)
        return 2
    lines = [json.dumps(r.to_json_obj()) for r in reports]
    _emit_lines(lines, args.out)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssf-lab",
        description="spectral shift function and spectral flow laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ssf = sub.add_parser("ssf", help="sweep the shift function over energies")
    p_ssf.add_argument("--config", required=True)
    p_ssf.add_argument("--out", default=None)
    p_ssf.add_argument("--format", choices=("jsonl", "csv"), default=None)
    p_ssf.add_argument("--jobs", type=int, default=None,
                       help="parallel energies (default: SSF_LAB_JOBS or 1)")
    p_ssf.set_defaults(fn=cmd_ssf)

    p_mu = sub.add_parser("mu", help="flow step function at one energy")
    p_mu.add_argument("--config", required=True)
    p_mu.add_argument("--lambda", dest="lam", type=float, required=True)
    p_mu.add_argument("--method", choices=("flow", "index", "both"), default="index")
    p_mu.add_argument("--out", default=None)
    p_mu.add_argument("--trace", default=None,
                      help="write sampled path eigenphases as JSON lines")
    p_mu.set_defaults(fn=cmd_mu)

    p_det = sub.add_parser("det", help="determinant argument trace at one energy")
    p_det.add_argument("--config", required=True)
    p_det.add_argument("--lambda", dest="lam", type=float, required=True)
    p_det.add_argument("--out", default=None)
    p_det.set_defaults(fn=cmd_det)

    p_check = sub.add_parser("check", help="run seeded property suites")
    p_check.add_argument("--suite", required=True)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--out", default=None)
    p_check.set_defaults(fn=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except SsfLabError as exc:
        print(f"computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
