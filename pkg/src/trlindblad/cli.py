"""Command-line front end: ``simulate``, ``verify`` and ``sweep``.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical failure.
"""
import argparse
import copy
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalError, TRLindbladError
from .model import LindbladModel
from .modelfile import model_from_dict, operator_from_dict
from .operators import basis_label, basis_state, check_density_matrix, n_qubits
from .propagation import evolve_times, physicality, populations
from .rescaling import TimeRescaling, rescale_model, validate_boundary_conditions
from .verification import (check_reparametrization, compare_propagators,
                           default_equivalence_tol)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3
STEPS_PER_TIME = 400
PROPAGATOR_TOL = 1e-6
_METHODS = {"rk4": "rk4", "expm": "expm_midpoint", "expm_midpoint": "expm_midpoint"}
_RUN_KEYS = {"name", "model", "t_f", "a", "steps", "method", "initial_state", "outputs",
             "tol", "propagator_tol", "substeps", "allow_slowdown"}


class ConfigError(TRLindbladError, ValueError):
    pass


@dataclass
class RunConfig:
    name: str
    model: LindbladModel
    t_f: float
    a: float
    steps: int
    method: str
    initial_state: np.ndarray
    outputs: list
    tol: float = None
    propagator_tol: float = PROPAGATOR_TOL
    substeps: int = 1
    allow_slowdown: bool = False

    @property
    def rescaling(self):
        return TimeRescaling(self.a, self.t_f, allow_slowdown=self.allow_slowdown)


def _initial_state(spec, dim):
    if isinstance(spec, bool):
        raise ConfigError("initial_state must be an index, label or matrix")
    if isinstance(spec, (int, str)):
        return basis_state(spec, dim)
    if isinstance(spec, dict):
        return check_density_matrix(operator_from_dict(spec))
    raise ConfigError(f"cannot interpret initial_state {spec!r}")


def parse_run_config(doc, a=None, t_f=None, steps=None, method=None, tol=None):
    """Validate a run document and apply command-line overrides."""
    if not isinstance(doc, dict):
        raise ConfigError("run config must be a JSON object")
    unknown = set(doc) - _RUN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    try:
        model = model_from_dict(doc["model"])
        t_f = float(t_f if t_f is not None else doc["t_f"])
        a = float(a if a is not None else doc.get("a", 1.0))
        steps = steps if steps is not None else doc.get("steps", math.ceil(STEPS_PER_TIME * t_f))
        if int(steps) != steps or steps < 1:
            raise ConfigError(f"steps must be a positive integer, got {steps}")
        method = method or doc.get("method", "rk4")
        if method not in _METHODS:
            raise ConfigError(f"unknown method {method!r}")
        rho0 = _initial_state(doc.get("initial_state", 0), model.dim)
        outputs = []
        for out in doc.get("outputs", [{"populations": "all", "format": "csv"}]):
            if out.get("format", "csv") != "csv":
                raise ConfigError(f"unsupported output format {out.get('format')!r}")
            idx = out.get("populations", "all")
            idx = list(range(model.dim)) if idx == "all" else [int(i) for i in idx]
            for i in idx:
                if not 0 <= i < model.dim:
                    raise ConfigError(f"population index {i} out of range for dim {model.dim}")
            outputs.append(idx)
        tol = tol if tol is not None else doc.get("tol")
        cfg = RunConfig(
            name=str(doc.get("name", "run")), model=model, t_f=t_f, a=a, steps=int(steps),
            method=_METHODS[method], initial_state=rho0, outputs=outputs,
            tol=None if tol is None else float(tol),
            propagator_tol=float(doc.get("propagator_tol", PROPAGATOR_TOL)),
            substeps=int(doc.get("substeps", 1)),
            allow_slowdown=bool(doc.get("allow_slowdown", False)),
        )
        cfg.rescaling  # validates a and t_f
    except KeyError as exc:
        raise ConfigError(f"missing config field {exc}") from None
    except (TypeError, IndexError) as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def _labels(dim):
    try:
        n_qubits(dim)
        return [basis_label(i, dim) for i in range(dim)]
    except TRLindbladError:
        return [str(i) for i in range(dim)]


def _g(x):
    return format(float(x), ".17g")


def format_csv(traj, indices):
    """CSV text with ``time``, one ``pop_<label>`` per index and ``trace_error``."""
    labels = _labels(traj.dim)
    pops = populations(traj, indices)
    tr_err = np.abs(np.trace(traj.states, axis1=1, axis2=2) - 1.0)
    lines = [",".join(["time"] + [f"pop_{labels[i]}" for i in indices] + ["trace_error"])]
    for t, row, e in zip(traj.times, pops, tr_err):
        lines.append(",".join([_g(t)] + [_g(p) for p in row] + [_g(e)]))
    return "\n".join(lines) + "\n"


def run_simulation(cfg):
    """Evolve the (rescaled, if ``a != 1``) model; return trajectory and summary."""
    tr = cfg.rescaling
    model = cfg.model if tr.a == 1.0 else rescale_model(cfg.model, tr)
    times = tr.duration * np.arange(cfg.steps + 1) / cfg.steps
    times[-1] = tr.duration
    start = time.perf_counter()
    traj = evolve_times(model, cfg.initial_state, times, method=cfg.method,
                        substeps=cfg.substeps)
    wall = time.perf_counter() - start
    tr_err, herm, eig = physicality(traj)
    labels = _labels(traj.dim)
    final = populations(traj)[-1]
    summary = {
        "name": cfg.name,
        "a": tr.a,
        "t_f": tr.t_f,
        "duration": tr.duration,
        "steps": cfg.steps,
        "method": cfg.method,
        "final_populations": {f"pop_{labels[i]}": float(p) for i, p in enumerate(final)},
        "cptp": {"max_trace_error": tr_err, "max_hermiticity_error": herm,
                 "min_eigenvalue": eig},
        "wall_time_s": wall,
    }
    return traj, summary


def _write(path, text):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_simulate(cfg, out):
    traj, summary = run_simulation(cfg)
    files = []
    for k, idx in enumerate(cfg.outputs):
        path = os.path.join(out, f"{cfg.name}.csv" if k == 0 else f"{cfg.name}.{k}.csv")
        _write(path, format_csv(traj, idx))
        files.append(path)
    summary["files"] = files
    _write(os.path.join(out, f"{cfg.name}.summary.json"), _dump_json(summary))
    return EXIT_OK


def run_verification(cfg):
    """Boundary conditions, trajectory equivalence and propagator identity."""
    tr = cfg.rescaling
    rescaled = rescale_model(cfg.model, tr)
    bc = validate_boundary_conditions(tr, cfg.model, rescaled=rescaled, strict=False)
    report = {"name": cfg.name, "a": tr.a, "t_f": tr.t_f, "steps": cfg.steps,
              "method": cfg.method, "boundary_conditions": bc.to_dict()}
    failed = [f"boundary_condition_{c}" for c in bc.failed]
    if not failed:
        tol = cfg.tol if cfg.tol is not None else default_equivalence_tol(tr.a)
        eq = check_reparametrization(cfg.model, tr, cfg.initial_state, cfg.steps, tol=tol,
                                     method=cfg.method, substeps=cfg.substeps,
                                     rescaled=rescaled)
        report["equivalence"] = eq.to_dict(include_series=False)
        failed += eq.failures()
        dev = compare_propagators(cfg.model, tr, cfg.steps, rescaled=rescaled)
        ok = dev <= cfg.propagator_tol
        report["propagator"] = {"max_entry_deviation": dev, "tol": cfg.propagator_tol,
                                "pass": ok}
        if not ok:
            failed.append("propagator_deviation")
    report["failed"] = failed
    report["pass"] = not failed
    return report


def cmd_verify(cfg, out):
    report = run_verification(cfg)
    _write(os.path.join(out, f"{cfg.name}.verify.json"), _dump_json(report))
    if report["pass"]:
        return EXIT_OK
    print(f"verification failed: {', '.join(report['failed'])}", file=sys.stderr)
    return EXIT_FAIL


def _point_dir(point):
    if not point:
        return "base"
    parts = []
    for k, v in point.items():
        parts.append(f"{k}={format(v, 'g') if isinstance(v, (int, float)) else v}")
    return "_".join(parts)


def _apply_point(base, point):
    doc = copy.deepcopy(base)
    for k, v in point.items():
        if k in _RUN_KEYS:
            doc[k] = v
        else:
            model = doc.get("model", {})
            if "builder" not in model:
                raise ConfigError(f"sweep parameter {k!r} needs a builder model")
            model.setdefault("params", {})[k] = v
    return doc


def _sweep_point(doc, a, overrides):
    """Worker: run one sweep point; never raises."""
    try:
        cfg = parse_run_config(doc, a=a, **overrides)
        traj, summary = run_simulation(cfg)
        return {"status": "ok", "csv": format_csv(traj, cfg.outputs[0]), "summary": summary}
    except Exception as exc:  # recorded in the manifest
        return {"status": "failed", "error": f"{type(exc).__name__}: {exc}"}


def cmd_sweep(doc, out, jobs=1, a=None, **overrides):
    if not isinstance(doc, dict) or "base" not in doc:
        raise ConfigError("sweep config needs a 'base' run document")
    name = str(doc.get("name", "sweep"))
    points = doc.get("points", [])
    if not isinstance(points, list) or not all(isinstance(p, dict) for p in points):
        raise ConfigError("'points' must be a list of parameter objects")
    a_values = [a] if a is not None else list(doc.get("a_values", [1.0]))
    a_values = [1.0] + [float(x) for x in a_values if float(x) != 1.0]
    a_values = list(dict.fromkeys(a_values))
    if not points:
        return EXIT_OK
    tasks = []
    for point in points:
        pdoc = _apply_point(doc["base"], point)
        for av in a_values:
            rel = os.path.join(name, _point_dir(point), f"{format(av, 'g')}.csv")
            tasks.append((point, av, pdoc, rel))
    args = [(t[2], t[1], overrides) for t in tasks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_point, *zip(*args)))
    else:
        results = [_sweep_point(*x) for x in args]
    entries = []
    for (point, av, _, rel), res in zip(tasks, results):
        entry = {"point": point, "a": av, "file": rel, "status": res["status"]}
        if res["status"] == "ok":
            _write(os.path.join(out, rel), res["csv"])
            entry["final_populations"] = res["summary"]["final_populations"]
        else:
            entry["error"] = res["error"]
        entries.append(entry)
    n_failed = sum(e["status"] != "ok" for e in entries)
    manifest = {"name": name, "a_values": a_values, "entries": entries, "failed": n_failed}
    _write(os.path.join(out, name, "manifest.json"), _dump_json(manifest))
    return EXIT_FAIL if n_failed else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="trlindblad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in ("simulate", "verify", "sweep"):
        p = sub.add_parser(cmd)
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--a", type=float, help="time contraction parameter override")
        p.add_argument("--tf", type=float, help="reference duration override")
        p.add_argument("--steps", type=int, help="number of integration steps")
        p.add_argument("--method", choices=["rk4", "expm"], help="integrator")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--jobs", type=int, default=1, help="parallel sweep points")
        p.add_argument("--tol", type=float, help="state-deviation tolerance for verify")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = {"t_f": args.tf, "steps": args.steps, "method": args.method, "tol": args.tol}
    try:
        with open(args.config) as fh:
            doc = json.load(fh)
        if args.command == "sweep":
            return cmd_sweep(doc, args.out, jobs=max(1, args.jobs), a=args.a, **overrides)
        cfg = parse_run_config(doc, a=args.a, **overrides)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "simulate":
            return cmd_simulate(cfg, args.out)
        return cmd_verify(cfg, args.out)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
