"""Command-line front end: simulate, analyze, reproduce, sweep.

Scenarios and sweep specifications are JSON files; orbits and sweep grids
are written as CSV, certificates as JSON.  Exit codes: 0 success, 2 on
unusable input (unparseable scenario, unknown example id, grid guard),
3 on numeric blow-up during iteration.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__, _kernels
from .bounds import crude_box, equilibrium_bracket, refined_lower, refined_upper
from .errors import (
    NoPositiveEquilibriumError,
    OrbitNumericsError,
    PersistenceUndefinedError,
)
from .lyapunov import V_ZERO, W_POSITIVE, audit, report_to_dict
from .model import Params, State
from .orbit import iterate, orbit_stats, write_orbit_csv
from .stability import (
    VERDICT_ZERO_GAS,
    certificate_to_dict,
    classify,
    spectral_radius,
)
from .model import jacobian_at

# Paper-style printed targets carry 4 decimals; accept half a ulp of that.
REPRODUCE_TOL = 5e-4

EXAMPLES = {
    "4.1": Params(a=0.8, b=0.9, p=0.6, q=0.5),
    "4.2": Params(a=0.6, b=0.5, p=0.8, q=0.9),
}
EXAMPLE_SEEDS = [(0.35, 0.26), (0.05, 0.02)]


class ScenarioError(ValueError):
    """Scenario or sweep file cannot be used as given."""


@dataclass
class Scenario:
    params: Params
    initial_conditions: list[State]
    max_steps: int = 10_000
    tol: float = 1e-10
    orbit_csv: str = "orbit.csv"
    certificate_json: str = "certificate.json"
    allow_boundary_seeds: bool = False


@dataclass
class SweepAxis:
    lo: float
    hi: float
    count: int

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class SweepSpec:
    axes: dict[str, SweepAxis]
    tol: float = 1e-12
    output_csv: str = "sweep.csv"

    @property
    def size(self) -> int:
        n = 1
        for axis in self.axes.values():
            n *= axis.count
        return n


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise ScenarioError(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: top-level JSON value must be an object")
    return doc


def load_scenario(path: str) -> Scenario:
    """Parse and validate a scenario file; raise ScenarioError on any defect."""
    doc = _load_json(path)
    known = {
        "params",
        "initial_conditions",
        "max_steps",
        "tol",
        "orbit_csv",
        "certificate_json",
        "allow_boundary_seeds",
    }
    unknown = set(doc) - known
    if unknown:
        raise ScenarioError(f"{path}: unknown scenario keys {sorted(unknown)}")
    try:
        raw = doc["params"]
        params = Params(a=raw["a"], b=raw["b"], p=raw["p"], q=raw["q"])
    except KeyError as exc:
        raise ScenarioError(f"{path}: params must provide a, b, p, q") from exc
    except ValueError as exc:
        raise ScenarioError(f"{path}: bad params: {exc}") from exc

    raw_ics = doc.get("initial_conditions")
    if not isinstance(raw_ics, list) or not raw_ics:
        raise ScenarioError(f"{path}: initial_conditions must be a nonempty list")
    allow_boundary = bool(doc.get("allow_boundary_seeds", False))
    ics = []
    for k, pair in enumerate(raw_ics):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ScenarioError(f"{path}: initial condition {k} must be a [y, z] pair")
        try:
            s = State(float(pair[0]), float(pair[1]))
        except (TypeError, ValueError) as exc:
            raise ScenarioError(f"{path}: bad initial condition {k}: {exc}") from exc
        if not allow_boundary and (s.y == 0.0 or s.z == 0.0):
            raise ScenarioError(
                f"{path}: initial condition {k} touches the boundary; "
                "set allow_boundary_seeds to opt in"
            )
        ics.append(s)

    max_steps = doc.get("max_steps", 10_000)
    if not isinstance(max_steps, int) or max_steps < 1:
        raise ScenarioError(f"{path}: max_steps must be a positive integer")
    tol = doc.get("tol", 1e-10)
    if not (isinstance(tol, (int, float)) and tol > 0 and math.isfinite(tol)):
        raise ScenarioError(f"{path}: tol must be a positive finite number")

    return Scenario(
        params=params,
        initial_conditions=ics,
        max_steps=max_steps,
        tol=float(tol),
        orbit_csv=str(doc.get("orbit_csv", "orbit.csv")),
        certificate_json=str(doc.get("certificate_json", "certificate.json")),
        allow_boundary_seeds=allow_boundary,
    )


def load_sweep_spec(path: str) -> SweepSpec:
    """Parse and validate a sweep specification file."""
    doc = _load_json(path)
    known = {"a", "b", "p", "q", "tol", "output_csv"}
    unknown = set(doc) - known
    if unknown:
        raise ScenarioError(f"{path}: unknown sweep keys {sorted(unknown)}")
    axes = {}
    for name in ("a", "b", "p", "q"):
        raw = doc.get(name)
        if not isinstance(raw, dict) or not {"min", "max", "count"} <= set(raw):
            raise ScenarioError(f"{path}: axis {name} must provide min, max, count")
        lo, hi, count = raw["min"], raw["max"], raw["count"]
        if not isinstance(count, int) or count < 1:
            raise ScenarioError(f"{path}: axis {name} count must be a positive integer")
        if not (isinstance(lo, (int, float)) and isinstance(hi, (int, float)) and lo <= hi):
            raise ScenarioError(f"{path}: axis {name} needs min <= max")
        if lo <= 0:
            raise ScenarioError(f"{path}: axis {name} values must be positive")
        axes[name] = SweepAxis(float(lo), float(hi), count)
    tol = doc.get("tol", 1e-12)
    if not (isinstance(tol, (int, float)) and tol > 0 and math.isfinite(tol)):
        raise ScenarioError(f"{path}: tol must be a positive finite number")
    spec = SweepSpec(axes=axes, tol=float(tol), output_csv=str(doc.get("output_csv", "sweep.csv")))
    if spec.size > 1_000_000:
        raise ScenarioError(f"{path}: grid of {spec.size} points exceeds the 10^6 guard")
    return spec


def _resolve(path: str, out_dir: str | None) -> str:
    if out_dir is None:
        return path
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, os.path.basename(path))


def _orbit_path(base: str, k: int) -> str:
    stem, ext = os.path.splitext(base)
    return f"{stem}_{k}{ext or '.csv'}"


def _run_orbits(scenario: Scenario):
    return [
        iterate(scenario.params, s0, scenario.max_steps, scenario.tol)
        for s0 in scenario.initial_conditions
    ]


def cmd_simulate(scenario: Scenario, out_dir: str | None = None) -> int:
    """Write one orbit CSV per initial condition and print orbit statistics."""
    orbits = _run_orbits(scenario)
    for k, orb in enumerate(orbits):
        path = _resolve(_orbit_path(scenario.orbit_csv, k), out_dir)
        write_orbit_csv(orb, path)
        s0 = scenario.initial_conditions[k]
        stats = orbit_stats(orb)
        conv = (
            f"converged at index {orb.convergence_index}"
            if orb.converged
            else "not converged"
        )
        print(
            f"seed {k} ({s0.y:g}, {s0.z:g}): {len(orb)} states, {conv}; "
            f"y in [{stats.min_y:.10g}, {stats.max_y:.10g}], "
            f"z in [{stats.min_z:.10g}, {stats.max_z:.10g}], "
            f"tail amplitude ({stats.tail_amplitude_y:.3g}, {stats.tail_amplitude_z:.3g}); "
            f"wrote {path}"
        )
    return 0


def _crude_box_entry(params: Params, s0: State) -> dict:
    entry: dict = {"seed": [s0.y, s0.z]}
    try:
        box = crude_box(params, s0)
        swapped = crude_box(params, s0, cross_damped=True)
        entry["box"] = {
            "y_lo": box.y_lo,
            "y_hi": box.y_hi,
            "z_lo": box.z_lo,
            "z_hi": box.z_hi,
        }
        entry["cross_damped_lower"] = {"y_lo": swapped.y_lo, "z_lo": swapped.z_lo}
        entry["conventions_differ"] = (
            box.y_lo != swapped.y_lo or box.z_lo != swapped.z_lo
        )
    except PersistenceUndefinedError as exc:
        entry["error"] = str(exc)
    return entry


def cmd_analyze(scenario: Scenario, out_dir: str | None = None) -> int:
    """Classify the parameters and write the full certificate JSON."""
    cert = classify(scenario.params, tol=min(scenario.tol, 1e-12))
    doc = certificate_to_dict(cert)
    doc["scenario"] = {
        "initial_conditions": [[s.y, s.z] for s in scenario.initial_conditions],
        "max_steps": scenario.max_steps,
        "tol": scenario.tol,
    }
    doc["crude_boxes"] = [
        _crude_box_entry(scenario.params, s0) for s0 in scenario.initial_conditions
    ]

    orbits = _run_orbits(scenario)
    lyapunov_entries = []
    for k, orb in enumerate(orbits):
        s0 = scenario.initial_conditions[k]
        reports = []
        for fid, eq in ((V_ZERO, None), (W_POSITIVE, cert.equilibrium)):
            if fid == W_POSITIVE and eq is None:
                continue
            try:
                reports.append(report_to_dict(audit(orb, fid, eq)))
            except ValueError as exc:
                reports.append({"function_id": fid, "error": str(exc)})
        lyapunov_entries.append({"seed": [s0.y, s0.z], "reports": reports})
    doc["lyapunov"] = lyapunov_entries

    path = _resolve(scenario.certificate_json, out_dir)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    print(f"verdict: {cert.verdict}; wrote {path}")
    return 0


@dataclass
class _Row:
    label: str
    computed: object
    target: object
    passed: bool


def _numeric_row(label: str, computed: float, target: float, tol: float = REPRODUCE_TOL) -> _Row:
    return _Row(label, f"{computed:.7g}", f"{target:.4f}", abs(computed - target) <= tol)


def _flag_row(label: str, computed: str, target: str) -> _Row:
    return _Row(label, computed, target, computed == target)


def _print_rows(rows: list[_Row]) -> None:
    width = max(len(r.label) for r in rows)
    for r in rows:
        status = "pass" if r.passed else "FAIL"
        print(f"  {r.label:<{width}}  computed={r.computed:<24} target={r.target:<24} {status}")


def _reproduce_41() -> int:
    params = EXAMPLES["4.1"]
    print(f"reproduce 4.1 (a={params.a}, b={params.b}, p={params.p}, q={params.q})")
    rows: list[_Row] = []
    targets_by_seed = {0: (0.1087, 0.1507), 1: (0.0116, 0.0333)}
    for k, (y0, z0) in enumerate(EXAMPLE_SEEDS):
        box = crude_box(params, State(y0, z0))
        ty, tz = targets_by_seed[k]
        rows.append(_numeric_row(f"crude y lower, seed ({y0}, {z0})", box.y_lo, ty))
        rows.append(_numeric_row(f"crude z lower, seed ({y0}, {z0})", box.z_lo, tz))
    y_hi, z_hi = refined_upper(params)
    lower = refined_lower(params, y_hi, z_hi)
    rows.append(_numeric_row("bracket y upper", y_hi, 0.2800))
    rows.append(_numeric_row("bracket z upper", z_hi, 0.3231))
    rows.append(_numeric_row("bracket y lower", lower.y, 0.0751))
    rows.append(_numeric_row("bracket z lower", lower.z, 0.0850))
    _print_rows(rows)

    cert = classify(params)
    print("warnings (reported, non-fatal):")
    report = cert.positive_global
    for i, ineq in enumerate(report.inequalities, start=1):
        print(
            f"  {report.id} inequality {i}: lhs={ineq.lhs:.10g} rhs={ineq.rhs:.10g} "
            f"satisfied={ineq.satisfied}"
        )
    print(f"  {report.id} literal flag: holds={report.holds}")
    limits = []
    for y0, z0 in EXAMPLE_SEEDS:
        orb = iterate(params, State(y0, z0), max_steps=100_000, tol=1e-12)
        limits.append(orb.final_state)
    drift = max(
        max(abs(s.y - cert.equilibrium.y), abs(s.z - cert.equilibrium.z)) for s in limits
    )
    print(
        f"  empirical check: both seeds reach the solved fixed point "
        f"({cert.equilibrium.y:.6f}, {cert.equilibrium.z:.6f}) within {drift:.2e}"
    )
    print(f"  verdict: {cert.verdict}")
    failed = [r for r in rows if not r.passed]
    print(f"{len(rows) - len(failed)}/{len(rows)} rows pass")
    return 0 if not failed else 1


def _reproduce_42() -> int:
    params = EXAMPLES["4.2"]
    print(f"reproduce 4.2 (a={params.a}, b={params.b}, p={params.p}, q={params.q})")
    cert = classify(params)
    rows = [_flag_row("verdict", cert.verdict, VERDICT_ZERO_GAS)]
    radius = spectral_radius(jacobian_at(params, State(0.0, 0.0)))
    rows.append(_numeric_row("spectral radius at origin", radius, 0.6455))
    seeds = np.array(EXAMPLE_SEEDS, dtype=np.float64)
    hits = _kernels.batch_hit_steps(
        params.a, params.b, params.p, params.q,
        seeds[:, 0].copy(), seeds[:, 1].copy(), 0.0, 0.0, 1e-6, 10_000,
    )
    for k, (y0, z0) in enumerate(EXAMPLE_SEEDS):
        reached = hits[k] >= 0
        rows.append(
            _flag_row(
                f"seed ({y0}, {z0}) within 1e-6 of origin by step 10^4",
                "yes" if reached else "no",
                "yes",
            )
        )
    _print_rows(rows)

    print("warnings (reported, non-fatal):")
    orb = iterate(params, State(*EXAMPLE_SEEDS[0]), max_steps=200, tol=1e-12)
    report = audit(orb, V_ZERO)
    print(
        f"  V-zero audit along seed {EXAMPLE_SEEDS[0]}: {report.violations} increases "
        f"out of {report.total_steps} steps (the origin-centered functional grows as "
        "orbits approach the origin; its log term diverges)"
    )
    failed = [r for r in rows if not r.passed]
    print(f"{len(rows) - len(failed)}/{len(rows)} rows pass")
    return 0 if not failed else 1


def cmd_reproduce(example_id: str) -> int:
    """Re-derive the built-in example values and compare against their targets."""
    if example_id == "4.1":
        return _reproduce_41()
    if example_id == "4.2":
        return _reproduce_42()
    print(f"unknown example id {example_id!r}; expected 4.1 or 4.2", file=sys.stderr)
    return 2


def cmd_sweep(spec: SweepSpec, out_dir: str | None = None) -> int:
    """Classify every grid point and write the regime table CSV."""
    path = _resolve(spec.output_csv, out_dir)
    header = "a,b,p,q,ratio,exists,zero_local,zero_global,pos_local,pos_global,verdict"
    lines = [header]
    for a in spec.axes["a"].grid():
        for b in spec.axes["b"].grid():
            for p in spec.axes["p"].grid():
                for q in spec.axes["q"].grid():
                    cert = classify(Params(a, b, p, q), tol=spec.tol)
                    flags = ",".join(
                        "true" if r.holds else "false"
                        for r in (
                            cert.existence,
                            cert.zero_local,
                            cert.zero_global,
                            cert.positive_local,
                            cert.positive_global,
                        )
                    )
                    ratio = cert.params.growth_ratio
                    lines.append(
                        f"{a:.17g},{b:.17g},{p:.17g},{q:.17g},{ratio:.17g},"
                        f"{flags},{cert.verdict}"
                    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines) - 1} rows to {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pielou-dyn",
        description="Simulate, bound, and certify the coupled saturating-growth map.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="iterate orbits and write per-seed CSVs")
    sim.add_argument("scenario", help="scenario JSON file")
    sim.add_argument("--out-dir", default=None, help="directory overriding output paths")
    sim.add_argument("--tol", type=float, default=None, help="override scenario tolerance")

    ana = sub.add_parser("analyze", help="write the stability certificate JSON")
    ana.add_argument("scenario", help="scenario JSON file")
    ana.add_argument("--out-dir", default=None, help="directory overriding output paths")
    ana.add_argument("--tol", type=float, default=None, help="override scenario tolerance")

    rep = sub.add_parser("reproduce", help="recompute a built-in example against its targets")
    rep.add_argument("example_id", help="4.1 or 4.2")

    swe = sub.add_parser("sweep", help="classify a parameter grid into a CSV")
    swe.add_argument("spec", help="sweep specification JSON file")
    swe.add_argument("--out-dir", default=None, help="directory overriding output paths")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate" or args.command == "analyze":
            scenario = load_scenario(args.scenario)
            if args.tol is not None:
                if not (args.tol > 0 and math.isfinite(args.tol)):
                    raise ScenarioError(f"--tol must be positive and finite, got {args.tol}")
                scenario.tol = args.tol
            if args.command == "simulate":
                return cmd_simulate(scenario, args.out_dir)
            return cmd_analyze(scenario, args.out_dir)
        if args.command == "reproduce":
            return cmd_reproduce(args.example_id)
        if args.command == "sweep":
            return cmd_sweep(load_sweep_spec(args.spec), args.out_dir)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OrbitNumericsError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
