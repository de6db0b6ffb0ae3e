"""Command-line front end: scenario files in, CSV/JSON artifacts out.

Subcommands: state, wigner, evolve, tomogram, reconstruct, spin-search,
histories, decay, validate.  All numerics are configured by JSON files and
flags; outputs are written atomically (temp file + rename) and are
byte-identical across repeated runs (fixed float formatting, sorted JSON
keys, no clocks or randomness anywhere).

Exit codes: 0 success, 1 validation error, 2 numerical failure.  Failures
emit a single-line JSON record {"error": ..., "message": ...} on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import core, decay, dynamics, gridio, histories, phasespace, spin_bell
from . import tomography
from .errors import NumericalError, PhasekitError, SchemaError, ValidationError

_POWER_OF_TWO = "must be a power of two >= 8"


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting with its own codes."""

    def error(self, message):
        raise ValidationError(message)


def _load_json(path: str) -> dict:
    if not os.path.exists(path):
        raise ValidationError(f"input file does not exist: {path}")
    try:
        with open(path) as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _ensure_outdir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def _threads(args) -> int:
    value = args.threads
    if value is None:
        env = os.environ.get("PHASEKIT_THREADS")
        if env is not None:
            try:
                value = int(env)
            except ValueError as exc:
                raise ValidationError(
                    f"PHASEKIT_THREADS={env!r} is not an integer") from exc
    if value is None:
        value = os.cpu_count() or 1
    if value < 1:
        raise ValidationError(f"--threads must be >= 1, got {value}")
    return value


def _load_state(args):
    grid_spec = _load_json(args.grid)
    state_spec = _load_json(args.state)
    grid = core.grid_from_dict(grid_spec)
    hbar = float(state_spec.get("hbar", grid_spec.get("hbar", 1.0)))
    state = core.state_from_dict(state_spec, grid, hbar)
    return grid, state, hbar


def _density_csv(kind: str, axis: np.ndarray, density: np.ndarray,
                 label: str) -> str:
    head = {"format_version": gridio.FORMAT_VERSION, "kind": kind,
            "axis": gridio._axis_meta(axis)}
    lines = ["# " + json.dumps(head, sort_keys=True, separators=(",", ":")),
             f"{label},density"]
    for x, d in zip(axis, density):
        lines.append(f"{x:.17g},{d:.17g}")
    return "\n".join(lines) + "\n"


def _wigner_summary(w) -> dict:
    return {
        "normalization": w.normalization(),
        "purity": phasespace.purity(w),
        "negativity_volume": phasespace.negativity_volume(w),
        "w_min": float(w.values.min()),
        "w_max": float(w.values.max()),
    }


def _write_wigner(w, outdir: str, fmt: str, stem: str = "wigner") -> str:
    if fmt == "csv":
        path = os.path.join(outdir, f"{stem}.csv")
        gridio.atomic_write_text(path, gridio.wigner_csv(w))
    elif fmt == "binary":
        path = os.path.join(outdir, f"{stem}.bin")
        gridio.atomic_write_bytes(path, gridio.wigner_binary(w))
    elif fmt == "json":
        path = os.path.join(outdir, f"{stem}.json")
        gridio.atomic_write_text(path, gridio.wigner_json(w))
    else:
        raise ValidationError(f"unknown format {fmt!r}")
    return path


# -- subcommand handlers -------------------------------------------------------

def _cmd_state(args) -> int:
    outdir = _ensure_outdir(args.out)
    _, state, hbar = _load_state(args)
    psi = state if isinstance(state, core.WaveFunction) else None
    if psi is None:
        first = state.components[0][1]
        pos = sum(w * core.position_density(p) for w, p in state.components)
        mom_axis = first.grid.momentum_points(hbar)
        mom = sum(w * core.position_density(core.momentum_wavefunction(p))
                  for w, p in state.components)
        axis = first.grid.points
    else:
        axis = psi.grid.points
        pos = core.position_density(psi)
        tilde = core.momentum_wavefunction(psi)
        mom_axis = tilde.grid.points
        mom = core.position_density(tilde)
    gridio.atomic_write_text(os.path.join(outdir, "position_density.csv"),
                             _density_csv("position_density", axis, pos, "q"))
    gridio.atomic_write_text(os.path.join(outdir, "momentum_density.csv"),
                             _density_csv("momentum_density", mom_axis, mom, "p"))
    dq = axis[1] - axis[0]
    dp = mom_axis[1] - mom_axis[0]
    summary = {
        "hbar": hbar,
        "threads": _threads(args),
        "norm": float(np.sum(pos) * dq),
        "q_mean": float(np.sum(pos * axis) * dq),
        "p_mean": float(np.sum(mom * mom_axis) * dp),
    }
    summary["q_var"] = float(np.sum(pos * (axis - summary["q_mean"]) ** 2) * dq)
    summary["p_var"] = float(np.sum(mom * (mom_axis - summary["p_mean"]) ** 2) * dp)
    gridio.atomic_write_text(os.path.join(outdir, "summary.json"),
                             _dump_json(summary))
    return 0


def _cmd_wigner(args) -> int:
    outdir = _ensure_outdir(args.out)
    _, state, _ = _load_state(args)
    w = phasespace.wigner_from_state(state)
    _write_wigner(w, outdir, args.format)
    summary = _wigner_summary(w)
    summary["threads"] = _threads(args)
    gridio.atomic_write_text(os.path.join(outdir, "summary.json"),
                             _dump_json(summary))
    return 0


def _sigma_q2(w) -> float:
    marg = w.values.sum(axis=1) * w.dp
    mean = float(np.sum(marg * w.q_grid) * w.dq)
    return float(np.sum(marg * (w.q_grid - mean) ** 2) * w.dq)


def _cmd_evolve(args) -> int:
    outdir = _ensure_outdir(args.out)
    _, state, _ = _load_state(args)
    scenario = _load_json(args.hamiltonian)
    violations = validate_dynamics_dict(scenario)
    if violations:
        raise ValidationError("; ".join(violations))
    block = scenario["hamiltonian"]
    h = dynamics.PolynomialHamiltonian(float(block["mass"]),
                                       tuple(block["potential"]))
    dt = float(scenario["dt"])
    steps = int(scenario["steps"])
    generator = scenario.get("generator", "moyal")
    sample_every = int(scenario.get("sample_every", max(1, steps // 200)))
    w = phasespace.wigner_from_state(state)
    prop = dynamics.WignerPropagator(w, h, dt, quantum=generator == "moyal")
    rows = []

    def record(step: int, values: np.ndarray) -> None:
        snap = phasespace.WignerFunction(w.q_grid, w.p_grid, values, w.hbar)
        rows.append((step * dt, _sigma_q2(snap), snap.normalization(),
                     phasespace.purity(snap)))

    values = w.values.astype(np.complex128)
    record(0, values.real)
    for step in range(1, steps + 1):
        values = prop.step(values)
        if step % sample_every == 0 or step == steps:
            record(step, values.real)
    final = phasespace.WignerFunction(w.q_grid, w.p_grid, values.real, w.hbar)
    head = {"format_version": gridio.FORMAT_VERSION, "kind": "trajectory",
            "generator": generator, "dt": dt, "steps": steps}
    lines = ["# " + json.dumps(head, sort_keys=True, separators=(",", ":")),
             "t,sigma_q2,norm,purity"]
    for t, s2, norm, pur in rows:
        lines.append(f"{t:.17g},{s2:.17g},{norm:.17g},{pur:.17g}")
    gridio.atomic_write_text(os.path.join(outdir, "trajectory.csv"),
                             "\n".join(lines) + "\n")
    _write_wigner(final, outdir, args.format, stem="wigner_final")
    summary = _wigner_summary(final)
    summary["threads"] = _threads(args)
    gridio.atomic_write_text(os.path.join(outdir, "summary.json"),
                             _dump_json(summary))
    return 0


def _cmd_tomogram(args) -> int:
    outdir = _ensure_outdir(args.out)
    _, state, _ = _load_state(args)
    w = phasespace.wigner_from_state(state)
    rays = tomography.uniform_rays(args.angles)
    if args.nu_range is not None:
        nu_max = float(args.nu_range)
    else:
        # Cover the worst-case unit-ray quadrature over the mass-bearing box,
        # and keep the dual band inside the Wigner grid's band edge so the
        # slice transform cannot alias.
        tol = 1e-13 * np.max(np.abs(w.values))
        qs = w.q_grid[np.max(np.abs(w.values), axis=1) > tol]
        ps = w.p_grid[np.max(np.abs(w.values), axis=0) > tol]
        support = 1.1 * float(np.hypot(np.max(np.abs(qs)), np.max(np.abs(ps))))
        min_spacing = max(w.dq, w.dp)
        nu_max = max(support, 0.5 * (args.nu_points - 1) * min_spacing)
    nu = np.linspace(-nu_max, nu_max, args.nu_points)
    t = tomography.tomogram_from_wigner(w, rays, nu)
    gridio.atomic_write_text(os.path.join(outdir, "tomogram.csv"),
                             gridio.tomogram_csv(t))
    summary = {
        "threads": _threads(args),
        "angles": int(args.angles),
        "nu_points": int(args.nu_points),
        "nu_max": nu_max,
        "min_value": float(t.values.min()),
        "worst_ray_norm_error": float(
            np.max(np.abs(t.values.sum(axis=1) * t.dnu - 1.0))),
    }
    gridio.atomic_write_text(os.path.join(outdir, "summary.json"),
                             _dump_json(summary))
    return 0


def _cmd_reconstruct(args) -> int:
    outdir = _ensure_outdir(args.out)
    if not os.path.exists(args.tomogram):
        raise ValidationError(f"input file does not exist: {args.tomogram}")
    with open(args.tomogram) as handle:
        t = gridio.tomogram_from_csv(handle.read())
    if args.grid is not None:
        grid = core.grid_from_dict(_load_json(args.grid))
        q_grid = grid.points
        p_grid = phasespace.wigner_momentum_grid(grid, t.hbar)
    else:
        q_grid = p_grid = None
    w = tomography.wigner_from_tomogram(t, q_grid, p_grid)
    _write_wigner(w, outdir, args.format)
    summary = _wigner_summary(w)
    summary["threads"] = _threads(args)
    gridio.atomic_write_text(os.path.join(outdir, "summary.json"),
                             _dump_json(summary))
    return 0


def _cmd_spin_search(args) -> int:
    outdir = _ensure_outdir(args.out)
    result = spin_bell.violation_search(args.resolution)
    report = result.to_dict()
    report["format_version"] = gridio.FORMAT_VERSION
    report["resolution_deg"] = float(args.resolution)
    report["threads"] = _threads(args)
    gridio.atomic_write_text(os.path.join(outdir, "spin_search.json"),
                             _dump_json(report))
    return 0


def _complex_entry(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    raise SchemaError(f"cannot read {x!r} as a complex number")


def _parse_vector(entries) -> np.ndarray:
    return np.array([_complex_entry(x) for x in entries], dtype=complex)


def _parse_projector(spec) -> np.ndarray:
    if isinstance(spec, dict) and "pauli_projector" in spec:
        block = spec["pauli_projector"]
        return spin_bell.projector(np.asarray(block["axis"], dtype=float),
                                   int(block.get("sign", 1)))
    if isinstance(spec, list):
        return np.array([[_complex_entry(x) for x in row] for row in spec],
                        dtype=complex)
    raise SchemaError(f"cannot read {spec!r} as a projector")


def _cmd_histories(args) -> int:
    outdir = _ensure_outdir(args.out)
    spec = _load_json(args.spec)
    violations = validate_histories_dict(spec)
    if violations:
        raise ValidationError("; ".join(violations))
    initial = _parse_vector(spec["initial"])
    branches = [[_parse_projector(p) for p in chain]
                for chain in spec["branches"]]
    final_family = [_parse_vector(v) for v in spec["final_family"]]
    tol = float(spec.get("tolerance", 1e-10))
    branch_set = histories.BranchSet(branches, initial)
    matrix = histories.decoherence_matrix(
        branch_set, final_family,
        require_exhaustive=bool(spec.get("require_exhaustive", True)))
    strict_ok, strict_max = histories.is_consistent(matrix, "strict", tol)
    weak_ok, weak_max = histories.is_consistent(matrix, "weak", tol)
    report = {
        "format_version": gridio.FORMAT_VERSION,
        "threads": _threads(args),
        "tolerance": tol,
        "probabilities": [float(x) for x in np.diag(matrix).real],
        "total": float(matrix.sum().real),
        "matrix": [[[float(v.real), float(v.imag)] for v in row]
                   for row in matrix],
        "strict": {"consistent": strict_ok, "max_offdiagonal": strict_max},
        "weak": {"consistent": weak_ok, "max_offdiagonal": weak_max},
    }
    gridio.atomic_write_text(os.path.join(outdir, "histories_report.json"),
                             _dump_json(report))
    return 0


def _cmd_decay(args) -> int:
    outdir = _ensure_outdir(args.out)
    spec = _load_json(args.model)
    violations = validate_decay_dict(spec)
    if violations:
        raise ValidationError("; ".join(violations))
    model = decay.model_from_dict(spec)
    gamma_gr = model.golden_rule_rate()
    t_max = args.t_max if args.t_max is not None else 4.0 / gamma_gr
    if t_max <= 0:
        raise ValidationError(f"--t-max must be positive, got {t_max}")
    n_times = args.n_times
    if n_times % 2 == 0:
        n_times += 1                       # symmetric grid including t = 0
    times = np.linspace(-t_max, t_max, n_times)
    record = decay.survival_amplitude(model, times)
    head = {"format_version": gridio.FORMAT_VERSION, "kind": "survival",
            "gamma_golden_rule": gamma_gr}
    lines = ["# " + json.dumps(head, sort_keys=True, separators=(",", ":")),
             "t,re_A,im_A,P"]
    for t, a, p in zip(record.times, record.amplitude, record.probability):
        lines.append(f"{t:.17g},{a.real:.17g},{a.imag:.17g},{p:.17g}")
    gridio.atomic_write_text(os.path.join(outdir, "survival.csv"),
                             "\n".join(lines) + "\n")
    fit_lo = 1.0 / gamma_gr
    fit_hi = min(4.0 / gamma_gr, 0.9 * t_max)
    report = {
        "format_version": gridio.FORMAT_VERSION,
        "threads": _threads(args),
        "gamma_golden_rule": gamma_gr,
        "recurrence_time": model.recurrence_time,
    }
    if fit_lo < fit_hi:
        report["gamma_fit"] = decay.fit_decay_rate(record, (fit_lo, fit_hi))
        report["fit_window"] = [fit_lo, fit_hi]
    if model.is_flat():
        pole = decay.second_sheet_pole(model)
        report["pole"] = {"re": pole.real, "im": pole.imag}
    gridio.atomic_write_text(os.path.join(outdir, "pole.json"),
                             _dump_json(report))
    return 0


# -- validation ----------------------------------------------------------------

def _is_power_of_two(n) -> bool:
    return isinstance(n, int) and n >= 8 and (n & (n - 1)) == 0


def validate_grid_dict(spec: dict) -> list[str]:
    out = []
    for key in ("q_min", "q_max", "n_points"):
        if key not in spec:
            out.append(f"grid: missing field '{key}'")
    if out:
        return out
    if not isinstance(spec["n_points"], int) or not _is_power_of_two(spec["n_points"]):
        out.append(f"grid: field 'n_points' = {spec['n_points']!r} "
                   f"{_POWER_OF_TWO}")
    try:
        if not float(spec["q_max"]) > float(spec["q_min"]):
            out.append("grid: q_max must exceed q_min")
    except (TypeError, ValueError):
        out.append("grid: q_min/q_max must be numbers")
    return out


def _validate_gaussian(spec: dict, prefix: str) -> list[str]:
    out = []
    for key in ("q0", "p0", "sigma"):
        if key not in spec:
            out.append(f"{prefix}: missing field '{key}'")
    if "sigma" in spec:
        try:
            if not float(spec["sigma"]) > 0:
                out.append(f"{prefix}: field 'sigma' must be positive")
        except (TypeError, ValueError):
            out.append(f"{prefix}: field 'sigma' must be a number")
    return out


def validate_state_dict(spec: dict) -> list[str]:
    out = []
    kind = spec.get("type")
    if kind == "gaussian":
        out += _validate_gaussian(spec, "state")
    elif kind == "superposition":
        terms = spec.get("terms")
        if not isinstance(terms, list) or not terms:
            out.append("state: superposition needs a nonempty 'terms' list")
        else:
            for i, term in enumerate(terms):
                if "gaussian" not in term:
                    out.append(f"state: term {i} missing 'gaussian'")
                else:
                    out += _validate_gaussian(term["gaussian"], f"state: term {i}")
    elif kind == "mixture":
        comps = spec.get("components")
        if not isinstance(comps, list) or not comps:
            out.append("state: mixture needs a nonempty 'components' list")
        else:
            total = 0.0
            for i, comp in enumerate(comps):
                if "weight" not in comp or "state" not in comp:
                    out.append(f"state: component {i} needs 'weight' and 'state'")
                    continue
                try:
                    weight = float(comp["weight"])
                except (TypeError, ValueError):
                    out.append(f"state: component {i} weight is not a number")
                    continue
                if weight < 0:
                    out.append(
                        f"state: component {i} weight {weight} is negative; "
                        "mixture weights must be nonnegative and sum to 1")
                total += weight
                out += validate_state_dict(comp["state"])
            if not out and abs(total - 1.0) > 1e-12:
                out.append(f"state: mixture weights sum to {total}, not 1")
    else:
        out.append(f"state: unknown type {kind!r}")
    return out


def validate_dynamics_dict(spec: dict) -> list[str]:
    out = []
    block = spec.get("hamiltonian")
    if not isinstance(block, dict):
        out.append("dynamics: missing 'hamiltonian' block")
    else:
        if "mass" not in block or not isinstance(block["mass"], (int, float)) \
                or block["mass"] <= 0:
            out.append("dynamics: field 'mass' must be a positive number")
        pot = block.get("potential")
        if not isinstance(pot, list) or not pot:
            out.append("dynamics: field 'potential' must be a coefficient list")
        elif len(pot) - 1 > dynamics.MAX_POTENTIAL_DEGREE:
            out.append(
                f"dynamics: potential degree {len(pot) - 1} above "
                f"{dynamics.MAX_POTENTIAL_DEGREE}")
    if "dt" not in spec or not spec.get("dt"):
        out.append("dynamics: field 'dt' must be nonzero")
    if not isinstance(spec.get("steps"), int) or spec.get("steps", 0) < 1:
        out.append("dynamics: field 'steps' must be a positive integer")
    if spec.get("generator", "moyal") not in ("moyal", "liouville"):
        out.append(f"dynamics: unknown generator {spec.get('generator')!r}")
    return out


def validate_decay_dict(spec: dict) -> list[str]:
    out = []
    for key in ("omega0", "band", "n_modes", "coupling"):
        if key not in spec:
            out.append(f"decay: missing field '{key}'")
    if out:
        return out
    band = spec["band"]
    if not (isinstance(band, list) and len(band) == 2 and band[0] < band[1]):
        out.append("decay: field 'band' must be [lo, hi] with lo < hi")
    elif not band[0] < spec["omega0"] < band[1]:
        out.append("decay: omega0 must lie inside the band")
    if not isinstance(spec["n_modes"], int) or spec["n_modes"] < 500:
        out.append("decay: field 'n_modes' must be an integer >= 500")
    coupling = spec["coupling"]
    if not isinstance(coupling, dict) or "g" not in coupling:
        out.append("decay: coupling block needs a 'g' field")
    elif coupling.get("profile", "flat") not in ("flat", "lorentzian"):
        out.append(f"decay: unknown coupling profile {coupling.get('profile')!r}")
    elif coupling.get("profile") == "lorentzian" and "width" not in coupling:
        out.append("decay: lorentzian coupling needs a 'width' field")
    return out


def validate_histories_dict(spec: dict) -> list[str]:
    out = []
    for key in ("initial", "branches", "final_family"):
        if key not in spec:
            out.append(f"histories: missing field '{key}'")
    if out:
        return out
    if not isinstance(spec["branches"], list) or not spec["branches"]:
        out.append("histories: 'branches' must be a nonempty list of chains")
    if not isinstance(spec["final_family"], list) or not spec["final_family"]:
        out.append("histories: 'final_family' must be a nonempty vector list")
    return out


_DETECTORS = (
    ("n_points", "grid", validate_grid_dict),
    ("type", "state", validate_state_dict),
    ("hamiltonian", "dynamics scenario", validate_dynamics_dict),
    ("omega0", "decay model", validate_decay_dict),
    ("branches", "histories spec", validate_histories_dict),
)


def _cmd_validate(args) -> int:
    path = args.path
    if not os.path.exists(path):
        raise ValidationError(f"unreadable file: {path}")
    spec = _load_json(path)
    for key, kind, checker in _DETECTORS:
        if isinstance(spec, dict) and key in spec:
            violations = checker(spec)
            if violations:
                print(f"INVALID {path} ({kind})")
                for v in violations:
                    print(f"  - {v}")
                return 1
            print(f"OK {path} ({kind})")
            return 0
    print(f"INVALID {path}: unrecognized scenario document")
    return 1


# -- parser --------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="phasekit",
                     description="Phase-space quantum mechanics toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, state=True):
        if state:
            p.add_argument("--state", required=True, help="state JSON file")
            p.add_argument("--grid", required=True, help="grid JSON file")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--threads", type=int, default=None,
                       help="worker cap (default: machine parallelism, or "
                            "PHASEKIT_THREADS)")
        p.add_argument("--format", choices=("csv", "json", "binary"),
                       default="csv", help="grid export format")

    p = sub.add_parser("state", help="densities and moments of a state")
    common(p)
    p.set_defaults(handler=_cmd_state)

    p = sub.add_parser("wigner", help="Wigner function of a state")
    common(p)
    p.set_defaults(handler=_cmd_wigner)

    p = sub.add_parser("evolve", help="evolve a Wigner function in time")
    common(p)
    p.add_argument("--hamiltonian", required=True,
                   help="dynamics scenario JSON file")
    p.set_defaults(handler=_cmd_evolve)

    p = sub.add_parser("tomogram", help="symplectic tomogram of a state")
    common(p)
    p.add_argument("--angles", type=int, default=128)
    p.add_argument("--nu-points", type=int, default=512)
    p.add_argument("--nu-range", type=float, default=None,
                   help="half-width of the quadrature grid (default: auto)")
    p.set_defaults(handler=_cmd_tomogram)

    p = sub.add_parser("reconstruct", help="Wigner function from a tomogram")
    common(p, state=False)
    p.add_argument("--tomogram", required=True, help="tomogram CSV file")
    p.add_argument("--grid", default=None,
                   help="optional grid JSON for the output phase-space grid")
    p.set_defaults(handler=_cmd_reconstruct)

    p = sub.add_parser("spin-search", help="triangle-bound violation search")
    common(p, state=False)
    p.add_argument("--resolution", type=float, required=True,
                   help="scan step in degrees (1 to 15)")
    p.set_defaults(handler=_cmd_spin_search)

    p = sub.add_parser("histories", help="decoherence matrix and consistency")
    common(p, state=False)
    p.add_argument("--spec", required=True, help="histories JSON file")
    p.set_defaults(handler=_cmd_histories)

    p = sub.add_parser("decay", help="survival probability and resonance pole")
    common(p, state=False)
    p.add_argument("--model", required=True, help="decay model JSON file")
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--n-times", type=int, default=801)
    p.set_defaults(handler=_cmd_decay)

    p = sub.add_parser("validate", help="schema-check a scenario file")
    p.add_argument("path", help="scenario JSON file")
    p.set_defaults(handler=_cmd_validate)
    return parser


def run(argv=None) -> int:
    """Parse arguments and run one subcommand; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except NumericalError as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
        return 2
    except PhasekitError as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
        return 1


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
