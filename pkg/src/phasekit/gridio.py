"""CSV and binary serialization for grid-based objects.

Every file starts with a one-line JSON header (commented with '# ' in CSV)
carrying a format_version field and the grid metadata as {start, step, n}
triples, so grids rebuild exactly.  Binary payloads are little-endian
64-bit floats in row-major order, directly after the header line.  Floats
in CSV are printed with %.17g, which round-trips doubles exactly and keeps
repeated runs byte-identical.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .errors import SchemaError
from .phasespace import CharacteristicFunction, WignerFunction
from .tomography import Tomogram

FORMAT_VERSION = 1


def _axis_meta(axis: np.ndarray) -> dict:
    return {"start": float(axis[0]),
            "step": float(axis[1] - axis[0]),
            "n": int(axis.size)}


def _axis_from_meta(meta: dict) -> np.ndarray:
    try:
        return meta["start"] + meta["step"] * np.arange(int(meta["n"]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad axis metadata {meta!r}") from exc


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_bytes(path: str, payload: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header(kind: str, **extra) -> dict:
    head = {"format_version": FORMAT_VERSION, "kind": kind}
    head.update(extra)
    return head


def _dump_header(head: dict) -> str:
    return json.dumps(head, sort_keys=True, separators=(",", ":"))


def _parse_header(line: str, expected_kind: str) -> dict:
    line = line.lstrip("# ").strip()
    try:
        head = json.loads(line)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"unreadable header line: {exc}") from exc
    if head.get("kind") != expected_kind:
        raise SchemaError(
            f"expected a {expected_kind!r} file, found {head.get('kind')!r}")
    if head.get("format_version") != FORMAT_VERSION:
        raise SchemaError(
            f"unsupported format_version {head.get('format_version')!r}")
    return head


# -- Wigner ------------------------------------------------------------------

def wigner_csv(w: WignerFunction) -> str:
    head = _header("wigner", hbar=w.hbar, q=_axis_meta(w.q_grid),
                   p=_axis_meta(w.p_grid))
    lines = ["# " + _dump_header(head), "q,p,value"]
    for i, q in enumerate(w.q_grid):
        qs = _fmt(q)
        for j, p in enumerate(w.p_grid):
            lines.append(f"{qs},{_fmt(p)},{_fmt(w.values[i, j])}")
    return "\n".join(lines) + "\n"


def wigner_from_csv(text: str) -> WignerFunction:
    lines = text.splitlines()
    head = _parse_header(lines[0], "wigner")
    q = _axis_from_meta(head["q"])
    p = _axis_from_meta(head["p"])
    values = np.array([float(row.split(",")[2]) for row in lines[2:]
                       if row.strip()])
    if values.size != q.size * p.size:
        raise SchemaError(
            f"{values.size} rows do not fill a {q.size} x {p.size} grid")
    return WignerFunction(q, p, values.reshape(q.size, p.size),
                          float(head.get("hbar", 1.0)))


def wigner_binary(w: WignerFunction) -> bytes:
    head = _header("wigner", hbar=w.hbar, q=_axis_meta(w.q_grid),
                   p=_axis_meta(w.p_grid))
    return (_dump_header(head) + "\n").encode() + \
        np.ascontiguousarray(w.values, dtype="<f8").tobytes()


def wigner_from_binary(payload: bytes) -> WignerFunction:
    newline = payload.index(b"\n")
    head = _parse_header(payload[:newline].decode(), "wigner")
    q = _axis_from_meta(head["q"])
    p = _axis_from_meta(head["p"])
    values = np.frombuffer(payload[newline + 1:], dtype="<f8")
    if values.size != q.size * p.size:
        raise SchemaError("binary payload does not fill the declared grid")
    return WignerFunction(q, p, values.reshape(q.size, p.size).copy(),
                          float(head.get("hbar", 1.0)))


def wigner_json(w: WignerFunction) -> str:
    head = _header("wigner", hbar=w.hbar, q=_axis_meta(w.q_grid),
                   p=_axis_meta(w.p_grid))
    head["values"] = [[float(v) for v in row] for row in w.values]
    return json.dumps(head, sort_keys=True, separators=(",", ":")) + "\n"


# -- characteristic function ---------------------------------------------------

def characteristic_csv(chi: CharacteristicFunction) -> str:
    head = _header("characteristic", hbar=chi.hbar,
                   lambda_=_axis_meta(chi.lambda_grid),
                   mu=_axis_meta(chi.mu_grid))
    lines = ["# " + _dump_header(head), "lambda,mu,re,im"]
    for i, lam in enumerate(chi.lambda_grid):
        ls = _fmt(lam)
        for j, mu in enumerate(chi.mu_grid):
            v = chi.values[i, j]
            lines.append(f"{ls},{_fmt(mu)},{_fmt(v.real)},{_fmt(v.imag)}")
    return "\n".join(lines) + "\n"


def characteristic_from_csv(text: str) -> CharacteristicFunction:
    lines = text.splitlines()
    head = _parse_header(lines[0], "characteristic")
    lam = _axis_from_meta(head["lambda_"])
    mu = _axis_from_meta(head["mu"])
    rows = [row.split(",") for row in lines[2:] if row.strip()]
    values = np.array([complex(float(r[2]), float(r[3])) for r in rows])
    if values.size != lam.size * mu.size:
        raise SchemaError("row count does not fill the declared grid")
    return CharacteristicFunction(lam, mu, values.reshape(lam.size, mu.size),
                                  float(head.get("hbar", 1.0)))


# -- tomogram ------------------------------------------------------------------

def tomogram_csv(t: Tomogram) -> str:
    head = _header("tomogram", hbar=t.hbar, nu=_axis_meta(t.nu_grid),
                   rays=[[float(l), float(m)] for l, m in t.rays])
    lines = ["# " + _dump_header(head), "theta,nu,value"]
    for r, (lam, mu) in enumerate(t.rays):
        theta = _fmt(float(np.mod(np.arctan2(mu, lam), np.pi)))
        for j, nu in enumerate(t.nu_grid):
            lines.append(f"{theta},{_fmt(nu)},{_fmt(t.values[r, j])}")
    return "\n".join(lines) + "\n"


def tomogram_from_csv(text: str) -> Tomogram:
    lines = text.splitlines()
    head = _parse_header(lines[0], "tomogram")
    nu = _axis_from_meta(head["nu"])
    rays = np.asarray(head["rays"], dtype=float)
    values = np.array([float(row.split(",")[2]) for row in lines[2:]
                       if row.strip()])
    if values.size != rays.shape[0] * nu.size:
        raise SchemaError("row count does not fill the declared tomogram")
    return Tomogram(rays, nu, values.reshape(rays.shape[0], nu.size),
                    float(head.get("hbar", 1.0)))
