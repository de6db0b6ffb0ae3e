"""Grid-based pure and mixed one-dimensional quantum states.

States live on a uniform position grid with periodic boundary conditions;
every construction helper checks that the state has decayed below tolerance
at the grid edges so spectral transforms are free of boundary artifacts.
The Fourier convention used throughout the package is

    psi_tilde(p) = (2 pi hbar)^(-1/2) * integral psi(x) exp(-i p x / hbar) dx

and its inverse with the opposite sign.  All downstream modules rely on this
sign choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadWeightsError,
    BasisMismatchError,
    GridMismatchError,
    GridTooCoarseError,
    PacketOutOfBoundsError,
    SchemaError,
    ValidationError,
)

DEFAULT_HBAR = 1.0

# Relative density tolerance at the grid edges (periodic boundaries).
EDGE_DECAY_TOL = 1e-10


def _check_hbar(hbar: float) -> float:
    hbar = float(hbar)
    if not hbar > 0:
        raise ValidationError(f"hbar must be positive, got {hbar}")
    return hbar


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of ``n_points`` cells on [q_min, q_max).

    ``n_points`` must be a power of two (>= 8) so spectral kernels can use
    radix-2 transforms.  The conjugate momentum grid is fully determined:
    spacing 2*pi*hbar / (n_points * dq), centered on zero.
    """

    q_min: float
    q_max: float
    n_points: int

    def __post_init__(self):
        if not self.q_max > self.q_min:
            raise ValidationError(
                f"q_max must exceed q_min, got [{self.q_min}, {self.q_max}]")
        n = self.n_points
        if n < 8 or (n & (n - 1)) != 0:
            raise ValidationError(
                f"n_points must be a power of two >= 8, got {n}")

    @property
    def dq(self) -> float:
        return (self.q_max - self.q_min) / self.n_points

    @property
    def points(self) -> np.ndarray:
        return self.q_min + self.dq * np.arange(self.n_points)

    def momentum_spacing(self, hbar: float = DEFAULT_HBAR) -> float:
        return 2.0 * np.pi * _check_hbar(hbar) / (self.n_points * self.dq)

    def momentum_points(self, hbar: float = DEFAULT_HBAR) -> np.ndarray:
        """Conjugate momentum grid, centered on zero."""
        dp = self.momentum_spacing(hbar)
        return dp * (np.arange(self.n_points) - self.n_points // 2)

    def momentum_grid(self, hbar: float = DEFAULT_HBAR) -> "GridSpec":
        dp = self.momentum_spacing(hbar)
        half = dp * (self.n_points // 2)
        return GridSpec(-half, half, self.n_points)


@dataclass
class WaveFunction:
    """Pure state: complex amplitudes on a uniform grid, unit grid norm."""

    grid: GridSpec
    amplitudes: np.ndarray
    hbar: float = DEFAULT_HBAR

    def __post_init__(self):
        self.hbar = _check_hbar(self.hbar)
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.grid.n_points,):
            raise GridMismatchError(
                f"amplitude array has shape {amps.shape}, grid expects "
                f"({self.grid.n_points},)")
        self.amplitudes = amps

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.dq)

    def normalized(self) -> "WaveFunction":
        n = self.norm
        if n <= 0:
            raise ValidationError("cannot normalize a zero state")
        return WaveFunction(self.grid, self.amplitudes / np.sqrt(n), self.hbar)


@dataclass
class MixedState:
    """Convex mixture of pure states on a common grid."""

    components: list = field(default_factory=list)

    def __post_init__(self):
        if not self.components:
            raise BadWeightsError("mixture needs at least one component")
        comps = []
        for weight, psi in self.components:
            w = float(weight)
            if w < 0:
                raise BadWeightsError(f"mixture weight {w} is negative")
            if not isinstance(psi, WaveFunction):
                raise ValidationError("mixture components must be WaveFunctions")
            comps.append((w, psi))
        total = sum(w for w, _ in comps)
        if abs(total - 1.0) > 1e-12:
            raise BadWeightsError(f"mixture weights sum to {total}, not 1")
        g0 = comps[0][1].grid
        h0 = comps[0][1].hbar
        for _, psi in comps[1:]:
            if psi.grid != g0 or psi.hbar != h0:
                raise GridMismatchError("mixture components on different grids")
        self.components = comps

    @property
    def grid(self) -> GridSpec:
        return self.components[0][1].grid

    @property
    def hbar(self) -> float:
        return self.components[0][1].hbar


State = WaveFunction | MixedState


def check_edge_decay(psi: WaveFunction, tol: float = EDGE_DECAY_TOL) -> None:
    """Raise unless the edge density is below ``tol`` relative to the peak."""
    density = np.abs(psi.amplitudes) ** 2
    peak = density.max()
    if peak == 0:
        raise ValidationError("zero state")
    edge = max(density[0], density[-1])
    if edge > tol * peak:
        raise PacketOutOfBoundsError(
            f"edge density {edge / peak:.3e} of peak exceeds {tol:.0e}; "
            "enlarge the grid")


def gaussian_packet(grid: GridSpec, q0: float, p0: float, sigma: float,
                    hbar: float = DEFAULT_HBAR) -> WaveFunction:
    """Normalized Gaussian packet exp(-(x-q0)^2/(4 sigma^2) + i p0 x / hbar).

    ``sigma`` is the position standard deviation; the packet is minimum
    uncertainty with momentum spread hbar / (2 sigma).
    """
    hbar = _check_hbar(hbar)
    if sigma <= 0:
        raise ValidationError(f"sigma must be positive, got {sigma}")
    if sigma < 4.0 * grid.dq:
        raise GridTooCoarseError(
            f"sigma={sigma} below 4*dq={4.0 * grid.dq}; refine the grid")
    # Edge check on the analytic envelope: relative density exp(-d^2/(2 s^2)).
    d = min(q0 - grid.q_min, grid.q_max - q0)
    if d <= 0 or np.exp(-d * d / (2.0 * sigma * sigma)) > EDGE_DECAY_TOL:
        raise PacketOutOfBoundsError(
            f"packet at q0={q0}, sigma={sigma} does not fit in "
            f"[{grid.q_min}, {grid.q_max}]")
    x = grid.points
    amps = np.exp(-((x - q0) ** 2) / (4.0 * sigma * sigma)
                  + 1j * p0 * x / hbar)
    psi = WaveFunction(grid, amps, hbar).normalized()
    check_edge_decay(psi)
    return psi


def oscillator_eigenstate(grid: GridSpec, n: int, *, mass: float = 1.0,
                          omega: float = 1.0, q0: float = 0.0, p0: float = 0.0,
                          hbar: float = DEFAULT_HBAR) -> WaveFunction:
    """n-th harmonic oscillator eigenfunction, optionally displaced.

    Uses the stable normalized Hermite-function recurrence; the result is
    re-normalized on the grid.
    """
    hbar = _check_hbar(hbar)
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if mass <= 0 or omega <= 0:
        raise ValidationError("mass and omega must be positive")
    xi = np.sqrt(mass * omega / hbar) * (grid.points - q0)
    h_prev = np.pi ** -0.25 * np.exp(-0.5 * xi * xi)
    if n == 0:
        h = h_prev
    else:
        h = np.sqrt(2.0) * xi * h_prev
        for k in range(2, n + 1):
            h, h_prev = (np.sqrt(2.0 / k) * xi * h
                         - np.sqrt((k - 1) / k) * h_prev), h
    amps = h.astype(np.complex128)
    if p0 != 0.0:
        amps = amps * np.exp(1j * p0 * grid.points / hbar)
    psi = WaveFunction(grid, amps, hbar).normalized()
    check_edge_decay(psi)
    return psi


def superpose(terms: list[tuple[complex, WaveFunction]]) -> WaveFunction:
    """Normalized coherent superposition sum_i c_i psi_i."""
    if not terms:
        raise ValidationError("superposition needs at least one term")
    _, first = terms[0]
    amps = np.zeros(first.grid.n_points, dtype=np.complex128)
    for coeff, psi in terms:
        if psi.grid != first.grid or psi.hbar != first.hbar:
            raise GridMismatchError("superposition terms on different grids")
        amps += complex(coeff) * psi.amplitudes
    out = WaveFunction(first.grid, amps, first.hbar).normalized()
    check_edge_decay(out)
    return out


def position_density(psi: WaveFunction) -> np.ndarray:
    """|psi(x_k)|^2; sums to 1/dq times dq by construction."""
    return np.abs(psi.amplitudes) ** 2


def _position_to_momentum(amplitudes: np.ndarray, grid: GridSpec,
                          hbar: float) -> np.ndarray:
    """Unitary transform onto the centered conjugate momentum grid."""
    n = grid.n_points
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    p = grid.momentum_points(hbar)
    phase = np.exp(-1j * p * grid.q_min / hbar)
    return (grid.dq / np.sqrt(2.0 * np.pi * hbar)) * phase * np.fft.fft(
        signs * amplitudes)


def momentum_wavefunction(psi: WaveFunction) -> WaveFunction:
    """Momentum-space wavefunction on the conjugate grid (unitary map)."""
    amps = _position_to_momentum(psi.amplitudes, psi.grid, psi.hbar)
    return WaveFunction(psi.grid.momentum_grid(psi.hbar), amps, psi.hbar)


def momentum_amplitudes(psi: WaveFunction, p_values: np.ndarray) -> np.ndarray:
    """psi_tilde evaluated at arbitrary momenta by the semi-discrete sum."""
    p_values = np.atleast_1d(np.asarray(p_values, dtype=float))
    kernel = np.exp(-1j * np.outer(p_values, psi.grid.points) / psi.hbar)
    return (psi.grid.dq / np.sqrt(2.0 * np.pi * psi.hbar)) * (
        kernel @ psi.amplitudes)


def _sample_observable(observable, axis: np.ndarray) -> np.ndarray:
    if callable(observable):
        values = np.asarray(observable(axis), dtype=float)
    else:
        values = np.asarray(observable, dtype=float)
    if values.shape != axis.shape:
        raise BasisMismatchError(
            f"observable sampled with shape {values.shape}, grid expects "
            f"{axis.shape}")
    return values


def expectation(state: State, observable, basis: str = "position") -> float:
    """Expectation of a real observable in the position or momentum basis.

    ``observable`` is either a callable evaluated on the matching grid or an
    array already sampled on it.  Mixtures give the weight-convex combination.
    """
    if isinstance(state, MixedState):
        return float(sum(w * expectation(psi, observable, basis)
                         for w, psi in state.components))
    if basis == "position":
        density = position_density(state)
        axis = state.grid.points
        dx = state.grid.dq
    elif basis == "momentum":
        tilde = momentum_wavefunction(state)
        density = position_density(tilde)
        axis = tilde.grid.points
        dx = tilde.grid.dq
    else:
        raise BasisMismatchError(f"unknown basis {basis!r}")
    values = _sample_observable(observable, axis)
    return float(np.sum(density * values) * dx)


# -- JSON state specifications ------------------------------------------------

def grid_from_dict(spec: dict) -> GridSpec:
    """Build a GridSpec from {"q_min", "q_max", "n_points"}."""
    if not isinstance(spec, dict):
        raise SchemaError("grid block must be an object")
    missing = {"q_min", "q_max", "n_points"} - spec.keys()
    if missing:
        raise SchemaError(f"grid block missing fields: {sorted(missing)}")
    try:
        return GridSpec(float(spec["q_min"]), float(spec["q_max"]),
                        int(spec["n_points"]))
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad grid block: {exc}") from exc


def _gaussian_from_dict(spec: dict, grid: GridSpec, hbar: float) -> WaveFunction:
    missing = {"q0", "p0", "sigma"} - spec.keys()
    if missing:
        raise SchemaError(f"gaussian block missing fields: {sorted(missing)}")
    return gaussian_packet(grid, float(spec["q0"]), float(spec["p0"]),
                           float(spec["sigma"]), hbar)


def state_from_dict(spec: dict, grid: GridSpec,
                    hbar: float = DEFAULT_HBAR) -> State:
    """Build a state from its JSON specification.

    Supported forms: {"type": "gaussian", ...}, {"type": "superposition",
    "terms": [{"coeff_re", "coeff_im", "gaussian"}, ...]}, and
    {"type": "mixture", "components": [{"weight", "state"}, ...]}.
    """
    if not isinstance(spec, dict) or "type" not in spec:
        raise SchemaError("state block must be an object with a 'type' field")
    kind = spec["type"]
    if kind == "gaussian":
        return _gaussian_from_dict(spec, grid, hbar)
    if kind == "superposition":
        terms = spec.get("terms")
        if not isinstance(terms, list) or not terms:
            raise SchemaError("superposition needs a nonempty 'terms' list")
        parsed = []
        for term in terms:
            coeff = complex(float(term.get("coeff_re", 0.0)),
                            float(term.get("coeff_im", 0.0)))
            if "gaussian" not in term:
                raise SchemaError("superposition term missing 'gaussian'")
            parsed.append((coeff, _gaussian_from_dict(term["gaussian"],
                                                      grid, hbar)))
        return superpose(parsed)
    if kind == "mixture":
        comps = spec.get("components")
        if not isinstance(comps, list) or not comps:
            raise SchemaError("mixture needs a nonempty 'components' list")
        parsed = []
        for comp in comps:
            if "weight" not in comp or "state" not in comp:
                raise SchemaError("mixture component needs 'weight' and 'state'")
            weight = float(comp["weight"])
            if weight < 0:
                raise BadWeightsError(
                    f"mixture weight {weight} is negative; weights must be "
                    "nonnegative and sum to 1")
            inner = state_from_dict(comp["state"], grid, hbar)
            if isinstance(inner, MixedState):
                raise SchemaError("nested mixtures are not supported")
            parsed.append((weight, inner))
        return MixedState(parsed)
    raise SchemaError(f"unknown state type {kind!r}")
