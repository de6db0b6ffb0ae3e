"""Time evolution of phase-space densities and wavefunctions.

Polynomial Hamiltonians H = p^2/2m + V(q) with deg V <= 6.  The classical
generator is the Poisson bracket

    dW/dt = V'(q) dW/dp - (p/m) dW/dq

and the quantum generator adds the terminating sine-series corrections

    - (hbar^2/24) V'''(q) d^3W/dp^3 + (hbar^4/1920) V^(5)(q) d^5W/dp^5,

exact for polynomial potentials.  Both split into two sub-flows that are
diagonal in mixed Fourier representations (q-spectrum x p, and q x
p-spectrum), so each sub-flow is advanced by an exact unit-modulus phase
multiplication.  Steps compose the sub-flows with fourth-order (triple-jump)
coefficients: the integrator is explicit, fixed-step, exactly
mass-conserving, purity-preserving, and reversible to roundoff.

evolve_wavefunction is the independent Schroedinger-side oracle: the same
fourth-order composition applied to kinetic/potential factors of the
split-operator method.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .core import WaveFunction, position_density
from .errors import (
    BoundaryContaminationError,
    CflViolationError,
    DegreeTooHighError,
    ValidationError,
)
from .phasespace import WignerFunction

MAX_POTENTIAL_DEGREE = 6

# Fourth-order triple-jump composition coefficients.
_W1 = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
_W0 = 1.0 - 2.0 * _W1


@dataclass(frozen=True)
class PolynomialHamiltonian:
    """H(p, q) = p^2 / (2 mass) + sum_k c_k q^k, degree <= 6."""

    mass: float
    potential_coefficients: tuple

    def __post_init__(self):
        if not self.mass > 0:
            raise ValidationError(f"mass must be positive, got {self.mass}")
        coeffs = tuple(float(c) for c in self.potential_coefficients)
        if len(coeffs) - 1 > MAX_POTENTIAL_DEGREE:
            raise DegreeTooHighError(
                f"potential degree {len(coeffs) - 1} above "
                f"{MAX_POTENTIAL_DEGREE}")
        object.__setattr__(self, "potential_coefficients", coeffs)

    def potential(self, q: np.ndarray) -> np.ndarray:
        return npoly.polyval(q, self.potential_coefficients)

    def potential_derivative(self, q: np.ndarray, order: int = 1) -> np.ndarray:
        coeffs = npoly.polyder(self.potential_coefficients, m=order)
        return npoly.polyval(q, coeffs) if coeffs.size else np.zeros_like(q)


@dataclass(frozen=True)
class EvolutionConfig:
    """Fixed-step evolution parameters; dt may be negative (backward)."""

    dt: float
    n_steps: int
    generator: str = "moyal"

    def __post_init__(self):
        if self.dt == 0 or not np.isfinite(self.dt):
            raise ValidationError(f"dt must be nonzero and finite, got {self.dt}")
        if self.n_steps < 1:
            raise ValidationError(f"n_steps must be >= 1, got {self.n_steps}")
        if self.generator not in ("liouville", "moyal"):
            raise ValidationError(f"unknown generator {self.generator!r}")
        if not np.isfinite(self.dt * self.n_steps):
            raise ValidationError("total evolution time is not finite")


def cfl_bound(w: WignerFunction, h: PolynomialHamiltonian) -> float:
    """Advection stability bound 0.5 * min(dq/|p|_max, dp/|V'|_max)."""
    p_max = float(np.max(np.abs(w.p_grid)))
    vp_max = float(np.max(np.abs(h.potential_derivative(w.q_grid))))
    bound = np.inf
    if p_max > 0:
        bound = min(bound, 0.5 * w.dq * h.mass / p_max)
    if vp_max > 0:
        bound = min(bound, 0.5 * w.dp / vp_max)
    return bound


def _check_cfl(w: WignerFunction, h: PolynomialHamiltonian, dt: float) -> None:
    bound = cfl_bound(w, h)
    if abs(dt) > bound:
        raise CflViolationError(
            f"|dt| = {abs(dt)} exceeds the stability bound {bound}")


class WignerPropagator:
    """Cached fixed-step propagator for one (grid, Hamiltonian, dt) triple."""

    def __init__(self, w: WignerFunction, h: PolynomialHamiltonian, dt: float,
                 quantum: bool):
        _check_cfl(w, h, dt)
        nq, np_ = w.q_grid.size, w.p_grid.size
        kq = 2.0 * np.pi * np.fft.fftfreq(nq, w.dq)
        kp = 2.0 * np.pi * np.fft.fftfreq(np_, w.dp)
        hbar = w.hbar
        # Drift generator, diagonal in (k_q, p): -i k_q p / m per unit time.
        drift = -1j * np.outer(kq, w.p_grid) / h.mass
        # Kick generator, diagonal in (q, k_p); the cubic and quintic terms
        # vanish identically for deg V <= 2, making the quantum and classical
        # paths bitwise identical there.
        phase = np.outer(h.potential_derivative(w.q_grid, 1), kp)
        if quantum:
            phase = phase + (hbar ** 2 / 24.0) * np.outer(
                h.potential_derivative(w.q_grid, 3), kp ** 3)
            phase = phase + (hbar ** 4 / 1920.0) * np.outer(
                h.potential_derivative(w.q_grid, 5), kp ** 5)
        kick = 1j * phase
        # Triple-jump sequence B(a1) A(b1) B(a2) A(b2) B(a2) A(b1) B(a1)
        # with adjacent half-kicks merged.
        a1, a2 = 0.5 * _W1 * dt, 0.5 * (_W0 + _W1) * dt
        b1, b2 = _W1 * dt, _W0 * dt
        self._kick_a1 = np.exp(kick * a1)
        self._kick_a2 = np.exp(kick * a2)
        self._drift_b1 = np.exp(drift * b1)
        self._drift_b2 = np.exp(drift * b2)

    def _kick(self, values: np.ndarray, factor: np.ndarray) -> np.ndarray:
        return np.fft.ifft(factor * np.fft.fft(values, axis=1), axis=1)

    def _drift(self, values: np.ndarray, factor: np.ndarray) -> np.ndarray:
        return np.fft.ifft(factor * np.fft.fft(values, axis=0), axis=0)

    def step(self, values: np.ndarray) -> np.ndarray:
        v = self._kick(values, self._kick_a1)
        v = self._drift(v, self._drift_b1)
        v = self._kick(v, self._kick_a2)
        v = self._drift(v, self._drift_b2)
        v = self._kick(v, self._kick_a2)
        v = self._drift(v, self._drift_b1)
        v = self._kick(v, self._kick_a1)
        return v

    def run(self, values: np.ndarray, n_steps: int) -> np.ndarray:
        v = values.astype(np.complex128)
        for _ in range(n_steps):
            v = self.step(v)
        return v.real


def liouville_step(w: WignerFunction, h: PolynomialHamiltonian,
                   dt: float) -> WignerFunction:
    """One classical (Poisson-bracket) step of the phase-space density."""
    prop = WignerPropagator(w, h, dt, quantum=False)
    return WignerFunction(w.q_grid, w.p_grid, prop.run(w.values, 1), w.hbar)


def moyal_step(w: WignerFunction, h: PolynomialHamiltonian, dt: float,
               hbar: float | None = None) -> WignerFunction:
    """One quantum step; reduces exactly to liouville_step for deg V <= 2."""
    if hbar is not None and abs(hbar - w.hbar) > 1e-15:
        raise ValidationError(
            f"hbar={hbar} conflicts with the Wigner function's {w.hbar}")
    prop = WignerPropagator(w, h, dt, quantum=True)
    return WignerFunction(w.q_grid, w.p_grid, prop.run(w.values, 1), w.hbar)


def evolve_wigner(w: WignerFunction, h: PolynomialHamiltonian,
                  config: EvolutionConfig) -> WignerFunction:
    """Advance n_steps with a cached propagator."""
    prop = WignerPropagator(w, h, config.dt, quantum=config.generator == "moyal")
    return WignerFunction(w.q_grid, w.p_grid,
                          prop.run(w.values, config.n_steps), w.hbar)


class _SplitOperator:
    """Fourth-order split-operator Schroedinger propagator (position grid)."""

    def __init__(self, psi: WaveFunction, h: PolynomialHamiltonian, dt: float):
        grid = psi.grid
        k = 2.0 * np.pi * np.fft.fftfreq(grid.n_points, grid.dq)
        v = h.potential(grid.points)
        hbar = psi.hbar
        kin = -1j * (hbar * k) ** 2 / (2.0 * h.mass * hbar)
        pot = -1j * v / hbar
        a1, a2 = 0.5 * _W1 * dt, 0.5 * (_W0 + _W1) * dt
        b1, b2 = _W1 * dt, _W0 * dt
        self._pot_a1 = np.exp(pot * a1)
        self._pot_a2 = np.exp(pot * a2)
        self._kin_b1 = np.exp(kin * b1)
        self._kin_b2 = np.exp(kin * b2)

    def step(self, amps: np.ndarray) -> np.ndarray:
        a = self._pot_a1 * amps
        a = np.fft.ifft(self._kin_b1 * np.fft.fft(a))
        a = self._pot_a2 * a
        a = np.fft.ifft(self._kin_b2 * np.fft.fft(a))
        a = self._pot_a2 * a
        a = np.fft.ifft(self._kin_b1 * np.fft.fft(a))
        return self._pot_a1 * a


def evolve_wavefunction(psi: WaveFunction, h: PolynomialHamiltonian, dt: float,
                        n_steps: int, boundary_tol: float = 1e-8) -> WaveFunction:
    """Split-operator spectral propagation; norm-conserving and reversible.

    Raises if the evolved density at the grid edges climbs above
    ``boundary_tol`` relative to the peak.
    """
    if n_steps < 1:
        raise ValidationError(f"n_steps must be >= 1, got {n_steps}")
    prop = _SplitOperator(psi, h, dt)
    amps = psi.amplitudes
    for _ in range(n_steps):
        amps = prop.step(amps)
        density = np.abs(amps) ** 2
        edge = max(density[0], density[-1])
        if edge > boundary_tol * density.max():
            raise BoundaryContaminationError(
                f"edge density {edge / density.max():.3e} of peak above "
                f"{boundary_tol:.0e} during evolution")
    return WaveFunction(psi.grid, amps, psi.hbar)


@dataclass
class WidthTrace:
    """Packet-width record sigma_q(t) along an evolution."""

    times: np.ndarray
    sigma_q: np.ndarray

    @property
    def sigma_q2(self) -> np.ndarray:
        return self.sigma_q ** 2


def packet_width_trace(psi0: WaveFunction, h: PolynomialHamiltonian,
                       times: np.ndarray, dt_max: float = 2e-3) -> WidthTrace:
    """sigma_q(t) from second moments; times may be negative (backward runs)."""
    times = np.asarray(times, dtype=float)
    sigmas = np.empty(times.size)
    x = psi0.grid.points
    dx = psi0.grid.dq
    for i, t in enumerate(times):
        if t == 0.0:
            psi = psi0
        else:
            n = max(1, int(np.ceil(abs(t) / dt_max)))
            psi = evolve_wavefunction(psi0, h, t / n, n)
        density = position_density(psi)
        mean = np.sum(density * x) * dx
        var = np.sum(density * (x - mean) ** 2) * dx
        sigmas[i] = np.sqrt(var)
    return WidthTrace(times, sigmas)
