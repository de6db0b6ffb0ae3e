"""Quantum characteristic functions and Wigner quasiprobabilities.

chi(lambda, mu) is the expectation of exp(i(lambda p + mu q)), computed from
a wavefunction by the shifted-overlap integral

    chi(l, m) = integral conj(psi(x - hbar l/2)) exp(i m x) psi(x + hbar l/2) dx

and the Wigner function is its inverse double Fourier transform

    W(q, p) = (2 pi)^-2 integral integral exp(-i(l p + m q)) chi(l, m) dl dm.

The production path for W goes directly through the position-space
correlation conj(psi(q - y/2)) psi(q + y/2) (one transform per grid row);
the double transform of chi is kept as a cross-check.  Both are plain
rectangle-rule quadratures, spectrally accurate for states with decayed
tails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_HBAR,
    GridSpec,
    MixedState,
    State,
    WaveFunction,
    _position_to_momentum,
    check_edge_decay,
)
from .errors import (
    BadWeightsError,
    ChiNotDecayedError,
    GridMismatchError,
    LambdaRangeError,
    NumericalError,
    PacketOutOfBoundsError,
    ValidationError,
)


def _spacing(axis: np.ndarray, name: str) -> float:
    axis = np.asarray(axis, dtype=float)
    if axis.ndim != 1 or axis.size < 2:
        raise ValidationError(f"{name} must be a 1-D array with >= 2 points")
    steps = np.diff(axis)
    d = steps[0]
    if d <= 0 or np.max(np.abs(steps - d)) > 1e-9 * abs(d):
        raise ValidationError(f"{name} must be uniformly increasing")
    return float(d)


@dataclass
class CharacteristicFunction:
    """chi(lambda, mu) sampled on a rectangular (lambda, mu) grid."""

    lambda_grid: np.ndarray
    mu_grid: np.ndarray
    values: np.ndarray
    hbar: float = DEFAULT_HBAR

    def __post_init__(self):
        self.lambda_grid = np.asarray(self.lambda_grid, dtype=float)
        self.mu_grid = np.asarray(self.mu_grid, dtype=float)
        self.values = np.asarray(self.values, dtype=np.complex128)
        self.dlam = _spacing(self.lambda_grid, "lambda_grid")
        self.dmu = _spacing(self.mu_grid, "mu_grid")
        if self.values.shape != (self.lambda_grid.size, self.mu_grid.size):
            raise GridMismatchError(
                f"values shape {self.values.shape} does not match grids "
                f"({self.lambda_grid.size}, {self.mu_grid.size})")


@dataclass
class WignerFunction:
    """Real W(q, p) on a rectangular phase-space grid; values[i, j] = W(q_i, p_j)."""

    q_grid: np.ndarray
    p_grid: np.ndarray
    values: np.ndarray
    hbar: float = DEFAULT_HBAR

    def __post_init__(self):
        self.q_grid = np.asarray(self.q_grid, dtype=float)
        self.p_grid = np.asarray(self.p_grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.dq = _spacing(self.q_grid, "q_grid")
        self.dp = _spacing(self.p_grid, "p_grid")
        if self.values.shape != (self.q_grid.size, self.p_grid.size):
            raise GridMismatchError(
                f"values shape {self.values.shape} does not match grids "
                f"({self.q_grid.size}, {self.p_grid.size})")

    @property
    def cell(self) -> float:
        return self.dq * self.dp

    def normalization(self) -> float:
        return float(self.values.sum() * self.cell)


def validate_characteristic(chi: CharacteristicFunction,
                            tol: float = 1e-10) -> None:
    """Check boundedness, chi(0,0)=1, and Hermitian symmetry where testable."""
    mag = np.abs(chi.values)
    if mag.max() > 1.0 + tol:
        raise NumericalError(f"|chi| reaches {mag.max()}, above 1")
    iz = np.flatnonzero(np.abs(chi.lambda_grid) < 1e-12 * chi.dlam + 1e-300)
    jz = np.flatnonzero(np.abs(chi.mu_grid) < 1e-12 * chi.dmu + 1e-300)
    if iz.size and jz.size:
        origin = chi.values[iz[0], jz[0]]
        if abs(origin - 1.0) > tol:
            raise NumericalError(f"chi(0,0) = {origin}, expected 1")
    # Hermitian symmetry chi(-l,-m) = conj(chi(l,m)) on symmetric grids.
    if (np.allclose(chi.lambda_grid, -chi.lambda_grid[::-1], atol=1e-12)
            and np.allclose(chi.mu_grid, -chi.mu_grid[::-1], atol=1e-12)):
        flipped = chi.values[::-1, ::-1]
        if np.max(np.abs(flipped - np.conj(chi.values))) > 1e2 * tol:
            raise NumericalError("chi violates Hermitian symmetry")


def validate_wigner(w: WignerFunction, norm_tol: float = 1e-9,
                    bound_tol: float = 1e-8) -> None:
    """Check normalization and the pointwise bound |W| <= 1/(pi hbar)."""
    norm = w.normalization()
    if abs(norm - 1.0) > norm_tol:
        raise NumericalError(f"Wigner normalization {norm} deviates from 1")
    bound = 1.0 / (np.pi * w.hbar)
    if np.max(np.abs(w.values)) > bound + bound_tol:
        raise NumericalError(
            f"|W| reaches {np.max(np.abs(w.values))}, above 1/(pi hbar) = {bound}")


def wigner_momentum_grid(grid: GridSpec, hbar: float = DEFAULT_HBAR) -> np.ndarray:
    """Natural Wigner momentum grid: n_points at half the conjugate spacing.

    The shifted-overlap correlation is sampled at steps of 2*dq in the
    separation variable, so the alias-free momentum window is
    |p| <= pi*hbar/(2*dq); this grid fills it exactly.
    """
    step = np.pi * hbar / (grid.n_points * grid.dq)
    return step * (np.arange(grid.n_points) - grid.n_points // 2)


def _spectral_shifts(psi: WaveFunction, shifts: np.ndarray) -> np.ndarray:
    """psi(x + s) for every s in shifts, via the periodic shift theorem."""
    n = psi.grid.n_points
    k = 2.0 * np.pi * np.fft.fftfreq(n, psi.grid.dq)
    spectrum = np.fft.fft(psi.amplitudes)
    return np.fft.ifft(spectrum[None, :] * np.exp(1j * np.outer(shifts, k)),
                       axis=1)


def characteristic_from_wavefunction(psi: WaveFunction,
                                     lambda_grid: np.ndarray,
                                     mu_grid: np.ndarray) -> CharacteristicFunction:
    """Shifted-overlap characteristic function on the given (lambda, mu) grid."""
    lambda_grid = np.asarray(lambda_grid, dtype=float)
    mu_grid = np.asarray(mu_grid, dtype=float)
    check_edge_decay(psi)
    extent = psi.grid.q_max - psi.grid.q_min
    max_shift = 0.5 * psi.hbar * np.max(np.abs(lambda_grid))
    # Quarter-box bound keeps the two periodically shifted copies from
    # wrapping into overlap.
    if max_shift > 0.25 * extent:
        raise LambdaRangeError(
            f"hbar*|lambda|/2 = {max_shift} exceeds a quarter of the grid "
            f"extent {0.25 * extent}; shifted overlap leaves the grid")
    plus = _spectral_shifts(psi, 0.5 * psi.hbar * lambda_grid)
    minus = _spectral_shifts(psi, -0.5 * psi.hbar * lambda_grid)
    overlap = np.conj(minus) * plus                     # (n_lambda, n_x)
    kernel = np.exp(1j * np.outer(psi.grid.points, mu_grid))
    values = (overlap * psi.grid.dq) @ kernel
    chi = CharacteristicFunction(lambda_grid, mu_grid, values, psi.hbar)
    validate_characteristic(chi)
    return chi


def characteristic_mixture(components) -> CharacteristicFunction:
    """Pointwise convex combination sum_i p_i chi_i of compatible grids."""
    comps = list(components)
    if not comps:
        raise BadWeightsError("mixture needs at least one component")
    weights = np.array([float(w) for w, _ in comps])
    if np.any(weights < 0):
        raise BadWeightsError("mixture weights must be nonnegative")
    if abs(weights.sum() - 1.0) > 1e-12:
        raise BadWeightsError(f"mixture weights sum to {weights.sum()}, not 1")
    first = comps[0][1]
    values = np.zeros_like(first.values)
    for w, chi in comps:
        if (not np.array_equal(chi.lambda_grid, first.lambda_grid)
                or not np.array_equal(chi.mu_grid, first.mu_grid)
                or chi.hbar != first.hbar):
            raise GridMismatchError("characteristic functions on different grids")
        values = values + w * chi.values
    return CharacteristicFunction(first.lambda_grid, first.mu_grid, values,
                                  first.hbar)


def wigner_from_characteristic(chi: CharacteristicFunction,
                               q_grid: np.ndarray | None = None,
                               p_grid: np.ndarray | None = None,
                               boundary_tol: float = 1e-8) -> WignerFunction:
    """Inverse double Fourier transform of chi onto a phase-space grid.

    Defaults to the grids conjugate to (mu, lambda).  chi must have decayed
    below ``boundary_tol`` at its grid boundary, otherwise the transform
    aliases.
    """
    edge = max(np.abs(chi.values[0, :]).max(), np.abs(chi.values[-1, :]).max(),
               np.abs(chi.values[:, 0]).max(), np.abs(chi.values[:, -1]).max())
    if edge > boundary_tol:
        raise ChiNotDecayedError(
            f"chi boundary magnitude {edge:.3e} above {boundary_tol:.0e}")
    if q_grid is None:
        n = chi.mu_grid.size
        dq = 2.0 * np.pi / (n * chi.dmu)
        q_grid = dq * (np.arange(n) - n // 2)
    if p_grid is None:
        n = chi.lambda_grid.size
        dp = 2.0 * np.pi / (n * chi.dlam)
        p_grid = dp * (np.arange(n) - n // 2)
    q_grid = np.asarray(q_grid, dtype=float)
    p_grid = np.asarray(p_grid, dtype=float)
    # Alias-free windows of the rectangle rule in (lambda, mu).
    if np.max(np.abs(p_grid)) > np.pi / chi.dlam * (1 + 1e-9):
        raise ValidationError("p grid extends beyond the alias-free window")
    if np.max(np.abs(q_grid)) > np.pi / chi.dmu * (1 + 1e-9):
        raise ValidationError("q grid extends beyond the alias-free window")
    lam_kernel = np.exp(-1j * np.outer(chi.lambda_grid, p_grid))
    mu_kernel = np.exp(-1j * np.outer(q_grid, chi.mu_grid))
    t = chi.values.T @ lam_kernel                       # (n_mu, n_p)
    w = mu_kernel @ t                                   # (n_q, n_p)
    w *= chi.dlam * chi.dmu / (4.0 * np.pi ** 2)
    residue = np.max(np.abs(w.imag))
    if residue > 1e-10 * max(1.0, np.max(np.abs(w.real))):
        raise NumericalError(
            f"imaginary residue {residue:.3e} of the Wigner transform; "
            "use symmetric (lambda, mu) grids")
    return WignerFunction(q_grid, p_grid, w.real, chi.hbar)


def _wigner_from_wavefunction(psi: WaveFunction,
                              p_grid: np.ndarray) -> np.ndarray:
    n = psi.grid.n_points
    # Zero-padded correlation conj(psi(q - m dq)) psi(q + m dq); padding
    # (rather than periodic wraparound) avoids the ghost image at half-box
    # offset and is exact for edge-decayed states.
    padded = np.zeros(2 * n, dtype=np.complex128)
    padded[n // 2: n // 2 + n] = psi.amplitudes
    idx = np.arange(n) + n // 2
    m_off = np.arange(n) - n // 2
    corr = (np.conj(padded[idx[:, None] - m_off[None, :]])
            * padded[idx[:, None] + m_off[None, :]])
    kernel = np.exp(-2j * psi.grid.dq * np.outer(m_off, p_grid) / psi.hbar)
    w = (psi.grid.dq / (np.pi * psi.hbar)) * (corr @ kernel)
    residue = np.max(np.abs(w.imag))
    if residue > 1e-10 * max(1.0, np.max(np.abs(w.real))):
        raise NumericalError(
            f"imaginary residue {residue:.3e} in the Wigner correlation transform")
    return w.real


def wigner_from_state(state: State,
                      p_grid: np.ndarray | None = None) -> WignerFunction:
    """Wigner function of a pure or mixed state, by the direct correlation path.

    The q grid is the state's position grid; ``p_grid`` defaults to the
    alias-free half-band grid of :func:`wigner_momentum_grid` and may not
    extend beyond it.
    """
    if isinstance(state, MixedState):
        parts = [wigner_from_state(psi, p_grid) for _, psi in state.components]
        values = sum(w * part.values
                     for (w, _), part in zip(state.components, parts))
        return WignerFunction(parts[0].q_grid, parts[0].p_grid, values,
                              state.hbar)
    psi = state
    check_edge_decay(psi)
    grid = psi.grid
    if p_grid is None:
        p_grid = wigner_momentum_grid(grid, psi.hbar)
    p_grid = np.asarray(p_grid, dtype=float)
    p_nyquist = np.pi * psi.hbar / (2.0 * grid.dq)
    if np.max(np.abs(p_grid)) > p_nyquist * (1 + 1e-9):
        raise ValidationError(
            f"p grid exceeds the alias-free window |p| <= {p_nyquist}")
    # Momentum content beyond the window would alias into it.
    mom_density = np.abs(_position_to_momentum(psi.amplitudes, grid,
                                               psi.hbar)) ** 2
    n = grid.n_points
    band = max(mom_density[n // 4], mom_density[(3 * n) // 4])
    if band > 1e-10 * mom_density.max():
        raise PacketOutOfBoundsError(
            "momentum content beyond pi*hbar/(2 dq); refine the grid")
    values = _wigner_from_wavefunction(psi, p_grid)
    return WignerFunction(grid.points, p_grid, values, psi.hbar)


def marginals(w: WignerFunction) -> tuple[np.ndarray, np.ndarray]:
    """Position and momentum marginals (integrals over the other variable)."""
    return w.values.sum(axis=1) * w.dp, w.values.sum(axis=0) * w.dq


def purity(w: WignerFunction) -> float:
    """tr rho^2 = (2 pi hbar) * integral W^2."""
    return float(2.0 * np.pi * w.hbar * np.sum(w.values ** 2) * w.cell)


def overlap(w1: WignerFunction, w2: WignerFunction) -> float:
    """tr(rho1 rho2) = (2 pi hbar) * integral W1 W2; nonnegative for states."""
    if (w1.values.shape != w2.values.shape
            or not np.allclose(w1.q_grid, w2.q_grid, atol=1e-12)
            or not np.allclose(w1.p_grid, w2.p_grid, atol=1e-12)
            or w1.hbar != w2.hbar):
        raise GridMismatchError("Wigner functions on different grids")
    return float(2.0 * np.pi * w1.hbar * np.sum(w1.values * w2.values) * w1.cell)


def negativity_volume(w: WignerFunction) -> float:
    """integral |W| - 1; zero iff W is pointwise nonnegative on the grid."""
    return float(np.sum(np.abs(w.values)) * w.cell - 1.0)
