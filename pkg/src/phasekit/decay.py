"""Metastable-state decay in a discretized single-level + quasi-continuum model.

One excited level omega0 couples to n uniformly spaced continuum modes
omega_k with real couplings g_k; the (n+1) x (n+1) real symmetric
Hamiltonian is diagonalized exactly, so the survival amplitude

    A(t) = <e| exp(-i H t) |e> = sum_n |<e|E_n>|^2 exp(-i E_n t)

is unitary to roundoff: P(t) = |A|^2 is exactly even in t, and the apparent
decay is an interference effect valid up to the recurrence time 2 pi /
spacing.  For a flat coupling band the golden-rule rate is
Gamma = 2 pi g^2 / spacing, the exponential epoch sits between the
quadratic short-time region and the band-edge-dominated long-time tail, and
the resolvent G(z) = 1/(z - omega0 - Sigma(z)) continues through the branch
cut in closed form: Sigma_II(z) = Sigma(z) - 2 pi i g^2 / spacing below the
real axis inside the band, with the resonance pole at E_R - i Gamma/2.

hbar = 1 throughout (spectral units).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ContinuationStripError,
    NoConvergenceError,
    NonpositiveProbabilityError,
    NumericalError,
    PoleProximityError,
    SchemaError,
    TimesNotSampledError,
    ValidationError,
    WindowError,
)


class RecurrenceWindowWarning(UserWarning):
    """Requested times extend into the Poincare-recurrence regime."""


@dataclass
class FriedrichsModel:
    """Excited level + quasi-continuum with mode energies and couplings."""

    omega0: float
    omegas: np.ndarray
    couplings: np.ndarray
    _eigensystem: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.omegas = np.asarray(self.omegas, dtype=float)
        self.couplings = np.asarray(self.couplings, dtype=float)
        if self.omegas.ndim != 1 or self.omegas.size < 2:
            raise ValidationError("need at least two continuum modes")
        if self.couplings.shape != self.omegas.shape:
            raise ValidationError("couplings must match mode energies in shape")
        steps = np.diff(self.omegas)
        if np.any(steps <= 0) or np.ptp(steps) > 1e-9 * steps[0]:
            raise ValidationError("mode energies must be uniformly increasing")
        if not self.omegas[0] < self.omega0 < self.omegas[-1]:
            raise ValidationError(
                f"omega0 = {self.omega0} outside the band "
                f"[{self.omegas[0]}, {self.omegas[-1]}]")

    @property
    def n_modes(self) -> int:
        return self.omegas.size

    @property
    def spacing(self) -> float:
        return float(self.omegas[1] - self.omegas[0])

    @property
    def recurrence_time(self) -> float:
        return 2.0 * np.pi / self.spacing

    def golden_rule_rate(self) -> float:
        """2 pi g^2 / spacing with g the coupling at the level energy."""
        k = int(np.argmin(np.abs(self.omegas - self.omega0)))
        return 2.0 * np.pi * self.couplings[k] ** 2 / self.spacing

    def is_flat(self, tol: float = 1e-12) -> bool:
        g = self.couplings
        return bool(np.max(np.abs(g - g[0])) <= tol * max(1.0, abs(g[0])))

    def hamiltonian(self) -> np.ndarray:
        n = self.n_modes
        h = np.zeros((n + 1, n + 1))
        h[0, 0] = self.omega0
        h[0, 1:] = self.couplings
        h[1:, 0] = self.couplings
        h[np.arange(1, n + 1), np.arange(1, n + 1)] = self.omegas
        return h

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues and excited-level weights |<e|E_n>|^2 (computed once)."""
        if self._eigensystem is None:
            energies, vectors = np.linalg.eigh(self.hamiltonian())
            weights = np.abs(vectors[0, :]) ** 2
            total = weights.sum()
            if abs(total - 1.0) > 1e-12:
                raise NumericalError(
                    f"eigenvector weights sum to {total}, unitarity broken")
            self._eigensystem = (energies, weights)
        return self._eigensystem

    def energy_moments(self) -> tuple[float, float]:
        """Mean and variance of H in the excited level."""
        mean = self.omega0
        var = float(np.sum(self.couplings ** 2))
        return mean, var


def flat_model(omega0: float, band: tuple[float, float], n_modes: int,
               g: float) -> FriedrichsModel:
    """Uniform modes on mid-cell positions of the band, constant coupling."""
    lo, hi = band
    if not lo < hi:
        raise ValidationError(f"empty band [{lo}, {hi}]")
    if n_modes < 500:
        raise ValidationError(f"n_modes = {n_modes} below the minimum 500")
    spacing = (hi - lo) / n_modes
    omegas = lo + spacing * (np.arange(n_modes) + 0.5)
    return FriedrichsModel(omega0, omegas, np.full(n_modes, float(g)))


def lorentzian_model(omega0: float, band: tuple[float, float], n_modes: int,
                     g: float, width: float) -> FriedrichsModel:
    """Couplings g / sqrt(1 + ((omega - omega0)/width)^2)."""
    if width <= 0:
        raise ValidationError("width must be positive")
    base = flat_model(omega0, band, n_modes, g)
    gs = g / np.sqrt(1.0 + ((base.omegas - omega0) / width) ** 2)
    return FriedrichsModel(omega0, base.omegas, gs)


def model_from_dict(spec: dict) -> FriedrichsModel:
    """Build a model from {"omega0", "band", "n_modes", "coupling": {...}}."""
    if not isinstance(spec, dict):
        raise SchemaError("model block must be an object")
    missing = {"omega0", "band", "n_modes", "coupling"} - spec.keys()
    if missing:
        raise SchemaError(f"model block missing fields: {sorted(missing)}")
    band = spec["band"]
    if not (isinstance(band, (list, tuple)) and len(band) == 2):
        raise SchemaError("band must be [lo, hi]")
    coupling = spec["coupling"]
    if not isinstance(coupling, dict) or "g" not in coupling:
        raise SchemaError("coupling block needs at least a 'g' field")
    profile = coupling.get("profile", "flat")
    omega0 = float(spec["omega0"])
    n_modes = int(spec["n_modes"])
    g = float(coupling["g"])
    if profile == "flat":
        return flat_model(omega0, (float(band[0]), float(band[1])), n_modes, g)
    if profile == "lorentzian":
        if "width" not in coupling:
            raise SchemaError("lorentzian coupling needs a 'width' field")
        return lorentzian_model(omega0, (float(band[0]), float(band[1])),
                                n_modes, g, float(coupling["width"]))
    raise SchemaError(f"unknown coupling profile {profile!r}")


@dataclass
class SurvivalRecord:
    """Survival amplitude A(t) and probability P(t) on a symmetric time grid."""

    times: np.ndarray
    amplitude: np.ndarray
    probability: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.amplitude = np.asarray(self.amplitude, dtype=complex)
        self.probability = np.asarray(self.probability, dtype=float)
        scale = max(1.0, np.max(np.abs(self.times)))
        if np.max(np.abs(self.times + self.times[::-1])) > 1e-9 * scale:
            raise ValidationError("time grid must be symmetric about 0")
        if np.any(self.probability < -1e-12) or np.any(
                self.probability > 1.0 + 1e-10):
            raise NumericalError("survival probability outside [0, 1]")
        zero = np.flatnonzero(np.abs(self.times) < 1e-15 * scale)
        if zero.size and abs(self.probability[zero[0]] - 1.0) > 1e-12:
            raise NumericalError("P(0) differs from 1")

    def at(self, t: float) -> complex:
        idx = np.flatnonzero(np.isclose(self.times, t, rtol=0.0,
                                        atol=1e-12 * max(1.0, abs(t))))
        if idx.size == 0:
            raise TimesNotSampledError(f"t = {t} not in the record's time grid")
        return complex(self.amplitude[idx[0]])


def survival_amplitude(model: FriedrichsModel, times) -> SurvivalRecord:
    """A(t) by full eigendecomposition; warns past half the recurrence time."""
    times = np.asarray(times, dtype=float)
    if np.max(np.abs(times)) > 0.5 * model.recurrence_time:
        warnings.warn(
            f"times reach {np.max(np.abs(times)):.3g}, beyond half the "
            f"recurrence time {model.recurrence_time:.3g}",
            RecurrenceWindowWarning, stacklevel=2)
    energies, weights = model.eigensystem()
    amps = np.exp(-1j * np.outer(times, energies)) @ weights
    return SurvivalRecord(times, amps, np.abs(amps) ** 2)


def fit_decay_rate(record: SurvivalRecord,
                   window: tuple[float, float]) -> float:
    """Least-squares slope of -ln P(t) on the window."""
    t_lo, t_hi = window
    if not t_lo < t_hi:
        raise WindowError(f"empty window [{t_lo}, {t_hi}]")
    mask = (record.times >= t_lo) & (record.times <= t_hi)
    if np.count_nonzero(mask) < 2:
        raise WindowError("fewer than two samples inside the fit window")
    p = record.probability[mask]
    if np.any(p <= 1e-12):
        raise NonpositiveProbabilityError(
            "survival probability below 1e-12 inside the fit window")
    t = record.times[mask]
    slope, _ = np.polyfit(t, -np.log(p), 1)
    return float(slope)


@dataclass(frozen=True)
class SemigroupDefect:
    """Composition defects |A(t1)A(t2) - A(t1+t2)| for surrogate and exact."""

    exponential: float
    exact: float


def semigroup_approximation_error(record: SurvivalRecord, gamma: float,
                                  t1: float, t2: float) -> SemigroupDefect:
    """Defects of the semigroup identity at (t1, t2, t1 + t2).

    The pure-exponential surrogate exp(-Gamma t / 2) satisfies the identity
    to roundoff; the exact unitary amplitude restricted to the excited level
    does not (the defect is (Delta H)^2 t1 t2 at short times).
    """
    if t1 < 0 or t2 < 0:
        raise ValidationError("t1 and t2 must be nonnegative")
    a1, a2, a12 = record.at(t1), record.at(t2), record.at(t1 + t2)
    exact = abs(a1 * a2 - a12)
    e1, e2, e12 = (np.exp(-0.5 * gamma * t) for t in (t1, t2, t1 + t2))
    exponential = abs(e1 * e2 - e12)
    return SemigroupDefect(float(exponential), float(exact))


def self_energy(model: FriedrichsModel, z) -> np.ndarray | complex:
    """Sigma(z) = sum_k g_k^2 / (z - omega_k), first sheet."""
    z = np.asarray(z, dtype=complex)
    sigma = (model.couplings ** 2 / (z[..., None] - model.omegas)).sum(axis=-1)
    return sigma if sigma.ndim else complex(sigma)


def resolvent(model: FriedrichsModel, z) -> np.ndarray | complex:
    """G(z) = 1 / (z - omega0 - Sigma(z)) on the first sheet."""
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    # Guard against evaluation on the real spectrum (poles interlace the
    # mode energies and the level).
    real_axis = np.abs(z_arr.imag) < 1e-8
    lo = min(model.omegas[0], model.omega0) - 1e-8
    hi = max(model.omegas[-1], model.omega0) + 1e-8
    if np.any(real_axis & (z_arr.real >= lo) & (z_arr.real <= hi)):
        raise PoleProximityError(
            "z within 1e-8 of the real eigenvalue region; evaluate off-axis")
    g = 1.0 / (z_arr - model.omega0 - self_energy(model, z_arr))
    return g if np.ndim(z) else complex(g[0])


def second_sheet_self_energy(model: FriedrichsModel, z) -> complex:
    """Sigma(z) - 2 pi i g^2 / spacing: continuation below the band cut."""
    if not model.is_flat():
        raise ValidationError(
            "closed-form second-sheet continuation needs a flat coupling")
    g = model.couplings[0]
    return (self_energy(model, z)
            - 2.0j * np.pi * g ** 2 / model.spacing)


def second_sheet_pole(model: FriedrichsModel, max_iter: int = 50,
                      tol: float = 1e-13, sheet: str = "lower") -> complex:
    """Resonance root of z - omega0 - Sigma_II(z) by Newton iteration.

    Starts from the golden-rule guess omega0 -+ i pi g^2 / spacing; the
    result must stay inside the continuation strip (band interior, off the
    real axis) or the search fails.
    """
    if sheet not in ("lower", "upper"):
        raise ValidationError(f"unknown sheet {sheet!r}")
    if not model.is_flat():
        raise ValidationError(
            "closed-form second-sheet continuation needs a flat coupling")
    sign = -1.0 if sheet == "lower" else 1.0
    g = model.couplings[0]
    shift = 2.0j * np.pi * g ** 2 / model.spacing * sign
    z = model.omega0 + 1j * sign * np.pi * g ** 2 / model.spacing
    for _ in range(max_iter):
        f = z - model.omega0 - self_energy(model, z) - shift
        fprime = 1.0 + np.sum(model.couplings ** 2
                              / (z - model.omegas) ** 2)
        step = f / fprime
        z = z - step
        if abs(step) <= tol * max(1.0, abs(z)):
            break
    else:
        raise NoConvergenceError(
            f"Newton iteration did not converge in {max_iter} steps")
    inside = model.omegas[0] < z.real < model.omegas[-1]
    off_axis = (z.imag < 0) if sheet == "lower" else (z.imag > 0)
    if not (inside and off_axis):
        raise ContinuationStripError(
            f"pole {z} left the continuation strip of the {sheet} sheet")
    return complex(z)
