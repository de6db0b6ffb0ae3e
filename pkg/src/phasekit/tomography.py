"""Symplectic tomograms of Wigner functions and their inversion.

The tomogram of a ray (lambda, mu) is the distribution of the quadrature
x = lambda*p + mu*q,

    P(lambda, mu, nu) = integral W(q, p) delta(lambda p + mu q - nu) dq dp,

nonnegative and normalized for every physical state even where W itself is
negative.  The delta line integral is evaluated through its Fourier
representation: the characteristic function along the ray,

    chi(k lambda, k mu) = integral W exp(ik(lambda p + mu q)) dq dp
                        = integral P(nu) exp(ik nu) dnu,

is sampled on the grid dual to the requested nu grid and transformed back.
This keeps projections of oscillatory, sign-changing W spectrally exact, so
the nonnegativity of every computed tomogram holds to roundoff (odd states
have exact zeros at nu = 0 which low-order line-binning schemes would turn
negative).  The same slice identity drives the inversion: per-ray ramp
filtering in k followed by back-projection, with the trapezoid kink of the
ramp at k = 0 corrected analytically.

Tomograms are homogeneous: P(s l, s m, s nu) = P(l, m, nu)/|s|.  Because the
dual k grid scales inversely with the nu grid, the discrete projector is
exactly scale-equivariant and the homogeneity law holds to machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateRayError,
    InsufficientAngularCoverageError,
    NonUnitRayError,
    NumericalError,
    NuRangeError,
    ValidationError,
)
from .phasespace import WignerFunction, _spacing


@dataclass
class Tomogram:
    """Quadrature distributions P(ray, nu) for a family of rays."""

    rays: np.ndarray          # (n_rays, 2) array of (lambda, mu)
    nu_grid: np.ndarray
    values: np.ndarray        # (n_rays, n_nu)
    hbar: float = 1.0

    def __post_init__(self):
        self.rays = np.atleast_2d(np.asarray(self.rays, dtype=float))
        self.nu_grid = np.asarray(self.nu_grid, dtype=float)
        self.values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if self.rays.shape[1] != 2:
            raise ValidationError("rays must be (lambda, mu) pairs")
        self.dnu = _spacing(self.nu_grid, "nu_grid")
        if self.values.shape != (self.rays.shape[0], self.nu_grid.size):
            raise ValidationError(
                f"values shape {self.values.shape} does not match "
                f"{self.rays.shape[0]} rays x {self.nu_grid.size} nu points")

    @property
    def angles(self) -> np.ndarray:
        return np.mod(np.arctan2(self.rays[:, 1], self.rays[:, 0]), np.pi)


def uniform_rays(n_angles: int) -> np.ndarray:
    """Unit rays at angles i*pi/n, i = 0..n-1."""
    theta = np.pi * np.arange(n_angles) / n_angles
    return np.column_stack([np.cos(theta), np.sin(theta)])


def _dual_k_grid(nu_grid: np.ndarray) -> np.ndarray:
    n = nu_grid.size
    dnu = nu_grid[1] - nu_grid[0]
    dk = 2.0 * np.pi / (n * dnu)
    return dk * (np.arange(n) - n // 2)


def _ray_slice(w: WignerFunction, lam: float, mu: float,
               k_grid: np.ndarray) -> np.ndarray:
    """chi(k*lambda, k*mu) by separable rectangle sums over the W grid."""
    ep = np.exp(1j * np.outer(w.p_grid, k_grid * lam))     # (n_p, n_k)
    eq = np.exp(1j * np.outer(w.q_grid, k_grid * mu))      # (n_q, n_k)
    inner = w.values @ ep                                  # (n_q, n_k)
    return (eq * inner).sum(axis=0) * w.cell


def _support_bound(w: WignerFunction, lam: float, mu: float) -> float:
    """Largest |lambda p + mu q| over the cells carrying significant mass."""
    tol = 1e-13 * np.max(np.abs(w.values))
    rows = np.flatnonzero(np.max(np.abs(w.values), axis=1) > tol)
    cols = np.flatnonzero(np.max(np.abs(w.values), axis=0) > tol)
    if rows.size == 0 or cols.size == 0:
        return 0.0
    qs = w.q_grid[[rows[0], rows[-1]]]
    ps = w.p_grid[[cols[0], cols[-1]]]
    return max(abs(lam * p + mu * q) for q in qs for p in ps)


def tomogram_from_wigner(w: WignerFunction, rays, nu_grid,
                         decay_tol: float = 1e-8) -> Tomogram:
    """Project W onto quadrature distributions along the given rays.

    ``nu_grid`` must span the projected support of every ray and be fine
    enough that the slice characteristic function has decayed by the dual
    grid's band edge (otherwise the projection would alias).
    """
    rays = np.atleast_2d(np.asarray(rays, dtype=float))
    nu_grid = np.asarray(nu_grid, dtype=float)
    norm = w.normalization()
    if abs(norm - 1.0) > 1e-6:
        raise ValidationError(
            f"Wigner normalization {norm} too far from 1 for projection")
    k_grid = _dual_k_grid(nu_grid)
    kernel = np.exp(-1j * np.outer(k_grid, nu_grid))
    dk = k_grid[1] - k_grid[0]
    values = np.empty((rays.shape[0], nu_grid.size))
    k_edge = np.max(np.abs(k_grid))
    for r, (lam, mu) in enumerate(rays):
        if np.hypot(lam, mu) < 1e-12:
            raise DegenerateRayError(f"ray {r} is (0, 0)")
        # The slice sum over the W grid aliases once k*lambda or k*mu passes
        # the grid's band edge.
        if (k_edge * abs(lam) > np.pi / w.dp * (1 + 1e-9)
                or k_edge * abs(mu) > np.pi / w.dq * (1 + 1e-9)):
            raise NuRangeError(
                f"nu grid too fine for the Wigner grid along ray {r}: the "
                "slice transform would alias; widen the nu range or use "
                "fewer nu points")
        support = _support_bound(w, lam, mu)
        pad = 2.0 * (nu_grid[1] - nu_grid[0])
        if nu_grid[0] > -support - pad or nu_grid[-1] < support - pad:
            raise NuRangeError(
                f"nu grid [{nu_grid[0]}, {nu_grid[-1]}] does not cover the "
                f"projected support |nu| <= {support:.3g} of ray {r}")
        chi = _ray_slice(w, lam, mu, k_grid)
        edge = max(abs(chi[0]), abs(chi[-1]))
        if edge > decay_tol:
            raise NuRangeError(
                f"slice transform of ray {r} has magnitude {edge:.3e} at the "
                "dual band edge; refine the nu grid")
        row = (dk / (2.0 * np.pi)) * (chi @ kernel)
        residue = np.max(np.abs(row.imag))
        if residue > 1e-10 * max(1.0, np.max(np.abs(row.real))):
            raise NumericalError(
                f"imaginary residue {residue:.3e} in tomogram row {r}")
        values[r] = row.real
    t = Tomogram(rays, nu_grid, values, w.hbar)
    if values.min() < -1e-9:
        raise NumericalError(
            f"computed tomogram dips to {values.min():.3e} below -1e-9")
    return t


def scaling_check(w: WignerFunction, ray, nu_grid, s: float) -> float:
    """Sup-norm of P(s*lambda, s*mu, s*nu) - P(lambda, mu, nu)/|s|.

    Both tomograms are recomputed from W; the discrepancy measures how well
    the discrete projector realizes the homogeneity of the delta constraint.
    """
    s = float(s)
    if s == 0.0:
        raise ValidationError("scale factor must be nonzero")
    lam, mu = ray
    nu_grid = np.asarray(nu_grid, dtype=float)
    base = tomogram_from_wigner(w, [(lam, mu)], nu_grid)
    scaled_nu = s * nu_grid
    order = np.argsort(scaled_nu)
    scaled = tomogram_from_wigner(w, [(s * lam, s * mu)], scaled_nu[order])
    # Undo the sort so entries align with the base nu grid.
    back = np.empty_like(scaled.values[0])
    back[order] = scaled.values[0]
    return float(np.max(np.abs(back - base.values[0] / abs(s))))


def _check_angular_coverage(t: Tomogram, min_angles: int = 64) -> np.ndarray:
    radii = np.hypot(t.rays[:, 0], t.rays[:, 1])
    if np.max(np.abs(radii - 1.0)) > 1e-9:
        raise NonUnitRayError(
            "reconstruction requires unit rays lambda^2 + mu^2 = 1")
    angles = np.sort(t.angles)
    m = angles.size
    if m < min_angles:
        raise InsufficientAngularCoverageError(
            f"{m} angles < required {min_angles}")
    expected = angles[0] + np.pi * np.arange(m) / m
    if np.max(np.abs(angles - expected)) > 1e-9:
        raise InsufficientAngularCoverageError(
            "ray angles are not uniform over [0, pi)")
    return angles


def wigner_from_tomogram(t: Tomogram, q_grid=None, p_grid=None) -> WignerFunction:
    """Filtered back-projection of a uniform-angle unit-ray tomogram.

    Per ray, the nu transform gives the characteristic function on the ray;
    the |k| ramp then assembles the inverse double Fourier transform in polar
    form.  By Poisson summation the trapezoid ramp sum equals the exact
    filtered projection plus its wrapped copies at s + m*kappa
    (kappa = 2 pi / dk); each copy contributes the ramp's far tail
    -2 chi(0)/x^2, so the full alias series is removed in closed form via
    sum_{m != 0} (s + m kappa)^-2 = (pi/kappa)^2 / sin^2(pi s / kappa) - s^-2.
    """
    _check_angular_coverage(t)
    if q_grid is None:
        q_grid = t.nu_grid
    if p_grid is None:
        p_grid = t.nu_grid
    q_grid = np.asarray(q_grid, dtype=float)
    p_grid = np.asarray(p_grid, dtype=float)
    k_grid = _dual_k_grid(t.nu_grid)
    dk = k_grid[1] - k_grid[0]
    kappa = 2.0 * np.pi / dk
    i0 = t.nu_grid.size // 2                               # k = 0 node
    forward = np.exp(1j * np.outer(k_grid, t.nu_grid))     # chi from P
    w_acc = np.zeros((q_grid.size, p_grid.size))
    n_rays = t.rays.shape[0]
    dtheta = np.pi / n_rays
    for (lam, mu), row in zip(t.rays, t.values):
        chi = forward @ (row * t.dnu)                      # (n_k,)
        filtered = np.abs(k_grid) * chi * dk
        eq = np.exp(-1j * np.outer(q_grid, k_grid * mu))   # (n_q, n_k)
        ep = np.exp(-1j * np.outer(k_grid * lam, p_grid))  # (n_k, n_p)
        ray_term = (eq * filtered[None, :]) @ ep           # (n_q, n_p)
        chi0 = chi[i0].real
        s = mu * q_grid[:, None] + lam * p_grid[None, :]
        u = np.pi * s / kappa
        small = np.abs(u) < 1e-4
        u_safe = np.where(small, 1.0, u)
        alias_sum = np.where(small, 1.0 / 3.0 + u * u / 15.0,
                             1.0 / np.sin(u_safe) ** 2 - 1.0 / u_safe ** 2)
        w_acc += ray_term.real + 2.0 * chi0 * (np.pi / kappa) ** 2 * alias_sum
    w_acc *= dtheta / (4.0 * np.pi ** 2)
    return WignerFunction(q_grid, p_grid, w_acc, t.hbar)
