"""Spin-1/2 master distributions over non-commuting directions.

Joint outcome assignments for projections along several directions are built
from ordered products of projectors (1 + sign * sigma.n)/2.  Marginalizing
any subset of slots collapses those projector pairs to the identity, so every
single-direction marginal is a genuine probability even though the joint
values are complex.

The two-point agreement values P(ni, nj) = Re tr(pi_i pi_j) =
(1 + cos theta_ij)/2 would, if they came from one nonnegative joint sign
distribution, obey the pairwise-agreement triangle bound ("some pair
agrees"):

    P(n1,n2) + P(n1,n3) + P(n2,n3) >= 1.

The slack is reported in cosine units,

    slack = 1 + cos(t12) + cos(t13) + cos(t23) = 4 * symmetrized_triple,

twice the probability-form excess.  The quantum values violate the bound:
slack = 1 - sqrt(2) at t12 = t13 = 135 deg, t23 = 90 deg, and the coplanar
optimum is -1/2 at the mutually-120-deg triad.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError, NonUnitVectorError, ValidationError

PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)
IDENTITY = np.eye(2, dtype=complex)


def _unit(n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise NonUnitVectorError(f"direction must be a 3-vector, got shape {n.shape}")
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise NonUnitVectorError(f"|n| = {np.linalg.norm(n)} is not 1")
    return n


def _sign(s) -> int:
    s = int(s)
    if s not in (-1, 1):
        raise ValidationError(f"sign must be +1 or -1, got {s}")
    return s


def validate_spin_state(rho) -> np.ndarray:
    """Check hermiticity, unit trace, and positivity of a 2x2 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise InvalidStateError(f"density matrix must be 2x2, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-12 or abs(np.trace(rho).imag) > 1e-12:
        raise InvalidStateError(f"trace is {np.trace(rho)}, not 1")
    if np.min(np.linalg.eigvalsh(rho)) < -1e-12:
        raise InvalidStateError("density matrix has a negative eigenvalue")
    return rho


def bloch_state(r) -> np.ndarray:
    """Density matrix (1 + r.sigma)/2 for a Bloch vector with |r| <= 1."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,) or np.linalg.norm(r) > 1.0 + 1e-12:
        raise InvalidStateError("Bloch vector must be a 3-vector with |r| <= 1")
    return 0.5 * (IDENTITY + r[0] * PAULI[0] + r[1] * PAULI[1] + r[2] * PAULI[2])


def projector(n, sign: int = 1) -> np.ndarray:
    """Spin projector (1 + sign * sigma.n)/2 along the unit direction n."""
    n = _unit(n)
    sign = _sign(sign)
    return 0.5 * (IDENTITY + sign * (n[0] * PAULI[0] + n[1] * PAULI[1]
                                     + n[2] * PAULI[2]))


def pair_distribution(rho, n1, n2, signs=(1, 1)) -> complex:
    """tr(rho pi(n1, s1) pi(n2, s2)); complex in general, marginals real."""
    rho = validate_spin_state(rho)
    s1, s2 = signs
    return complex(np.trace(rho @ projector(n1, s1) @ projector(n2, s2)))


def marginal(rho, n1, sign: int = 1) -> float:
    """tr(rho pi(n1, sign)); a genuine probability in [0, 1]."""
    rho = validate_spin_state(rho)
    value = np.trace(rho @ projector(n1, sign))
    return float(value.real)


def triple_distribution(n, n1, n2, signs=(1, 1, 1)) -> complex:
    """tr(pi(n,s) pi(n1,s1) pi(n2,s2)) with the first projector as the state."""
    s, s1, s2 = signs
    return complex(np.trace(projector(n, s) @ projector(n1, s1)
                            @ projector(n2, s2)))


@dataclass
class MasterDistribution:
    """Joint (generally complex) assignment over sign outcomes per direction."""

    directions: list
    values: dict

    def total(self) -> complex:
        return sum(self.values.values())

    def marginal_single(self, index: int, sign: int) -> complex:
        return sum(v for signs, v in self.values.items()
                   if signs[index] == sign)


def master_distribution(rho, directions) -> MasterDistribution:
    """All 2^k ordered-product values tr(rho pi(n1,s1)...pi(nk,sk))."""
    rho = validate_spin_state(rho)
    pis = [{s: projector(n, s) for s in (1, -1)} for n in directions]
    values = {}
    for signs in itertools.product((1, -1), repeat=len(pis)):
        op = rho
        for p, s in zip(pis, signs):
            op = op @ p[s]
        values[signs] = complex(np.trace(op))
    dist = MasterDistribution([np.asarray(n, dtype=float) for n in directions],
                              values)
    if abs(dist.total() - 1.0) > 1e-12:
        raise ValidationError(f"master distribution sums to {dist.total()}")
    return dist


def symmetrized_triple(n1, n2, n3) -> float:
    """(1/4)(1 + cos t12 + cos t23 + cos t31): the ordering-averaged triple.

    Equals the mean of tr(pi_a pi_b pi_c) over the 3! orderings; the
    imaginary (n_a x n_b).n_c part cancels pairwise.
    """
    n1, n2, n3 = _unit(n1), _unit(n2), _unit(n3)
    return 0.25 * (1.0 + np.dot(n1, n2) + np.dot(n2, n3) + np.dot(n3, n1))


def two_point(ni, nj) -> float:
    """Cosine-unit two-point value 1 + cos(theta_ij) = 2 Re tr(pi_i pi_j)."""
    return 1.0 + float(np.dot(_unit(ni), _unit(nj)))


def triangle_inequality_check(n1, n2, n3) -> tuple[bool, float]:
    """Check the pairwise-agreement triangle bound on the two-point values.

    Any nonnegative joint distribution over three sign variables has at
    least one agreeing pair, so the agreement probabilities satisfy
    P(1,2) + P(1,3) + P(2,3) >= 1.  Returns (holds, slack) with the slack
    in cosine units, 1 + cos(t12) + cos(t13) + cos(t23), twice the
    probability-form excess and equal to 4 * symmetrized_triple.
    """
    dirs = (_unit(n1), _unit(n2), _unit(n3))
    lhs = (two_point(dirs[0], dirs[1]) + two_point(dirs[0], dirs[2])
           + two_point(dirs[1], dirs[2]))
    slack = float(lhs - 3.0 + 1.0)    # = 1 + sum of the three cosines
    return slack >= 0.0, slack


@dataclass
class ViolationSearchResult:
    """Best (most negative slack) coplanar configuration found by the scan."""

    min_slack: float
    angles_deg: tuple[float, float]
    directions: list
    violated: bool

    def to_dict(self) -> dict:
        return {
            "min_slack": self.min_slack,
            "angles_deg": list(self.angles_deg),
            "directions": [list(map(float, d)) for d in self.directions],
            "violated": self.violated,
        }


def violation_search(angular_resolution: float,
                     angle_range: tuple[float, float] = (0.0, 360.0)
                     ) -> ViolationSearchResult:
    """Deterministic scan over coplanar triples (n1 = x, n2/n3 at a, b deg).

    ``angular_resolution`` is the scan step in degrees, restricted to
    [1, 15].  ``angle_range`` bounds both scan angles; the default covers the
    full circle.
    """
    res = float(angular_resolution)
    if not 1.0 <= res <= 15.0:
        raise ValidationError(
            f"angular resolution {res} outside [1, 15] degrees")
    lo, hi = angle_range
    if not (0.0 <= lo < hi <= 360.0):
        raise ValidationError(f"bad angle range {angle_range}")
    steps = np.arange(lo, hi + 0.5 * res, res)
    steps = steps[steps <= hi]
    a_grid, b_grid = np.meshgrid(np.deg2rad(steps), np.deg2rad(steps),
                                 indexing="ij")
    # Cosine-unit agreement-bound slack for the triple (0, a, b).
    slack = (1.0 + np.cos(a_grid) + np.cos(b_grid) + np.cos(a_grid - b_grid))
    flat = int(np.argmin(slack))
    ia, ib = np.unravel_index(flat, slack.shape)
    best = (float(steps[ia]), float(steps[ib]))
    a_r, b_r = np.deg2rad(best[0]), np.deg2rad(best[1])
    directions = [np.array([1.0, 0.0, 0.0]),
                  np.array([np.cos(a_r), np.sin(a_r), 0.0]),
                  np.array([np.cos(b_r), np.sin(b_r), 0.0])]
    min_slack = float(slack[ia, ib])
    return ViolationSearchResult(min_slack, best, directions,
                                 min_slack < 0.0)
