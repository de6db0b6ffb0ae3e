"""Decoherence functionals and consistency checks for projector chains.

A branch is a time-ordered chain of projectors applied to an initial state;
its amplitude into a final vector f is  initial^dag * pi_1 pi_2 ... pi_k * f.
The decoherence matrix collects the interference between branch pairs,
summed over a family of final vectors:

    D[b, b'] = sum_f amp(b, f) * conj(amp(b', f)) = tr(C_b P_F C_b'^dag rho),

with C_b the branch chain product and P_F the projector onto the final
family.  The diagonal holds branch probabilities; a family of histories is
(strictly) consistent when the off-diagonal entries vanish, and weakly
consistent when only their real parts do, in which case probabilities are
still additive although amplitudes interfere 90 degrees out of phase.

Finite dimensions only (d <= 16); everything is exact matrix algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonExhaustiveFamilyError,
    ValidationError,
)

MAX_DIMENSION = 16


def _as_matrix(m, d: int | None = None) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got {m.shape}")
    if d is not None and m.shape[0] != d:
        raise DimensionMismatchError(
            f"matrix dimension {m.shape[0]} does not match {d}")
    if m.shape[0] > MAX_DIMENSION:
        raise ValidationError(
            f"dimension {m.shape[0]} above the supported {MAX_DIMENSION}")
    return m


def _check_projector(p: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    if np.max(np.abs(p - p.conj().T)) > tol:
        raise ValidationError("projector is not Hermitian")
    if np.max(np.abs(p @ p - p)) > tol:
        raise ValidationError("matrix is not idempotent")
    return p


@dataclass
class ProjectorChain:
    """Time-ordered list of Hermitian idempotent matrices."""

    projectors: list

    def __post_init__(self):
        if not self.projectors:
            raise ValidationError("chain needs at least one projector")
        d = np.asarray(self.projectors[0]).shape[0]
        self.projectors = [
            _check_projector(_as_matrix(p, d)) for p in self.projectors
        ]

    @property
    def dimension(self) -> int:
        return self.projectors[0].shape[0]

    def product(self) -> np.ndarray:
        out = np.eye(self.dimension, dtype=complex)
        for p in self.projectors:
            out = out @ p
        return out


@dataclass
class BranchSet:
    """Equal-length branches whose projectors resolve identity per time slot."""

    branches: list
    initial: np.ndarray

    def __post_init__(self):
        if not self.branches:
            raise ValidationError("branch set needs at least one branch")
        self.branches = [
            b if isinstance(b, ProjectorChain) else ProjectorChain(list(b))
            for b in self.branches
        ]
        d = self.branches[0].dimension
        length = len(self.branches[0].projectors)
        for b in self.branches:
            if b.dimension != d:
                raise DimensionMismatchError("branches differ in dimension")
            if len(b.projectors) != length:
                raise ValidationError("branches differ in chain length")
        init = np.asarray(self.initial, dtype=complex)
        if init.ndim == 1:
            if init.shape != (d,):
                raise DimensionMismatchError(
                    f"initial vector has dimension {init.shape}, expected {d}")
            norm = np.linalg.norm(init)
            if abs(norm - 1.0) > 1e-12:
                raise ValidationError(f"initial vector norm {norm} is not 1")
        else:
            init = _as_matrix(init, d)
            if abs(np.trace(init) - 1.0) > 1e-12:
                raise ValidationError("initial density matrix trace is not 1")
        self.initial = init

    @property
    def dimension(self) -> int:
        return self.branches[0].dimension

    def is_exhaustive(self, tol: float = 1e-12) -> bool:
        """True when the branch chain products sum to the identity.

        For a product family (every combination of per-slot alternatives)
        this is equivalent to each slot's alternatives resolving identity.
        """
        total = sum(b.product() for b in self.branches)
        return bool(np.max(np.abs(total - np.eye(self.dimension))) <= tol)

    def initial_density(self) -> np.ndarray:
        if self.initial.ndim == 1:
            return np.outer(self.initial, self.initial.conj())
        return self.initial


def chain_amplitude(initial, chain, final) -> complex:
    """initial^dag * pi_1 pi_2 ... pi_k * final (empty chain = overlap)."""
    initial = np.asarray(initial, dtype=complex)
    final = np.asarray(final, dtype=complex)
    if initial.ndim != 1 or final.ndim != 1 or initial.shape != final.shape:
        raise DimensionMismatchError("initial and final must be equal-length vectors")
    projectors = chain.projectors if isinstance(chain, ProjectorChain) else list(chain)
    vec = final
    for p in reversed(projectors):
        p = _check_projector(_as_matrix(p, initial.shape[0]))
        vec = p @ vec
    return complex(initial.conj() @ vec)


def _final_projector(final_family, d: int) -> np.ndarray:
    vectors = [np.asarray(f, dtype=complex) for f in final_family]
    if not vectors:
        raise ValidationError("final family must contain at least one vector")
    p = np.zeros((d, d), dtype=complex)
    for i, f in enumerate(vectors):
        if f.shape != (d,):
            raise DimensionMismatchError(
                f"final vector {i} has shape {f.shape}, expected ({d},)")
        for g in vectors[:i]:
            if abs(g.conj() @ f) > 1e-12:
                raise ValidationError("final family is not orthonormal")
        if abs(np.linalg.norm(f) - 1.0) > 1e-12:
            raise ValidationError(f"final vector {i} is not normalized")
        p += np.outer(f, f.conj())
    return p


def decoherence_matrix(branch_set: BranchSet, final_family,
                       require_exhaustive: bool = True) -> np.ndarray:
    """Interference matrix D[b, b'] over branch pairs, finals summed.

    With a complete orthonormal final family and exhaustive branches the
    total sum is 1 and the diagonal is the branch probability distribution.
    A subset of final vectors post-selects (screen-point analysis); pass
    ``require_exhaustive=False`` to analyze a partial branch family.
    """
    d = branch_set.dimension
    if require_exhaustive and not branch_set.is_exhaustive():
        raise NonExhaustiveFamilyError(
            "branch chain products do not sum to identity; pass "
            "require_exhaustive=False for a partial family")
    p_final = _final_projector(final_family, d)
    rho = branch_set.initial_density()
    chains = [b.product() for b in branch_set.branches]
    n = len(chains)
    out = np.empty((n, n), dtype=complex)
    for i, ci in enumerate(chains):
        left = ci @ p_final
        for j, cj in enumerate(chains):
            out[i, j] = np.trace(left @ cj.conj().T @ rho)
    return out


def is_consistent(p_matrix: np.ndarray, mode: str = "strict",
                  tol: float = 1e-10) -> tuple[bool, float]:
    """Verdict plus the largest off-diagonal magnitude for the given mode.

    strict: all |D_ij| <= tol (i != j).  weak: all |Re D_ij| <= tol, which
    still guarantees additive probabilities (amplitude pairs 90 degrees out
    of phase interfere in amplitude but not in probability).
    """
    p_matrix = np.asarray(p_matrix, dtype=complex)
    if p_matrix.ndim != 2 or p_matrix.shape[0] != p_matrix.shape[1]:
        raise DimensionMismatchError("decoherence matrix must be square")
    off = p_matrix - np.diag(np.diag(p_matrix))
    if mode == "strict":
        worst = float(np.max(np.abs(off))) if off.size else 0.0
    elif mode == "weak":
        worst = float(np.max(np.abs(off.real))) if off.size else 0.0
    else:
        raise ValidationError(f"unknown mode {mode!r}")
    return worst <= tol, worst


def pauli_projector_matrix(axis, sign: int = 1) -> np.ndarray:
    """2x2 projector (1 + sign * sigma.axis)/2 as a plain matrix."""
    from .spin_bell import projector

    return projector(axis, sign)
