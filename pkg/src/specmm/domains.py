"""Strategy domains and their linear oracles.

The two feasible sets of the matrix game live here: the spectraplex (unit
trace, positive semidefinite) for the matrix player and the probability
simplex for the index player. Both are thin validated wrappers; the
operations on them are the exact linear-minimization oracles the saddle
solver and the embedding are built from.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .symmat import SymMatrix, eigh, frobenius_inner, is_psd, lambda_min, _eigh_raw
from .tolerances import DEFAULT_TOLS, Tolerances

__all__ = [
    "SpectraplexPoint",
    "SimplexPoint",
    "InstanceSet",
    "spectraplex_linear_min",
    "lambda_min_by_bisection",
    "best_response_index",
    "weighted_combination",
    "payoff",
    "sample_spectraplex",
    "sample_simplex",
]


@dataclass(frozen=True, eq=False)
class SpectraplexPoint:
    """Unit-trace positive semidefinite matrix (a density matrix).

    Construction validates trace within 1e-10 of one and smallest
    eigenvalue >= -1e-10; worse violations raise instead of being
    repaired silently.
    """

    matrix: SymMatrix

    def __post_init__(self):
        tr = self.matrix.trace()
        if abs(tr - 1.0) > DEFAULT_TOLS.spectraplex_trace:
            raise ValueError(f"trace must be 1, got {tr!r}")
        lo = lambda_min(self.matrix)
        if lo < -DEFAULT_TOLS.spectraplex_eig:
            raise ValueError(f"matrix must be positive semidefinite, lambda_min={lo!r}")

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def array(self) -> np.ndarray:
        return self.matrix.array


@dataclass(frozen=True, eq=False)
class SimplexPoint:
    """Probability vector: entries >= -1e-12, sum within 1e-12 of one."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.shape[0] < 1:
            raise ValueError(f"expected a nonempty vector, got shape {w.shape}")
        if not np.isfinite(w).all():
            raise ValueError("weights must be finite")
        if w.min() < -DEFAULT_TOLS.simplex_entry:
            raise ValueError(f"weights must be nonnegative, min={w.min()!r}")
        s = float(w.sum())
        if abs(s - 1.0) > DEFAULT_TOLS.simplex_sum:
            raise ValueError(f"weights must sum to 1, got {s!r}")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return self.weights.shape[0]

    @staticmethod
    def uniform(m: int) -> "SimplexPoint":
        return SimplexPoint(np.full(m, 1.0 / m))


@dataclass(frozen=True, eq=False)
class InstanceSet:
    """Finite family of symmetric matrices of a common order."""

    matrices: tuple[SymMatrix, ...]

    def __post_init__(self):
        mats = tuple(self.matrices)
        if len(mats) < 1:
            raise ValueError("an instance needs at least one matrix")
        n = mats[0].n
        for k, a in enumerate(mats):
            if a.n != n:
                raise ValueError(f"matrix {k} has order {a.n}, expected {n}")
        object.__setattr__(self, "matrices", mats)

    @property
    def m(self) -> int:
        return len(self.matrices)

    @property
    def n(self) -> int:
        return self.matrices[0].n

    @cached_property
    def stacked(self) -> np.ndarray:
        """(m, n, n) read-only stack of the payoff matrices."""
        s = np.stack([a.array for a in self.matrices])
        s.flags.writeable = False
        return s


def spectraplex_linear_min(
    a: SymMatrix, tols: Tolerances = DEFAULT_TOLS
) -> tuple[float, SpectraplexPoint]:
    """Minimize <A, X> over the spectraplex.

    The minimum is lambda_min(A), attained at the rank-one projector onto
    a bottom eigenvector; ties resolve to the eigensolver's first bottom
    eigenvector, so the result is deterministic.
    """
    dec = eigh(a, tols)
    u = dec.eigenvectors[:, 0]
    x = SpectraplexPoint(SymMatrix(np.outer(u, u)))
    return float(dec.eigenvalues[0]), x


def lambda_min_by_bisection(
    a: SymMatrix, tol: float = 1e-8, tols: Tolerances = DEFAULT_TOLS
) -> float:
    """Smallest eigenvalue via the semidefinite characterization
    lambda_min(A) = max { t : A - t*I is PSD }, located by bisection.

    Independent of the direct eigenvalue route except for the PSD
    predicate itself; the result is within tol of lambda_min(A). The
    initial bracket [-||A||_F, +||A||_F] always contains the answer.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    fro = a.fro_norm()
    if fro == 0.0:
        return 0.0
    lo, hi = -fro, fro
    ident = np.eye(a.n)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_psd(SymMatrix(a.array - mid * ident), 0.0, tols):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def best_response_index(x: SpectraplexPoint, inst: InstanceSet) -> tuple[int, float]:
    """Index attaining max_i <A_i, X> and the attained value.

    Ties break to the lowest index. Indices are zero-based positions into
    ``inst.matrices``.
    """
    if x.n != inst.n:
        raise ValueError(f"dimension mismatch: point has n={x.n}, instance n={inst.n}")
    vals = np.tensordot(inst.stacked, x.array, axes=([1, 2], [0, 1]))
    k = int(np.argmax(vals))
    return k, float(vals[k])


def weighted_combination(y: SimplexPoint, inst: InstanceSet) -> SymMatrix:
    """sum_i y_i A_i."""
    if y.m != inst.m:
        raise ValueError(f"dimension mismatch: point has m={y.m}, instance m={inst.m}")
    return SymMatrix(np.tensordot(y.weights, inst.stacked, axes=(0, 0)))


def payoff(y: SimplexPoint, x: SpectraplexPoint, inst: InstanceSet) -> float:
    """Bilinear payoff sum_i y_i <A_i, X>."""
    if y.m != inst.m or x.n != inst.n:
        raise ValueError("dimension mismatch between strategies and instance")
    vals = np.tensordot(inst.stacked, x.array, axes=([1, 2], [0, 1]))
    return float(np.dot(y.weights, vals))


def sample_spectraplex(n: int, rng: np.random.Generator) -> SpectraplexPoint:
    """Random interior spectraplex point: normalized matrix exponential of
    a random symmetric matrix (spectrum shifted before exponentiation, so
    the construction never overflows)."""
    g = rng.uniform(-1.0, 1.0, (n, n))
    w, u = _eigh_raw((g + g.T) / 2.0)
    e = np.exp(w - w[-1])
    x = (u * e) @ u.T
    x = (x + x.T) / (2.0 * e.sum())
    return SpectraplexPoint(SymMatrix(x))


def sample_simplex(m: int, rng: np.random.Generator) -> SimplexPoint:
    """Random simplex point, uniform (Dirichlet(1, ..., 1))."""
    e = rng.exponential(size=m)
    return SimplexPoint(e / e.sum())
