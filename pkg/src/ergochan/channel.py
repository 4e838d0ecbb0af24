"""Quantum operations in Kraus form and their superoperator matrices.

A channel acts on d x d matrices as ``phi(X) = sum_i V_i X V_i^dag`` and
its adjoint under the trace pairing as ``phi*(A) = sum_i V_i^dag A V_i``.
Under the column-stacking convention of :mod:`ergochan.linalg` the
matrix of ``phi`` is ``sum_i conj(V_i) kron V_i`` and the matrix of
``phi*`` is ``sum_i V_i^T kron V_i^dag``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError, DomainError
from .linalg import DEFAULT_TOL

FORWARD = "forward"
ADJOINT = "adjoint"


@dataclass(frozen=True)
class KrausChannel:
    """A finite Kraus family {V_i} on a d-dimensional space.

    Only finite families are representable; infinite Kraus sums are
    approximated upstream by truncation, never here.
    """

    kraus: tuple
    label: str = ""

    def __post_init__(self):
        mats = tuple(linalg.as_matrix(V) for V in self.kraus)
        if not mats:
            raise DomainError("Kraus family must be nonempty")
        d = mats[0].shape[0]
        for V in mats:
            if V.shape != (d, d):
                raise DimensionError(
                    f"all Kraus operators must be {d}x{d}, got {V.shape}"
                )
        for V in mats:
            V.setflags(write=False)
        object.__setattr__(self, "kraus", mats)

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


@dataclass(frozen=True)
class Superoperator:
    """The d^2 x d^2 matrix of phi (or phi*) under vectorization."""

    dim: int
    side: str
    matrix: np.ndarray

    def __post_init__(self):
        if self.side not in (FORWARD, ADJOINT):
            raise DomainError(f"side must be {FORWARD!r} or {ADJOINT!r}")
        M = linalg.as_matrix(self.matrix)
        if M.shape != (self.dim**2, self.dim**2):
            raise DimensionError(
                f"superoperator for dim {self.dim} must be "
                f"{self.dim**2}x{self.dim**2}, got {M.shape}"
            )
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    def __call__(self, X) -> np.ndarray:
        """Apply the map to a d x d matrix via vec/unvec."""
        X = linalg.as_matrix(X)
        if X.shape != (self.dim, self.dim):
            raise DimensionError(f"expected {self.dim}x{self.dim}, got {X.shape}")
        return linalg.unvec(self.matrix @ linalg.vec(X), self.dim)


@dataclass(frozen=True)
class VerificationReport:
    """Channel-axiom check results; flags are pure functions of the
    numeric fields and the tolerance."""

    cp_ok: bool
    min_choi_eigenvalue: float
    trace_nonincreasing_ok: bool
    max_kraus_sum_eigenvalue: float
    contraction_ok: bool
    duality_max_residual: float
    tol: float
    seed: int
    sample_size: int

    @property
    def all_ok(self) -> bool:
        return self.cp_ok and self.trace_nonincreasing_ok and self.contraction_ok


def apply(ch: KrausChannel, X) -> np.ndarray:
    """phi(X) = sum_i V_i X V_i^dag."""
    X = linalg.as_matrix(X)
    d = ch.dim
    if X.shape != (d, d):
        raise DimensionError(f"expected {d}x{d} input, got {X.shape}")
    out = np.zeros((d, d), dtype=complex)
    for V in ch.kraus:
        out += V @ X @ V.conj().T
    return out


def apply_adjoint(ch: KrausChannel, A) -> np.ndarray:
    """phi*(A) = sum_i V_i^dag A V_i."""
    A = linalg.as_matrix(A)
    d = ch.dim
    if A.shape != (d, d):
        raise DimensionError(f"expected {d}x{d} input, got {A.shape}")
    out = np.zeros((d, d), dtype=complex)
    for V in ch.kraus:
        out += V.conj().T @ A @ V
    return out


def apply_n(ch: KrausChannel, X, n: int, adjoint: bool = False) -> np.ndarray:
    """n-fold direct application (the brute-force iterate oracle)."""
    op = apply_adjoint if adjoint else apply
    out = linalg.as_matrix(X)
    for _ in range(n):
        out = op(ch, out)
    return out


def kraus_sum(ch: KrausChannel) -> np.ndarray:
    """sum_i V_i^dag V_i, symmetrized against round-off."""
    d = ch.dim
    out = np.zeros((d, d), dtype=complex)
    for V in ch.kraus:
        out += V.conj().T @ V
    return linalg.hermitize(out)


def superoperator(ch: KrausChannel, side: str = FORWARD) -> Superoperator:
    """Matrix form of phi (side='forward') or phi* (side='adjoint')."""
    d = ch.dim
    L = np.zeros((d * d, d * d), dtype=complex)
    for V in ch.kraus:
        if side == FORWARD:
            L += np.kron(V.conj(), V)
        elif side == ADJOINT:
            L += np.kron(V.T, V.conj().T)
        else:
            raise DomainError(f"unknown side {side!r}")
    return Superoperator(dim=d, side=side, matrix=L)


def choi(ch: KrausChannel) -> np.ndarray:
    """Choi matrix C = sum_ij E_ij kron phi(E_ij); PSD iff CP."""
    return choi_from_superoperator(superoperator(ch).matrix)


def choi_from_superoperator(L) -> np.ndarray:
    """Choi matrix of an arbitrary superoperator matrix.

    Also accepts non-CP maps injected as raw matrices (e.g. the
    transpose map), which is how negative CP witnesses are tested.
    """
    L = linalg.as_matrix(L)
    n = L.shape[0]
    d = int(round(np.sqrt(n)))
    if L.shape != (n, n) or d * d != n:
        raise DimensionError(f"superoperator matrix must be d^2 x d^2, got {L.shape}")
    C = np.zeros((n, n), dtype=complex)
    E = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            E[i, j] = 1.0
            C += np.kron(E, linalg.unvec(L @ linalg.vec(E), d))
            E[i, j] = 0.0
    return C


def transpose_superoperator(d: int) -> Superoperator:
    """Matrix of X -> X^T: the canonical non-CP witness."""
    K = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            K[i * d + j, j * d + i] = 1.0
    return Superoperator(dim=d, side=FORWARD, matrix=K)


def min_choi_eigenvalue(C) -> float:
    return float(np.linalg.eigvalsh(linalg.hermitize(C))[0])


def _sample_matrices(rng: np.random.Generator, d: int, count: int):
    for _ in range(count):
        yield rng.uniform(-1, 1, (d, d)) + 1j * rng.uniform(-1, 1, (d, d))


def verify(
    ch: KrausChannel,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    sample_size: int = 20,
) -> VerificationReport:
    """Check the channel axioms and Prop.-style contraction bounds.

    Contraction and duality are sampled over a seeded deterministic set
    of random complex matrices so two runs produce identical reports.
    """
    d = ch.dim
    lam_min = min_choi_eigenvalue(choi(ch))
    lam_max = float(np.linalg.eigvalsh(kraus_sum(ch))[-1])

    rng = np.random.default_rng(seed)
    contraction_ok = True
    duality_max = 0.0
    for X in _sample_matrices(rng, d, sample_size):
        A = next(_sample_matrices(rng, d, 1))
        if linalg.trace_norm(apply(ch, X)) > linalg.trace_norm(X) + tol:
            contraction_ok = False
        if linalg.operator_norm(apply_adjoint(ch, A)) > linalg.operator_norm(A) + tol:
            contraction_ok = False
        duality_max = max(
            duality_max,
            abs(np.trace(apply(ch, X) @ A) - np.trace(X @ apply_adjoint(ch, A))),
        )

    return VerificationReport(
        cp_ok=lam_min >= -tol,
        min_choi_eigenvalue=lam_min,
        trace_nonincreasing_ok=lam_max <= 1.0 + tol,
        max_kraus_sum_eigenvalue=lam_max,
        contraction_ok=contraction_ok,
        duality_max_residual=float(duality_max),
        tol=tol,
        seed=seed,
        sample_size=sample_size,
    )
