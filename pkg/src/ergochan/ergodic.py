"""Ergodic analysis of power-bounded superoperators.

Given the matrix L of a quantum operation, the iterates split as

    L^n = sum_lambda lambda^n P_lambda  +  S^n

where lambda runs over the peripheral spectrum (unit-modulus
eigenvalues), P_lambda are the associated spectral projectors, and the
stable remainder S has spectral radius < 1 so its powers decay
geometrically.  This module computes each piece and cross-checks the
spectral construction against Cesaro averaging, which converges to the
same projectors at rate O(1/n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channel as channel_mod
from . import linalg
from .errors import (
    DecompositionFailureError,
    DegenerateInputError,
    DimensionError,
    DomainError,
    IllConditionedDecompositionError,
    SplittingViolationError,
)

DEFAULT_PERIPHERAL_TOL = 1e-8
DEFAULT_CLUSTER_TOL = 1e-7
DEFAULT_FIXED_TOL = 1e-8


def _as_matrix(L) -> np.ndarray:
    """Accept a Superoperator or a raw square ndarray."""
    if isinstance(L, channel_mod.Superoperator):
        return np.asarray(L.matrix)
    M = linalg.as_matrix(L)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"superoperator matrix must be square, got {M.shape}")
    return M


def _side_dim(L) -> int:
    M = _as_matrix(L)
    d = int(round(np.sqrt(M.shape[0])))
    if d * d != M.shape[0]:
        raise DimensionError(
            f"superoperator size {M.shape[0]} is not a perfect square"
        )
    return d


@dataclass(frozen=True)
class FixedSpaceBasis:
    """Orthonormal (HS) basis of Ker(I - L), unvectorized to matrices."""

    basis: tuple
    tol: float

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class PeripheralDecomposition:
    """Peripheral eigenvalues, their spectral projectors, and the stable
    remainder of one superoperator."""

    dim: int
    lambdas: tuple
    projectors: tuple
    stable: np.ndarray
    peripheral_tol: float
    cluster_tol: float
    eigvec_condition: float

    @property
    def projector_ranks(self) -> tuple:
        return tuple(int(round(np.real(np.trace(P)))) for P in self.projectors)

    @property
    def stable_spectral_radius(self) -> float:
        return linalg.spectral_radius(self.stable)


@dataclass(frozen=True)
class DecayFit:
    """Certificate ||S^n|| <= M / (1+eps)^n over the recorded n."""

    M: float
    epsilon: float
    n_max: int
    norms: tuple


@dataclass(frozen=True)
class SplittingReport:
    fixed_dim: int
    range_dim: int
    direct_sum_residual: float
    dual_orthogonality_residual: float


@dataclass(frozen=True)
class IntersectionReport:
    combined_fixed: FixedSpaceBasis
    intersection: FixedSpaceBasis
    equal: bool | None
    commute_residual: float
    projection_residual: float | None


@dataclass(frozen=True)
class HsSymmetryReport:
    forward_fixed: FixedSpaceBasis
    adjoint_fixed: FixedSpaceBasis
    equal: bool
    projection_residual: float


def cesaro_average(L, lam: complex, n: int) -> np.ndarray:
    """A_n(L/lam) = (1/n) sum_{i=1..n} (L/lam)^i by iterated products.

    Deliberately eigendecomposition-free: this is the constructive route
    the spectral projectors are cross-checked against.
    """
    M = _as_matrix(L)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if abs(abs(lam) - 1.0) > 1e-12:
        raise DomainError(f"lambda must have unit modulus, got |{lam}| = {abs(lam)}")
    T = M / lam
    power = T.copy()
    acc = T.copy()
    for _ in range(n - 1):
        power = T @ power
        acc += power
    return acc / n


def fixed_space(L, tol: float = DEFAULT_FIXED_TOL) -> FixedSpaceBasis:
    """Orthonormal basis of Ker(I - L) as d x d matrices."""
    M = _as_matrix(L)
    d = _side_dim(M)
    kernel = linalg.null_space(np.eye(M.shape[0]) - M, tol)
    mats = tuple(linalg.unvec(kernel[:, k], d) for k in range(kernel.shape[1]))
    return FixedSpaceBasis(basis=mats, tol=tol)


def peripheral_spectrum(
    L,
    peripheral_tol: float = DEFAULT_PERIPHERAL_TOL,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> list:
    """Unit-modulus eigenvalues of L, clustered and radially projected.

    Eigenvalues within ``cluster_tol`` of each other merge to their
    mean; the empty list is a valid result (strictly contractive maps).
    """
    lam = linalg.eigvals(_as_matrix(L))
    peripheral = [z for z in lam if abs(z) >= 1.0 - peripheral_tol]
    clusters: list[list[complex]] = []
    for z in peripheral:
        for members in clusters:
            if abs(z - np.mean(members)) <= cluster_tol:
                members.append(z)
                break
        else:
            clusters.append([z])
    out = []
    for members in clusters:
        m = complex(np.mean(members))
        out.append(m / abs(m))
    order = linalg.eig_sort_order(np.array(out)) if out else []
    return [out[i] for i in order]


def spectral_projectors(
    L,
    lambdas,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
    peripheral_tol: float = DEFAULT_PERIPHERAL_TOL,
    cond_threshold: float = 1e10,
) -> list:
    """Spectral projector onto each peripheral cluster.

    Built from the eigendecomposition: P = W[:, idx] @ inv(W)[idx, :]
    over the eigenvalue indices assigned to the cluster.  An
    ill-conditioned eigenvector matrix signals a near-defective
    peripheral eigenvalue, which cannot occur for exactly power-bounded
    maps, so it is reported as an error.
    """
    M = _as_matrix(L)
    lam, W = linalg.eig_general(M)
    cond = float(np.linalg.cond(W))
    if cond > cond_threshold:
        raise IllConditionedDecompositionError(
            f"eigenvector matrix condition number {cond:.3e} exceeds "
            f"threshold {cond_threshold:.3e}",
            condition_number=cond,
        )
    Winv = np.linalg.inv(W)
    match_tol = cluster_tol + 10.0 * peripheral_tol
    projectors = []
    for target in lambdas:
        idx = [k for k, z in enumerate(lam) if abs(z - target) <= match_tol]
        if not idx:
            raise DecompositionFailureError(
                f"no eigenvalue of L within {match_tol:.1e} of {target}",
                spectral_radius=float("nan"),
            )
        projectors.append(W[:, idx] @ Winv[idx, :])
    return projectors


def stable_part(L, lambdas, projectors) -> np.ndarray:
    """S = L - sum_lambda lambda * P_lambda; requires rho(S) < 1."""
    M = _as_matrix(L)
    S = M.copy()
    for lam, P in zip(lambdas, projectors):
        S -= lam * P
    rho = linalg.spectral_radius(S)
    if rho >= 1.0 - 1e-12:
        raise DecompositionFailureError(
            f"stable part has spectral radius {rho:.6f} >= 1; the "
            "peripheral set was incomplete (loosen peripheral_tol)",
            spectral_radius=rho,
        )
    return S


def peripheral_decomposition(
    L,
    peripheral_tol: float = DEFAULT_PERIPHERAL_TOL,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
    cond_threshold: float = 1e10,
    cesaro_check_n: int = 400,
    cesaro_check_factor: float = 50.0,
) -> PeripheralDecomposition:
    """Full decomposition L = sum lambda P_lambda + S with cross-check.

    The projectors are computed spectrally and then validated against
    Cesaro averages of length ``cesaro_check_n``; a disagreement larger
    than ``cesaro_check_factor / n`` (times ||L||) is an error, not a
    warning.  Set ``cesaro_check_n=0`` to skip the (slower) check.
    """
    M = _as_matrix(L)
    d = _side_dim(M)
    lambdas = peripheral_spectrum(M, peripheral_tol, cluster_tol)
    projectors = spectral_projectors(
        M, lambdas, cluster_tol, peripheral_tol, cond_threshold
    )
    S = stable_part(M, lambdas, projectors)

    if cesaro_check_n:
        scale = max(1.0, linalg.operator_norm(M))
        budget = cesaro_check_factor / cesaro_check_n * scale
        for lam, P in zip(lambdas, projectors):
            A = cesaro_average(M, lam, cesaro_check_n)
            resid = linalg.operator_norm(A - P)
            if resid > budget:
                raise DecompositionFailureError(
                    f"Cesaro average at lambda={lam} disagrees with the "
                    f"spectral projector: residual {resid:.3e} > {budget:.3e}",
                    spectral_radius=linalg.spectral_radius(S),
                )

    _, W = linalg.eig_general(M)
    return PeripheralDecomposition(
        dim=d,
        lambdas=tuple(lambdas),
        projectors=tuple(projectors),
        stable=S,
        peripheral_tol=peripheral_tol,
        cluster_tol=cluster_tol,
        eigvec_condition=float(np.linalg.cond(W)),
    )


def reconstruct_iterate(decomp: PeripheralDecomposition, n: int, X) -> np.ndarray:
    """phi^n(X) via sum lambda^n P_lambda(X) + S^n(X)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    X = linalg.as_matrix(X)
    d = decomp.dim
    if X.shape != (d, d):
        raise DimensionError(f"expected {d}x{d} input, got {X.shape}")
    v = linalg.vec(X)
    out = np.zeros_like(v)
    for lam, P in zip(decomp.lambdas, decomp.projectors):
        out += lam**n * (P @ v)
    out += np.linalg.matrix_power(decomp.stable, n) @ v
    return linalg.unvec(out, d)


def decay_fit(S, n_max: int, margin: float = 1e-3) -> DecayFit:
    """Geometric-decay certificate for the stable part.

    1 + eps is placed at (1 - margin)/rho(S), so the bound can never be
    falsified by transient growth of a non-normal S; M is then the
    smallest constant making the certificate true on the recorded
    norms.  S = 0 is reported as (M=0, eps=margin) by convention.
    """
    S = _as_matrix(S)
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    rho = linalg.spectral_radius(S)
    if rho >= 1.0:
        raise DomainError(f"stable part must satisfy rho(S) < 1, got {rho}")

    norms = []
    power = np.eye(S.shape[0], dtype=complex)
    for _ in range(n_max):
        power = power @ S
        norms.append(linalg.operator_norm(power))

    if max(norms) <= 1e-13:
        # numerically zero stable part (e.g. pauli-xy at p = 1/2)
        return DecayFit(M=0.0, epsilon=margin, n_max=n_max, norms=tuple(norms))
    if rho <= 1e-13:
        eps = 1.0  # (near-)nilpotent S: any finite rate certifies
    else:
        eps = (1.0 - margin) / rho - 1.0
        if eps <= 0.0:
            eps = (1.0 - rho) / (2.0 * rho)
    M = max(norm * (1.0 + eps) ** (k + 1) for k, norm in enumerate(norms))
    fit = DecayFit(M=float(M), epsilon=float(eps), n_max=n_max, norms=tuple(norms))
    for k, norm in enumerate(fit.norms):  # re-verify the certificate
        assert norm <= fit.M / (1.0 + fit.epsilon) ** (k + 1) * (1 + 1e-12)
    return fit


def splitting_check(L, tol: float = DEFAULT_FIXED_TOL, sample: int = 8, seed: int = 0):
    """Mean-ergodic splitting: the space is Ker(I-L) (+) Rng(I-L).

    Verifies dim counts add up to d^2, that the concatenated bases have
    full numerical rank, and the dual-orthogonality condition: elements
    of Rng(I-L) pair to zero with every fixed point of the adjoint.
    """
    M = _as_matrix(L)
    n = M.shape[0]
    I = np.eye(n)
    kernel = linalg.null_space(I - M, tol)
    rng_basis = linalg.column_space(I - M, tol)
    fixed_dim = kernel.shape[1]
    range_dim = rng_basis.shape[1]

    stacked = np.hstack([kernel, rng_basis])
    s = linalg.singular_values(stacked) if stacked.shape[1] else np.array([1.0])
    residual = float(s[-1])

    dual_fixed = linalg.null_space(I - M.conj().T, tol)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(sample):
        z = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        y = (I - M) @ z
        if dual_fixed.shape[1] and np.linalg.norm(y) > 0:
            worst = max(
                worst,
                float(np.max(np.abs(dual_fixed.conj().T @ y)) / np.linalg.norm(y)),
            )

    if fixed_dim + range_dim != n or residual <= tol:
        raise SplittingViolationError(
            f"splitting failed: fixed_dim={fixed_dim}, range_dim={range_dim}, "
            f"total={n}, direct-sum residual={residual:.3e}"
        )
    return SplittingReport(
        fixed_dim=fixed_dim,
        range_dim=range_dim,
        direct_sum_residual=residual,
        dual_orthogonality_residual=worst,
    )


def _basis_matrix(fs: FixedSpaceBasis) -> np.ndarray:
    if not fs.basis:
        return np.zeros((0, 0), dtype=complex)
    d = fs.basis[0].shape[0]
    return np.column_stack([linalg.vec(B) for B in fs.basis])


def _mutual_projection_residual(fa: FixedSpaceBasis, fb: FixedSpaceBasis) -> float:
    """max over both directions of || (I - P_other) basis ||."""
    if fa.dimension != fb.dimension:
        return 1.0
    if fa.dimension == 0:
        return 0.0
    Qa = _basis_matrix(fa)
    Qb = _basis_matrix(fb)
    ra = linalg.operator_norm(Qa - Qb @ (Qb.conj().T @ Qa))
    rb = linalg.operator_norm(Qb - Qa @ (Qa.conj().T @ Qb))
    return max(ra, rb)


def fixed_space_intersection(
    channels, weights, tol: float = DEFAULT_FIXED_TOL
) -> IntersectionReport:
    """Fixed space of a convex combination vs. intersection of fixed
    spaces of the parts.

    Equality of the two spaces is the content of the commuting-family
    lemma, so it is asserted only when the superoperators commute
    within ``tol``; otherwise ``equal`` is None and the commutator
    residual is reported.
    """
    weights = [float(w) for w in weights]
    if len(channels) != len(weights) or not channels:
        raise DomainError("need equally many channels and weights, at least one")
    if any(w <= 0 for w in weights):
        raise DomainError("weights must be strictly positive")
    if abs(sum(weights) - 1.0) > 1e-12:
        raise DomainError(f"weights must sum to 1, got {sum(weights)}")
    dims = {ch.dim for ch in channels}
    if len(dims) != 1:
        raise DimensionError(f"channels must share one dimension, got {dims}")

    mats = [channel_mod.superoperator(ch).matrix for ch in channels]
    combined = sum(w * Lm for w, Lm in zip(weights, mats))
    combined_fixed = fixed_space(combined, tol)

    commute = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            commute = max(
                commute, linalg.operator_norm(mats[i] @ mats[j] - mats[j] @ mats[i])
            )

    n = mats[0].shape[0]
    I = np.eye(n)
    complements = []
    empty = False
    for Lm in mats:
        Q = linalg.null_space(I - Lm, tol)
        if Q.shape[1] == 0:
            empty = True
            break
        complements.append(I - Q @ Q.conj().T)
    d = channels[0].dim
    if empty:
        intersection = FixedSpaceBasis(basis=(), tol=tol)
    else:
        stacked = np.vstack(complements)
        # kernel of the stacked complement projectors = joint fixed span
        _, s, Vh = linalg.svd(stacked)
        smax = max(1.0, float(s[0]) if s.size else 1.0)
        rank = int(np.sum(s >= tol * smax))
        kernel = Vh[rank:].conj().T if rank < n else np.zeros((n, 0), dtype=complex)
        intersection = FixedSpaceBasis(
            basis=tuple(
                linalg.unvec(kernel[:, k], d) for k in range(kernel.shape[1])
            ),
            tol=tol,
        )

    if commute <= tol:
        resid = _mutual_projection_residual(combined_fixed, intersection)
        equal: bool | None = resid <= tol
    else:
        resid = None
        equal = None
    return IntersectionReport(
        combined_fixed=combined_fixed,
        intersection=intersection,
        equal=equal,
        commute_residual=float(commute),
        projection_residual=resid,
    )


def peripheral_unitarity_check(L, decomp: PeripheralDecomposition) -> float:
    """max |sigma_k - 1| of L restricted to the peripheral span.

    The restriction of a mean-ergodic contraction to the span of its
    peripheral eigenspaces is unitary.  The classical statement is made
    on the union of the fixed spaces F(T/lambda), which is not a linear
    subspace; this check uses the span instead (interpretive choice).
    """
    if not decomp.lambdas:
        raise DegenerateInputError("peripheral spectrum is empty")
    M = _as_matrix(L)
    Psum = sum(decomp.projectors)
    Q = linalg.column_space(Psum, tol=0.5)
    R = Q.conj().T @ M @ Q
    s = linalg.singular_values(R)
    return float(np.max(np.abs(s - 1.0)))


def hs_fixed_point_symmetry(ch, tol: float = DEFAULT_FIXED_TOL) -> HsSymmetryReport:
    """F(phi_2) = F(phi_2*) on the Hilbert-Schmidt space (finite Kraus
    families always qualify)."""
    Lf = channel_mod.superoperator(ch, channel_mod.FORWARD)
    La = channel_mod.superoperator(ch, channel_mod.ADJOINT)
    ff = fixed_space(Lf, tol)
    fa = fixed_space(La, tol)
    resid = _mutual_projection_residual(ff, fa)
    return HsSymmetryReport(
        forward_fixed=ff,
        adjoint_fixed=fa,
        equal=ff.dimension == fa.dimension and resid <= tol,
        projection_residual=resid,
    )
