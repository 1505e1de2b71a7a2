"""Sufficient conditions for uniqueness and continuity of the coincident solution.

Each certificate reports a margin; a positive margin means the condition
holds.  None of these conditions is necessary, so a failing certificate is
never a non-uniqueness verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import NotSymmetric, TooLarge
from .games import AdjacencyMatrix

# Exhaustive principal-minor enumeration is 2^n - 1 determinants.
P_MATRIX_MAX_N = 20


@dataclass(frozen=True)
class Certificate:
    """A named sufficient condition with its computed margin."""

    name: str
    margin: float
    holds: bool
    details: dict

    def __post_init__(self):
        if self.holds != (self.margin > 0):
            raise ValueError("certificate must hold exactly when margin > 0")


def _cert(name, margin, **details) -> Certificate:
    return Certificate(name=name, margin=float(margin), holds=bool(margin > 0), details=details)


def _g(adjacency) -> np.ndarray:
    if isinstance(adjacency, AdjacencyMatrix):
        return adjacency.g
    return np.asarray(adjacency, dtype=float)


def _spectral_norm(m) -> float:
    return float(np.linalg.svd(m, compute_uv=False)[0])


def _rowsum_norm(m) -> float:
    return float(np.max(np.sum(np.abs(m), axis=1)))


def cert_strong_monotone(adjacency) -> Certificate:
    """Strong monotonicity of the combined equilibrium/optimum map: 2 - 3*||G||_2 > 0.

    Details carry the sharper intermediate bound 2 + lambda_min(1.5*(G+G^T)),
    which is reported but does not gate the verdict.
    """
    g = _g(adjacency)
    sigma = _spectral_norm(g)
    lam = float(np.min(np.linalg.eigvalsh(1.5 * (g + g.T))))
    return _cert(
        "prop1-strong-monotone",
        2.0 - 3.0 * sigma,
        sigma_max=sigma,
        lambda_min_threehalves_sym=lam,
        alpha_sharper=2.0 + lam,
    )


def cert_block_p(adjacency) -> Certificate:
    """Uniform block-P condition via norms: 2 - (2*||G||_inf + ||G||_1) > 0."""
    g = _g(adjacency)
    row = _rowsum_norm(g)
    col = _rowsum_norm(g.T)
    return _cert("prop2-block-p", 2.0 - (2.0 * row + col), rowsum_norm=row, colsum_norm=col)


def build_gamma_matrix(adjacency) -> np.ndarray:
    """Comparison matrix with diagonal 2 and off-diagonal -|2*g_ij + g_ji|.

    Always a Z-matrix; the coincident solution is unique when it is a P-matrix.
    """
    g = _g(adjacency)
    gamma = -np.abs(2.0 * g + g.T)
    np.fill_diagonal(gamma, 2.0)
    return gamma


def p_matrix_check(m) -> bool:
    """True iff every principal minor of m has strictly positive determinant.

    Exhaustive enumeration; guarded at n <= 20.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n > P_MATRIX_MAX_N:
        raise TooLarge(f"principal-minor enumeration guarded at n <= {P_MATRIX_MAX_N}, got {n}")
    if np.any(np.diagonal(m) <= 0):
        return False
    for size in range(2, n + 1):
        for idx in combinations(range(n), size):
            sub = m[np.ix_(idx, idx)]
            if np.linalg.det(sub) <= 0:
                return False
    return True


def cert_gamma_p_matrix(adjacency) -> Certificate:
    """P-matrix test of the comparison matrix, with the minimum minor as margin."""
    gamma = build_gamma_matrix(adjacency)
    n = gamma.shape[0]
    if n > P_MATRIX_MAX_N:
        raise TooLarge(f"principal-minor enumeration guarded at n <= {P_MATRIX_MAX_N}, got {n}")
    smallest = float(np.min(np.diagonal(gamma)))
    for size in range(2, n + 1):
        for idx in combinations(range(n), size):
            smallest = min(smallest, float(np.linalg.det(gamma[np.ix_(idx, idx)])))
            if smallest <= 0:
                return _cert("gamma-p-matrix", smallest, min_principal_minor=smallest)
    return _cert("gamma-p-matrix", smallest, min_principal_minor=smallest)


def cert_gershgorin(adjacency) -> Certificate:
    """Eigenvalue localization bound: 2 - ||2G + G^T||_inf > 0."""
    g = _g(adjacency)
    norm = _rowsum_norm(2.0 * g + g.T)
    return _cert("gershgorin", 2.0 - norm, two_g_plus_gt_rowsum=norm)


def cert_continuity(adjacency) -> tuple[Certificate, Certificate]:
    """Continuity of the equilibrium in G: margins 1 - ||G||_2 and 1 - ||G||_inf."""
    g = _g(adjacency)
    sigma = _spectral_norm(g)
    row = _rowsum_norm(g)
    return (
        _cert("continuity-spectral", 1.0 - sigma, sigma_max=sigma),
        _cert("continuity-rowsum", 1.0 - row, rowsum_norm=row),
    )


def all_certificates(adjacency) -> tuple[Certificate, ...]:
    """The six certificates in a fixed order."""
    spectral, rowsum = cert_continuity(adjacency)
    return (
        cert_strong_monotone(adjacency),
        cert_block_p(adjacency),
        cert_gamma_p_matrix(adjacency),
        cert_gershgorin(adjacency),
        spectral,
        rowsum,
    )


def spectral_facts_selftest(a, tol: float = 1e-10) -> bool:
    """Check three eigenvalue facts used by the uniqueness argument on a.

    (i) a - lambda_min*I is positive semidefinite up to tol,
    (ii) |lambda_min| <= sigma_max + tol,
    (iii) shifting by alpha*I shifts lambda_min by alpha, for alpha in
    {-1, 0.5, 2}.  Raises NotSymmetric unless a is symmetric within 1e-12.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    if float(np.max(np.abs(a - a.T))) > 1e-12:
        raise NotSymmetric("matrix is not symmetric within 1e-12")
    n = a.shape[0]
    lam_min = float(np.min(np.linalg.eigvalsh(a)))
    sigma_max = _spectral_norm(a)
    shifted = a - lam_min * np.eye(n)
    if float(np.min(np.linalg.eigvalsh(shifted))) < -tol:
        return False
    if abs(lam_min) > sigma_max + tol:
        return False
    for alpha in (-1.0, 0.5, 2.0):
        lam = float(np.min(np.linalg.eigvalsh(alpha * np.eye(n) + a)))
        if abs(lam - (alpha + lam_min)) > tol:
            return False
    return True
