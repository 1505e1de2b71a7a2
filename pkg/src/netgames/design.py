"""Coincidence checks and network design.

The design target is the pair of conditions ``(I+G)x = a`` and ``G^T x = 0``:
a network whose Nash equilibrium is simultaneously the social optimum.
``design_solve`` recovers free adjacency entries by multi-start damped Newton
on the stacked bilinear residual; ``symmetric_design`` uses the closed-form
symmetric construction (x* = a with Ga = 0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleDesign, NoSolutionFound, SingularSystem
from .games import TOL_NONNEG, ActionProfile, AdjacencyMatrix, NetworkGame, _as_vector
from .equilibrium import solve_ne_interior, solve_ne_pg, solve_social_interior

DESIGN_TOL = 1e-8
RANK_TOL = 1e-10
# Solutions closer than this (relative sup distance) are the same branch.
DISTINCT_TOL = 1e-4


@dataclass(frozen=True)
class DesignProblem:
    """Free/fixed split of off-diagonal adjacency entries.

    ``fixed`` holds (i, j, value) triples and ``free`` the (i, j) positions to
    be determined; indices are 1-based and off-diagonal, and the two sets must
    not overlap.
    """

    n: int
    a: np.ndarray
    fixed: tuple
    free: tuple

    def __post_init__(self):
        a = _as_vector(self.a, self.n, "a")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)
        fixed = tuple((int(i), int(j), float(v)) for i, j, v in self.fixed)
        free = tuple((int(i), int(j)) for i, j in self.free)
        seen = set()
        for i, j, v in fixed:
            self._check_pos(i, j)
            if not np.isfinite(v):
                raise ValueError(f"fixed entry ({i},{j}) must be finite")
            seen.add((i, j))
        for i, j in free:
            self._check_pos(i, j)
            if (i, j) in seen:
                raise ValueError(f"position ({i},{j}) is both fixed and free")
            if free.count((i, j)) > 1:
                raise ValueError(f"duplicate free position ({i},{j})")
        object.__setattr__(self, "fixed", fixed)
        object.__setattr__(self, "free", free)

    def _check_pos(self, i, j):
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"position ({i},{j}) out of range 1..{self.n}")
        if i == j:
            raise ValueError(f"diagonal position ({i},{j}) is always zero")

    def base_matrix(self) -> np.ndarray:
        g = np.zeros((self.n, self.n))
        for i, j, v in self.fixed:
            g[i - 1, j - 1] = v
        return g


@dataclass(frozen=True)
class DesignSolution:
    """A recovered (G, x*) pair satisfying the coincidence system."""

    adjacency: AdjacencyMatrix
    x_star: ActionProfile
    residual_ne: float
    residual_orth: float
    branch_id: int


@dataclass(frozen=True)
class DesignRun:
    """All accepted branches of a multi-start run plus search diagnostics."""

    solutions: tuple
    rejected_negative: int
    converged_starts: int
    best_residual: float


@dataclass(frozen=True)
class CoincidenceCheck:
    """Outcome of testing Nash/social-optimum coincidence on a given game."""

    holds: bool
    x: ActionProfile
    residual_orth: float
    social_gap: float  # sup distance to the interior social optimum (nan if singular)


@dataclass(frozen=True)
class DeterminantReport:
    det: float
    singular: bool
    rank: int


def _norm_inf(v) -> float:
    v = np.asarray(v)
    return float(np.max(np.abs(v))) if v.size else 0.0


def check_coincidence(game: NetworkGame, tol: float = DESIGN_TOL) -> CoincidenceCheck:
    """Test whether the interior Nash equilibrium is also the social optimum.

    Holds when ``||G^T x||_inf <= tol*(1+||a||_inf)`` and x is nonnegative.
    The sup distance to the interior social optimum is recorded whenever
    ``(I+G+G^T)`` is nonsingular.
    """
    x = solve_ne_interior(game).x.x
    g = game.adjacency.g
    residual_orth = _norm_inf(g.T @ x)
    holds = residual_orth <= tol * (1.0 + _norm_inf(game.a)) and bool(
        np.min(x) >= -TOL_NONNEG
    )
    social_gap = float("nan")
    try:
        y = solve_social_interior(game).x.x
        social_gap = _norm_inf(x - y)
    except SingularSystem:
        pass
    return CoincidenceCheck(
        holds=holds, x=ActionProfile(x), residual_orth=residual_orth, social_gap=social_gap
    )


def necessary_condition_det(
    adjacency: AdjacencyMatrix, rank_tol: float = RANK_TOL
) -> DeterminantReport:
    """Determinant, numerical rank, and singularity verdict for G.

    A singular G is necessary for a nonzero coincident equilibrium.
    """
    g = adjacency.g
    sv = np.linalg.svd(g, compute_uv=False)
    largest = float(sv[0])
    rank = int(np.sum(sv > rank_tol * max(largest, np.finfo(float).tiny)))
    return DeterminantReport(
        det=float(np.linalg.det(g)),
        singular=bool(sv[-1] <= rank_tol * largest),
        rank=rank,
    )


def potential_check(adjacency: AdjacencyMatrix, tol: float = 1e-12) -> bool:
    """True iff G is symmetric within tol, i.e. the game admits a potential."""
    g = adjacency.g
    return _norm_inf(np.sum(np.abs(g - g.T), axis=1)) <= tol


def symmetric_design(a, seed: int = 0, max_abs: float = 0.3) -> DesignSolution:
    """Random symmetric G with zero diagonal and Ga = 0, so x* = a exactly.

    The upper-triangle entries are sampled from the null space of the row-sum
    constraint map and rescaled to ``max_abs`` sup norm.  Needs n >= 3 in
    general: for smaller n (or n=3 with generic a) the null space is trivial
    and InfeasibleDesign is raised.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 1 or a.size < 2:
        raise InfeasibleDesign("need at least two players")
    if np.min(a) < 0:
        raise InfeasibleDesign("x* = a must be nonnegative")
    n = a.size
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = len(pairs)
    cons = np.zeros((n, m))
    for k, (i, j) in enumerate(pairs):
        cons[i, k] += a[j]
        cons[j, k] += a[i]
    _, sv, vt = np.linalg.svd(cons)
    scale = max(float(sv[0]), 1.0) if sv.size else 1.0
    rank = int(np.sum(sv > 1e-12 * scale))
    kernel = vt[rank:]
    if kernel.shape[0] == 0:
        raise InfeasibleDesign(
            f"no nonzero symmetric design exists for n={n} with this a"
        )
    rng = np.random.default_rng(seed)
    w = kernel.T @ rng.standard_normal(kernel.shape[0])
    top = _norm_inf(w)
    if top == 0.0:
        raise InfeasibleDesign("degenerate null-space sample")
    w *= max_abs / top
    g = np.zeros((n, n))
    for k, (i, j) in enumerate(pairs):
        g[i, j] = g[j, i] = w[k]
    residual = _norm_inf(g @ a)
    return DesignSolution(
        adjacency=AdjacencyMatrix(g),
        x_star=ActionProfile(a),
        residual_ne=residual,
        residual_orth=residual,
        branch_id=0,
    )


def four_player_symmetric_example(t: float = 0.1, u: float = 0.2) -> NetworkGame:
    """Deterministic 4-player symmetric design with a = 1 and Ga = 0.

    Pairs (1,2) and (3,4) carry weight t, (1,3) and (2,4) weight u, and
    (1,4) and (2,3) weight -(t+u), so every row sums to zero.
    """
    s = -(t + u)
    g = np.array(
        [
            [0.0, t, u, s],
            [t, 0.0, s, u],
            [u, s, 0.0, t],
            [s, u, t, 0.0],
        ]
    )
    return NetworkGame(adjacency=AdjacencyMatrix(g), a=np.ones(4))


def _newton_polish(residual_fn, jacobian_fn, u0, hard_tol, max_newton=80):
    """Damped Gauss-Newton; returns the final iterate or None on stall."""
    u = np.array(u0, dtype=float)
    r = residual_fn(u)
    norm = float(np.linalg.norm(r))
    for _ in range(max_newton):
        if _norm_inf(r) <= hard_tol:
            break
        jac = jacobian_fn(u)
        du, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        if not np.all(np.isfinite(du)):
            return None
        step = 1.0
        for _ in range(40):
            cand = u + step * du
            r_cand = residual_fn(cand)
            n_cand = float(np.linalg.norm(r_cand))
            if n_cand < norm:
                u, r, norm = cand, r_cand, n_cand
                break
            step *= 0.5
        else:
            return u  # stalled; caller decides on acceptance
    return u


def design_solve(
    problem: DesignProblem,
    starts: int = 64,
    tol: float = DESIGN_TOL,
    seed: int = 0,
) -> DesignRun:
    """Multi-start damped Newton on R(x, g_free) = [(I+G)x - a; G^T x].

    Starts sample x in [0, max(a)] and free entries in [-5, 5]; on total
    failure the whole sweep is retried with entries in [-50, 50].  Converged
    iterates with any x_i < -tol are excluded and counted in diagnostics.
    Distinct accepted branches (relative sup distance > 1e-4) are returned in
    canonical order; raises NoSolutionFound when none survive.
    """
    n = problem.n
    a = problem.a
    g0 = problem.base_matrix()
    free = [(i - 1, j - 1) for i, j in problem.free]
    m = len(free)
    eye = np.eye(n)
    rows = np.array([p for p, _ in free], dtype=int)
    cols = np.array([q for _, q in free], dtype=int)

    def build_g(gf):
        g = g0.copy()
        if m:
            g[rows, cols] = gf
        return g

    def residual(u):
        x, gf = u[:n], u[n:]
        g = build_g(gf)
        return np.concatenate([x + g @ x - a, g.T @ x])

    def jacobian(u):
        x, gf = u[:n], u[n:]
        g = build_g(gf)
        jac = np.zeros((2 * n, n + m))
        jac[:n, :n] = eye + g
        jac[n:, :n] = g.T
        for k, (p, q) in enumerate(free):
            jac[p, n + k] = x[q]
            jac[n + q, n + k] = x[p]
        return jac

    hard_tol = 1e-13 * (1.0 + _norm_inf(a))
    x_hi = float(np.max(a)) if float(np.max(a)) > 0 else 1.0

    def run_sweep(box):
        rng = np.random.default_rng(seed)
        accepted, rejected, converged = [], 0, 0
        best = float("inf")
        for _ in range(starts):
            u0 = np.concatenate(
                [rng.uniform(0.0, x_hi, n), rng.uniform(-box, box, m)]
            )
            u = _newton_polish(residual, jacobian, u0, hard_tol)
            if u is None:
                continue
            res = _norm_inf(residual(u))
            best = min(best, res)
            if res > tol:
                continue
            converged += 1
            if float(np.min(u[:n])) < -tol:
                rejected += 1
                continue
            accepted.append(u)
        return accepted, rejected, converged, best

    accepted, rejected, converged, best = run_sweep(5.0)
    if not accepted:
        accepted, rejected2, converged2, best2 = run_sweep(50.0)
        rejected += rejected2
        converged += converged2
        best = min(best, best2)
    if not accepted:
        raise NoSolutionFound(
            f"no admissible design found in {2 * starts} starts "
            f"(best residual {best:.3e}, {rejected} rejected for negativity)",
            best_residual=best,
            rejected_negative=rejected,
        )

    accepted.sort(key=lambda u: tuple(np.round(u, 12)))
    distinct = []
    for u in accepted:
        for v in distinct:
            gap = _norm_inf(u - v) / (1.0 + max(_norm_inf(u), _norm_inf(v)))
            if gap <= DISTINCT_TOL:
                break
        else:
            distinct.append(u)

    solutions = []
    for branch_id, u in enumerate(distinct):
        g = build_g(u[n:])
        x = u[:n]
        solutions.append(
            DesignSolution(
                adjacency=AdjacencyMatrix(g),
                x_star=ActionProfile(x),
                residual_ne=_norm_inf(x + g @ x - a),
                residual_orth=_norm_inf(g.T @ x),
                branch_id=branch_id,
            )
        )
    return DesignRun(
        solutions=tuple(solutions),
        rejected_negative=rejected,
        converged_starts=converged,
        best_residual=best,
    )


@dataclass(frozen=True)
class PgCoincidenceCheck:
    holds: bool
    x: ActionProfile
    residual: float


def pg_coincidence(game, tol: float = DESIGN_TOL) -> PgCoincidenceCheck:
    """Public-goods coincidence test: (V G^T) x = 0 at the affine NE.

    V = diag(1 - d); when every d_i != 1 this is equivalent to G^T x = 0.
    """
    if not game.gamma.is_affine:
        raise ValueError("pg_coincidence requires an affine gamma family")
    x = solve_ne_pg(game, tol=min(tol, 1e-10)).x.x
    v = np.diag(1.0 - game.gamma.d)
    residual = _norm_inf(v @ (game.adjacency.g.T @ x))
    return PgCoincidenceCheck(holds=residual <= tol, x=ActionProfile(x), residual=residual)
