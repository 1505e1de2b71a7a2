"""Individual-rationality reports.

Opting out costs zero, so participation is rational for a player when their
equilibrium cost is at most zero.  At an interior Nash equilibrium the cost
collapses to -0.5*x_i**2, which is verified as a sanity identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAnEquilibrium
from .games import NetworkGame, PublicGoodsGame, cost_lq, cost_pg, grad_F, grad_W
from .equilibrium import NE_KINDS, EquilibriumResult, _pg_ne_residual

IR_TOL = 1e-9


@dataclass(frozen=True)
class PlayerRationality:
    player: int  # 1-based
    cost_at_eq: float
    cost_opt_out: float
    rational: bool


@dataclass(frozen=True)
class IrReport:
    players: tuple

    @property
    def all_rational(self) -> bool:
        return all(p.rational for p in self.players)


def _residual_for(game, eq: EquilibriumResult) -> float:
    x = eq.x.x
    if eq.kind == "interior-ne":
        return float(np.max(np.abs(grad_F(game, x))))
    if eq.kind == "interior-social":
        return float(np.max(np.abs(grad_W(game, x))))
    if eq.kind in ("constrained-ne", "constrained-social"):
        f = grad_F(game, x) if eq.kind == "constrained-ne" else grad_W(game, x)
        return float(np.max(np.abs(x - np.maximum(0.0, x - f))))
    if eq.kind in ("pg-ne", "pg-social"):
        return _pg_ne_residual(game, x) if eq.kind == "pg-ne" else eq.stationarity_residual
    raise ValueError(f"unknown equilibrium kind {eq.kind!r}")


def ir_check(game, eq: EquilibriumResult, tol: float = 1e-8) -> IrReport:
    """Per-player participation check at a verified equilibrium.

    Re-validates the equilibrium residual (NotAnEquilibrium beyond ``tol``)
    and, for interior Nash kinds, the closed-form identity
    ``cost_i = -0.5*x_i**2`` to within 1e-9.
    """
    if isinstance(game, PublicGoodsGame) and eq.kind not in ("pg-ne", "pg-social"):
        raise ValueError(f"public-goods game cannot validate kind {eq.kind!r}")
    if isinstance(game, NetworkGame) and eq.kind.startswith("pg-"):
        raise ValueError(f"linear-quadratic game cannot validate kind {eq.kind!r}")
    residual = _residual_for(game, eq)
    if residual > tol:
        raise NotAnEquilibrium(
            f"stationarity residual {residual:.3e} exceeds tolerance {tol:g}"
        )
    x = eq.x.x
    cost_of = cost_pg if isinstance(game, PublicGoodsGame) else cost_lq
    check_identity = eq.kind in NE_KINDS and eq.interior
    players = []
    for i in range(1, game.n + 1):
        cost = cost_of(game, i, x)
        if check_identity and abs(cost + 0.5 * x[i - 1] ** 2) > IR_TOL:
            raise NotAnEquilibrium(
                f"interior identity violated for player {i}: "
                f"cost {cost:.12g} vs -0.5*x^2 {-0.5 * x[i - 1] ** 2:.12g}"
            )
        players.append(
            PlayerRationality(
                player=i,
                cost_at_eq=cost,
                cost_opt_out=0.0,
                rational=bool(cost <= IR_TOL),
            )
        )
    return IrReport(players=tuple(players))
