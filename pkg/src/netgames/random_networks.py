"""Monte-Carlo study of coincidence feasibility on random networks.

Samples Erdos-Renyi adjacency matrices and measures how often they are
singular (a necessary condition for a nonzero coincident equilibrium) and how
often the coincidence actually holds.  Per-sample RNG streams are derived
from (seed, sample index), so parallel and serial runs agree.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .games import AdjacencyMatrix, NetworkGame
from .design import check_coincidence
from .errors import SingularSystem

RANK_TOL = 1e-10


@dataclass(frozen=True)
class WeightLaw:
    """Edge-weight distribution: unit, uniform(lo, hi), or gaussian(mu, sigma)."""

    kind: str = "unit"
    lo: float = 0.0
    hi: float = 1.0
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if self.kind not in ("unit", "uniform", "gaussian"):
            raise ValueError(f"unknown weight law {self.kind!r}")
        if self.kind == "uniform" and not self.lo < self.hi:
            raise ValueError("uniform law requires lo < hi")
        if self.kind == "gaussian" and self.sigma <= 0:
            raise ValueError("gaussian law requires sigma > 0")

    @staticmethod
    def parse(text: str) -> "WeightLaw":
        """Parse 'unit', 'uniform:lo,hi', or 'gaussian:mu,sigma'."""
        kind, _, params = text.partition(":")
        if kind == "unit":
            return WeightLaw()
        try:
            first, second = (float(p) for p in params.split(","))
        except ValueError as exc:
            raise ValueError(f"malformed weight law {text!r}") from exc
        if kind == "uniform":
            return WeightLaw(kind="uniform", lo=first, hi=second)
        if kind == "gaussian":
            return WeightLaw(kind="gaussian", mu=first, sigma=second)
        raise ValueError(f"unknown weight law {text!r}")

    def draw(self, rng: np.random.Generator, size) -> np.ndarray:
        if self.kind == "unit":
            return np.ones(size)
        if self.kind == "uniform":
            return rng.uniform(self.lo, self.hi, size)
        return rng.normal(self.mu, self.sigma, size)


@dataclass(frozen=True)
class ErConfig:
    """Erdos-Renyi sampling plan over n-player adjacency matrices."""

    n: int
    p: float
    samples: int
    seed: int
    weight_law: WeightLaw = WeightLaw()
    directed: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0.0 < self.p < 1.0:
            raise ValueError("p must lie strictly between 0 and 1")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")


def _sample_one(config: ErConfig, index: int) -> np.ndarray:
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=config.seed, spawn_key=(index,))
    )
    n = config.n
    g = np.zeros((n, n))
    if config.directed:
        present = rng.random((n, n)) < config.p
        weights = config.weight_law.draw(rng, (n, n))
        g = np.where(present, weights, 0.0)
        np.fill_diagonal(g, 0.0)
    else:
        iu = np.triu_indices(n, 1)
        present = rng.random(iu[0].size) < config.p
        weights = config.weight_law.draw(rng, iu[0].size)
        g[iu] = np.where(present, weights, 0.0)
        g = g + g.T
    return g


def sample_er(config: ErConfig) -> Iterator[AdjacencyMatrix]:
    """Stream of sampled adjacency matrices, deterministic given the seed."""
    for k in range(config.samples):
        yield AdjacencyMatrix(_sample_one(config, k))


@dataclass(frozen=True)
class SingularityStats:
    fraction_singular: float
    mean_min_sv: float


def singularity_stats(config: ErConfig, rank_tol: float = RANK_TOL) -> SingularityStats:
    """Fraction of samples with smallest singular value <= rank_tol * largest."""
    n_singular = 0
    min_svs = []
    for adjacency in sample_er(config):
        sv = np.linalg.svd(adjacency.g, compute_uv=False)
        min_svs.append(float(sv[-1]))
        if sv[-1] <= rank_tol * sv[0]:
            n_singular += 1
    return SingularityStats(
        fraction_singular=n_singular / config.samples,
        mean_min_sv=float(np.mean(min_svs)),
    )


@dataclass(frozen=True)
class ScanCounts:
    tested: int
    singular: int
    coincident: int


def coincidence_feasibility_scan(
    config: ErConfig, a, tol: float = 1e-8, rank_tol: float = RANK_TOL
) -> ScanCounts:
    """Count singular samples and samples whose NE coincides with the optimum.

    Samples where (I+G) is numerically singular cannot be checked and count
    as non-coincident.
    """
    a = np.asarray(a, dtype=float)
    n_singular = 0
    n_coincident = 0
    for adjacency in sample_er(config):
        sv = np.linalg.svd(adjacency.g, compute_uv=False)
        if sv[-1] <= rank_tol * sv[0]:
            n_singular += 1
        try:
            if check_coincidence(NetworkGame(adjacency, a), tol=tol).holds:
                n_coincident += 1
        except SingularSystem:
            pass
    return ScanCounts(tested=config.samples, singular=n_singular, coincident=n_coincident)


def write_csv(config: ErConfig, stats: SingularityStats, scan: ScanCounts, stream) -> None:
    """Emit `n,p,samples,fraction_singular,mean_min_sv,coincident` as one row."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("n", "p", "samples", "fraction_singular", "mean_min_sv", "coincident"))
    writer.writerow(
        [
            config.n,
            f"{config.p:.12g}",
            config.samples,
            f"{stats.fraction_singular:.12g}",
            f"{stats.mean_min_sv:.12g}",
            scan.coincident,
        ]
    )
