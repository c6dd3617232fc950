from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..domain import BASIS_ORDER, ORDER_POLICIES

EXHAUSTIVE = "exhaustive"
FORWARD = "forward"
BAND = "band"
PARTITION = "partition"
SIEVE = "sieve"
STRATEGIES = (EXHAUSTIVE, FORWARD, BAND, PARTITION, SIEVE)


@dataclass(frozen=True)
class SearchConfig:
    strategy: str = EXHAUSTIVE
    ordering: str | None = None  # None: the strategy's own default
    seed: int = 0
    band_ratio: float = 0.98
    widen_factor: int = 2
    max_nodes: int = 10**7
    timeout: float | None = None
    prune: bool = True
    modular: bool = True
    order_depth: int = 10

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.ordering is not None and self.ordering not in ORDER_POLICIES:
            raise ValueError(f"unknown ordering {self.ordering!r}")
        if not 0 < self.band_ratio <= 1:
            raise ValueError("band_ratio must lie in (0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.max_nodes <= 0 or self.widen_factor <= 0 or self.order_depth <= 0:
            raise ValueError("budgets must be positive")
        if self.timeout is not None and self.timeout <= 0:
            raise ValueError("timeout must be positive")

    @property
    def ratio(self) -> Fraction:
        return Fraction(str(self.band_ratio))

    def ordering_or(self, default: str = BASIS_ORDER) -> str:
        return self.ordering or default


@dataclass
class SearchStats:
    nodes: int = 0
    backtracks: int = 0
    widenings: int = 0
    materialized: int = 0
    elapsed: float = 0.0

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "nodes": self.nodes,
            "backtracks": self.backtracks,
            "widenings": self.widenings,
            "materialized": self.materialized,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass(frozen=True)
class SignedSelection:
    """One signed residue per basis row, in basis order (sign folded into the value)."""

    residues: tuple[int, ...]

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(-1 if b < 0 else 1 for b in self.residues)

    @property
    def magnitudes(self) -> tuple[int, ...]:
        return tuple(abs(b) for b in self.residues)


@dataclass(frozen=True)
class Certificate:
    e: int
    k: int
    primes: tuple[int, ...]
    residues: tuple[int, ...]
    d: int
    q1: int
    q2: int
    strategy: str
    stats: SearchStats = field(default_factory=SearchStats, compare=False)

    @property
    def selection(self) -> SignedSelection:
        return SignedSelection(self.residues)

    @property
    def flagged_rows(self) -> tuple[int, ...]:
        """Rows whose residue lies outside the enumerated range |b| <= e - 2."""
        return tuple(i for i, b in enumerate(self.residues) if abs(b) > self.e - 2)

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "e": self.e,
            "k": self.k,
            "primes": list(self.primes),
            "residues": list(self.residues),
            "d": str(self.d),
            "q1": str(self.q1),
            "q2": str(self.q2),
            "strategy": self.strategy,
            "flagged_rows": list(self.flagged_rows),
            "stats": self.stats.as_dict(timing),
        }


@dataclass
class SearchResult:
    """Outcome of one strategy run; `certificate` is None when nothing was found."""

    strategy: str
    certificate: Certificate | None
    stats: SearchStats
    reason: str = "found"
    frontier: tuple[int, ...] = ()

    @property
    def found(self) -> bool:
        return self.certificate is not None
