"""Sign choice for a fixed set of non-negative residues.

With weights w_i = b_i * u_i and x_i = 1 meaning +b_i, the signed sum is
2 * sum(w_i x_i) - sum(w).  Keeping it inside [-(e-2), e-2] is a subset-sum
problem with an interval target.  Everything is done on doubled integers so
the half-sums stay exact when e is odd.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..domain import is_admissible
from ..ntheory import PrimeBasis
from .types import PARTITION, Certificate, SearchStats
from .verify import make_certificate

DESCENDING = "descending"
ASCENDING = "ascending"


@dataclass(frozen=True)
class PartitionAttempt:
    variant: str
    order: tuple[int, ...]
    h: int
    x: tuple[int, ...]
    d: int
    upper_ok: bool
    lower_ok: bool
    condition: bool
    margin: int

    @property
    def feasible(self) -> bool:
        return self.upper_ok and self.lower_ok

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "order": list(self.order),
            "h": self.h,
            "x": list(self.x),
            "d": str(self.d),
            "upper_ok": self.upper_ok,
            "lower_ok": self.lower_ok,
            "condition": self.condition,
            "margin": str(self.margin),
        }


@dataclass(frozen=True)
class PartitionResult:
    certificate: Certificate | None
    descending: PartitionAttempt
    ascending: PartitionAttempt | None

    @property
    def found(self) -> bool:
        return self.certificate is not None


def knapsack_bounds(e: int, w) -> tuple[int, int]:
    """Interval that 2 * sum(w_i x_i) must lie in for the signed sum to fit the window."""
    total = sum(w)
    return total - (e - 2), total + (e - 2)


def signed_sum(w, x) -> int:
    """sum(w_i x_i) + sum(-w_i y_i) with y_i = 1 - x_i."""
    return sum(wi * xi for wi, xi in zip(w, x)) + sum(-wi * (1 - xi) for wi, xi in zip(w, x))


def doubled_subset_sum(w, x) -> int:
    return 2 * sum(wi * xi for wi, xi in zip(w, x))


def _attempt(e: int, w: list[int], variant: str) -> PartitionAttempt:
    k = len(w)
    total = sum(w)
    if variant == DESCENDING:
        order = sorted(range(k), key=lambda i: -w[i])
        prefix, h = 0, 0
        while 2 * prefix < total:
            prefix += w[order[h]]
            h += 1
    else:
        order = sorted(range(k), key=lambda i: w[i])
        prefix, h = 0, 0
        while h < k and 2 * (prefix + w[order[h]]) < total:
            prefix += w[order[h]]
            h += 1
    chosen = set(order[:h])
    x = tuple(int(i in chosen) for i in range(k))
    d = 2 * prefix - total
    lo, hi = knapsack_bounds(e, w)
    upper_ok = 2 * prefix <= hi
    lower_ok = 2 * prefix >= lo
    # the constraint not guaranteed by the construction
    if variant == DESCENDING:
        margin = (e - 2) - d
    else:
        margin = (e - 2) + d
    return PartitionAttempt(variant, tuple(order), h, x, d, upper_ok, lower_ok, margin >= 0, margin)


def solve_sign_partition(e: int, basis: PrimeBasis, b) -> PartitionResult:
    """Sorted-prefix sign choice; the ascending dual runs only if descending fails."""
    b = [int(v) for v in b]
    if len(b) != basis.k:
        raise ValueError(f"expected {basis.k} residues, got {len(b)}")
    for v, p in zip(b, basis.primes):
        if v < 0:
            raise ValueError("partition residues must be non-negative")
        if not is_admissible(e, p, v):
            raise ValueError(f"residue {v} is inadmissible for p={p}")
    w = [v * u for v, u in zip(b, basis.weights_unit)]
    desc = _attempt(e, w, DESCENDING)
    attempts = [desc]
    asc = None
    if not desc.feasible:
        asc = _attempt(e, w, ASCENDING)
        attempts.append(asc)
    for att in attempts:
        if att.feasible:
            residues = [v if xi else -v for v, xi in zip(b, att.x)]
            stats = SearchStats(nodes=len(attempts))
            return PartitionResult(make_certificate(basis, residues, PARTITION, stats), desc, asc)
    return PartitionResult(None, desc, asc)
