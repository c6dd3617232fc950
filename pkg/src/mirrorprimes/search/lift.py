"""Turning a target d back into signed residues, and what that buys us.

Given d, the residues d mod p_i fix the CRT class; the raw sum of any
representatives equals d + P * (sum t_i * P'_i) where t_i counts the p_i-steps
each representative was moved by.  Hitting d exactly is a bounded integer
equation in the t_i, solved here with a bitset reachability table.  Since
every selection whose sum lands in the window arises this way, scanning the
window for admissible d and lifting each one is an exact search over all
selections with |b_i| below a cap.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass

from ..domain import ResidueDomain, build_domain
from ..ntheory import PrimeBasis, build_basis, reduce_symmetric
from .types import SIEVE, Certificate, SearchConfig, SearchResult, SearchStats
from .verify import make_certificate

log = logging.getLogger(__name__)


def _class_bounds(basis: PrimeBasis, d: int, cap: int):
    reps = [reduce_symmetric(d, p) for p in basis.primes]
    lo = [-((cap + r) // p) for r, p in zip(reps, basis.primes)]
    hi = [(cap - r) // p for r, p in zip(reps, basis.primes)]
    return reps, lo, hi


def _split(spans, coef):
    """Binary splitting: each range 0..n becomes items of 1, 2, 4, ... copies."""
    items = []
    for i, (n, c) in enumerate(zip(spans, coef)):
        part = 1
        while n > 0:
            take = min(part, n)
            items.append((i, take, take * c))
            n -= take
            part <<= 1
    return items


def knapsack_layers(coef, spans, width: int, start: int = 1) -> list[int]:
    """Reachability bitsets (bit s set when offset sum s is reachable), one per item.

    Offsets t_i range over 0..spans[i]; sums above `width` are dropped.
    """
    mask = (1 << (width + 1)) - 1
    layers = [start & mask]
    reach = layers[0]
    for _, _, wt in _split(spans, coef):
        reach = (reach | (reach << wt)) & mask
        layers.append(reach)
    return layers


def bounded_solution(coef, lo, hi, target: int) -> list[int] | None:
    """Integers t_i in [lo_i, hi_i] with sum(t_i * coef_i) == target, coef_i > 0."""
    if any(a > b for a, b in zip(lo, hi)):
        return None
    need = target - sum(a * c for a, c in zip(lo, coef))
    spans = [b - a for a, b in zip(lo, hi)]
    if need < 0 or need > sum(n * c for n, c in zip(spans, coef)):
        return None
    layers = knapsack_layers(coef, spans, need)
    if not (layers[-1] >> need) & 1:
        return None
    items = _split(spans, coef)
    out = list(lo)
    left = need
    for j in range(len(items) - 1, -1, -1):
        if (layers[j] >> left) & 1:
            continue
        i, take, wt = items[j]
        out[i] += take
        left -= wt
    return out


def lift_residues(basis: PrimeBasis, d: int, cap: int) -> tuple[int, ...] | None:
    """Residues b_i = d (mod p_i) with |b_i| <= cap and raw CRT sum exactly d."""
    if cap < 0:
        return None
    reps, lo, hi = _class_bounds(basis, d, cap)
    base = sum(r * u for r, u in zip(reps, basis.weights_unit))
    target, rem = divmod(d - base, basis.P)
    assert rem == 0
    offsets = bounded_solution(basis.inverses, lo, hi, target)
    if offsets is None:
        return None
    return tuple(r + t * p for r, t, p in zip(reps, offsets, basis.primes))


def min_cap_lift(basis: PrimeBasis, d: int, upper: int) -> tuple[int, tuple[int, ...]] | None:
    """Lift of d minimizing max |b_i|, searching caps up to `upper`."""
    floor = max(abs(reduce_symmetric(d, p)) for p in basis.primes)
    if floor > upper:
        return None
    best = lift_residues(basis, d, upper)
    if best is None:
        return None
    lo, hi = floor, max(abs(b) for b in best)
    while lo < hi:
        mid = (lo + hi) // 2
        got = lift_residues(basis, d, mid)
        if got is None:
            lo = mid + 1
        else:
            best, hi = got, max(abs(b) for b in got)
    return hi, best


def residues_admissible(e: int, basis: PrimeBasis, d: int) -> bool:
    """True when no basis prime divides e - d or e + d."""
    return all((e - d) % p and (e + d) % p for p in basis.primes)


def window_order(e: int):
    """0, 1, -1, 2, -2, ..., e-2, -(e-2)."""
    yield 0
    for m in range(1, e - 1):
        yield m
        yield -m


def certificate_for_d(e: int, d: int, strategy: str = "given") -> Certificate:
    """Certificate whose residues are a minimal-cap lift of d.

    No admissibility or primality is assumed; verify_certificate judges it.
    """
    basis = build_basis(e)
    got = min_cap_lift(basis, d, max(e - 2, abs(d)) + basis.primes[-1])
    if got is None:
        raise ValueError(f"d={d} has no signed-residue representation for e={e}")
    return make_certificate(basis, got[1], strategy)


def solve_residue_sieve(domain: ResidueDomain, config: SearchConfig | None = None) -> SearchResult:
    """Scan d by increasing |d| for admissible residues, then lift."""
    config = config or SearchConfig(strategy=SIEVE)
    basis, e = domain.basis, domain.e
    stats = SearchStats()
    start = time.perf_counter()
    for d in window_order(e):
        stats.nodes += 1
        if stats.nodes > config.max_nodes:
            stats.elapsed = time.perf_counter() - start
            return SearchResult(SIEVE, None, stats, "budget", (d,))
        if not residues_admissible(e, basis, d):
            continue
        got = min_cap_lift(basis, d, e - 2)
        if got is None:
            log.warning("admissible d=%d for e=%d has no lift within |b| <= e-2", d, e)
            continue
        stats.elapsed = time.perf_counter() - start
        return SearchResult(SIEVE, make_certificate(basis, got[1], SIEVE, stats), stats)
    stats.elapsed = time.perf_counter() - start
    return SearchResult(SIEVE, None, stats, "exhausted")


@dataclass(frozen=True)
class ProbeRecord:
    e: int
    k: int
    solved: bool
    min_max_abs_b: int | None
    r_min: float | None
    d: int | None = None
    residues: tuple[int, ...] = ()
    complete: bool = True

    def row(self) -> dict:
        return {
            "e": self.e,
            "k": self.k,
            "solved": int(self.solved),
            "min_max_abs_b": "" if self.min_max_abs_b is None else self.min_max_abs_b,
            "r_min": "" if self.r_min is None else repr(self.r_min),
            "d": "" if self.d is None else self.d,
            "complete": int(self.complete),
        }


def exponent_of(bound: int, e: int, k: int) -> float:
    """r with bound == e ** (r / k).

    The all-zero selection (bound 0) gives -inf, the only r for which the
    identity still holds.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if bound == 0:
        return -math.inf
    return k * math.log(bound) / math.log(e)


def probe_statement4(e: int, budget: int | None = None) -> ProbeRecord:
    """Smallest achievable max |b_i| over all selections landing in the window.

    `budget` caps the number of lift evaluations; when it runs out the best
    value so far is reported with complete=False.
    """
    domain = build_domain(e)
    basis = domain.basis
    calls = 0
    best = None
    best_d, best_res = None, ()
    complete = True
    for d in window_order(e):
        if not residues_admissible(e, basis, d):
            continue
        upper = e - 2 if best is None else best - 1
        if upper < 0:
            break
        if max(abs(reduce_symmetric(d, p)) for p in basis.primes) > upper:
            continue
        if budget is not None and calls >= budget:
            complete = False
            break
        calls += 1
        if lift_residues(basis, d, upper) is None:
            continue
        got = min_cap_lift(basis, d, upper)
        calls += 1
        best, best_res, best_d = got[0], got[1], d
    if best is None:
        return ProbeRecord(e, basis.k, False, None, None, complete=complete)
    return ProbeRecord(e, basis.k, True, best, exponent_of(best, e, basis.k), best_d, best_res, complete)
