"""Admissible residue rows for each basis prime.

Row i lists the residues b with p_i dividing neither e - b nor e + b, for
|b| <= e - 2, plus 0 when p_i does not divide e.  Order is fixed: 0 first,
then ascending |b| with +b ahead of -b.  Rows are periodic in |b| with period
p_i, so size, rank and the n-th member are all computed arithmetically and a
row only materializes the prefix a caller actually touches.
"""

from __future__ import annotations

import dataclasses
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ntheory import PrimeBasis, build_basis, prime_power_multiplicity

BASIS_ORDER = "basis-order"
DESCENDING_ROW_MEAN = "descending-row-mean"
ORDER_POLICIES = (BASIS_ORDER, DESCENDING_ROW_MEAN)


class ConstructionError(ValueError):
    """A residue produced by a closed-form rule failed the admissibility test."""


@dataclass(frozen=True)
class CandidateTerm:
    b: int
    w: int


def is_admissible(e: int, p: int, b: int) -> bool:
    return (e - b) % p != 0 and (e + b) % p != 0


def split_indexes(e: int, basis: PrimeBasis) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Row indexes whose prime divides e (I_S) and those whose prime does not (I_R)."""
    divides = tuple(i for i, p in enumerate(basis.primes) if e % p == 0)
    rest = tuple(i for i, p in enumerate(basis.primes) if e % p != 0)
    return divides, rest


def canonical_b(e: int, basis: PrimeBasis) -> list[int]:
    """Closed-form admissible residue per row.

    floor(e / p) * p when p does not divide e, otherwise
    floor(e / p**alpha) * p + 1 with alpha the multiplicity of p in e.
    Every value is re-checked since the rule is used, not trusted.
    """
    out = []
    for p in basis.primes:
        if e % p:
            b = (e // p) * p
        else:
            b = (e // p ** prime_power_multiplicity(e, p)) * p + 1
        if not is_admissible(e, p, b):
            raise ConstructionError(f"canonical residue {b} is inadmissible for p={p}, e={e}")
        out.append(b)
    return out


def weight_of(basis: PrimeBasis, i: int, b: int) -> int:
    return b * basis.weights_unit[i]


class Row:
    """Lazily materialized candidate row for one basis prime."""

    def __init__(self, e: int, p: int, u: int):
        self.e = e
        self.p = p
        self.u = u
        self.has_zero = e % p != 0
        bad = {e % p, (-e) % p}
        # admissible magnitudes inside one period, represented in 1..p
        self._period = [a for a in range(1, p + 1) if a % p not in bad]
        self.n_magnitudes = self.count_upto(e - 2)
        self.size = int(self.has_zero) + 2 * self.n_magnitudes
        self._values: list[int] = []

    def count_upto(self, n: int) -> int:
        """Number of admissible magnitudes j with 1 <= j <= n."""
        if n < 1:
            return 0
        q, r = divmod(n, self.p)
        return q * len(self._period) + bisect_right(self._period, r)

    def nth_magnitude(self, m: int) -> int:
        q, s = divmod(m - 1, len(self._period))
        return q * self.p + self._period[s]

    def value(self, idx: int) -> int:
        if not 0 <= idx < self.size:
            raise IndexError(idx)
        if self.has_zero:
            if idx == 0:
                return 0
            idx -= 1
        mag = self.nth_magnitude(idx // 2 + 1)
        return -mag if idx & 1 else mag

    def index_of(self, b: int) -> int | None:
        if b == 0:
            return 0 if self.has_zero else None
        mag = abs(b)
        if mag > self.e - 2 or not is_admissible(self.e, self.p, mag):
            return None
        return int(self.has_zero) + 2 * (self.count_upto(mag) - 1) + (b < 0)

    def first_index_at_least(self, mag: int) -> int:
        """Index of the first candidate with |b| >= mag (size if none)."""
        if mag <= 0:
            return 0
        return min(self.size, int(self.has_zero) + 2 * self.count_upto(mag - 1))

    def end_index_upto(self, mag: int) -> int:
        """One past the last candidate with |b| <= mag."""
        if mag < 0:
            return 0
        return min(self.size, int(self.has_zero) + 2 * self.count_upto(mag))

    def prefix(self, n: int) -> list[int]:
        """Materialized values list holding at least min(n, size) entries."""
        vals = self._values
        n = min(n, self.size)
        if len(vals) < n:
            vals.extend(self.value(i) for i in range(len(vals), n))
        return vals

    @property
    def materialized(self) -> int:
        return len(self._values)

    def terms(self, count: int) -> list[CandidateTerm]:
        return [CandidateTerm(b, b * self.u) for b in self.prefix(count)[:count]]


class FixedRow(Row):
    """Row with an explicit candidate list, kept in the canonical order."""

    def __init__(self, e: int, p: int, u: int, values: Sequence[int]):
        self.e = e
        self.p = p
        self.u = u
        vals = sorted(set(values), key=lambda b: (abs(b), b < 0))
        self.has_zero = bool(vals) and vals[0] == 0
        self.size = len(vals)
        self._values = vals
        self._mags = [abs(b) for b in vals]

    def value(self, idx: int) -> int:
        return self._values[idx]

    def index_of(self, b: int) -> int | None:
        try:
            return self._values.index(b)
        except ValueError:
            return None

    def first_index_at_least(self, mag: int) -> int:
        for i, m in enumerate(self._mags):
            if m >= mag:
                return i
        return self.size

    def end_index_upto(self, mag: int) -> int:
        return bisect_right(self._mags, mag)

    def prefix(self, n: int) -> list[int]:
        return self._values


def enumerate_row(e: int, basis: PrimeBasis, i: int, count: int) -> list[CandidateTerm]:
    """First `count` candidates of row i (the whole row if it is shorter)."""
    if not 0 <= i < basis.k:
        raise IndexError(f"row {i} outside 0..{basis.k - 1}")
    if count < 1:
        raise ValueError("count must be positive")
    return Row(e, basis.primes[i], basis.weights_unit[i]).terms(count)


@dataclass(frozen=True)
class ResidueDomain:
    basis: PrimeBasis
    rows: tuple[Row, ...]
    split: tuple[tuple[int, ...], tuple[int, ...]]
    row_order: tuple[int, ...]

    @property
    def e(self) -> int:
        return self.basis.e

    @property
    def k(self) -> int:
        return self.basis.k

    def ordered_rows(self) -> list[Row]:
        return [self.rows[i] for i in self.row_order]


def build_domain(e: int, basis: PrimeBasis | None = None) -> ResidueDomain:
    basis = basis if basis is not None else build_basis(e)
    rows = tuple(Row(e, p, u) for p, u in zip(basis.primes, basis.weights_unit))
    return ResidueDomain(basis, rows, split_indexes(e, basis), tuple(range(basis.k)))


def rank_rows_by_mean(weight_rows: Sequence[Sequence[int]]) -> list[int]:
    """Row indexes sorted by descending mean |w|; ties keep the original order."""
    means = [Fraction(sum(abs(w) for w in ws), len(ws)) if ws else Fraction(0) for ws in weight_rows]
    return sorted(range(len(means)), key=lambda i: -means[i])


def order_rows(domain: ResidueDomain, policy: str = BASIS_ORDER, depth: int = 10) -> ResidueDomain:
    """Copy of `domain` with row_order set by `policy`.

    The row mean is taken over the first `depth` candidates of each row, or
    over the whole materialized list for explicit rows.
    """
    if policy == BASIS_ORDER:
        order = tuple(range(domain.k))
    elif policy == DESCENDING_ROW_MEAN:
        weights = [[b * row.u for b in row.prefix(depth)[:depth]] for row in domain.rows]
        order = tuple(rank_rows_by_mean(weights))
    else:
        raise ValueError(f"unknown ordering policy {policy!r}")
    return dataclasses.replace(domain, row_order=order)
