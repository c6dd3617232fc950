"""Depth-first walks over the candidate rows.

All three strategies share one engine: a lexicographic walk of a box of row
indexes (last row varying fastest), carrying the partial sum down the
recursion so each step costs one add.  With pruning on, each level computes
the interval of b the remaining rows could still pull back into the window
and visits only those indexes; on the last level that interval usually holds
at most one candidate.  The modular prune adds a class test: the rows not yet
assigned contribute multiples of every assigned prime, so the partial sum
already fixes d modulo their product.  Once that product exceeds the window, d
itself is fixed, and whether the remaining rows can still reach it is the same
bounded knapsack the lifter solves; its reachable set is built once per d.
None of the prunes drops a feasible leaf, so the first solution found is the
same as without them.
"""

from __future__ import annotations

import random
import time

from ..domain import BASIS_ORDER, DESCENDING_ROW_MEAN, ResidueDomain, order_rows
from ..ntheory import reduce_symmetric
from .lift import knapsack_layers
from .types import BAND, EXHAUSTIVE, FORWARD, SearchConfig, SearchResult, SearchStats
from .verify import make_certificate

_CLOCK_EVERY = 4096
# skip the completion table when it would need more bits than this
_COMPLETION_BITS = 1 << 21


class _Stop(Exception):
    def __init__(self, reason: str):
        self.reason = reason


class _Walker:
    def __init__(self, domain: ResidueDomain, config: SearchConfig, stats: SearchStats):
        self.domain = domain
        self.rows = domain.ordered_rows()
        self.k = len(self.rows)
        self.window = domain.e - 2
        self.prune = config.prune
        self.max_nodes = config.max_nodes
        self.deadline = None if config.timeout is None else time.perf_counter() + config.timeout
        self.stats = stats
        self.path = [0] * self.k
        self.modular = config.prune and config.modular
        e = domain.e
        # modulus fixed by rows[:h], and the primes still unassigned at depth h
        self.assigned_mod = [1]
        for row in self.rows:
            self.assigned_mod.append(self.assigned_mod[-1] * row.p)
        self.pending = [[row.p for row in self.rows[h:]] for h in range(self.k + 1)]
        self.e = e
        self.P = domain.basis.P
        self.inverses = [domain.basis.inverses[i] for i in domain.row_order]
        self._fixed_d = None
        self._tables = None

    def run(self, lo, hi, old_hi=None):
        """First leaf of the box [lo, hi) not inside [0, old_hi), or None."""
        self.lo, self.hi = lo, hi
        self.old_hi = old_hi
        if any(a >= b for a, b in zip(lo, hi)):
            return None
        reach = [0] * (self.k + 1)
        self.caps = [0] * self.k
        for h in range(self.k - 1, -1, -1):
            row = self.rows[h]
            top = max(abs(row.value(lo[h])), abs(row.value(hi[h] - 1)))
            self.caps[h] = top
            reach[h] = reach[h + 1] + top * row.u
        self.reach = reach
        self._fixed_d = None
        return self._descend(0, 0, old_hi is not None)

    def _class_blocked(self, h: int, partial: int) -> bool:
        # Unassigned weights vanish modulo the assigned primes, so the final d
        # is congruent to partial modulo their product.
        window = self.window
        q = self.assigned_mod[h]
        first = (partial + window) % q - window
        if first > window:
            return True
        if first + q > window:
            return not self._completable(h, partial, first)
        if 2 * window > 16 * q:
            return False
        e = self.e
        pending = self.pending[h]
        for d in range(first, window + 1, q):
            if all((e - d) % p and (e + d) % p for p in pending):
                return False
        return True

    def _completion_tables(self, h0: int, d: int):
        """Per depth h >= h0: (reachable offsets, sum r*u, sum lo*P') for d, or None."""
        e = self.e
        if any((e - d) % p == 0 or (e + d) % p == 0 for p in self.pending[h0]):
            return [False] * (self.k + 1)
        coef, lo, hi, base = [], [], [], []
        for h in range(h0, self.k):
            row, cap = self.rows[h], self.caps[h]
            r = reduce_symmetric(d, row.p)
            coef.append(self.inverses[h])
            lo.append(-((cap + r) // row.p))
            hi.append((cap - r) // row.p)
            base.append(r * row.u)
        if any(a > b for a, b in zip(lo, hi)):
            return [False] * (self.k + 1)
        width = sum((b - a) * c for a, b, c in zip(lo, hi, coef))
        if width > _COMPLETION_BITS:
            return None
        tables = [None] * (self.k + 1)
        n = self.k - h0
        reach, base_sum, lo_sum = 1, 0, 0
        for j in range(n - 1, -1, -1):
            reach = knapsack_layers([coef[j]], [hi[j] - lo[j]], width, reach)[-1]
            base_sum += base[j]
            lo_sum += lo[j] * coef[j]
            tables[h0 + j] = (reach, base_sum, lo_sum)
        return tables

    def _completable(self, h: int, partial: int, d: int) -> bool:
        if h >= self.k - 1:
            return True
        memo = self._fixed_d
        if memo is None or memo[0] != d or memo[1] > h:
            self._tables = self._completion_tables(h, d)
            self._fixed_d = (d, h)
        tables = self._tables
        if tables is None:
            return True
        entry = tables[h]
        if entry is False:
            return False
        reach, base_sum, lo_sum = entry
        target, rem = divmod(d - partial - base_sum, self.P)
        if rem:
            return False
        need = target - lo_sum
        return need >= 0 and bool((reach >> need) & 1)

    def _descend(self, h: int, partial: int, inside_old: bool):
        if self.modular and h and self._class_blocked(h, partial):
            self.stats.backtracks += 1
            return None
        row = self.rows[h]
        u = row.u
        last = h == self.k - 1
        ilo, ihi = self.lo[h], self.hi[h]
        if last and inside_old:
            ilo = max(ilo, self.old_hi[h])
        window = self.window
        if self.prune:
            slack = window + self.reach[h + 1]
            bmin = -((slack + partial) // u)
            bmax = (slack - partial) // u
            if bmin > bmax:
                self.stats.backtracks += 1
                return None
            if bmin > 0:
                mlo, mhi = bmin, bmax
            elif bmax < 0:
                mlo, mhi = -bmax, -bmin
            else:
                mlo, mhi = 0, max(-bmin, bmax)
            ilo = max(ilo, row.first_index_at_least(mlo))
            ihi = min(ihi, row.end_index_upto(mhi))
        else:
            bmin, bmax = None, None
        if ilo >= ihi:
            self.stats.backtracks += 1
            return None

        stats = self.stats
        limit = self.max_nodes
        path = self.path
        values = row.prefix(min(ihi, ilo + 16))
        for idx in range(ilo, ihi):
            if idx >= len(values):
                values = row.prefix(min(ihi, 2 * idx + 16))
            b = values[idx]
            if bmin is not None and not bmin <= b <= bmax:
                continue
            stats.nodes += 1
            if stats.nodes > limit:
                stats.nodes = limit
                raise _Stop("budget")
            if self.deadline is not None and not stats.nodes % _CLOCK_EVERY:
                if time.perf_counter() > self.deadline:
                    raise _Stop("timeout")
            path[h] = idx
            total = partial + b * u
            if last:
                if -window <= total <= window:
                    return True
            elif self._descend(h + 1, total, inside_old and idx < self.old_hi[h]):
                return True
        self.stats.backtracks += 1
        return None

    def selection(self) -> list[int]:
        """Signed residues of the current path, in basis order."""
        out = [0] * self.k
        for h, basis_row in enumerate(self.domain.row_order):
            out[basis_row] = self.rows[h].value(self.path[h])
        return out


def _finish(walker: _Walker, strategy: str, start: float, found, reason: str = "exhausted") -> SearchResult:
    stats = walker.stats
    stats.elapsed = time.perf_counter() - start
    stats.materialized = sum(r.materialized for r in walker.rows)
    if found:
        cert = make_certificate(walker.domain.basis, walker.selection(), strategy, stats)
        return SearchResult(strategy, cert, stats)
    return SearchResult(strategy, None, stats, reason, tuple(walker.path))


def _prepare(domain: ResidueDomain, config: SearchConfig, default_order: str) -> ResidueDomain:
    return order_rows(domain, config.ordering_or(default_order), config.order_depth)


def solve_exhaustive(domain: ResidueDomain, config: SearchConfig | None = None) -> SearchResult:
    """First feasible selection in the fixed candidate order over full rows."""
    config = config or SearchConfig(strategy=EXHAUSTIVE)
    domain = _prepare(domain, config, BASIS_ORDER)
    walker = _Walker(domain, config, SearchStats())
    start = time.perf_counter()
    sizes = [r.size for r in walker.rows]
    try:
        found = walker.run([0] * walker.k, sizes)
    except _Stop as stop:
        return _finish(walker, EXHAUSTIVE, start, None, stop.reason)
    return _finish(walker, EXHAUSTIVE, start, found)


def solve_forward_checking(domain: ResidueDomain, config: SearchConfig | None = None) -> SearchResult:
    """Restarted walks over per-row depth limits that widen at random.

    Each round raises every depth by widen_factor * randint(1, k), clamped to
    the row size, then walks only the leaves the previous box did not cover.
    """
    config = config or SearchConfig(strategy=FORWARD)
    domain = _prepare(domain, config, DESCENDING_ROW_MEAN)
    stats = SearchStats()
    walker = _Walker(domain, config, stats)
    rng = random.Random(config.seed)
    start = time.perf_counter()
    k = walker.k
    sizes = [r.size for r in walker.rows]
    depth = [1] * k
    explored = [0] * k
    try:
        while True:
            depth = [min(dh + config.widen_factor * rng.randint(1, k), size) for dh, size in zip(depth, sizes)]
            stats.widenings += 1
            if walker.run([0] * k, depth, explored):
                return _finish(walker, FORWARD, start, True)
            if depth == sizes:
                return _finish(walker, FORWARD, start, None)
            explored = depth
    except _Stop as stop:
        return _finish(walker, FORWARD, start, None, stop.reason)


def solve_band_heuristic(domain: ResidueDomain, config: SearchConfig | None = None) -> SearchResult:
    """Anchor the heaviest row, search the other rows up to a magnitude band.

    For each anchor candidate of the first row (rows sorted by descending mean
    |w|), every other row h is searched over its first band_h + 2 candidates,
    where band_h is the first index with |w| >= band_ratio * |w_anchor|.
    """
    config = config or SearchConfig(strategy=BAND)
    domain = _prepare(domain, config, DESCENDING_ROW_MEAN)
    stats = SearchStats()
    walker = _Walker(domain, config, stats)
    start = time.perf_counter()
    rows = walker.rows
    ratio = config.ratio
    try:
        for anchor in range(rows[0].size):
            stats.widenings += 1
            anchor_w = abs(rows[0].value(anchor)) * rows[0].u
            lo = [anchor] + [0] * (walker.k - 1)
            hi = [anchor + 1]
            for row in rows[1:]:
                threshold = ratio * anchor_w / row.u
                mag = -(-threshold.numerator // threshold.denominator)
                band = min(row.first_index_at_least(mag), row.size - 1)
                hi.append(min(band + 2, row.size))
            if walker.run(lo, hi):
                return _finish(walker, BAND, start, True)
    except _Stop as stop:
        return _finish(walker, BAND, start, None, stop.reason)
    return _finish(walker, BAND, start, None)
