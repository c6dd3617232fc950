"""Strategies that pick one signed residue per row so the CRT sum lands in [-(e-2), e-2]."""

from __future__ import annotations

from ..domain import ResidueDomain, build_domain, canonical_b
from .lift import (
    ProbeRecord,
    certificate_for_d,
    exponent_of,
    lift_residues,
    min_cap_lift,
    probe_statement4,
    solve_residue_sieve,
)
from .partition import (
    PartitionAttempt,
    PartitionResult,
    doubled_subset_sum,
    knapsack_bounds,
    signed_sum,
    solve_sign_partition,
)
from .tree import solve_band_heuristic, solve_exhaustive, solve_forward_checking
from .types import (
    BAND,
    EXHAUSTIVE,
    FORWARD,
    PARTITION,
    SIEVE,
    STRATEGIES,
    Certificate,
    SearchConfig,
    SearchResult,
    SearchStats,
    SignedSelection,
)
from .verify import Verification, make_certificate, verify_certificate

_TREE = {
    EXHAUSTIVE: solve_exhaustive,
    FORWARD: solve_forward_checking,
    BAND: solve_band_heuristic,
    SIEVE: solve_residue_sieve,
}


def solve(domain: ResidueDomain | int, config: SearchConfig, b=None) -> tuple[SearchResult, PartitionResult | None]:
    """Run config.strategy.  The partition strategy uses `b` or the canonical residues."""
    if isinstance(domain, int):
        domain = build_domain(domain)
    if config.strategy != PARTITION:
        return _TREE[config.strategy](domain, config), None
    if b is None:
        b = canonical_b(domain.e, domain.basis)
    part = solve_sign_partition(domain.e, domain.basis, b)
    if part.found:
        cert = part.certificate
        return SearchResult(PARTITION, cert, cert.stats), part
    stats = SearchStats(nodes=2)
    return SearchResult(PARTITION, None, stats, "condition-failed"), part


__all__ = [
    "BAND",
    "EXHAUSTIVE",
    "FORWARD",
    "PARTITION",
    "SIEVE",
    "STRATEGIES",
    "Certificate",
    "PartitionAttempt",
    "PartitionResult",
    "ProbeRecord",
    "SearchConfig",
    "SearchResult",
    "SearchStats",
    "SignedSelection",
    "Verification",
    "certificate_for_d",
    "doubled_subset_sum",
    "exponent_of",
    "knapsack_bounds",
    "lift_residues",
    "make_certificate",
    "min_cap_lift",
    "probe_statement4",
    "signed_sum",
    "solve",
    "solve_band_heuristic",
    "solve_exhaustive",
    "solve_forward_checking",
    "solve_residue_sieve",
    "solve_sign_partition",
    "verify_certificate",
]
