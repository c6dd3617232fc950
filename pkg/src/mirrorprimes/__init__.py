"""Mirror primes: write 2e = (e - d) + (e + d) with both parts prime by
choosing signed residues modulo the primes up to sqrt(2e) and recombining
them through the Chinese remainder theorem.
"""

from .domain import (
    BASIS_ORDER,
    DESCENDING_ROW_MEAN,
    ConstructionError,
    ResidueDomain,
    build_domain,
    canonical_b,
    is_admissible,
    order_rows,
)
from .ntheory import PrimeBasis, build_basis, crt_sum, is_prime, mod_inverse, reduce_symmetric
from .oracle import all_goldbach_pairs, brute_force_min_d
from .search import (
    Certificate,
    SearchConfig,
    SearchResult,
    probe_statement4,
    solve,
    solve_band_heuristic,
    solve_exhaustive,
    solve_forward_checking,
    solve_sign_partition,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BASIS_ORDER",
    "DESCENDING_ROW_MEAN",
    "Certificate",
    "ConstructionError",
    "PrimeBasis",
    "ResidueDomain",
    "SearchConfig",
    "SearchResult",
    "all_goldbach_pairs",
    "brute_force_min_d",
    "build_basis",
    "build_domain",
    "canonical_b",
    "crt_sum",
    "is_admissible",
    "is_prime",
    "mod_inverse",
    "order_rows",
    "probe_statement4",
    "reduce_symmetric",
    "solve",
    "solve_band_heuristic",
    "solve_exhaustive",
    "solve_forward_checking",
    "solve_sign_partition",
    "verify_certificate",
]
