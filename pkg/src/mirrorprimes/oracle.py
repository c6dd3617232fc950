"""Brute-force ground truth: scan d directly, no residues involved."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .ntheory import SIEVE_LIMIT, is_prime, primes_upto

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decomposition:
    e: int
    d: int
    q1: int
    q2: int


def brute_force_min_d(e: int) -> Decomposition | None:
    """Smallest d >= 0 with e - d and e + d both prime (so +d wins the tie)."""
    if e <= 3:
        raise ValueError("e must exceed 3")
    for d in range(0, e - 1):
        if is_prime(e - d) and is_prime(e + d):
            return Decomposition(e, d, e - d, e + d)
    log.error("no mirror primes for e=%d: Goldbach fails here", e)
    return None


def all_goldbach_pairs(two_e: int) -> list[tuple[int, int]]:
    if two_e % 2 or two_e < 8:
        raise ValueError("two_e must be even and at least 8")
    if two_e < SIEVE_LIMIT:
        return [(q, two_e - q) for q in primes_upto(two_e // 2) if is_prime(two_e - q)]
    return [(q, two_e - q) for q in range(2, two_e // 2 + 1) if is_prime(q) and is_prime(two_e - q)]
