"""Prime tables, primality, modular inverses and the CRT weight machinery.

Everything here is a pure function of its arguments.  The only module state
is a byte sieve that grows on demand and is replaced wholesale, never mutated
in place, so concurrent readers are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, prod

MAX_E = 2**31

# Below this bound primality is a table lookup.
SIEVE_LIMIT = 1 << 21

# (bound, bases): the strong probable-prime test with these bases has no
# pseudoprimes below bound.
_MR_BASES = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3_317_044_064_679_887_385_961_981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class NotInvertibleError(ValueError):
    """Raised when a modular inverse does not exist."""


def _sieve(n: int) -> bytearray:
    flags = bytearray([1]) * (n + 1)
    flags[0] = 0
    if n >= 1:
        flags[1] = 0
    for p in range(2, isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return flags


_table = _sieve(1 << 12)


def _lookup_table(n: int) -> bytearray:
    global _table
    table = _table
    if n >= len(table):
        table = _sieve(min(max(n, 2 * len(table)), SIEVE_LIMIT))
        _table = table
    return table


def primes_upto(n: int) -> list[int]:
    """Ascending list of the primes in [2, n]."""
    if n < 2:
        return []
    flags = _lookup_table(n) if n < SIEVE_LIMIT else _sieve(n)
    return [i for i in range(2, n + 1) if flags[i]]


def strong_probable_prime(n: int, bases) -> bool:
    """Miller-Rabin strong probable-prime test of odd n > 2 against `bases`."""
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def miller_rabin(n: int) -> bool:
    """Primality by trial division over a few small primes, then Miller-Rabin.

    Deterministic for n < 3.3e24, far beyond the 2**32 needed for e <= 2**31.
    Larger inputs reuse the widest base set and are only probable primes.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 53 * 53:
        return True
    for bound, bases in _MR_BASES:
        if n < bound:
            break
    return strong_probable_prime(n, bases)


def is_prime(n: int) -> bool:
    if n < SIEVE_LIMIT:
        if n < 2:
            return False
        return bool(_lookup_table(n)[n])
    return miller_rabin(n)


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m, in [1, m-1]."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotInvertibleError(f"{a} is not invertible modulo {m}") from None


def prime_power_multiplicity(e: int, p: int) -> int:
    """Largest alpha with p**alpha dividing e."""
    if e <= 0:
        raise ValueError("e must be positive")
    alpha = 0
    while e % p == 0:
        e //= p
        alpha += 1
    return alpha


def reduce_symmetric(x: int, m: int) -> int:
    """Representative of x modulo m in the half-open range (-m/2, m/2]."""
    if m < 1:
        raise ValueError("modulus must be positive")
    r = x % m
    return r - m if 2 * r > m else r


@dataclass(frozen=True)
class PrimeBasis:
    """The primes up to sqrt(2e) together with their CRT cofactors.

    `weights_unit[i]` is P_i * P'_i, which is 1 modulo primes[i] and 0 modulo
    every other basis prime, so sum(b_i * weights_unit[i]) solves the system
    d = b_i (mod p_i).
    """

    e: int
    primes: tuple[int, ...]
    P: int
    cofactors: tuple[int, ...]
    inverses: tuple[int, ...]
    weights_unit: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.primes)

    @property
    def fingerprint(self) -> tuple[int, tuple[int, ...]]:
        return self.k, self.primes


def build_basis(e: int, max_e: int = MAX_E) -> PrimeBasis:
    if e <= 7:
        raise ValueError(f"e must exceed 7, got {e}")
    if e > max_e:
        raise ValueError(f"e={e} exceeds the supported bound {max_e}")
    primes = tuple(primes_upto(isqrt(2 * e)))
    P = prod(primes)
    cofactors = tuple(P // p for p in primes)
    inverses = tuple(mod_inverse(c % p, p) for c, p in zip(cofactors, primes))
    units = tuple(c * inv for c, inv in zip(cofactors, inverses))
    return PrimeBasis(e, primes, P, cofactors, inverses, units)


def crt_sum(basis: PrimeBasis, selection) -> int:
    """Raw (unreduced) CRT combination of one signed residue per basis row."""
    selection = tuple(selection)
    if len(selection) != basis.k:
        raise ValueError(f"expected {basis.k} residues, got {len(selection)}")
    return sum(b * u for b, u in zip(selection, basis.weights_unit))
