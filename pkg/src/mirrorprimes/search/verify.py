from __future__ import annotations

from dataclasses import dataclass

from ..domain import is_admissible
from ..ntheory import PrimeBasis, build_basis, crt_sum, is_prime
from .types import Certificate, SearchStats


@dataclass(frozen=True)
class Verification:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def make_certificate(basis: PrimeBasis, residues, strategy: str, stats: SearchStats | None = None) -> Certificate:
    residues = tuple(residues)
    d = crt_sum(basis, residues)
    e = basis.e
    return Certificate(
        e=e,
        k=basis.k,
        primes=basis.primes,
        residues=residues,
        d=d,
        q1=e - d,
        q2=e + d,
        strategy=strategy,
        stats=stats if stats is not None else SearchStats(),
    )


def verify_certificate(e: int, cert: Certificate) -> Verification:
    """Re-derive everything a certificate claims from e alone.

    Failure names: basis, length, sum, window, congruence, admissible,
    pair, q1_prime, q2_prime.
    """
    failures = []
    basis = build_basis(e)
    if cert.e != e or (cert.k, tuple(cert.primes)) != basis.fingerprint:
        failures.append("basis")
    if len(cert.residues) != basis.k:
        failures.append("length")
        d = cert.d
    else:
        d = crt_sum(basis, cert.residues)
        if d != cert.d:
            failures.append("sum")
    if abs(d) > e - 2:
        failures.append("window")
    if len(cert.residues) == basis.k:
        if any((d - b) % p for b, p in zip(cert.residues, basis.primes)):
            failures.append("congruence")
        if not all(is_admissible(e, p, b) for b, p in zip(cert.residues, basis.primes)):
            failures.append("admissible")
    if cert.q1 != e - d or cert.q2 != e + d or cert.q1 + cert.q2 != 2 * e:
        failures.append("pair")
    if not is_prime(e - d):
        failures.append("q1_prime")
    if not is_prime(e + d):
        failures.append("q2_prime")
    return Verification(not failures, tuple(failures))
