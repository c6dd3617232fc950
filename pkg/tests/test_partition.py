import random
from itertools import product

import pytest

from mirrorprimes.domain import canonical_b
from mirrorprimes.ntheory import build_basis
from mirrorprimes.search import (
    PartitionAttempt,
    doubled_subset_sum,
    knapsack_bounds,
    signed_sum,
    solve_sign_partition,
    verify_certificate,
)
from mirrorprimes.search.partition import ASCENDING, DESCENDING, _attempt


def test_worked_example_e68():
    basis = build_basis(68)
    res = solve_sign_partition(68, basis, (3, 0, 1, 3, 5))
    desc = res.descending
    assert [b * u for b, u in zip((3, 0, 1, 3, 5), basis.weights_unit)] == [3465, 0, 1386, 990, 1050]
    assert res.found and res.certificate.d == 39
    assert (res.certificate.q1, res.certificate.q2) == (29, 107)
    assert desc.variant == DESCENDING and desc.h == 1 and desc.condition
    assert res.ascending is None
    assert verify_certificate(68, res.certificate)


def test_sidebar_weight_vectors():
    # e=16, b=(1,3,2): w=(15,30,12), condition holds
    res = solve_sign_partition(16, build_basis(16), (1, 3, 2))
    assert res.descending.condition and res.found
    # e=68, b=(1,3,1,1,1): w=(1155,4620,1386,330,210), condition fails
    att = _attempt(68, [1155, 4620, 1386, 330, 210], DESCENDING)
    assert not att.condition and att.lower_ok


def test_canonical_b_e68_fails_both_variants():
    basis = build_basis(68)
    res = solve_sign_partition(68, basis, canonical_b(68, basis))
    assert not res.found
    assert not res.descending.condition and not res.ascending.condition
    assert res.descending.margin < 0 and res.ascending.margin < 0


def test_rejects_bad_residues():
    basis = build_basis(68)
    with pytest.raises(ValueError):
        solve_sign_partition(68, basis, (3, 0, 1, 3))
    with pytest.raises(ValueError):
        solve_sign_partition(68, basis, (-3, 0, 1, 3, 5))
    with pytest.raises(ValueError):
        solve_sign_partition(68, basis, (2, 0, 1, 3, 5))  # 68 - 2 is even


def test_knapsack_bounds_doubled_form():
    assert knapsack_bounds(16, [15, 30, 12]) == (43, 71)


def _vectors(n):
    rng = random.Random(12)
    for _ in range(n):
        e = rng.randint(8, 10**6)
        k = rng.randint(1, 12)
        scale = rng.choice([10, 10**3, 10**6, 10**12])
        yield e, [rng.randint(0, scale) for _ in range(k)]


def test_partition_guarantees():
    for e, w in _vectors(1000):
        lo, hi = knapsack_bounds(e, w)
        desc = _attempt(e, w, DESCENDING)
        s = doubled_subset_sum(w, desc.x)
        assert desc.lower_ok and s >= lo
        assert desc.upper_ok == desc.condition == (s <= hi)
        assert desc.d == signed_sum(w, desc.x)
        asc = _attempt(e, w, ASCENDING)
        s = doubled_subset_sum(w, asc.x)
        assert asc.upper_ok and s <= hi
        assert asc.lower_ok == asc.condition == (s >= lo)
        assert asc.d == signed_sum(w, asc.x)


def test_prefix_index_definition():
    for e, w in _vectors(1000):
        total = sum(w)
        desc = _attempt(e, w, DESCENDING)
        ws = [w[i] for i in desc.order]
        assert ws == sorted(w, reverse=True)
        h = desc.h
        assert 2 * sum(ws[:h]) >= total
        assert h == 0 or 2 * sum(ws[: h - 1]) < total
        asc = _attempt(e, w, ASCENDING)
        ws = [w[i] for i in asc.order]
        h = asc.h
        assert 2 * sum(ws[:h]) < total or total == 0
        assert h == len(w) or 2 * sum(ws[: h + 1]) >= total


def test_signed_and_knapsack_forms_agree():
    """x in {0,1}^k with y = 1 - x: window on the signed sum <=> bounds on the doubled sum."""
    rng = random.Random(99)
    for _ in range(1000):
        e = rng.randint(8, 10**4)
        k = rng.randint(1, 8)
        w = [rng.randint(0, 5 * e) for _ in range(k)]
        x = [rng.randint(0, 1) for _ in range(k)]
        lo, hi = knapsack_bounds(e, w)
        signed = signed_sum(w, x)
        doubled = doubled_subset_sum(w, x)
        assert signed == doubled - sum(w)
        assert (-(e - 2) <= signed <= e - 2) == (lo <= doubled <= hi)


def test_partition_certificates_verify():
    rng = random.Random(5)
    checked = 0
    for e in range(8, 600):
        basis = build_basis(e)
        b = []
        for p in basis.primes:
            choices = [v for v in range(0, 3 * p) if (e - v) % p and (e + v) % p]
            b.append(rng.choice(choices))
        res = solve_sign_partition(e, basis, b)
        if res.found:
            assert verify_certificate(e, res.certificate)
            checked += 1
    assert checked > 0


def test_attempt_serializes_big_values_as_strings():
    att = _attempt(68, [3465, 0, 1386, 990, 1050], DESCENDING)
    assert isinstance(att, PartitionAttempt)
    data = att.as_dict()
    assert data["d"] == "39" and data["margin"] == "27" and data["x"] == [1, 0, 0, 0, 0]


def test_exhaustive_sign_choice_agrees_on_tiny_vectors():
    # when either variant succeeds, a feasible sign vector must exist
    rng = random.Random(3)
    for _ in range(300):
        e = rng.randint(8, 40)
        w = [rng.randint(0, 40) for _ in range(rng.randint(1, 6))]
        lo, hi = knapsack_bounds(e, w)
        feasible = any(lo <= doubled_subset_sum(w, x) <= hi for x in product((0, 1), repeat=len(w)))
        if _attempt(e, w, DESCENDING).feasible or _attempt(e, w, ASCENDING).feasible:
            assert feasible
