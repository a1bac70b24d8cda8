"""Sections of O(d) on the projective line: polynomial helpers, divisors,
factorization, and the closed-point counts they must reproduce."""

import random

import pytest

from dp5.errors import BudgetExceeded, ZeroForm
from dp5.gf import field_of_order
from dp5.p1 import (
    INF,
    BinaryForm,
    Divisor,
    divisor_count,
    divisor_of,
    enumerate_sections,
    factor_poly,
    form_from_index,
    forms_coprime,
    irreducibles,
    pdeg,
    pdivmod,
    pgcd,
    pmonic,
    pmul,
    point_degree,
    points_by_degree,
    pstrip,
)


def _rand_poly(rng, q, dmax):
    # polys travel pstripped (no trailing zeros) throughout the package
    d = rng.randrange(dmax + 1)
    return pstrip(tuple(rng.randrange(q) for _ in range(d + 1)))


def test_pdivmod_round_trip():
    for q in (2, 3, 4, 5):
        ctx = field_of_order(q)
        rng = random.Random(q * 11)
        for _ in range(100):
            a = _rand_poly(rng, q, 7)
            b = _rand_poly(rng, q, 4)
            if not b:
                continue
            qt, r = pdivmod(ctx, a, b)
            prod = pmul(ctx, qt, b)
            total = list(prod) + [0] * (len(a) - len(prod))
            for i, c in enumerate(r):
                total[i] = ctx.add(total[i], c)
            assert pstrip(tuple(total)) == pstrip(a)
            assert pdeg(r) < pdeg(b)


def test_pgcd_divides_both():
    ctx = field_of_order(3)
    rng = random.Random(5)
    for _ in range(80):
        a = _rand_poly(rng, 3, 6)
        b = _rand_poly(rng, 3, 6)
        if not a or not b:
            continue
        g = pgcd(ctx, a, b)
        for x in (a, b):
            _, r = pdivmod(ctx, x, g)
            assert pdeg(r) < 0
        assert g == pmonic(ctx, g)


def test_irreducible_counts_match_necklace_formula():
    # number of monic irreducibles of degree n is (1/n) sum mu(k) q^(n/k)
    expected = {2: [2, 1, 2, 3, 6, 9], 3: [3, 3, 8, 18], 4: [4, 6, 20, 60]}
    for q, counts in expected.items():
        ctx = field_of_order(q)
        irr = irreducibles(ctx, len(counts))
        for n, want in enumerate(counts, start=1):
            assert sum(1 for p in irr if pdeg(p) == n) == want
            assert points_by_degree(q, n) == want + (1 if n == 1 else 0)


def test_factor_poly_reconstructs_input():
    for q in (2, 3, 4):
        ctx = field_of_order(q)
        rng = random.Random(q)
        irr = {tuple(p) for p in irreducibles(ctx, 6)}
        for _ in range(60):
            a = _rand_poly(rng, q, 6)
            if pdeg(a) < 1:
                continue
            fac = factor_poly(ctx, a)
            prod = (1,)
            for p, k in fac.items():
                assert tuple(p) in irr
                for _ in range(k):
                    prod = pmul(ctx, prod, p)
            assert prod == pmonic(ctx, a)


def test_binary_form_divisor_degree():
    # div(f) has degree d for every nonzero section of O(d)
    ctx = field_of_order(2)
    d = 3
    for i, f in enumerate(enumerate_sections(ctx, d)):
        if i == 0:
            assert f.is_zero()
            with pytest.raises(ZeroForm):
                f.inf_order()
            continue
        dv = divisor_of(f)
        assert dv.degree() == d
        assert dv.mult(INF) == f.inf_order()


def test_forms_coprime_matches_divisors():
    ctx = field_of_order(3)
    forms = [f for f in enumerate_sections(ctx, 2) if not f.is_zero()]
    rng = random.Random(1)
    for _ in range(150):
        f, g = rng.choice(forms), rng.choice(forms)
        want = divisor_of(f).gcd(divisor_of(g)).is_zero()
        assert forms_coprime(f, g) == want
        assert forms_coprime(g, f) == want


def test_divisor_algebra():
    ctx = field_of_order(2)
    x = (0, 1)
    x1 = (1, 1)
    a = Divisor({x: 2, INF: 1})
    b = Divisor({x: 1, x1: 3})
    assert (a + b).degree() == a.degree() + b.degree()
    assert a.gcd(b) == Divisor({x: 1})
    assert a.lcm(b) == Divisor({x: 2, x1: 3, INF: 1})
    assert a.gcd(b).leq(a) and a.leq(a.lcm(b))
    assert not a.disjoint(b) and a.disjoint(Divisor({x1: 1}))
    assert len(a.subdivisors()) == (2 + 1) * (1 + 1)
    assert Divisor({x: 1, INF: 1}).mobius() == 1
    assert Divisor({x: 1}).mobius() == -1
    assert a.mobius() == 0
    with pytest.raises(ValueError):
        Divisor({x: -1})


def test_point_degree_and_divisor_count():
    assert point_degree(INF) == 1
    assert point_degree((0, 1)) == 1
    assert point_degree((1, 1, 1)) == 2
    # effective divisors of degree d on P^1 number (q^(d+1)-1)/(q-1)
    for q in (2, 3):
        for d in range(5):
            assert divisor_count(q, d) == (q ** (d + 1) - 1) // (q - 1)


def test_enumerate_sections_budget():
    ctx = field_of_order(3)
    with pytest.raises(BudgetExceeded):
        list(enumerate_sections(ctx, 8, budget=100))
    assert len(list(enumerate_sections(ctx, 2))) == 27


def test_form_from_index_is_a_bijection():
    ctx = field_of_order(4)
    seen = {form_from_index(ctx, 1, i).coeffs for i in range(16)}
    assert len(seen) == 16
