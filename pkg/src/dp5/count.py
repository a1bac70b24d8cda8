"""Counting morphisms from the line to the split quintic del Pezzo surface.

A morphism of class alpha corresponds to a ten-tuple of nonzero binary forms
(a_1..a_4, a_12..a_34), deg a_J = alpha . [J], satisfying the five Pluecker
relations

    P1: a4*a14 - a3*a13 + a2*a12 = 0
    P2: a4*a24 - a3*a23 + a1*a12 = 0
    P3: a4*a34 - a2*a23 + a1*a13 = 0
    P4: a3*a34 - a2*a24 + a1*a14 = 0
    P5: a12*a34 - a13*a24 + a23*a14 = 0

together with coprimality for the thirty pairs of coordinates indexed by
disjoint pairs of lines.  The five-torus acts freely on solutions, so the
raw solution count m is divisible by (q-1)^5 and hom = m/(q-1)^5.

count_naive enumerates all ten forms with incremental pruning; it is the
oracle.  count_fast fixes the quadruple a' = (a1..a4), solves the two
divisibility conditions

    a1 | a3*a34 - a2*a24        a2 | a4*a34 + a1*a13

as linear algebra on the coefficients of (a13, a24, a34), and recovers the
remaining coordinates by exact division:

    a14 = (a2*a24 - a3*a34)/a1
    a23 = (a4*a34 + a1*a13)/a2
    a12 = (a3*a23 - a4*a24)/a1

P1 and P5 then hold identically.  Since scaling a' by (F_q^*)^4 permutes
solutions, only first-nonzero-coefficient-one representatives of a' are
enumerated and the outer factor (q-1)^4 is restored at the end.
"""

from __future__ import annotations

import os
from typing import NamedTuple, Optional

from fractions import Fraction

from .errors import BudgetExceeded, NonExactDivision, NotInEffDual
from .gf import FieldCtx, field_of_order
from .p1 import BinaryForm, form_from_index, padd, pdeg, pgcd, pmul, pstrip, psub
from .picard import (
    LINES,
    CurveClass,
    boundary_distance,
    chamber_normalize,
    degree_data,
    in_eff_dual,
)

DEFAULT_BUDGET = 1 << 30

# the thirty disjoint-line pairs, as index pairs into the tuple
# (a1, a2, a3, a4, a12, a13, a14, a23, a24, a34)
COORD_NAMES = ("E1", "E2", "E3", "E4", "L12", "L13", "L14", "L23", "L24", "L34")
_IDX = {name: i for i, name in enumerate(COORD_NAMES)}
DISJOINT_PAIRS = tuple(
    sorted(
        [(i, j) for i in range(4) for j in range(i + 1, 4)]
        + [
            (_IDX[f"E{i}"], _IDX[f"L{j}{k}"])
            for i in range(1, 5)
            for j in range(1, 5)
            for k in range(j + 1, 5)
            if i not in (j, k)
        ]
        + [
            (_IDX[f"L{a}{b}"], _IDX[f"L{c}{d}"])
            for a in range(1, 5)
            for b in range(a + 1, 5)
            for c in range(1, 5)
            for d in range(c + 1, 5)
            if (a, b) < (c, d) and len({a, b} & {c, d}) == 1
        ]
    )
)


class CountResult(NamedTuple):
    q: int
    alpha: CurveClass
    pairings: tuple
    degree: int
    m_count: int
    hom: int
    method: str
    work: int

    def ratio(self) -> Fraction:
        return Fraction(self.hom, self.q ** (self.degree + 2))


def _budget(budget: Optional[int]) -> int:
    if budget is not None:
        return int(budget)
    return int(os.environ.get("DP5_BUDGET", DEFAULT_BUDGET))


def _pairings_tuple(dd) -> tuple:
    return tuple(dd[name] for name in LINES)


# -- naive enumeration ---------------------------------------------------------

# for each position, the disjoint pairs completed at that position
_PAIRS_AT = tuple(
    tuple(p for p in DISJOINT_PAIRS if max(p) == pos) for pos in range(10)
)


def _forms_nonzero(ctx: FieldCtx, d: int):
    """All q^(d+1) - 1 nonzero forms of degree d, as check-ready triples."""
    out = []
    for idx in range(1, ctx.q ** (d + 1)):
        f = form_from_index(ctx, d, idx)
        dh = f.dehom()
        out.append((f, dh, pdeg(dh) < d))
    return out


def _coprime_triples(ctx, a, b) -> bool:
    # both vanishing at infinity, or a common finite root
    if a[2] and b[2]:
        return False
    return pdeg(pgcd(ctx, a[1], b[1])) == 0


def count_naive(q: int, alpha: CurveClass, budget: Optional[int] = None) -> CountResult:
    """Reference count by full ten-fold enumeration with pruning."""
    alpha = CurveClass(*alpha)
    if not in_eff_dual(alpha):
        raise NotInEffDual(f"{alpha} pairs negatively with some line")
    dd = degree_data(alpha)
    degs = [dd[name] for name in COORD_NAMES]
    budget = _budget(budget)
    est = 1
    for d in degs:
        est *= q ** (d + 1) - 1
        if est > budget:
            raise BudgetExceeded(f"naive enumeration needs {est} > budget {budget}")

    ctx = field_of_order(q)
    lists = [_forms_nonzero(ctx, d) for d in degs]
    # Pluecker checks become available once their last coordinate is placed
    plucker_at = {
        6: (((3, 6, 1), (2, 5, -1), (1, 4, 1)),),
        8: (((3, 8, 1), (2, 7, -1), (0, 4, 1)),),
        9: (
            ((3, 9, 1), (1, 7, -1), (0, 5, 1)),
            ((2, 9, 1), (1, 8, -1), (0, 6, 1)),
            ((4, 9, 1), (5, 8, -1), (7, 6, 1)),
        ),
    }

    chosen = [None] * 10
    m = 0
    work = 0

    def relation_holds(rel) -> bool:
        i0, j0, _ = rel[0]
        tot = [0] * (chosen[i0][0].d + chosen[j0][0].d + 1)
        for i, j, sign in rel:
            prod = pmul(ctx, chosen[i][0].coeffs, chosen[j][0].coeffs)
            for k, c in enumerate(prod):
                tot[k] = ctx.add(tot[k], c if sign > 0 else ctx.neg(c))
        return not any(tot)

    def place(pos: int):
        nonlocal m, work
        if pos == 10:
            m += 1
            return
        for cand in lists[pos]:
            work += 1
            chosen[pos] = cand
            if not all(
                _coprime_triples(ctx, chosen[i], cand) for i, _ in _PAIRS_AT[pos]
            ):
                continue
            if any(not relation_holds(rel) for rel in plucker_at.get(pos, ())):
                continue
            place(pos + 1)
        chosen[pos] = None

    place(0)
    assert m % (q - 1) ** 5 == 0, "torus action is not free?"
    return CountResult(
        q, alpha, _pairings_tuple(dd), dd.d, m, m // (q - 1) ** 5, "naive", work
    )


# -- fast enumeration ----------------------------------------------------------


def _monic_forms(ctx: FieldCtx, d: int):
    """Representatives with first nonzero coefficient 1, low index first."""
    q = ctx.q
    out = []
    for lead in range(d + 1):
        for idx in range(q ** (d - lead)):
            coeffs = [0] * lead + [1]
            rest = idx
            for _ in range(d - lead):
                coeffs.append(rest % q)
                rest //= q
            out.append(BinaryForm(ctx, d, tuple(coeffs)))
    return out


def _f2_mod(a: int, b: int) -> int:
    db = b.bit_length()
    da = a.bit_length()
    while da >= db:
        a ^= b << (da - db)
        da = a.bit_length()
    return a


def _form_divexact(ctx, num, den, dout: int):
    """num/den as a form coefficient tuple of degree dout (tuples, any q)."""
    from .p1 import pdivmod

    pn = pstrip(num)
    if not pn:
        return (0,) * (dout + 1)
    qt, rm = pdivmod(ctx, pn, pstrip(den))
    if rm or len(qt) > dout + 1:
        raise NonExactDivision("division of forms left a remainder")
    return tuple(qt) + (0,) * (dout + 1 - len(qt))


def _kernel_coords(aprime, dpp, derived_degs):
    """Per-basis-vector coordinate six-tuples for the fixed quadruple.

    Returns (dim, vectors) where vectors[i] is a six-tuple of coefficient
    tuples (a13, a24, a34, a14, a23, a12) for basis vector i.
    """
    from .bundles import plucker_kernel

    a1, a2, a3, a4 = aprime
    ctx = a1.ctx
    d13, d24, d34 = dpp
    d14, d23, d12 = derived_degs
    sizes, offs, basis = plucker_kernel(aprime, dpp)
    vectors = []
    for b in basis:
        f13 = tuple(b[offs[0] : offs[0] + sizes[0]])
        f24 = tuple(b[offs[1] : offs[1] + sizes[1]])
        f34 = tuple(b[offs[2] : offs[2] + sizes[2]])
        x14 = psub(
            ctx,
            pmul(ctx, a2.coeffs, f24),
            pmul(ctx, a3.coeffs, f34),
        )
        f14 = _form_divexact(ctx, x14, a1.coeffs, d14)
        x23 = padd(ctx, pmul(ctx, a4.coeffs, f34), pmul(ctx, a1.coeffs, f13))
        f23 = _form_divexact(ctx, x23, a2.coeffs, d23)
        x12 = psub(
            ctx,
            pmul(ctx, a3.coeffs, f23),
            pmul(ctx, a4.coeffs, f24),
        )
        f12 = _form_divexact(ctx, x12, a1.coeffs, d12)
        vectors.append((f13, f24, f34, f14, f23, f12))
    return len(basis), vectors


def _int_of(coeffs) -> int:
    v = 0
    for j, c in enumerate(coeffs):
        if c:
            v |= 1 << j
    return v


def _count_inner_f2(afixed, degs6, vectors):
    """Accepted kernel vectors over F_2, Gray-code enumeration."""
    d13, d24, d34, d14, d23, d12 = degs6
    a = [(_int_of(f.coeffs), f.d) for f in afixed]
    deltas = [tuple(_int_of(c) for c in vec) for vec in vectors]
    dim = len(deltas)
    # pair checks: (slot of varying form, fixed int, fixed degree) and
    # (slot, slot) among the varying six; slots ordered 13,24,34,14,23,12
    slot_deg = (d13, d24, d34, d14, d23, d12)
    slot_name = ("L13", "L24", "L34", "L14", "L23", "L12")
    fixed_pairs = []
    var_pairs = []
    for i, j in DISJOINT_PAIRS:
        if j < 4:
            continue
        ni, nj = COORD_NAMES[i], COORD_NAMES[j]
        if i < 4:
            fixed_pairs.append((slot_name.index(nj), a[i][0], a[i][1]))
        else:
            var_pairs.append((slot_name.index(ni), slot_name.index(nj)))
    accepted = 0
    x = [0] * 6
    f2_mod = _f2_mod
    for step in range(1, 1 << dim):
        flip = (step & -step).bit_length() - 1
        dx = deltas[flip]
        x0 = x[0] = x[0] ^ dx[0]
        x1 = x[1] = x[1] ^ dx[1]
        x2 = x[2] = x[2] ^ dx[2]
        x3 = x[3] = x[3] ^ dx[3]
        x4 = x[4] = x[4] ^ dx[4]
        x5 = x[5] = x[5] ^ dx[5]
        if not (x0 and x1 and x2 and x3 and x4 and x5):
            continue
        ok = True
        for slot, af, ad in fixed_pairs:
            g = x[slot]
            if af.bit_length() <= ad and g.bit_length() <= slot_deg[slot]:
                ok = False
                break
            u, v = af, g
            while v:
                u, v = v, f2_mod(u, v)
            if u != 1:
                ok = False
                break
        if not ok:
            continue
        for si, sj in var_pairs:
            u, v = x[si], x[sj]
            if u.bit_length() <= slot_deg[si] and v.bit_length() <= slot_deg[sj]:
                ok = False
                break
            while v:
                u, v = v, f2_mod(u, v)
            if u != 1:
                ok = False
                break
        if ok:
            accepted += 1
    return accepted, 1 << dim


def _count_inner_generic(ctx, afixed, degs6, vectors):
    """Accepted kernel vectors for any q; plain odometer enumeration."""
    from itertools import product

    q = ctx.q
    a = [(f, f.dehom(), pdeg(f.dehom()) < f.d) for f in afixed]
    dim = len(vectors)
    scaled = []
    for vec in vectors:
        per_digit = []
        for digit in range(q):
            per_digit.append(
                tuple(tuple(ctx.mul(digit, c) for c in coord) for coord in vec)
            )
        scaled.append(per_digit)
    slot_deg = degs6
    slot_name = ("L13", "L24", "L34", "L14", "L23", "L12")
    fixed_pairs = []
    var_pairs = []
    for i, j in DISJOINT_PAIRS:
        if j < 4:
            continue
        ni, nj = COORD_NAMES[i], COORD_NAMES[j]
        if i < 4:
            fixed_pairs.append((slot_name.index(nj), a[i]))
        else:
            var_pairs.append((slot_name.index(ni), slot_name.index(nj)))
    accepted = 0
    zeros = [tuple([0] * (d + 1)) for d in slot_deg]
    for digits in product(range(q), repeat=dim):
        if not any(digits):
            continue
        coords = list(zeros)
        for i, digit in enumerate(digits):
            if digit:
                sv = scaled[i][digit]
                for s in range(6):
                    coords[s] = tuple(
                        ctx.add(u, v) for u, v in zip(coords[s], sv[s])
                    )
        trip = []
        ok = True
        for s in range(6):
            dh = pstrip(coords[s])
            if not dh:
                ok = False
                break
            trip.append((coords[s], dh, pdeg(dh) < slot_deg[s]))
        if not ok:
            continue
        for slot, ai in fixed_pairs:
            t = trip[slot]
            if ai[2] and t[2]:
                ok = False
                break
            if pdeg(pgcd(ctx, ai[1], t[1])) != 0:
                ok = False
                break
        if not ok:
            continue
        for si, sj in var_pairs:
            ti, tj = trip[si], trip[sj]
            if ti[2] and tj[2]:
                ok = False
                break
            if pdeg(pgcd(ctx, ti[1], tj[1])) != 0:
                ok = False
                break
        if ok:
            accepted += 1
    return accepted, q**dim


def _fast_worker(args):
    """Count over the a1 slice {indices == offset mod stride}."""
    q, pairings, offset, stride, budget = args
    ctx = field_of_order(q)
    dd = dict(zip(LINES, pairings))
    d1, d2, d3, d4 = dd["E1"], dd["E2"], dd["E3"], dd["E4"]
    dpp = (dd["L13"], dd["L24"], dd["L34"])
    degs6 = (dd["L13"], dd["L24"], dd["L34"], dd["L14"], dd["L23"], dd["L12"])
    derived = (dd["L14"], dd["L23"], dd["L12"])
    lists = {d: _monic_forms(ctx, d) for d in {d1, d2, d3, d4}}

    def triple(f):
        dh = f.dehom()
        return (f, dh, pdeg(dh) < f.d)

    t1 = [triple(f) for f in lists[d1]]
    t2 = [triple(f) for f in lists[d2]]
    t3 = [triple(f) for f in lists[d3]]
    t4 = [triple(f) for f in lists[d4]]
    inner = _count_inner_f2 if q == 2 else None
    total = 0
    work = 0
    aprime_count = 0
    for i1 in range(offset, len(t1), stride):
        f1 = t1[i1]
        for f2 in t2:
            if not _coprime_triples(ctx, f1, f2):
                continue
            for f3 in t3:
                if not (
                    _coprime_triples(ctx, f1, f3) and _coprime_triples(ctx, f2, f3)
                ):
                    continue
                for f4 in t4:
                    if not (
                        _coprime_triples(ctx, f1, f4)
                        and _coprime_triples(ctx, f2, f4)
                        and _coprime_triples(ctx, f3, f4)
                    ):
                        continue
                    aprime_count += 1
                    afixed = (f1[0], f2[0], f3[0], f4[0])
                    dim, vectors = _kernel_coords(afixed, dpp, derived)
                    if inner is not None:
                        acc, vecs = inner(afixed, degs6, vectors)
                    else:
                        acc, vecs = _count_inner_generic(ctx, afixed, degs6, vectors)
                    total += acc
                    work += vecs
                    if work > budget:
                        raise BudgetExceeded(
                            f"kernel enumeration exceeded budget {budget}"
                        )
    return total, work, aprime_count


def count_fast(
    q: int,
    alpha: CurveClass,
    workers: int = 1,
    budget: Optional[int] = None,
) -> CountResult:
    """Count via the torsor parameterization with the quadruple fixed.

    The class is first moved to the fundamental chamber (the count is
    invariant under the 120 symmetries), so the outer quadruple runs over
    the smallest degrees available.
    """
    alpha = CurveClass(*alpha)
    if not in_eff_dual(alpha):
        raise NotInEffDual(f"{alpha} pairs negatively with some line")
    dd0 = degree_data(alpha)
    _, _, dd = chamber_normalize(alpha)
    pairings = _pairings_tuple(dd)
    budget = _budget(budget)
    est = 1
    for name in ("E1", "E2", "E3", "E4"):
        est *= (q ** (dd[name] + 1) - 1) // (q - 1)
    if est > budget:
        raise BudgetExceeded(f"quadruple enumeration needs {est} > budget {budget}")

    if workers <= 1:
        parts = [_fast_worker((q, pairings, 0, 1, budget))]
    else:
        from concurrent.futures import ProcessPoolExecutor

        jobs = [(q, pairings, w, workers, budget) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_fast_worker, jobs))
    total = sum(p[0] for p in parts)
    work = sum(p[1] for p in parts)
    m = total * (q - 1) ** 4
    assert m % (q - 1) ** 5 == 0, "torus action is not free?"
    return CountResult(
        q,
        alpha,
        _pairings_tuple(dd0),
        dd0.d,
        m,
        m // (q - 1) ** 5,
        "fast",
        work,
    )


# -- sweeps --------------------------------------------------------------------


def sweep(q: int, classes, workers: int = 1, budget: Optional[int] = None):
    """Count every class and compare against the leading constant.

    Returns one row per class: the class, its degree and boundary distance,
    the morphism count, the normalized ratio hom/q^(d+2), and the certified
    constant with the relative error of the ratio against it.
    """
    from .constants import leading_constant_direct

    c = leading_constant_direct(q)
    rows = []
    for alpha in classes:
        alpha = CurveClass(*alpha)
        res = count_fast(q, alpha, workers=workers, budget=budget)
        ratio = res.ratio()
        rel = abs(ratio - c.mid) / c.mid
        rows.append(
            {
                "class": ",".join(str(x) for x in alpha),
                "d": res.degree,
                "d1": boundary_distance(alpha),
                "hom_count": res.hom,
                "ratio": float(ratio),
                "c_mid": float(c.mid),
                "c_rad": float(c.rad),
                "rel_err": float(rel),
            }
        )
    return rows
