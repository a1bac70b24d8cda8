"""Rank-3 congruence subsheaves of O(d13) + O(d24) + O(d34) on P^1.

A bundle is cut out of the ambient sum by five divisibility conditions on a
triple of forms (a13, a24, a34), built from four fixed pairwise-coprime forms
a1..a4 and eight auxiliary divisors D1..D4, E1..E4:

    F13 <= div(a13),   F24 <= div(a24),   F34 <= div(a34),
    div(a1) + F14 <= div(a3*a34 - a2*a24),
    div(a2) + F23 <= div(a4*a34 + a1*a13),

where F_ij = lcm(D_i, D_j) + E_k + E_l for {i,j,k,l} = {1,2,3,4}.  Every
condition "Z <= div(w)" is linear in the coefficients of w, so twisted
section spaces are kernels of explicit matrices over F_q: the finite part of
Z contributes remainder-vanishing rows modulo its modulus polynomial, the
infinity part contributes vanishing of the top coefficients of w.

The degree has a closed form d - (d1+d2+d3+d4) - deg(B) with
B = E1+E2+E3+E4 + [D1;D2;D3] + [D1;D2;D4] + [(D1;D2);D3;D4], where d is the
pentagon sum d13+d3+d34+d4+d24.  The splitting type (e1,e2,e3) is read off
the h0 profile: h0(m) = sum_i max(0, e_i+m+1).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import NamedTuple

from .errors import BudgetExceeded, InconsistentH0, PreconditionViolated
from .gf import FieldCtx, field_of_order
from .p1 import (
    INF,
    BinaryForm,
    Divisor,
    divisor_of,
    factor_poly,
    form_from_index,
    forms_coprime,
    irreducibles,
    pdeg,
    pmod,
    pmul,
    pstrip,
)
from .picard import CurveClass, degree_data, in_eff_dual
from .errors import NotInEffDual

_ZERO4 = (Divisor(), Divisor(), Divisor(), Divisor())


# -- linear algebra over F_q --------------------------------------------------


def rref(ctx: FieldCtx, rows, ncols):
    """Reduced row echelon form; returns (reduced nonzero rows, pivot cols)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = ctx.inv(mat[r][c])
        if inv != 1:
            mat[r] = [ctx.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(ctx: FieldCtx, rows, ncols):
    """Basis of the kernel, one vector per free column."""
    red, pivots = rref(ctx, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = ctx.neg(row[f])
        basis.append(tuple(v))
    return basis


# -- divisibility conditions as matrix rows -----------------------------------


def _modulus_of(ctx: FieldCtx, z: Divisor):
    """(finite modulus polynomial, multiplicity at infinity)."""
    m = (1,)
    inf = 0
    for pt, k in z.items():
        if pt is INF:
            inf = k
        else:
            for _ in range(k):
                m = pmul(ctx, m, pt)
    return m, inf


class _Condition(NamedTuple):
    zf: tuple  # finite modulus polynomial
    zinf: int  # required order at infinity
    # terms: (block, full coefficient tuple of the multiplier, its degree, sign)
    terms: tuple


def _twist_rows(ctx: FieldCtx, conds, dpp, m: int):
    """Matrix of all conditions on coefficient vectors at twist m."""
    sizes = [max(0, dpp[b] + m + 1) for b in range(3)]
    offs = [0, sizes[0], sizes[0] + sizes[1]]
    ncols = sum(sizes)
    rows = []
    if ncols == 0:
        return sizes, offs, 0, rows
    for zf, zinf, terms in conds:
        dw = terms[0][2] + dpp[terms[0][0]] + m
        assert all(md + dpp[b] + m == dw for b, mc, md, sgn in terms)
        if dw < 0:
            continue
        degm = pdeg(zf)
        if degm > 0:
            cols = {}
            for b, mc, md, sgn in terms:
                if sizes[b] == 0:
                    continue
                res = []
                r = pmod(ctx, pstrip(mc), zf)
                for _ in range(sizes[b]):
                    res.append(r)
                    r = pmod(ctx, pmul(ctx, r, (0, 1)), zf)
                cols[(b, sgn)] = res
            for i in range(degm):
                row = [0] * ncols
                for (b, sgn), res in cols.items():
                    for j, r in enumerate(res):
                        v = r[i] if i < len(r) else 0
                        if v:
                            if sgn < 0:
                                v = ctx.neg(v)
                            row[offs[b] + j] = ctx.add(row[offs[b] + j], v)
                rows.append(row)
        for i in range(max(0, dw - zinf + 1), dw + 1):
            row = [0] * ncols
            for b, mc, md, sgn in terms:
                for j in range(sizes[b]):
                    k = i - j
                    if 0 <= k <= md and mc[k]:
                        v = mc[k] if sgn > 0 else ctx.neg(mc[k])
                        row[offs[b] + j] = ctx.add(row[offs[b] + j], v)
            rows.append(row)
    return sizes, offs, ncols, rows


def _plucker_conditions(a1, a2, a3, a4, f13=None, f24=None, f34=None,
                        f14=None, f23=None):
    """The five conditions; F divisors default to zero."""
    ctx = a1.ctx
    zero = Divisor()
    f13, f24, f34 = f13 or zero, f24 or zero, f34 or zero
    f14, f23 = f14 or zero, f23 or zero
    conds = []
    for block, f in ((0, f13), (1, f24), (2, f34)):
        if not f.is_zero():
            zf, zi = _modulus_of(ctx, f)
            conds.append(_Condition(zf, zi, ((block, (1,), 0, 1),)))
    # div(a1) + F14 <= div(a3*a34 - a2*a24)
    zf, zi = _modulus_of(ctx, f14)
    conds.append(_Condition(
        pmul(ctx, pstrip(a1.coeffs), zf),
        a1.inf_order() + zi,
        ((2, a3.coeffs, a3.d, 1), (1, a2.coeffs, a2.d, -1)),
    ))
    # div(a2) + F23 <= div(a4*a34 + a1*a13)
    zf, zi = _modulus_of(ctx, f23)
    conds.append(_Condition(
        pmul(ctx, pstrip(a2.coeffs), zf),
        a2.inf_order() + zi,
        ((2, a4.coeffs, a4.d, 1), (0, a1.coeffs, a1.d, 1)),
    ))
    return conds


def plucker_kernel(aprime, dpp):
    """Kernel data of the two divisibility conditions alone (all divisors 0).

    Fast path for the counting loop: skips bundle validation, assumes the
    caller already knows aprime is nonzero and pairwise coprime.  Returns
    (sizes, offsets, basis vectors).
    """
    a1, a2, a3, a4 = aprime
    ctx = a1.ctx
    conds = _plucker_conditions(a1, a2, a3, a4)
    sizes, offs, ncols, rows = _twist_rows(ctx, conds, dpp, 0)
    return sizes, offs, nullspace(ctx, rows, ncols)


# -- the bundle ----------------------------------------------------------------


class SplittingType(NamedTuple):
    e1: int
    e2: int
    e3: int


def _check_support_point(pt, ctx, label):
    if pt is INF:
        return
    if pt[-1] != 1:
        raise PreconditionViolated(f"{label}: support point {pt} is not monic")
    fac = factor_poly(ctx, pt)
    if fac != {pt: 1}:
        raise PreconditionViolated(f"{label}: support point {pt} is reducible")


class CongruenceBundle:
    """Immutable handle; twisted-section queries are pure linear algebra."""

    def __init__(self, aprime, dpp, D, E, divs, F, conds):
        self.aprime = aprime
        self.ctx = aprime[0].ctx
        self.dprime = tuple(f.d for f in aprime)
        self.dpp = tuple(dpp)
        self.D = D
        self.E = E
        self.adivs = divs
        self.F = F
        self._conds = conds
        self._h0_cache = {}

    def h0(self, m: int) -> int:
        if m not in self._h0_cache:
            sizes, offs, ncols, rows = _twist_rows(self.ctx, self._conds, self.dpp, m)
            self._h0_cache[m] = ncols - len(rref(self.ctx, rows, ncols)[0])
        return self._h0_cache[m]

    def sections_basis(self, m: int):
        """(block sizes, offsets, kernel basis) at twist m."""
        sizes, offs, ncols, rows = _twist_rows(self.ctx, self._conds, self.dpp, m)
        return sizes, offs, nullspace(self.ctx, rows, ncols)

    def sections(self, m: int, budget: int = 1 << 20):
        """All section triples at twist m (small spaces only)."""
        ctx = self.ctx
        sizes, offs, basis = self.sections_basis(m)
        if ctx.q ** len(basis) > budget:
            raise BudgetExceeded(f"q^{len(basis)} sections exceed budget {budget}")
        d13, d24, d34 = (d + m for d in self.dpp)
        vecs = [[0] * sum(sizes)]
        for bv in basis:
            vecs = [
                [ctx.add(x, ctx.mul(c, y)) for x, y in zip(v, bv)]
                for v in vecs
                for c in ctx.elements()
            ]
        out = []
        for v in vecs:
            parts = []
            for (sz, off, d) in zip(sizes, offs, (d13, d24, d34)):
                coeffs = tuple(v[off:off + sz]) + (0,) * (d + 1 - sz)
                parts.append(BinaryForm(ctx, d, coeffs) if d >= 0 else None)
            out.append(tuple(parts))
        return out

    def degree(self) -> int:
        d13, d24, d34 = self.dpp
        d1, d2, d3, d4 = self.dprime
        d = d13 + d3 + d34 + d4 + d24
        D1, D2, D3, D4 = self.D
        B = (
            self.E[0] + self.E[1] + self.E[2] + self.E[3]
            + D1.lcm(D2).lcm(D3)
            + D1.lcm(D2).lcm(D4)
            + D1.gcd(D2).lcm(D3).lcm(D4)
        )
        return d - (d1 + d2 + d3 + d4) - B.degree()

    def splitting_type(self) -> SplittingType:
        maxd = max(self.dpp)
        m0 = -maxd - 2
        if self.h0(m0) != 0:
            raise InconsistentH0(f"h0({m0}) = {self.h0(m0)} != 0")
        # all three jumps happen at m <= -e3 <= 2*maxd - degree
        mhi = max(m0 + 1, 2 * maxd - self.degree() + 2)
        es = []
        prev, prevdelta = 0, 0
        m = m0
        while m < mhi and len(es) < 3:
            m += 1
            cur = self.h0(m)
            delta = cur - prev
            if delta < prevdelta or delta > 3:
                raise InconsistentH0(f"h0 jump {delta} at m={m} after {prevdelta}")
            es.extend([-m] * (delta - prevdelta))
            prev, prevdelta = cur, delta
        if len(es) != 3:
            raise InconsistentH0(f"only {len(es)} slopes found by m={mhi}")
        st = SplittingType(*es)
        check = sum(max(0, e + m + 2) for e in es)
        if self.h0(m + 1) != check:
            raise InconsistentH0(f"h0({m + 1}) = {self.h0(m + 1)}, profile wants {check}")
        return st

    def h1(self, m: int = 0) -> int:
        return sum(max(0, -e - m - 1) for e in self.splitting_type())

    def __repr__(self):
        return (
            f"CongruenceBundle(q={self.ctx.q}, d'={self.dprime}, "
            f"d''={self.dpp}, deg={self.degree()})"
        )


def build_bundle(aprime, dpp, D=None, E=None) -> CongruenceBundle:
    aprime = tuple(aprime)
    assert len(aprime) == 4
    ctx = aprime[0].ctx
    dpp = tuple(dpp)
    D = tuple(D) if D is not None else _ZERO4
    E = tuple(E) if E is not None else _ZERO4

    for i, f in enumerate(aprime, 1):
        if f.is_zero():
            raise PreconditionViolated(f"a{i} is the zero form")
    for i in range(4):
        for j in range(i + 1, 4):
            if not forms_coprime(aprime[i], aprime[j]):
                raise PreconditionViolated(f"a{i + 1} and a{j + 1} share a zero")
    if any(x < 0 for x in dpp):
        raise PreconditionViolated(f"negative ambient degree in d''={dpp}")
    d1, d2, d3, d4 = (f.d for f in aprime)
    d13, d24, d34 = dpp
    if d13 - d34 != d4 - d1 or d24 - d34 != d3 - d2:
        raise PreconditionViolated(
            "degrees off the line pairing relations: "
            "need d13-d34 = d4-d1 and d24-d34 = d3-d2"
        )

    named = [(f"D{i + 1}", D[i]) for i in range(4)] + [
        (f"E{i + 1}", E[i]) for i in range(4)
    ]
    for label, dv in named:
        if not dv.is_squarefree():
            raise PreconditionViolated(f"{label} is not squarefree")
        for pt in dv.support():
            _check_support_point(pt, ctx, label)
    for i in range(8):
        for j in range(i + 1, 8):
            if not named[i][1].disjoint(named[j][1]):
                raise PreconditionViolated(
                    f"{named[i][0]} and {named[j][0]} share support"
                )

    divs = tuple(divisor_of(f) for f in aprime)
    for i in range(4):
        if not E[i].leq(divs[i]):
            raise PreconditionViolated(f"E{i + 1} exceeds div(a{i + 1})")
        for j in range(4):
            if i != j and not D[i].disjoint(divs[j]):
                raise PreconditionViolated(f"D{i + 1} meets div(a{j + 1})")

    def F_of(i, j):
        k, l = (m for m in (1, 2, 3, 4) if m not in (i, j))
        return D[i - 1].lcm(D[j - 1]) + E[k - 1] + E[l - 1]

    F = {(i, j): F_of(i, j) for i in (1, 2, 3) for j in range(i + 1, 5)}
    conds = _plucker_conditions(
        *aprime,
        f13=F[(1, 3)], f24=F[(2, 4)], f34=F[(3, 4)],
        f14=F[(1, 4)], f23=F[(2, 3)],
    )
    return CongruenceBundle(aprime, dpp, D, E, divs, F, conds)


# -- seeded sampling diagnostics ----------------------------------------------


def _squarefree_pool(ctx: FieldCtx):
    """All squarefree divisors of degree <= 2 (including zero)."""
    pts1 = [INF] + [f for f in irreducibles(ctx, 1)]
    pts2 = [f for f in irreducibles(ctx, 2) if pdeg(f) == 2]
    pool = [Divisor()]
    pool += [Divisor.point(p) for p in pts1]
    pool += [
        Divisor.point(pts1[i]) + Divisor.point(pts1[j])
        for i in range(len(pts1))
        for j in range(i + 1, len(pts1))
    ]
    pool += [Divisor.point(p) for p in pts2]
    return pool


def _small_subdivisors(dv: Divisor):
    """Squarefree subdivisors of degree <= 2 with points of degree <= 2."""
    from .p1 import point_degree

    pts = [p for p in dv.support() if point_degree(p) <= 2]
    out = [Divisor()]
    out += [Divisor.point(p) for p in pts]
    out += [
        Divisor.point(pts[i]) + Divisor.point(pts[j])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
        if point_degree(pts[i]) + point_degree(pts[j]) <= 2
    ]
    return out


def sample_bundles(q, alpha: CurveClass, samples: int, seed: int,
                   attempt_budget: int = 200_000):
    """Yield `samples` seeded random bundles with the degrees of `alpha`.

    Draws a' uniformly from nonzero pairwise-coprime tuples by rejection,
    D_i from squarefree divisors of degree <= 2, E_i from such subdivisors
    of div(a_i); precondition failures are redrawn.  Deterministic by seed.
    """
    if not in_eff_dual(alpha):
        raise NotInEffDual(f"{alpha} is not in the dual of the effective cone")
    ctx = field_of_order(q)
    dd = degree_data(alpha)
    dprime = tuple(dd[f"E{i}"] for i in (1, 2, 3, 4))
    dpp = (dd["L13"], dd["L24"], dd["L34"])
    pool = _squarefree_pool(ctx)
    attempts = 0
    for i in range(samples):
        rng = random.Random(f"{seed}:{i}")
        while True:
            attempts += 1
            if attempts > attempt_budget:
                raise BudgetExceeded(
                    f"{attempts} draws without {samples} valid samples"
                )
            forms = tuple(
                form_from_index(ctx, d, rng.randrange(1, ctx.q ** (d + 1)))
                for d in dprime
            )
            if not all(
                forms_coprime(forms[a], forms[b])
                for a in range(4)
                for b in range(a + 1, 4)
            ):
                continue
            # draw each divisor from its allowed set (never empty: 0 qualifies)
            adivs = [divisor_of(f) for f in forms]
            used = Divisor()
            Dv = []
            for k in range(4):
                others = Divisor()
                for j in range(4):
                    if j != k:
                        others = others.lcm(adivs[j])
                choices = [
                    dv for dv in pool
                    if dv.disjoint(others) and dv.disjoint(used)
                ]
                pick = rng.choice(choices)
                Dv.append(pick)
                used = used.lcm(pick)
            Ev = []
            for k in range(4):
                choices = [
                    dv for dv in _small_subdivisors(adivs[k])
                    if dv.disjoint(used)
                ]
                pick = rng.choice(choices)
                Ev.append(pick)
                used = used.lcm(pick)
            try:
                bundle = build_bundle(forms, dpp, tuple(Dv), tuple(Ev))
            except PreconditionViolated:
                continue
            break
        yield bundle


def hn_statistics(q, alpha: CurveClass, samples: int, seed: int,
                  attempt_budget: int = 200_000) -> dict:
    """Splitting-type statistics over `sample_bundles`, keyed for JSON."""
    report = {
        "q": q,
        "class": list(alpha),
        "samples": samples,
        "seed": seed,
        "h1_positive": 0,
        "h1_positive_fraction": "0",
        "excess_e1": {},
        "splitting": {},
        "degree": {},
    }
    if samples == 0:
        if not in_eff_dual(alpha):
            raise NotInEffDual(f"{alpha} is not in the dual of the effective cone")
        return report
    h1pos = 0
    excess, splits, degs = {}, {}, {}
    for bundle in sample_bundles(q, alpha, samples, seed, attempt_budget):
        st = bundle.splitting_type()
        deg = bundle.degree()
        if bundle.h1() > 0:
            h1pos += 1
        key = str(Fraction(3 * st.e1 - deg, 3))
        excess[key] = excess.get(key, 0) + 1
        skey = f"{st.e1},{st.e2},{st.e3}"
        splits[skey] = splits.get(skey, 0) + 1
        degs[str(deg)] = degs.get(str(deg), 0) + 1
    report["h1_positive"] = h1pos
    report["h1_positive_fraction"] = str(Fraction(h1pos, samples))
    report["excess_e1"] = dict(sorted(excess.items()))
    report["splitting"] = dict(sorted(splits.items()))
    report["degree"] = dict(sorted(degs.items()))
    return report
