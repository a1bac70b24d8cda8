"""Binary forms and divisors on the projective line over F_q.

A section of O(d) is a binary form f(s,t) = sum_j c_j s^j t^(d-j), stored as
the coefficient vector (c_0, ..., c_d).  Closed points of P^1 are the monic
irreducible polynomials in x = s/t (tuples of ascending coefficients,
including the leading 1) together with the point at infinity, encoded as
INF = None.  The divisor of a nonzero form is the factorization of its
dehomogenization f(x, 1) plus (d - deg f(x,1)) times infinity, so degrees are
additive and div(f*g) = div(f) + div(g) exactly.

Counting here is honest section counting: forms are never deduplicated by
scalar, because the torsor counts downstream need all (q-1)-multiples; the
final (q-1)^5 quotient is taken once, at the end of a count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, NegativePointCount, ZeroForm
from .gf import FieldCtx

INF = None  # the point at infinity; every other point is a monic poly tuple

DEFAULT_BUDGET = 1 << 30


# -- polynomials over F_q: ascending coefficient tuples, no trailing zeros --


def pstrip(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def pdeg(a) -> int:
    """Degree; the zero polynomial has degree -1."""
    return len(a) - 1


def padd(ctx: FieldCtx, a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, x in enumerate(b):
        r[i] = ctx.add(r[i], x)
    return pstrip(r)


def psub(ctx: FieldCtx, a, b):
    r = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        r[i] = ctx.sub(r[i], x)
    return pstrip(r)


def pmul(ctx: FieldCtx, a, b):
    if not a or not b:
        return ()
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    r[i + j] = ctx.add(r[i + j], ctx.mul(x, y))
    return pstrip(r)


def pscale(ctx: FieldCtx, a, c):
    if c == 0:
        return ()
    return tuple(ctx.mul(x, c) for x in a)


def pdivmod(ctx: FieldCtx, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lead = pdeg(b), b[-1]
    ilead = ctx.inv(lead)
    q = [0] * max(0, len(a) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            f = ctx.mul(c, ilead)
            q[i - db] = f
            for j in range(db + 1):
                r[i - db + j] = ctx.sub(r[i - db + j], ctx.mul(f, b[j]))
    return pstrip(q), pstrip(r)


def pmod(ctx: FieldCtx, a, b):
    return pdivmod(ctx, a, b)[1]


def pgcd(ctx: FieldCtx, a, b):
    """Monic gcd."""
    while b:
        a, b = b, pmod(ctx, a, b)
    if a and a[-1] != 1:
        a = pscale(ctx, a, ctx.inv(a[-1]))
    return a


def pmonic(ctx: FieldCtx, a):
    if not a or a[-1] == 1:
        return a
    return pscale(ctx, a, ctx.inv(a[-1]))


def ppow_x_mod(ctx: FieldCtx, j, m):
    """x^j mod m, for building congruence rows without refactoring."""
    r = (1,) if pdeg(m) > 0 else ()
    x = (0, 1)
    for _ in range(j):
        r = pmod(ctx, pmul(ctx, r, x), m)
    return r


# -- divisors ---------------------------------------------------------------


def point_degree(pt) -> int:
    return 1 if pt is INF else len(pt) - 1


def _point_key(pt):
    return (0,) if pt is INF else (1, len(pt)) + pt


class Divisor:
    """Effective divisor on P^1: multiset of closed points."""

    __slots__ = ("_m",)

    def __init__(self, mults=None):
        m = {}
        if mults:
            for pt, k in dict(mults).items():
                if k < 0:
                    raise ValueError("divisors here are effective")
                if k:
                    m[pt] = k
        self._m = m

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def point(cls, pt, mult: int = 1):
        return cls({pt: mult})

    def mult(self, pt) -> int:
        return self._m.get(pt, 0)

    def degree(self) -> int:
        return sum(point_degree(pt) * k for pt, k in self._m.items())

    def support(self):
        return sorted(self._m, key=_point_key)

    def items(self):
        return [(pt, self._m[pt]) for pt in self.support()]

    def __add__(self, other):
        m = dict(self._m)
        for pt, k in other._m.items():
            m[pt] = m.get(pt, 0) + k
        return Divisor(m)

    def gcd(self, other):
        return Divisor(
            {pt: min(k, other.mult(pt)) for pt, k in self._m.items() if other.mult(pt)}
        )

    def lcm(self, other):
        m = dict(self._m)
        for pt, k in other._m.items():
            m[pt] = max(m.get(pt, 0), k)
        return Divisor(m)

    def leq(self, other) -> bool:
        return all(k <= other.mult(pt) for pt, k in self._m.items())

    def disjoint(self, other) -> bool:
        return not any(other.mult(pt) for pt in self._m)

    def is_zero(self) -> bool:
        return not self._m

    def is_squarefree(self) -> bool:
        return all(k == 1 for k in self._m.values())

    def mobius(self) -> int:
        """(-1)^(number of points) on squarefree divisors, 0 otherwise."""
        if not self.is_squarefree():
            return 0
        return -1 if len(self._m) % 2 else 1

    def subdivisors(self):
        """All effective E <= self, in a deterministic order."""
        pts = self.support()

        def rec(i):
            if i == len(pts):
                yield Divisor()
                return
            for rest in rec(i + 1):
                for k in range(self._m[pts[i]] + 1):
                    if k:
                        yield Divisor({pts[i]: k}) + rest
                    else:
                        yield rest

        return list(rec(0))

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._m == other._m

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        if not self._m:
            return "Divisor(0)"
        parts = []
        for pt, k in self.items():
            name = "inf" if pt is INF else _poly_name(pt)
            parts.append(f"{k}*[{name}]" if k > 1 else f"[{name}]")
        return "Divisor(" + " + ".join(parts) + ")"


def _poly_name(p) -> str:
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            x = "x" if i == 1 else f"x^{i}"
            terms.append(x if c == 1 else f"{c}*{x}")
    return " + ".join(terms) if terms else "0"


def gcd_div(d1: Divisor, d2: Divisor) -> Divisor:
    return d1.gcd(d2)


def lcm_div(d1: Divisor, d2: Divisor) -> Divisor:
    return d1.lcm(d2)


def mobius(d: Divisor) -> int:
    return d.mobius()


# -- binary forms -------------------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form of fixed degree d; coeffs[j] multiplies s^j t^(d-j)."""

    ctx: FieldCtx
    d: int
    coeffs: tuple

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("negative degree")
        if len(self.coeffs) != self.d + 1:
            raise ValueError("coefficient vector must have length d+1")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def dehom(self):
        """f(x, 1) as a polynomial tuple; infinity order is d - deg."""
        return pstrip(self.coeffs)

    def inf_order(self) -> int:
        if self.is_zero():
            raise ZeroForm("zero form")
        return self.d - pdeg(self.dehom())

    def __mul__(self, other):
        assert self.ctx == other.ctx
        prod = pmul(self.ctx, self.coeffs, other.coeffs)
        d = self.d + other.d
        return BinaryForm(self.ctx, d, prod + (0,) * (d + 1 - len(prod)))

    def __add__(self, other):
        assert self.ctx == other.ctx and self.d == other.d
        return BinaryForm(
            self.ctx,
            self.d,
            tuple(self.ctx.add(a, b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other):
        assert self.ctx == other.ctx and self.d == other.d
        return BinaryForm(
            self.ctx,
            self.d,
            tuple(self.ctx.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __repr__(self):
        return f"BinaryForm(q={self.ctx.q}, d={self.d}, coeffs={self.coeffs})"


def form_from_index(ctx: FieldCtx, d: int, idx: int) -> BinaryForm:
    """Form number idx in the enumeration order (base-q digits = coeffs)."""
    c = []
    for _ in range(d + 1):
        c.append(idx % ctx.q)
        idx //= ctx.q
    return BinaryForm(ctx, d, tuple(c))


def enumerate_sections(ctx: FieldCtx, d: int, budget: int | None = DEFAULT_BUDGET):
    """All q^(d+1) sections of O(d), the zero section first."""
    total = ctx.q ** (d + 1)
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} sections of O({d}) exceed budget {budget}")
    for idx in range(total):
        yield form_from_index(ctx, d, idx)


# -- irreducibles and factorization ------------------------------------------


def irreducibles(ctx: FieldCtx, max_degree: int):
    """Monic irreducibles of degree <= max_degree, by degree then lex."""
    cache = getattr(ctx, "_irr_cache", None)
    if cache is None:
        cache = {"max": 0, "polys": []}
        ctx._irr_cache = cache
    q = ctx.q
    for deg in range(cache["max"] + 1, max_degree + 1):
        lower = [f for f in cache["polys"] if pdeg(f) <= deg // 2]
        for idx in range(q**deg):
            c = []
            n = idx
            for _ in range(deg):
                c.append(n % q)
                n //= q
            f = tuple(c) + (1,)
            if deg > 1 and f[0] == 0:
                continue
            if all(pmod(ctx, f, g) for g in lower):
                cache["polys"].append(f)
        cache["max"] = deg
    return [f for f in cache["polys"] if pdeg(f) <= max_degree]


def factor_poly(ctx: FieldCtx, p):
    """Factor a nonzero poly into monic irreducibles; returns {poly: mult}."""
    assert p, "cannot factor the zero polynomial"
    p = pmonic(ctx, p)
    out = {}
    d = pdeg(p)
    if d == 0:
        return out
    for f in irreducibles(ctx, d // 2):
        while True:
            q2, r = pdivmod(ctx, p, f)
            if r:
                break
            out[f] = out.get(f, 0) + 1
            p = q2
        if pdeg(p) == 0:
            return out
    out[p] = out.get(p, 0) + 1  # leftover is irreducible
    return out


def divisor_of(f: BinaryForm) -> Divisor:
    """Complete zero divisor of a nonzero form: finite part plus infinity."""
    if f.is_zero():
        raise ZeroForm("the zero form has no divisor")
    p = f.dehom()
    m = {pt: k for pt, k in factor_poly(f.ctx, p).items()}
    k = f.d - pdeg(p)
    if k:
        m[INF] = k
    return Divisor(m)


def forms_coprime(f: BinaryForm, g: BinaryForm) -> bool:
    """gcd(div f, div g) = 0, without factoring."""
    if f.is_zero() or g.is_zero():
        return False
    pf, pg = f.dehom(), g.dehom()
    if pdeg(pf) < f.d and pdeg(pg) < g.d:
        return False  # both vanish at infinity
    return pdeg(pgcd(f.ctx, pf, pg)) == 0


# -- point counts -------------------------------------------------------------


def _mobius_int(n: int) -> int:
    r, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            r = -r
        p += 1
    if m > 1:
        r = -r
    return r


def points_by_degree(q: int, n: int) -> int:
    """Number of closed points of degree n on P^1 over F_q."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n == 1:
        return q + 1
    s = sum(_mobius_int(n // d) * q**d for d in range(1, n + 1) if n % d == 0)
    assert s % n == 0
    a = s // n
    if a < 0:
        raise NegativePointCount(f"a_{n} = {a} < 0")
    return a


def divisor_count(q: int, d: int) -> int:
    """Number of effective divisors of degree d: 1 + q + ... + q^d."""
    return (q ** (d + 1) - 1) // (q - 1)
