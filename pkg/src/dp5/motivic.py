"""Truncated integer power series in u = L^{-1}.

Everything downstream needs only the point-counting shadow of divisor
classes: a series sum c_j u^j with big-integer coefficients, truncated at a
fixed order, where a degree-n closed point contributes u^n.  Under the
substitution u = 1/q every identity here specializes to the corresponding
identity of Euler products over F_q.

The two nonobvious computations:

* witt exponents: the unique integers e_k with prod_k (1-x^k)^e_k = F(x),
  found by equating logarithmic derivatives (Newton power sums followed by
  Moebius inversion over divisors).  For the degree-7 local factor F they
  grow like 4.8^k, which is why the Euler-product acceleration in the
  constants module needs q >= 5.

* the motivic constant: (1-u)^{-5} * prod_{k>=2} [(1-u^k)(1-u^{k-1})]^{e_k},
  each factor expanded by the generalized binomial theorem (the exponents
  e_k are far too large for repeated multiplication) and multiplied in as a
  sparse series.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import DegenerateK, NonUnit

# (1-x)^5 (1+5x+x^2) expanded; the linear term vanishes, so e_1 = 0
LOCAL_FACTOR_COEFFS = (1, 0, -14, 35, -35, 14, 0, -1)


def gen_binom(e: int, j: int) -> int:
    """binomial(e, j) for arbitrary integer e, j >= 0."""
    if j < 0:
        return 0
    if e >= 0:
        return comb(e, j) if j <= e else 0
    return (-1) ** j * comb(-e + j - 1, j)


class SeriesL:
    """Integer power series in u modulo u^trunc."""

    __slots__ = ("trunc", "coeffs")

    def __init__(self, trunc: int, coeffs=()):
        if trunc < 1:
            raise ValueError("truncation order must be >= 1")
        c = list(coeffs)[:trunc]
        c += [0] * (trunc - len(c))
        self.trunc = trunc
        self.coeffs = tuple(c)

    @classmethod
    def one(cls, trunc: int):
        return cls(trunc, (1,))

    @classmethod
    def monomial(cls, trunc: int, coeff: int, exp: int):
        c = [0] * trunc
        if 0 <= exp < trunc:
            c[exp] = coeff
        return cls(trunc, c)

    def _same(self, other):
        assert isinstance(other, SeriesL) and other.trunc == self.trunc
        return other

    def __add__(self, other):
        self._same(other)
        return SeriesL(self.trunc, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return SeriesL(self.trunc, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return SeriesL(self.trunc, (-a for a in self.coeffs))

    def __mul__(self, other):
        self._same(other)
        n = self.trunc
        a, b = self.coeffs, other.coeffs
        # iterate over the sparser operand's support
        if sum(1 for x in a if x) > sum(1 for x in b if x):
            a, b = b, a
        out = [0] * n
        for i, ca in enumerate(a):
            if ca:
                for j in range(n - i):
                    cb = b[j]
                    if cb:
                        out[i + j] += ca * cb
        return SeriesL(n, out)

    def invert(self):
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise NonUnit(f"constant term {c0} is not a unit over the integers")
        n = self.trunc
        out = [0] * n
        out[0] = c0
        for m in range(1, n):
            s = sum(self.coeffs[j] * out[m - j] for j in range(1, m + 1))
            out[m] = -c0 * s
        return SeriesL(n, out)

    def _binomial_shape(self):
        """(m, c) if the series is exactly 1 + c*u^m, else None."""
        if self.coeffs[0] != 1:
            return None
        nz = [(i, c) for i, c in enumerate(self.coeffs) if i and c]
        if len(nz) != 1:
            return None
        return nz[0]

    def pow(self, e: int):
        n = self.trunc
        if e == 0:
            return SeriesL.one(n)
        shape = self._binomial_shape()
        if shape is not None:
            m, c = shape
            out = [0] * n
            j = 0
            while m * j < n:
                out[m * j] = gen_binom(e, j) * c**j
                j += 1
            return SeriesL(n, out)
        if e < 0:
            return self.invert().pow(-e)
        if e > 10**6:
            raise ValueError("exponent too large for a non-binomial series")
        r = SeriesL.one(n)
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def substitute(self, k: int):
        """u -> u^k."""
        assert k >= 1
        out = [0] * self.trunc
        for i, c in enumerate(self.coeffs):
            if c and i * k < self.trunc:
                out[i * k] = c
        return SeriesL(self.trunc, out)

    def shift_L(self, j: int = 1):
        """Multiply by L^j = u^{-j}; only legal when no coefficient is lost.

        For j > 0 the result is only known mod u^(trunc-j), so the
        truncation order shrinks; zero-padding would claim unknown tails.
        """
        if j < 0:
            return SeriesL(self.trunc, (0,) * (-j) + self.coeffs)
        if j >= self.trunc:
            raise ValueError("shift consumes the whole truncation window")
        if any(self.coeffs[:j]):
            raise ValueError("multiplication by L leaves the power series ring")
        return SeriesL(self.trunc - j, self.coeffs[j:])

    def truncate(self, n: int):
        assert n <= self.trunc
        return SeriesL(n, self.coeffs[:n])

    def at(self, x) -> Fraction:
        """Exact specialization u = x."""
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, SeriesL)
            and self.trunc == other.trunc
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                u = "u" if i == 1 else f"u^{i}"
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{u}")
            if len(parts) > 8:
                parts.append("...")
                break
        body = " ".join(parts) if parts else "0"
        return f"SeriesL({body} + O(u^{self.trunc}))"


def kapranov_inverse_at(k: int, trunc: int) -> SeriesL:
    """(1-u^k)(1-u^{k-1}): the inverse Kapranov zeta of P^1 at T = L^{-k}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        raise DegenerateK("k = 1 makes the factor (1 - u^0) vanish")
    a = SeriesL.one(trunc) - SeriesL.monomial(trunc, 1, k)
    b = SeriesL.one(trunc) - SeriesL.monomial(trunc, 1, k - 1)
    return a * b


def mobius_motivic_p1():
    """Coefficients of (1-T)(1-LT) as polynomials in L, by degree in T.

    Degree d >= 3 coefficients vanish; each entry is a tuple of coefficients
    of L^0, L^1, ...
    """
    return ((1,), (-1, -1), (0, 1))


def divisor_class_p1(d: int):
    """[Div^d] of P^1 as an L-polynomial: 1 + L + ... + L^d."""
    assert d >= 0
    return (1,) * (d + 1)


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


def witt_exponents(fcoeffs, K: int):
    """Integers e_1..e_K with prod (1-x^k)^{e_k} = F(x) mod x^{K+1}.

    Returned as a list indexed by k (entry 0 unused).  Power sums p_m of the
    inverse roots of F obey Newton's identity
    p_m + f_1 p_{m-1} + ... + f_{m-1} p_1 + m f_m = 0, and matching log
    coefficients gives sum_{k|m} k e_k = p_m, inverted by Moebius.
    """
    assert fcoeffs[0] == 1
    f = list(fcoeffs)
    p = [0] * (K + 1)
    for m in range(1, K + 1):
        fm = f[m] if m < len(f) else 0
        s = m * fm
        for j in range(1, m):
            fj = f[j] if j < len(f) else 0
            if fj:
                s += fj * p[m - j]
        p[m] = -s
    e = [0] * (K + 1)
    for k in range(1, K + 1):
        s = sum(_mobius_int(k // d) * p[d] for d in range(1, k + 1) if k % d == 0)
        assert s % k == 0, f"non-integral exponent at k={k}"
        e[k] = s // k
    return e


def motivic_constant(trunc: int) -> SeriesL:
    """(1-u)^{-5} * prod_{k>=2} [(1-u^k)(1-u^{k-1})]^{e_k} mod u^trunc."""
    assert trunc >= 1
    e = witt_exponents(LOCAL_FACTOR_COEFFS, trunc)
    s = (SeriesL.one(trunc) - SeriesL.monomial(trunc, 1, 1)).pow(-5)
    for k in range(2, trunc + 1):
        if e[k] == 0:
            continue
        f1 = SeriesL.one(trunc) - SeriesL.monomial(trunc, 1, k - 1)
        s = s * f1.pow(e[k])
        if k < trunc:
            f2 = SeriesL.one(trunc) - SeriesL.monomial(trunc, 1, k)
            s = s * f2.pow(e[k])
    return s


# -- local Euler-factor identities --------------------------------------------


def _ipadd(a, b):
    n = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _ipmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _ipstrip(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _pattern_exponent(eps):
    e1, e2, e3, e4 = eps
    return max(e1, e2, e3) + max(e1, e2, e4) + max(min(e1, e2), e3, e4)


def local_identity_checks(seed: int = 0) -> dict:
    """Verify the Euler-factor identities exactly; returns a pass report."""
    report = {}

    # (i) full 16-pattern Moebius sum at a point off all a_i
    acc = ()
    for mask in range(16):
        eps = tuple((mask >> i) & 1 for i in range(4))
        sign = -1 if sum(eps) % 2 else 1
        term = [0] * (_pattern_exponent(eps) + 1)
        term[-1] = sign
        acc = _ipadd(acc, tuple(term))
    report["pattern16"] = _ipstrip(acc) == (1, 0, -4, 3)

    # (ii) at a point dividing a_j only D_j survives: two patterns
    ok = True
    for j in range(4):
        eps = tuple(1 if i == j else 0 for i in range(4))
        poly = [0] * (_pattern_exponent(eps) + 1)
        poly[-1] = -1
        poly[0] += 1
        ok = ok and _ipstrip(tuple(poly)) == (1, 0, -1)
    report["pattern2"] = ok

    # (iii) assembling the two kinds of points reproduces the global factor
    lhs_inner = _ipadd((1, 0, -4, 3), _ipmul((0, 4), (1, 0, -1)))
    report["pattern_assembly"] = _ipstrip(lhs_inner) == (1, 4, -4, -1)
    one_minus = (1, -1)
    p4 = _ipmul(_ipmul(one_minus, one_minus), _ipmul(one_minus, one_minus))
    lhs = _ipmul(p4, lhs_inner)
    rhs = _ipmul(_ipmul(p4, one_minus), (1, 5, 1))
    report["factor_identity"] = _ipstrip(lhs) == _ipstrip(rhs)

    # (iv) Moebius sums over subdivisors factor through the support
    import random

    from .gf import FieldCtx
    from .p1 import Divisor, irreducibles, point_degree

    rng = random.Random(seed)
    ok = True
    for q in (2, 3):
        ctx = FieldCtx(q)
        pts = [None] + irreducibles(ctx, 2)
        for _ in range(10):
            support = rng.sample(pts, rng.randint(0, 3))
            A = Divisor({pt: 1 for pt in support})
            lhs = ()
            for E in A.subdivisors():
                term = [0] * (E.degree() + 1)
                term[-1] = E.mobius()
                lhs = _ipadd(lhs, tuple(term))
            rhs = (1,)
            for pt in support:
                factor = [0] * (point_degree(pt) + 1)
                factor[0], factor[-1] = 1, -1
                rhs = _ipmul(rhs, tuple(factor))
            ok = ok and _ipstrip(lhs) == _ipstrip(rhs)
    report["mobius_factorization"] = ok

    report["all"] = all(report.values())
    return report
