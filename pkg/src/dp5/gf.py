"""Small finite fields F_q, q = p**e <= 2**16, with exact table-driven arithmetic.

Elements are plain ints in range(q), read as base-p digit vectors: the int
n = sum(d_i * p**i) stands for the residue sum(d_i * X**i) modulo a fixed
monic irreducible of degree e.  The modulus is the lexicographically smallest
monic irreducible, coefficients compared low-to-high, so every (p, e) names
one canonical field and results are reproducible across runs.

Multiplication goes through discrete log/exp tables of a fixed generator
(q-sized, cache-resident; this is why q is capped), addition is digitwise
mod p.  All operations are exact; there is no notion of approximate equality
anywhere in this module.
"""

from __future__ import annotations

from .errors import DivisionByZero, NotPrime, TooLarge

_Q_CAP = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial helpers over F_p (coefficient tuples, ascending, no top zeros)


def _pstrip(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _pmul(a, b, p):
    if not a or not b:
        return ()
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] + x * y) % p
    return _pstrip(r)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _pstrip(a[:dm])


def _irreducible(f, p) -> bool:
    """Trial division by all monic polys of degree <= deg(f)//2."""
    d = len(f) - 1
    if d == 1:
        return True
    if d < 1 or f[0] == 0:
        return False
    for deg in range(1, d // 2 + 1):
        for idx in range(p**deg):
            g = []
            n = idx
            for _ in range(deg):
                g.append(n % p)
                n //= p
            g.append(1)
            if not _pmod(f, tuple(g), p):
                return False
    return True


def _smallest_modulus(p: int, e: int):
    """Lex-smallest monic irreducible of degree e (coeffs low-to-high)."""
    if e == 1:
        return (0, 1)
    for idx in range(p**e):
        c = []
        n = idx
        for _ in range(e):
            c.append(n % p)
            n //= p
        f = tuple(c) + (1,)
        if f[0] != 0 and _irreducible(f, p):
            return f
    raise AssertionError("no irreducible found")  # unreachable for prime p


def field_of_order(q: int) -> "FieldCtx":
    """FieldCtx for any prime power q."""
    if q < 2:
        raise NotPrime(f"q = {q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise NotPrime(f"q = {q} is not a prime power")
    return FieldCtx(p, e)


class FieldCtx:
    """Arithmetic context for F_q.  Pure value object; no hidden state."""

    def __init__(self, p: int, e: int = 1):
        if not _is_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        if e < 1:
            raise TooLarge(f"extension degree must be >= 1, got {e}")
        q = p**e
        if q > _Q_CAP:
            raise TooLarge(f"q = {q} exceeds cap 2**16")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = _smallest_modulus(p, e)
        self._build_tables()

    # int <-> digit vector
    def _digits(self, a: int):
        d = []
        for _ in range(self.e):
            d.append(a % self.p)
            a //= self.p
        return d

    def _undigits(self, d) -> int:
        a = 0
        for c in reversed(list(d)):
            a = a * self.p + c
        return a

    def _raw_mul(self, a: int, b: int) -> int:
        prod = _pmul(tuple(self._digits(a)), tuple(self._digits(b)), self.p)
        return self._undigits(_pmod(prod, self.modulus, self.p) + ((0,) * self.e))

    def _build_tables(self):
        p, q = self.p, self.q
        # generator of the unit group, found by order checks via raw pow
        fac = prime_factors(q - 1) if q > 2 else []

        def raw_pow(a, n):
            r, b = 1, a
            while n:
                if n & 1:
                    r = self._raw_mul(r, b)
                b = self._raw_mul(b, b)
                n >>= 1
            return r

        g = None
        for cand in range(1, q):
            if raw_pow(cand, q - 1) == 1 and all(
                raw_pow(cand, (q - 1) // f) != 1 for f in fac
            ):
                g = cand
                break
        assert g is not None
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._raw_mul(exp[i - 1], g)
        lg = [0] * q
        for i, v in enumerate(exp):
            lg[v] = i
        self._exp, self._log, self.generator = exp, lg, g
        self._add_table = None
        if q <= 256 and self.e > 1:
            self._add_table = [
                bytes(self._add_slow(a, b) for b in range(q)) for a in range(q)
            ]

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        r, mul = 0, 1
        for _ in range(self.e):
            r += ((a + b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return r

    # -- public ops -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        r, mul = 0, 1
        for _ in range(self.e):
            r += ((-a) % p) * mul
            a //= p
            mul *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise DivisionByZero("0 to a negative power")
            return 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))
