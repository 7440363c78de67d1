"""Exact scalar arithmetic for the three supported coefficient fields.

Rationals are plain ``int``/``fractions.Fraction`` values (the stdlib keeps
them reduced, so equality and hashing are canonical for free).  Cyclotomic
numbers are coefficient vectors in the power basis 1, z, ..., z^(d-1) of
Q(zeta_N), reduced modulo the N-th cyclotomic polynomial.  Prime-field
elements are residues mod p.

Every element type supports +, -, *, ==, hash and truth-testing (zero is
falsy); division always goes through the owning field's ``div``/``inv`` so
that ``int / int`` can never silently produce a float.  Mixing scalars from
different fields raises FieldMismatch; plain Python ints coerce into any
field.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, FieldLacksRoot, FieldMismatch

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# integer polynomial helpers (ascending coefficient lists)
# ---------------------------------------------------------------------------

def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_int(num, den):
    # exact division of integer polynomials with monic-up-to-sign divisor
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        f = c // lead
        q[i - dd] = f
        if f:
            for j, dj in enumerate(den):
                num[i - dd + j] -= f * dj
    return q, num[:dd]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Ascending coefficients of the n-th cyclotomic polynomial.

    Computed by exact division of x^n - 1 by the product of the d-th
    cyclotomic polynomials over the proper divisors d of n.
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul_int(den, list(cyclotomic_polynomial(d)))
    q, r = _poly_divmod_int(num, den)
    assert not any(r), "cyclotomic division left a remainder"
    return tuple(q)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any modulus used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factorize(n: int):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# rational field
# ---------------------------------------------------------------------------

class RationalField:
    """The rational numbers; elements are ints or reduced Fractions."""

    descriptor = "q"
    zero = 0
    one = 1

    def from_int(self, k: int):
        return k

    def coerce(self, a):
        if isinstance(a, (int, Fraction)):
            return a
        raise FieldMismatch(f"not a rational scalar: {a!r}")

    def div(self, a, b):
        if not b:
            raise DivisionByZero("rational division by zero")
        r = Fraction(a) / Fraction(b)
        return int(r) if r.denominator == 1 else r

    def inv(self, a):
        return self.div(1, a)

    def sort_key(self, a):
        return (a.numerator, a.denominator)

    def to_str(self, a) -> str:
        return str(a)

    def roots_of_unity(self, d: int):
        return [1] if d % 2 else [1, -1]

    def primitive_root_of_unity(self, n: int):
        if n == 1:
            return 1
        if n == 2:
            return -1
        raise FieldLacksRoot(f"Q has no primitive root of unity of order {n}")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "RationalField()"


# ---------------------------------------------------------------------------
# cyclotomic fields Q(zeta_N)
# ---------------------------------------------------------------------------

class CyclotomicNumber:
    """Element of Q(zeta_N) in the reduced power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "CyclotomicField", coeffs):
        self.field = field
        self.coeffs = coeffs  # tuple[Fraction], length = field.degree

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, CyclotomicNumber):
            if other.field.order != self.field.order:
                raise FieldMismatch(
                    f"cyclotomic orders differ: {self.field.order} vs {other.field.order}")
            return other
        raise FieldMismatch(f"cannot mix cyclotomic scalar with {other!r}")

    def __add__(self, other):
        other = self._check(other)
        return CyclotomicNumber(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return CyclotomicNumber(
            self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._check(other).__sub__(self)

    def __neg__(self):
        return CyclotomicNumber(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        return CyclotomicNumber(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.field.div(self, self._check(other))

    def __rtruediv__(self, other):
        return self.field.div(self._check(other), self)

    def __pow__(self, k: int):
        if k < 0:
            return self.field.inv(self) ** (-k)
        acc = self.field.one
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        try:
            other = self._check(other)
        except FieldMismatch:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CyclotomicNumber({self.field.order}, {list(self.coeffs)})"


class CyclotomicField:
    """Q(zeta_N) as Q[x] modulo the N-th cyclotomic polynomial."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be a positive integer")
        self.order = order
        self.poly = tuple(Fraction(c) for c in cyclotomic_polynomial(order))
        self.degree = len(self.poly) - 1
        self.descriptor = f"cyclotomic:{order}"
        # reductions of x^k for k = degree .. 2*degree-2
        self._red = []
        if self.degree >= 1:
            cur = [-c for c in self.poly[:-1]]  # x^degree (poly is monic)
            self._red.append(tuple(cur))
            for _ in range(self.degree - 2):
                top = cur[-1]
                nxt = [_ZERO] + list(cur[:-1])
                if top:
                    nxt = [a + top * b for a, b in zip(nxt, self._red[0])]
                cur = nxt
                self._red.append(tuple(cur))
        self.zero = CyclotomicNumber(self, (_ZERO,) * self.degree)
        self.one = self.from_int(1)

    def _mul(self, a, b):
        d = self.degree
        raw = [_ZERO] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        raw[i + j] += ai * bj
        out = raw[:d]
        for k in range(d, 2 * d - 1):
            c = raw[k]
            if c:
                red = self._red[k - d]
                out = [o + c * r for o, r in zip(out, red)]
        return tuple(out)

    def element(self, coeffs) -> CyclotomicNumber:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients")
        return CyclotomicNumber(self, coeffs)

    def from_int(self, k: int) -> CyclotomicNumber:
        if self.degree == 1 and self.order == 1:
            # x - 1: zeta_1 = 1, constants live in coefficient 0
            return CyclotomicNumber(self, (Fraction(k),))
        return CyclotomicNumber(
            self, (Fraction(k),) + (_ZERO,) * (self.degree - 1))

    def coerce(self, a):
        if isinstance(a, int):
            return self.from_int(a)
        if isinstance(a, CyclotomicNumber) and a.field.order == self.order:
            return a
        raise FieldMismatch(f"not a Q(zeta_{self.order}) scalar: {a!r}")

    def zeta(self, k: int = 1) -> CyclotomicNumber:
        """zeta_N^k in reduced form."""
        k %= self.order
        if k < self.degree:
            coeffs = [_ZERO] * self.degree
            coeffs[k] = _ONE
            return CyclotomicNumber(self, tuple(coeffs))
        _, rem = _poly_divmod_frac([_ZERO] * k + [_ONE], list(self.poly))
        rem = list(rem) + [_ZERO] * (self.degree - len(rem))
        return CyclotomicNumber(self, tuple(rem[: self.degree]))

    def inv(self, a: CyclotomicNumber) -> CyclotomicNumber:
        """Inverse by the extended Euclidean algorithm in Q[x] mod the cyclotomic polynomial."""
        a = self.coerce(a)
        if not a:
            raise DivisionByZero("cyclotomic inverse of zero")
        # track only the Bezout coefficient of a:  t*a = gcd  (mod poly)
        r0, r1 = list(self.poly), _poly_trim(list(a.coeffs))
        t0, t1 = [], [_ONE]
        while r1:
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_trim(_poly_sub(t0, _poly_mul_frac(q, t1)))
        g = _poly_trim(r0)
        assert len(g) == 1 and g[0], "cyclotomic polynomial not coprime to element"
        c = g[0]
        coeffs = tuple(([x / c for x in t0] + [_ZERO] * self.degree)[: self.degree])
        res = CyclotomicNumber(self, coeffs)
        assert res * a == self.one
        return res

    def div(self, a, b):
        return self.coerce(a) * self.inv(b)

    def sort_key(self, a):
        a = self.coerce(a)
        return tuple((c.numerator, c.denominator) for c in a.coeffs)

    def to_str(self, a) -> str:
        a = self.coerce(a)
        return "cyc%d[%s]" % (self.order, ",".join(str(c) for c in a.coeffs))

    def _mu_order(self) -> int:
        # order of the full group of roots of unity mu(Q(zeta_N))
        n = self.order
        return n if n % 2 == 0 else 2 * n

    def _mu_generator(self) -> CyclotomicNumber:
        n = self.order
        if n % 2 == 0:
            return self.zeta(1)
        if n == 1:
            return self.from_int(-1)
        return -self.zeta((n + 1) // 2)  # order 2N when N is odd

    def roots_of_unity(self, d: int):
        m = self._mu_order()
        g = math.gcd(m, d)
        gen = self._mu_generator() ** (m // g)
        out = []
        cur = self.one
        for _ in range(g):
            out.append(cur)
            cur = cur * gen
        return out

    def primitive_root_of_unity(self, n: int) -> CyclotomicNumber:
        m = self._mu_order()
        if m % n != 0:
            raise FieldLacksRoot(
                f"Q(zeta_{self.order}) has no primitive root of unity of order {n}")
        return self._mu_generator() ** (m // n)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("cyclotomic", self.order))

    def __repr__(self):
        return f"CyclotomicField({self.order})"


def _poly_trim(a):
    i = len(a)
    while i > 0 and not a[i - 1]:
        i -= 1
    return a[:i]


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [_ZERO] * (n - len(a))
    b = list(b) + [_ZERO] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_mul_frac(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divmod_frac(num, den):
    num = list(num)
    den = _poly_trim(list(den))
    q = [_ZERO] * max(len(num) - len(den) + 1, 0)
    inv_lead = 1 / den[-1]
    for i in range(len(num) - 1, len(den) - 2, -1):
        c = num[i]
        if c:
            f = c * inv_lead
            q[i - len(den) + 1] = f
            for j, dj in enumerate(den):
                num[i - len(den) + 1 + j] -= f * dj
    return q, _poly_trim(num)


# ---------------------------------------------------------------------------
# prime fields F_p
# ---------------------------------------------------------------------------

class PrimeFieldElement:
    """Residue in F_p."""

    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        self.p = p
        self.value = value % p

    def _check(self, other):
        if isinstance(other, int):
            return PrimeFieldElement(self.p, other)
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise FieldMismatch(f"prime moduli differ: {self.p} vs {other.p}")
            return other
        raise FieldMismatch(f"cannot mix F_{self.p} scalar with {other!r}")

    def __add__(self, other):
        other = self._check(other)
        return PrimeFieldElement(self.p, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return PrimeFieldElement(self.p, self.value - other.value)

    def __rsub__(self, other):
        return self._check(other).__sub__(self)

    def __neg__(self):
        return PrimeFieldElement(self.p, -self.value)

    def __mul__(self, other):
        other = self._check(other)
        return PrimeFieldElement(self.p, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if not other.value:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return self * PrimeFieldElement(self.p, pow(other.value, -1, self.p))

    def __rtruediv__(self, other):
        return self._check(other).__truediv__(self)

    def __pow__(self, k: int):
        if k < 0:
            if not self.value:
                raise DivisionByZero(f"inverse of zero in F_{self.p}")
            return PrimeFieldElement(self.p, pow(self.value, k, self.p))
        return PrimeFieldElement(self.p, pow(self.value, k, self.p))

    def __eq__(self, other):
        try:
            other = self._check(other)
        except FieldMismatch:
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"PrimeFieldElement({self.p}, {self.value})"


class PrimeField:
    """F_p for a prime p."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.descriptor = f"fp:{p}"
        self.zero = PrimeFieldElement(p, 0)
        self.one = PrimeFieldElement(p, 1)

    def from_int(self, k: int):
        return PrimeFieldElement(self.p, k)

    def coerce(self, a):
        if isinstance(a, int):
            return self.from_int(a)
        if isinstance(a, PrimeFieldElement) and a.p == self.p:
            return a
        raise FieldMismatch(f"not an F_{self.p} scalar: {a!r}")

    def div(self, a, b):
        return self.coerce(a) / self.coerce(b)

    def inv(self, a):
        return self.div(1, a)

    def sort_key(self, a):
        return self.coerce(a).value

    def to_str(self, a) -> str:
        return f"fp{self.p}[{self.coerce(a).value}]"

    @lru_cache(maxsize=None)
    def _primitive_root(self) -> int:
        factors = list(_factorize(self.p - 1))
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in factors):
                return g
        raise ArithmeticError("no primitive root found")  # unreachable for prime p

    def roots_of_unity(self, d: int):
        g = math.gcd(self.p - 1, d)
        gen = pow(self._primitive_root(), (self.p - 1) // g, self.p)
        out, cur = [], 1
        for _ in range(g):
            out.append(PrimeFieldElement(self.p, cur))
            cur = cur * gen % self.p
        return out

    def primitive_root_of_unity(self, n: int):
        if (self.p - 1) % n != 0:
            raise FieldLacksRoot(f"F_{self.p} has no primitive root of unity of order {n}")
        return PrimeFieldElement(self.p, pow(self._primitive_root(), (self.p - 1) // n, self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

def field_from_descriptor(desc: str):
    """Parse 'q', 'cyclotomic:N' or 'fp:p' into a field object."""
    if desc == "q":
        return RationalField()
    if desc.startswith("cyclotomic:"):
        return CyclotomicField(int(desc.split(":", 1)[1]))
    if desc.startswith("fp:"):
        return PrimeField(int(desc.split(":", 1)[1]))
    raise ValueError(f"unknown field descriptor: {desc!r}")


def root_of_unity(n: int, k: int):
    """zeta_N^k inside Q(zeta_N) (order-2 case collapses to a rational value)."""
    return CyclotomicField(n).zeta(k)
