"""Exact scalar arithmetic over Q and finite fields of odd characteristic.

Rationals are plain ``fractions.Fraction`` values.  Finite fields GF(p^k)
are described by a :class:`FieldDesc` carrying a monic irreducible modulus
over Z/p; their elements are :class:`FFElement`.  The real and complex
"fields" are tags on exact rational data: no floating point is used
anywhere in this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "FieldDesc",
    "FFElement",
    "QQ",
    "RR",
    "CC",
    "is_prime",
    "factorize",
    "squarefree_part",
    "padic_valuation",
    "legendre_symbol",
    "is_square",
    "gf_construct",
    "is_padic_square",
    "rational_unit_mod",
    "odd_prime_support",
    "fraction_sqrt",
]

_TRIAL_LIMIT = 10**6
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _pollard_rho(n: int) -> int:
    """Return a nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        y, c, m = seed, seed + 1, 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Factor |n| by trial division up to 10^6, then Pollard rho."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    out: dict[int, int] = {}
    for p in itertools.chain((2,), range(3, _TRIAL_LIMIT, 2)):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def squarefree_part(r) -> int:
    """The unique squarefree integer s with r = s * t^2, t rational."""
    r = Fraction(r)
    if r == 0:
        raise ValueError("zero has no square class")
    m = r.numerator * r.denominator
    sign = -1 if m < 0 else 1
    s = sign
    for p, e in factorize(m).items():
        if e % 2:
            s *= p
    return s


def padic_valuation(r, p: int) -> int:
    """nu_p of a nonzero rational."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    r = Fraction(r)
    if r == 0:
        raise ValueError("zero has no p-adic valuation")

    def _val(n: int) -> int:
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return v

    return _val(r.numerator) - _val(r.denominator)


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    t = pow(a % p, (p - 1) // 2, p)
    if t == 0:
        return 0
    return 1 if t == 1 else -1


def fraction_sqrt(r) -> Fraction:
    """Exact square root of a perfect-square nonnegative rational."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("negative rational has no rational square root")
    num, den = isqrt(r.numerator), isqrt(r.denominator)
    if num * num != r.numerator or den * den != r.denominator:
        raise ValueError(f"{r} is not a perfect square")
    return Fraction(num, den)


def rational_unit_mod(r, modulus: int) -> int:
    """Reduce a rational with unit denominator mod ``modulus``."""
    r = Fraction(r)
    return r.numerator * pow(r.denominator, -1, modulus) % modulus


def is_padic_square(r, p: int) -> bool:
    """Whether a nonzero rational is a square in Q_p."""
    r = Fraction(r)
    if r == 0:
        raise ValueError("zero has no square class")
    v = padic_valuation(r, p)
    if v % 2:
        return False
    u = r / Fraction(p) ** v
    if p == 2:
        return rational_unit_mod(u, 8) == 1
    return legendre_symbol(rational_unit_mod(u, p), p) == 1


def odd_prime_support(r) -> list[int]:
    """Odd primes dividing the square class of a nonzero rational."""
    return sorted(p for p in factorize(abs(squarefree_part(r))) if p != 2)


# ---------------------------------------------------------------------------
# Polynomials over Z/p, coefficient lists low-to-high, used only to back GF(p^k).


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    a = list(a)
    binv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * binv % p
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    return q, _ptrim(a)


def _pgcd_ext(a, b, p):
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _ptrim([(x - y) % p for x, y in
                             itertools.zip_longest(s0, _pmul(q, s1, p), fillvalue=0)])
    return r0, s0


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Brute-force irreducibility over Z/p; fine at desk scale."""
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            _, rem = _pdivmod(list(f), g, p)
            if not rem:
                return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldDesc:
    """Tag for one of the supported coefficient fields.

    kind is "QQ", "RR", "CC" or "GF".  For GF the characteristic p (odd),
    extension degree k and a monic irreducible modulus (coefficients
    low-to-high, length k+1) are carried along.
    """

    kind: str
    char: int = 0
    degree: int = 0
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("QQ", "RR", "CC", "GF"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "GF":
            if self.char == 2:
                raise ValueError("characteristic 2 unsupported")
            if not is_prime(self.char):
                raise ValueError(f"{self.char} is not prime")
            if self.degree < 1:
                raise ValueError("extension degree must be >= 1")
            if len(self.modulus) != self.degree + 1 or self.modulus[-1] != 1:
                raise ValueError("modulus must be monic of the stated degree")
            if any(not 0 <= c < self.char for c in self.modulus):
                raise ValueError("modulus coefficients must be reduced mod p")
            if not _is_irreducible(self.modulus, self.char):
                raise ValueError("modulus is reducible")

    @property
    def order(self) -> int:
        if self.kind != "GF":
            raise ValueError("order is defined for finite fields only")
        return self.char ** self.degree

    @property
    def is_exact(self) -> bool:
        return self.kind in ("QQ", "GF")

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def coerce(self, value):
        """Coerce an int / Fraction / FFElement / coefficient tuple into the field."""
        if self.kind == "GF":
            if isinstance(value, FFElement):
                if value.field != self:
                    raise ValueError("element belongs to a different field")
                return value
            if isinstance(value, tuple):
                coeffs = list(value)
            elif isinstance(value, int):
                coeffs = [value]
            elif isinstance(value, Fraction):
                if value.denominator % self.char == 0:
                    raise ZeroDivisionError(
                        "denominator divisible by the characteristic")
                coeffs = [value.numerator *
                          pow(value.denominator, -1, self.char)]
            else:
                raise ValueError(f"cannot coerce {value!r} into {self}")
            coeffs = [c % self.char for c in coeffs]
            coeffs += [0] * (self.degree - len(coeffs))
            if len(coeffs) > self.degree:
                q, r = _pdivmod(coeffs, list(self.modulus), self.char)
                coeffs = r + [0] * (self.degree - len(r))
            return FFElement(self, tuple(coeffs))
        if isinstance(value, FFElement):
            raise ValueError(f"cannot coerce {value!r} into {self}")
        return Fraction(value)

    def elements(self):
        """Iterate all field elements (finite fields only), deterministically."""
        for coeffs in itertools.product(range(self.char), repeat=self.degree):
            yield FFElement(self, coeffs)

    def __str__(self):
        if self.kind == "GF":
            return f"GF({self.order})"
        return self.kind

    def __repr__(self):
        if self.kind == "GF":
            return f"FieldDesc('GF', {self.char}, {self.degree}, {self.modulus})"
        return f"FieldDesc({self.kind!r})"


QQ = FieldDesc("QQ")
RR = FieldDesc("RR")
CC = FieldDesc("CC")


class FFElement:
    """An element of GF(p^k): a residue polynomial of degree < k over Z/p."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldDesc, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def _check(self, other) -> "FFElement":
        if isinstance(other, int):
            return self.field.coerce(other)
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise ValueError("finite field mismatch")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.char
        return FFElement(self.field, tuple((a + b) % p for a, b in
                                           zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.char
        return FFElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.char
        prod = _pmul(list(self.coeffs), list(other.coeffs), p)
        if len(prod) > self.field.degree:
            _, prod = _pdivmod(prod, list(self.field.modulus), p)
        prod += [0] * (self.field.degree - len(prod))
        return FFElement(self.field, tuple(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FFElement":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        p = self.field.char
        g, s = _pgcd_ext(list(self.coeffs), list(self.field.modulus), p)
        c = pow(g[0], -1, p)
        s = [x * c % p for x in s]
        s += [0] * (self.field.degree - len(s))
        return FFElement(self.field, tuple(s[:self.field.degree]))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            try:
                other = self.field.coerce(other)
            except ValueError:
                return NotImplemented
        if not isinstance(other, FFElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for i in range(self.field.degree - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}*t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FFElement({self.field}, {self.coeffs})"


def gf_construct(p: int, k: int, modulus=None) -> FieldDesc:
    """Build the GF(p^k) descriptor.

    Without an explicit modulus, the monic irreducible of degree k whose
    low-to-high coefficient vector is lexicographically smallest is chosen;
    the choice is deterministic but otherwise immaterial, since every
    square-class-level output is independent of it.
    """
    if p == 2:
        raise ValueError("characteristic 2 unsupported")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is not None:
        return FieldDesc("GF", p, k, tuple(modulus))
    for tail in itertools.product(range(p), repeat=k):
        cand = tail + (1,)
        if _is_irreducible(cand, p):
            return FieldDesc("GF", p, k, cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def is_square(a, F: FieldDesc) -> bool:
    """Square-class membership test in the given field."""
    a = F.coerce(a)
    if not a:
        raise ValueError("zero has no square class")
    if F.kind == "CC":
        return True
    if F.kind == "RR":
        return a > 0
    if F.kind == "QQ":
        return squarefree_part(a) == 1
    return a ** ((F.order - 1) // 2) == F.one()
