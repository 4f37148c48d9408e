"""Multivariate polynomials over Q and GF(p^k) with Groebner machinery.

The public monomial order is graded reverse lexicographic over the ring's
variable order.  Ideal intersections (and hence colon ideals) go through a
single auxiliary variable with a block order, which stays internal: rings
built by users are always grevlex.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .fields import FieldDesc, FFElement

__all__ = [
    "ParseError",
    "PolyRing",
    "Polynomial",
    "Ideal",
    "GroebnerBasis",
    "groebner_basis",
    "normal_form",
    "exact_quotient",
    "ideal_quotient",
    "saturation",
    "standard_monomials",
    "resultant_univariate",
    "parse_polynomial",
]


class ParseError(ValueError):
    """Raised on malformed polynomial / matrix text, with a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _elim1_key(e):
    # Block order eliminating the first variable: degree in it dominates.
    return (e[0], _grevlex_key(e[1:]))


_ORDER_KEYS = {"grevlex": _grevlex_key, "elim1": _elim1_key}


@dataclass(frozen=True)
class PolyRing:
    field: FieldDesc
    variables: tuple[str, ...]
    order: str = "grevlex"

    def __post_init__(self):
        if not self.field.is_exact:
            raise ValueError(
                "polynomial rings require an exact coefficient field (QQ or GF)")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        if not self.variables:
            raise ValueError("a polynomial ring needs at least one variable")
        if self.order not in _ORDER_KEYS:
            raise ValueError(f"unknown monomial order {self.order!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def key(self):
        return _ORDER_KEYS[self.order]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def variable(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    def from_string(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"


class Polynomial:
    """Immutable sparse polynomial: a map from exponent vectors to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def make(cls, ring: PolyRing, terms: dict) -> "Polynomial":
        clean = {}
        n = ring.nvars
        for e, c in terms.items():
            c = ring.field.coerce(c)
            if not c:
                continue
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e}")
            clean[tuple(e)] = c
        return cls(ring, clean)

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        if not self.terms:
            return self.ring.field.zero()
        return next(iter(self.terms.values()))

    def leading_monomial(self):
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == self.ring.field.one():
            return self
        return Polynomial(self.ring, {e: c / lc for e, c in self.terms.items()})

    def support(self) -> set[int]:
        """Indices of variables actually occurring."""
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return used

    # -- arithmetic ---------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomial ring mismatch")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce_other(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e)
            v = c if v is None else v + c
            if v:
                terms[e] = v
            elif e in terms:
                del terms[e]
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field.coerce(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})
        if other.ring != self.ring:
            raise ValueError("polynomial ring mismatch")
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                v = e[i] * c
                if v:
                    out[tuple(e2)] = v
        return Polynomial(self.ring, out)

    def map_to(self, target: PolyRing, var_map: list[int]) -> "Polynomial":
        """Reindex variables into another ring over the same field."""
        if target.field != self.ring.field:
            raise ValueError("target ring has a different coefficient field")
        out: dict = {}
        for e, c in self.terms.items():
            e2 = [0] * target.nvars
            for i, x in enumerate(e):
                if x:
                    e2[var_map[i]] += x
            e2 = tuple(e2)
            v = out.get(e2)
            v = c if v is None else v + c
            if v:
                out[e2] = v
            elif e2 in out:
                del out[e2]
        return Polynomial(target, out)

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FFElement)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, key=self.ring.key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if x == 1 else f"{v}^{x}"
                for v, x in zip(self.ring.variables, e) if x)
            cs = str(c)
            if mono:
                if cs == "1":
                    piece = mono
                elif cs == "-1":
                    piece = f"-{mono}"
                elif isinstance(c, FFElement) and ("+" in cs or "t" in cs):
                    piece = f"({cs})*{mono}"
                else:
                    piece = f"{cs}*{mono}"
            else:
                piece = cs
            out.append(piece)
        text = out[0]
        for piece in out[1:]:
            if piece.startswith("-"):
                text += " - " + piece[1:]
            else:
                text += " + " + piece
        return text

    def __repr__(self):
        return f"<{self} in {self.ring}>"


# ---------------------------------------------------------------------------
# Division.


def _reduce_terms(ring, fterms: dict, divisors, quotients=None) -> dict:
    """Remainder of multivariate division; divisors as (lm, lc, tail) triples."""
    key = ring.key
    work = dict(fterms)
    rem: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for di, (lm, lc, tail) in enumerate(divisors):
            if all(a >= b for a, b in zip(m, lm)):
                shift = tuple(a - b for a, b in zip(m, lm))
                fac = c / lc
                for e2, c2 in tail:
                    e = tuple(x + y for x, y in zip(shift, e2))
                    v = work.get(e)
                    v = -fac * c2 if v is None else v - fac * c2
                    if v:
                        work[e] = v
                    elif e in work:
                        del work[e]
                if quotients is not None:
                    q = quotients[di]
                    q[shift] = q.get(shift, ring.field.zero()) + fac
                break
        else:
            rem[m] = c
    return rem


def _prep_divisors(polys):
    out = []
    for g in polys:
        if not g:
            continue
        lm = g.leading_monomial()
        tail = [(e, c) for e, c in g.terms.items() if e != lm]
        out.append((lm, g.terms[lm], tail))
    return out


def _remainder(f: Polynomial, polys) -> Polynomial:
    return Polynomial(f.ring, _reduce_terms(f.ring, f.terms, _prep_divisors(polys)))


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when the division is exact; raises otherwise."""
    if g.ring != f.ring:
        raise ValueError("polynomial ring mismatch")
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return f.ring.zero()
    quotients = [{}]
    rem = _reduce_terms(f.ring, f.terms, _prep_divisors([g]), quotients)
    if rem:
        raise ValueError("division is not exact")
    return Polynomial(f.ring, quotients[0])


# ---------------------------------------------------------------------------
# Ideals and Groebner bases.


@dataclass(frozen=True)
class Ideal:
    ring: PolyRing
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        for g in self.generators:
            if not isinstance(g, Polynomial) or g.ring != self.ring:
                raise ValueError("all generators must live in the ideal's ring")

    @classmethod
    def of(cls, ring: PolyRing, *gens) -> "Ideal":
        return cls(ring, tuple(g if isinstance(g, Polynomial) else ring.from_string(g)
                               for g in gens))


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    basis: tuple
    order: str


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _buchberger(ring: PolyRing, gens) -> list:
    key = ring.key
    G = []
    for g in gens:
        if g:
            g = g.monic()
            if g not in G:
                G.append(g)
    if not G:
        raise ValueError("generators must not all be zero")
    if any(g.is_constant() for g in G):
        return [ring.one()]

    lms = [g.leading_monomial() for g in G]
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}

    def lcm(i, j):
        return tuple(max(a, b) for a, b in zip(lms[i], lms[j]))

    while pairs:
        i, j = min(pairs, key=lambda p: key(lcm(*p)))
        pairs.discard((i, j))
        l = lcm(i, j)
        # Product criterion.
        if l == tuple(a + b for a, b in zip(lms[i], lms[j])):
            continue
        # Chain criterion.
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not _divides(lms[k], l):
                continue
            if (min(i, k), max(i, k)) not in pairs and \
               (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        gi, gj = G[i], G[j]
        mi = tuple(a - b for a, b in zip(l, lms[i]))
        mj = tuple(a - b for a, b in zip(l, lms[j]))
        one = ring.field.one()
        s = Polynomial(ring, {tuple(x + y for x, y in zip(mi, e)): c
                              for e, c in gi.terms.items()}) \
            - Polynomial(ring, {tuple(x + y for x, y in zip(mj, e)): c
                                for e, c in gj.terms.items()})
        r = _remainder(s, G)
        if not r:
            continue
        r = r.monic()
        if r.is_constant():
            return [ring.one()]
        G.append(r)
        lms.append(r.leading_monomial())
        t = len(G) - 1
        pairs.update((i2, t) for i2 in range(t))

    # Minimalize, then tail-reduce to the unique reduced basis.
    lms = [g.leading_monomial() for g in G]
    keep = []
    for i, g in enumerate(G):
        if any(j != i and _divides(lms[j], lms[i]) and
               (not _divides(lms[i], lms[j]) or j < i) for j in range(len(G))):
            continue
        keep.append(i)
    minimal = [G[i] for i in keep]
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(_remainder(g, others).monic())
    reduced.sort(key=lambda g: key(g.leading_monomial()))
    return reduced


@functools.lru_cache(maxsize=None)
def _groebner_cached(ideal: Ideal) -> GroebnerBasis:
    basis = _buchberger(ideal.ring, ideal.generators)
    return GroebnerBasis(ideal, tuple(basis), ideal.ring.order)


def groebner_basis(ideal: Ideal) -> GroebnerBasis:
    """Unique reduced Groebner basis for the ring's monomial order."""
    return _groebner_cached(ideal)


def normal_form(f: Polynomial, G) -> Polynomial:
    """Remainder of f modulo a Groebner basis (or any list of divisors)."""
    polys = G.basis if isinstance(G, GroebnerBasis) else tuple(G)
    if polys and f.ring != polys[0].ring:
        raise ValueError("polynomial ring mismatch")
    return _remainder(f, polys)


# ---------------------------------------------------------------------------
# Colon ideals, saturation, quotient bases.


def _extended_ring(ring: PolyRing) -> PolyRing:
    return PolyRing(ring.field, ("@t",) + ring.variables, order="elim1")


def _intersect(ring: PolyRing, gens1, gens2) -> list:
    """Generators of the intersection of two ideals, via one tag variable."""
    ext = _extended_ring(ring)
    up = list(range(1, ring.nvars + 1))
    t = ext.variable(0)
    mixed = [t * f.map_to(ext, up) for f in gens1 if f]
    mixed += [(ext.one() - t) * g.map_to(ext, up) for g in gens2 if g]
    gb = groebner_basis(Ideal(ext, tuple(mixed)))
    down = list(range(ring.nvars))
    out = []
    for g in gb.basis:
        if all(e[0] == 0 for e in g.terms):
            out.append(Polynomial(ring, {e[1:]: c for e, c in g.terms.items()}))
    return out


def _quotient_principal(I: Ideal, g: Polynomial) -> list:
    meet = _intersect(I.ring, I.generators, [g])
    return [exact_quotient(h, g) for h in meet]


def _gb_of(ring, gens) -> tuple:
    return groebner_basis(Ideal(ring, tuple(gens))).basis


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """The colon ideal (I : J) = {f : f*J in I}."""
    if I.ring != J.ring:
        raise ValueError("polynomial ring mismatch")
    ring = I.ring
    result = None
    for g in J.generators:
        if not g:
            continue
        q = _quotient_principal(I, g)
        result = q if result is None else _intersect(ring, result, q)
    if result is None:
        raise ValueError("colon by the zero ideal")
    result = list(_gb_of(ring, result)) if result else [ring.zero()]
    if not any(result):
        raise AssertionError("colon ideal collapsed to zero")
    gb = _gb_of(ring, result)
    for f in I.generators:
        if normal_form(f, gb):
            raise AssertionError("colon ideal does not contain the original ideal")
    return Ideal(ring, tuple(gb))


def saturation(I: Ideal, J: Ideal) -> Ideal:
    """(I : J^infinity), by iterating colon ideals until they stabilize."""
    if I.ring != J.ring:
        raise ValueError("polynomial ring mismatch")
    current = Ideal(I.ring, _gb_of(I.ring, I.generators))
    while True:
        nxt = ideal_quotient(current, J)
        if _gb_of(I.ring, nxt.generators) == _gb_of(I.ring, current.generators):
            return current
        current = nxt


def standard_monomials(G: GroebnerBasis) -> list:
    """Monomials outside the leading-term ideal, ascending in the ring order.

    Raises if there are infinitely many, i.e. the quotient is not
    zero-dimensional.
    """
    ring = G.ideal.ring
    if len(G.basis) == 1 and G.basis[0].is_constant():
        return []
    lms = [g.leading_monomial() for g in G.basis]
    for i in range(ring.nvars):
        if not any(all(x == 0 for j, x in enumerate(lm) if j != i) and lm[i] > 0
                   for lm in lms):
            raise ValueError("zeros are not isolated")
    origin = (0,) * ring.nvars
    seen = {origin}
    queue = [origin]
    while queue:
        m = queue.pop()
        for i in range(ring.nvars):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1:]
            if m2 in seen or any(_divides(lm, m2) for lm in lms):
                continue
            seen.add(m2)
            queue.append(m2)
    one = ring.field.one()
    return [Polynomial(ring, {e: one})
            for e in sorted(seen, key=ring.key)]


# ---------------------------------------------------------------------------
# Resultants.


def _field_det(rows, field):
    n = len(rows)
    a = [list(r) for r in rows]
    det = field.one()
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return field.zero()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        inv = field.one() / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                fac = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] = a[i][j] - fac * a[k][j]
    return det


def _sylvester_resultant(fdesc, gdesc, field):
    m, n = len(fdesc) - 1, len(gdesc) - 1
    if m == 0 and n == 0:
        return field.one()
    size = m + n
    rows = []
    for i in range(m):
        rows.append([field.zero()] * i + gdesc + [field.zero()] * (size - n - 1 - i))
    for i in range(n):
        rows.append([field.zero()] * i + fdesc + [field.zero()] * (size - m - 1 - i))
    return _field_det(rows, field)


def resultant_univariate(f: Polynomial, g: Polynomial):
    """Sylvester resultant of two univariate polynomials (field-valued).

    Also accepts a pair of homogeneous binary forms in the same two
    variables, reading their coefficient vectors with the formal degrees;
    this is the classical resultant of binary forms.
    """
    if f.ring != g.ring:
        raise ValueError("polynomial ring mismatch")
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    field = f.ring.field
    used = sorted(f.support() | g.support())
    if len(used) == 0:
        return field.one()
    if len(used) == 1:
        v = used[0]

        def coeffs(p):
            deg = max(e[v] for e in p.terms)
            out = [field.zero()] * (deg + 1)
            for e, c in p.terms.items():
                out[deg - e[v]] = c  # descending
            return out

        return _sylvester_resultant(coeffs(f), coeffs(g), field)
    if len(used) == 2:
        u, v = used
        for p in (f, g):
            degs = {sum(e) for e in p.terms}
            if len(degs) != 1:
                raise ValueError("resultant requires univariate input")

        def form_coeffs(p):
            deg = next(iter({sum(e) for e in p.terms}))
            out = [field.zero()] * (deg + 1)
            for e, c in p.terms.items():
                out[deg - e[u]] = c  # descending in the first variable
            return out

        return _sylvester_resultant(form_coeffs(f), form_coeffs(g), field)
    raise ValueError("resultant requires univariate input")


# ---------------------------------------------------------------------------
# Parsing.  Grammar: integer literals, variable identifiers, + - * ^ and
# parentheses; implicit multiplication is rejected.

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*^])|(\S)")


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(4):
            raise ParseError(f"unexpected character {m.group(4)!r}", m.start())
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start()))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start()))
        else:
            tokens.append(("op", m.group(3), m.start()))
    tokens.append(("end", None, len(text)))
    return tokens


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_expr():
        kind, val, at = peek()
        negate = False
        if kind == "op" and val in "+-":
            advance()
            negate = val == "-"
        node = parse_term()
        if negate:
            node = -node
        while True:
            kind, val, at = peek()
            if kind == "op" and val in "+-":
                advance()
                rhs = parse_term()
                node = node - rhs if val == "-" else node + rhs
            else:
                return node

    def parse_term():
        node = parse_factor()
        while True:
            kind, val, at = peek()
            if kind == "op" and val == "*":
                advance()
                node = node * parse_factor()
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                raise ParseError("implicit multiplication is not allowed", at)
            else:
                return node

    def parse_factor():
        kind, val, at = peek()
        if kind == "op" and val in "+-":
            advance()
            node = parse_factor()
            return -node if val == "-" else node
        node = parse_base()
        kind, val, at = peek()
        if kind == "op" and val == "^":
            advance()
            kind, exp, at = advance()
            if kind != "int":
                raise ParseError("exponent must be an integer literal", at)
            node = node ** exp
        return node

    def parse_base():
        kind, val, at = advance()
        if kind == "int":
            return ring.constant(val)
        if kind == "name":
            try:
                i = ring.variables.index(val)
            except ValueError:
                raise ParseError(f"unknown variable {val!r}", at) from None
            return ring.variable(i)
        if kind == "op" and val == "(":
            node = parse_expr()
            kind, val, at = advance()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", at)
            return node
        raise ParseError("expected a number, variable or '('", at)

    node = parse_expr()
    kind, val, at = peek()
    if kind != "end":
        raise ParseError("unexpected trailing input", at)
    return node
