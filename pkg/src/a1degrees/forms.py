"""Grothendieck-Witt classes of symmetric bilinear forms.

A class is a nondegenerate symmetric Gram matrix over one of the supported
fields.  Entries over QQ/RR/CC are exact rationals; the RR/CC tags change
only which invariants classify.  Classification: rank over CC; rank and
signature over RR; rank and discriminant square class over GF(q); rank,
signature, discriminant and all Hasse-Witt invariants over QQ.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .fields import (CC, QQ, RR, FFElement, FieldDesc, fraction_sqrt, is_prime,
                     is_square, legendre_symbol, odd_prime_support,
                     padic_valuation, rational_unit_mod, squarefree_part)

__all__ = [
    "GWClass",
    "InvariantBundle",
    "make_gw_class",
    "add_gw",
    "multiply_gw",
    "diagonalize",
    "make_diagonal_form",
    "make_hyperbolic_form",
    "make_pfister_form",
    "get_rank",
    "get_signature",
    "get_discriminant",
    "get_invariants",
    "hilbert_symbol",
    "hasse_witt_invariant",
    "is_isomorphic_form",
    "base_change",
    "canonical_nonsquare",
    "field_det",
]


@dataclass(frozen=True)
class GWClass:
    """A symmetric nondegenerate Gram matrix with its field tag.

    Built through :func:`make_gw_class`, which validates; rank-0 classes
    exist only as outputs of the Witt-decomposition machinery.
    """

    field: FieldDesc
    gram: tuple

    @property
    def rank(self) -> int:
        return len(self.gram)

    def diagonal_entries(self) -> list:
        d, _ = diagonalize(self)
        return [d.gram[i][i] for i in range(d.rank)]

    def __str__(self):
        if not self.gram:
            return f"<empty form over {self.field}>"
        rows = [[str(c) for c in row] for row in self.gram]
        width = max(len(s) for row in rows for s in row)
        return "\n".join("[ " + "  ".join(s.rjust(width) for s in row) + " ]"
                         for row in rows)


def field_det(rows, field: FieldDesc):
    """Determinant of a square matrix of field elements, by elimination."""
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


def make_gw_class(matrix, field: FieldDesc) -> GWClass:
    """Validated construction from a square symmetric matrix."""
    rows = [[field.coerce(c) for c in row] for row in matrix]
    n = len(rows)
    if n == 0:
        raise ValueError("empty Gram matrix")
    if any(len(row) != n for row in rows):
        raise ValueError("Gram matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    if not field_det(rows, field):
        raise ValueError("degenerate form")
    return GWClass(field, tuple(tuple(row) for row in rows))


def _raw(field: FieldDesc, rows) -> GWClass:
    return GWClass(field, tuple(tuple(row) for row in rows))


def empty_form(field: FieldDesc) -> GWClass:
    return GWClass(field, ())


def add_gw(b1: GWClass, b2: GWClass) -> GWClass:
    """Direct sum: block-diagonal Gram matrix."""
    if b1.field != b2.field:
        raise ValueError("field mismatch")
    z = b1.field.zero()
    n1, n2 = b1.rank, b2.rank
    rows = []
    for i in range(n1):
        rows.append(list(b1.gram[i]) + [z] * n2)
    for i in range(n2):
        rows.append([z] * n1 + list(b2.gram[i]))
    return _raw(b1.field, rows)


def multiply_gw(b1: GWClass, b2: GWClass) -> GWClass:
    """Tensor product: Kronecker product of Gram matrices."""
    if b1.field != b2.field:
        raise ValueError("field mismatch")
    n1, n2 = b1.rank, b2.rank
    rows = []
    for i1 in range(n1):
        for i2 in range(n2):
            rows.append([b1.gram[i1][j1] * b2.gram[i2][j2]
                         for j1 in range(n1) for j2 in range(n2)])
    return _raw(b1.field, rows)


def diagonalize(beta: GWClass):
    """Congruence diagonalization: returns (D, P) with P^T * gram * P = D.

    Over QQ/RR/CC each diagonal entry is further reduced to its
    squarefree-integer square-class representative (the scaling is folded
    into P, so the congruence witness stays exact).
    """
    F = beta.field
    n = beta.rank
    G = [list(row) for row in beta.gram]
    P = [[F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]

    def col_op(dst, src, fac):
        # basis change e_dst += fac * e_src
        for r in range(n):
            P[r][dst] = P[r][dst] + fac * P[r][src]
        for r in range(n):
            G[r][dst] = G[r][dst] + fac * G[r][src]
        for cidx in range(n):
            G[dst][cidx] = G[dst][cidx] + fac * G[src][cidx]

    def col_swap(i, j):
        for r in range(n):
            P[r][i], P[r][j] = P[r][j], P[r][i]
        G[i], G[j] = G[j], G[i]
        for r in range(n):
            G[r][i], G[r][j] = G[r][j], G[r][i]

    def col_pair(i, j, a11, a21, a12, a22):
        # basis change e_i <- a11*e_i + a21*e_j, e_j <- a12*e_i + a22*e_j
        for r in range(n):
            P[r][i], P[r][j] = (a11 * P[r][i] + a21 * P[r][j],
                                a12 * P[r][i] + a22 * P[r][j])
        for r in range(n):
            G[r][i], G[r][j] = (a11 * G[r][i] + a21 * G[r][j],
                                a12 * G[r][i] + a22 * G[r][j])
        for c in range(n):
            G[i][c], G[j][c] = (a11 * G[i][c] + a21 * G[j][c],
                                a12 * G[i][c] + a22 * G[j][c])

    for i in range(n):
        if not G[i][i]:
            j = next((j for j in range(i + 1, n) if G[j][j]), None)
            if j is not None:
                col_swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if G[i][j]), None)
                if j is None:
                    raise ValueError("degenerate form")
                # split the hyperbolic pair off as <1, -1> exactly
                alpha = F.one() / (F.coerce(2) * G[i][j])
                col_pair(i, j, alpha, F.one(), alpha, -F.one())
        d = G[i][i]
        for j in range(i + 1, n):
            if G[i][j]:
                col_op(j, i, -(G[i][j] / d))

    if F.kind in ("QQ", "RR", "CC"):
        for i in range(n):
            d = G[i][i]
            s = squarefree_part(d)
            t = fraction_sqrt(d / s)
            if t != 1:
                inv = 1 / t
                for r in range(n):
                    P[r][i] = P[r][i] * inv
                G[i][i] = Fraction(s)

    diag = [[G[i][i] if i == j else F.zero() for j in range(n)] for i in range(n)]
    return _raw(F, diag), tuple(tuple(row) for row in P)


def make_diagonal_form(field: FieldDesc, entries) -> GWClass:
    entries = [field.coerce(e) for e in entries]
    if not entries:
        raise ValueError("a diagonal form needs at least one entry")
    if not all(entries):
        raise ValueError("diagonal entries must be nonzero")
    z = field.zero()
    n = len(entries)
    return _raw(field, [[entries[i] if i == j else z for j in range(n)]
                        for i in range(n)])


def make_hyperbolic_form(field: FieldDesc, rank: int) -> GWClass:
    if rank <= 0 or rank % 2:
        raise ValueError("hyperbolic rank must be even and positive")
    return make_diagonal_form(field, [1, -1] * (rank // 2))


def make_pfister_form(field: FieldDesc, coeffs) -> GWClass:
    """The n-fold Pfister form: tensor product of the <1, -a_i>.

    Convention: <<a_1,...,a_n>> uses the factors <1, -a_i>; both signs
    appear in the literature, this package fixes the minus convention.
    """
    coeffs = list(coeffs)
    if not coeffs:
        raise ValueError("a Pfister form needs at least one slot")
    result = None
    for a in coeffs:
        a = field.coerce(a)
        if not a:
            raise ValueError("Pfister slots must be nonzero")
        factor = make_diagonal_form(field, [field.one(), -a])
        result = factor if result is None else multiply_gw(result, factor)
    return result


# ---------------------------------------------------------------------------
# Invariants.


def get_rank(beta: GWClass) -> int:
    return beta.rank


def _sign(x: Fraction) -> int:
    return 1 if x > 0 else -1


def get_signature(beta: GWClass) -> int:
    if beta.field.kind not in ("QQ", "RR"):
        raise ValueError("signature undefined over this field")
    return sum(_sign(d) for d in beta.diagonal_entries())


@functools.lru_cache(maxsize=None)
def canonical_nonsquare(field: FieldDesc) -> FFElement:
    """Deterministic nonsquare representative in GF(q)."""
    for a in field.elements():
        if a and not is_square(a, field):
            return a
    raise AssertionError("no nonsquare found")  # unreachable for q > 1


def get_discriminant(beta: GWClass):
    """Determinant of the Gram matrix as a canonical square-class representative.

    Squarefree integer over QQ, +-1 over RR, 1 over CC, and 1 or the fixed
    smallest nonsquare over GF(q).
    """
    if beta.rank == 0:
        return beta.field.one() if beta.field.kind == "GF" else 1
    det = field_det(beta.gram, beta.field)
    kind = beta.field.kind
    if kind == "QQ":
        return squarefree_part(det)
    if kind == "RR":
        return _sign(det)
    if kind == "CC":
        return 1
    if is_square(det, beta.field):
        return beta.field.one()
    return canonical_nonsquare(beta.field)


def hilbert_symbol(a, b, p: int) -> int:
    """(a, b)_p: whether z^2 = a x^2 + b y^2 has a nonzero Q_p-point.

    Evaluated in closed form from the p-adic valuations and unit parts;
    the formulas are cross-checked against a finite primitive-solution
    search in the test suite.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    alpha, beta = padic_valuation(a, p), padic_valuation(b, p)
    u = a / Fraction(p) ** alpha
    v = b / Fraction(p) ** beta
    if p != 2:
        result = 1
        if alpha * beta * ((p - 1) // 2) % 2:
            result = -result
        if beta % 2 and legendre_symbol(rational_unit_mod(u, p), p) == -1:
            result = -result
        if alpha % 2 and legendre_symbol(rational_unit_mod(v, p), p) == -1:
            result = -result
        return result
    u8, v8 = rational_unit_mod(u, 8), rational_unit_mod(v, 8)
    eps_u, eps_v = (u8 - 1) // 2 % 2, (v8 - 1) // 2 % 2
    om_u, om_v = (u8 * u8 - 1) // 8 % 2, (v8 * v8 - 1) // 8 % 2
    return -1 if (eps_u * eps_v + alpha * om_v + beta * om_u) % 2 else 1


def hasse_witt_invariant(beta: GWClass, p: int) -> int:
    """Product of the pairwise Hilbert symbols of a diagonalization."""
    if beta.field.kind != "QQ":
        raise ValueError("Hasse-Witt invariants are defined over QQ only")
    diag = beta.diagonal_entries()
    result = 1
    for i, j in itertools.combinations(range(len(diag)), 2):
        result *= hilbert_symbol(diag[i], diag[j], p)
    return result


def hasse_witt_primes(beta: GWClass) -> list[int]:
    """{2} plus the odd primes dividing the square classes of the diagonal.

    A superset of the primes where the invariant can be -1; extra entries
    evaluate to +1 and are harmless.
    """
    primes = {2}
    for d in beta.diagonal_entries():
        primes.update(odd_prime_support(d))
    return sorted(primes)


@dataclass(frozen=True, eq=True)
class InvariantBundle:
    rank: int
    signature: Optional[int]
    discriminant: object
    hasse_witt: Optional[dict]

    def __post_init__(self):
        if self.signature is not None:
            if abs(self.signature) > self.rank or \
               (self.signature - self.rank) % 2:
                raise ValueError("signature incompatible with rank")


def get_invariants(beta: GWClass) -> InvariantBundle:
    kind = beta.field.kind
    signature = get_signature(beta) if kind in ("QQ", "RR") else None
    hw = None
    if kind == "QQ":
        hw = {p: hasse_witt_invariant(beta, p) for p in hasse_witt_primes(beta)}
    return InvariantBundle(beta.rank, signature, get_discriminant(beta), hw)


def is_isomorphic_form(b1: GWClass, b2: GWClass) -> bool:
    """Classification by invariants over the relevant field."""
    if b1.field != b2.field:
        raise ValueError("field mismatch")
    if b1.rank != b2.rank:
        return False
    kind = b1.field.kind
    if kind == "CC":
        return True
    if kind == "RR":
        return get_signature(b1) == get_signature(b2)
    if kind == "GF":
        return get_discriminant(b1) == get_discriminant(b2)
    if get_signature(b1) != get_signature(b2):
        return False
    if get_discriminant(b1) != get_discriminant(b2):
        return False
    primes = set(hasse_witt_primes(b1)) | set(hasse_witt_primes(b2))
    return all(hasse_witt_invariant(b1, p) == hasse_witt_invariant(b2, p)
               for p in primes)


def base_change(beta: GWClass, target: FieldDesc) -> GWClass:
    """Re-tag a rational class as a real or complex one."""
    if beta.field != QQ or target.kind not in ("RR", "CC"):
        raise ValueError("base change is supported from QQ to RR or CC only")
    return GWClass(target, beta.gram)
