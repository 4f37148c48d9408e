"""Local and global A1-Brouwer degrees via Bezoutian bilinear forms.

The pipeline: build the divided-difference matrix of the system in a
doubled ring, take its determinant, reduce modulo the ideal's Groebner
basis in the X-copy and the Y-copy of the variables, and read the Gram
matrix off the standard-monomial (or local-algebra) basis grid.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldDesc
from .forms import GWClass, empty_form, make_gw_class
from .poly import (GroebnerBasis, Ideal, Polynomial, PolyRing, exact_quotient,
                   groebner_basis, ideal_quotient, normal_form, saturation,
                   standard_monomials)

__all__ = [
    "EndoSystem",
    "BezoutianMatrix",
    "LocalAlgebraBasis",
    "bezoutian_matrix",
    "global_a1_degree",
    "local_algebra_basis",
    "local_a1_degree",
]


@dataclass(frozen=True)
class EndoSystem:
    """A square polynomial system f = (f_1, ..., f_n) on affine n-space."""

    ring: PolyRing
    polys: tuple

    def __post_init__(self):
        if len(self.polys) != self.ring.nvars:
            raise ValueError("system must be square: one polynomial per variable")
        for f in self.polys:
            if not isinstance(f, Polynomial) or f.ring != self.ring:
                raise ValueError("all polynomials must live in the system's ring")

    @classmethod
    def of(cls, ring: PolyRing, *polys) -> "EndoSystem":
        return cls(ring, tuple(p if isinstance(p, Polynomial) else
                               ring.from_string(p) for p in polys))


@dataclass(frozen=True)
class BezoutianMatrix:
    doubled_ring: PolyRing
    entries: tuple  # n x n tuple of Polynomial in the doubled ring
    system: EndoSystem

    @property
    def n(self) -> int:
        return len(self.entries)

    def determinant(self) -> Polynomial:
        return _poly_det([list(row) for row in self.entries],
                         self.doubled_ring)

    def diagonal_specialization(self):
        """Entries with Y set to X, pulled back to the base ring: the Jacobian."""
        ring = self.system.ring
        n = ring.nvars
        fold = list(range(n)) + list(range(n))
        return [[entry.map_to(ring, fold) for entry in row]
                for row in self.entries]


@dataclass(frozen=True)
class LocalAlgebraBasis:
    point_ideal: Ideal
    local_ideal: Ideal
    basis: tuple  # monomials, ascending


def doubled_ring(ring: PolyRing) -> PolyRing:
    names = tuple(f"X{v}" for v in ring.variables) + \
        tuple(f"Y{v}" for v in ring.variables)
    return PolyRing(ring.field, names)


def bezoutian_matrix(system: EndoSystem) -> BezoutianMatrix:
    """The n x n divided-difference matrix in variables X_i, Y_i.

    Entry (i, j) is the difference quotient of f_i between the staggered
    substitutions (Y_1..Y_{j-1}, X_j..X_n) and (Y_1..Y_j, X_{j+1}..X_n),
    divided exactly by X_j - Y_j.
    """
    ring = system.ring
    n = ring.nvars
    dring = doubled_ring(ring)
    rows = []
    for f in system.polys:
        row = []
        for j in range(n):
            hi = [(k + n if k < j else k) for k in range(n)]
            lo = [(k + n if k <= j else k) for k in range(n)]
            num = f.map_to(dring, hi) - f.map_to(dring, lo)
            denom = dring.variable(j) - dring.variable(j + n)
            row.append(exact_quotient(num, denom) if num else dring.zero())
        rows.append(tuple(row))
    return BezoutianMatrix(dring, tuple(rows), system)


def _poly_det(m, ring: PolyRing) -> Polynomial:
    """Fraction-free Bareiss determinant over the polynomial ring."""
    n = len(m)
    if n == 0:
        return ring.one()
    a = [row[:] for row in m]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return ring.zero()
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_quotient(num, prev) if num else ring.zero()
            a[i][k] = ring.zero()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def _degree_from_basis(system: EndoSystem, basis_gb: GroebnerBasis) -> GWClass:
    ring = system.ring
    n = ring.nvars
    mons = standard_monomials(basis_gb)
    if not mons:
        return empty_form(ring.field)
    index = {m.leading_monomial(): i for i, m in enumerate(mons)}
    dring = doubled_ring(ring)
    x_map = list(range(n))
    y_map = list(range(n, 2 * n))
    gx = [g.map_to(dring, x_map) for g in basis_gb.basis]
    gy = [g.map_to(dring, y_map) for g in basis_gb.basis]
    det = bezoutian_matrix(system).determinant()
    reduced = normal_form(normal_form(det, gx), gy)
    size = len(mons)
    zero = ring.field.zero()
    gram = [[zero] * size for _ in range(size)]
    for e, c in reduced.terms.items():
        xi = index.get(e[:n])
        yj = index.get(e[n:])
        if xi is None or yj is None:
            raise AssertionError(
                "reduced Bezoutian left the basis grid; reduction bug")
        gram[xi][yj] = c
    for i in range(size):
        for j in range(i + 1, size):
            if gram[i][j] != gram[j][i]:
                raise AssertionError("Bezoutian Gram matrix is not symmetric")
    return make_gw_class(gram, ring.field)


def global_a1_degree(system: EndoSystem) -> GWClass:
    """Gram matrix of the Bezoutian on the standard-monomial basis of Q(f)."""
    gb = groebner_basis(Ideal(system.ring, system.polys))
    return _degree_from_basis(system, gb)


def _local_ideal(system: EndoSystem, point: Ideal) -> Ideal:
    ring = system.ring
    if point.ring != ring:
        raise ValueError("polynomial ring mismatch")
    mgb = groebner_basis(point)
    for f in system.polys:
        if normal_form(f, mgb):
            raise ValueError("point not in zero locus")
    ideal = Ideal(ring, system.polys)
    away = saturation(ideal, point)
    return ideal_quotient(ideal, away)


def local_algebra_basis(system: EndoSystem, point: Ideal) -> LocalAlgebraBasis:
    """A basis of the local algebra at the point, via (I : (I : m^inf))."""
    local = _local_ideal(system, point)
    mons = standard_monomials(groebner_basis(local))
    return LocalAlgebraBasis(point, local, tuple(mons))


def local_a1_degree(system: EndoSystem, point: Ideal) -> GWClass:
    """Local degree: the global pipeline run against the local algebra."""
    local = _local_ideal(system, point)
    return _degree_from_basis(system, groebner_basis(local))
