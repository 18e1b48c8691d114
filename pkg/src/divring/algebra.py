"""Finite-dimensional algebras over the rationals given by structural constants.

An algebra of dimension n is stored as the rank-3 tensor C[i][j][k] with
basis products e_i e_j = sum_k C[i][j][k] e_k.  Scalars are exact rationals
(fractions.Fraction), so every operation in this module is exact.  The
associativity constraint on C and the two-sided unit are validated eagerly
at construction: an invalid table never circulates.

Normally the unit is a basis vector (`unit_index`); after an arbitrary
change of basis it becomes a rational combination of basis vectors, which
is stored as explicit `unit_coords` instead.

The built-in tables cover the rationals themselves (dim 1), the Gaussian
rationals (dim 2) and the rational quaternions (dim 4), which are the
division rings exercised throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import ratlin
from .errors import (
    AlgebraMismatch,
    AssociativityViolation,
    NotInvertible,
    SingularBasisChange,
    UnitViolation,
    ZeroElement,
)

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Algebra:
    """An associative unital algebra over Q defined by structural constants.

    Immutable after construction.  `constants[i][j][k]` is the e_k
    coefficient of the product e_i e_j.  `unit_index` names the basis
    vector acting as the two-sided unit; when the unit is not a basis
    vector (possible after a basis change) it is None and `unit_coords`
    holds the unit element's coordinates.
    """

    __slots__ = ("dim", "constants", "unit_index", "unit_coords", "name", "_pair_rows")

    def __init__(self, dim, constants, unit_index=0, unit_coords=None, name=None):
        if dim <= 0:
            raise ValueError("dimension must be positive")
        tensor = tuple(
            tuple(tuple(Fraction(x) for x in row) for row in plane)
            for plane in constants
        )
        if len(tensor) != dim or any(
            len(p) != dim or any(len(r) != dim for r in p) for p in tensor
        ):
            raise ValueError("constants tensor must be dim x dim x dim")
        self.dim = dim
        self.constants = tensor
        if unit_coords is None:
            if not 0 <= unit_index < dim:
                raise ValueError("unit index out of range")
            unit_coords = tuple(
                _ONE if i == unit_index else _ZERO for i in range(dim)
            )
            self.unit_index = unit_index
        else:
            unit_coords = tuple(Fraction(x) for x in unit_coords)
            if len(unit_coords) != dim:
                raise ValueError("unit coordinates have wrong length")
            self.unit_index = _delta_index(unit_coords)
        self.unit_coords = unit_coords
        self.name = name
        # sparse rows: (i, j) -> tuple of (k, C[i][j][k]) over nonzero c
        self._pair_rows = {
            (i, j): tuple((k, tensor[i][j][k]) for k in range(dim) if tensor[i][j][k])
            for i in range(dim)
            for j in range(dim)
        }
        self._validate_unit()
        self._validate_associativity()

    # -- validation ----------------------------------------------------------

    def _validate_unit(self):
        n = self.dim
        u = self.unit_coords
        for j in range(n):
            left = [_ZERO] * n
            right = [_ZERO] * n
            for i in range(n):
                if u[i]:
                    for k, c in self._pair_rows[(i, j)]:
                        left[k] += u[i] * c
                    for k, c in self._pair_rows[(j, i)]:
                        right[k] += u[i] * c
            delta = [_ONE if k == j else _ZERO for k in range(n)]
            if left != delta or right != delta:
                raise UnitViolation(f"stored unit does not fix basis vector {j}")

    def _validate_associativity(self):
        # (e_i e_m) e_n = e_i (e_m e_n), i.e. for every (i, m, n, k):
        # sum_j C[i][m][j] C[j][n][k] = sum_j C[m][n][j] C[i][j][k]
        n = self.dim
        for i in range(n):
            for m in range(n):
                for nn in range(n):
                    left = [_ZERO] * n
                    right = [_ZERO] * n
                    for j, c in self._pair_rows[(i, m)]:
                        for k, d in self._pair_rows[(j, nn)]:
                            left[k] += c * d
                    for j, c in self._pair_rows[(m, nn)]:
                        for k, d in self._pair_rows[(i, j)]:
                            right[k] += c * d
                    for k in range(n):
                        if left[k] != right[k]:
                            raise AssociativityViolation(i, m, nn, k)

    # -- elements --------------------------------------------------------------

    def element(self, coords: Iterable) -> "Element":
        return Element(self, coords)

    def basis_element(self, i: int) -> "Element":
        return Element(self, [_ONE if j == i else _ZERO for j in range(self.dim)])

    @property
    def zero(self) -> "Element":
        return Element(self, [_ZERO] * self.dim)

    @property
    def unit(self) -> "Element":
        return Element(self, self.unit_coords)

    def scalar(self, q) -> "Element":
        """The central element q * unit."""
        q = Fraction(q)
        return Element(self, [q * c for c in self.unit_coords])

    def basis(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    # -- misc --------------------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.unit_coords == other.unit_coords
            and self.constants == other.constants
        )

    def __hash__(self):
        return hash((self.dim, self.unit_coords, self.constants))

    def __repr__(self):
        label = self.name or f"dim-{self.dim}"
        return f"Algebra({label})"


def _delta_index(coords) -> Optional[int]:
    hits = [i for i, c in enumerate(coords) if c != 0]
    if len(hits) == 1 and coords[hits[0]] == 1:
        return hits[0]
    return None


@dataclass(frozen=True)
class Element:
    """An element of an Algebra, held as exact rational coordinates."""

    algebra: Algebra
    coords: tuple

    def __init__(self, algebra, coords):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in coords))
        if len(self.coords) != algebra.dim:
            raise ValueError("coordinate length does not match algebra dimension")

    def _check(self, other: "Element"):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatch("elements live in different algebras")

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        # rationals are central, so scaling from the left is the same
        return self.scale(other)

    def scale(self, q) -> "Element":
        q = Fraction(q)
        return Element(self.algebra, [q * a for a in self.coords])

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def rational_part(self) -> Optional[Fraction]:
        """The Fraction q with self == q * unit, or None."""
        alg = self.algebra
        for q in set(
            self.coords[i] / alg.unit_coords[i]
            for i in range(alg.dim)
            if alg.unit_coords[i]
        ):
            if all(
                self.coords[i] == q * alg.unit_coords[i] for i in range(alg.dim)
            ):
                return q
        return None

    def inverse(self) -> "Element":
        return inverse(self)

    def __repr__(self):
        return f"Element({list(self.coords)})"


def build_algebra(dim, constants, unit_index=0, name=None) -> Algebra:
    """Validate a structural-constant table and return the algebra.

    Raises AssociativityViolation or UnitViolation when the table is not a
    valid unital associative algebra.
    """
    return Algebra(dim, constants, unit_index, name=name)


def mul(a: Element, b: Element) -> Element:
    """Product via the structural constants, coords_k = sum C[i][j][k] a_i b_j."""
    a._check(b)
    alg = a.algebra
    out = [_ZERO] * alg.dim
    rows = alg._pair_rows
    for i, ai in enumerate(a.coords):
        if not ai:
            continue
        for j, bj in enumerate(b.coords):
            if not bj:
                continue
            f = ai * bj
            for k, c in rows[(i, j)]:
                out[k] += f * c
    return Element(alg, out)


def left_regular_matrix(a: Element) -> list[list[Fraction]]:
    """Matrix of x -> a*x over the rationals; column j holds coords of a*e_j."""
    alg = a.algebra
    n = alg.dim
    m = [[_ZERO] * n for _ in range(n)]
    for j in range(n):
        col = mul(a, alg.basis_element(j)).coords
        for k in range(n):
            m[k][j] = col[k]
    return m


def inverse(a: Element) -> Element:
    """Two-sided inverse of a.

    Solves the left-regular linear system a*x = unit over Q and verifies
    x*a = unit; the verification matters because the algebra need not be a
    division ring.
    """
    if a.is_zero():
        raise ZeroElement("zero has no inverse")
    alg = a.algebra
    sol = ratlin.solve(left_regular_matrix(a), list(alg.unit_coords))
    if sol is None or sol[1] != 0:
        raise NotInvertible("left-regular matrix is singular")
    x = Element(alg, sol[0])
    if mul(x, a) != alg.unit:
        raise NotInvertible("left inverse is not a right inverse")
    return x


def is_central(a: Element) -> bool:
    """True iff a commutes with every basis vector (hence with everything)."""
    alg = a.algebra
    return all(
        mul(a, e) == mul(e, a) for e in (alg.basis_element(i) for i in range(alg.dim))
    )


class BasisChange:
    """An invertible rational basis change.

    Row i of `matrix` holds the old-basis coordinates of the new basis
    vector e'_i.  The inverse matrix is computed once and cached.
    """

    __slots__ = ("matrix", "inverse")

    def __init__(self, matrix: Sequence[Sequence]):
        self.matrix = ratlin.mat(matrix)
        if any(len(row) != len(self.matrix) for row in self.matrix):
            raise ValueError("basis-change matrix must be square")
        inv = ratlin.invert(self.matrix)
        if inv is None:
            raise SingularBasisChange("basis-change matrix is singular")
        self.inverse = inv

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def compose(self, other: "BasisChange") -> "BasisChange":
        """First change by self, then by other (stated relative to self's basis)."""
        return BasisChange(ratlin.mat_mul(other.matrix, self.matrix))


def change_basis(alg: Algebra, bc: BasisChange) -> Algebra:
    """Structural constants in the new basis e'_i = sum_j matrix[i][j] e_j.

    C'[i][j][l] = sum_{p,q,k} M[i][p] M[j][q] C[p][q][k] Minv[k][l].  The
    result is validated again, which doubles as a tensor-law check.  The
    unit element generally stops being a basis vector, in which case the
    returned algebra carries explicit unit coordinates.
    """
    if bc.dim != alg.dim:
        raise ValueError("basis change has wrong dimension")
    n = alg.dim
    m = bc.matrix
    minv = bc.inverse
    new = [[[_ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            prod = [_ZERO] * n
            for p in range(n):
                mip = m[i][p]
                if not mip:
                    continue
                for q in range(n):
                    f = mip * m[j][q]
                    if not f:
                        continue
                    for k, c in alg._pair_rows[(p, q)]:
                        prod[k] += f * c
            for k in range(n):
                if prod[k]:
                    row = minv[k]
                    for el in range(n):
                        if row[el]:
                            new[i][j][el] += prod[k] * row[el]
    unit_new = [
        sum(alg.unit_coords[j] * minv[j][i] for j in range(n)) for i in range(n)
    ]
    return Algebra(n, new, unit_coords=unit_new)


def transform_vector(a: Element, bc: BasisChange, target: Optional[Algebra] = None) -> Element:
    """New coordinates of a fixed element after the basis change.

    `target` is the algebra in the new basis as produced by change_basis;
    when omitted the coordinates are rehoused in the original algebra
    object (useful when only the number tuple matters).
    """
    if bc.dim != a.algebra.dim:
        raise ValueError("basis change has wrong dimension")
    n = bc.dim
    # old row vector = new row vector . matrix, hence new = old . inverse
    new = [
        sum(a.coords[j] * bc.inverse[j][i] for j in range(n)) for i in range(n)
    ]
    return Element(target if target is not None else a.algebra, new)


# ---------------------------------------------------------------------------
# built-in algebras


def _table(dim, entries):
    c = [[[_ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j, k), v in entries.items():
        c[i][j][k] = Fraction(v)
    return c


@lru_cache(maxsize=None)
def rational_algebra() -> Algebra:
    """Q itself as a one-dimensional algebra."""
    return Algebra(1, _table(1, {(0, 0, 0): 1}), 0, name="rational")


@lru_cache(maxsize=None)
def complex_algebra() -> Algebra:
    """The Gaussian rationals Q(i), basis (1, i)."""
    entries = {
        (0, 0, 0): 1,
        (0, 1, 1): 1,
        (1, 0, 1): 1,
        (1, 1, 0): -1,
    }
    return Algebra(2, _table(2, entries), 0, name="complex")


@lru_cache(maxsize=None)
def quaternion_algebra() -> Algebra:
    """Rational quaternions, basis (1, i, j, k).

    i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j and the anti-commuting
    mirror products.
    """
    entries = {
        (0, 0, 0): 1,
        (0, 1, 1): 1,
        (0, 2, 2): 1,
        (0, 3, 3): 1,
        (1, 0, 1): 1,
        (2, 0, 2): 1,
        (3, 0, 3): 1,
        (1, 1, 0): -1,
        (2, 2, 0): -1,
        (3, 3, 0): -1,
        (1, 2, 3): 1,
        (2, 1, 3): -1,
        (2, 3, 1): 1,
        (3, 2, 1): -1,
        (3, 1, 2): 1,
        (1, 3, 2): -1,
    }
    return Algebra(4, _table(4, entries), 0, name="quaternion")


BUILTIN_ALGEBRAS = {
    "rational": rational_algebra,
    "complex": complex_algebra,
    "quaternion": quaternion_algebra,
}
