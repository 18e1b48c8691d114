"""Affine and Euclidean geometry over a division ring.

Points and vectors of the n-dimensional space are coordinate tuples of
ring elements relative to a fixed basis and origin; abstract point
identity is coordinate identity.  The scalar convention is right-scalar
throughout (vectors multiply scalars from the right), matching the stored
transformation rule A'^i = sum_j A^j P[j][i] + R^i; passing hand="left"
to the transformation operations transposes every multiplication order,
which realizes the mirror convention concretely.

Matrix rank over the ring is computed by row elimination with left
multipliers, the elimination realization of the rank criterion for plane
membership.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import Algebra, Element, mul
from .errors import (
    DimensionMismatch,
    NotDivisionRing,
    NotInvertible,
    NotSingleTransitive,
    SingularLinearPart,
)
from .forms import BilinearMatrix, eval_bilinear
from .omega import FiniteOmegaAlgebra, Representation, one_and_only_one

Point = tuple
Vector = tuple


def _astuple(items, n=None) -> tuple:
    t = tuple(items)
    if n is not None and len(t) != n:
        raise DimensionMismatch(f"expected {n} coordinates, got {len(t)}")
    return t


@dataclass(frozen=True)
class AffineSpace:
    """D^n with componentwise vector addition and right scalar action."""

    algebra: Algebra
    n: int

    def point(self, coords) -> Point:
        return _astuple((self.algebra.element(c) if not isinstance(c, Element) else c
                         for c in coords), self.n)

    vector = point

    @property
    def zero_vector(self) -> Vector:
        return tuple(self.algebra.zero for _ in range(self.n))

    def add_vectors(self, u: Vector, v: Vector) -> Vector:
        if len(u) != len(v):
            raise DimensionMismatch("vector lengths differ")
        return tuple(a + b for a, b in zip(u, v))

    def scale_vector(self, v: Vector, d: Element, hand: str = "right") -> Vector:
        if hand == "right":
            return tuple(mul(c, d) for c in v)
        return tuple(mul(d, c) for c in v)


def shift(point: Point, vector: Vector) -> Point:
    """Parallel shift: componentwise sum of point and vector coordinates."""
    if len(point) != len(vector):
        raise DimensionMismatch("point and vector dimensions differ")
    return tuple(p + v for p, v in zip(point, vector))


def vec_between(a: Point, b: Point) -> Vector:
    """The unique vector with shift(a, v) == b."""
    if len(a) != len(b):
        raise DimensionMismatch("point dimensions differ")
    return tuple(q - p for p, q in zip(a, b))


# ---------------------------------------------------------------------------
# matrices over the ring


def matrix_mul(a, b, hand: str = "right"):
    """Product of element matrices; (a b)[r][c] = sum_k a[r][k] b[k][c]
    with factors swapped under the left-hand convention."""
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            acc = None
            for k in range(inner):
                term = mul(a[r][k], b[k][c]) if hand == "right" else mul(b[k][c], a[r][k])
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def identity_matrix(alg: Algebra, n: int):
    return tuple(
        tuple(alg.unit if r == c else alg.zero for c in range(n)) for r in range(n)
    )


def nc_rank(rows: Sequence[Sequence[Element]]) -> int:
    """Rank by row elimination with left multipliers.

    Pivots are the first nonzero entry scanning columns left to right; each
    pivot row is normalized by a left inverse and cleared downward with
    row_s <- row_s - d row_r.  A nonzero entry without an inverse aborts
    with NotDivisionRing.
    """
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        pr = None
        for r in range(rank, len(work)):
            if not work[r][c].is_zero():
                pr = r
                break
        if pr is None:
            continue
        work[rank], work[pr] = work[pr], work[rank]
        try:
            inv = work[rank][c].inverse()
        except NotInvertible as exc:
            raise NotDivisionRing(str(exc)) from exc
        work[rank] = [mul(inv, x) for x in work[rank]]
        for r in range(len(work)):
            if r != rank and not work[r][c].is_zero():
                d = work[r][c]
                work[r] = [x - mul(d, y) for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def invert_matrix(m, hand: str = "right"):
    """Two-sided inverse over the ring, or SingularLinearPart.

    Elimination uses left multipliers under the right-hand convention and
    right multipliers under the left-hand one.
    """
    n = len(m)
    alg = m[0][0].algebra
    work = [list(row) + list(identity_matrix(alg, n)[r]) for r, row in enumerate(m)]

    def lmul(d, x):
        return mul(d, x) if hand == "right" else mul(x, d)

    rank = 0
    for c in range(n):
        pr = next((r for r in range(rank, n) if not work[r][c].is_zero()), None)
        if pr is None:
            raise SingularLinearPart("matrix has no inverse over the ring")
        work[rank], work[pr] = work[pr], work[rank]
        try:
            inv = work[rank][c].inverse()
        except NotInvertible as exc:
            raise SingularLinearPart(str(exc)) from exc
        work[rank] = [lmul(inv, x) for x in work[rank]]
        for r in range(n):
            if r != rank and not work[r][c].is_zero():
                d = work[r][c]
                work[r] = [x - lmul(d, y) for x, y in zip(work[r], work[rank])]
        rank += 1
    out = tuple(tuple(work[r][n:]) for r in range(n))
    check = matrix_mul(m, out, hand)
    if check != identity_matrix(alg, n):
        raise SingularLinearPart("one-sided inverse only")
    return out


# ---------------------------------------------------------------------------
# affine transformations


@dataclass(frozen=True)
class AffineMap:
    """A'^i = sum_j A^j P[j][i] + R^i (right-hand convention).

    The linear part must have full rank over the ring; this is checked at
    construction so the affine maps form a group.
    """

    linear: tuple
    shift: tuple
    hand: str = "right"

    def __init__(self, linear, shift, hand="right", _checked=False):
        linear = tuple(tuple(row) for row in linear)
        shift = tuple(shift)
        n = len(linear)
        if any(len(row) != n for row in linear) or len(shift) != n:
            raise DimensionMismatch("linear part must be n x n with an n-shift")
        if hand not in ("right", "left"):
            raise ValueError("hand must be 'right' or 'left'")
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "hand", hand)
        if not _checked and nc_rank(linear) != n:
            raise SingularLinearPart("linear part is singular")

    @property
    def n(self) -> int:
        return len(self.shift)

    @property
    def algebra(self) -> Algebra:
        return self.shift[0].algebra


def identity_map(alg: Algebra, n: int, hand: str = "right") -> AffineMap:
    return AffineMap(identity_matrix(alg, n),
                     tuple(alg.zero for _ in range(n)), hand)


def apply_affine(m: AffineMap, point: Point) -> Point:
    if len(point) != m.n:
        raise DimensionMismatch("point dimension differs from the map")
    out = []
    for i in range(m.n):
        acc = m.shift[i]
        for j in range(m.n):
            term = (mul(point[j], m.linear[j][i]) if m.hand == "right"
                    else mul(m.linear[j][i], point[j]))
            acc = acc + term
        out.append(acc)
    return tuple(out)


def compose_affine(m1: AffineMap, m2: AffineMap) -> AffineMap:
    """The map acting as m1 followed by m2: (P Q, R Q + S)."""
    if m1.n != m2.n or m1.hand != m2.hand:
        raise DimensionMismatch("maps are not composable")
    hand = m1.hand
    linear = matrix_mul(m1.linear, m2.linear, hand)
    shifted = apply_linear(m2, m1.shift)
    new_shift = tuple(a + b for a, b in zip(shifted, m2.shift))
    return AffineMap(linear, new_shift, hand, _checked=True)


def apply_linear(m: AffineMap, vector: Vector) -> Vector:
    """Linear part only; used for vectors, which ignore the displacement."""
    out = []
    for i in range(m.n):
        acc = None
        for j in range(m.n):
            term = (mul(vector[j], m.linear[j][i]) if m.hand == "right"
                    else mul(m.linear[j][i], vector[j]))
            acc = term if acc is None else acc + term
        out.append(acc)
    return tuple(out)


def inverse_affine(m: AffineMap) -> AffineMap:
    """The group inverse: composing either way gives the identity."""
    pinv = invert_matrix(m.linear, m.hand)
    minus = tuple(-x for x in m.shift)
    tmp = AffineMap(pinv, tuple(m.algebra.zero for _ in range(m.n)), m.hand,
                    _checked=True)
    new_shift = apply_linear(tmp, minus)
    return AffineMap(pinv, new_shift, m.hand, _checked=True)


# ---------------------------------------------------------------------------
# planes


@dataclass(frozen=True)
class Plane:
    """A plane through `anchor` spanned by independent direction vectors."""

    anchor: tuple
    span: tuple

    def __init__(self, anchor, span):
        anchor = tuple(anchor)
        span = tuple(tuple(v) for v in span)
        if any(len(v) != len(anchor) for v in span):
            raise DimensionMismatch("span vectors must match point dimension")
        k = len(span)
        if k:
            cols = _column_matrix(span)
            if nc_rank(cols) != k:
                raise DimensionMismatch("span vectors are dependent")
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "span", span)


def _column_matrix(vectors):
    n = len(vectors[0])
    return [[v[r] for v in vectors] for r in range(n)]


def plane_contains(plane: Plane, point: Point) -> bool:
    """Membership through the rank criterion: appending the difference
    column must not raise the rank of the span columns."""
    diff = vec_between(plane.anchor, point)
    k = len(plane.span)
    if k == 0:
        return all(d.is_zero() for d in diff)
    cols = _column_matrix(plane.span + (diff,))
    return nc_rank(cols) == k


# ---------------------------------------------------------------------------
# scalar products on D^n


@dataclass(frozen=True)
class VectorScalarProduct:
    """Diagonal family of ring-valued products, one per axis.

    Off-axis products are zero; g(v, w) = sum_i axis[i](v^i, w^i) with each
    axis product a bilinear form on the ring (variables are the rational
    coordinates of the arguments).
    """

    axes: tuple

    def __init__(self, axes: Sequence[BilinearMatrix]):
        axes = tuple(axes)
        if not axes:
            raise DimensionMismatch("need at least one axis product")
        dim = axes[0].var_count
        alg = axes[0].algebra
        for g in axes:
            if g.var_count != dim or g.algebra != alg:
                raise DimensionMismatch("axis products disagree on the ring")
        object.__setattr__(self, "axes", axes)

    @property
    def n(self) -> int:
        return len(self.axes)

    @property
    def algebra(self) -> Algebra:
        return self.axes[0].algebra


def euclidean_product(alg: Algebra, n: int) -> VectorScalarProduct:
    """Per-axis product polarized from the sum-of-squares metric on the ring."""
    dim = alg.dim
    grid = [
        [alg.unit if a == b else alg.zero for b in range(dim)] for a in range(dim)
    ]
    axis = BilinearMatrix(grid)
    return VectorScalarProduct([axis] * n)


def eval_vector_product(g: VectorScalarProduct, v: Vector, w: Vector) -> Element:
    if len(v) != g.n or len(w) != g.n:
        raise DimensionMismatch("vector dimension differs from the product")
    acc = g.algebra.zero
    for axis, vi, wi in zip(g.axes, v, w):
        acc = acc + eval_bilinear(axis, vi.coords, wi.coords)
    return acc


def is_orthonormal(g: VectorScalarProduct, basis: Sequence[Vector]) -> bool:
    """Unit length on each vector, zero product across distinct vectors."""
    if len(basis) != g.n:
        return False
    unit = g.algebra.unit
    zero = g.algebra.zero
    for a, va in enumerate(basis):
        for b, vb in enumerate(basis):
            want = unit if a == b else zero
            if eval_vector_product(g, va, vb) != want:
                return False
    return True


def preserves_form(m: AffineMap, g: VectorScalarProduct) -> bool:
    """g(Pv, Pw) == g(v, w), checked on all basis-vector pairs.

    Bilinearity over the rationals does not reduce arbitrary arguments to
    basis pairs here, because the axis products are only rational-bilinear
    in ring coordinates; the basis of the check is every pair e_r x, e_s y
    with x, y running over the ring basis.
    """
    alg = g.algebra
    if any(not x.is_zero() for x in m.shift):
        return False
    for r in range(g.n):
        for s in range(g.n):
            for x in range(alg.dim):
                for y in range(alg.dim):
                    v = tuple(
                        alg.basis_element(x) if t == r else alg.zero
                        for t in range(g.n)
                    )
                    w = tuple(
                        alg.basis_element(y) if t == s else alg.zero
                        for t in range(g.n)
                    )
                    lhs = eval_vector_product(g, apply_linear(m, v), apply_linear(m, w))
                    if lhs != eval_vector_product(g, v, w):
                        return False
    return True


# ---------------------------------------------------------------------------
# transfer of structure along a single transitive representation


def transfer_structure(rep: Representation, origin) -> FiniteOmegaAlgebra:
    """Induce the acting algebra's operations on the acted set.

    Requires single transitivity; each point m factors uniquely as an actor
    applied to `origin`, and

        omega(m_1, .., m_p) := act(omega(a_1, .., a_p), origin)

    with a_t the factor of m_t.  The result genuinely depends on the
    chosen origin.
    """
    if not one_and_only_one(rep):
        raise NotSingleTransitive("representation is not single transitive")
    factor = {}
    for a in rep.acting.carrier:
        factor[rep.act(a, origin)] = a
    tables = {}
    for op, arity in rep.acting.signature.ops:
        tables[op] = {
            args: rep.act(
                rep.acting.apply(op, [factor[m] for m in args]), origin
            )
            for args in itertools.product(rep.acted.carrier, repeat=arity)
        }
    return FiniteOmegaAlgebra(
        rep.acted.carrier,
        rep.acting.signature,
        tables,
        name=f"transferred({origin!r})",
        carrier_bound=max(len(rep.acted.carrier), 1),
    )
