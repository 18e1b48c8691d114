"""Polynomial coordinate changes, connections and covariant derivatives.

Everything is restricted to polynomial charts so that directional
derivatives are exact positional sums; no numerical differentiation
appears anywhere.  Linear charts are inverted automatically over the ring;
nonlinear charts need a user-supplied polynomial inverse.

Sign conventions.  The source texts carry two incompatible signs relating
a connection to parallel transport: under the "8.2" convention a field is
parallel when Gamma(v)(a) + dv(a) = 0 and that is the convention under
which the chart-induced coefficients make constant flat fields parallel
and straight flat lines geodesic; under the "9.1" convention the defining
equations read dv(a) = Gamma(v)(a) and D(v)(a) = dv(a) - Gamma(v)(a).
Residual operations default to "8.2" and the covariant derivative to the
literal "9.1" formula; every operation accepts sign="8.2"|"9.1" to flip.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import ratlin
from .algebra import Algebra, Element, mul
from .errors import NoInverseChart
from .ncpoly import NCPoly, gateaux, gateaux2
from functools import lru_cache

_SIGNS = ("8.2", "9.1")


def _check_sign(sign: str):
    if sign not in _SIGNS:
        raise ValueError(f"sign convention must be one of {_SIGNS}")


class Chart:
    """A polynomial coordinate transformation x' = g(x) on D^n.

    `components` map old coordinates to new ones; `inverse`, when present,
    maps back and both compositions are verified to normalize to the
    identity tuple.  Charts whose components are affine in the variables
    are inverted automatically when no inverse is supplied.
    """

    __slots__ = ("algebra", "n", "components", "inverse")

    def __init__(self, components: Sequence[NCPoly],
                 inverse: Optional[Sequence[NCPoly]] = None,
                 auto_invert: bool = True):
        components = tuple(components)
        if not components:
            raise ValueError("chart needs at least one component")
        alg = components[0].algebra
        n = len(components)
        for c in components:
            if c.algebra != alg or c.nvars != n:
                raise ValueError("components must share the ring and arity")
        self.algebra = alg
        self.n = n
        self.components = components
        if inverse is None and auto_invert and all(
            c.degree() <= 1 for c in components
        ):
            inverse = _invert_affine_components(components)
        if inverse is not None:
            inverse = tuple(inverse)
            if len(inverse) != n or any(
                c.algebra != alg or c.nvars != n for c in inverse
            ):
                raise NoInverseChart("inverse has wrong shape")
            idp = _identity_polys(alg, n)
            fwd_then_back = tuple(c.substitute(inverse) for c in self.components)
            back_then_fwd = tuple(c.substitute(self.components) for c in inverse)
            if fwd_then_back != idp or back_then_fwd != idp:
                raise NoInverseChart("compositions do not normalize to the identity")
        self.inverse = inverse

    def require_inverse(self) -> tuple:
        if self.inverse is None:
            raise NoInverseChart("chart has no polynomial inverse")
        return self.inverse

    def forward(self, x: Sequence[Element]) -> tuple:
        return tuple(c.evaluate(list(x)) for c in self.components)

    def backward(self, xp: Sequence[Element]) -> tuple:
        return tuple(c.evaluate(list(xp)) for c in self.require_inverse())


def _identity_polys(alg: Algebra, n: int) -> tuple:
    return tuple(NCPoly.var(alg, n, v) for v in range(n))


@lru_cache(maxsize=None)
def _sandwich_matrix(alg: Algebra):
    """Rows (r, s), columns (p, q): coordinate r of e_p e_s e_q.

    Inverting this system expresses an arbitrary rational-linear map of
    the ring as sum_pq T[p][q] e_p h e_q, which is how inverse Jacobian
    blocks become polynomials again.
    """
    m = alg.dim
    basis = alg.basis()
    rows = []
    for r in range(m):
        for s in range(m):
            row = []
            for p in range(m):
                for q in range(m):
                    row.append(mul(mul(basis[p], basis[s]), basis[q]).coords[r])
            rows.append(row)
    return rows


def _invert_affine_components(components: Sequence[NCPoly]) -> Optional[tuple]:
    """Solve for the inverse of an affine polynomial tuple.

    The forward map is y_j = L_j(x) + t_j with L_j linear over the
    rationals in the ring coordinates of x.  The big rational Jacobian is
    inverted and each block of the inverse is re-expressed in sandwich
    form; failure at any step simply leaves the chart without an inverse.
    """
    alg = components[0].algebra
    n = len(components)
    m = alg.dim
    zero = [alg.zero] * n
    t = [c.evaluate(zero) for c in components]
    big = [[Fraction(0)] * (n * m) for _ in range(n * m)]
    for v in range(n):
        for s in range(m):
            probe = list(zero)
            probe[v] = alg.basis_element(s)
            for j, c in enumerate(components):
                w = c.evaluate(probe) - t[j]
                for r in range(m):
                    big[j * m + r][v * m + s] = w.coords[r]
    binv = ratlin.invert(big)
    if binv is None:
        return None
    sandwich = _sandwich_matrix(alg)
    basis = alg.basis()
    out = []
    for v in range(n):
        poly = NCPoly.zero(alg, n)
        for j in range(n):
            rhs = [
                binv[v * m + r][j * m + s] for r in range(m) for s in range(m)
            ]
            sol = ratlin.solve(sandwich, rhs)
            if sol is None:
                return None
            coeffs = sol[0]
            arg = NCPoly.var(alg, n, j) - NCPoly.const(alg, n, t[j])
            for p in range(m):
                for q in range(m):
                    cpq = coeffs[p * m + q]
                    if cpq:
                        poly = poly + (
                            NCPoly.const(alg, n, basis[p])
                            * arg
                            * NCPoly.const(alg, n, basis[q])
                        ).scale(cpq)
        out.append(poly)
    return tuple(out)


# ---------------------------------------------------------------------------
# vector and 1-form transport


def pushforward_vector(chart: Chart, xp: Sequence[Element],
                       vp: Sequence[Element]) -> tuple:
    """Old-coordinate components of a vector given in new coordinates:
    v^j = d(inverse^j) at x' in direction v'."""
    inverse = chart.require_inverse()
    return tuple(gateaux(c, list(xp), list(vp)) for c in inverse)


def pushforward_oneform(chart: Chart, x: Sequence[Element]) -> tuple:
    """The n x n family of linear maps dx'^i/dx^j at x.

    Entry (i, j) is a one-variable polynomial in the increment h: the
    derivative of forward component i at x in the direction that puts h in
    slot j and zero elsewhere.
    """
    alg = chart.algebra
    n = chart.n
    rows = []
    for i in range(n):
        comp = chart.components[i]
        row = []
        for j in range(n):
            row.append(_directional_poly(comp, list(x), j))
        rows.append(tuple(row))
    return tuple(rows)


def _directional_poly(f: NCPoly, x: Sequence[Element], slot: int) -> NCPoly:
    """d f at the point x, in the direction with a formal h in one slot,
    as a polynomial in the single variable h."""
    alg = f.algebra
    basis = alg.basis()
    h = NCPoly.var(alg, 1, 0)
    acc = NCPoly.zero(alg, 1)
    for (vars_, bs), coeff in f.terms.items():
        for p, v in enumerate(vars_):
            if v != slot:
                continue
            cur = NCPoly.const(alg, 1, basis[bs[0]])
            for pos, var in enumerate(vars_):
                step = h if pos == p else NCPoly.const(alg, 1, x[var])
                cur = cur * step * NCPoly.const(alg, 1, basis[bs[pos + 1]])
            acc = acc + cur.scale(coeff)
    return acc


def apply_oneform(matrix, increments: Sequence[Element]) -> tuple:
    """Apply a pushforward_oneform family to an increment vector."""
    return tuple(
        sum(
            (row[j].evaluate([increments[j]]) for j in range(len(row))),
            row[0].algebra.zero,
        )
        for row in matrix
    )


# ---------------------------------------------------------------------------
# connections


class ConnectionCoefficients:
    """Bilinear connection coefficients at each point of a chart.

    Internally a callable (point, v, a) -> vector plus enough structure to
    report per-index coefficients.  Chart-induced coefficients follow the
    flat-source transformation rule

        Gamma'^p(v')(a') = d(forward^p) at x applied to w,
        w^r = d2(inverse^r) at x' in directions (v', a'),

    which vanishes identically for affine charts.
    """

    __slots__ = ("algebra", "n", "_apply", "kind")

    def __init__(self, algebra: Algebra, n: int, apply_fn: Callable, kind: str):
        self.algebra = algebra
        self.n = n
        self._apply = apply_fn
        self.kind = kind

    @staticmethod
    def zero(algebra: Algebra, n: int) -> "ConnectionCoefficients":
        z = tuple(algebra.zero for _ in range(n))

        def apply_fn(xp, v, a):
            return z

        return ConnectionCoefficients(algebra, n, apply_fn, "zero")

    @staticmethod
    def from_chart(chart: Chart) -> "ConnectionCoefficients":
        inverse = chart.require_inverse()

        def apply_fn(xp, v, a):
            xp = list(xp)
            w = [gateaux2(c, xp, list(v), list(a)) for c in inverse]
            x = [c.evaluate(xp) for c in inverse]
            return tuple(gateaux(c, x, w) for c in chart.components)

        return ConnectionCoefficients(chart.algebra, chart.n, apply_fn, "chart")

    @staticmethod
    def from_component_polys(algebra: Algebra, n: int,
                             polys) -> "ConnectionCoefficients":
        """polys[k][j][i] is a two-variable polynomial (slot 0 takes v^i,
        slot 1 takes a^j) or None for a zero coefficient."""

        def apply_fn(xp, v, a):
            out = []
            for k in range(n):
                acc = algebra.zero
                for j in range(n):
                    for i in range(n):
                        p = polys[k][j][i]
                        if p is not None:
                            acc = acc + p.evaluate([v[i], a[j]])
                out.append(acc)
            return tuple(out)

        return ConnectionCoefficients(algebra, n, apply_fn, "components")

    def apply(self, xp: Sequence[Element], v: Sequence[Element],
              a: Sequence[Element]) -> tuple:
        return self._apply(tuple(xp), tuple(v), tuple(a))

    def coefficient(self, xp: Sequence[Element], k: int, j: int, i: int,
                    u: Element, w: Element) -> Element:
        """Gamma^k_{ji}(u)(w) at xp: u rides slot i, w rides slot j."""
        zero = self.algebra.zero
        v = tuple(u if t == i else zero for t in range(self.n))
        a = tuple(w if t == j else zero for t in range(self.n))
        return self.apply(xp, v, a)[k]


def chart_connection(chart: Chart) -> ConnectionCoefficients:
    return ConnectionCoefficients.from_chart(chart)


# ---------------------------------------------------------------------------
# transported fields, parallel and geodesic residuals


def express_constant_field(chart: Chart, w: Sequence[Element]) -> tuple:
    """Component polynomials, in new coordinates, of the field that is
    constantly w in the old coordinates: v'^p(x') = d(forward^p) at
    x(x') in direction w."""
    alg = chart.algebra
    n = chart.n
    inverse = chart.require_inverse()
    out = []
    for comp in chart.components:
        acc = NCPoly.zero(alg, n)
        basis = alg.basis()
        for (vars_, bs), coeff in comp.terms.items():
            for p, v in enumerate(vars_):
                cur = NCPoly.const(alg, n, basis[bs[0]])
                for pos, var in enumerate(vars_):
                    step = (
                        NCPoly.const(alg, n, w[var])
                        if pos == p
                        else inverse[var]
                    )
                    cur = cur * step * NCPoly.const(alg, n, basis[bs[pos + 1]])
                acc = acc + cur.scale(coeff)
        out.append(acc)
    return tuple(out)


def _field_values(field: Sequence[NCPoly], xp: Sequence[Element]) -> list:
    return [f.evaluate(list(xp)) for f in field]


def parallel_residual(gamma: ConnectionCoefficients, field: Sequence[NCPoly],
                      xp: Sequence[Element], a: Sequence[Element],
                      sign: str = "8.2") -> tuple:
    """Defect of the parallel-transport equation at one point/direction."""
    _check_sign(sign)
    v = _field_values(field, xp)
    gv = gamma.apply(xp, v, a)
    dv = [gateaux(f, list(xp), list(a)) for f in field]
    if sign == "8.2":
        return tuple(g + d for g, d in zip(gv, dv))
    return tuple(d - g for d, g in zip(dv, gv))


def covariant_derivative(gamma: ConnectionCoefficients, field: Sequence[NCPoly],
                         xp: Sequence[Element], a: Sequence[Element],
                         sign: str = "9.1") -> tuple:
    """dv(a) -/+ Gamma(v)(a); the default is the literal derivative-minus-
    connection form, the "8.2" flag flips the connection sign."""
    _check_sign(sign)
    v = _field_values(field, xp)
    gv = gamma.apply(xp, v, a)
    dv = [gateaux(f, list(xp), list(a)) for f in field]
    if sign == "9.1":
        return tuple(d - g for d, g in zip(dv, gv))
    return tuple(d + g for d, g in zip(dv, gv))


def geodesic_residual(gamma: ConnectionCoefficients, path: Sequence[NCPoly],
                      t0: Element, dt: Element, sign: str = "8.2") -> tuple:
    """Defect of the geodesic equation for a one-parameter polynomial path."""
    _check_sign(sign)
    if any(p.nvars != 1 for p in path):
        raise ValueError("path components must be one-variable polynomials")
    point = tuple(p.evaluate([t0]) for p in path)
    tangent = tuple(gateaux(p, [t0], [dt]) for p in path)
    second = tuple(gateaux2(p, [t0], [dt], [dt]) for p in path)
    gv = gamma.apply(point, tangent, tangent)
    if sign == "8.2":
        return tuple(s + g for s, g in zip(second, gv))
    return tuple(s - g for s, g in zip(second, gv))
