"""Shared builders for the test suite.

Randomized tests draw from seeded random.Random instances so every run is
reproducible; oracles are written inline in the test modules so they stay
independent of the code paths they check.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from divring.algebra import Element, quaternion_algebra
from divring.omega import FiniteOmegaAlgebra, Representation, Signature
from divring.samples import (
    generation_rep,
    toy_affine_tower,
    translation_rep,
)


@pytest.fixture(scope="session")
def quat():
    return quaternion_algebra()


@pytest.fixture()
def rng():
    return random.Random(20260810)


def random_element(rng, alg, span=6, nonzero=False) -> Element:
    while True:
        e = alg.element([Fraction(rng.randint(-span, span)) for _ in range(alg.dim)])
        if not nonzero or not e.is_zero():
            return e


def random_rational(rng, span=6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 4))


@pytest.fixture(scope="session")
def c6_generation():
    return generation_rep(6)


@pytest.fixture(scope="session")
def c6_translation():
    return translation_rep(6)


@pytest.fixture(scope="session")
def affine_tower():
    return toy_affine_tower()


def random_transformation_monoid(rng, size, n_maps=2, cap=48) -> Representation:
    """A random monoid of transformations of an n-point set, acting on it.

    Seeds a few random self-maps, closes under composition (identity
    included) and uses function application as the action.  Seed sets whose
    closure exceeds `cap` maps are redrawn so carriers stay small.
    """
    points = tuple(range(size))
    while True:
        maps = {tuple(points)}
        for _ in range(n_maps):
            maps.add(tuple(rng.randrange(size) for _ in points))
        frontier = list(maps)
        too_big = False
        while frontier and not too_big:
            fresh = []
            for f in frontier:
                for g in list(maps):
                    for h in (tuple(f[g[p]] for p in points),
                              tuple(g[f[p]] for p in points)):
                        if h not in maps:
                            maps.add(h)
                            fresh.append(h)
            frontier = fresh
            too_big = len(maps) > cap
        if not too_big:
            break
    carrier = sorted(maps)
    index = {m: i for i, m in enumerate(carrier)}
    compose_table = {
        (a, b): carrier[index[tuple(a[b[p]] for p in points)]]
        for a in carrier
        for b in carrier
    }
    acting = FiniteOmegaAlgebra(
        carrier, Signature([("mul", 2)]), {"mul": compose_table},
        name=f"T{size}", carrier_bound=max(len(carrier), 64)
    )
    acted = FiniteOmegaAlgebra(points, Signature([]), {}, name=f"S{size}")
    return Representation(
        acting, acted, lambda f, p: f[p], rep_kind="monoid-action"
    )
