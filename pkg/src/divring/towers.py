"""Towers of representations: chained algebras each acting on the next.

A tower holds algebras A_1 .. A_n and representations f_k of A_k in
A_{k+1}.  Levels are spoken of 1-based as in the accompanying docs;
indices into the `algebras` and `reps` tuples are plain 0-based Python.

Tower closure proceeds strictly level by level: level 1 is always the full
first algebra, level i is saturated using the already-closed level i-1 as
the pool of actors.  Words at level i >= 3 record the acting element as a
level-(i-1) word, so a tuple of words reconstructs the whole derivation;
level-1 "words" are bare elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    ChainMismatch,
    GeneratorMismatch,
    MissingGenerator,
    NoIdentityPreimage,
    NotGenerating,
    NotSingleTransitive,
)
from .omega import (
    Act,
    App,
    FiniteOmegaAlgebra,
    Gen,
    Representation,
    Signature,
    check_morphism,
    classify,
    closure,
    extract_basis,
    is_homomorphism,
)


class Tower:
    """A validated chain of representations."""

    __slots__ = ("algebras", "reps")

    def __init__(self, reps: Sequence[Representation]):
        reps = tuple(reps)
        if not reps:
            raise ValueError("a tower needs at least one representation")
        for k in range(len(reps) - 1):
            if not reps[k].acted.same_structure(reps[k + 1].acting):
                raise ChainMismatch(k + 1)
        self.reps = reps
        self.algebras = (reps[0].acting,) + tuple(r.acted for r in reps)

    @property
    def height(self) -> int:
        return len(self.algebras)

    def __repr__(self):
        return f"Tower({' -> '.join(repr(a) for a in self.algebras)})"


def build_tower(reps: Sequence[Representation]) -> Tower:
    return Tower(reps)


# ---------------------------------------------------------------------------
# tower words


def eval_tower_word(tower: Tower, level: int, word, assignments: Mapping):
    """Evaluate a level-`level` word (1-based level, >= 2).

    `assignments` maps each level >= 2 to a generator assignment; actors in
    action nodes are bare level-1 elements at level 2 and lower-level words
    above that.
    """
    alg = tower.algebras[level - 1]
    if isinstance(word, Gen):
        table = assignments.get(level, {})
        if word.key not in table:
            raise MissingGenerator(f"level {level}: {word.key!r}")
        return table[word.key]
    if isinstance(word, App):
        return alg.apply(
            word.op,
            [eval_tower_word(tower, level, c, assignments) for c in word.children],
        )
    if isinstance(word, Act):
        if isinstance(word.actor, (Gen, App, Act)):
            actor = eval_tower_word(tower, level - 1, word.actor, assignments)
        else:
            actor = word.actor
        child = eval_tower_word(tower, level, word.child, assignments)
        return tower.reps[level - 2].act(actor, child)
    raise TypeError(f"not a word: {word!r}")


@dataclass(frozen=True)
class TowerClosure:
    """Per-level members and word tables of a layered closure.

    members[0] is always the full first algebra; word tables exist for
    levels 2..n and map members to their first-derivation words.
    """

    tower: Tower
    generators: tuple
    members: tuple
    word_of: tuple
    levels: tuple

    @property
    def is_full(self) -> bool:
        return all(
            len(self.members[i]) == len(self.tower.algebras[i].carrier)
            for i in range(len(self.members))
        )

    def identity_assignments(self) -> dict:
        return {
            level: {x: x for x in self.generators[level - 2]}
            for level in range(2, self.tower.height + 1)
        }


def tower_closure(tower: Tower, gens: Sequence[Iterable]) -> TowerClosure:
    """Layered fixpoint; `gens` holds one generating subset per level 2..n.

    Within a level the iteration order matches the plain closure: operations
    in signature order over lexicographic argument tuples, then actions with
    actors in (already closed) lower-level carrier order.  First derivation
    wins.
    """
    n = tower.height
    if len(gens) != n - 1:
        raise ValueError("need one generator set per level above the first")
    members = [tuple(tower.algebras[0].carrier)]
    word_tables = [None]
    level_tables = [None]
    gen_norm = []
    for li in range(1, n):
        alg = tower.algebras[li]
        rep = tower.reps[li - 1]
        gset = set(gens[li - 1])
        ordered_gens = [x for x in alg.carrier if x in gset]
        gen_norm.append(tuple(ordered_gens))
        word_of = {x: Gen(x) for x in ordered_gens}
        depth_of = {x: 0 for x in ordered_gens}
        lower_words = word_tables[li - 1]
        actors = [a for a in tower.algebras[li - 1].carrier if a in set(members[li - 1])]
        depth = 0
        while True:
            current = [m for m in alg.carrier if m in word_of]
            fresh = {}
            for op, arity in alg.signature.ops:
                for args in itertools.product(current, repeat=arity):
                    val = alg.apply(op, args)
                    if val not in word_of and val not in fresh:
                        fresh[val] = App(op, tuple(word_of[a] for a in args))
            for a in actors:
                actor_word = a if lower_words is None else lower_words[a]
                for m in current:
                    val = rep.act(a, m)
                    if val not in word_of and val not in fresh:
                        fresh[val] = Act(actor_word, word_of[m])
            if not fresh:
                break
            depth += 1
            for m, w in fresh.items():
                word_of[m] = w
                depth_of[m] = depth
        members.append(tuple(m for m in alg.carrier if m in word_of))
        word_tables.append(word_of)
        level_tables.append(depth_of)
    return TowerClosure(
        tower=tower,
        generators=tuple(gen_norm),
        members=tuple(members),
        word_of=tuple(word_tables),
        levels=tuple(level_tables),
    )


def naive_tower_closure(tower: Tower, gens: Sequence[Iterable]) -> tuple:
    """Layered set-only saturation; the oracle for tower_closure."""
    n = tower.height
    members = [frozenset(tower.algebras[0].carrier)]
    for li in range(1, n):
        alg = tower.algebras[li]
        rep = tower.reps[li - 1]
        result = set(gens[li - 1]) & set(alg.carrier)
        changed = True
        while changed:
            changed = False
            for op, arity in alg.signature.ops:
                for args in itertools.product(list(result), repeat=arity):
                    v = alg.apply(op, args)
                    if v not in result:
                        result.add(v)
                        changed = True
            for a in members[li - 1]:
                for m in list(result):
                    v = rep.act(a, m)
                    if v not in result:
                        result.add(v)
                        changed = True
        members.append(frozenset(result))
    return tuple(members)


# ---------------------------------------------------------------------------
# tower endomorphisms, coordinates, superposition


def is_tower_endomorphism(tower: Tower, maps: Sequence[Mapping]) -> bool:
    """maps holds h_2 .. h_n; level 1 is fixed to the identity."""
    n = tower.height
    if len(maps) != n - 1:
        return False
    prev = {a: a for a in tower.algebras[0].carrier}
    for li in range(1, n):
        h = maps[li - 1]
        rep = tower.reps[li - 1]
        if not is_homomorphism(h, rep.acted, rep.acted):
            return False
        if not all(
            h[rep.act(a, m)] == rep.act(prev[a], h[m])
            for a in rep.acting.carrier
            for m in rep.acted.carrier
        ):
            return False
        prev = h
    return True


def tower_endo_coordinates(tower: Tower, gens: Sequence[Iterable],
                           maps: Sequence[Mapping],
                           clo: Optional[TowerClosure] = None,
                           verified: bool = False) -> tuple:
    """Per-level coordinate words of a tower endomorphism.

    As with the plain representation version, a precomputed closure and
    `verified=True` let bulk sweeps skip redundant work.
    """
    if clo is None:
        clo = tower_closure(tower, gens)
    if not clo.is_full:
        raise NotGenerating("the tuple does not generate the tower")
    if not verified and not is_tower_endomorphism(tower, maps):
        raise NotGenerating("maps are not a tower endomorphism")
    out = []
    for li in range(1, tower.height):
        h = maps[li - 1]
        out.append({x: clo.word_of[li][h[x]] for x in clo.generators[li - 1]})
    return tuple(out)


def _substitute_tower(word, level: int, tables: Sequence[Mapping]):
    """Replace generators by words from `tables`, recursing into actors.

    tables[level - 2] serves level `level`; bare level-1 actors stay fixed
    because tower endomorphisms are the identity on the first algebra.
    """
    if isinstance(word, Gen):
        table = tables[level - 2]
        if word.key not in table:
            raise GeneratorMismatch(f"level {level}: {word.key!r}")
        return table[word.key]
    if isinstance(word, App):
        return App(
            word.op,
            tuple(_substitute_tower(c, level, tables) for c in word.children),
        )
    if isinstance(word, Act):
        if isinstance(word.actor, (Gen, App, Act)):
            actor = _substitute_tower(word.actor, level - 1, tables)
        else:
            actor = word.actor
        return Act(actor, _substitute_tower(word.child, level, tables))
    raise TypeError(f"not a word: {word!r}")


def tower_superpose(coords: Sequence[Mapping], endo_coords: Sequence[Mapping]) -> tuple:
    """Levelwise substitution of endomorphism words into coordinate words.

    Evaluating the result at the generating tuple equals evaluating
    `coords` at the endomorphism's image of the tuple; on endomorphism
    coordinate families this realizes the contravariant composition law.
    """
    if len(coords) != len(endo_coords):
        raise GeneratorMismatch("coordinate families span different level counts")
    out = []
    for li, table in enumerate(coords):
        level = li + 2
        out.append(
            {key: _substitute_tower(w, level, endo_coords) for key, w in table.items()}
        )
    return tuple(out)


def enumerate_tower_endomorphisms(tower: Tower) -> list:
    """All tower endomorphisms (id, h_2, .., h_n).

    Candidates at each level are generated from images of a basis of that
    level's representation, extended through closure words with actors
    pushed through the lower-level map, then filtered by the exact laws.
    """
    n = tower.height

    def eval_mapped(rep, word, assign, prev):
        if isinstance(word, Gen):
            return assign[word.key]
        if isinstance(word, App):
            return rep.acted.apply(
                word.op, [eval_mapped(rep, c, assign, prev) for c in word.children]
            )
        if isinstance(word, Act):
            return rep.act(prev[word.actor], eval_mapped(rep, word.child, assign, prev))
        raise TypeError

    def level_candidates(rep, prev):
        basis = extract_basis(rep, rep.acted.carrier)
        clo = closure(rep, basis)
        cands = []
        for images in itertools.product(rep.acted.carrier, repeat=len(basis)):
            assign = dict(zip(basis, images))
            h = {
                m: eval_mapped(rep, clo.word_of[m], assign, prev)
                for m in rep.acted.carrier
            }
            if not rep.acted.is_endomorphism(h):
                continue
            if all(
                h[rep.act(a, m)] == rep.act(prev[a], h[m])
                for a in rep.acting.carrier
                for m in rep.acted.carrier
            ):
                cands.append(h)
        return cands

    out = []

    def rec(li, chosen):
        if li == n:
            out.append(tuple(chosen))
            return
        prev = chosen[-1] if chosen else {a: a for a in tower.algebras[0].carrier}
        for h in level_candidates(tower.reps[li - 1], prev):
            rec(li + 1, chosen + [h])

    rec(1, [])
    return out


def enumerate_tower_automorphisms(tower: Tower) -> list:
    return [
        maps
        for maps in enumerate_tower_endomorphisms(tower)
        if all(
            len(set(h.values())) == len(tower.algebras[li + 1].carrier)
            for li, h in enumerate(maps)
        )
    ]


# ---------------------------------------------------------------------------
# basis


def tower_basis(tower: Tower, gens: Sequence[Iterable]) -> tuple:
    """Greedy layered minimization, lowest layer first.

    Within a layer candidates are tried for removal in descending carrier
    order, mirroring the plain extract_basis rule; generation is re-checked
    with the full tower closure because removing a level-i generator can
    only affect levels >= i.
    """
    clo = tower_closure(tower, gens)
    if not clo.is_full:
        raise NotGenerating("the tuple does not generate the tower")
    current = [list(g) for g in clo.generators]
    for li in range(len(current)):
        alg = tower.algebras[li + 1]
        for x in sorted(current[li], key=alg.index, reverse=True):
            trial = [list(g) for g in current]
            trial[li] = [y for y in current[li] if y != x]
            if tower_closure(tower, trial).is_full:
                current = trial
    return tuple(tuple(g) for g in current)


# ---------------------------------------------------------------------------
# morphisms, induced representations, effectiveness


def check_tower_morphism(maps: Sequence[Mapping], source: Tower,
                         target: Tower) -> bool:
    """maps holds h_1 .. h_n; true iff every adjacent pair is a morphism."""
    if source.height != target.height or len(maps) != source.height:
        return False
    return all(
        check_morphism(maps[k], maps[k + 1], source.reps[k], target.reps[k])
        for k in range(source.height - 1)
    )


def compose_tower_morphisms(first: Sequence[Mapping],
                            second: Sequence[Mapping]) -> tuple:
    """Componentwise composition, second after first."""
    if len(first) != len(second):
        raise ValueError("morphisms have different level counts")
    return tuple(
        {x: q[p[x]] for x in p} for p, q in zip(first, second)
    )


def induced_two_level(tower: Tower, i: int, a0, anchor=None) -> Representation:
    """Representation of A_i on A_{i+2} induced through the middle level.

    `a0` must be an element of A_{i+1} acting as the identity on A_{i+2}
    (NoIdentityPreimage otherwise), which pins the anchor inside the orbit
    picture: with f_{i+1,i+2} single transitive every y factors uniquely as
    b_y applied to the anchor, and

        f'(a)(y) = f_{i+1,i+2}( f_{i,i+1}(a)(b_y) )(anchor)

    The anchor defaults to the first carrier element of A_{i+2}; the
    induced structure genuinely depends on this choice.  When both input
    representations are effective the result is effective.
    """
    if not 1 <= i <= tower.height - 2:
        raise ValueError("level out of range")
    low = tower.reps[i - 1]
    high = tower.reps[i]
    identity = tuple(high.acted.carrier)
    if high.transformation(a0) != identity:
        raise NoIdentityPreimage(f"{a0!r} does not act as the identity")
    if not classify(high).single_transitive:
        raise NotSingleTransitive("middle representation must be single transitive")
    if anchor is None:
        anchor = high.acted.carrier[0]
    factor = {}
    for b in high.acting.carrier:
        factor[high.act(b, anchor)] = b
    action = {
        (a, y): high.act(low.act(a, factor[y]), anchor)
        for a in low.acting.carrier
        for y in high.acted.carrier
    }
    return Representation(low.acting, high.acted, action, rep_kind="raw",
                          handedness=low.handedness)


def effectiveness_chain(tower: Tower, i: int, k: int) -> bool:
    """Effectiveness of the composed action of A_i through k levels.

    The fingerprint of a is the full evaluation table of the chain
    a -> f(a)(b_{i+1}) -> f(..)(b_{i+2}) -> ...; the composed action is
    effective iff distinct actors give distinct tables.  When every step
    representation is effective this is guaranteed to hold.
    """
    if not (1 <= i and i + k <= tower.height and k >= 1):
        raise ValueError("invalid level range")
    chain = tower.reps[i - 1 : i - 1 + k]
    domains = [r.acted.carrier for r in chain]

    def fingerprint(a):
        rows = []
        for args in itertools.product(*domains):
            value = a
            for rep, x in zip(chain, args):
                value = rep.act(value, x)
            rows.append(value)
        return tuple(rows)

    prints = [fingerprint(a) for a in chain[0].acting.carrier]
    return len(set(prints)) == len(prints)
