"""Finite universal algebras, their representations, closures and words.

A FiniteOmegaAlgebra is a finite carrier with total operation tables.  A
Representation is one such algebra acting on another so that every
transformation is an endomorphism of the acted algebra; the optional kind
("monoid-action", "ring-on-abelian-group" or "raw") declares which extra
laws the action satisfies, and every declared law is checked exhaustively
at construction time.

Closure of a generating subset, derivation words, coordinates of
endomorphisms, their superposition, regularity, basis extraction and
morphism decomposition all live here; towers build on this module.

Word equality throughout is evaluation equality, never syntactic: the word
problem has no normal form in this generality, but all carriers are finite
so agreement under every relevant assignment is decidable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import (
    GeneratorMismatch,
    LawViolation,
    MissingGenerator,
    NotEndomorphism,
    NotGenerating,
    NotMorphism,
    NotRepEndomorphism,
)

DEFAULT_CARRIER_BOUND = 64


@dataclass(frozen=True)
class Signature:
    """Named finitary operations; names are unique, arities >= 0."""

    ops: tuple

    def __init__(self, ops: Iterable):
        ops = tuple((str(name), int(arity)) for name, arity in ops)
        names = [n for n, _ in ops]
        if len(set(names)) != len(names):
            raise ValueError("operation names must be unique")
        if any(a < 0 for _, a in ops):
            raise ValueError("arities must be nonnegative")
        object.__setattr__(self, "ops", ops)

    def arity(self, name: str) -> int:
        for n, a in self.ops:
            if n == name:
                return a
        raise KeyError(name)

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.ops)


class FiniteOmegaAlgebra:
    """A finite carrier with a total table for every signature operation."""

    __slots__ = ("carrier", "signature", "tables", "name", "_index")

    def __init__(self, carrier, signature, tables, name=None,
                 carrier_bound=DEFAULT_CARRIER_BOUND):
        self.carrier = tuple(carrier)
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("carrier labels must be distinct")
        if len(self.carrier) > carrier_bound:
            raise ValueError(
                f"carrier size {len(self.carrier)} exceeds bound {carrier_bound}"
            )
        if not isinstance(signature, Signature):
            signature = Signature(signature)
        self.signature = signature
        self.name = name
        self._index = {m: i for i, m in enumerate(self.carrier)}
        cset = set(self.carrier)
        norm = {}
        for op, arity in signature.ops:
            table = tables[op]
            if callable(table):
                table = {
                    args: table(*args)
                    for args in itertools.product(self.carrier, repeat=arity)
                }
            else:
                table = dict(table)
            for args in itertools.product(self.carrier, repeat=arity):
                if args not in table:
                    raise ValueError(f"table for {op!r} is not total at {args!r}")
                if table[args] not in cset:
                    raise ValueError(f"table for {op!r} leaves the carrier at {args!r}")
            norm[op] = table
        self.tables = norm

    def apply(self, op: str, args: Sequence) -> object:
        return self.tables[op][tuple(args)]

    def index(self, m) -> int:
        return self._index[m]

    def same_structure(self, other: "FiniteOmegaAlgebra") -> bool:
        return (
            self.carrier == other.carrier
            and self.signature == other.signature
            and self.tables == other.tables
        )

    def is_endomorphism(self, h: Mapping) -> bool:
        """h: carrier -> carrier respecting every operation."""
        for op, arity in self.signature.ops:
            for args in itertools.product(self.carrier, repeat=arity):
                if h[self.apply(op, args)] != self.apply(op, [h[x] for x in args]):
                    return False
        return True

    def __repr__(self):
        label = self.name or f"{len(self.carrier)} elements"
        return f"FiniteOmegaAlgebra({label})"


def _find_unit(alg: FiniteOmegaAlgebra, op: str):
    """Two-sided unit of a binary operation, or None."""
    for e in alg.carrier:
        if all(
            alg.apply(op, (e, x)) == x and alg.apply(op, (x, e)) == x
            for x in alg.carrier
        ):
            return e
    return None


class Representation:
    """An algebra A acting on an algebra M by endomorphisms.

    handedness only affects printing (left actions read a*m, right ones
    m*a); the action function itself is side-agnostic.
    """

    __slots__ = ("acting", "acted", "action", "rep_kind", "handedness", "name")

    def __init__(self, acting, acted, action, rep_kind="raw", handedness="left",
                 name=None, validate=True):
        if rep_kind not in ("raw", "monoid-action", "ring-on-abelian-group"):
            raise ValueError(f"unknown rep_kind {rep_kind!r}")
        if handedness not in ("left", "right"):
            raise ValueError("handedness must be 'left' or 'right'")
        self.acting = acting
        self.acted = acted
        if callable(action):
            action = {
                (a, m): action(a, m)
                for a in acting.carrier
                for m in acted.carrier
            }
        self.action = dict(action)
        self.rep_kind = rep_kind
        self.handedness = handedness
        self.name = name
        if validate:
            self._validate()

    def act(self, a, m):
        return self.action[(a, m)]

    def transformation(self, a) -> tuple:
        """The transformation of M induced by a, as an image tuple in carrier order."""
        return tuple(self.action[(a, m)] for m in self.acted.carrier)

    # -- validation ---------------------------------------------------------

    def _validate(self):
        mset = set(self.acted.carrier)
        for a in self.acting.carrier:
            for m in self.acted.carrier:
                if (a, m) not in self.action or self.action[(a, m)] not in mset:
                    raise ValueError(f"action is not total at ({a!r}, {m!r})")
        # every transformation must respect the acted algebra's operations
        for a in self.acting.carrier:
            for op, arity in self.acted.signature.ops:
                for args in itertools.product(self.acted.carrier, repeat=arity):
                    lhs = self.act(a, self.acted.apply(op, args))
                    rhs = self.acted.apply(op, [self.act(a, x) for x in args])
                    if lhs != rhs:
                        raise NotEndomorphism(a, op, args)
        if self.rep_kind == "monoid-action":
            self._validate_monoid_action()
        elif self.rep_kind == "ring-on-abelian-group":
            self._validate_ring_action()

    def _binary_op(self, name_hint=None):
        ops = [n for n, a in self.acting.signature.ops if a == 2]
        if name_hint and name_hint in ops:
            return name_hint
        if not ops:
            raise LawViolation("acting algebra lacks a binary operation")
        return ops[0]

    def _validate_monoid_action(self):
        op = self._binary_op("mul")
        unit = _find_unit(self.acting, op)
        if unit is None:
            raise LawViolation("monoid-unit", op)
        for m in self.acted.carrier:
            if self.act(unit, m) != m:
                raise LawViolation("unit-acts-as-identity", (unit, m))
        for a in self.acting.carrier:
            for b in self.acting.carrier:
                ab = self.acting.apply(op, (a, b))
                for m in self.acted.carrier:
                    if self.act(ab, m) != self.act(a, self.act(b, m)):
                        raise LawViolation("action-multiplicativity", (a, b, m))

    def _validate_ring_action(self):
        names = self.acting.signature.names
        if "add" not in names or "mul" not in names:
            raise LawViolation("ring signature must name 'add' and 'mul' operations")
        if "add" not in self.acted.signature.names:
            raise LawViolation("acted group must name an 'add' operation")
        for a in self.acting.carrier:
            for b in self.acting.carrier:
                asum = self.acting.apply("add", (a, b))
                aprod = self.acting.apply("mul", (a, b))
                for m in self.acted.carrier:
                    lhs = self.act(asum, m)
                    rhs = self.acted.apply("add", (self.act(a, m), self.act(b, m)))
                    if lhs != rhs:
                        raise LawViolation("additivity-in-actor", (a, b, m))
                    if self.act(aprod, m) != self.act(a, self.act(b, m)):
                        raise LawViolation("action-multiplicativity", (a, b, m))
        one = _find_unit(self.acting, "mul")
        if one is not None:
            for m in self.acted.carrier:
                if self.act(one, m) != m:
                    raise LawViolation("unit-acts-as-identity", (one, m))

    def __repr__(self):
        label = self.name or f"{self.acting!r} on {self.acted!r}"
        return f"Representation({label})"


def build_representation(acting, acted, action, rep_kind="raw",
                         handedness="left", name=None) -> Representation:
    """Validated construction; see Representation for the checked laws."""
    return Representation(acting, acted, action, rep_kind, handedness, name)


@dataclass(frozen=True)
class RepClassification:
    effective: bool
    transitive: bool
    single_transitive: bool


def one_and_only_one(rep: Representation) -> bool:
    """For every pair (m, m') exactly one actor sends m' to m."""
    for m in rep.acted.carrier:
        for mp in rep.acted.carrier:
            hits = sum(1 for a in rep.acting.carrier if rep.act(a, mp) == m)
            if hits != 1:
                return False
    return True


def classify(rep: Representation) -> RepClassification:
    """Effectiveness, transitivity and single transitivity flags.

    Single transitivity is taken as the conjunction of the two flags and is
    cross-checked against the one-and-only-one characterization; the two
    agree on all shipped test objects.
    """
    transformations = [rep.transformation(a) for a in rep.acting.carrier]
    effective = len(set(transformations)) == len(transformations)
    transitive = all(
        any(rep.act(a, m) == mp for a in rep.acting.carrier)
        for m in rep.acted.carrier
        for mp in rep.acted.carrier
    )
    single = effective and transitive and one_and_only_one(rep)
    return RepClassification(effective, transitive, single)


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Gen:
    """A generator occurrence; the key is the generator element itself."""

    key: object


@dataclass(frozen=True)
class App:
    """An operation of the acted algebra applied to sub-words."""

    op: str
    children: tuple


@dataclass(frozen=True)
class Act:
    """An action application.  For a plain representation the actor is a
    bare element of the acting algebra; in towers it is a word one level
    down."""

    actor: object
    child: object


Word = object  # Gen | App | Act


def eval_word(rep: Representation, word, assignment: Mapping):
    """Evaluate a word with generator images drawn from `assignment`."""
    if isinstance(word, Gen):
        if word.key not in assignment:
            raise MissingGenerator(repr(word.key))
        return assignment[word.key]
    if isinstance(word, App):
        return rep.acted.apply(
            word.op, [eval_word(rep, c, assignment) for c in word.children]
        )
    if isinstance(word, Act):
        if isinstance(word.actor, (Gen, App, Act)):
            raise ValueError("tower word evaluated against a plain representation")
        return rep.act(word.actor, eval_word(rep, word.child, assignment))
    raise TypeError(f"not a word: {word!r}")


def word_generators(word) -> set:
    if isinstance(word, Gen):
        return {word.key}
    if isinstance(word, App):
        out = set()
        for c in word.children:
            out |= word_generators(c)
        return out
    if isinstance(word, Act):
        return word_generators(word.child)
    raise TypeError(f"not a word: {word!r}")


# ---------------------------------------------------------------------------
# closure


@dataclass(frozen=True)
class ClosureResult:
    """Fixpoint of a generating set together with first-derivation words.

    members is in carrier order; word_of maps each member to the word of
    its first derivation; levels records the breadth-first level at which
    each member appeared.
    """

    rep: Representation
    generators: tuple
    members: tuple
    word_of: dict
    levels: dict

    @property
    def is_full(self) -> bool:
        return len(self.members) == len(self.rep.acted.carrier)


def closure(rep: Representation, gens: Iterable) -> ClosureResult:
    """Breadth-first fixpoint of generators under operations and actions.

    Level k+1 is produced from level <= k members: first every acted-algebra
    operation in signature order over argument tuples in carrier-lexicographic
    order, then every action in acting-carrier order.  The first derivation
    of an element wins, making the word table deterministic.
    """
    acted = rep.acted
    gens = [x for x in acted.carrier if x in set(gens)]
    word_of = {}
    levels = {}
    for x in gens:
        word_of[x] = Gen(x)
        levels[x] = 0
    level = 0
    while True:
        current = [m for m in acted.carrier if m in word_of]
        fresh = {}
        for op, arity in acted.signature.ops:
            for args in itertools.product(current, repeat=arity):
                val = acted.apply(op, args)
                if val not in word_of and val not in fresh:
                    fresh[val] = App(op, tuple(word_of[a] for a in args))
        for a in rep.acting.carrier:
            for m in current:
                val = rep.act(a, m)
                if val not in word_of and val not in fresh:
                    fresh[val] = Act(a, word_of[m])
        if not fresh:
            break
        level += 1
        for m, w in fresh.items():
            word_of[m] = w
            levels[m] = level
    members = tuple(m for m in acted.carrier if m in word_of)
    return ClosureResult(rep, tuple(gens), members, word_of, levels)


def naive_closure(rep: Representation, gens: Iterable) -> frozenset:
    """Set-only saturation loop; the independent oracle for closure()."""
    result = set(gens) & set(rep.acted.carrier)
    changed = True
    while changed:
        changed = False
        for op, arity in rep.acted.signature.ops:
            for args in itertools.product(sorted(result, key=rep.acted.index),
                                          repeat=arity):
                v = rep.acted.apply(op, args)
                if v not in result:
                    result.add(v)
                    changed = True
        for a in rep.acting.carrier:
            for m in list(result):
                v = rep.act(a, m)
                if v not in result:
                    result.add(v)
                    changed = True
    return frozenset(result)


# ---------------------------------------------------------------------------
# endomorphisms, coordinates, superposition


def is_rep_endomorphism(rep: Representation, r: Mapping) -> bool:
    """r: M -> M an endomorphism of the acted algebra commuting with every
    action transformation."""
    if not rep.acted.is_endomorphism(r):
        return False
    return all(
        r[rep.act(a, m)] == rep.act(a, r[m])
        for a in rep.acting.carrier
        for m in rep.acted.carrier
    )


def endo_coordinates(rep: Representation, gens: Iterable, r: Mapping,
                     clo: Optional[ClosureResult] = None,
                     verified: bool = False) -> dict:
    """Coordinates of the endomorphism r: each generator is mapped to the
    closure word of its image, all relative to the same generating set.

    A precomputed closure of the same generating set may be passed in, and
    `verified=True` skips the endomorphism re-check, for callers sweeping
    many endomorphisms of one representation.
    """
    if clo is None:
        clo = closure(rep, gens)
    if not clo.is_full:
        raise NotGenerating("the set does not generate the carrier")
    if not verified and not is_rep_endomorphism(rep, r):
        raise NotRepEndomorphism("map fails the endomorphism conditions")
    return {x: clo.word_of[r[x]] for x in clo.generators}


def substitute(word, table: Mapping):
    """Replace each generator occurrence by its word from `table`."""
    if isinstance(word, Gen):
        if word.key not in table:
            raise GeneratorMismatch(repr(word.key))
        return table[word.key]
    if isinstance(word, App):
        return App(word.op, tuple(substitute(c, table) for c in word.children))
    if isinstance(word, Act):
        return Act(word.actor, substitute(word.child, table))
    raise TypeError(f"not a word: {word!r}")


def superpose(coords: Mapping, endo_coords: Mapping) -> dict:
    """Substitute an endomorphism's generator words into a coordinate family.

    Both families must be relative to the same generating set.  Evaluating
    the result at the generators equals evaluating `coords` at the
    endomorphism's image of the generators; for two endomorphism families
    this composes contravariantly (coordinates of S superposed with
    coordinates of R are coordinates of R after S).
    """
    return {key: substitute(w, endo_coords) for key, w in coords.items()}


def is_regular(rep: Representation, gens: Iterable, r: Mapping) -> bool:
    """True when the image of the generating set still generates."""
    clo = closure(rep, gens)
    if not clo.is_full:
        raise NotGenerating("the set does not generate the carrier")
    return closure(rep, [r[x] for x in clo.generators]).is_full


def extract_basis(rep: Representation, gens: Iterable) -> tuple:
    """Greedy minimization of a generating set.

    Elements are tried for removal in descending carrier order, so derived
    elements drop before the primitives that generate them; once an element
    survives it stays necessary because closures only shrink when the set
    does.  The result satisfies the basis characterization: removing any
    single element breaks generation.
    """
    clo = closure(rep, gens)
    if not clo.is_full:
        raise NotGenerating("the set does not generate the carrier")
    keep = list(clo.generators)
    for x in sorted(keep, key=rep.acted.index, reverse=True):
        trial = [y for y in keep if y != x]
        if closure(rep, trial).is_full:
            keep = trial
    return tuple(keep)


def enumerate_rep_endomorphisms(rep: Representation) -> list:
    """All endomorphisms of the representation, as carrier maps.

    Determined by images of a basis: candidates extend basis images through
    closure words and are then filtered by the exact endomorphism check, so
    the enumeration stays far below |M|^|M| on structured carriers.
    """
    acted = rep.acted
    basis = extract_basis(rep, acted.carrier)
    clo = closure(rep, basis)
    out = []
    seen = set()
    for images in itertools.product(acted.carrier, repeat=len(basis)):
        assignment = dict(zip(basis, images))
        try:
            r = {m: eval_word(rep, clo.word_of[m], assignment)
                 for m in acted.carrier}
        except KeyError:
            continue
        key = tuple(r[m] for m in acted.carrier)
        if key in seen:
            continue
        if is_rep_endomorphism(rep, r):
            seen.add(key)
            out.append(r)
    return out


def enumerate_rep_automorphisms(rep: Representation) -> list:
    n = len(rep.acted.carrier)
    return [
        r for r in enumerate_rep_endomorphisms(rep)
        if len(set(r.values())) == n
    ]


# ---------------------------------------------------------------------------
# morphisms and their decomposition


def is_homomorphism(h: Mapping, src: FiniteOmegaAlgebra,
                    dst: FiniteOmegaAlgebra) -> bool:
    for op, arity in src.signature.ops:
        if op not in dst.signature.names or dst.signature.arity(op) != arity:
            return False
        for args in itertools.product(src.carrier, repeat=arity):
            if h[src.apply(op, args)] != dst.apply(op, [h[x] for x in args]):
                return False
    return True


def check_morphism(r: Mapping, big_r: Mapping, f: Representation,
                   g: Representation) -> bool:
    """(r, R) is a morphism of representations from f into g."""
    if not is_homomorphism(r, f.acting, g.acting):
        return False
    if not is_homomorphism(big_r, f.acted, g.acted):
        return False
    return all(
        big_r[f.act(a, m)] == g.act(r[a], big_r[m])
        for a in f.acting.carrier
        for m in f.acted.carrier
    )


def _kernel_partition(h: Mapping, carrier: Sequence) -> dict:
    """Map each element to the canonical representative (first in carrier
    order) of its kernel class."""
    by_image = {}
    for x in carrier:
        by_image.setdefault(h[x], []).append(x)
    rep_of = {}
    for cls in by_image.values():
        first = cls[0]
        for x in cls:
            rep_of[x] = first
    return rep_of


def _quotient_algebra(alg: FiniteOmegaAlgebra, rep_of: Mapping,
                      name=None) -> tuple[FiniteOmegaAlgebra, dict]:
    """Quotient by the kernel partition; classes are labelled by their
    canonical representatives."""
    classes = []
    for x in alg.carrier:
        if rep_of[x] == x:
            classes.append(x)
    tables = {}
    for op, arity in alg.signature.ops:
        table = {}
        for args in itertools.product(classes, repeat=arity):
            table[args] = rep_of[alg.apply(op, args)]
        # well-definedness: any representatives give the same class
        for args in itertools.product(alg.carrier, repeat=arity):
            reduced = tuple(rep_of[x] for x in args)
            if rep_of[alg.apply(op, args)] != table[reduced]:
                raise NotMorphism(f"kernel is not a congruence for {op!r}")
        tables[op] = table
    quotient = FiniteOmegaAlgebra(classes, alg.signature, tables, name=name,
                                  carrier_bound=len(classes) or 1)
    nat = {x: rep_of[x] for x in alg.carrier}
    return quotient, nat


def _image_algebra(h: Mapping, src: FiniteOmegaAlgebra,
                   dst: FiniteOmegaAlgebra, name=None) -> FiniteOmegaAlgebra:
    image = [y for y in dst.carrier if y in set(h.values())]
    tables = {}
    for op, arity in dst.signature.ops:
        tables[op] = {
            args: dst.apply(op, args)
            for args in itertools.product(image, repeat=arity)
        }
    return FiniteOmegaAlgebra(image, dst.signature, tables, name=name,
                              carrier_bound=max(len(image), 1))


@dataclass
class MorphismDecomposition:
    """The three-factor decomposition (r, R) = (i, I) (t, T) (j, J).

    j, J are the natural projections onto the kernel quotients, t, T the
    isomorphisms onto the images, i, I the inclusions.  quotient_rep is the
    representation induced on the quotients, image_rep the one induced on
    the images; (t, T) is an isomorphism between them.
    """

    j: dict
    J: dict
    t: dict
    T: dict
    i: dict
    I: dict
    acting_quotient: FiniteOmegaAlgebra
    acted_quotient: FiniteOmegaAlgebra
    acting_image: FiniteOmegaAlgebra
    acted_image: FiniteOmegaAlgebra
    quotient_rep: Representation
    image_rep: Representation
    checks: dict = field(default_factory=dict)


def decompose_morphism(r: Mapping, big_r: Mapping, f: Representation,
                       g: Representation) -> MorphismDecomposition:
    """Kernel/image decomposition of a morphism of representations.

    Builds the quotient representation on (A/ker r, M/ker R), the image
    representation on (r A, R M), verifies that every factor pair is a
    morphism, that (t, T) is invertible with morphism inverse, and that the
    composition reproduces (r, R) on the nose.
    """
    if not check_morphism(r, big_r, f, g):
        raise NotMorphism("the pair (r, R) is not a morphism")
    rep_a = _kernel_partition(r, f.acting.carrier)
    rep_m = _kernel_partition(big_r, f.acted.carrier)
    acting_q, j = _quotient_algebra(f.acting, rep_a, name="A/ker")
    acted_q, J = _quotient_algebra(f.acted, rep_m, name="M/ker")
    # induced action on the quotients: F(j(a))(J(m)) = J(f(a)(m))
    action_q = {}
    for a in acting_q.carrier:
        for m in acted_q.carrier:
            action_q[(a, m)] = rep_m[f.act(a, m)]
    for a in f.acting.carrier:
        for m in f.acted.carrier:
            if rep_m[f.act(a, m)] != action_q[(rep_a[a], rep_m[m])]:
                raise NotMorphism("induced quotient action is ill-defined")
    quotient_rep = Representation(acting_q, acted_q, action_q, rep_kind="raw")
    acting_im = _image_algebra(r, f.acting, g.acting, name="im r")
    acted_im = _image_algebra(big_r, f.acted, g.acted, name="im R")
    action_im = {
        (a, m): g.act(a, m)
        for a in acting_im.carrier
        for m in acted_im.carrier
    }
    for a in acting_im.carrier:
        for m in acted_im.carrier:
            if action_im[(a, m)] not in set(acted_im.carrier):
                raise NotMorphism("image set is not stable under the action")
    image_rep = Representation(acting_im, acted_im, action_im, rep_kind="raw")
    t = {cls: r[cls] for cls in acting_q.carrier}
    big_t = {cls: big_r[cls] for cls in acted_q.carrier}
    i = {y: y for y in acting_im.carrier}
    big_i = {y: y for y in acted_im.carrier}
    t_inv = {v: k for k, v in t.items()}
    big_t_inv = {v: k for k, v in big_t.items()}
    checks = {
        "j_J_morphism": check_morphism(j, J, f, quotient_rep),
        "t_T_morphism": check_morphism(t, big_t, quotient_rep, image_rep),
        "t_T_inverse_morphism": check_morphism(t_inv, big_t_inv, image_rep,
                                               quotient_rep),
        "i_I_morphism": check_morphism(i, big_i, image_rep, g),
        "composition_r": all(i[t[j[a]]] == r[a] for a in f.acting.carrier),
        "composition_R": all(big_i[big_t[J[m]]] == big_r[m]
                             for m in f.acted.carrier),
    }
    if not all(checks.values()):
        raise NotMorphism(f"decomposition checks failed: {checks}")
    return MorphismDecomposition(
        j=j, J=J, t=t, T=big_t, i=i, I=big_i,
        acting_quotient=acting_q, acted_quotient=acted_q,
        acting_image=acting_im, acted_image=acted_im,
        quotient_rep=quotient_rep, image_rep=image_rep,
        checks=checks,
    )
