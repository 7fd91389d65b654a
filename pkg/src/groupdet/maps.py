"""Total maps between finite groups and the operations the matrix calculus needs.

A ``GroupMap`` is a total function stored as a value array.  Composition
applies the right-hand map first, matching the usual reading of a juxtaposed
product of maps.  The pointwise sum (f + g)(x) = f(x) * g(x) and difference
(f - g)(x) = f(x) * g(x)^-1 multiply images left to right; call sites that
evaluate identities relying on commuting images pass ``require_commuting=True``
so the assumption is checked rather than silently used.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    InversionError,
    PreconditionError,
    StructuralError,
    NoncommutingImagesError,
)
from .groups import DirectFactorization, FiniteGroup, Subgroup

__all__ = [
    "GroupMap",
    "HomSet",
    "OpCounter",
    "identity_map",
    "zero_map",
    "compose",
    "pointwise_sum",
    "pointwise_diff",
    "negate",
    "is_bijective",
    "invert",
    "is_central_automorphism",
    "is_normal_endo",
    "enumerate_homs",
    "enumerate_endos",
    "enumerate_autos",
    "power_map",
    "fitting_decomposition",
]


@dataclass
class OpCounter:
    """Tally of elementary steps used by the benchmark accounting.

    ``comparisons`` counts element equality tests during injectivity checks,
    ``lookups`` counts graph lookups spent inverting a bijection, and
    ``evaluations`` counts map evaluations spent building derived maps.
    """

    comparisons: int = 0
    lookups: int = 0
    evaluations: int = 0

    def merged(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(
            self.comparisons + other.comparisons,
            self.lookups + other.lookups,
            self.evaluations + other.evaluations,
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "comparisons": self.comparisons,
            "lookups": self.lookups,
            "evaluations": self.evaluations,
        }


class GroupMap:
    """A total function ``domain -> codomain`` held as a tuple of images.

    The homomorphism property is a tri-state cache: unknown until queried,
    then pinned.  Instances are value-immutable and safe to share.
    """

    __slots__ = ("domain", "codomain", "values", "_hom", "_image")

    def __init__(
        self,
        domain: FiniteGroup,
        codomain: FiniteGroup,
        values: Sequence[int],
        hom: Optional[bool] = None,
    ):
        vals = tuple(int(v) for v in values)
        if len(vals) != domain.order:
            raise StructuralError(
                f"value array has length {len(vals)}, domain has order {domain.order}"
            )
        if vals and (min(vals) < 0 or max(vals) >= codomain.order):
            raise StructuralError("map values fall outside the codomain")
        self.domain = domain
        self.codomain = codomain
        self.values = vals
        self._hom = hom
        self._image: Optional[frozenset[int]] = None

    def __call__(self, x: int) -> int:
        return self.values[x]

    def image(self) -> frozenset[int]:
        if self._image is None:
            self._image = frozenset(self.values)
        return self._image

    def is_homomorphism(self) -> bool:
        if self._hom is None:
            td, tc = self.domain.table, self.codomain.table
            v = self.values
            self._hom = all(
                v[td[a][b]] == tc[v[a]][v[b]]
                for a in range(self.domain.order)
                for b in range(self.domain.order)
            )
        return self._hom

    @property
    def hom_flag(self) -> Optional[bool]:
        return self._hom

    def is_endo(self) -> bool:
        return self.domain is self.codomain

    def key(self) -> tuple:
        return (id(self.domain), id(self.codomain), self.values)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupMap)
            and self.domain is other.domain
            and self.codomain is other.codomain
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return (
            f"GroupMap({self.domain.name} -> {self.codomain.name}, "
            f"values={list(self.values)})"
        )


def identity_map(g: FiniteGroup) -> GroupMap:
    return GroupMap(g, g, range(g.order), hom=True)


def zero_map(domain: FiniteGroup, codomain: FiniteGroup) -> GroupMap:
    """The constant map onto the codomain identity."""
    return GroupMap(domain, codomain, [codomain.identity] * domain.order, hom=True)


def _check_composable(f: GroupMap, g: GroupMap) -> None:
    if g.codomain is not f.domain:
        raise StructuralError(
            f"cannot compose: right map lands in {g.codomain.name}, "
            f"left map starts at {f.domain.name}"
        )


def compose(f: GroupMap, g: GroupMap) -> GroupMap:
    """The composite x -> f(g(x)); the right-hand map applies first."""
    _check_composable(f, g)
    fv = f.values
    hom = True if (f._hom and g._hom) else None
    return GroupMap(g.domain, f.codomain, tuple(fv[v] for v in g.values), hom=hom)


def _check_parallel(f: GroupMap, g: GroupMap) -> None:
    if f.domain is not g.domain or f.codomain is not g.codomain:
        raise StructuralError("pointwise operations need identical domain and codomain")


def pointwise_sum(f: GroupMap, g: GroupMap, require_commuting: bool = False) -> GroupMap:
    """x -> f(x) * g(x), multiplying images left to right."""
    _check_parallel(f, g)
    t = f.codomain.table
    if require_commuting:
        for a, b in zip(f.values, g.values):
            if t[a][b] != t[b][a]:
                raise NoncommutingImagesError(
                    f"images {a} and {b} do not commute in {f.codomain.name}"
                )
    return GroupMap(f.domain, f.codomain, tuple(t[a][b] for a, b in zip(f.values, g.values)))


def pointwise_diff(f: GroupMap, g: GroupMap, require_commuting: bool = False) -> GroupMap:
    """x -> f(x) * g(x)^-1, multiplying images left to right."""
    _check_parallel(f, g)
    t = f.codomain.table
    inv = f.codomain.inverse
    if require_commuting:
        for a, b in zip(f.values, g.values):
            if t[a][b] != t[b][a]:
                raise NoncommutingImagesError(
                    f"images {a} and {b} do not commute in {f.codomain.name}"
                )
    return GroupMap(
        f.domain, f.codomain, tuple(t[a][inv[b]] for a, b in zip(f.values, g.values))
    )


def negate(f: GroupMap) -> GroupMap:
    """x -> f(x)^-1."""
    inv = f.codomain.inverse
    return GroupMap(f.domain, f.codomain, tuple(inv[v] for v in f.values))


def is_bijective(f: GroupMap, counter: Optional[OpCounter] = None) -> bool:
    """Bijectivity test.

    With a counter, injectivity is decided by comparing each image against
    all previous ones, charging one comparison per test (the naive method's
    accounting: C(n, 2) comparisons in the injective worst case).  Without a
    counter a set-based check is used; the verdict is identical.
    """
    if f.domain.order != f.codomain.order:
        return False
    v = f.values
    if counter is None:
        return len(set(v)) == len(v)
    n = len(v)
    for i in range(1, n):
        vi = v[i]
        for j in range(i):
            counter.comparisons += 1
            if v[j] == vi:
                return False
    return True


def invert(f: GroupMap, counter: Optional[OpCounter] = None) -> GroupMap:
    """Functional inverse of a bijection, built by swapping the graph.

    Charges |domain| lookups to the counter.  The inverse of a bijective
    homomorphism is marked as a homomorphism.
    """
    if not is_bijective(f):
        raise InversionError(f"map is not bijective: {f!r}")
    if counter is not None:
        counter.lookups += f.domain.order
    out = [0] * f.domain.order
    for x, y in enumerate(f.values):
        out[y] = x
    hom = True if f._hom else None
    return GroupMap(f.codomain, f.domain, out, hom=hom)


def is_central_automorphism(f: GroupMap) -> bool:
    """True when f is an automorphism with f(x) * x^-1 central for every x."""
    if not f.is_endo():
        raise PreconditionError("central automorphisms are endomorphisms")
    if not (f.is_homomorphism() and is_bijective(f)):
        return False
    g = f.domain
    center = set(g.center().elements)
    t, inv = g.table, g.inverse
    return all(t[f.values[x]][inv[x]] in center for x in range(g.order))


def is_normal_endo(f: GroupMap) -> bool:
    """True when f is an endomorphism commuting with every inner automorphism."""
    if not f.is_endo():
        raise StructuralError("normality is defined for endomorphisms only")
    if not f.is_homomorphism():
        return False
    g = f.domain
    if g.is_abelian:
        return True
    v = g.conj
    vals = f.values
    return all(
        vals[v(x, a)] == v(vals[x], a)
        for x in range(g.order)
        for a in range(g.order)
    )


@dataclass(frozen=True)
class HomSet:
    """All homomorphisms between two groups, sorted by value array."""

    domain: FiniteGroup
    codomain: FiniteGroup
    members: tuple[GroupMap, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> GroupMap:
        return self.members[i]

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1


_hom_cache: dict[tuple, HomSet] = {}
_auto_cache: dict[int, HomSet] = {}


def _candidate_images(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    allowed: Optional[Sequence[int]],
    exact_order: bool,
) -> list[list[int]]:
    pool = range(codomain.order) if allowed is None else allowed
    pools = []
    for g in domain.generators():
        d = domain.element_orders[g]
        if exact_order:
            pools.append([y for y in pool if codomain.element_orders[y] == d])
        else:
            pools.append([y for y in pool if d % codomain.element_orders[y] == 0])
    return pools


_prefix_cache: dict[int, tuple] = {}


def _prefix_layers(domain: FiniteGroup):
    """Closure chain of the generator prefixes, for incremental backtracking.

    For each prefix gens[:i+1], ``layers[i]`` lists the elements that enter the
    closure at step i as (element, earlier element, generator index) triples in
    an order where the parent is always assigned first, and ``closures[i]``
    holds the whole closure so far as an index array.
    """
    if id(domain) not in _prefix_cache:
        gens = domain.generators()
        t = domain.table
        seen = [False] * domain.order
        seen[domain.identity] = True
        members = [domain.identity]
        layers = []
        closures = []
        for i in range(len(gens)):
            new: list[tuple[int, int, int]] = []
            queue = list(members)
            while queue:
                x = queue.pop()
                for j in range(i + 1):
                    y = t[x][gens[j]]
                    if not seen[y]:
                        seen[y] = True
                        new.append((y, x, j))
                        members.append(y)
                        queue.append(y)
            layers.append(tuple(new))
            closures.append(np.array(members, dtype=np.intp))
        gen_cols = [np.array([t[x][g] for x in range(domain.order)], dtype=np.intp) for g in gens]
        # the group itself is kept in the value so the id key cannot be reused
        _prefix_cache[id(domain)] = (domain, gens, layers, closures, gen_cols)
    return _prefix_cache[id(domain)][1:]


def _maps_from_generator_images(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    pools: Sequence[Sequence[int]],
    bijective_only: bool = False,
) -> list[GroupMap]:
    """Depth-first search over generator images; validated maps come out sorted.

    Each level assigns one generator image, extends the map over the closure
    of the generators so far, and prunes immediately unless the partial map is
    a homomorphism there (checked as f(x * g) = f(x) * f(g), which propagates
    to all words), and injective when only bijections are wanted.
    """
    gens, layers, closures, gen_cols = _prefix_layers(domain)
    tc = codomain.table
    tc_np = np.array(tc, dtype=np.intp)
    n = domain.order
    k = len(gens)
    out: list[GroupMap] = []
    if k == 0:
        return [GroupMap(domain, codomain, [codomain.identity] * n, hom=True)]
    values = [-1] * n
    values[domain.identity] = codomain.identity
    images = [-1] * k

    def descend(i: int) -> None:
        layer = layers[i]
        closure = closures[i]
        for c in pools[i]:
            images[i] = c
            for x, prev, j in layer:
                values[x] = tc[values[prev]][images[j]]
            va = np.fromiter(values, dtype=np.intp, count=n)
            vs = va[closure]
            ok = not bijective_only or np.unique(vs).size == closure.size
            if ok:
                for j in range(i + 1):
                    if not np.array_equal(va[gen_cols[j][closure]], tc_np[vs, images[j]]):
                        ok = False
                        break
            if ok:
                if i + 1 == k:
                    out.append(GroupMap(domain, codomain, values, hom=True))
                else:
                    descend(i + 1)
        for x, _, _ in layer:
            values[x] = -1

    descend(0)
    out.sort(key=lambda m: m.values)
    return out


def enumerate_homs(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    restrict_codomain: Optional[Subgroup] = None,
) -> HomSet:
    """Every homomorphism domain -> codomain, optionally with image inside a subgroup.

    Candidates assign each generator an image whose order divides the
    generator's, then each candidate map is validated on all (element,
    generator) products.  Results are cached and canonically sorted.
    """
    allowed: Optional[tuple[int, ...]] = None
    key = (id(domain), id(codomain), None)
    if restrict_codomain is not None:
        if restrict_codomain.parent is not codomain:
            raise PreconditionError("restriction subgroup must live in the codomain")
        allowed = restrict_codomain.elements
        key = (id(domain), id(codomain), allowed)
    if key not in _hom_cache:
        pools = _candidate_images(domain, codomain, allowed, exact_order=False)
        members = _maps_from_generator_images(domain, codomain, pools)
        _hom_cache[key] = HomSet(domain, codomain, tuple(members))
    return _hom_cache[key]


def enumerate_endos(g: FiniteGroup) -> HomSet:
    return enumerate_homs(g, g)


def enumerate_autos(g: FiniteGroup) -> HomSet:
    """Every automorphism, via order-preserving generator images."""
    if id(g) not in _auto_cache:
        pools = _candidate_images(g, g, None, exact_order=True)
        members = _maps_from_generator_images(g, g, pools, bijective_only=True)
        _auto_cache[id(g)] = HomSet(g, g, tuple(members))
    return _auto_cache[id(g)]


def power_map(f: GroupMap, k: int) -> GroupMap:
    """k-fold composite of an endomorphism with itself (k >= 1)."""
    if not f.is_endo():
        raise PreconditionError("powers are defined for endomorphisms only")
    if k < 1:
        raise PreconditionError(f"power must be >= 1, got {k}")
    acc = f
    for _ in range(k - 1):
        acc = compose(f, acc)
    return acc


def fitting_decomposition(f: GroupMap) -> tuple[int, DirectFactorization]:
    """Split the group along a normal endomorphism.

    Returns the least r >= 1 with im f^r = im f^(r+1) and ker f^r = ker f^(r+1),
    together with the validated factorization  G = im f^r x ker f^r.
    """
    if not is_normal_endo(f):
        raise PreconditionError("fitting decomposition needs a normal endomorphism")
    g = f.domain
    e = g.identity
    power = f
    r = 1
    while True:
        im_r = frozenset(power.values)
        ker_r = frozenset(x for x in range(g.order) if power.values[x] == e)
        nxt = compose(f, power)
        im_n = frozenset(nxt.values)
        ker_n = frozenset(x for x in range(g.order) if nxt.values[x] == e)
        if im_r == im_n and ker_r == ker_n:
            break
        power = nxt
        r += 1
        if r > g.order:
            raise StructuralError("image/kernel chains failed to stabilize")
    factorization = DirectFactorization(g, Subgroup(g, im_r), Subgroup(g, ker_r))
    return r, factorization
