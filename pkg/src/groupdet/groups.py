"""Finite groups as multiplication tables, plus a small catalog of named groups.

Elements are integers ``0 .. order-1`` indexing into a row-major product
table.  The catalog covers cyclic, dihedral, symmetric, quaternion and
elementary abelian groups, direct products of those, and tables loaded from
files.  Expressions follow the grammar::

    expr := atom | atom "x" expr
    atom := "C"<n> | "D"<n> | "S"<n> | "Q8" | "E"<p>"^"<k> | "@"<path>

``D<n>`` is the dihedral group of order ``n`` (so ``D6`` is isomorphic to
``S3``).  ``E<p>^<k>`` is the elementary abelian group of order ``p**k``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ParseError, PreconditionError, StructuralError, ValidationError

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "DirectFactorization",
    "CommonFactorWitness",
    "build_group",
    "group_from_table",
    "load_table_file",
    "direct_product",
    "are_isomorphic",
    "common_nontrivial_factor",
    "FULL_ASSOCIATIVITY_LIMIT",
]

# Tables up to this order get the full n^3 associativity check; larger ones
# are spot-checked on 10 * n^2 random triples.
FULL_ASSOCIATIVITY_LIMIT = 256

_SAMPLED_TRIPLES_FACTOR = 10
_SAMPLE_SEED = 0x5EED


def _validate_table(table: Sequence[Sequence[int]], order: int) -> None:
    """Check Latin-square and associativity properties, raising ValidationError."""
    arr = np.asarray(table, dtype=np.int64)
    if arr.shape != (order, order):
        raise ValidationError(f"table shape {arr.shape} does not match order {order}")
    if arr.min() < 0 or arr.max() >= order:
        raise ValidationError("table entries must lie in 0..order-1")
    want = np.arange(order)
    for i in range(order):
        if not np.array_equal(np.sort(arr[i]), want):
            raise ValidationError(f"row {i} is not a permutation: not a Latin square")
        if not np.array_equal(np.sort(arr[:, i]), want):
            raise ValidationError(f"column {i} is not a permutation: not a Latin square")
    if order <= FULL_ASSOCIATIVITY_LIMIT:
        left = arr[arr, :]          # left[a,b,c] = (a*b)*c
        right = arr[:, arr]         # right[a,b,c] = a*(b*c)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            a, b, c = (int(v) for v in bad)
            raise ValidationError(
                f"associativity fails at triple ({a}, {b}, {c}): "
                f"({a}*{b})*{c} = {int(left[a, b, c])} but {a}*({b}*{c}) = {int(right[a, b, c])}"
            )
    else:
        rng = np.random.default_rng(_SAMPLE_SEED)
        trips = rng.integers(0, order, size=(_SAMPLED_TRIPLES_FACTOR * order * order, 3))
        a, b, c = trips[:, 0], trips[:, 1], trips[:, 2]
        left = arr[arr[a, b], c]
        right = arr[a, arr[b, c]]
        if not np.array_equal(left, right):
            k = int(np.argwhere(left != right)[0][0])
            raise ValidationError(
                f"associativity fails at sampled triple "
                f"({int(a[k])}, {int(b[k])}, {int(c[k])})"
            )


class FiniteGroup:
    """A finite group given by its multiplication table.

    The table is validated on construction (Latin square always; associativity
    fully up to order ``FULL_ASSOCIATIVITY_LIMIT``, sampled above that).
    Instances are immutable; derived data (center, subgroups, ...) is computed
    lazily and cached.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        name: str = "",
        labels: Optional[Sequence[str]] = None,
        _factors: Optional[tuple["FiniteGroup", ...]] = None,
    ):
        rows = tuple(tuple(int(v) for v in row) for row in table)
        order = len(rows)
        if order == 0:
            raise ValidationError("a group table must have at least one element")
        _validate_table(rows, order)
        self.table = rows
        self.order = order
        self.name = name or f"table of order {order}"
        self.identity = self._find_identity()
        self.inverse = tuple(rows[x].index(self.identity) for x in range(order))
        if labels is not None:
            if len(labels) != order:
                raise ValidationError(f"expected {order} labels, got {len(labels)}")
            self.labels = tuple(str(s) for s in labels)
        else:
            self.labels = tuple(str(i) for i in range(order))
        # Factor metadata for groups built as direct products (None otherwise).
        self.factors = _factors
        self._cache: dict = {}

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(self.order)):
                return e
        raise ValidationError("table has no identity element")

    # -- element arithmetic ------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, x: int, g: int) -> int:
        """Conjugate of x by g: g^-1 * x * g."""
        t = self.table
        return t[t[self.inverse[g]][x]][g]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        acc = self.identity
        while k:
            if k & 1:
                acc = self.table[acc][x]
            x = self.table[x][x]
            k >>= 1
        return acc

    def element_order(self, x: int) -> int:
        e, t = self.identity, self.table
        y, k = x, 1
        while y != e:
            y = t[y][x]
            k += 1
        return k

    # -- lazily cached structure -------------------------------------------

    @property
    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            t = self.table
            self._cache["abelian"] = all(
                t[a][b] == t[b][a] for a in range(self.order) for b in range(a)
            )
        return self._cache["abelian"]

    @property
    def element_orders(self) -> tuple[int, ...]:
        if "orders" not in self._cache:
            self._cache["orders"] = tuple(self.element_order(x) for x in range(self.order))
        return self._cache["orders"]

    def center(self) -> "Subgroup":
        """Elements commuting with everything, as a subgroup."""
        if "center" not in self._cache:
            t = self.table
            zs = [
                z
                for z in range(self.order)
                if all(t[z][x] == t[x][z] for x in range(self.order))
            ]
            self._cache["center"] = Subgroup(self, zs)
        return self._cache["center"]

    def derived_subgroup(self) -> "Subgroup":
        """The subgroup generated by all commutators."""
        if "derived" not in self._cache:
            t, inv = self.table, self.inverse
            comms = {
                t[t[inv[a]][inv[b]]][t[a][b]]
                for a in range(self.order)
                for b in range(self.order)
            }
            self._cache["derived"] = Subgroup(self, self.closure(comms))
        return self._cache["derived"]

    def is_stem(self) -> bool:
        """True when the center is contained in the derived subgroup."""
        derived = set(self.derived_subgroup().elements)
        return all(z in derived for z in self.center().elements)

    def closure(self, seed: Iterable[int]) -> tuple[int, ...]:
        """Subgroup generated by the seed elements, as a sorted tuple."""
        t = self.table
        got = {self.identity}
        frontier = [self.identity]
        for s in seed:
            if s not in got:
                got.add(s)
                frontier.append(s)
        while frontier:
            x = frontier.pop()
            for y in tuple(got):
                for z in (t[x][y], t[y][x]):
                    if z not in got:
                        got.add(z)
                        frontier.append(z)
        return tuple(sorted(got))

    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by descending element order."""
        if "generators" not in self._cache:
            gens: list[int] = []
            have = {self.identity}
            by_order = sorted(
                range(self.order), key=lambda x: (-self.element_orders[x], x)
            )
            for x in by_order:
                if x not in have:
                    gens.append(x)
                    have = set(self.closure(gens))
                    if len(have) == self.order:
                        break
            self._cache["generators"] = tuple(gens)
        return self._cache["generators"]

    def word_tree(self) -> tuple[tuple[int, ...], list[tuple[int, int]]]:
        """Breadth-first expression of every element over ``generators()``.

        Returns (bfs order, parents) where parents[x] = (prev, gen_index) with
        x = prev * gens[gen_index]; the identity has parent (-1, -1).
        """
        if "word_tree" not in self._cache:
            gens = self.generators()
            t = self.table
            parents: list[tuple[int, int]] = [(-2, -2)] * self.order
            parents[self.identity] = (-1, -1)
            order_out = [self.identity]
            queue = [self.identity]
            while queue:
                x = queue.pop(0)
                for gi, g in enumerate(gens):
                    y = t[x][g]
                    if parents[y] == (-2, -2):
                        parents[y] = (x, gi)
                        order_out.append(y)
                        queue.append(y)
            if len(order_out) != self.order:
                raise StructuralError("generators() failed to generate the group")
            self._cache["word_tree"] = (tuple(order_out), parents)
        return self._cache["word_tree"]

    def all_subgroups(self) -> tuple["Subgroup", ...]:
        """Every subgroup, found by closing generator sets level by level."""
        if "subgroups" not in self._cache:
            found: dict[tuple[int, ...], None] = {(self.identity,): None}
            frontier = [(self.identity,)]
            while frontier:
                elems = frontier.pop()
                for x in range(self.order):
                    if x in elems:
                        continue
                    bigger = self.closure(elems + (x,))
                    if bigger not in found:
                        found[bigger] = None
                        frontier.append(bigger)
            subs = sorted(found, key=lambda s: (len(s), s))
            self._cache["subgroups"] = tuple(Subgroup(self, s) for s in subs)
        return self._cache["subgroups"]

    def normal_subgroups(self) -> tuple["Subgroup", ...]:
        if "normal_subgroups" not in self._cache:
            self._cache["normal_subgroups"] = tuple(
                s for s in self.all_subgroups() if s.is_normal()
            )
        return self._cache["normal_subgroups"]

    def direct_factorizations(self) -> tuple["DirectFactorization", ...]:
        """All unordered internal direct factorizations, including (1, G)."""
        if "factorizations" not in self._cache:
            normals = self.normal_subgroups()
            out = []
            for i, a in enumerate(normals):
                for b in normals[i:]:
                    if len(a.elements) * len(b.elements) != self.order:
                        continue
                    if set(a.elements) & set(b.elements) != {self.identity}:
                        continue
                    out.append(DirectFactorization(self, a, b))
            self._cache["factorizations"] = tuple(out)
        return self._cache["factorizations"]

    def direct_factors(self, nontrivial_only: bool = True) -> tuple["Subgroup", ...]:
        """Subgroups occurring as a direct factor (the whole group included)."""
        seen: dict[tuple[int, ...], Subgroup] = {}
        for fact in self.direct_factorizations():
            for side in (fact.left, fact.right):
                if nontrivial_only and len(side.elements) == 1:
                    continue
                seen.setdefault(side.elements, side)
        return tuple(seen[k] for k in sorted(seen))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __hash__(self) -> int:
        return id(self)

    def __eq__(self, other) -> bool:
        return self is other


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted element tuple."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __init__(self, parent: FiniteGroup, elements: Iterable[int]):
        elems = tuple(sorted(set(int(x) for x in elements)))
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "elements", elems)
        if parent.identity not in elems:
            raise StructuralError("subgroup must contain the identity")
        es = set(elems)
        t = parent.table
        for a in elems:
            if parent.inverse[a] not in es:
                raise StructuralError(f"subgroup not closed under inverse at {a}")
            for b in elems:
                if t[a][b] not in es:
                    raise StructuralError(f"subgroup not closed under product at ({a}, {b})")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)

    def is_normal(self) -> bool:
        es = set(self.elements)
        return all(
            self.parent.conj(x, g) in es
            for x in self.elements
            for g in range(self.parent.order)
        )

    def is_central(self) -> bool:
        zs = set(self.parent.center().elements)
        return all(x in zs for x in self.elements)

    def as_group(self) -> tuple[FiniteGroup, dict[int, int]]:
        """Reindex to a standalone FiniteGroup; also return parent->local index map."""
        index = {x: i for i, x in enumerate(self.elements)}
        t = self.parent.table
        table = [
            [index[t[a][b]] for b in self.elements]
            for a in self.elements
        ]
        labels = [self.parent.labels[x] for x in self.elements]
        g = FiniteGroup(table, name=f"subgroup of {self.parent.name}", labels=labels)
        return g, index


@dataclass(frozen=True)
class DirectFactorization:
    """An internal direct factorization ``parent = left x right``.

    Validated on construction: both factors normal, trivial intersection,
    orders multiply to the parent order, and the factors commute elementwise.
    """

    parent: FiniteGroup
    left: Subgroup
    right: Subgroup

    def __post_init__(self):
        p = self.parent
        if self.left.parent is not p or self.right.parent is not p:
            raise StructuralError("factors must be subgroups of the same parent")
        if set(self.left.elements) & set(self.right.elements) != {p.identity}:
            raise StructuralError("factors must intersect trivially")
        if self.left.order * self.right.order != p.order:
            raise StructuralError("factor orders must multiply to the parent order")
        if not (self.left.is_normal() and self.right.is_normal()):
            raise StructuralError("both factors must be normal")
        t = p.table
        for a in self.left.elements:
            for b in self.right.elements:
                if t[a][b] != t[b][a]:
                    raise StructuralError(f"factors fail to commute at ({a}, {b})")


@dataclass(frozen=True)
class CommonFactorWitness:
    """A common direct factor shared by two groups.

    ``h_factorization``/``k_factorization`` exhibit each factor with a
    complement, and ``iso_values`` maps the local elements of the extracted
    h-side factor group onto those of the k-side factor group.
    """

    h_factorization: DirectFactorization
    k_factorization: DirectFactorization
    iso_values: tuple[int, ...]

    @property
    def h_factor(self) -> Subgroup:
        return self.h_factorization.left

    @property
    def k_factor(self) -> Subgroup:
        return self.k_factorization.left


# --------------------------------------------------------------------------
# Direct products
# --------------------------------------------------------------------------


def _flatten_factors(gs: Sequence[FiniteGroup]) -> tuple[FiniteGroup, ...]:
    flat: list[FiniteGroup] = []
    for g in gs:
        if g.factors is not None:
            flat.extend(g.factors)
        else:
            flat.append(g)
    return tuple(flat)


def product_strides(orders: Sequence[int]) -> tuple[int, ...]:
    """Mixed-radix strides: index = sum(x_i * stride_i), last factor fastest."""
    strides = [1] * len(orders)
    for i in range(len(orders) - 2, -1, -1):
        strides[i] = strides[i + 1] * orders[i + 1]
    return tuple(strides)


def product_encode(coords: Sequence[int], strides: Sequence[int]) -> int:
    return sum(c * s for c, s in zip(coords, strides))


def product_decode(x: int, orders: Sequence[int], strides: Sequence[int]) -> tuple[int, ...]:
    return tuple((x // s) % n for s, n in zip(strides, orders))


def direct_product(*factors: FiniteGroup, flatten: bool = True) -> FiniteGroup:
    """External direct product with factor metadata.

    By default products of products are flattened, so the factor list consists
    of non-product building blocks.  ``flatten=False`` keeps the factors
    exactly as given, which matters when a matrix is laid out over composite
    blocks.  Coordinates are encoded mixed-radix with the last factor varying
    fastest; for two factors this is (h, k) -> h*|K| + k.
    """
    flat = _flatten_factors(factors) if flatten else tuple(factors)
    if not flat:
        raise ValidationError("direct product needs at least one factor")
    if len(flat) == 1:
        return flat[0]
    orders = [g.order for g in flat]
    strides = product_strides(orders)
    n = 1
    for o in orders:
        n *= o
    coords = [product_decode(x, orders, strides) for x in range(n)]
    table = [
        [
            product_encode([g.table[a[i]][b[i]] for i, g in enumerate(flat)], strides)
            for b in coords
        ]
        for a in coords
    ]
    labels = ["(" + ", ".join(g.labels[c] for g, c in zip(flat, cs)) + ")" for cs in coords]
    name = " x ".join(
        f"({g.name})" if g.factors is not None else g.name for g in flat
    )
    return FiniteGroup(table, name=name, labels=labels, _factors=flat)


def _require_product(g: FiniteGroup) -> tuple[FiniteGroup, ...]:
    if g.factors is None:
        raise PreconditionError(f"group {g.name!r} carries no direct-product metadata")
    return g.factors


def factor_embedding_values(product: FiniteGroup, i: int) -> tuple[int, ...]:
    """Value array of the canonical injection of factor i into the product."""
    factors = _require_product(product)
    orders = [g.order for g in factors]
    strides = product_strides(orders)
    base = [g.identity for g in factors]
    out = []
    for x in range(factors[i].order):
        coords = list(base)
        coords[i] = x
        out.append(product_encode(coords, strides))
    return tuple(out)


def factor_projection_values(product: FiniteGroup, i: int) -> tuple[int, ...]:
    """Value array of the canonical projection of the product onto factor i."""
    factors = _require_product(product)
    orders = [g.order for g in factors]
    strides = product_strides(orders)
    return tuple(product_decode(x, orders, strides)[i] for x in range(product.order))


def canonical_factorization(product: FiniteGroup) -> DirectFactorization:
    """The recorded factorization (first factor, product of the rest)."""
    factors = _require_product(product)
    left = Subgroup(product, factor_embedding_values(product, 0))
    orders = [g.order for g in factors]
    strides = product_strides(orders)
    rest = []
    for x in range(product.order):
        if product_decode(x, orders, strides)[0] == factors[0].identity:
            rest.append(x)
    right = Subgroup(product, rest)
    return DirectFactorization(product, left, right)


# --------------------------------------------------------------------------
# Catalog constructors
# --------------------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ParseError(f"cyclic group needs order >= 1, got {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"C{n}")


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order; D6 is isomorphic to S3."""
    if order < 2 or order % 2:
        raise ParseError(f"dihedral group needs an even order >= 2, got {order}")
    m = order // 2
    # Elements 0..m-1 are rotations r^i, m..2m-1 are reflections s*r^i.
    def mul(a: int, b: int) -> int:
        ra, fa = a % m, a >= m
        rb, fb = b % m, b >= m
        if not fa and not fb:
            return (ra + rb) % m
        if not fa and fb:
            return m + (rb - ra) % m
        if fa and not fb:
            return m + (ra + rb) % m
        return (rb - ra) % m

    table = [[mul(a, b) for b in range(order)] for a in range(order)]
    labels = [f"r{i}" for i in range(m)] + [f"sr{i}" for i in range(m)]
    labels[0] = "e"
    return FiniteGroup(table, name=f"D{order}", labels=labels)


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ParseError(f"symmetric group needs degree >= 1, got {n}")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms]
        for p in perms
    ]
    labels = ["".join(str(v) for v in p) for p in perms]
    return FiniteGroup(table, name=f"S{n}", labels=labels)


def quaternion8() -> FiniteGroup:
    # Elements: 1, -1, i, -i, j, -j, k, -k.
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # Axis products: (axis a) * (axis b) -> (sign, axis) with 0=1, 1=i, 2=j, 3=k.
    axis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(a: int, b: int) -> int:
        sa, xa = (-1 if a & 1 else 1), a >> 1
        sb, xb = (-1 if b & 1 else 1), b >> 1
        s, x = axis[(xa, xb)]
        s *= sa * sb
        return (x << 1) | (0 if s > 0 else 1)

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return FiniteGroup(table, name="Q8", labels=labels)


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if p < 2 or k < 1:
        raise ParseError(f"elementary abelian group needs p >= 2 and k >= 1, got E{p}^{k}")
    if any(p % d == 0 for d in range(2, p)):
        raise ParseError(f"elementary abelian group needs a prime p, got E{p}^{k}")
    n = p**k
    digits = [tuple((x // p**i) % p for i in range(k)) for x in range(n)]

    def add(a: int, b: int) -> int:
        return sum(((da + db) % p) * p**i for i, (da, db) in enumerate(zip(digits[a], digits[b])))

    table = [[add(a, b) for b in range(n)] for a in range(n)]
    labels = ["(" + ",".join(str(d) for d in ds) + ")" for ds in digits]
    return FiniteGroup(table, name=f"E{p}^{k}", labels=labels)


def load_table_file(path: str) -> FiniteGroup:
    """Load a group table file: order line, N table rows, optional labels: line."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ParseError(f"{path}: empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"{path}: first line must be the order, got {lines[0]!r}") from None
    if len(lines) < n + 1:
        raise ParseError(f"{path}: expected {n} table rows, found {len(lines) - 1}")
    table = []
    for i in range(1, n + 1):
        row = lines[i].split()
        if len(row) != n:
            raise ParseError(f"{path}: row {i} has {len(row)} entries, expected {n}")
        try:
            table.append([int(v) for v in row])
        except ValueError:
            raise ParseError(f"{path}: row {i} contains a non-integer entry") from None
    labels = None
    extra = lines[n + 1:]
    if extra:
        if len(extra) != 1 or not extra[0].startswith("labels:"):
            raise ParseError(f"{path}: unexpected trailing content after table rows")
        labels = extra[0][len("labels:"):].split()
        if len(labels) != n:
            raise ParseError(f"{path}: expected {n} labels, got {len(labels)}")
    return FiniteGroup(table, name=f"@{path}", labels=labels)


def group_from_table(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    return FiniteGroup(table, name=name)


_ATOM_RE = re.compile(r"^(C(\d+)|D(\d+)|S(\d+)|Q8|E(\d+)\^(\d+))$")

_build_cache: dict[str, FiniteGroup] = {}


def _build_atom(atom: str) -> FiniteGroup:
    if atom.startswith("@"):
        return load_table_file(atom[1:])
    m = _ATOM_RE.match(atom)
    if not m:
        raise ParseError(f"unrecognized group atom {atom!r}")
    if atom == "Q8":
        return quaternion8()
    kind = atom[0]
    if kind == "C":
        return cyclic(int(m.group(2)))
    if kind == "D":
        return dihedral(int(m.group(3)))
    if kind == "S":
        return symmetric(int(m.group(4)))
    return elementary_abelian(int(m.group(5)), int(m.group(6)))


def _split_atoms(spec: str) -> list[str]:
    s = spec.strip()
    if not s:
        raise ParseError("empty group expression")
    if any(ch.isspace() for ch in s):
        tokens = s.split()
        atoms, expect_atom = [], True
        for tok in tokens:
            if expect_atom:
                if tok == "x":
                    raise ParseError(f"malformed group expression {spec!r}")
                atoms.append(tok)
            elif tok != "x":
                raise ParseError(f"expected 'x' between atoms in {spec!r}")
            expect_atom = not expect_atom
        if expect_atom:
            raise ParseError(f"trailing 'x' in group expression {spec!r}")
        return atoms
    if s.startswith("@"):
        return [s]
    return s.split("x")


def build_group(spec: str) -> FiniteGroup:
    """Build a group from an expression like ``"C4"`` or ``"S3 x C4"``.

    Results are cached per normalized spec, so repeated builds return the
    same object.  Product expressions record flat factor metadata used by the
    matrix layer.
    """
    atoms = _split_atoms(spec)
    if any(not a for a in atoms):
        raise ParseError(f"malformed group expression {spec!r}")
    key = " x ".join(atoms)
    if key in _build_cache:
        return _build_cache[key]
    parts = [_build_atom(a) for a in atoms]
    g = parts[0] if len(parts) == 1 else direct_product(*parts)
    _build_cache[key] = g
    return g


def group_spec(g: FiniteGroup) -> str:
    """The build expression for a catalog-built group (its name)."""
    return g.name


# --------------------------------------------------------------------------
# Isomorphism testing and common factors
# --------------------------------------------------------------------------


def _order_profile(g: FiniteGroup) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for d in g.element_orders:
        counts[d] = counts.get(d, 0) + 1
    return tuple(sorted(counts.items()))


def are_isomorphic(g1: FiniteGroup, g2: FiniteGroup) -> Optional[tuple[int, ...]]:
    """An isomorphism g1 -> g2 as a value array, or None.

    Searches generator images (matching element orders exactly) and validates
    candidate maps on all (element, generator) products.
    """
    if g1.order != g2.order:
        return None
    if g1 is g2:
        return tuple(range(g1.order))
    if (
        _order_profile(g1) != _order_profile(g2)
        or g1.is_abelian != g2.is_abelian
        or g1.center().order != g2.center().order
        or g1.derived_subgroup().order != g2.derived_subgroup().order
    ):
        return None
    gens = g1.generators()
    bfs, parents = g1.word_tree()
    pools = [
        [y for y in range(g2.order) if g2.element_orders[y] == g1.element_orders[g]]
        for g in gens
    ]
    t1, t2 = g1.table, g2.table
    n = g1.order
    for images in itertools.product(*pools):
        values = [-1] * n
        values[g1.identity] = g2.identity
        for x in bfs[1:]:
            prev, gi = parents[x]
            values[x] = t2[values[prev]][images[gi]]
        if len(set(values)) != n:
            continue
        ok = True
        for x in range(n):
            vx = values[x]
            for gi, g in enumerate(gens):
                if values[t1[x][g]] != t2[vx][images[gi]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(values)
    return None


def common_nontrivial_factor(
    h: FiniteGroup, k: FiniteGroup, central_only: bool = False
) -> Optional[CommonFactorWitness]:
    """Search for a shared nontrivial direct factor, up to isomorphism.

    With ``central_only`` the search is restricted to factors lying inside the
    center of their parent.  Returns the first witness in canonical order
    (factors sorted by order then elements), or None.
    """
    def factor_list(g: FiniteGroup) -> list[DirectFactorization]:
        out = []
        seen: set[tuple[int, ...]] = set()
        for fact in g.direct_factorizations():
            for side, other in ((fact.left, fact.right), (fact.right, fact.left)):
                if side.order == 1 or side.elements in seen:
                    continue
                if central_only and not side.is_central():
                    continue
                seen.add(side.elements)
                out.append(DirectFactorization(g, side, other))
        out.sort(key=lambda f: (f.left.order, f.left.elements))
        return out

    h_facts = factor_list(h)
    k_facts = factor_list(k)
    # Dedup candidate factors up to isomorphism before pairing.
    for hf in h_facts:
        hg, _ = hf.left.as_group()
        for kf in k_facts:
            if kf.left.order != hf.left.order:
                continue
            kg, _ = kf.left.as_group()
            iso = are_isomorphic(hg, kg)
            if iso is not None:
                return CommonFactorWitness(hf, kf, iso)
    return None
