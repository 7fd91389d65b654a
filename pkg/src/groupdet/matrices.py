"""Square matrices of homomorphisms representing endomorphisms of a direct product.

An ``EndoMatrix`` over factors (H_1, ..., H_n) holds one homomorphism
``entries[i][j]: H_j -> H_i`` per cell, subject to the row condition that
images in the same row commute elementwise.  ``recompose`` turns a matrix
into the endomorphism (x_1, ..., x_n) -> (prod_j entries[i][j](x_j))_i and
``decompose`` inverts that correspondence.  Matrix multiplication is
row-by-column with composition as the product and the pointwise sum as the
addition, accumulated in ascending column order.
"""
from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .errors import (
    FactorizationError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    StructuralError,
)
from .groups import (
    FiniteGroup,
    build_group,
    direct_product,
    factor_embedding_values,
    factor_projection_values,
    product_decode,
    product_encode,
    product_strides,
)
from .maps import (
    GroupMap,
    HomSet,
    compose,
    enumerate_autos,
    enumerate_homs,
    identity_map,
    invert,
    is_bijective,
    is_central_automorphism,
    pointwise_diff,
    pointwise_sum,
    zero_map,
)

__all__ = [
    "ProductGroup",
    "EndoMatrix",
    "decompose",
    "recompose",
    "matrix_multiply",
    "identity_matrix",
    "in_A",
    "in_Z",
    "enumerate_A",
    "enumerate_Z",
    "enumerate_m_matrices",
    "enumerate_aut_matrices",
    "astruc_factorize",
    "map_to_dict",
    "map_from_dict",
    "matrix_to_dict",
    "matrix_from_dict",
    "DEFAULT_AUT_ENUM_LIMIT",
]

DEFAULT_AUT_ENUM_LIMIT = 64

_product_cache: dict[tuple[int, ...], FiniteGroup] = {}


class ProductGroup:
    """A direct product together with its canonical injections and projections."""

    def __init__(self, product: FiniteGroup):
        if product.factors is None:
            raise PreconditionError(
                f"group {product.name!r} was not built as a direct product"
            )
        self.product = product
        self.factors = product.factors
        self.orders = tuple(g.order for g in self.factors)
        self.strides = product_strides(self.orders)
        self.injections = tuple(
            GroupMap(f, product, factor_embedding_values(product, i), hom=True)
            for i, f in enumerate(self.factors)
        )
        self.projections = tuple(
            GroupMap(product, f, factor_projection_values(product, i), hom=True)
            for i, f in enumerate(self.factors)
        )

    @classmethod
    def of(cls, *factors: FiniteGroup) -> "ProductGroup":
        """Product over exactly these factors, composite blocks kept whole."""
        key = tuple(id(f) for f in factors)
        if key not in _product_cache:
            _product_cache[key] = direct_product(*factors, flatten=False)
        return cls(_product_cache[key])

    @property
    def n(self) -> int:
        return len(self.factors)

    def encode(self, coords: Sequence[int]) -> int:
        return product_encode(coords, self.strides)

    def decode(self, x: int) -> tuple[int, ...]:
        return product_decode(x, self.orders, self.strides)

    def __repr__(self) -> str:
        return f"ProductGroup({' x '.join(f.name for f in self.factors)})"


def _images_commute(a: GroupMap, b: GroupMap) -> bool:
    t = a.codomain.table
    return all(t[x][y] == t[y][x] for x in a.image() for y in b.image())


class EndoMatrix:
    """An n x n matrix of homomorphisms with commuting row images.

    Construction validates the shape, the entry domains and codomains, the
    homomorphism property of every entry, and the row commutation condition;
    pass ``trusted=True`` only for entries already known to satisfy all four.
    """

    __slots__ = ("factors", "entries")

    def __init__(
        self,
        factors: Sequence[FiniteGroup],
        entries: Sequence[Sequence[GroupMap]],
        trusted: bool = False,
    ):
        facs = tuple(factors)
        n = len(facs)
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise StructuralError(f"expected a {n} x {n} matrix of maps")
        self.factors = facs
        self.entries = rows
        if trusted:
            return
        for i in range(n):
            for j in range(n):
                e = rows[i][j]
                if e.domain is not facs[j] or e.codomain is not facs[i]:
                    raise StructuralError(
                        f"entry ({i}, {j}) maps {e.domain.name} -> {e.codomain.name}, "
                        f"expected {facs[j].name} -> {facs[i].name}"
                    )
                if not e.is_homomorphism():
                    raise StructuralError(f"entry ({i}, {j}) is not a homomorphism")
        for i in range(n):
            for j in range(n):
                for k in range(j + 1, n):
                    if not _images_commute(rows[i][j], rows[i][k]):
                        raise StructuralError(
                            f"row {i} images at columns {j} and {k} do not commute"
                        )

    @property
    def n(self) -> int:
        return len(self.factors)

    def entry(self, i: int, j: int) -> GroupMap:
        return self.entries[i][j]

    def key(self) -> tuple:
        return tuple(e.values for row in self.entries for e in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EndoMatrix)
            and self.factors == other.factors
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((tuple(id(f) for f in self.factors), self.key()))

    def __repr__(self) -> str:
        names = " x ".join(f.name for f in self.factors)
        return f"EndoMatrix({names}, entries={[[list(e.values) for e in row] for row in self.entries]})"


def decompose(phi: GroupMap, pg: Optional[ProductGroup] = None) -> EndoMatrix:
    """Split an endomorphism of a direct product into its matrix of components."""
    if pg is None:
        if phi.domain is not phi.codomain:
            raise PreconditionError("decompose needs an endomorphism")
        pg = ProductGroup(phi.domain)
    if phi.domain is not pg.product or phi.codomain is not pg.product:
        raise PreconditionError("map is not an endomorphism of the given product")
    if not phi.is_homomorphism():
        raise PreconditionError("decompose needs a homomorphism")
    entries = [
        [compose(pg.projections[i], compose(phi, pg.injections[j])) for j in range(pg.n)]
        for i in range(pg.n)
    ]
    return EndoMatrix(pg.factors, entries)


def recompose(m: EndoMatrix, pg: Optional[ProductGroup] = None) -> GroupMap:
    """The endomorphism (x_1, ..., x_n) -> (prod_j m[i][j](x_j))_i."""
    if pg is None:
        pg = ProductGroup.of(*m.factors)
    if pg.factors != m.factors:
        raise StructuralError("product group does not match the matrix factors")
    n = pg.n
    prod = pg.product
    values = []
    rows = m.entries
    for x in range(prod.order):
        coords = pg.decode(x)
        out = []
        for i in range(n):
            fac = pg.factors[i]
            acc = fac.identity
            t = fac.table
            row = rows[i]
            for j in range(n):
                acc = t[acc][row[j].values[coords[j]]]
            out.append(acc)
        values.append(pg.encode(out))
    return GroupMap(prod, prod, values, hom=True)


def identity_matrix(factors: Sequence[FiniteGroup]) -> EndoMatrix:
    facs = tuple(factors)
    entries = [
        [identity_map(f) if i == j else zero_map(facs[j], f) for j in range(len(facs))]
        for i, f in enumerate(facs)
    ]
    return EndoMatrix(facs, entries, trusted=True)


def matrix_multiply(a: EndoMatrix, b: EndoMatrix) -> EndoMatrix:
    """Row-by-column product; equals decompose(recompose(a) after recompose(b)).

    The factors commute because each term's image sits inside the image of an
    entry of ``a``, and row images of ``a`` commute columnwise; the product of
    two valid matrices is again valid, so the result is built trusted.
    """
    if a.factors != b.factors:
        raise StructuralError("matrix factors do not match")
    n = a.n
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = compose(a.entries[i][0], b.entries[0][j])
            for k in range(1, n):
                term = compose(a.entries[i][k], b.entries[k][j])
                acc = pointwise_sum(acc, term, require_commuting=True)
            row.append(acc)
        entries.append(row)
    return EndoMatrix(a.factors, entries, trusted=True)


def in_A(m: EndoMatrix) -> bool:
    """Diagonal entries bijective, off-diagonal images inside the codomain center."""
    n = m.n
    for i in range(n):
        if not is_bijective(m.entries[i][i]):
            return False
    for i in range(n):
        center = set(m.factors[i].center().elements)
        for j in range(n):
            if i != j and not m.entries[i][j].image() <= center:
                return False
    return True


def in_Z(m: EndoMatrix) -> bool:
    """Like in_A but with central automorphisms on the diagonal (2 x 2 only)."""
    if m.n != 2:
        raise PreconditionError("in_Z is defined for 2 x 2 matrices")
    if not in_A(m):
        return False
    return all(is_central_automorphism(m.entries[i][i]) for i in range(2))


def _check_enum_bound(factors: Sequence[FiniteGroup], max_product_order: int) -> None:
    total = 1
    for f in factors:
        total *= f.order
    if total > max_product_order:
        raise ResourceLimitError(
            f"product order {total} exceeds the enumeration bound {max_product_order}"
        )


def _matrix_pools(
    factors: Sequence[FiniteGroup], central_diagonal: bool
) -> list[list[HomSet]]:
    """Per-cell hom-set pools: automorphisms on the diagonal, center-valued off it."""
    n = len(factors)
    pools: list[list[HomSet]] = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                auts = enumerate_autos(factors[i])
                if central_diagonal:
                    members = tuple(f for f in auts if is_central_automorphism(f))
                    auts = HomSet(factors[i], factors[i], members)
                row.append(auts)
            else:
                row.append(
                    enumerate_homs(factors[j], factors[i], restrict_codomain=factors[i].center())
                )
        pools.append(row)
    return pools


def _matrices_from_pools(
    factors: tuple[FiniteGroup, ...], pools: list[list[HomSet]], trusted: bool
) -> tuple[EndoMatrix, ...]:
    n = len(factors)
    flat = [pools[i][j] for i in range(n) for j in range(n)]
    out = []
    for combo in itertools.product(*flat):
        entries = [list(combo[i * n : (i + 1) * n]) for i in range(n)]
        out.append(EndoMatrix(factors, entries, trusted=trusted))
    return tuple(out)


def enumerate_A(
    factors: Sequence[FiniteGroup], max_product_order: int = DEFAULT_AUT_ENUM_LIMIT
) -> tuple[EndoMatrix, ...]:
    """All matrices with automorphism diagonal and center-valued off-diagonal."""
    facs = tuple(factors)
    _check_enum_bound(facs, max_product_order)
    pools = _matrix_pools(facs, central_diagonal=False)
    return _matrices_from_pools(facs, pools, trusted=True)


def enumerate_Z(
    factors: Sequence[FiniteGroup], max_product_order: int = DEFAULT_AUT_ENUM_LIMIT
) -> tuple[EndoMatrix, ...]:
    """Like enumerate_A with central automorphisms on the diagonal."""
    facs = tuple(factors)
    _check_enum_bound(facs, max_product_order)
    pools = _matrix_pools(facs, central_diagonal=True)
    return _matrices_from_pools(facs, pools, trusted=True)


def enumerate_m_matrices(
    factors: Sequence[FiniteGroup], max_count: int = 2_000_000
) -> tuple[EndoMatrix, ...]:
    """Every matrix of homomorphisms satisfying the row commutation condition.

    Rows are filtered independently (the condition only couples entries within
    a row), then combined.  ``max_count`` guards against runaway products.
    """
    facs = tuple(factors)
    n = len(facs)
    row_choices: list[list[tuple[GroupMap, ...]]] = []
    for i in range(n):
        pools = [enumerate_homs(facs[j], facs[i]) for j in range(n)]
        rows = []
        for combo in itertools.product(*pools):
            ok = True
            for a in range(n):
                for b in range(a + 1, n):
                    if not _images_commute(combo[a], combo[b]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                rows.append(combo)
        row_choices.append(rows)
    total = 1
    for rows in row_choices:
        total *= len(rows)
    if total > max_count:
        raise ResourceLimitError(f"{total} matrices exceed the bound {max_count}")
    out = []
    for rows in itertools.product(*row_choices):
        out.append(EndoMatrix(facs, list(rows), trusted=True))
    return tuple(out)


def enumerate_aut_matrices(
    pg: ProductGroup, max_product_order: int = DEFAULT_AUT_ENUM_LIMIT
) -> tuple[EndoMatrix, ...]:
    """Decompose every automorphism of the product, in canonical order."""
    if pg.product.order > max_product_order:
        raise ResourceLimitError(
            f"product order {pg.product.order} exceeds the enumeration bound "
            f"{max_product_order}"
        )
    return tuple(decompose(f, pg) for f in enumerate_autos(pg.product))


def astruc_factorize(m: EndoMatrix) -> tuple[EndoMatrix, EndoMatrix, EndoMatrix, EndoMatrix]:
    """Write a 2 x 2 member of A as diagonal * upper * lower * diagonal.

    Returns (d1, u, l, d2) with  m = d1 * u * l * d2, where d1 carries the
    alpha pivot folded with the unitriangular correction, u is upper
    unitriangular, l is lower unitriangular and d2 carries the delta pivot.
    Raises FactorizationError when the correction map is not bijective, which
    signals that A fails to be closed under multiplication for this pair.
    """
    if m.n != 2:
        raise PreconditionError("factorization is defined for 2 x 2 matrices")
    if not in_A(m):
        raise PreconditionError("factorization needs diagonal automorphisms and central off-diagonal images")
    h, k = m.factors
    alpha, beta = m.entries[0]
    gamma, delta = m.entries[1]
    beta_hat = compose(invert(alpha), compose(beta, invert(delta)))
    correction = pointwise_diff_identity(beta_hat, gamma)
    if not is_bijective(correction):
        raise FactorizationError(
            "unitriangular correction 1 - beta*gamma is not bijective; "
            "A is not multiplicatively closed for this pair"
        )
    id_h, id_k = identity_map(h), identity_map(k)
    zero_hk = zero_map(k, h)
    zero_kh = zero_map(h, k)
    d1 = EndoMatrix((h, k), [[compose(alpha, correction), zero_hk], [zero_kh, id_k]])
    u = EndoMatrix((h, k), [[id_h, compose(invert(correction), beta_hat)], [zero_kh, id_k]])
    l = EndoMatrix((h, k), [[id_h, zero_hk], [gamma, id_k]])
    d2 = EndoMatrix((h, k), [[id_h, zero_hk], [zero_kh, delta]])
    product = matrix_multiply(matrix_multiply(matrix_multiply(d1, u), l), d2)
    if product != m:
        raise FactorizationError("factorization failed to recompose the input")
    return d1, u, l, d2


def pointwise_diff_identity(beta_hat: GroupMap, gamma: GroupMap) -> GroupMap:
    """The self-map x -> x * (beta_hat(gamma(x)))^-1 used by the factorization."""
    h = gamma.domain
    return pointwise_diff(identity_map(h), compose(beta_hat, gamma), require_commuting=True)


# --------------------------------------------------------------------------
# JSON payloads
# --------------------------------------------------------------------------


def map_to_dict(f: GroupMap) -> dict:
    return {
        "domain": f.domain.name,
        "codomain": f.codomain.name,
        "values": list(f.values),
    }


def map_from_dict(d: dict) -> GroupMap:
    try:
        domain = build_group(d["domain"])
        codomain = build_group(d["codomain"])
        values = d["values"]
    except KeyError as exc:
        raise ParseError(f"map payload missing field {exc}") from None
    if not isinstance(values, (list, tuple)):
        raise ParseError("map payload 'values' must be a list")
    return GroupMap(domain, codomain, values)


def matrix_to_dict(m: EndoMatrix) -> dict:
    return {
        "factors": [f.name for f in m.factors],
        "entries": [[map_to_dict(e) for e in row] for row in m.entries],
    }


def matrix_from_dict(d: dict) -> EndoMatrix:
    try:
        factors = tuple(build_group(s) for s in d["factors"])
        entries_payload = d["entries"]
    except KeyError as exc:
        raise ParseError(f"matrix payload missing field {exc}") from None
    n = len(factors)
    if len(entries_payload) != n or any(len(r) != n for r in entries_payload):
        raise ParseError(f"matrix payload must contain {n} x {n} entries")
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            f = map_from_dict(entries_payload[i][j])
            if f.domain is not factors[j] or f.codomain is not factors[i]:
                raise ParseError(
                    f"entry ({i}, {j}) declares {f.domain.name} -> {f.codomain.name}, "
                    f"expected {factors[j].name} -> {factors[i].name}"
                )
            row.append(f)
        entries.append(row)
    return EndoMatrix(factors, entries)
