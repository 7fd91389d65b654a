"""Determinants of homomorphism matrices and the closed-form inverses they yield.

For a 2 x 2 matrix (alpha, beta; gamma, delta) the two determinants are

    det_h = alpha - beta . delta^-1 . gamma   (needs delta bijective),
    det_k = delta - gamma . alpha^-1 . beta   (needs alpha bijective),

self-maps of the first and second factor respectively.  A matrix with a
bijective diagonal entry is invertible exactly when the corresponding
determinant is bijective, and the inverse is then given entrywise in closed
form.  For n factors the determinant is built by successive pivot
elimination: each step removes one factor, replacing entry (i, j) by
entry(i,j) - entry(i,p) . pivot^-1 . entry(p,j).

A determinant can be *undefined* (no bijective pivot at some step) without
the matrix being singular; that situation raises DeterminantUndefinedError
and callers fall back to a direct bijectivity check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DeterminantUndefinedError,
    InversionError,
    PreconditionError,
    StructuralError,
)
from .groups import FiniteGroup
from .maps import (
    GroupMap,
    OpCounter,
    compose,
    identity_map,
    invert,
    is_bijective,
    negate,
    pointwise_diff,
    pointwise_sum,
)
from .matrices import EndoMatrix, ProductGroup, in_A

__all__ = [
    "FSequence",
    "PartialDet",
    "DetIffReport",
    "det_h",
    "det_k",
    "det_A",
    "f_determinant",
    "is_invertible_via_det",
    "invert_via_det",
    "invert_via_det_pleasant",
    "detiff_check",
]


@dataclass(frozen=True)
class FSequence:
    """An ordered choice of factor indices to eliminate (0-based, distinct).

    A full sequence for n factors eliminates n - 1 indices; the survivor is
    the one index not listed.  The canonical sequence eliminates the last
    factor first and works downward, surviving factor 0.
    """

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.images)) != len(self.images):
            raise PreconditionError("elimination indices must be distinct")
        if any(i < 0 or i >= self.n for i in self.images):
            raise PreconditionError(f"elimination indices must lie in 0..{self.n - 1}")

    @classmethod
    def canonical(cls, n: int) -> "FSequence":
        return cls(n, tuple(range(n - 1, 0, -1)))

    @property
    def survivors(self) -> tuple[int, ...]:
        gone = set(self.images)
        return tuple(i for i in range(self.n) if i not in gone)


@dataclass
class PartialDet:
    """The matrix left after eliminating a prefix of an FSequence.

    ``maps[(i, j)]`` is indexed by surviving global factor indices.  When one
    survivor remains, ``final_map`` is the fully eliminated determinant.
    """

    factors: tuple[FiniteGroup, ...]
    survivors: tuple[int, ...]
    eliminated: tuple[int, ...]
    maps: dict[tuple[int, int], GroupMap]

    @property
    def final_map(self) -> GroupMap:
        if len(self.survivors) != 1:
            raise PreconditionError(
                f"{len(self.survivors)} factors remain; the determinant is not fully eliminated"
            )
        s = self.survivors[0]
        return self.maps[(s, s)]


def _eliminate(
    state: PartialDet, pivot: int, counter: Optional[OpCounter]
) -> PartialDet:
    """One elimination step; raises DeterminantUndefinedError on a dead pivot."""
    if pivot not in state.survivors:
        raise PreconditionError(f"index {pivot} is not a surviving factor")
    piv = state.maps[(pivot, pivot)]
    if not is_bijective(piv):
        raise DeterminantUndefinedError(
            f"pivot entry ({pivot}, {pivot}) is not bijective", pivot_index=pivot
        )
    piv_inv = invert(piv, counter)
    rest = tuple(i for i in state.survivors if i != pivot)
    out: dict[tuple[int, int], GroupMap] = {}
    for i in rest:
        for j in rest:
            correction = compose(state.maps[(i, pivot)], compose(piv_inv, state.maps[(pivot, j)]))
            out[(i, j)] = pointwise_diff(state.maps[(i, j)], correction, require_commuting=True)
            if counter is not None:
                counter.evaluations += out[(i, j)].domain.order
    return PartialDet(state.factors, rest, state.eliminated + (pivot,), out)


def f_determinant(
    m: EndoMatrix,
    fseq: Optional[FSequence] = None,
    counter: Optional[OpCounter] = None,
) -> list[PartialDet]:
    """The chain of partial determinants along an elimination sequence.

    The chain starts with the matrix itself (nothing eliminated) and ends,
    for a full sequence, with a single self-map of the surviving factor.
    """
    n = m.n
    if fseq is None:
        fseq = FSequence.canonical(n)
    if fseq.n != n:
        raise PreconditionError(f"sequence is over {fseq.n} factors, matrix has {n}")
    state = PartialDet(
        m.factors,
        tuple(range(n)),
        (),
        {(i, j): m.entries[i][j] for i in range(n) for j in range(n)},
    )
    chain = [state]
    for pivot in fseq.images:
        state = _eliminate(state, pivot, counter)
        chain.append(state)
    return chain


def det_h(m: EndoMatrix, counter: Optional[OpCounter] = None) -> GroupMap:
    """alpha - beta . delta^-1 . gamma, a self-map of the first factor (2 x 2)."""
    if m.n != 2:
        raise PreconditionError("det_h is defined for 2 x 2 matrices")
    (alpha, beta), (gamma, delta) = m.entries
    if not is_bijective(delta):
        raise DeterminantUndefinedError("delta is not bijective", pivot_index=1)
    delta_inv = invert(delta, counter)
    out = pointwise_diff(alpha, compose(beta, compose(delta_inv, gamma)), require_commuting=True)
    if counter is not None:
        counter.evaluations += out.domain.order
    return out


def det_k(m: EndoMatrix, counter: Optional[OpCounter] = None) -> GroupMap:
    """delta - gamma . alpha^-1 . beta, a self-map of the second factor (2 x 2)."""
    if m.n != 2:
        raise PreconditionError("det_k is defined for 2 x 2 matrices")
    (alpha, beta), (gamma, delta) = m.entries
    if not is_bijective(alpha):
        raise DeterminantUndefinedError("alpha is not bijective", pivot_index=0)
    alpha_inv = invert(alpha, counter)
    out = pointwise_diff(delta, compose(gamma, compose(alpha_inv, beta)), require_commuting=True)
    if counter is not None:
        counter.evaluations += out.domain.order
    return out


def det_A(m: EndoMatrix, counter: Optional[OpCounter] = None) -> GroupMap:
    """The canonical determinant of a member of A (all pivots automorphisms)."""
    if not in_A(m):
        raise PreconditionError("det_A needs diagonal automorphisms and central off-diagonal images")
    if m.n == 2:
        return det_h(m, counter)
    return f_determinant(m, FSequence.canonical(m.n), counter)[-1].final_map


def _full_sequences(n: int):
    """Candidate elimination sequences: canonical first, then lexicographic rest."""
    canonical = FSequence.canonical(n).images
    yield canonical
    for survivor in range(n):
        others = [i for i in range(n) if i != survivor]
        for perm in itertools.permutations(others):
            if perm != canonical:
                yield perm


def is_invertible_via_det(
    m: EndoMatrix,
    branch: str = "auto",
    counter: Optional[OpCounter] = None,
) -> bool:
    """Decide invertibility through a determinant instead of a full size-mn check.

    For 2 x 2 matrices ``branch`` picks which diagonal entry to invert:
    'h' inverts delta and tests det_h on the first factor, 'k' inverts alpha
    and tests det_k on the second, and 'auto' tries the cheaper branch first
    (by the headline cost |other factor| + C(|tested factor|, 2)) and falls
    back to the remaining one when the pivot is not bijective.  For larger
    matrices the canonical elimination sequence is tried first, then every
    other sequence.  Raises DeterminantUndefinedError when no admissible
    pivot choice exists; the caller should then fall back to a direct check.
    """
    if m.n == 2:
        return _decide_2x2(m, branch, counter) is not None
    if branch != "auto":
        raise PreconditionError("explicit branches exist only for 2 x 2 matrices")
    last_error: Optional[DeterminantUndefinedError] = None
    for images in _full_sequences(m.n):
        try:
            chain = f_determinant(m, FSequence(m.n, images), counter)
        except DeterminantUndefinedError as exc:
            last_error = exc
            continue
        return is_bijective(chain[-1].final_map, counter)
    raise DeterminantUndefinedError(
        "no elimination sequence has bijective pivots",
        pivot_index=last_error.pivot_index if last_error else None,
    )


def _branch_order(m: EndoMatrix, branch: str) -> list[str]:
    if branch in ("h", "k"):
        return [branch]
    if branch != "auto":
        raise PreconditionError(f"unknown branch {branch!r}; use 'h', 'k' or 'auto'")
    h, k = m.factors[0].order, m.factors[1].order
    cost_h = k + h * (h - 1) // 2
    cost_k = h + k * (k - 1) // 2
    return ["h", "k"] if cost_h <= cost_k else ["k", "h"]


def _decide_2x2(
    m: EndoMatrix, branch: str, counter: Optional[OpCounter]
) -> Optional[tuple[str, GroupMap, bool]]:
    """Shared 2 x 2 driver: returns (branch used, determinant, verdict)."""
    last: Optional[DeterminantUndefinedError] = None
    for b in _branch_order(m, branch):
        try:
            det = det_h(m, counter) if b == "h" else det_k(m, counter)
        except DeterminantUndefinedError as exc:
            last = exc
            continue
        verdict = is_bijective(det, counter)
        return (b, det, verdict) if verdict else None
    raise DeterminantUndefinedError(
        "no bijective diagonal entry; determinant route undecidable",
        pivot_index=last.pivot_index if last else None,
    )


def invert_via_det(
    m: EndoMatrix,
    branch: str = "auto",
    counter: Optional[OpCounter] = None,
) -> EndoMatrix:
    """The closed-form inverse of an invertible matrix with a usable pivot.

    2 x 2 with delta and det_h bijective (the 'h' branch):

        ( D^-1,              -D^-1 . beta . delta^-1                )
        ( -delta^-1 . gamma . D^-1,  (1 + delta^-1 gamma D^-1 beta) . delta^-1 )

    with D = det_h; the 'k' branch is the mirror image through det_k.  For
    more factors the matrix is split into its first admissible pivot factor
    against the product of the others and the same formulas are applied
    blockwise, inverting the smaller block recursively.  Raises
    DeterminantUndefinedError when no pivot route exists and InversionError
    when a determinant exists but is not bijective.
    """
    if m.n == 2:
        return _invert_2x2(m, branch, counter)
    if branch != "auto":
        raise PreconditionError("explicit branches exist only for 2 x 2 matrices")
    return _invert_block(m, counter)


def _invert_2x2(m: EndoMatrix, branch: str, counter: Optional[OpCounter]) -> EndoMatrix:
    h, k = m.factors
    (alpha, beta), (gamma, delta) = m.entries
    last: Optional[DeterminantUndefinedError] = None
    for b in _branch_order(m, branch):
        try:
            if b == "h":
                det = det_h(m, counter)
                if not is_bijective(det, counter):
                    raise InversionError("det_h is not bijective; matrix is not invertible")
                piv_inv = invert(delta, counter)
                det_inv = invert(det, counter)
                alpha_p = det_inv
                beta_p = negate(compose(det_inv, compose(beta, piv_inv)))
                gamma_p = negate(compose(piv_inv, compose(gamma, det_inv)))
                theta = compose(piv_inv, compose(gamma, compose(det_inv, beta)))
                delta_p = compose(
                    pointwise_sum(identity_map(k), theta, require_commuting=True),
                    piv_inv,
                )
            else:
                det = det_k(m, counter)
                if not is_bijective(det, counter):
                    raise InversionError("det_k is not bijective; matrix is not invertible")
                piv_inv = invert(alpha, counter)
                det_inv = invert(det, counter)
                delta_p = det_inv
                gamma_p = negate(compose(det_inv, compose(gamma, piv_inv)))
                beta_p = negate(compose(piv_inv, compose(beta, det_inv)))
                theta = compose(piv_inv, compose(beta, compose(det_inv, gamma)))
                alpha_p = compose(
                    pointwise_sum(identity_map(h), theta, require_commuting=True),
                    piv_inv,
                )
            return EndoMatrix((h, k), [[alpha_p, beta_p], [gamma_p, delta_p]])
        except DeterminantUndefinedError as exc:
            last = exc
            continue
    raise last if last else DeterminantUndefinedError("no usable branch")


def _combined_row(m: EndoMatrix, s: int, rest: Sequence[int], sub_pg: ProductGroup) -> GroupMap:
    """The map (x_j)_{j in rest} -> prod_j m[s][j](x_j) as sub-product -> H_s."""
    fac = m.factors[s]
    t = fac.table
    values = []
    for x in range(sub_pg.product.order):
        coords = sub_pg.decode(x)
        acc = fac.identity
        for pos, j in enumerate(rest):
            acc = t[acc][m.entries[s][j].values[coords[pos]]]
        values.append(acc)
    return GroupMap(sub_pg.product, fac, values, hom=True)


def _combined_col(m: EndoMatrix, s: int, rest: Sequence[int], sub_pg: ProductGroup) -> GroupMap:
    """The map x -> (m[i][s](x))_{i in rest} as H_s -> sub-product."""
    fac = m.factors[s]
    values = []
    for x in range(fac.order):
        values.append(sub_pg.encode([m.entries[i][s].values[x] for i in rest]))
    return GroupMap(fac, sub_pg.product, values, hom=True)


def _submatrix(m: EndoMatrix, rest: Sequence[int]) -> EndoMatrix:
    entries = [[m.entries[i][j] for j in rest] for i in rest]
    return EndoMatrix(tuple(m.factors[i] for i in rest), entries, trusted=True)


def _invert_block(m: EndoMatrix, counter: Optional[OpCounter]) -> EndoMatrix:
    """Invert an n x n matrix by 2 x 2 block reduction over the first usable pivot.

    A sub-block that fails to invert only rules out that pivot choice, so the
    loop moves on; the matrix is reported singular only when some pivot route
    completes and its determinant is not bijective.
    """
    from .matrices import recompose

    if m.n == 2:
        return _invert_2x2(m, "auto", counter)
    n = m.n
    last_exc: Optional[Exception] = None
    for s in range(n):
        rest = tuple(i for i in range(n) if i != s)
        sub = _submatrix(m, rest)
        try:
            sub_inv = _invert_block(sub, counter)
        except (DeterminantUndefinedError, InversionError) as exc:
            last_exc = exc
            continue
        sub_pg = ProductGroup.of(*(m.factors[i] for i in rest))
        delta_inv = recompose(sub_inv, sub_pg)
        alpha = m.entries[s][s]
        beta = _combined_row(m, s, rest, sub_pg)
        gamma = _combined_col(m, s, rest, sub_pg)
        det = pointwise_diff(
            alpha, compose(beta, compose(delta_inv, gamma)), require_commuting=True
        )
        if counter is not None:
            counter.evaluations += det.domain.order
        if not is_bijective(det, counter):
            raise InversionError("block determinant is not bijective; matrix is not invertible")
        det_inv = invert(det, counter)
        alpha_p = det_inv
        beta_p = negate(compose(det_inv, compose(beta, delta_inv)))
        gamma_p = negate(compose(delta_inv, compose(gamma, det_inv)))
        theta = compose(delta_inv, compose(gamma, compose(det_inv, beta)))
        delta_p = compose(
            pointwise_sum(identity_map(sub_pg.product), theta, require_commuting=True),
            delta_inv,
        )
        entries: list[list[Optional[GroupMap]]] = [[None] * n for _ in range(n)]
        entries[s][s] = alpha_p
        for pos, j in enumerate(rest):
            entries[s][j] = compose(beta_p, sub_pg.injections[pos])
            entries[j][s] = compose(sub_pg.projections[pos], gamma_p)
        for pi, i in enumerate(rest):
            for pj, j in enumerate(rest):
                entries[i][j] = compose(
                    sub_pg.projections[pi], compose(delta_p, sub_pg.injections[pj])
                )
        return EndoMatrix(m.factors, entries)
    raise DeterminantUndefinedError(
        "no factor admits an invertible complementary block",
        pivot_index=getattr(last_exc, "pivot_index", None),
    )


def invert_via_det_pleasant(m: EndoMatrix, counter: Optional[OpCounter] = None) -> EndoMatrix:
    """The symmetric inverse formula available to members of A (2 x 2).

        ( det_h^-1,                -alpha^-1 . beta . det_k^-1 )
        ( -delta^-1 . gamma . det_h^-1,   det_k^-1             )

    Asserted entrywise equal to the general formula inverse.
    """
    if m.n != 2:
        raise PreconditionError("the pleasant form is defined for 2 x 2 matrices")
    if not in_A(m):
        raise PreconditionError("the pleasant form needs a member of A")
    (alpha, beta), (gamma, delta) = m.entries
    dh = det_h(m, counter)
    dk = det_k(m, counter)
    if not (is_bijective(dh) and is_bijective(dk)):
        raise InversionError("determinants are not bijective; matrix is not invertible")
    dh_inv = invert(dh, counter)
    dk_inv = invert(dk, counter)
    out = EndoMatrix(
        m.factors,
        [
            [dh_inv, negate(compose(invert(alpha), compose(beta, dk_inv)))],
            [negate(compose(invert(delta), compose(gamma, dh_inv))), dk_inv],
        ],
    )
    general = invert_via_det(m, branch="h")
    if out != general:
        raise StructuralError("pleasant inverse disagrees with the general formula")
    return out


@dataclass(frozen=True)
class DetIffReport:
    """Invertibility flags of the two determinants of a member of A.

    The flags always agree; when both determinants are bijective the two
    reciprocal identities tying their inverses together are checked pointwise
    and reported in ``reciprocal_identities_hold`` (None when not bijective).
    """

    deth_invertible: bool
    detk_invertible: bool
    reciprocal_identities_hold: Optional[bool]


def detiff_check(m: EndoMatrix) -> DetIffReport:
    """Evaluate both determinants of a 2 x 2 member of A and their reciprocity."""
    if m.n != 2:
        raise PreconditionError("detiff_check is defined for 2 x 2 matrices")
    if not in_A(m):
        raise PreconditionError("detiff_check needs a member of A")
    (alpha, beta), (gamma, delta) = m.entries
    dh = det_h(m)
    dk = det_k(m)
    h_ok = is_bijective(dh)
    k_ok = is_bijective(dk)
    if not (h_ok and k_ok):
        return DetIffReport(h_ok, k_ok, None)
    dh_inv = invert(dh)
    dk_inv = invert(dk)
    alpha_inv = invert(alpha)
    delta_inv = invert(delta)
    lhs_h = pointwise_sum(
        compose(alpha_inv, compose(beta, compose(dk_inv, compose(gamma, alpha_inv)))),
        alpha_inv,
        require_commuting=True,
    )
    lhs_k = pointwise_sum(
        compose(delta_inv, compose(gamma, compose(dh_inv, compose(beta, delta_inv)))),
        delta_inv,
        require_commuting=True,
    )
    holds = lhs_h.values == dh_inv.values and lhs_k.values == dk_inv.values
    return DetIffReport(h_ok, k_ok, holds)
