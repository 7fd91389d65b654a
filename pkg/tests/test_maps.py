"""Map algebra, homomorphism enumeration, and normality machinery."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from groupdet import (
    GroupMap,
    InversionError,
    OpCounter,
    PreconditionError,
    StructuralError,
    build_group,
    compose,
    enumerate_autos,
    enumerate_endos,
    enumerate_homs,
    fitting_decomposition,
    identity_map,
    invert,
    is_bijective,
    is_normal_endo,
    negate,
    pointwise_diff,
    pointwise_sum,
    power_map,
    zero_map,
)

HOM_COUNTS = {
    ("C4", "C2"): 2,
    ("S3", "C4"): 2,
    ("C3", "C4"): 1,
    ("C2", "C4"): 2,
    ("Q8", "D8"): 28,
    ("D8", "Q8"): 4,
}

END_COUNTS = {"C2": 2, "C4": 4, "S3": 10, "Q8": 28, "D8": 36}
AUT_COUNTS = {"C4": 2, "S3": 6, "Q8": 24, "D8": 8, "E2^2": 6, "C12": 4}

SMALL_SPECS = ("C2", "C3", "C4", "C5", "C6", "C8", "S3", "D8", "Q8")


def test_compose_examples():
    c4, c2, c3 = build_group("C4"), build_group("C2"), build_group("C3")
    f = enumerate_homs(c4, c2).members[-1]  # the surjection
    assert f.values != (0, 0, 0, 0)
    doubling = GroupMap(c4, c4, [c4.power(x, 2) for x in range(4)])
    assert compose(f, doubling).values == (0, 0, 0, 0)
    g = identity_map(c4)
    assert compose(g, doubling).values == doubling.values
    inv3 = GroupMap(c3, c3, [c3.inv(x) for x in range(3)])
    assert compose(inv3, inv3).values == identity_map(c3).values


def test_compose_requires_matching_groups():
    with pytest.raises(StructuralError):
        compose(identity_map(build_group("C2")), identity_map(build_group("C3")))


def test_pointwise_sum_examples():
    c4 = build_group("C4")
    ident = identity_map(c4)
    zero = zero_map(c4, c4)
    assert pointwise_sum(ident, zero).values == ident.values
    doubling = pointwise_sum(ident, ident)
    assert doubling.values == tuple(c4.power(x, 2) for x in range(4))


def test_pointwise_diff_examples():
    c3 = build_group("C3")
    ident = identity_map(c3)
    doubling = GroupMap(c3, c3, [c3.power(x, 2) for x in range(3)])
    assert pointwise_diff(ident, ident).values == (c3.identity,) * 3
    assert pointwise_diff(doubling, ident).values == ident.values
    assert pointwise_diff(ident, zero_map(c3, c3)).values == ident.values


def test_negate_is_pointwise_inverse():
    s3 = build_group("S3")
    f = enumerate_endos(s3).members[-1]
    assert negate(f).values == tuple(s3.inv(v) for v in f.values)


def test_is_homomorphism_examples():
    c3 = build_group("C3")
    assert identity_map(c3).is_homomorphism()
    swap = GroupMap(c3, c3, [0, 2, 1])  # fixes identity, swaps the two 3-cycles
    assert swap.is_homomorphism()  # inversion on C3 actually is one
    c4 = build_group("C4")
    bad = GroupMap(c4, c4, [0, 2, 1, 3])
    assert not bad.is_homomorphism()
    assert bad.hom_flag is False  # cached after the check


def test_enumerate_homs_counts():
    for (hs, ks), n in HOM_COUNTS.items():
        homs = enumerate_homs(build_group(hs), build_group(ks))
        assert len(homs.members) == n, (hs, ks)
        values = {m.values for m in homs.members}
        assert len(values) == n  # pairwise distinct
        for m in homs.members:
            assert m.is_homomorphism()


def test_enumerate_homs_restricted_to_center():
    s3, q8 = build_group("S3"), build_group("Q8")
    into_center = enumerate_homs(s3, q8, restrict_codomain=q8.center())
    assert len(into_center.members) == 2  # trivial + sign onto the central C2
    center = set(q8.center().elements)
    for m in into_center.members:
        assert set(m.values) <= center


def test_end_and_aut_counts():
    for spec, n in END_COUNTS.items():
        assert len(enumerate_endos(build_group(spec)).members) == n, spec
    for spec, n in AUT_COUNTS.items():
        assert len(enumerate_autos(build_group(spec)).members) == n, spec


def test_homset_sorted_canonically():
    members = enumerate_endos(build_group("S3")).members
    assert [m.values for m in members] == sorted(m.values for m in members)


def _naive_hom_count(h, k):
    """Count product-preserving value tables directly, identity pinned."""
    n, m = h.order, k.order
    td = np.array(h.table)
    tc = np.array(k.table)
    rest = [x for x in range(n) if x != h.identity]
    total = m ** len(rest)
    count = 0
    chunk = 250_000
    for start in range(0, total, chunk):
        block = np.arange(start, min(start + chunk, total))
        vals = np.empty((len(block), n), dtype=np.int64)
        vals[:, h.identity] = k.identity
        q = block.copy()
        for pos in rest:
            vals[:, pos] = q % m
            q //= m
        ok = np.ones(len(block), dtype=bool)
        for a in range(n):
            for b in range(n):
                ok &= vals[:, td[a][b]] == tc[vals[:, a], vals[:, b]]
            if not ok.any():
                break
        count += int(ok.sum())
    return count


def test_enumerate_homs_matches_naive_oracle_up_to_order_8():
    groups = [build_group(s) for s in SMALL_SPECS]
    for h in groups:
        for k in groups:
            expected = _naive_hom_count(h, k)
            got = len(enumerate_homs(h, k).members)
            assert got == expected, (h.name, k.name, got, expected)


def test_is_bijective_counter_semantics():
    c4 = build_group("C4")
    counter = OpCounter()
    assert is_bijective(identity_map(c4), counter)
    assert counter.comparisons == 6  # C(4,2)
    assert not is_bijective(zero_map(c4, c4))
    assert not is_bijective(zero_map(build_group("C2"), c4))  # order mismatch


def test_invert_examples():
    c4 = build_group("C4")
    assert invert(identity_map(c4)).values == identity_map(c4).values
    triple = GroupMap(c4, c4, [c4.power(x, 3) for x in range(4)])
    assert invert(triple).values == triple.values  # 3*3 = 9 = 1 mod 4
    counter = OpCounter()
    invert(triple, counter)
    assert counter.lookups == 4
    with pytest.raises(InversionError):
        invert(zero_map(c4, c4))


def test_is_normal_endo():
    c12 = build_group("C12")
    for f in enumerate_endos(c12).members:
        assert is_normal_endo(f)  # abelian domain
    s3 = build_group("S3")
    assert is_normal_endo(identity_map(s3))
    onto_c2 = [f for f in enumerate_endos(s3).members
               if len(f.image()) == 2]
    assert onto_c2 and all(not is_normal_endo(f) for f in onto_c2)
    with pytest.raises(StructuralError):
        is_normal_endo(zero_map(s3, c12))


def test_normal_endo_image_and_kernel_are_normal():
    from groupdet import Subgroup

    for spec in ("S3", "D8", "Q8", "C12"):
        g = build_group(spec)
        for f in enumerate_endos(g).members:
            if not is_normal_endo(f):
                continue
            image = Subgroup(g, f.image())
            kernel = Subgroup(g, [x for x in range(g.order) if f(x) == g.identity])
            assert image.is_normal(), (spec, f.values)
            assert kernel.is_normal(), (spec, f.values)


def test_power_map():
    c4 = build_group("C4")
    ident = identity_map(c4)
    assert power_map(ident, 3).values == ident.values
    doubling = pointwise_sum(ident, ident)
    assert power_map(doubling, 2).values == (0, 0, 0, 0)


def test_fitting_decomposition_examples():
    c12 = build_group("C12")
    ident = identity_map(c12)
    r, fz = fitting_decomposition(ident)
    assert r == 1 and fz.left.order == 12 and fz.right.order == 1
    r, fz = fitting_decomposition(zero_map(c12, c12))
    assert r == 1 and fz.left.order == 1 and fz.right.order == 12
    by4 = GroupMap(c12, c12, [c12.power(x, 4) for x in range(12)])
    r, fz = fitting_decomposition(by4)
    assert fz.left.order == 3 and fz.right.order == 4
    image_orders = {c12.element_order(x) for x in fz.left.elements}
    assert image_orders == {1, 3}


def test_fitting_decomposition_rejects_non_normal():
    s3 = build_group("S3")
    onto_c2 = next(f for f in enumerate_endos(s3).members
                   if len(f.image()) == 2)
    with pytest.raises(PreconditionError):
        fitting_decomposition(onto_c2)


def test_fitting_satisfies_factorization_invariants():
    for spec in ("C12", "Q8", "D8", "S3", "C2 x C4"):
        g = build_group(spec)
        for f in enumerate_endos(g).members:
            if not is_normal_endo(f):
                continue
            r, fz = fitting_decomposition(f)
            assert r >= 1
            assert fz.left.order * fz.right.order == g.order
            # DirectFactorization already validates normality, intersection,
            # and commutation in __post_init__; reaching here is the test.


@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_near_ring_identities_into_abelian_codomains(data):
    domain = build_group(data.draw(st.sampled_from(("C4", "S3", "Q8", "C6"))))
    codomain = build_group(data.draw(st.sampled_from(("C2", "C4", "C6", "E2^2"))))
    elem = st.integers(min_value=0, max_value=codomain.order - 1)
    draw_map = lambda: GroupMap(
        domain, codomain, [data.draw(elem) for _ in range(domain.order)]
    )
    f, g, h = draw_map(), draw_map(), draw_map()
    left = pointwise_sum(pointwise_sum(f, g), h)
    right = pointwise_sum(f, pointwise_sum(g, h))
    assert left.values == right.values
    assert pointwise_sum(f, g).values == pointwise_sum(g, f).values


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_homomorphisms_distribute_over_pointwise_sum(data):
    domain = build_group(data.draw(st.sampled_from(("C4", "C6", "S3"))))
    mid = build_group(data.draw(st.sampled_from(("C2", "C4", "C6"))))
    codomain = build_group(data.draw(st.sampled_from(("C2", "C4", "C12"))))
    homs = enumerate_homs(mid, codomain).members
    f = data.draw(st.sampled_from(homs))
    elem = st.integers(min_value=0, max_value=mid.order - 1)
    g = GroupMap(domain, mid, [data.draw(elem) for _ in range(domain.order)])
    h = GroupMap(domain, mid, [data.draw(elem) for _ in range(domain.order)])
    left = compose(f, pointwise_sum(g, h))
    right = pointwise_sum(compose(f, g), compose(f, h))
    assert left.values == right.values


def test_require_commuting_flag():
    from groupdet import NoncommutingImagesError

    s3 = build_group("S3")
    ident = identity_map(s3)
    # identity + identity evaluates x*x, whose image elements commute with
    # themselves, so the guarded sum is fine
    pointwise_sum(ident, ident, require_commuting=True)
    endos = enumerate_endos(s3).members
    noncommuting = None
    for f in endos:
        for g in endos:
            values = [(f(x), g(x)) for x in range(s3.order)]
            if any(s3.mul(a, b) != s3.mul(b, a) for a, b in values):
                noncommuting = (f, g)
                break
        if noncommuting:
            break
    assert noncommuting is not None
    with pytest.raises(NoncommutingImagesError):
        pointwise_sum(*noncommuting, require_commuting=True)
