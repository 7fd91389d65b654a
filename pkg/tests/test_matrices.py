"""Matrix representation of product endomorphisms: round trips, M and A."""
import random

import pytest

from groupdet import (
    EndoMatrix,
    FactorizationError,
    PreconditionError,
    ProductGroup,
    ResourceLimitError,
    StructuralError,
    astruc_factorize,
    build_group,
    compose,
    decompose,
    enumerate_A,
    enumerate_Z,
    enumerate_aut_matrices,
    enumerate_autos,
    enumerate_endos,
    enumerate_homs,
    identity_map,
    identity_matrix,
    in_A,
    in_Z,
    is_bijective,
    is_normal_endo,
    map_from_dict,
    map_to_dict,
    matrix_from_dict,
    matrix_multiply,
    matrix_to_dict,
    pointwise_sum,
    recompose,
    zero_map,
)


def _pg(*specs):
    return ProductGroup.of(*(build_group(s) for s in specs))


def _swap_matrix(g):
    return EndoMatrix((g, g), (
        (zero_map(g, g), identity_map(g)),
        (identity_map(g), zero_map(g, g)),
    ))


def test_product_group_projections_and_injections():
    pg = _pg("S3", "C4")
    assert pg.product.order == 24
    for i in range(2):
        roundtrip = compose(pg.projections[i], pg.injections[i])
        assert roundtrip.values == identity_map(pg.factors[i]).values
    # injected images of distinct factors commute
    t = pg.product.table
    for a in pg.injections[0].values:
        for b in pg.injections[1].values:
            assert t[a][b] == t[b][a]


def test_decompose_identity_gives_identity_matrix():
    pg = _pg("C2", "C4")
    m = decompose(identity_map(pg.product), pg)
    ident = identity_matrix(pg.factors)
    assert m.entries == ident.entries


def test_decompose_swap_automorphism():
    s3 = build_group("S3")
    pg = _pg("S3", "S3")
    order = pg.product.order
    swap_phi = [pg.encode((pg.decode(x)[1], pg.decode(x)[0])) for x in range(order)]
    from groupdet import GroupMap

    m = decompose(GroupMap(pg.product, pg.product, swap_phi), pg)
    zero = zero_map(s3, s3).values
    ident = identity_map(s3).values
    assert m.entries[0][0].values == zero
    assert m.entries[0][1].values == ident
    assert m.entries[1][0].values == ident
    assert m.entries[1][1].values == zero


def test_decompose_recompose_round_trip_on_autos():
    pg = _pg("C2", "C4")
    for phi in enumerate_autos(pg.product).members:
        m = decompose(phi, pg)
        assert recompose(m, pg).values == phi.values


def test_recompose_decompose_round_trip_on_matrices():
    from groupdet import enumerate_m_matrices

    pg = _pg("C2", "C4")
    mats = enumerate_m_matrices(pg.factors)
    assert len(mats) == 32  # equals |End(C2 x C4)|
    assert len(enumerate_endos(pg.product).members) == 32
    for m in mats:
        back = decompose(recompose(m, pg), pg)
        assert back.entries == m.entries


def test_recompose_example_s3_c4_automorphism():
    s3, c4 = build_group("S3"), build_group("C4")
    pg = ProductGroup.of(s3, c4)
    gamma = next(f for f in enumerate_homs(s3, c4).members
                 if f.values != (0,) * 6)
    m = EndoMatrix((s3, c4), (
        (identity_map(s3), zero_map(c4, s3)),
        (gamma, identity_map(c4)),
    ))
    assert is_bijective(recompose(m, pg))


def test_entry_validation():
    s3, c4 = build_group("S3"), build_group("C4")
    with pytest.raises(StructuralError):
        EndoMatrix((s3, c4), (
            (identity_map(s3), zero_map(c4, s3)),
            (zero_map(s3, c4), identity_map(s3)),  # wrong codomain
        ))
    # M-condition: images within a row must commute elementwise
    inner = next(
        f for f in enumerate_autos(s3).members
        if f.values != identity_map(s3).values
    )
    embed = None
    for f in enumerate_homs(c4, s3).members:
        if len(f.image()) == 2:
            embed = f
            break
    assert embed is not None
    with pytest.raises(StructuralError):
        EndoMatrix((s3, c4), (
            (inner, embed),
            (zero_map(s3, c4), identity_map(c4)),
        ))


def test_matrix_multiply_identity_and_oracle():
    pg = _pg("C2", "C4")
    from groupdet import enumerate_m_matrices

    mats = enumerate_m_matrices(pg.factors)
    ident = identity_matrix(pg.factors)
    rng = random.Random(20240817)
    for _ in range(100):
        a = rng.choice(mats)
        b = rng.choice(mats)
        prod = matrix_multiply(a, b)
        composed = compose(recompose(a, pg), recompose(b, pg))
        assert recompose(prod, pg).values == composed.values
    some = rng.choice(mats)
    assert matrix_multiply(some, ident).entries == some.entries
    assert matrix_multiply(ident, some).entries == some.entries


def test_in_A_examples():
    s3 = build_group("S3")
    assert in_A(identity_matrix((s3, build_group("C4"))))
    assert not in_A(_swap_matrix(s3))
    a = enumerate_A((build_group("C2"), build_group("C4")))
    assert len(a) == 8
    assert all(in_A(m) for m in a)


def test_in_Z_examples():
    s3, c4, c2 = build_group("S3"), build_group("C4"), build_group("C2")
    assert in_Z(identity_matrix((s3, c4)))
    inner = next(
        f for f in enumerate_autos(s3).members
        if f.values != identity_map(s3).values
    )
    m = EndoMatrix((s3, c4), (
        (inner, zero_map(c4, s3)),
        (zero_map(s3, c4), identity_map(c4)),
    ))
    assert in_A(m) and not in_Z(m)
    for m in enumerate_A((c2, c4)):
        assert in_Z(m)  # abelian factors: every automorphism is central


def test_enumerate_A_counts_and_bound():
    c2 = build_group("C2")
    assert len(enumerate_A((c2, c2))) == 4
    assert len(enumerate_Z((c2, c2))) == 4
    with pytest.raises(ResourceLimitError):
        enumerate_A((build_group("C12"), build_group("C12")))


def test_aut_matrices_all_in_A_for_stem_pair():
    pg = _pg("S3", "C4")
    mats = enumerate_aut_matrices(pg)
    assert len(mats) == 24
    assert all(in_A(m) for m in mats)
    a_keys = {tuple(e.values for row in m.entries for e in row)
              for m in enumerate_A(pg.factors)}
    aut_keys = {tuple(e.values for row in m.entries for e in row) for m in mats}
    assert a_keys == aut_keys


def test_aut_vs_A_when_factors_share_a_factor():
    pg = _pg("C2", "C2")
    aut_keys = {tuple(e.values for row in m.entries for e in row)
                for m in enumerate_aut_matrices(pg)}
    a_keys = {tuple(e.values for row in m.entries for e in row)
              for m in enumerate_A(pg.factors)}
    assert len(aut_keys) == 6 and len(a_keys) == 4
    assert not (a_keys <= aut_keys)
    assert not (aut_keys <= a_keys)


def test_three_factor_round_trip():
    pg = _pg("C2", "C2", "C3")
    endos = enumerate_endos(pg.product).members
    assert len(endos) == 48
    for phi in endos:
        m = decompose(phi, pg)
        assert m.n == 3
        assert recompose(m, pg).values == phi.values


def test_astruc_identity_and_diagonal():
    s3, c4 = build_group("S3"), build_group("C4")
    ident = identity_matrix((s3, c4))
    d1, u, l, d2 = astruc_factorize(ident)
    for part in (d1, u, l, d2):
        assert part.entries == ident.entries
    alpha = enumerate_autos(s3).members[-1]
    delta = enumerate_autos(c4).members[-1]
    diag = EndoMatrix((s3, c4), (
        (alpha, zero_map(c4, s3)),
        (zero_map(s3, c4), delta),
    ))
    d1, u, l, d2 = astruc_factorize(diag)
    assert u.entries == ident.entries and l.entries == ident.entries
    assert matrix_multiply(matrix_multiply(d1, u), matrix_multiply(l, d2)).entries == diag.entries


def test_astruc_recomposes_everything_in_A():
    s3, c4 = build_group("S3"), build_group("C4")
    for m in enumerate_A((s3, c4)):
        d1, u, l, d2 = astruc_factorize(m)
        prod = matrix_multiply(matrix_multiply(d1, u), matrix_multiply(l, d2))
        assert prod.entries == m.entries
        # shape claims from the factorization
        assert d1.entries[0][1].values == zero_map(c4, s3).values
        assert d1.entries[1][0].values == zero_map(s3, c4).values
        assert d1.entries[1][1].values == identity_map(c4).values
        assert u.entries[0][0].values == identity_map(s3).values
        assert u.entries[1][0].values == zero_map(s3, c4).values
        assert l.entries[0][1].values == zero_map(c4, s3).values


def test_astruc_requires_membership():
    s3 = build_group("S3")
    with pytest.raises(PreconditionError):
        astruc_factorize(_swap_matrix(s3))


def test_cases_relations_and_norm_for_small_pairs():
    """Inverse-pair component identities and normality, on two pairs."""
    for specs in (("C2", "C4"), ("S3", "C4")):
        pg = _pg(*specs)
        h, k = pg.factors
        autos = enumerate_autos(pg.product).members
        by_values = {phi.values: phi for phi in autos}
        for phi in autos:
            psi = by_values[tuple(
                phi.values.index(x) for x in range(pg.product.order)
            )]
            m, w = decompose(phi, pg), decompose(psi, pg)
            (a, b), (g, d) = m.entries
            (ap, bp), (gp, dp) = w.entries
            id_h, id_k = identity_map(h).values, identity_map(k).values
            zero_hk = zero_map(h, k).values
            zero_kh = zero_map(k, h).values
            # composing a matrix with its inverse gives the identity matrix,
            # entry by entry, read off in both orders
            assert pointwise_sum(compose(a, ap), compose(b, gp)).values == id_h
            assert pointwise_sum(compose(a, bp), compose(b, dp)).values == zero_kh
            assert pointwise_sum(compose(g, ap), compose(d, gp)).values == zero_hk
            assert pointwise_sum(compose(g, bp), compose(d, dp)).values == id_k
            assert pointwise_sum(compose(ap, a), compose(bp, g)).values == id_h
            assert pointwise_sum(compose(ap, b), compose(bp, d)).values == zero_kh
            assert pointwise_sum(compose(gp, a), compose(dp, g)).values == zero_hk
            assert pointwise_sum(compose(gp, b), compose(dp, d)).values == id_k
            # the four cross products are normal endomorphisms
            assert is_normal_endo(compose(b, gp)) and is_normal_endo(compose(bp, g))
            assert is_normal_endo(compose(g, bp)) and is_normal_endo(compose(gp, b))
            # diagonal entries keep conjugation-closed images even when they
            # are not normal endomorphisms themselves (inner pieces are not)
            for f, grp in ((a, h), (ap, h), (d, k), (dp, k)):
                img = set(f.image())
                for x in img:
                    for z in range(grp.order):
                        conj = grp.table[grp.table[z][x]][grp.inverse[z]]
                        assert conj in img
            # surjective diagonal forces central off-diagonal image
            if is_bijective(a):
                center = set(h.center().elements)
                assert set(b.image()) <= center


def test_serialization_round_trip():
    s3, c4 = build_group("S3"), build_group("C4")
    f = enumerate_homs(s3, c4).members[-1]
    assert map_from_dict(map_to_dict(f)) == f
    for m in enumerate_A((s3, c4))[:4]:
        back = matrix_from_dict(matrix_to_dict(m))
        assert back.entries == m.entries
        assert [g.name for g in back.factors] == [g.name for g in m.factors]
