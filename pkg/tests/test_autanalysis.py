"""Aut-versus-A comparisons, the stem-pair structure, and standing witnesses."""
import json

import pytest

from groupdet import (
    AutComparison,
    PreconditionError,
    ResourceLimitError,
    StructuralError,
    build_group,
    central_aut_group,
    compare_aut_vs_A,
    compare_autc_vs_Z,
    enumerate_autos,
    in_A,
    is_bijective,
    lemcomm_witness,
    q8_noncommuting_witness,
    recompose,
    verify_stem_semidirect,
)
from groupdet.autcompare import WITNESS_CAP


def _g(spec):
    return build_group(spec)


def test_stem_pair_equality():
    cmp = compare_aut_vs_A(_g("S3"), _g("C4"))
    assert cmp.aut_order == 24 and cmp.a_order == 24
    assert cmp.equal
    assert cmp.violating_matrices == ((), ())


def test_shared_factor_breaks_both_inclusions():
    cmp = compare_aut_vs_A(_g("C2"), _g("C2"))
    assert cmp.aut_order == 6 and cmp.a_order == 4
    assert not cmp.a_subset_aut
    assert not cmp.aut_subset_a
    assert not cmp.equal
    set_minus_aut, aut_minus_set = cmp.violating_matrices
    assert set_minus_aut and aut_minus_set
    for m in set_minus_aut:
        assert not is_bijective(recompose(m))
    for m in aut_minus_set:
        assert not in_A(m)


def test_more_equality_instances():
    cmp = compare_aut_vs_A(_g("C3"), _g("C4"))
    assert cmp.equal and cmp.aut_order == 4
    cmp = compare_aut_vs_A(_g("Q8"), _g("C2"))
    assert cmp.equal and cmp.aut_order == 192
    cmp = compare_aut_vs_A(_g("C2"), _g("C4"))
    assert cmp.equal and cmp.aut_order == 8


def test_witness_cap_and_serialization():
    cmp = compare_aut_vs_A(_g("C4"), _g("C4"))
    assert cmp.aut_order == 96 and cmp.a_order == 64
    _, aut_minus_set = cmp.violating_matrices
    assert len(aut_minus_set) == WITNESS_CAP
    payload = json.loads(json.dumps(cmp.as_dict()))
    assert payload["equal"] is False
    assert len(payload["aut_minus_set"]) == WITNESS_CAP


def test_comparison_consistency_guard():
    with pytest.raises(StructuralError):
        AutComparison(
            aut_order=6, a_order=4,
            a_subset_aut=True, aut_subset_a=True,
            violating_matrices=((), ()),
        )


def test_resource_bounds():
    with pytest.raises(ResourceLimitError):
        compare_aut_vs_A(_g("C12"), _g("C12"))
    with pytest.raises(ResourceLimitError):
        compare_autc_vs_Z(_g("C12"), _g("C12"))
    cmp = compare_aut_vs_A(_g("C12"), _g("C12"), max_product_order=144)
    assert cmp.aut_order == 4608 and not cmp.equal


def test_central_aut_group():
    c12 = _g("C12")
    assert len(central_aut_group(c12)) == len(enumerate_autos(c12).members)
    s3 = _g("S3")
    centrals = central_aut_group(s3)
    assert len(centrals) == 1
    assert centrals[0].values == tuple(range(6))


def test_central_aut_vs_Z():
    cmp = compare_autc_vs_Z(_g("S3"), _g("C4"))
    assert cmp.equal
    assert cmp.aut_order == 4 and cmp.a_order == 4
    cmp = compare_autc_vs_Z(_g("C2"), _g("C4"))
    assert cmp.equal and cmp.aut_order == 8


def test_stem_semidirect_structure():
    verified, report = verify_stem_semidirect(_g("S3"), _g("Q8"))
    assert verified
    assert report.group_order == 288
    assert report.diagonal_order == 144
    assert report.normal_order == 2
    assert report.n_is_subgroup and report.n_is_normal
    assert report.u_l_commute
    assert report.d_intersect_n_trivial and report.d_n_covers
    assert report.as_dict()["verified"] is True


def test_stem_semidirect_preconditions():
    with pytest.raises(PreconditionError):
        verify_stem_semidirect(_g("S3"), _g("C4"))  # C4 is not stem
    with pytest.raises(PreconditionError):
        verify_stem_semidirect(_g("C2"), _g("Q8"))  # C2 is not stem
    with pytest.raises(PreconditionError):
        verify_stem_semidirect(_g("S3"), _g("S3"))  # shared factor


def test_q8_noncommuting_witness():
    u, l, ul, lu = q8_noncommuting_witness()
    assert ul != lu
    assert in_A(u) and in_A(l) and in_A(ul) and in_A(lu)
    assert is_bijective(recompose(ul)) and is_bijective(recompose(lu))
    # the difference is confined to the corner entry on the big factor
    assert ul.entries[0][1].values == lu.entries[0][1].values
    assert ul.entries[1][0].values == lu.entries[1][0].values
    assert ul.entries[0][0].values != lu.entries[0][0].values


def test_lemcomm_witness_escapes_A():
    for specs in (("C2", "C2"), ("S3", "S3"), ("C2 x C4", "C4"), ("C2 x S3", "S3")):
        h, k = _g(specs[0]), _g(specs[1])
        w = lemcomm_witness(h, k)
        assert not in_A(w)
        assert is_bijective(recompose(w))
        assert not is_bijective(w.entries[0][0])
    with pytest.raises(PreconditionError):
        lemcomm_witness(_g("S3"), _g("C4"))


def test_lemcomm_witness_consistent_with_comparison():
    h, k = _g("C2"), _g("C2")
    w = lemcomm_witness(h, k)
    cmp = compare_aut_vs_A(h, k)
    _, aut_minus_set = cmp.violating_matrices
    assert w.key() in {m.key() for m in aut_minus_set}
