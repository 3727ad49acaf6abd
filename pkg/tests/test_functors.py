import random

import pytest

from conftest import random_rep
from quiverforge.errors import DomainError, InputError
from quiverforge.linalg import GF, Mat
from quiverforge.quiver import ringel_form, sym_form, unit_vector
from quiverforge.reps import (
    Representation,
    end_dim,
    ext_dim,
    hom_dim,
    is_indecomposable_oracle,
    simple_rep,
)
from quiverforge.functors import (
    bgp_reflect,
    collapse,
    find_isomorphism,
    insert_image_vertex,
    is_maximal_rank_type,
    maximal_rank_report,
    membership,
    sigma,
    sigma_bar,
    sigma_bar_inv,
    sigma_inv,
    sigma_under,
    sigma_under_inv,
)
from quiverforge.three_vertex import (
    FamilyParams,
    build_family,
    build_subquiver,
    embed_subquiver_rep,
    kronecker_rep,
)
from quiverforge.trees import nonzero_count
from quiverforge.quiver import enumerate_real_roots


def counterexample_rep(q, field=None):
    from quiverforge.linalg import QQ

    field = field or QQ
    return Representation(
        q, {1: 1, 2: 1},
        {"a1": Mat(1, 1, [[1]], field), "a2": Mat(1, 1, [[0]], field)},
        field,
    )


def test_insert_empty_subset_keeps_rep(counterexample_quiver):
    x = counterexample_rep(counterexample_quiver)
    res = insert_image_vertex(x, 2, [])
    assert res.new_rep.dims[res.z_vertex] == 0
    assert all(res.new_rep.mats[a.id] == x.mats[a.id] for a in counterexample_quiver.arrows)
    assert collapse(res.new_rep, res) == x


def test_insert_zero_map_gives_zero_image(counterexample_quiver):
    x = counterexample_rep(counterexample_quiver)
    res = insert_image_vertex(x, 2, ["a2"])
    assert res.new_rep.dims[res.z_vertex] == 0


def test_insert_full_subset_rank_one(counterexample_quiver):
    x = counterexample_rep(counterexample_quiver)
    res = insert_image_vertex(x, 2, ["a1", "a2"])
    assert res.new_rep.dims[res.z_vertex] == 1
    # factorization through the inclusion recovers the original maps
    for aid in ("a1", "a2"):
        assert res.inclusion.mul(res.new_rep.mats[f"g_{aid}"]) == x.mats[aid]


def test_insert_rejects_wrong_head(counterexample_quiver):
    x = counterexample_rep(counterexample_quiver)
    with pytest.raises(InputError):
        insert_image_vertex(x, 1, ["a1"])


def test_collapse_insert_roundtrip_random(q111):
    rng = random.Random(21)
    for _ in range(25):
        x = random_rep(q111, rng, max_dim=3)
        for i in q111.vertices:
            inc = [a.id for a in q111.incoming(i)]
            if not inc:
                continue
            res = insert_image_vertex(x, i, inc)
            assert collapse(res.new_rep, res) == x


def test_maxrank_counterexample_violation(counterexample_quiver):
    x = counterexample_rep(counterexample_quiver)
    report = [v.to_json() for v in maximal_rank_report(x)]
    assert {
        "vertex": 2, "arrows": ["a2"], "side": "in", "achieved": 0, "required": 1,
    } in report
    assert not is_maximal_rank_type(x)


def test_maxrank_simple_is_clean(q111):
    assert maximal_rank_report(simple_rep(q111, 2)) == []


def test_maxrank_preprojective_clean():
    x = kronecker_rep((2, 1), 2)
    assert maximal_rank_report(x) == []


def test_bgp_plus_at_sink():
    q = build_subquiver(2)
    x = bgp_reflect(simple_rep(q, 1), 2, "plus")
    assert x.dims == {1: 1, 2: 2}


def test_bgp_minus_at_source():
    q = build_subquiver(2)
    x = bgp_reflect(simple_rep(q, 2), 1, "minus")
    assert x.dims == {1: 2, 2: 1}


def test_bgp_rejects_concentrated_and_wrong_orientation():
    q = build_subquiver(2)
    with pytest.raises(DomainError):
        bgp_reflect(simple_rep(q, 2), 2, "plus")
    with pytest.raises(DomainError):
        bgp_reflect(simple_rep(q, 1), 1, "plus")


def test_bgp_series_matches_enumeration():
    for f in (1, 2, 3):
        q = build_subquiver(f)
        for r in enumerate_real_roots(q, 8):
            x = kronecker_rep((r[1], r[2]), f)
            assert x.dims == r


def test_membership_self(q111):
    s = simple_rep(q111, 3)
    rep = membership(s, s)
    assert rep.hom_x_s == 1 and not rep.in_minus_upper


def test_membership_s2_s3(q111):
    rep = membership(simple_rep(q111, 2), simple_rep(q111, 3))
    assert (rep.hom_x_s, rep.hom_s_x, rep.ext_s_x, rep.ext_x_s) == (0, 0, 1, 1)
    assert rep.in_minus_upper and rep.in_minus_lower


def test_membership_requires_exceptional(q111):
    rng = random.Random(30)
    bad = None
    while bad is None:
        cand = random_rep(q111, rng, max_dim=2)
        if end_dim(cand) != 1 or ext_dim(cand, cand) != 0:
            bad = cand
    with pytest.raises(DomainError):
        membership(simple_rep(q111, 1), bad)


def test_sigma_bar_trivial_when_no_ext(q111):
    s = simple_rep(q111, 2)
    x = simple_rep(q111, 1)
    # Ext(S(2), S(1)) = 0: no arrows from 2 to 1
    assert sigma_bar(s, x) == x


def test_sigma_bar_block_layout(q111):
    z = sigma_bar(simple_rep(q111, 3), simple_rep(q111, 2))
    assert z.dims == {1: 0, 2: 1, 3: 1}
    assert z.mats["nu1"] == Mat(1, 1, [[1]])
    assert z.mats["mu1"] == Mat(1, 1, [[0]])


def test_sigma_bar_nonzero_count_bookkeeping(q111):
    s = simple_rep(q111, 3)
    x = simple_rep(q111, 2)
    r = ext_dim(s, x)
    z = sigma_bar(s, x)
    assert nonzero_count(z) == nonzero_count(x) + r * nonzero_count(s) + r


def test_sigma_under_dims(q111):
    s = simple_rep(q111, 3)
    z = sigma_bar(s, simple_rep(q111, 2))
    u = sigma_under(s, z)
    assert u.dims == {1: 0, 2: 1, 3: 2}


def test_sigma_reflection_dims_and_end_formula(q111):
    s = simple_rep(q111, 3)
    x = simple_rep(q111, 2)
    out = sigma(s, x)
    c = sym_form(q111, x.dims, s.dims)
    assert out.dims == {v: x.dims[v] - c * s.dims[v] for v in q111.vertices}
    gain = ringel_form(q111, x.dims, s.dims) * ringel_form(q111, s.dims, x.dims)
    assert end_dim(out) == end_dim(x) + gain


def test_sigma_requires_hom_vanishing(q111):
    s = simple_rep(q111, 3)
    with pytest.raises(DomainError):
        sigma(s, s)


def test_sigma_bar_inverse_roundtrip(q111):
    s = simple_rep(q111, 3)
    x = simple_rep(q111, 2)
    z = sigma_bar(s, x)
    back = sigma_bar_inv(s, z)
    assert back.dims == x.dims
    assert find_isomorphism(back, x) is not None


def test_sigma_under_inverse_roundtrip(q111):
    s = simple_rep(q111, 3)
    y = sigma_bar(s, simple_rep(q111, 2))
    u = sigma_under(s, y)
    back = sigma_under_inv(s, u)
    assert find_isomorphism(back, y) is not None


def test_sigma_full_roundtrip():
    p = FamilyParams(2, 1, 1)
    q = build_family(p)
    s = simple_rep(q, 3)
    x = embed_subquiver_rep(kronecker_rep((2, 1), 2), p)
    z = sigma(s, x)
    back = sigma_inv(s, z)
    assert back.dims == x.dims
    assert find_isomorphism(back, x) is not None


def test_insertion_preserves_indecomposability(counterexample_quiver):
    # indecomposable input stays indecomposable after image-vertex insertion
    f3 = GF(3)
    x = counterexample_rep(counterexample_quiver, f3)
    assert is_indecomposable_oracle(x, 3**6).verdict == "indecomposable"
    res = insert_image_vertex(x, 2, ["a1", "a2"])
    assert is_indecomposable_oracle(res.new_rep, 3**6).verdict == "indecomposable"


def test_ext_vanishing_implies_hom_vanishing_across_vertices():
    # modules with Ext(S(2),-) = Ext(-,S(2)) = 0 have no Hom against S(3),
    # and symmetrically with the roles of vertices 2 and 3 swapped
    from quiverforge.three_vertex import construct

    p = FamilyParams(1, 1, 1)
    q = build_family(p)
    s2, s3 = simple_rep(q, 2), simple_rep(q, 3)
    for r in enumerate_real_roots(q, 7):
        x, _ = construct(r, p)
        if ext_dim(s2, x) == 0 and ext_dim(x, s2) == 0:
            assert hom_dim(x, s3) == 0 and hom_dim(s3, x) == 0
        if ext_dim(s3, x) == 0 and ext_dim(x, s3) == 0:
            assert hom_dim(x, s2) == 0 and hom_dim(s2, x) == 0
