import random

import pytest
from hypothesis import given, settings, strategies as st

from grasslab import baseset as bs
from grasslab import chow, gallery, gf
from grasslab.grassmann import grassmannian
from grasslab.linalg import mat_inv, rank, transpose
from grasslab.linspace import GeometryError, PointMap, classify_map, identity_map
from grasslab.projspace import (
    SemilinearMap,
    annihilator,
    build_pg,
    induced_point_map,
    linear_point_map,
)


def rand_map(pg, seed, sigma=None):
    rng = random.Random(seed)
    F = pg.field
    s = rng.randrange(F.m) if sigma is None else sigma
    return SemilinearMap(chow.random_invertible(pg.n + 1, F, rng), s, F)


def coordinate_lift(l, G):
    """Oracle for G_k(l): push every RREF basis row through the matrix and re-reduce."""
    pg = G.ambient
    return tuple(G.index_of(pg.subspace([l.apply(r) for r in S.basis])) for S in G.forms)


# -- lifting


def test_lift_identity(pg32):
    f = chow.lift(identity_map(pg32), 1)
    assert f.map == tuple(range(35))
    assert chow.lift_embedding(identity_map(pg32), 1).map == f.map


@pytest.mark.parametrize("k", [0, 1, 2])
def test_lift_matches_coordinate_action(pg32, k):
    G = grassmannian(pg32, k)
    for seed in range(5):
        l = rand_map(pg32, seed)
        assert chow.lift(induced_point_map(l, pg32), k).map == coordinate_lift(l, G)


def test_permutation_matrix_lift(pg32):
    P = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))
    l = SemilinearMap(P, 0, pg32.field)
    G = grassmannian(pg32, 1)
    f = chow.lift(induced_point_map(l, pg32), 1)
    assert f.map == coordinate_lift(l, G)
    assert f.then(f).map == tuple(range(35))


def test_lift_rejects_collapsing_maps(pg32):
    with pytest.raises(GeometryError):
        chow.lift(PointMap(pg32, pg32, (0,) * 15), 1)


def subfield_embedding():
    F16 = gf.field(16)
    w = F16.element((0, 1, 0, 0))
    src, tgt = build_pg(3, 2), build_pg(2, 16)
    M = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (w.code, (w ** 2).code, (w ** 3).code))
    return linear_point_map(src, tgt, M)


def test_embedding_into_pg2_16_lifts_to_an_injection():
    g = subfield_embedding()
    cls = classify_map(g)
    assert cls.is_embedding and not cls.is_strong_embedding
    with pytest.raises(GeometryError):
        chow.lift_embedding(g, 1)
    f = chow.lift(g, 1)
    assert f.injective and len(f.source) == 35 and len(f.target) == 273


# -- duality and contragredient


def test_duality_is_an_involution(pg32):
    G = grassmannian(pg32, 1)
    D = chow.duality(G)
    assert D.target is G and D.then(D).map == tuple(range(35))
    for i, S in enumerate(G.forms):
        assert G.forms[D.map[i]] == annihilator(S)


def test_contragredient_identity_and_inverse_transpose(pg32):
    F = pg32.field
    assert chow.contragredient(identity_map(pg32)).map == tuple(range(15))
    for seed in range(5):
        l = rand_map(pg32, seed)
        g = induced_point_map(l, pg32)
        lt = SemilinearMap(transpose(mat_inv(l.matrix, F)), 0, F)
        assert chow.contragredient_point_map(g).map == induced_point_map(lt, pg32).map


def test_double_contragredient(pg32):
    g = induced_point_map(rand_map(pg32, 11), pg32)
    gg = chow.contragredient_point_map(chow.contragredient_point_map(g))
    assert gg.map == g.map


def test_contragredient_dual_levels(pg42):
    # G_k of the contragredient equals G_{n-k-1}(g) read through annihilators
    g = induced_point_map(rand_map(pg42, 2), pg42)
    gc = chow.contragredient_point_map(g)
    for k in range(4):
        lhs = chow.lift(gc, k)
        D1 = chow.duality(grassmannian(pg42, k))
        rhs = D1.then(chow.lift(g, pg42.n - k - 1)).then(chow.duality(grassmannian(pg42, pg42.n - k - 1)))
        assert lhs.map == rhs.map


def test_contragredient_needs_projective_spaces(punctured, pg32):
    with pytest.raises(GeometryError):
        chow.contragredient(PointMap(punctured, pg32, punctured.embedding))


# -- preservation checks


def test_adjacency_checks(pg32, punctured):
    f = chow.lift(induced_point_map(rand_map(pg32, 0), pg32), 1)
    r = chow.check_adjacency_preserving(f)
    assert r.forward and r.backward
    nat = chow.lift(PointMap(punctured, pg32, punctured.embedding), 1)
    r = chow.check_adjacency_preserving(nat)
    assert r.forward and not r.backward and r.backward_witness
    G0 = grassmannian(pg32, 0)
    r = chow.check_adjacency_preserving(chow.random_permutation_map(G0, 5))
    assert r.forward and r.backward
    r = chow.check_adjacency_preserving(chow.random_permutation_map(grassmannian(pg32, 1), 5))
    assert not r.forward and r.forward_witness


def test_base_preserving_checks(pg32):
    G = grassmannian(pg32, 1)
    l = rand_map(pg32, 4)
    f = chow.lift_semilinear(l, pg32, pg32, 1)
    rep = chow.check_base_preserving(f, frames="all")
    assert rep.ok and rep.tested == 840 and not rep.sampled
    fd = chow.lift_semilinear(l, pg32, pg32, 1, dual=True)
    assert chow.check_base_preserving(fd, frames="all").ok
    bad = chow.check_base_preserving(chow.random_permutation_map(G, 1), frames="all")
    assert not bad.ok and pg32.is_base(bad.witness)
    assert bad.to_dict()["witness_frame"] == list(bad.witness)


def test_reconstruct_frame(pg32):
    G = grassmannian(pg32, 1)
    for F in bs.sample_frames(pg32, 20, 0):
        assert chow.reconstruct_frame(G, bs.base_subset(G, F).members) == F
    assert chow.reconstruct_frame(G, range(6)) is None


def test_frames_for_sample_is_deterministic(pg42):
    a, sampled = chow.frames_for(pg42, "sample", samples=30, seed=2)
    b, _ = chow.frames_for(pg42, "sample", samples=30, seed=2)
    assert a == b and sampled and len(a) >= 30


# -- clique action and descent


def test_clique_action(pg32):
    l = rand_map(pg32, 3)
    assert chow.classify_clique_action(chow.lift_semilinear(l, pg32, pg32, 1)) == "A"
    assert chow.classify_clique_action(chow.lift_semilinear(l, pg32, pg32, 1, dual=True)) == "B"
    with pytest.raises(chow.RecognitionError):
        chow.classify_clique_action(chow.random_permutation_map(grassmannian(pg32, 1), 0))


def test_induce_lower(pg32):
    l = rand_map(pg32, 6)
    g = induced_point_map(l, pg32)
    low, kind = chow.induce_lower(chow.lift(g, 1))
    assert kind == "star" and chow.points_of_level0(low).map == g.map
    low, kind = chow.induce_lower(chow.lift_semilinear(l, pg32, pg32, 1, dual=True))
    assert kind == "top" and low.target.k == 2


def test_induce_lower_rejects_level0_and_low_n(pg32, pg42):
    with pytest.raises(chow.RecognitionError):
        chow.induce_lower(chow.lift(identity_map(pg32), 0))
    with pytest.raises(chow.RecognitionError):
        chow.induce_lower(chow.lift(identity_map(pg42), 2))


# -- recognition


@pytest.mark.parametrize("mode", ["chow", "base-subset"])
def test_recognize_collineations(pg32, mode):
    for seed in range(5):
        l = rand_map(pg32, seed)
        r = chow.recognize(chow.lift_semilinear(l, pg32, pg32, 1), mode=mode)
        assert r.verdict == "collineation-induced" and not r.dual
        assert r.witness.map == induced_point_map(l, pg32).map
        assert r.checks["reconstruction_exact"]


@pytest.mark.parametrize("mode", ["chow", "baseset"])
def test_recognize_dualities(pg32, mode):
    for seed in range(5):
        l = rand_map(pg32, seed)
        r = chow.recognize(chow.lift_semilinear(l, pg32, pg32, 1, dual=True), mode=mode)
        assert r.verdict == "duality-induced" and r.dual
        assert r.witness.map == induced_point_map(l, pg32).map


@pytest.mark.parametrize("k", [1, 2])
def test_recognize_in_pg42(pg42, k):
    l = rand_map(pg42, 9)
    r = chow.recognize(chow.lift_semilinear(l, pg42, pg42, k))
    assert r.verdict == "collineation-induced"
    assert r.witness.map == induced_point_map(l, pg42).map
    assert r.checks.get("dual_transport", False) == (k == 2)


def test_recognize_semilinear_over_gf4():
    pg = build_pg(3, 4)
    l = rand_map(pg, 1, sigma=1)
    r = chow.recognize(chow.lift_semilinear(l, pg, pg, 1))
    assert r.verdict == "collineation-induced"
    assert r.witness.map == induced_point_map(l, pg).map


def test_recognize_base_subset_mode_checks_the_inverse(pg42):
    f = chow.lift_semilinear(rand_map(pg42, 4), pg42, pg42, 1)
    r = chow.recognize(f, mode="base-subset")
    assert r.verdict == "collineation-induced"
    assert r.checks["inverse_base_preserving"] and r.checks["two_sided_gives_collineation"]


def test_recognize_failures(pg32, punctured):
    G = grassmannian(pg32, 1)
    r = chow.recognize(chow.random_permutation_map(G, 2))
    assert r.verdict == "unrecognized" and "adjacency" in r.diagnostic
    r = chow.recognize(chow.random_permutation_map(G, 2), mode="base-subset")
    assert r.verdict == "unrecognized" and "base subset" in r.diagnostic
    r = chow.recognize(chow.lift(identity_map(pg32), 0))
    assert r.verdict == "unrecognized" and "excluded" in r.diagnostic
    nat = chow.lift(PointMap(punctured, pg32, punctured.embedding), 1)
    assert chow.recognize(nat).verdict == "unrecognized"
    with pytest.raises(ValueError):
        chow.recognize(chow.lift(identity_map(pg32), 1), mode="other")


def test_recognition_result_json(pg32):
    r = chow.recognize(chow.lift(identity_map(pg32), 1))
    d = r.to_dict()
    assert d["verdict"] == "collineation-induced" and d["witness"] == list(range(15))


@settings(max_examples=15)
@given(st.integers(0, 2 ** 31), st.booleans())
def test_roundtrip_property(seed, dual):
    pg = build_pg(3, 2)
    l = rand_map(pg, seed)
    r = chow.recognize(chow.lift_semilinear(l, pg, pg, 1, dual=dual))
    assert r.verdict == ("duality-induced" if dual else "collineation-induced")
    assert r.witness.map == induced_point_map(l, pg).map


# -- bijectivity, Grassmann injection, inducing maps


def test_bijective_implies_collineation(pg32, punctured):
    g = induced_point_map(rand_map(pg32, 8), pg32)
    out = chow.bijective_implies_collineation(g, 1)
    assert out["collineation"] and out["lift_bijective"] == {1: True, 0: True}
    with pytest.raises(GeometryError):
        chow.bijective_implies_collineation(PointMap(punctured, pg32, punctured.embedding), 1)


def test_plucker_basics(pg32):
    G = grassmannian(pg32, 1)
    e01 = pg32.subspace([(1, 0, 0, 0), (0, 1, 0, 0)])
    assert chow.plucker_coordinates(e01) == (1, 0, 0, 0, 0, 0)
    P = chow.plucker(G)
    assert P.target.n == 5 and P.injective and len(set(P.map)) == 35
    for F in bs.sample_frames(pg32, 30, 0):
        pts = P.image_points(bs.base_subset(G, F).members)
        assert len(pts) == 6 and P.target.is_base(pts)


def test_plucker_images_satisfy_the_klein_relation(pg32):
    P = chow.plucker(grassmannian(pg32, 1))
    for x in P.map:
        p01, p02, p03, p12, p13, p23 = P.target.coords[x]
        assert (p01 * p23 + p02 * p13 + p03 * p12) % 2 == 0


def test_plucker_over_gf3_rank():
    pg = build_pg(3, 3)
    P = chow.plucker(grassmannian(pg, 1))
    assert P.injective
    assert rank([P.target.coords[x] for x in P.map], pg.field) == 6


def test_find_inducing_maps(pg32):
    g = induced_point_map(rand_map(pg32, 5), pg32)
    maps, cands = chow.find_inducing_maps(chow.lift(g, 1))
    assert [h.map for h in maps] == [g.map]
    assert all(c.bit_count() == 1 for c in cands)


def test_grassmann_map_algebra(pg32):
    G = grassmannian(pg32, 1)
    f = chow.random_permutation_map(G, 3)
    assert f.then(f.inverse()).map == tuple(range(35))
    assert f.bijective and f.k == 1
    with pytest.raises(GeometryError):
        chow.GrassmannMap(G, G, (0,) * 34)
    with pytest.raises(GeometryError):
        chow.GrassmannMap(G, G, (0,) * 35).inverse()


def test_random_invertible_is_invertible():
    F = gf.field(4)
    rng = random.Random(0)
    for _ in range(20):
        M = chow.random_invertible(4, F, rng)
        assert rank(M, F) == 4


def test_one_sided_bijection_uses_the_generic_checks():
    it = gallery.one_sided_bijection(2)
    assert it.ok
