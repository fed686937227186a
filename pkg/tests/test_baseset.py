import itertools
import random

import pytest
from hypothesis import given, strategies as st

from grasslab import baseset as bs
from grasslab.grassmann import grassmannian
from grasslab.linspace import GeometryError, SizeLimitError, complete_space, to_mask


@pytest.fixture(scope="module")
def G31(pg32):
    return grassmannian(pg32, 1)


@pytest.fixture(scope="module")
def B31(pg32, G31):
    return bs.base_subset(G31, pg32.standard_frame())


@pytest.fixture(scope="module")
def index31(G31):
    return bs.index_for(G31)


def line(B, i, j):
    return B.members[B.combos.index(tuple(sorted((i, j))))]


def test_base_subset_sizes(pg32, pg42, G31, B31):
    assert len(B31) == 6
    assert len(bs.base_subset(grassmannian(pg42, 1), pg42.standard_frame())) == 10
    B0 = bs.base_subset(grassmannian(pg32, 0), pg32.standard_frame())
    assert sorted(grassmannian(pg32, 0).masks[u].bit_length() - 1 for u in B0.members) == sorted(pg32.standard_frame())


def test_base_subset_rejects_non_bases(pg32, G31):
    with pytest.raises(GeometryError):
        bs.base_subset(G31, pg32.lines[0] + (pg32.standard_frame()[3],))
    with pytest.raises(GeometryError):
        bs.base_subset(G31, (0, 0, 1, 2))


def test_sub_family_sizes(pg32, B31):
    fr = pg32.standard_frame()
    plane = pg32.closure_mask(to_mask(fr[:3]))
    assert len(bs.sub_family(B31, plane)) == 3 == bs.family_size(3, 1, 2)
    assert len(bs.sub_family(B31, ("+", 0))) == 3
    assert len(bs.sub_family(B31, ("-", 0))) == 3
    point = 1 << fr[0]
    assert bs.sub_family(B31, point) == bs.through(B31, 0)
    off_frame = pg32.line_mask(fr[0], pg32.point((1, 1, 1, 0)))
    with pytest.raises(GeometryError):
        bs.sub_family(B31, off_frame)


def test_s_i_values(pg32, G31, B31):
    fr = pg32.standard_frame()
    for i, p in enumerate(fr):
        assert bs.s_i(B31, B31.members, i) == 1 << p
    R = bs.lemma_family(B31, 0, 1)
    assert bs.s_i(B31, R, 0) == G31.masks[line(B31, 0, 1)]
    # no member through p_0: the empty meet is the whole point set
    assert bs.s_i(B31, bs.avoiding(B31, 0), 0) == pg32.full_mask


def test_exactness_examples(B31, index31):
    assert bs.is_exact(B31, B31.members)
    assert not bs.is_exact(B31, bs.lemma_family(B31, 0, 1))
    assert not bs.is_exact(B31, ())
    assert bs.is_exact_oracle(index31, B31.members)
    assert index31.count_containing(bs.lemma_family(B31, 0, 1)) >= 2
    assert index31.count_containing([B31.members[0]]) > 1


def test_exactness_matches_oracle_on_all_frames_pg32(pg32, G31, index31):
    for F in bs.iter_frames(pg32):
        B = bs.base_subset(G31, F)
        for r in range(7):
            for R in itertools.combinations(B.members, r):
                assert bs.is_exact(B, R) == bs.is_exact_oracle(index31, R)


def test_frame_enumeration_counts(pg22, pg32):
    # ordered frames of PG(n,2) are |GL(n+1,2)|; unordered ones divide by (n+1)!
    assert len(list(bs.iter_frames(pg22))) == 168 // 6
    assert len(list(bs.iter_frames(pg32))) == 20160 // 24
    with pytest.raises(SizeLimitError):
        list(bs.iter_frames(pg32, limit=10))


def test_index_counts(G31, index31):
    assert len(index31) == 840
    assert set(index31.masks) == {bs.base_subset(G31, F).mask for F in index31.frames}


@given(st.integers(0, 10 ** 6))
def test_sampled_frames_are_bases(seed):
    from grasslab.projspace import build_pg

    pg = build_pg(4, 2)
    for F in bs.sample_frames(pg, 5, seed):
        assert pg.is_base(F) and len(F) == 5


def test_sample_frames_deterministic(pg42):
    assert bs.sample_frames(pg42, 10, 3) == bs.sample_frames(pg42, 10, 3)


def test_maximal_inexact_pg32(B31):
    fam = bs.maximal_inexact(B31, raw=True)
    assert len(fam) == 12
    assert {len(R) for R in fam} == {4} == {bs.maximal_inexact_size(3, 1)}
    for R in fam:
        for u in set(B31.members) - R:
            assert bs.is_exact(B31, R | {u})


def test_maximal_inexact_pg42(pg42):
    G = grassmannian(pg42, 1)
    B = bs.base_subset(G, pg42.standard_frame())
    fam = bs.maximal_inexact(B, raw=True)
    assert len(fam) == 20 and {len(R) for R in fam} == {7}


def test_maximal_inexact_raw_limit():
    K8 = complete_space(8)
    B = bs.base_subset(grassmannian(K8, 2), range(8))
    assert len(B) == 56
    with pytest.raises(SizeLimitError):
        bs.enumerate_maximal_inexact(B)
    # the classification alone still works
    assert {len(R) for R in bs.maximal_inexact(B)} == {bs.maximal_inexact_size(7, 2)}


def test_complement_subsets(B31):
    C = bs.complement_subset(B31, 0, 2)
    assert C == {line(B31, 0, 1), line(B31, 0, 3)}
    assert bs.through(B31, 0) | bs.avoiding(B31, 0) == set(B31.members)
    with pytest.raises(GeometryError):
        bs.complement_subset(B31, 1, 1)


def test_regular_examples(B31):
    assert bs.regular_size(3, 1) == 1 and bs.regular_size(4, 1) == 1 and bs.regular_size(5, 2) == 2
    assert bs.is_regular(B31, [(0, 2), (1, 3)])
    inter = bs.complement_subset(B31, 0, 2) & bs.complement_subset(B31, 1, 3)
    assert inter == {line(B31, 0, 1)}
    assert not bs.is_regular(B31, [(0, 1), (1, 0)])
    assert not bs.is_regular_criterion([(0, 1), (1, 0)], 3, 1)
    assert not bs.is_regular_criterion([(0, 2), (0, 3)], 4, 1)
    with pytest.raises(GeometryError):
        bs.is_regular(B31, [(0, 1), (1, 2), (2, 3)])


@pytest.mark.parametrize("name,k", [("pg32", 1), ("pg42", 1), ("pg42", 2)])
def test_regularity_criterion_matches_definition(request, name, k):
    pg = request.getfixturevalue(name)
    B = bs.base_subset(grassmannian(pg, k), pg.standard_frame())
    m = bs.regular_size(pg.n, k)
    for c in itertools.combinations(bs.all_pairs(B), m + 1):
        assert bs.is_regular_definition(B, c) == bs.is_regular_criterion(c, pg.n, k)


def test_combinatorial_adjacency_examples(B31):
    assert bs.combinatorial_adjacent(B31, line(B31, 0, 1), line(B31, 0, 2))
    assert not bs.combinatorial_adjacent(B31, line(B31, 0, 1), line(B31, 2, 3))
    assert not bs.combinatorial_adjacent(B31, line(B31, 0, 1), line(B31, 0, 1))


@pytest.mark.parametrize("name,k", [("pg32", 1), ("pg42", 1), ("pg42", 2)])
def test_combinatorial_adjacency_matches_geometry(request, name, k):
    pg = request.getfixturevalue(name)
    G = grassmannian(pg, k)
    for F in bs.sample_frames(pg, 5, 0):
        B = bs.base_subset(G, F)
        for u, v in itertools.combinations(B.members, 2):
            assert bs.combinatorial_adjacent(B, u, v) == G.adjacent(u, v)


def test_co_spannable(pg32, punctured, G31):
    rng = random.Random(0)
    for _ in range(30):
        i, j = rng.randrange(35), rng.randrange(35)
        assert bs.co_spannable(G31, i, j)
        assert bs.co_spannable_search(G31, i, j)
    Gp = grassmannian(punctured, 1)
    pairs = [(i, j) for i in range(len(Gp)) for j in range(len(Gp)) if Gp.adjacent(i, j)]
    for i, j in rng.sample(pairs, 30):
        assert bs.co_spannable_search(Gp, i, j)
