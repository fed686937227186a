"""Small concrete counterexamples, each with machine-checked claims.

Every item is built over a finite field and verified with the general
classifiers (classify_map, the adjacency and base-subset checks); nothing
here is special-cased.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import baseset, chow, gf
from .fileio import dumps, geometry_to_dict
from .grassmann import grassmannian
from .linalg import rank
from .linspace import GeometryError, LinearSpace, PointMap, bits, classify_map, identity_map, to_mask
from .projspace import build_pg, linear_point_map, verify_projective_axioms


@dataclass
class Claim:
    name: str
    passed: bool
    detail: object = None

    def to_dict(self):
        return {"name": self.name, "passed": bool(self.passed), "detail": self.detail}


@dataclass
class GalleryItem:
    id: str
    construction: dict
    claims: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.claims)

    def claim(self, name, passed, detail=None):
        self.claims.append(Claim(name, bool(passed), detail))

    def to_dict(self):
        return {
            "id": self.id,
            "ok": self.ok,
            "construction": self.construction,
            "claims": [c.to_dict() for c in self.claims],
        }

    def to_json(self):
        return dumps(self.to_dict())


def _pg_subspace_mask(pg, rows):
    return pg.mask_of(pg.subspace(rows))


def _unit(n1, *idx):
    return [tuple(1 if j == i else 0 for j in range(n1)) for i in idx]


# -- a plane with the exchange property built from PG(3, q)


def _kreuzer(q):
    pg = build_pg(3, q)
    S = _pg_subspace_mask(pg, _unit(4, 0, 1, 2))
    lines = [L for L, m in zip(pg.lines, pg.line_masks) if m & S != m] + [sorted(bits(S))]
    return pg, S, LinearSpace(pg.n_points, lines, label=f"kreuzer-plane({pg.field.designator})")


def kreuzer_plane_space(q=2):
    """PG(3, q) with the lines of one plane replaced by that plane as a single line."""
    return _kreuzer(q)[2]


def kreuzer_plane(q=2):
    pg, S, K = _kreuzer(q)
    plane_lines = q * q + q + 1
    item = GalleryItem(
        "kreuzer-plane",
        {"ambient": pg.label, "promoted_plane": sorted(bits(S)), "geometry": geometry_to_dict(K)},
    )
    item.claim("line count equals ambient lines minus plane lines plus one",
               len(K.lines) == len(pg.lines) - plane_lines + 1, len(K.lines))
    item.claim("linear space axioms hold", K.is_valid())
    item.claim("dimension is 2", K.dimension == 2, K.dimension)
    ok, wit = K.check_exchange()
    item.claim("exchange axiom holds", ok, wit)
    cls = classify_map(identity_map(pg, K))
    item.claim("identity of the point set is a semicollineation", cls.is_semicollineation, cls.kind)
    item.claim("identity is not a collineation", not cls.is_collineation, cls.kind)
    item.claim("dimensions differ", pg.dimension != K.dimension, [pg.dimension, K.dimension])
    return item


# -- a projective space with one point removed


def punctured_space(q=2, p=0):
    """(PG(3, q), PG(3, q) with point p removed)."""
    pg = build_pg(3, q)
    X = [x for x in range(pg.n_points) if x != p]
    return pg, pg.restrict(X, label=f"{pg.label}-minus-{p}")


def _lines_through(pg, p):
    return [m for m in pg.line_masks if m >> p & 1]


def _to_local(space, ambient_mask):
    pos = {a: i for i, a in enumerate(space.embedding)}
    return to_mask(pos[a] for a in bits(ambient_mask) if a in pos)


def punctured(q=2, p=0):
    pg, X = punctured_space(q, p)
    item = GalleryItem("punctured", {"ambient": pg.label, "removed_point": p, "geometry": geometry_to_dict(X)})
    item.claim("one point fewer than the ambient", X.n_points == pg.n_points - 1, X.n_points)
    item.claim("linear space axioms hold", X.is_valid())
    ok, wit = X.check_exchange()
    item.claim("exchange axiom holds", ok, wit)
    proj, wit = verify_projective_axioms(X)
    item.claim("two coplanar lines fail to meet", not proj and wit[0] == "disjoint-coplanar-lines", wit)

    L1, L2 = _lines_through(pg, p)[:2]
    t1, t2 = _to_local(X, L1), _to_local(X, L2)
    plane = X.closure_mask(t1 | t2)
    item.claim(
        "truncated lines through the removed point are disjoint and span a plane",
        t1 & t2 == 0 and X.subspace_dim(plane) == 2,
        {"lines": [sorted(bits(t1)), sorted(bits(t2))], "plane": sorted(bits(plane))},
    )

    expected = set()
    for T in pg.subspaces():
        expected.add(_to_local(X, T & ~(1 << p)))
    got = set(X.subspaces())
    item.claim("subspaces are exactly the traces S with S or S+p a subspace", got == expected,
               {"subspaces": len(got)})
    return item


def clique_not_top(q=2, p=0):
    pg, X = punctured_space(q, p)
    G = grassmannian(X, 1)
    L1, L2 = _lines_through(pg, p)[:2]
    L, Lp = _to_local(X, L1), _to_local(X, L2)
    S = X.closure_mask(L | Lp)
    p1, p2 = list(bits(L))[:2]
    qpt = next(x for x in bits(S & ~L))
    triple = [G.index[L], G.index[X.line_mask(p1, qpt)], G.index[X.line_mask(p2, qpt)]]
    top = G.top(S)
    cliques = [c for c in G.maximal_cliques() if set(triple) <= c]
    item = GalleryItem(
        "clique-not-top",
        {
            "space": X.label,
            "plane": sorted(bits(S)),
            "L": sorted(bits(L)),
            "L_prime": sorted(bits(Lp)),
            "triple": triple,
            "cliques": [sorted(c) for c in cliques],
            "top": sorted(top.members),
        },
    )
    item.claim("starting lines are mutually adjacent",
               all(G.adjacent(a, b) for a, b in itertools.combinations(triple, 2)))
    item.claim("L and L' are not adjacent", not G.adjacent(G.index[L], G.index[Lp]))
    item.claim("the plane is 2-dimensional", X.subspace_dim(S) == 2)
    item.claim("some maximal clique contains the triple", bool(cliques), len(cliques))
    item.claim("each such clique is a proper subset of the lines in the plane",
               bool(cliques) and all(c < top.members for c in cliques),
               [[len(c), len(top.members)] for c in cliques])
    return item


def one_sided_bijection(q=2, p=0):
    pg, X = punctured_space(q, p)
    natural = PointMap(X, pg, tuple(X.embedding))
    f = chow.lift(natural, 1)
    adj = chow.check_adjacency_preserving(f)
    fwd_base = chow.check_base_preserving(f, frames="all")
    inv_base = chow.check_base_preserving(f.inverse(), frames="all")
    item = GalleryItem("one-sided-bijection",
                       {"source": X.label, "target": pg.label, "k": 1, "map": list(f.map)})
    item.claim("the map is a bijection", f.bijective, [len(f.source), len(f.target)])
    item.claim("adjacency preserved forward", adj.forward)
    item.claim("adjacency not preserved backward", not adj.backward,
               list(adj.backward_witness) if adj.backward_witness else None)
    item.claim("base subsets go to base subsets", fwd_base.ok, fwd_base.tested)
    item.claim("the inverse does not send base subsets to base subsets", not inv_base.ok,
               list(inv_base.witness) if inv_base.witness else None)
    try:
        chow.bijective_implies_collineation(natural, 1)
        refused = False
    except GeometryError:
        refused = True
    item.claim("bijectivity-to-collineation check refuses the non-projective source", refused)
    return item


def brezuleanu_radulescu():
    F2, F16 = gf.field(2), gf.field("2^4")
    w = F16.element((0, 1, 0, 0))
    bs = [w, w**2, w**3]
    src, tgt = build_pg(3, F2), build_pg(2, F16)
    matrix = _unit(3, 0, 1, 2) + [tuple(b.code for b in bs)]
    g = linear_point_map(src, tgt, matrix)
    cls = classify_map(g)
    frame = src.standard_frame()
    reps = [F16.one.rep] + [b.rep for b in bs]
    item = GalleryItem(
        "brezuleanu-radulescu",
        {"source": src.label, "target": tgt.label, "matrix": [list(r) for r in matrix], "map": list(g.map)},
    )
    item.claim("1, b1, b2, b3 are independent over GF(2)", rank(reps, F2) == 4, [list(r) for r in reps])
    item.claim("the point map is injective", cls.injective)
    item.claim("collinearity preserving", cls.collinearity_preserving)
    item.claim("non-collinearity preserving", cls.non_collinearity_preserving)
    item.claim("classified as an embedding", cls.is_embedding, cls.kind)
    item.claim("not a strong embedding", not cls.is_strong_embedding,
               cls.witnesses.get("independence"))
    item.claim("a base goes to a dependent set", not tgt.is_independent(g.image_mask(to_mask(frame))),
               [g(x) for x in frame])
    F = chow.lift(g, 1)
    item.claim("lines lift to an injection of lines", F.injective, [len(F.source), len(F.target)])
    return item


def base_into_base_not_embedding(q=2):
    pg = build_pg(4, q)
    S = _pg_subspace_mask(pg, _unit(5, 0, 1, 2))
    L = _pg_subspace_mask(pg, _unit(5, 3, 4))
    Lp = _pg_subspace_mask(pg, _unit(5, 0, 1))
    PS = pg.restrict(bits(S), label=f"{pg.label}|S")
    GS, G = grassmannian(PS, 1), grassmannian(pg, 1)
    emb = PS.embedding

    def ambient(m):
        return to_mask(emb[x] for x in bits(m))

    images = []
    for m in GS.masks:
        a = pg.closure_mask(ambient(m))
        images.append(G.index[L] if a == Lp else G.index[a])
    f = chow.GrassmannMap(GS, G, tuple(images))

    # a frame of S plus two points of L spans a base subset holding B and L
    exhibited = []
    all_found = True
    pair = set(sorted(bits(L))[:2])
    for F in sorted(PS.all_bases(), key=sorted):
        B = baseset.base_subset(GS, sorted(F))
        frame = sorted({emb[x] for x in F} | pair)
        target = baseset.base_subset(G, frame)
        want = {G.index[pg.closure_mask(ambient(GS.masks[u]))] for u in B.members} | {G.index[L]}
        ok = want <= set(target.members)
        all_found &= ok
        exhibited.append({"frame": sorted(F), "target_frame": frame, "contains": ok})
    into = chow.check_base_preserving(f, frames="all", into=True)
    maps, cands = chow.find_inducing_maps(f)
    empty = [x for x, c in enumerate(cands) if c == 0]
    item = GalleryItem(
        "base-into-base-not-embedding",
        {
            "ambient": pg.label,
            "S": sorted(bits(S)),
            "L": sorted(bits(L)),
            "L_prime": sorted(bits(Lp)),
            "map": list(f.map),
            "exhibited": exhibited,
        },
    )
    item.claim("S has dimension n-2", pg.subspace_dim(S) == pg.n - 2)
    item.claim("L is a complement of S", S & L == 0 and pg.closure_mask(S | L) == pg.full_mask)
    item.claim("L' lies in S", Lp & S == Lp)
    item.claim("the map is injective", f.injective)
    item.claim("the map moves exactly one line", sum(
        G.index[pg.closure_mask(ambient(m))] != f.map[i] for i, m in enumerate(GS.masks)) == 1)
    item.claim("each base subset together with L lies in a base subset of the ambient", all_found, len(exhibited))
    item.claim("base subsets go into base subsets", into.ok, into.tested)
    item.claim("no point map induces it", not maps, {"points_without_candidates": empty})
    return item


ITEMS = {
    "kreuzer-plane": kreuzer_plane,
    "punctured": punctured,
    "clique-not-top": clique_not_top,
    "one-sided-bijection": one_sided_bijection,
    "brezuleanu-radulescu": brezuleanu_radulescu,
    "base-into-base-not-embedding": base_into_base_not_embedding,
}


def run_item(item_id, q=2):
    fn = ITEMS[item_id]
    return fn() if item_id == "brezuleanu-radulescu" else fn(q)


def run_all(q=2):
    return [run_item(i, q) for i in ITEMS]
