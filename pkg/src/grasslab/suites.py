"""Check suites: one entry per structural property, runnable from the CLI.

Each suite takes a :class:`Context` and returns a :class:`SuiteResult`.
Suites that need a projective space or a particular level are skipped
(not failed) when the loaded geometry does not qualify.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from math import comb

from . import baseset, chow, gallery
from .grassmann import grassmannian
from .linalg import vec_mat
from .linspace import (
    PointMap,
    automorphisms,
    bits,
    classify_map,
    complete_space,
    identity_map,
    maps_bases_to_bases,
    to_mask,
)
from .projspace import (
    ProjectiveSpace,
    SemilinearMap,
    annihilator,
    build_pg,
    enumerate_rref,
    gaussian_binomial,
    induced_point_map,
    iter_invertible,
    meet,
    span,
    verify_projective_axioms,
)


@dataclass
class Context:
    space: object = None
    k: int = 1
    seed: int = 0
    frames: object = "sample"  # "all", "sample" or an int sample size
    roundtrips: int = 20

    @property
    def is_pg(self):
        return isinstance(self.space, ProjectiveSpace)


@dataclass
class SuiteResult:
    id: str
    tag: str
    passed: bool = True
    skipped: bool = False
    instances: int = 0
    seconds: float = 0.0
    witness: object = None
    note: str = ""

    def to_dict(self):
        return {
            "id": self.id,
            "tag": self.tag,
            "status": "skip" if self.skipped else ("pass" if self.passed else "fail"),
            "instances": self.instances,
            "seconds": round(self.seconds, 3),
            "witness": self.witness,
            "note": self.note,
        }

    def line(self, timing=True):
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        t = f" {self.seconds:.2f}s" if timing else ""
        extra = f" witness={self.witness}" if self.witness is not None and not self.passed else ""
        note = f" ({self.note})" if self.note else ""
        return f"{status} {self.id} [{self.tag}] instances={self.instances}{t}{note}{extra}"


class Skip(Exception):
    pass


SUITES = {}


def suite(sid, tag, group):
    def deco(fn):
        SUITES[sid] = (tag, group, fn)
        return fn

    return deco


def _need_pg(ctx):
    if not ctx.is_pg:
        raise Skip("needs a projective space")


def _need_level(ctx):
    _need_pg(ctx)
    if not 0 < ctx.k < ctx.space.n - 1:
        raise Skip(f"needs 0 < k < n-1, got k={ctx.k}")


def _frame_list(ctx, space):
    if ctx.frames == "all":
        return list(baseset.iter_frames(space))
    count = ctx.frames if isinstance(ctx.frames, int) else 50
    return baseset.sample_frames(space, count, ctx.seed)


def _bases_for(space, ctx, cap=100):
    """All bases when there are few, else a seeded sample."""
    frames = []
    for F in baseset.iter_frames(space):
        frames.append(F)
        if len(frames) > cap:
            return baseset.sample_frames(space, cap, ctx.seed)
    return frames


def _small_spaces():
    return [build_pg(2, 2), complete_space(5), gallery.kreuzer_plane_space(2), gallery.punctured_space(2)[1]]


# -- linear spaces


@suite("closure-laws", "closure operator laws", "linspace")
def closure_laws(ctx):
    space = ctx.space
    rng = random.Random(ctx.seed)
    N = space.n_points
    count = 0
    for _ in range(300):
        A = rng.getrandbits(N) & rng.getrandbits(N)
        B = A | (rng.getrandbits(N) & rng.getrandbits(N))
        cA, cB = space.closure_mask(A), space.closure_mask(B)
        count += 1
        if cA & A != A:
            return False, count, {"extensive": sorted(bits(A))}
        if cA & ~cB:
            return False, count, {"monotone": [sorted(bits(A)), sorted(bits(B))]}
        if space.closure_mask(cA) != cA:
            return False, count, {"idempotent": sorted(bits(A))}
    return True, count, None


@suite("closure-depth", "one-step hull iteration terminates within n_points steps", "linspace")
def closure_depth(ctx):
    space = ctx.space
    rng = random.Random(ctx.seed)
    count = 0
    for _ in range(200):
        A = rng.getrandbits(space.n_points) & rng.getrandbits(space.n_points)
        cur, steps = A, 0
        while True:
            nxt = space.hull_step(cur)
            if nxt == cur:
                break
            cur, steps = nxt, steps + 1
        count += 1
        if steps > space.n_points or cur != space.closure_mask(A):
            return False, count, sorted(bits(A))
    return True, count, None


@suite("base-intersections", "closures of base subsets intersect as the index sets unite", "linspace")
def base_intersections(ctx):
    space = ctx.space
    count = 0
    for F in _bases_for(space, ctx, cap=20):
        r = len(F)
        cl = {}
        for m in range(1 << r):
            cl[m] = space.closure_mask(to_mask(F[i] for i in range(r) if not m >> i & 1))
        for I in range(1 << r):
            for J in range(1 << r):
                count += 1
                if cl[I] & cl[J] != cl[I | J]:
                    return False, count, {"base": list(F), "I": I, "J": J}
    return True, count, None


@suite("base-cardinality", "all bases equal in size, every independent set extends to a base", "linspace")
def base_cardinality(ctx):
    space = ctx.space
    if not space.has_exchange:
        raise Skip("exchange axiom fails here")
    if space.n_points > 16:
        raise Skip("more than 16 points")
    sizes = {len(B) for B in space.all_bases()}
    count = len(sizes)
    if len(sizes) != 1:
        return False, count, sorted(sizes)
    for ind in space.independent_sets():
        count += 1
        B = space.extend_to_base(ind)
        if not space.is_base(B) or not set(ind) <= set(B):
            return False, count, list(ind)
    return True, count, None


@suite("semicollineation-dimension", "semicollineations into spaces of no smaller dimension are collineations", "linspace")
def semicollineation_dimension(ctx):
    count = 0
    pairs = [(S, S) for S in _small_spaces()]
    pg3 = build_pg(3, 2)
    kp = gallery.kreuzer_plane_space(2)
    witness_pair = identity_map(pg3, kp)
    for S, T in pairs:
        f = identity_map(S, T)
        cls = classify_map(f)
        count += 1
        if cls.is_semicollineation and S.dimension <= T.dimension and not cls.is_collineation:
            return False, count, S.label
    cls = classify_map(witness_pair)
    count += 1
    if not (cls.is_semicollineation and not cls.is_collineation and pg3.dimension > kp.dimension):
        return False, count, "dimension-dropping pair"
    return True, count, None


@suite("base-to-base-surjection", "base-preserving surjections are collineations", "linspace")
def base_to_base_surjection(ctx):
    count = 0
    for S in [complete_space(4), complete_space(5), build_pg(2, 2)]:
        bases = S.all_bases()
        limit = 5040 if S.n_points <= 7 else 0
        for perm in itertools.islice(itertools.permutations(range(S.n_points)), limit):
            f = PointMap(S, S, perm)
            if maps_bases_to_bases(f, bases, bases):
                count += 1
                if not classify_map(f).is_collineation:
                    return False, count, [S.label, list(perm)]
    return True, count, None


@suite("closure-image", "image of a closure lies in the closure of the image", "linspace")
def closure_image(ctx):
    count = 0
    maps = []
    pg3 = build_pg(3, 2)
    maps.append(identity_map(pg3, gallery.kreuzer_plane_space(2)))
    X = gallery.punctured_space(2)[1]
    maps.append(PointMap(X, pg3, tuple(X.embedding)))
    for M in itertools.islice(iter_invertible(3, 2), 0, 168, 17):
        P = build_pg(2, 2)
        maps.append(induced_point_map(SemilinearMap(M, 0, P.field), P))
    for f in maps:
        S, T = f.source, f.target
        for r in range(5):
            for X_ in itertools.combinations(range(S.n_points), r):
                if r == 4 and X_[0] > 2:
                    break
                count += 1
                left = f.image_mask(S.closure_mask(to_mask(X_)))
                right = T.closure_mask(f.image_mask(to_mask(X_)))
                if left & ~right:
                    return False, count, [S.label, list(X_)]
    return True, count, None


@suite("exchange", "exchange axiom", "standalone")
def exchange(ctx):
    ok, wit = ctx.space.check_exchange()
    if ok:
        return True, 1, None
    X, p1, p2 = wit
    return False, 1, {"X": sorted(X), "p1": p1, "p2": p2}


@suite("axioms", "linear space axioms", "standalone")
def axioms(ctx):
    problems = ctx.space.validate()
    return not problems, 1, [str(v) for v in problems] or None


@suite("bases", "all bases equal in size, every independent set extends to a base", "standalone")
def bases(ctx):
    return base_cardinality(ctx)


@suite("projective", "projective space axioms (coplanar lines meet, lines have three points)", "standalone")
def projective(ctx):
    ok, wit = verify_projective_axioms(ctx.space)
    return ok, 1, list(wit) if wit else None


# -- projective spaces


@suite("subspace-counts", "subspace counts equal Gaussian binomials", "projspace")
def subspace_counts(ctx):
    _need_pg(ctx)
    pg = ctx.space
    count = 0
    for r in range(1, pg.n + 1):
        count += 1
        brute = sum(1 for _ in enumerate_rref(r, pg.n + 1, pg.field))
        if brute != gaussian_binomial(pg.n + 1, r, pg.q) or len(grassmannian(pg, r - 1)) != brute:
            return False, count, {"rank": r, "brute": brute}
    return True, count, None


@suite("modular-law", "dim span + dim meet = dim A + dim B", "projspace")
def modular_law(ctx):
    _need_pg(ctx)
    pg = ctx.space
    subs = [S for d in range(pg.n) for S in grassmannian(pg, d).forms]
    rng = random.Random(ctx.seed)
    pairs = itertools.combinations(subs, 2) if len(subs) <= 80 else (
        (rng.choice(subs), rng.choice(subs)) for _ in range(3000))
    count = 0
    for A, B in pairs:
        count += 1
        if span(A, B).dim + meet(A, B).dim != A.dim + B.dim:
            return False, count, [A.to_dict(), B.to_dict()]
    return True, count, None


@suite("semilinear-composition", "point maps of semilinear maps compose", "projspace")
def semilinear_composition(ctx):
    _need_pg(ctx)
    pg = ctx.space
    F = pg.field
    rng = random.Random(ctx.seed)
    count = 0
    for _ in range(20):
        l1 = SemilinearMap(chow.random_invertible(pg.n + 1, F, rng), rng.randrange(F.m), F)
        l2 = SemilinearMap(chow.random_invertible(pg.n + 1, F, rng), rng.randrange(F.m), F)
        count += 1
        lhs = induced_point_map(l1.compose(l2), pg)
        rhs = induced_point_map(l1, pg).compose(induced_point_map(l2, pg))
        if lhs.map != rhs.map or l1.compose(l2).sigma != (l1.sigma + l2.sigma) % F.m:
            return False, count, None
    return True, count, None


@suite("collineation-oracle", "automorphism search agrees with matrix-induced maps", "projspace")
def collineation_oracle(ctx):
    _need_pg(ctx)
    pg = ctx.space
    if pg.field.m != 1 or pg.n_points > 15:
        raise Skip("only prime fields with at most 15 points")
    found = set(automorphisms(pg))
    induced = {induced_point_map(SemilinearMap(M, 0, pg.field), pg).map for M in iter_invertible(pg.n + 1, pg.field)}
    ok = found == induced
    return ok, len(found), None if ok else {"search": len(found), "matrices": len(induced)}


@suite("rref-canonical", "RREF is idempotent and equal row spaces give equal forms", "projspace")
def rref_canonical(ctx):
    _need_pg(ctx)
    pg = ctx.space
    F = pg.field
    rng = random.Random(ctx.seed)
    count = 0
    for _ in range(200):
        r = rng.randint(1, pg.n + 1)
        rows = [tuple(rng.randrange(F.q) for _ in range(pg.n + 1)) for _ in range(r)]
        S = pg.subspace(rows)
        if S.rank == 0:
            continue
        count += 1
        if pg.subspace(S.basis) != S:
            return False, count, rows
        M = chow.random_invertible(S.rank, F, rng)
        mixed = [tuple(vec_mat(M[i], S.basis, F)) for i in range(S.rank)]
        if pg.subspace(mixed) != S:
            return False, count, rows
    return True, count, None


# -- Grassmann spaces


def _exchange_spaces():
    return [gallery.punctured_space(2)[1], gallery.kreuzer_plane_space(2), build_pg(3, 2)]


@suite("distance-sandwich", "dim span - k <= distance <= k - dim meet", "grassmann")
def distance_sandwich(ctx):
    count = 0
    strict = 0
    spaces = _exchange_spaces() + ([ctx.space] if ctx.space is not None and ctx.space.has_exchange else [])
    for S in spaces:
        if S.dimension < 3:
            continue
        G = grassmannian(S, 1)
        for i in range(len(G)):
            for j in range(len(G)):
                count += 1
                d = G.distance(i, j)
                if d is None:
                    continue
                lo, hi = G.span_dim(i, j) - 1, 1 - G.meet_dim(i, j)
                if not lo <= d <= hi:
                    return False, count, [S.label, i, j]
                strict += lo < hi
    return True, count, None


@suite("distance-formula", "distance = k - dim meet = dim span - k", "grassmann")
def distance_formula(ctx):
    _need_pg(ctx)
    count = 0
    for k in sorted({1, ctx.k} & set(range(ctx.space.n))):
        G = grassmannian(ctx.space, k)
        for i in range(len(G)):
            for j in range(len(G)):
                count += 1
                d = G.distance(i, j)
                if not d == k - G.meet_dim(i, j) == G.span_dim(i, j) - k:
                    return False, count, [k, i, j]
    return True, count, None


@suite("adjacent-span", "adjacent elements span a (k+1)-subspace", "grassmann")
def adjacent_span(ctx):
    count = 0
    for S in _exchange_spaces() + [ctx.space]:
        if S.dimension < 3:
            continue
        G = grassmannian(S, 1)
        for i in range(len(G)):
            for j in bits(G.adjacency[i]):
                count += 1
                if G.span_dim(i, j) != 2:
                    return False, count, [S.label, i, j]
    return True, count, None


@suite("cliques-stars-tops", "maximal cliques are exactly the stars and tops", "grassmann")
def cliques_stars_tops(ctx):
    _need_level(ctx)
    G = grassmannian(ctx.space, ctx.k)
    if len(G) > 200:
        raise Skip("too many elements for exhaustive clique search")
    cliques = set(G.maximal_cliques())
    expected = {s.members for s in G.all_stars()} | {t.members for t in G.all_tops()}
    ok = cliques == expected
    return ok, len(cliques), None if ok else {"cliques": len(cliques), "stars_tops": len(expected)}


@suite("star-top-maximality", "every star (k<n-1) and top (k>0) is a maximal clique", "grassmann")
def star_top_maximality(ctx):
    _need_pg(ctx)
    G = grassmannian(ctx.space, ctx.k)
    count = 0
    fam = []
    if ctx.k < ctx.space.n - 1:
        fam += G.all_stars()
    if ctx.k > 0:
        fam += G.all_tops()
    for A in fam:
        count += 1
        mask = to_mask(A.members)
        for i in A.members:
            if (G.adjacency[i] | 1 << i) & mask != mask:
                return False, count, [A.kind, sorted(A.members)]
        common = (1 << len(G)) - 1
        for i in A.members:
            common &= G.adjacency[i]
        if common & ~mask:
            return False, count, [A.kind, "extendable"]
    return True, count, None


@suite("complement-adjacency", "adjacency decided by complements agrees with adjacency", "grassmann")
def complement_adjacency(ctx):
    _need_pg(ctx)
    G = grassmannian(ctx.space, ctx.k)
    if len(G) > 60:
        raise Skip("complement search limited to 60 elements")
    count = 0
    for i in range(len(G)):
        for j in range(len(G)):
            if i != j:
                count += 1
                if G.complement_adjacency(i, j) != G.adjacent(i, j):
                    return False, count, [i, j]
    return True, count, None


# -- base subsets


@suite("exactness-criterion", "exactness criterion agrees with counting base subsets", "baseset")
def exactness_criterion(ctx):
    _need_level(ctx)
    G = grassmannian(ctx.space, ctx.k)
    index = baseset.index_for(G)
    count = 0
    for F in _frame_list(ctx, ctx.space):
        B = baseset.base_subset(G, F)
        if len(B) > 12:
            raise Skip("base subsets too large for exhaustive subsets")
        for r in range(len(B) + 1):
            for R in itertools.combinations(B.members, r):
                count += 1
                if baseset.is_exact(B, R) != baseset.is_exact_oracle(index, R):
                    return False, count, {"frame": list(F), "R": list(R)}
    return True, count, None


@suite("maximal-inexact", "maximal inexact subsets are the pair family of the stated size", "baseset")
def maximal_inexact(ctx):
    _need_level(ctx)
    G = grassmannian(ctx.space, ctx.k)
    n, k = ctx.space.n, ctx.k
    size = baseset.maximal_inexact_size(n, k)
    count = 0
    for F in _frame_list(ctx, ctx.space):
        B = baseset.base_subset(G, F)
        fam = baseset.maximal_inexact(B)
        count += 1
        if len(fam) != n * (n + 1) or any(len(R) != size for R in fam):
            return False, count, list(F)
        if len(B) <= 12:
            for r in range(len(B) + 1):
                for R in itertools.combinations(B.members, r):
                    if not baseset.is_exact(B, R):
                        if (len(R) == size) != baseset.is_maximal_inexact(B, R):
                            return False, count, {"frame": list(F), "R": list(R)}
    return True, count, None


@suite("regularity-criterion", "index criterion for regular collections agrees with the definition", "baseset")
def regularity_criterion(ctx):
    _need_level(ctx)
    G = grassmannian(ctx.space, ctx.k)
    B = baseset.base_subset(G, ctx.space.standard_frame())
    n, k = ctx.space.n, ctx.k
    m = baseset.regular_size(n, k)
    count = 0
    for c in itertools.combinations(baseset.all_pairs(B), m + 1):
        count += 1
        if baseset.is_regular_definition(B, c) != baseset.is_regular_criterion(c, n, k):
            return False, count, [list(p) for p in c]
    return True, count, None


@suite("combinatorial-adjacency", "regular collections recover adjacency on a base subset", "baseset")
def combinatorial_adjacency(ctx):
    _need_level(ctx)
    G = grassmannian(ctx.space, ctx.k)
    count = 0
    for F in _frame_list(ctx, ctx.space)[:10]:
        B = baseset.base_subset(G, F)
        for u, v in itertools.combinations(B.members, 2):
            count += 1
            if baseset.combinatorial_adjacent(B, u, v) != G.adjacent(u, v):
                return False, count, {"frame": list(F), "pair": [u, v]}
    return True, count, None


@suite("dual-base-subsets", "base subsets at level n-k-1 match dual base subsets at level k", "baseset")
def dual_base_subsets(ctx):
    _need_level(ctx)
    pg, k = ctx.space, ctx.k
    Gk = grassmannian(pg, k)
    Gd = grassmannian(pg, pg.n - k - 1)
    D = chow.duality(Gk)
    count = 0
    for F in _frame_list(ctx, pg)[:20]:
        count += 1
        # dual frame: the hyperplanes spanned by all but one frame point, as annihilator points
        dual_frame = [_annihilator_point(pg, pg.closure_mask(to_mask(F[:i] + F[i + 1:]))) for i in range(len(F))]
        primal = {Gd.masks[u] for u in baseset.base_subset(Gd, F).members}
        dual = {Gd.masks[D.map[u]] for u in baseset.base_subset(Gk, dual_frame).members}
        if primal != dual:
            return False, count, list(F)
    return True, count, None


def _annihilator_point(pg, hyper_mask):
    return pg.point(annihilator(pg.subspace_of_mask(hyper_mask)).basis[0])


# -- maps of Grassmann spaces


def _roundtrip_maps(ctx):
    pg, k = ctx.space, ctx.k
    rng = random.Random(ctx.seed)
    F = pg.field
    for _ in range(ctx.roundtrips):
        l = SemilinearMap(chow.random_invertible(pg.n + 1, F, rng), rng.randrange(F.m), F)
        yield l, False, chow.lift_semilinear(l, pg, pg, k)
        if pg.n == 2 * k + 1:
            yield l, True, chow.lift_semilinear(l, pg, pg, k, dual=True)


@suite("recognition-roundtrip", "lifted semilinear maps are recognized with the same point map", "chow")
def recognition_roundtrip(ctx):
    _need_level(ctx)
    count = 0
    for l, dual, f in _roundtrip_maps(ctx):
        for mode in ("chow", "base-subset"):
            count += 1
            r = chow.recognize(f, mode=mode, seed=ctx.seed)
            want = "duality-induced" if dual else "collineation-induced"
            if r.verdict != want:
                return False, count, r.diagnostic
            if not dual and r.witness.map != induced_point_map(l, ctx.space).map:
                return False, count, "witness differs"
    return True, count, None


@suite("adjacency-two-sided", "bijections preserving adjacency forward also preserve it backward", "chow")
def adjacency_two_sided(ctx):
    _need_level(ctx)
    G = grassmannian(ctx.space, ctx.k)
    rng = random.Random(ctx.seed)
    count = 0
    candidates = [f for _, _, f in _roundtrip_maps(ctx)]
    # local perturbations: swap two elements of a geometric map
    for f in list(candidates)[:5]:
        for _ in range(20):
            i, j = rng.randrange(len(G)), rng.randrange(len(G))
            m = list(f.map)
            m[i], m[j] = m[j], m[i]
            candidates.append(chow.GrassmannMap(G, G, m))
    for _ in range(20):
        candidates.append(chow.random_permutation_map(G, rng.randrange(1 << 30)))
    found = 0
    for f in candidates:
        count += 1
        rep = chow.check_adjacency_preserving(f)
        if rep.forward:
            found += 1
            if not rep.backward:
                return False, count, list(rep.backward_witness)
    return True, count, None


@suite("base-bridge", "base-subset preserving injections preserve adjacency", "chow")
def base_bridge(ctx):
    _need_level(ctx)
    count = 0
    for _, _, f in _roundtrip_maps(ctx):
        if f.injective and chow.check_base_preserving(f, frames="sample", samples=20, seed=ctx.seed).ok:
            count += 1
            if not chow.check_adjacency_preserving(f).forward:
                return False, count, list(f.map)
    return True, count, None


@suite("surjective-recognition", "surjective base-subset preserving maps lift from bijective witnesses", "chow")
def surjective_recognition(ctx):
    _need_level(ctx)
    count = 0
    for _, _, f in _roundtrip_maps(ctx):
        if not f.surjective:
            continue
        r = chow.recognize(f, mode="base-subset", seed=ctx.seed)
        count += 1
        if r.verdict not in ("collineation-induced", "duality-induced") or not classify_map(r.witness).is_collineation:
            return False, count, r.diagnostic
    return True, count, None


@suite("plucker-transport", "Plucker map is injective, sends base subsets to bases, stars and tops to planes", "chow")
def plucker_transport(ctx):
    _need_pg(ctx)
    pg, k = ctx.space, ctx.k
    if comb(pg.n + 1, k + 1) > 7:
        raise Skip("target space too large to build")
    G = grassmannian(pg, k)
    P = chow.plucker(G)
    if not P.injective:
        return False, 1, "not injective"
    count = 0
    for F in _frame_list(ctx, pg):
        count += 1
        pts = P.image_points(baseset.base_subset(G, F).members)
        if len(set(pts)) != len(pts) or not P.target.is_base(pts):
            return False, count, list(F)
    if k == 1 and pg.n == 3:
        # lines of a 3-space: each star and each top spans a plane of the Klein quadric
        for A in G.all_stars() + G.all_tops():
            count += 1
            hull = P.target.closure_mask(to_mask(P.image_points(A.members)))
            if P.target.subspace_dim(hull) != 2:
                return False, count, [A.kind, sorted(A.members)]
    return True, count, None


@suite("star-base-counting", "members through a (k-1)-subspace and the incident image members agree in number", "chow")
def star_base_counting(ctx):
    _need_level(ctx)
    pg, k, n = ctx.space, ctx.k, ctx.space.n
    if n < 2 * k + 1:
        raise Skip("needs n >= 2k+1")
    G = grassmannian(pg, k)
    maps = [f for _, _, f in itertools.islice(_roundtrip_maps(ctx), 6)]
    frames = baseset.iter_frames(pg) if pg.n <= 3 else _frame_list(ctx, pg)
    count = 0
    for F in frames:
        B = baseset.base_subset(G, F)
        for T in itertools.combinations(range(len(F)), k):
            inside = baseset.incident(B, T)
            count += 1
            if len(inside) != n - k + 1:
                return False, count, {"frame": list(F), "sub": list(T)}
            for f in maps:
                imgs = sorted(f.map[u] for u in inside)
                image_set = {f.map[u] for u in B.members}
                low, union = pg.full_mask, 0
                for v in imgs:
                    low &= G.masks[v]
                    union |= G.masks[v]
                high = pg.closure_mask(union)
                if pg.subspace_dim(low) == k - 1:
                    on = [v for v in image_set if G.masks[v] & low == low]
                    want = n - k + 1
                else:
                    on = [v for v in image_set if G.masks[v] & high == G.masks[v]]
                    want = k + 2
                if len(on) != want or sorted(on) != imgs:
                    return False, count, {"frame": list(F), "sub": list(T), "found": len(on), "want": want}
    return True, count, None


# -- gallery


def _gallery_run(ctx):
    cached = getattr(ctx, "_gallery", None)
    if cached is None:
        cached = ctx._gallery = gallery.run_all()
    return cached


@suite("gallery-claims", "every gallery item passes all its claims", "gallery")
def gallery_claims(ctx):
    items = _gallery_run(ctx)
    bad = [c.name for it in items for c in it.claims if not c.passed]
    return not bad, sum(len(it.claims) for it in items), bad or None


@suite("gallery-deterministic", "gallery JSON is byte-identical across runs", "gallery")
def gallery_deterministic(ctx):
    a = [it.to_json() for it in _gallery_run(ctx)]
    b = [it.to_json() for it in gallery.run_all()]
    diff = [i for i, (x, y) in enumerate(zip(a, b)) if x != y]
    return not diff, len(a), diff or None


GROUPS = ("linspace", "projspace", "grassmann", "baseset", "chow", "gallery")


def select(name):
    """Suite ids for a suite id, a module group, "baseset-lemmas" or "all"."""
    if name == "all":
        return [s for s, (_, g, _) in SUITES.items() if g in GROUPS]
    if name == "baseset-lemmas":
        name = "baseset"
    if name in GROUPS or name == "standalone":
        return [s for s, (_, g, _) in SUITES.items() if g == name]
    if name in SUITES:
        return [name]
    raise KeyError(name)


def run(sid, ctx):
    tag, _, fn = SUITES[sid]
    t = time.perf_counter()
    try:
        ok, count, witness = fn(ctx)
        res = SuiteResult(sid, tag, bool(ok), False, count, witness=witness)
    except Skip as e:
        res = SuiteResult(sid, tag, True, True, 0, note=str(e))
    res.seconds = time.perf_counter() - t
    return res
