"""Maps between Grassmann spaces: lifting, preservation checks and recognition.

Recognition reconstructs the point map behind a map of k-subspaces by
descending one level at a time: the images of all k-subspaces through a
fixed (k-1)-subspace either share a (k-1)-subspace or lie in one
(k+1)-subspace, and that common subspace is the image one level down.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

from . import baseset
from .grassmann import grassmannian
from .linalg import det, normalize
from .linspace import GeometryError, PointMap, bits, classify_map
from .projspace import ProjectiveSpace, annihilator, build_pg

VERDICTS = (
    "collineation-induced",
    "duality-induced",
    "strong-embedding-induced",
    "dual-strong-embedding-induced",
    "unrecognized",
)
DEFAULT_FRAME_SAMPLES = 200


class RecognitionError(GeometryError):
    """A hypothesis of the recognition pipeline failed; ``level`` and ``element`` locate it."""

    def __init__(self, message, level=None, element=None):
        super().__init__(message)
        self.level = level
        self.element = element


@dataclass(frozen=True)
class GrassmannMap:
    source: object
    target: object
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != len(self.source):
            raise GeometryError("map must be total on the source elements")
        if any(not 0 <= x < len(self.target) for x in self.map):
            raise GeometryError("map value out of range")

    def __call__(self, i):
        return self.map[i]

    @property
    def k(self):
        return self.source.k

    @cached_property
    def injective(self):
        return len(set(self.map)) == len(self.map)

    @cached_property
    def surjective(self):
        return len(set(self.map)) == len(self.target)

    @property
    def bijective(self):
        return self.injective and self.surjective

    def then(self, other):
        """other after self."""
        return GrassmannMap(self.source, other.target, tuple(other.map[x] for x in self.map))

    def inverse(self):
        if not self.bijective:
            raise GeometryError("only bijections have inverses")
        inv = [0] * len(self.map)
        for i, x in enumerate(self.map):
            inv[x] = i
        return GrassmannMap(self.target, self.source, tuple(inv))

    def __eq__(self, other):
        return (
            isinstance(other, GrassmannMap)
            and self.source is other.source
            and self.target is other.target
            and self.map == other.map
        )

    def __hash__(self):
        return hash(self.map)


# -- lifting point maps


def lift(g, k):
    """G_k(g): each k-subspace goes to the closure of its image.

    Raises when some image closure is not k-dimensional.
    """
    src, tgt = grassmannian(g.source, k), grassmannian(g.target, k)
    amb = g.target
    out = []
    for i, S in enumerate(src.masks):
        img = amb.closure_mask(g.image_mask(S))
        if amb.subspace_dim(img) != k or img not in tgt.index:
            raise GeometryError(f"image of element {i} is not {k}-dimensional")
        out.append(tgt.index[img])
    return GrassmannMap(src, tgt, tuple(out))


def lift_embedding(g, k):
    """G_k(g) for a strong embedding g."""
    if not classify_map(g).is_strong_embedding:
        raise GeometryError("lift_embedding needs a strong embedding")
    if g.source.dimension != g.target.dimension:
        raise GeometryError("source and target dimensions differ")
    return lift(g, k)


def duality(G):
    """S -> annihilator(S): G_k(PG(n,q)) onto G_{n-k-1}(PG(n,q)) in dual coordinates."""
    pg = G.ambient
    if not isinstance(pg, ProjectiveSpace):
        raise GeometryError("duality needs a projective space")
    cache = pg.__dict__.setdefault("_duality_cache", {})
    F = cache.get(G.k)
    if F is None:
        D = grassmannian(pg, pg.n - G.k - 1)
        F = GrassmannMap(G, D, tuple(D.index[pg.mask_of(annihilator(S))] for S in G.forms))
        cache[G.k] = F
    return F


def lift_semilinear(l, source, target, k, dual=False):
    """G_k of the point map of a semilinear map; with ``dual`` followed by the annihilator."""
    from .projspace import induced_point_map

    F = lift(induced_point_map(l, source, target), k)
    return F.then(duality(F.target)) if dual else F


def contragredient(g):
    """G_{n-1}(g): the induced map on hyperplanes, i.e. on points of the dual spaces."""
    if not (isinstance(g.source, ProjectiveSpace) and isinstance(g.target, ProjectiveSpace)):
        raise GeometryError("contragredient needs projective spaces")
    return lift(g, g.source.n - 1)


def hyperplane_map_as_points(F):
    """Read a map of hyperplanes as a point map between the dual coordinate spaces."""
    src_pg, tgt_pg = F.source.ambient, F.target.ambient
    to_src = duality(grassmannian(src_pg, 0))  # point -> hyperplane
    back = duality(F.target)  # hyperplane -> point
    return PointMap(src_pg, tgt_pg, tuple(back.map[F.map[to_src.map[p]]] for p in range(src_pg.n_points)))


def contragredient_point_map(g):
    return hyperplane_map_as_points(contragredient(g))


# -- preservation checks


@dataclass
class AdjacencyReport:
    forward: bool
    backward: bool
    forward_witness: tuple = None
    backward_witness: tuple = None

    def to_dict(self):
        return {
            "forward": self.forward,
            "backward": self.backward,
            "forward_witness": list(self.forward_witness) if self.forward_witness else None,
            "backward_witness": list(self.backward_witness) if self.backward_witness else None,
        }


def check_adjacency_preserving(f):
    """forward: adjacent pairs stay adjacent; backward: adjacent images come from adjacent pairs."""
    S, T = f.source, f.target
    sadj, tadj = S.adjacency, T.adjacency
    fw = bw = None
    for i in range(len(S)):
        fi = f.map[i]
        for j in range(i + 1, len(S)):
            fj = f.map[j]
            a = sadj[i] >> j & 1
            b = fi != fj and tadj[fi] >> fj & 1
            if a and not b and fw is None:
                fw = (i, j)
            if b and not a and bw is None:
                bw = (i, j)
            if fw and bw:
                break
    return AdjacencyReport(fw is None, bw is None, fw, bw)


def reconstruct_frame(G, members):
    """The frame whose base subset is exactly ``members``, or None."""
    amb = G.ambient
    members = list(set(members))
    n = amb.dimension
    k = G.k
    if len(members) != comb(n + 1, k + 1):
        return None
    masks = [G.masks[u] for u in members]
    union = 0
    for m in masks:
        union |= m
    want = comb(n, k)
    cand = []
    for p in bits(union):
        through = [m for m in masks if m >> p & 1]
        if len(through) != want:
            continue
        meet = amb.full_mask
        for m in through:
            meet &= m
        if meet == 1 << p:
            cand.append(p)
    if len(cand) != n + 1 or not amb.is_base(cand):
        return None
    if frozenset(baseset.base_subset(G, cand).members) != frozenset(members):
        return None
    return tuple(cand)


def frames_for(ambient, frames="sample", samples=DEFAULT_FRAME_SAMPLES, seed=0):
    """Frames to test: "all", "sample" (seeded sample plus one-point swaps of a first frame), or a list."""
    if frames == "all":
        return list(baseset.iter_frames(ambient)), False
    if frames == "sample":
        first = next(baseset.iter_frames(ambient))
        chosen = {first}
        for i in range(len(first)):
            for q in range(ambient.n_points):
                F = tuple(sorted(first[:i] + (q,) + first[i + 1:]))
                if q not in first and ambient.is_base(F):
                    chosen.add(F)
        chosen.update(baseset.sample_frames(ambient, samples, seed))
        return sorted(chosen), True
    return [tuple(F) for F in frames], True


@dataclass
class BaseReport:
    ok: bool
    tested: int
    sampled: bool
    witness: tuple = None  # a source frame whose image fails

    def to_dict(self):
        return {
            "ok": self.ok,
            "frames_tested": self.tested,
            "sampled": self.sampled,
            "witness_frame": list(self.witness) if self.witness else None,
        }


def check_base_preserving(f, frames="sample", samples=DEFAULT_FRAME_SAMPLES, seed=0, into=False, index=None):
    """Every tested source base subset maps onto (or, with ``into``, into) a target base subset.

    Onto is decided by reconstructing the target frame from the image;
    into needs the full base-subset index of the target (built if absent).
    """
    if f.source.k != f.target.k:
        raise GeometryError("source and target levels differ")
    flist, sampled = frames_for(f.source.ambient, frames, samples, seed)
    if into and index is None:
        index = baseset.index_for(f.target)
    for F in flist:
        B = baseset.base_subset(f.source, F)
        image = [f.map[u] for u in B.members]
        if into:
            good = index.count_containing(image) > 0
        else:
            good = reconstruct_frame(f.target, image) is not None
        if not good:
            return BaseReport(False, len(flist), sampled, F)
    return BaseReport(True, len(flist), sampled)


# -- clique action and descent


def classify_clique_action(f):
    """"A" when stars go to stars, "B" when stars go to tops; checked on every star."""
    S, T = f.source, f.target
    k, n = S.k, S.n
    if not 0 < k < n - 1:
        raise RecognitionError("clique action needs 0 < k < n-1", level=k)
    kinds = set()
    for st in S.all_stars():
        hit = T.identify_clique(f.map[i] for i in st.members)
        if hit is None:
            raise RecognitionError("image of a star is neither a star nor a top", level=k, element=st.center)
        kinds.add(hit.kind)
    if len(kinds) != 1:
        raise RecognitionError("stars go to both stars and tops", level=k)
    kind = "A" if kinds == {"star"} else "B"
    if kind == "B" and n != 2 * k + 1:
        raise RecognitionError("stars go to tops, which needs n = 2k+1", level=k)
    return kind


def induce_lower(f):
    """The map one level down, and whether it lands on (k-1)- or (k+1)-subspaces.

    For each (k-1)-subspace U the images of the k-subspaces through U are
    collected; two of them fix the candidate meet and span, and then every
    image is checked against the candidate.  Returns ``(map, "star"|"top")``.
    """
    S, T = f.source, f.target
    k, n = S.k, S.n
    if k == 0:
        raise RecognitionError("nothing below level 0", level=0)
    if n < 2 * k + 1:
        raise RecognitionError("descent needs n >= 2k+1", level=k)
    amb = T.ambient
    lower = S.lower
    star_ok, top_ok = [], []
    for c, U in enumerate(lower.masks):
        members = [i for i, m in enumerate(S.masks) if m & U == U]
        images = [T.masks[f.map[i]] for i in members]
        a, b = images[0], images[1]
        meet = a & b
        span = amb.closure_mask(a | b)
        star_ok.append(meet if amb.subspace_dim(meet) == k - 1 and all(m & meet == meet for m in images) else None)
        top_ok.append(span if amb.subspace_dim(span) == k + 1 and all(m & span == m for m in images) else None)
    if all(x is not None for x in star_ok):
        kind, cands = "star", star_ok
    elif all(x is not None for x in top_ok):
        kind, cands = "top", top_ok
    else:
        bad = [c for c in range(len(lower)) if star_ok[c] is None and top_ok[c] is None]
        raise RecognitionError(
            "images of stars share neither a common (k-1)- nor (k+1)-subspace consistently",
            level=k - 1,
            element=bad[0] if bad else None,
        )
    if kind == "top" and n != 2 * k + 1:
        raise RecognitionError("descent lands on (k+1)-subspaces, which needs n = 2k+1", level=k)
    target = T.lower if kind == "star" else T.upper
    if target is None:
        raise RecognitionError("target has no level for the descent", level=k)
    return GrassmannMap(lower, target, tuple(target.index[m] for m in cands)), kind


def points_of_level0(F):
    """A level-0 Grassmann map as a point map."""
    src, tgt = F.source, F.target
    images = [F.map[src.index[1 << p]] for p in range(src.ambient.n_points)]
    return PointMap(src.ambient, tgt.ambient, tuple(tgt.masks[x].bit_length() - 1 for x in images))


# -- recognition


@dataclass
class RecognitionResult:
    verdict: str
    witness: object = None  # PointMap
    checks: dict = field(default_factory=dict)
    diagnostic: str = ""
    dual: bool = False

    @property
    def recognized(self):
        return self.verdict != "unrecognized"

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "dual": self.dual,
            "witness": list(self.witness.map) if self.witness is not None else None,
            "checks": self.checks,
            "diagnostic": self.diagnostic,
        }


def _descend(f):
    """Run the descent to level 0; returns (point map, dual flag)."""
    low, kind = induce_lower(f)
    dual = kind == "top"
    if dual:
        # read the target through the annihilator and start over
        f = f.then(duality(f.target))
        low, kind = induce_lower(f)
        if kind != "star":
            raise RecognitionError("descent after dualizing still lands on (k+1)-subspaces", level=f.k)
    while low.k > 0:
        # below the top level n > 2k+1, so only the star case can pass
        low, kind = induce_lower(low)
    return points_of_level0(low), dual


def _dual_transport(f):
    """f read between the dual spaces: T -> ann(f(ann(T))), at level n-k-1."""
    return duality(grassmannian(f.source.ambient, f.source.n - f.k - 1)).then(f).then(duality(f.target))


def _result_for(g, dual, mode):
    cls = classify_map(g)
    if cls.is_collineation:
        verdict = "duality-induced" if dual else "collineation-induced"
    elif cls.is_strong_embedding:
        verdict = "dual-strong-embedding-induced" if dual else "strong-embedding-induced"
    else:
        return None, cls
    return verdict, cls


def recognize(f, mode="chow", frames="sample", seed=0):
    """Decide whether f is induced by a collineation, duality or strong embedding.

    ``mode="chow"`` expects an adjacency preserving bijection, ``mode="base-subset"``
    a base-subset preserving map.  The returned witness, lifted back to level k
    (through the annihilator when ``dual``), reproduces f exactly.
    """
    checks = {}
    S, T = f.source, f.target
    k = S.k
    if mode not in ("chow", "base-subset", "baseset"):
        raise ValueError(f"unknown mode {mode!r}")
    mode = "base-subset" if mode == "baseset" else mode

    def fail(msg):
        return RecognitionResult("unrecognized", None, checks, msg)

    if not (isinstance(S.ambient, ProjectiveSpace) and isinstance(T.ambient, ProjectiveSpace)):
        return fail("both spaces must be projective")
    if S.k != T.k:
        return fail("source and target levels differ")
    n = S.n
    if S.n != T.n:
        checks["same_dimension"] = False
        return fail(f"dimensions differ: {S.n} vs {T.n}")
    checks["same_dimension"] = True
    if not 0 < k < n - 1:
        return fail(f"level {k} is excluded; recognition needs 0 < k < n-1")

    checks["injective"] = f.injective
    checks["surjective"] = f.surjective
    adj = check_adjacency_preserving(f)
    checks["adjacency_forward"] = adj.forward
    checks["adjacency_backward"] = adj.backward
    if mode == "chow":
        if not f.bijective:
            return fail("chow mode needs a bijection")
        if not (adj.forward and adj.backward):
            return fail("not adjacency preserving in both directions")
    else:
        rep = check_base_preserving(f, frames=frames, seed=seed)
        checks["base_preserving"] = rep.ok
        checks["frames_tested"] = rep.tested
        checks["frames_sampled"] = rep.sampled
        if not rep.ok:
            return fail(f"base subset of frame {list(rep.witness)} is not sent to a base subset")
        if not f.injective:
            return fail("base-subset preserving map is not injective")
        if not adj.forward:
            return fail("base-subset preserving injection is not adjacency preserving")

    try:
        if n < 2 * k + 1:
            checks["dual_transport"] = True
            inner = recognize(_dual_transport(f), mode=mode, frames=frames, seed=seed)
            if not inner.recognized:
                return fail("after dual transport: " + inner.diagnostic)
            g = contragredient_point_map(inner.witness)
            dual = False
        else:
            if mode == "chow":
                checks["clique_action"] = classify_clique_action(f)
            g, dual = _descend(f)
    except RecognitionError as e:
        where = f" (level {e.level}, element {e.element})" if e.level is not None else ""
        return fail(str(e) + where)

    verdict, cls = _result_for(g, dual, mode)
    checks["witness_class"] = cls.kind
    if verdict is None:
        return RecognitionResult("unrecognized", g, checks, f"level-0 map is {cls.kind}, not a strong embedding", dual)
    try:
        back = lift(g, k)
    except GeometryError as e:
        return RecognitionResult("unrecognized", g, checks, f"witness does not lift: {e}", dual)
    if dual:
        back = back.then(duality(back.target))
    checks["reconstruction_exact"] = back.map == f.map
    if back.map != f.map:
        return RecognitionResult("unrecognized", g, checks, "lift of the witness differs from the input", dual)
    if mode == "base-subset" and f.bijective and n > 2 * k + 1:
        inv_ok = check_base_preserving(f.inverse(), frames=frames, seed=seed).ok
        checks["inverse_base_preserving"] = inv_ok
        if inv_ok:
            checks["two_sided_gives_collineation"] = cls.is_collineation
            if not cls.is_collineation:
                return RecognitionResult(
                    "unrecognized", g, checks, "map and inverse preserve base subsets but witness is no collineation", dual
                )
    return RecognitionResult(verdict, g, checks, "", dual)


# -- bijectivity forces collineations


def bijective_implies_collineation(g, k):
    """If G_k(g) is bijective for a strong embedding g of projective spaces, g is a collineation.

    Bijectivity is pushed down level by level, as the lifts of g at each
    level below k must be bijections too.
    """
    if not isinstance(g.source, ProjectiveSpace) or not isinstance(g.target, ProjectiveSpace):
        raise GeometryError("the source and target must be projective spaces")
    levels = {}
    for j in range(k, -1, -1):
        F = lift(g, j)
        levels[j] = F.bijective
        if not F.bijective:
            return {"lift_bijective": levels, "collineation": False}
    cls = classify_map(g)
    return {"lift_bijective": levels, "collineation": cls.is_collineation}


# -- the Grassmann (Plucker) injection


def plucker_coordinates(S):
    """All (k+1)-minors of the RREF basis, columns in lexicographic subset order, normalized."""
    F = S.field
    rows = S.basis
    r = len(rows)
    out = []
    for cols in itertools.combinations(range(S.n + 1), r):
        out.append(det([[row[c] for c in cols] for row in rows], F))
    return normalize(tuple(out), F)


@dataclass
class PluckerMap:
    source: object  # GrassmannSpace
    target: object  # ProjectiveSpace
    map: tuple

    @property
    def injective(self):
        return len(set(self.map)) == len(self.map)

    def image_points(self, members):
        return [self.map[u] for u in members]


def plucker(G):
    """Grassmann injection of G_k(PG(n,q)) into PG(C(n+1,k+1)-1, q)."""
    pg = G.ambient
    if not isinstance(pg, ProjectiveSpace):
        raise GeometryError("the Grassmann injection needs a projective space")
    N = comb(pg.n + 1, G.k + 1) - 1
    target = build_pg(N, pg.field)
    return PluckerMap(G, target, tuple(target.point(plucker_coordinates(S)) for S in G.forms))


def random_invertible(n1, field_spec, rng):
    """Uniform random invertible n1 x n1 matrix (rejection sampling)."""
    from .linalg import is_invertible

    while True:
        M = tuple(tuple(rng.randrange(field_spec.q) for _ in range(n1)) for _ in range(n1))
        if is_invertible(M, field_spec):
            return M


def random_permutation_map(G, seed=0):
    rng = random.Random(seed)
    perm = list(range(len(G)))
    rng.shuffle(perm)
    return GrassmannMap(G, G, tuple(perm))


def find_inducing_maps(f, limit=100000):
    """Every point map g with G_k(g) = f.

    g(x) must lie in the image of every k-subspace through x, so the
    candidates for x are the meet of those images; the product of the
    candidate sets is then searched and each survivor is lifted and compared.
    Returns ``(maps, candidates)`` with the candidate masks per point.
    """
    S, T = f.source, f.target
    src, tgt = S.ambient, T.ambient
    cands = []
    for x in range(src.n_points):
        c = tgt.full_mask
        for i, m in enumerate(S.masks):
            if m >> x & 1:
                c &= T.masks[f.map[i]]
        cands.append(c)
    found = []
    tried = 0

    def extend(prefix, used):
        nonlocal tried
        x = len(prefix)
        if x == src.n_points:
            tried += 1
            if tried > limit:
                raise GeometryError(f"more than {limit} candidate point maps")
            g = PointMap(src, tgt, tuple(prefix))
            try:
                if lift(g, S.k).map == f.map:
                    found.append(g)
            except GeometryError:
                pass
            return
        for y in bits(cands[x] & ~used):
            prefix.append(y)
            extend(prefix, used | 1 << y)
            prefix.pop()

    if all(cands):
        extend([], 0)
    return found, cands
