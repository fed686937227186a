"""Base subsets of a Grassmann space and the exact/inexact calculus on them.

Frame positions are 0-based throughout: ``frame.points[i]`` is p_i.
A member of a base subset is identified with the (k+1)-set of frame
positions spanning it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from math import comb

from .linspace import GeometryError, SizeLimitError, bits, to_mask

RAW_SUBSET_LIMIT = 20


@dataclass(frozen=True)
class Frame:
    points: tuple

    def __len__(self):
        return len(self.points)


class BaseSubset:
    """All k-subspaces spanned by points of one frame."""

    def __init__(self, G, frame):
        self.G = G
        self.frame = frame if isinstance(frame, Frame) else Frame(tuple(frame))
        self.k = G.k
        amb = G.ambient
        pts = self.frame.points
        if len(set(pts)) != len(pts) or not amb.is_base(pts):
            raise GeometryError(f"{list(pts)} is not a base of {amb.label}")
        self.combos = tuple(itertools.combinations(range(len(pts)), self.k + 1))
        self.members = tuple(
            G.index[amb.closure_mask(to_mask(pts[c] for c in T))] for T in self.combos
        )
        self.combo_of = dict(zip(self.members, self.combos))

    @property
    def n(self):
        return len(self.frame) - 1

    @cached_property
    def mask(self):
        """Members as a bitset over G's element indices."""
        return to_mask(self.members)

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"<BaseSubset k={self.k} frame={list(self.frame.points)}>"

    def to_dict(self):
        return {"frame": list(self.frame.points), "k": self.k, "members": list(self.members)}


def base_subset(G, frame):
    return BaseSubset(G, frame)


# -- sub-families


def through(B, i):
    """Members containing p_i."""
    return frozenset(u for u, T in zip(B.members, B.combos) if i in T)


def avoiding(B, i):
    return frozenset(u for u, T in zip(B.members, B.combos) if i not in T)


def incident(B, positions):
    """Members incident to the subspace spanned by the frame points at ``positions``.

    For a subspace of dimension m >= k that means contained in it, for
    m < k containing it.
    """
    P = frozenset(positions)
    if len(P) - 1 >= B.k:
        return frozenset(u for u, T in zip(B.members, B.combos) if P.issuperset(T))
    return frozenset(u for u, T in zip(B.members, B.combos) if P.issubset(T))


def sub_family(B, selector):
    """``("+", i)``, ``("-", i)`` or a subspace (mask) spanned by frame points."""
    if isinstance(selector, tuple) and len(selector) == 2 and selector[0] in "+-":
        sign, i = selector
        return through(B, i) if sign == "+" else avoiding(B, i)
    amb = B.G.ambient
    S = to_mask(selector) if not isinstance(selector, int) else selector
    positions = [i for i, p in enumerate(B.frame.points) if S >> p & 1]
    if amb.closure_mask(to_mask(B.frame.points[i] for i in positions)) != S:
        raise GeometryError("subspace is not spanned by frame points")
    return incident(B, positions)


def family_size(n, k, m):
    """Number of base-subset members incident to an m-dimensional frame subspace."""
    return comb(m + 1, k + 1) if m >= k else comb(n - m, k - m)


# -- exactness


def s_i(B, R, i):
    """Meet of the members of R through p_i, as a point mask.

    With no such member the intersection is over an empty family; the
    whole point set is returned, which never equals a single point.
    """
    amb = B.G.ambient
    out = amb.full_mask
    for u in R:
        if i in B.combo_of[u]:
            out &= B.G.masks[u]
    return out


def is_exact(B, R):
    """S_i(R) is the single point p_i for every i."""
    return all(s_i(B, R, i) == 1 << p for i, p in enumerate(B.frame.points))


def iter_frames(ambient, limit=None):
    """Every base of ``ambient`` as an increasing point tuple."""
    n1 = ambient.dimension + 1
    full = ambient.full_mask
    N = ambient.n_points
    exchange = ambient.has_exchange
    count = 0

    def dfs(pts, cl, start):
        nonlocal count
        if len(pts) == n1:
            # built outside each previous closure, so exchange gives independence
            if cl == full and (exchange or ambient.is_independent(pts)):
                count += 1
                if limit is not None and count > limit:
                    raise SizeLimitError(f"more than {limit} frames")
                yield tuple(pts)
            return
        for p in range(start, N - (n1 - len(pts)) + 1):
            if not cl >> p & 1:
                pts.append(p)
                yield from dfs(pts, ambient.closure_add(cl, p), p + 1)
                pts.pop()

    yield from dfs([], 0, 0)


def random_frame(ambient, rng):
    """A uniformly chosen point outside the current closure, repeated to a base."""
    pts, cl = [], 0
    while cl != ambient.full_mask:
        p = rng.choice([x for x in range(ambient.n_points) if not cl >> x & 1])
        pts.append(p)
        cl = ambient.closure_add(cl, p)
    return tuple(sorted(pts))


def sample_frames(ambient, count, seed=0):
    """``count`` distinct frames drawn with a seeded RNG (fewer if the space has fewer)."""
    rng = random.Random(seed)
    seen, out = set(), []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        F = random_frame(ambient, rng)
        if F not in seen and ambient.is_base(F):
            seen.add(F)
            out.append(F)
    return out


class BaseSubsetIndex:
    """All distinct base subsets of G, with a per-element bitset over them."""

    def __init__(self, G, limit=200000):
        self.G = G
        subsets = {}
        amb = G.ambient
        bit_of = {}  # (k+1)-point tuple -> bit of its closure in G
        for F in iter_frames(amb, limit=limit):
            m = 0
            for T in itertools.combinations(F, G.k + 1):
                b = bit_of.get(T)
                if b is None:
                    b = bit_of[T] = 1 << G.index[amb.closure_mask(to_mask(T))]
                m |= b
            subsets.setdefault(m, F)
        self.masks = list(subsets)
        self.frames = list(subsets.values())
        self.position = {m: i for i, m in enumerate(self.masks)}
        elem = [0] * len(G)
        for b, m in enumerate(self.masks):
            for u in bits(m):
                elem[u] |= 1 << b
        self.element_bits = elem

    def __len__(self):
        return len(self.masks)

    def containing(self, R):
        """Bitset of base subsets containing every element of R."""
        acc = (1 << len(self.masks)) - 1
        for u in R:
            acc &= self.element_bits[u]
        return acc

    def count_containing(self, R):
        return self.containing(R).bit_count()

    def is_base_subset(self, members):
        return to_mask(members) in self.position


def index_for(G):
    """The base-subset index of G, built once and kept on G."""
    idx = G.__dict__.get("_base_index")
    if idx is None:
        idx = G.__dict__["_base_index"] = BaseSubsetIndex(G)
    return idx


def is_exact_oracle(index, R):
    """Exactly one base subset of the whole Grassmann space contains R."""
    return index.count_containing(R) == 1


def lemma_family(B, i, j):
    """Members avoiding p_i together with the members incident to the line p_i p_j."""
    return avoiding(B, i) | incident(B, (i, j))


def maximal_inexact_size(n, k):
    return comb(n, k + 1) + comb(n - 1, k - 1)


def is_maximal_inexact(B, R, exact=is_exact):
    R = frozenset(R)
    if exact(B, R):
        return False
    return all(exact(B, R | {u}) for u in B.members if u not in R)


def maximal_inexact(B, raw=None):
    """All maximal inexact subsets of B.

    The candidate family for each ordered pair (i, j) is built and checked
    for maximality directly.  With ``raw`` (default: when B has at most
    RAW_SUBSET_LIMIT members) every subset is enumerated as well and the two
    answers must agree.
    """
    found = []
    for i, j in itertools.permutations(range(len(B.frame)), 2):
        R = lemma_family(B, i, j)
        if not is_maximal_inexact(B, R):
            raise GeometryError(f"family for ({i},{j}) is not maximal inexact")
        found.append(R)
    out = sorted(set(found), key=sorted)
    if raw is None:
        raw = len(B.members) <= RAW_SUBSET_LIMIT
    if raw:
        brute = sorted(set(enumerate_maximal_inexact(B)), key=sorted)
        if brute != out:
            raise GeometryError("classification disagrees with subset enumeration")
    return out


def enumerate_maximal_inexact(B, exact=is_exact):
    """Raw search over all 2^|members| subsets."""
    members = B.members
    if len(members) > RAW_SUBSET_LIMIT:
        raise SizeLimitError(f"{len(members)} members exceeds {RAW_SUBSET_LIMIT}")
    inexact = set()
    for r in range(len(members) + 1):
        for R in itertools.combinations(members, r):
            if not exact(B, R):
                inexact.add(frozenset(R))
    return [R for R in inexact if all(R | {u} not in inexact for u in members if u not in R)]


# -- complement subsets and regular collections


def complement_subset(B, i, j):
    """Members through p_i that avoid p_j."""
    if i == j:
        raise GeometryError("complement subset needs i != j")
    return through(B, i) & avoiding(B, j)


def regular_size(n, k):
    """m = min(k, n-k-1); a regular collection has m+1 complement subsets."""
    return min(k, n - k - 1)


def _intersection(B, pairs):
    out = frozenset(B.members)
    for i, j in pairs:
        out &= complement_subset(B, i, j)
    return out


def is_regular_definition(B, pairs):
    """m+1 complement subsets (given by their (i, j) pairs) meeting in exactly one member."""
    return len(_intersection(B, pairs)) == 1


def is_regular_criterion(pairs, n, k):
    """The index test: i's and j's disjoint, plus the distinctness condition for the n vs 2k+1 case."""
    I = [i for i, _ in pairs]
    J = [j for _, j in pairs]
    if set(I) & set(J):
        return False
    distinct_i = len(set(I)) == len(I)
    distinct_j = len(set(J)) == len(J)
    if n > 2 * k + 1:
        return distinct_i
    if n == 2 * k + 1:
        return distinct_i or distinct_j
    return distinct_j


def all_pairs(B):
    return list(itertools.permutations(range(len(B.frame)), 2))


def is_regular(B, pairs):
    """Regularity of a collection of m+1 complement subsets, or of m extendable ones."""
    pairs = list(pairs)
    if any(i == j for i, j in pairs):
        raise GeometryError("complement subset needs i != j")
    m = regular_size(B.n, B.k)
    if len(pairs) == m + 1:
        return is_regular_definition(B, pairs)
    if len(pairs) == m:
        return any(is_regular_definition(B, pairs + [e]) for e in all_pairs(B) if e not in pairs)
    raise GeometryError(f"a regular collection has {m} or {m + 1} members, got {len(pairs)}")


def combinatorial_adjacent(B, u, v):
    """Some regular collection of m complement subsets contains both u and v."""
    if u == v:
        return False
    m = regular_size(B.n, B.k)
    candidates = [e for e in all_pairs(B) if {u, v} <= complement_subset(B, *e)]
    return any(is_regular(B, list(c)) for c in itertools.combinations(candidates, m))


def co_spannable(G, i, j):
    """The dimension formula dim(S v U) = dim S + dim U - dim(S ^ U)."""
    amb = G.ambient
    S, U = G.masks[i], G.masks[j]
    return amb.subspace_dim(amb.closure_mask(S | U)) == 2 * G.k - amb.subspace_dim(S & U)


def co_spannable_search(G, i, j, max_points=16):
    """Some base spans both elements with its own points (exhaustive over bases)."""
    amb = G.ambient
    S, U = G.masks[i], G.masks[j]
    for F in amb.all_bases(max_points=max_points):
        fm = to_mask(F)
        if amb.closure_mask(fm & S) == S and amb.closure_mask(fm & U) == U:
            return True
    return False
