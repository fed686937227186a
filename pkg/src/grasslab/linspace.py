"""Finite linear spaces given by their lines.

Points are the integers ``0..n_points-1``.  Point sets are passed around
internally as int bitmasks (bit ``p`` set iff point ``p`` is in the set);
the public methods accept any iterable of points and return frozensets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

DEFAULT_MAX_POINTS = 16


class GeometryError(ValueError):
    pass


class DependentSetError(GeometryError):
    """A set that had to be independent is not."""


class SizeLimitError(GeometryError):
    """An exhaustive enumeration would exceed its configured bound."""


def bits(mask):
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(points):
    if isinstance(points, int):
        return points
    m = 0
    for p in points:
        m |= 1 << p
    return m


def from_mask(mask):
    return frozenset(bits(mask))


@dataclass(frozen=True)
class Violation:
    kind: str  # "bad-point" | "short-line" | "improper-line" | "uncovered-pair" | "multiply-covered-pair"
    points: tuple = ()
    lines: tuple = ()

    def __str__(self):
        return f"{self.kind}: points={list(self.points)} lines={list(self.lines)}"


class LinearSpace:
    """A point/line incidence structure; call :meth:`validate` to check the axioms."""

    def __init__(self, n_points, lines, label="", embedding=None):
        self.n_points = int(n_points)
        self.lines = tuple(tuple(sorted(set(L))) for L in lines)
        self.label = label
        # ambient point indices when this space was cut out of a larger one
        self.embedding = tuple(embedding) if embedding is not None else None
        self.full_mask = (1 << self.n_points) - 1
        self.line_masks = tuple(to_mask(L) for L in self.lines)
        self._dim_cache = {}

    def __repr__(self):
        return f"<LinearSpace {self.label!r}: {self.n_points} points, {len(self.lines)} lines>"

    # -- incidence tables

    @cached_property
    def _line_of(self):
        N = self.n_points
        table = [[-1] * N for _ in range(N)]
        for idx, L in enumerate(self.lines):
            for a in L:
                row = table[a]
                for b in L:
                    if a != b and row[b] < 0:
                        row[b] = idx
        return table

    @cached_property
    def _lines_through(self):
        out = [[] for _ in range(self.n_points)]
        for m in self.line_masks:
            for p in bits(m):
                out[p].append(m)
        return out

    def line_index(self, p, q):
        """Index of the line through distinct points p, q (or -1)."""
        return self._line_of[p][q]

    def line_mask(self, p, q):
        i = self._line_of[p][q]
        if i < 0:
            raise GeometryError(f"no line through {p} and {q}")
        return self.line_masks[i]

    def collinear(self, points):
        pts = sorted(set(points))
        if len(pts) <= 2:
            return True
        L = self.line_mask(pts[0], pts[1])
        return all(L >> p & 1 for p in pts[2:])

    # -- axioms

    def validate(self):
        """List of axiom violations; empty when every axiom holds."""
        out = []
        for idx, L in enumerate(self.lines):
            if any(not 0 <= p < self.n_points for p in L):
                out.append(Violation("bad-point", L, (idx,)))
            if len(L) < 2:
                out.append(Violation("short-line", L, (idx,)))
            if len(L) >= self.n_points:
                out.append(Violation("improper-line", L, (idx,)))
        cover = {}
        for idx, L in enumerate(self.lines):
            for pair in itertools.combinations(L, 2):
                cover.setdefault(pair, []).append(idx)
        for pair in itertools.combinations(range(self.n_points), 2):
            c = cover.get(pair, [])
            if len(c) == 0:
                out.append(Violation("uncovered-pair", pair))
            elif len(c) > 1:
                out.append(Violation("multiply-covered-pair", pair, tuple(c)))
        return out

    def is_valid(self):
        return not self.validate()

    # -- closure

    def hull_step(self, points):
        """One step of the hull: the union of all lines joining two points of the set."""
        mask = to_mask(points)
        if mask & (mask - 1) == 0:
            return mask if isinstance(points, int) else from_mask(mask)
        res = mask
        pts = list(bits(mask))
        for i, a in enumerate(pts):
            for b in pts[i + 1 :]:
                res |= self.line_mask(a, b)
        return res if isinstance(points, int) else from_mask(res)

    def closure_mask(self, mask):
        """Smallest subspace containing ``mask``.

        Worklist form of iterating the one-step hull: every point added to
        the result is processed once, absorbing each line through it that
        already meets the result in a second point.
        """
        if mask & (mask - 1) == 0:
            return mask
        res = mask
        queue = list(bits(mask))
        through = self._lines_through
        while queue:
            x = queue.pop()
            bx = 1 << x
            for L in through[x]:
                if L & ~res and L & res & ~bx:
                    new = L & ~res
                    res |= L
                    queue.extend(bits(new))
        return res

    def closure_add(self, closed, p):
        """Closure of a subspace ``closed`` with one more point.

        Lines with two points in ``closed`` already lie in it, so only the
        new points need processing.
        """
        if closed >> p & 1:
            return closed
        res = closed | 1 << p
        queue = [p]
        through = self._lines_through
        while queue:
            x = queue.pop()
            bx = 1 << x
            for L in through[x]:
                if L & ~res and L & res & ~bx:
                    new = L & ~res
                    res |= L
                    queue.extend(bits(new))
        return res

    def closure(self, points):
        return from_mask(self.closure_mask(to_mask(points)))

    def in_closure(self, p, mask):
        return bool(self.closure_mask(mask) >> p & 1)

    def is_subspace(self, points):
        mask = to_mask(points)
        return self.closure_mask(mask) == mask

    def is_independent(self, points):
        mask = to_mask(points)
        for p in bits(mask):
            if self.closure_mask(mask & ~(1 << p)) >> p & 1:
                return False
        return True

    def spans(self, points):
        return self.closure_mask(to_mask(points)) == self.full_mask

    def is_base(self, points):
        mask = to_mask(points)
        return self.spans(mask) and self.is_independent(mask)

    # -- subspace lattice and exchange

    def subspaces(self):
        """Every subspace (as a mask), found by closing up one point at a time."""
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for S in frontier:
                for p in range(self.n_points):
                    if not S >> p & 1:
                        T = self.closure_mask(S | 1 << p)
                        if T not in seen:
                            seen.add(T)
                            nxt.append(T)
            frontier = nxt
        return sorted(seen, key=lambda m: (m.bit_count(), m))

    def check_exchange(self):
        """Exhaustive exchange test over all subspaces X.

        Returns ``(True, None)`` or ``(False, (X, p1, p2))`` for the first
        counterexample: p2 in cl(X+p1), p1 not in cl(X+p2), p1, p2 outside X.
        Only subspaces are tried since the condition depends on X through cl(X).
        """
        for X in self.subspaces():
            for p1 in range(self.n_points):
                if X >> p1 & 1:
                    continue
                C1 = self.closure_mask(X | 1 << p1)
                for p2 in bits(C1 & ~X & ~(1 << p1)):
                    if not self.closure_mask(X | 1 << p2) >> p1 & 1:
                        return False, (from_mask(X), p1, p2)
        return True, None

    @cached_property
    def has_exchange(self):
        return self.check_exchange()[0]

    # -- dimension and bases

    def _greedy_base(self, within):
        base, cl = [], 0
        for p in bits(within):
            if not cl >> p & 1:
                base.append(p)
                cl = self.closure_mask(cl | 1 << p)
                if cl == within:
                    break
        return base

    def base_within(self, mask, start=()):
        """Greedy base of the subspace ``mask`` extending the independent points ``start``."""
        base = list(start)
        cl = self.closure_mask(to_mask(base))
        for p in bits(mask):
            if cl == mask:
                break
            if not cl >> p & 1:
                base.append(p)
                cl = self.closure_mask(cl | 1 << p)
        return base

    def _min_spanning(self, within):
        pts = list(bits(within))
        for r in range(len(pts) + 1):
            for combo in itertools.combinations(pts, r):
                if self.closure_mask(to_mask(combo)) == within:
                    return list(combo)
        raise GeometryError("mask is not a subspace")

    def subspace_dim(self, mask):
        """Dimension of a subspace given as a mask (-1 for the empty set)."""
        mask = to_mask(mask)
        d = self._dim_cache.get(mask)
        if d is None:
            if mask == 0:
                d = -1
            elif self.has_exchange:
                d = len(self._greedy_base(mask)) - 1
            else:
                d = len(self._min_spanning(mask)) - 1
            self._dim_cache[mask] = d
        return d

    @cached_property
    def dimension(self):
        return self.subspace_dim(self.full_mask)

    def extend_to_base(self, points):
        """A base containing the independent set ``points``.

        Exchange-step construction: start from a reference base and swap in
        the given points one at a time, each time replacing a reference point
        whose removal leaves a hull missing the incoming point.
        """
        X = sorted(set(points))
        if not self.is_independent(X):
            raise DependentSetError(f"{X} is not independent")
        current = self._greedy_base(self.full_mask)
        for t, q in enumerate(X):
            if q in current[:t]:
                continue
            for j in range(t, len(current)):
                rest = to_mask(current[:j] + current[j + 1 :])
                if not self.closure_mask(rest) >> q & 1:
                    current[j] = q
                    current[t], current[j] = current[j], current[t]
                    break
            else:
                raise DependentSetError(f"{X} could not be extended; is the exchange axiom satisfied?")
        result = frozenset(current)
        if not self.is_base(result):
            raise GeometryError("exchange step produced a non-base; exchange axiom fails here")
        return result

    def independent_sets(self, max_size=None):
        """All independent sets (as sorted tuples) of size <= max_size."""
        N = self.n_points
        max_size = N if max_size is None else max_size
        out = [()]

        def grow(prefix, mask, start):
            if len(prefix) == max_size:
                return
            for p in range(start, N):
                m = mask | 1 << p
                if self.is_independent(m):
                    t = prefix + (p,)
                    out.append(t)
                    grow(t, m, p + 1)

        grow((), 0, 0)
        return out

    def all_bases(self, max_points=DEFAULT_MAX_POINTS):
        """Every base of the space; only for spaces with at most ``max_points`` points."""
        if self.n_points > max_points:
            raise SizeLimitError(f"{self.n_points} points exceeds the bound {max_points}")
        if self.has_exchange:
            r = self.dimension + 1
            return {
                frozenset(c)
                for c in itertools.combinations(range(self.n_points), r)
                if self.is_base(to_mask(c))
            }
        return {frozenset(s) for s in self.independent_sets() if s and self.spans(s)}

    def restrict(self, points, label=None):
        """The induced space on a point subset: traces of lines with >= 2 points."""
        X = sorted(set(points))
        if len(X) < 3 or self.collinear(X):
            raise GeometryError("restriction needs three non-collinear points")
        pos = {p: i for i, p in enumerate(X)}
        xm = to_mask(X)
        lines = []
        for L in self.line_masks:
            tr = L & xm
            if tr.bit_count() >= 2:
                lines.append([pos[p] for p in bits(tr)])
        emb = X if self.embedding is None else [self.embedding[p] for p in X]
        return LinearSpace(len(X), lines, label=label or f"{self.label}|{len(X)}", embedding=emb)


def complete_space(n_points, label=None):
    """All 2-subsets as lines: every subset is a subspace."""
    if n_points < 3:
        raise GeometryError("need at least 3 points")
    return LinearSpace(n_points, itertools.combinations(range(n_points), 2), label=label or f"K{n_points}")


# -- maps between linear spaces


@dataclass(frozen=True)
class PointMap:
    source: LinearSpace
    target: LinearSpace
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.n_points:
            raise GeometryError("point map must be total on the source")
        if any(not 0 <= x < self.target.n_points for x in self.map):
            raise GeometryError("point map leaves the target")

    def __call__(self, p):
        return self.map[p]

    def image_mask(self, mask):
        out = 0
        for p in bits(mask):
            out |= 1 << self.map[p]
        return out

    @property
    def injective(self):
        return len(set(self.map)) == len(self.map)

    @property
    def surjective(self):
        return len(set(self.map)) == self.target.n_points

    def compose(self, other):
        """self after other."""
        return PointMap(other.source, self.target, tuple(self.map[x] for x in other.map))

    def inverse(self):
        if not (self.injective and self.surjective):
            raise GeometryError("map is not bijective")
        inv = [0] * len(self.map)
        for a, b in enumerate(self.map):
            inv[b] = a
        return PointMap(self.target, self.source, tuple(inv))


KINDS = (
    "not-collinearity-preserving",
    "collinearity-preserving",
    "semicollineation",
    "embedding",
    "strong-embedding",
    "collineation",
)


@dataclass(frozen=True)
class MorphismClass:
    kind: str
    injective: bool
    surjective: bool
    collinearity_preserving: bool
    non_collinearity_preserving: bool
    independence_preserving: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def is_semicollineation(self):
        return self.injective and self.surjective and self.collinearity_preserving

    @property
    def is_collineation(self):
        return self.kind == "collineation"

    @property
    def is_embedding(self):
        return self.injective and self.collinearity_preserving and self.non_collinearity_preserving

    @property
    def is_strong_embedding(self):
        return self.is_embedding and self.independence_preserving


def _collinearity_witness(f):
    S, T = f.source, f.target
    for idx, L in enumerate(S.lines):
        imgs = sorted({f.map[p] for p in L})
        if len(imgs) >= 2:
            M = T.line_mask(imgs[0], imgs[1])
            if any(not M >> x & 1 for x in imgs[2:]):
                return idx
    return None


def _non_collinearity_witness(f):
    S, T = f.source, f.target
    N = S.n_points
    m = f.map
    for a in range(N):
        for b in range(a + 1, N):
            Lab = S.line_mask(a, b)
            fa, fb = m[a], m[b]
            Lf = T.line_mask(fa, fb) if fa != fb else None
            for c in range(b + 1, N):
                if Lab >> c & 1:
                    continue
                fc = m[c]
                if Lf is None or fc in (fa, fb) or Lf >> fc & 1:
                    return (a, b, c)
    return None


def _independence_witness(f, max_size):
    S, T = f.source, f.target
    N = S.n_points

    def grow(prefix, mask, start):
        if len(prefix) == max_size:
            return None
        for p in range(start, N):
            m = mask | 1 << p
            if S.is_independent(m):
                if not T.is_independent(f.image_mask(m)):
                    return prefix + (p,)
                w = grow(prefix + (p,), m, p + 1)
                if w is not None:
                    return w
        return None

    return grow((), 0, 0)


def classify_map(f):
    """Exhaustively compute the morphism flags of a point map and its class.

    Independence preservation is only meaningful for injective maps and is
    reported False otherwise.  A bijection preserving collinearity in both
    directions is a collineation and carries independent sets to independent
    sets, so the exhaustive independence search is skipped in that case.
    """
    inj, surj = f.injective, f.surjective
    w_col = _collinearity_witness(f)
    col = w_col is None
    w_non = _non_collinearity_witness(f) if inj else None
    non = inj and w_non is None
    witnesses = {}
    if w_col is not None:
        witnesses["collinearity"] = w_col
    if w_non is not None:
        witnesses["non_collinearity"] = w_non
    if inj and surj and col and non:
        indep = True
    elif inj:
        w_ind = _independence_witness(f, f.source.dimension + 1)
        indep = w_ind is None
        if w_ind is not None:
            witnesses["independence"] = w_ind
    else:
        indep = False
    if not col:
        kind = "not-collinearity-preserving"
    elif inj and non:
        kind = "collineation" if surj else ("strong-embedding" if indep else "embedding")
    elif inj and surj:
        kind = "semicollineation"
    else:
        kind = "collinearity-preserving"
    return MorphismClass(kind, inj, surj, col, non, indep, witnesses)


def identity_map(space, target=None):
    return PointMap(space, target if target is not None else space, tuple(range(space.n_points)))


def maps_bases_to_bases(f, bases=None, target_bases=None):
    """True when every base of the source goes to a base of the target."""
    bases = f.source.all_bases() if bases is None else bases
    for B in bases:
        img = f.image_mask(to_mask(B))
        if img.bit_count() != len(B):
            return False
        if target_bases is not None:
            if from_mask(img) not in target_bases:
                return False
        elif not f.target.is_base(img):
            return False
    return True


def search_base_to_base_maps(source, target, limit=200000):
    """Search harness for maps sending every base to a base that are not strong embeddings.

    Enumerates all injections source -> target (capped at ``limit``) and
    returns ``(examined, counterexamples)``.
    """
    bases = source.all_bases()
    tbases = target.all_bases()
    found = []
    examined = 0
    for perm in itertools.permutations(range(target.n_points), source.n_points):
        examined += 1
        if examined > limit:
            raise SizeLimitError(f"more than {limit} candidate maps")
        f = PointMap(source, target, perm)
        if maps_bases_to_bases(f, bases, tbases) and not classify_map(f).is_strong_embedding:
            found.append(perm)
    return examined, found


def _propagation_order(space):
    """Points ordered so that, where possible, each lies on a line through two earlier ones."""
    order, placed = [], 0
    remaining = set(range(space.n_points))
    while remaining:
        forced = [p for p in sorted(remaining) if space.closure_mask(placed) >> p & 1]
        p = forced[0] if forced else min(remaining)
        order.append(p)
        placed |= 1 << p
        remaining.discard(p)
    return order


def automorphisms(space, limit=None):
    """Every collineation of ``space`` onto itself, by backtracking on point images.

    Uses only the incidence structure: a partial assignment is kept only
    while every pair of assigned points has its line sent to a line of the
    same size, consistently and injectively.  A point on the line of two
    assigned points can only go to the line of their images.
    """
    N = space.n_points
    line_of = space._line_of
    sizes = [len(L) for L in space.lines]
    order = _propagation_order(space)
    img = [-1] * N
    line_img = {}
    line_used = set()
    out = []

    def assign(x, y, assigned):
        added = []
        for a in assigned:
            ls, lt = line_of[x][a], line_of[y][img[a]]
            if sizes[ls] != sizes[lt]:
                return None
            have = line_img.get(ls)
            if have is None:
                if lt in line_used:
                    for L in added:
                        line_used.discard(line_img.pop(L))
                    return None
                line_img[ls] = lt
                line_used.add(lt)
                added.append(ls)
            elif have != lt:
                for L in added:
                    line_used.discard(line_img.pop(L))
                return None
        return added

    def search(pos, assigned, used):
        if limit is not None and len(out) >= limit:
            return
        if pos == N:
            out.append(tuple(img))
            return
        x = order[pos]
        cands = None
        for a in assigned:
            ls = line_of[x][a]
            lt = line_img.get(ls)
            if lt is not None:
                cands = space.line_masks[lt] & ~used
                break
        if cands is None:
            cands = ((1 << N) - 1) & ~used
        for y in bits(cands):
            added = assign(x, y, assigned)
            if added is None:
                continue
            img[x] = y
            assigned.append(x)
            search(pos + 1, assigned, used | 1 << y)
            assigned.pop()
            img[x] = -1
            for L in added:
                line_used.discard(line_img.pop(L))

    search(0, [], 0)
    return out
