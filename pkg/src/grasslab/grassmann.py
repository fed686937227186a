"""Grassmann spaces: all k-dimensional subspaces of a linear space, with adjacency.

Elements are indexed; each carries its point mask in the ambient space and,
for projective ambients, its RREF form.  Two elements are adjacent when
they meet in a (k-1)-dimensional subspace.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .linspace import GeometryError, SizeLimitError, bits, to_mask
from .projspace import ProjectiveSpace

DEFAULT_CLIQUE_CAP = 500


@dataclass(frozen=True)
class AdjacentSet:
    kind: str  # "star" | "top"
    center: int  # mask of the (k-1)- or (k+1)-dimensional center
    members: frozenset


class GrassmannSpace:
    def __init__(self, ambient, k, masks, forms=None):
        self.ambient = ambient
        self.k = k
        self.masks = tuple(masks)
        self.forms = tuple(forms) if forms is not None else None
        self.index = {m: i for i, m in enumerate(self.masks)}
        if len(self.index) != len(self.masks):
            raise GeometryError("duplicate elements in Grassmann space")
        self._dist = {}

    def __len__(self):
        return len(self.masks)

    def __repr__(self):
        return f"<GrassmannSpace k={self.k} of {self.ambient.label}: {len(self)} elements>"

    @property
    def n(self):
        return self.ambient.dimension

    @property
    def projective(self):
        return isinstance(self.ambient, ProjectiveSpace)

    def index_of(self, S):
        """Index of an element given as mask, point iterable or ProjSubspace."""
        if hasattr(S, "basis"):
            S = self.ambient.mask_of(S)
        return self.index[to_mask(S)]

    def form(self, i):
        if self.forms is None:
            return sorted(bits(self.masks[i]))
        return self.forms[i]

    # -- adjacency

    @cached_property
    def adjacency(self):
        """Bitset row per element."""
        amb, k, M = self.ambient, self.k, self.masks
        rows = [0] * len(M)
        for i in range(len(M)):
            for j in range(i + 1, len(M)):
                if amb.subspace_dim(M[i] & M[j]) == k - 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return rows

    def adjacent(self, i, j):
        return bool(self.adjacency[i] >> j & 1)

    def edge_count(self):
        return sum(r.bit_count() for r in self.adjacency) // 2

    def meet_dim(self, i, j):
        return self.ambient.subspace_dim(self.masks[i] & self.masks[j])

    def span_dim(self, i, j):
        amb = self.ambient
        return amb.subspace_dim(amb.closure_mask(self.masks[i] | self.masks[j]))

    # -- distance

    def _bfs(self, i):
        dist = self._dist.get(i)
        if dist is None:
            dist = [None] * len(self)
            dist[i] = 0
            queue = deque([i])
            adj = self.adjacency
            while queue:
                x = queue.popleft()
                for y in bits(adj[x]):
                    if dist[y] is None:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            self._dist[i] = dist
        return dist

    def distance(self, i, j):
        """Graph distance; None when j cannot be reached from i."""
        return self._bfs(i)[j]

    def connecting_path(self, i, j):
        """Adjacent chain from i to j built by one-point base swaps.

        Each step keeps a base of the current meet, drops one other base
        point of the current element and brings in a base point of the
        target, so the meet grows by one dimension per step.
        """
        amb = self.ambient
        path = [i]
        S, U = self.masks[i], self.masks[j]
        while S != U:
            B = amb.base_within(S & U)
            BS = amb.base_within(S, B)
            BU = amb.base_within(U, B)
            p = next(x for x in BS if x not in B)
            q = next(x for x in BU if x not in B)
            S = amb.closure_mask(to_mask([x for x in BS if x != p] + [q]))
            path.append(self.index[S])
        return path

    # -- maximal adjacent sets

    def star(self, center):
        """All elements containing a (k-1)-dimensional subspace."""
        c = self._center(center, self.k - 1)
        return AdjacentSet("star", c, frozenset(i for i, m in enumerate(self.masks) if m & c == c))

    def top(self, center):
        """All elements inside a (k+1)-dimensional subspace."""
        c = self._center(center, self.k + 1)
        return AdjacentSet("top", c, frozenset(i for i, m in enumerate(self.masks) if m & c == m))

    def _center(self, center, want):
        c = self.ambient.mask_of(center) if hasattr(center, "basis") else to_mask(center)
        if not self.ambient.is_subspace(c) or self.ambient.subspace_dim(c) != want:
            raise GeometryError(f"center must be a subspace of dimension {want}")
        return c

    @cached_property
    def lower(self):
        """The Grassmann space one level down (level k-1), or None at k = 0."""
        return grassmannian(self.ambient, self.k - 1) if self.k > 0 else None

    @cached_property
    def upper(self):
        return grassmannian(self.ambient, self.k + 1) if self.k + 1 <= self.n - 1 else None

    def all_stars(self):
        if self.k == 0:
            return [self.star(0)]
        return [self.star(c) for c in self.lower.masks]

    def all_tops(self):
        if self.k + 1 == self.n:
            return [self.top(self.ambient.full_mask)]
        return [self.top(c) for c in self.upper.masks]

    def maximal_cliques(self, cap=DEFAULT_CLIQUE_CAP):
        """Every maximal clique of the adjacency graph (pivoting Bron-Kerbosch)."""
        if len(self) > cap:
            raise SizeLimitError(f"{len(self)} elements exceeds the clique cap {cap}")
        adj = self.adjacency
        out = []

        def expand(R, P, X):
            if not P and not X:
                out.append(frozenset(bits(R)))
                return
            u = max(bits(P | X), key=lambda v: (P & adj[v]).bit_count())
            for v in bits(P & ~adj[u]):
                expand(R | 1 << v, P & adj[v], X & adj[v])
                P &= ~(1 << v)
                X |= 1 << v

        expand(0, (1 << len(self)) - 1, 0)
        return sorted(out, key=lambda c: (len(c), sorted(c)))

    def identify_clique(self, members):
        """The star or top equal to ``members``, or None."""
        members = frozenset(members)
        amb = self.ambient
        ms = [self.masks[i] for i in members]
        common = ms[0]
        union = 0
        for m in ms:
            common &= m
            union |= m
        if amb.subspace_dim(common) == self.k - 1:
            st = self.star(common)
            if st.members == members:
                return st
        hull = amb.closure_mask(union)
        if amb.subspace_dim(hull) == self.k + 1:
            tp = self.top(hull)
            if tp.members == members:
                return tp
        return None

    # -- complements

    @cached_property
    def _complements(self):
        """Bitset (over the level n-k-1 elements) of the complements of each element."""
        amb = self.ambient
        other = grassmannian(amb, self.n - self.k - 1)
        rows = []
        for S in self.masks:
            row = 0
            for c, C in enumerate(other.masks):
                if S & C == 0 and amb.closure_mask(S | C) == amb.full_mask:
                    row |= 1 << c
            rows.append(row)
        return rows

    def complement_adjacency(self, i, j):
        """Adjacency decided through complements alone.

        True iff some third element has every complement complementary to
        element i or to element j.
        """
        if i == j:
            return False
        comp = self._complements
        both = comp[i] | comp[j]
        return any(s not in (i, j) and comp[s] & ~both == 0 for s in range(len(self)))

    # -- export

    def to_dict(self):
        N = len(self)
        elements = []
        for i in range(N):
            F = self.form(i)
            entry = {"index": i, "points": sorted(bits(self.masks[i]))}
            if hasattr(F, "basis"):
                entry.update(F.to_dict())
            elements.append(entry)
        adjacency = ["".join("1" if self.adjacency[i] >> j & 1 else "0" for j in range(N)) for i in range(N)]
        return {"ambient": self.ambient.label, "k": self.k, "elements": elements, "adjacency": adjacency}

    def to_dot(self, name="G"):
        lines = [f"graph {name} {{"]
        for i in range(len(self)):
            lines.append(f"  {i};")
        for i in range(len(self)):
            for j in bits(self.adjacency[i] >> (i + 1) << (i + 1)):
                lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


_CACHE_ATTR = "_grassmann_cache"


def grassmannian(ambient, k):
    """All k-dimensional subspaces of ``ambient`` (cached per ambient)."""
    n = ambient.dimension
    if not 0 <= k <= n - 1:
        raise GeometryError(f"level {k} out of range 0..{n - 1}")
    cache = ambient.__dict__.setdefault(_CACHE_ATTR, {})
    G = cache.get(k)
    if G is None:
        if isinstance(ambient, ProjectiveSpace):
            forms = ambient.subspaces_of_dim(k)
            G = GrassmannSpace(ambient, k, [ambient.mask_of(S) for S in forms], forms)
        else:
            masks = [S for S in ambient.subspaces() if ambient.subspace_dim(S) == k]
            G = GrassmannSpace(ambient, k, masks)
        cache[k] = G
    return G
