"""Projective spaces PG(n, q) built from GF(q)^(n+1).

A subspace is stored as the RREF basis of the corresponding vector
subspace, so equal subspaces have identical representations.  Points are
the normalized nonzero vectors (first nonzero coordinate 1), indexed in
the order produced by :func:`enumerate_rref`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import gf
from .linalg import (
    frob_mat,
    frob_vec,
    is_invertible,
    mat_inv,
    mat_mul,
    normalize,
    nullspace,
    rank,
    rref,
    vec_mat,
)
from .linspace import GeometryError, LinearSpace, PointMap, bits, to_mask


class AmbientMismatchError(GeometryError):
    pass


@dataclass(frozen=True)
class ProjSubspace:
    """Subspace of PG(n, q): RREF basis rows, ``dim = rows - 1`` (-1 when empty)."""

    basis: tuple
    n: int
    field: gf.FieldSpec

    @classmethod
    def from_rows(cls, rows, field, n):
        R = rref(rows, field, n + 1)[0] if rows else ()
        return cls(R, n, field)

    @property
    def dim(self):
        return len(self.basis) - 1

    @property
    def rank(self):
        return len(self.basis)

    def points(self):
        """Normalized vectors of all points, in a fixed order."""
        F, r = self.field, len(self.basis)
        A, M = F.add_table, F.mul_table
        out = []
        for lead in range(r):
            for tail in itertools.product(range(F.q), repeat=r - lead - 1):
                coeffs = (1,) + tail
                v = [0] * (self.n + 1)
                for c, row in zip(coeffs, self.basis[lead:]):
                    if c:
                        Mc = M[c]
                        v = [A[x][Mc[y]] for x, y in zip(v, row)]
                out.append(tuple(v))
        return out

    def to_dict(self):
        return {"dim": self.dim, "rref": [list(r) for r in self.basis]}

    def __repr__(self):
        return f"ProjSubspace(dim={self.dim}, rref={[list(r) for r in self.basis]})"


def _check_same(A, B):
    if A.n != B.n or A.field != B.field:
        raise AmbientMismatchError("subspaces live in different projective spaces")


def span(A, B):
    _check_same(A, B)
    return ProjSubspace.from_rows(A.basis + B.basis, A.field, A.n)


def annihilator(S):
    """Subspace of the dual coordinate space vanishing on S (dot-product pairing)."""
    return ProjSubspace(nullspace(S.basis, S.field, S.n + 1), S.n, S.field)


def meet(A, B):
    """Intersection, computed as the annihilator of the span of the annihilators."""
    _check_same(A, B)
    return annihilator(span(annihilator(A), annihilator(B)))


def enumerate_rref(r, ncols, F):
    """Every r x ncols RREF matrix of rank r over F, in a fixed order."""
    if r == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(ncols), r):
        free = [
            [c for c in range(p + 1, ncols) if c not in pivots] for p in pivots
        ]
        nfree = sum(len(f) for f in free)
        for vals in itertools.product(range(F.q), repeat=nfree):
            it = iter(vals)
            rows = []
            for i, p in enumerate(pivots):
                row = [0] * ncols
                row[p] = 1
                for c in free[i]:
                    row[c] = next(it)
                rows.append(tuple(row))
            yield tuple(rows)


def gaussian_binomial(n, k, q):
    """Number of k-dimensional subspaces of an n-dimensional vector space over GF(q)."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


class ProjectiveSpace(LinearSpace):
    """PG(n, q) as a linear space, with coordinates for every point."""

    def __init__(self, n, field):
        field = gf.field(field)
        if n < 2:
            raise GeometryError("projective spaces here have dimension >= 2")
        self.n = n
        self.field = field
        self.coords = tuple(row[0] for row in enumerate_rref(1, n + 1, field))
        self.index = {c: i for i, c in enumerate(self.coords)}
        lines = [
            [self.index[v] for v in ProjSubspace(rows, n, field).points()]
            for rows in enumerate_rref(2, n + 1, field)
        ]
        super().__init__(len(self.coords), lines, label=f"PG({n},{field.q})")

    @property
    def q(self):
        return self.field.q

    @cached_property
    def has_exchange(self):
        # projective, hence exchange; check_exchange() still runs the full test
        return True

    @cached_property
    def dimension(self):
        return self.n

    def point(self, vec):
        v = normalize(tuple(vec), self.field)
        if not any(v):
            raise GeometryError("zero vector is not a point")
        return self.index[v]

    def subspace(self, rows):
        return ProjSubspace.from_rows(rows, self.field, self.n)

    def mask_of(self, S):
        return to_mask(self.index[v] for v in S.points())

    def subspace_of_mask(self, mask):
        return self.subspace([self.coords[p] for p in bits(mask)])

    def subspaces_of_dim(self, k):
        return [ProjSubspace(rows, self.n, self.field) for rows in enumerate_rref(k + 1, self.n + 1, self.field)]

    def subspace_dim(self, mask):
        s = to_mask(mask).bit_count()
        d, size = -1, 0
        while size < s:
            d += 1
            size = size * self.q + 1
        if size != s:
            raise GeometryError("mask size is not a subspace size")
        return d

    def is_independent(self, points):
        pts = list(bits(to_mask(points)))
        return rank([self.coords[p] for p in pts], self.field) == len(pts)

    def standard_frame(self):
        """The coordinate points e_0..e_n."""
        return tuple(self.point(tuple(1 if i == j else 0 for j in range(self.n + 1))) for i in range(self.n + 1))


def build_pg(n, field):
    return ProjectiveSpace(n, field)


# -- semilinear maps


@dataclass(frozen=True)
class SemilinearMap:
    """x -> frobenius^sigma(x) @ matrix on row vectors.

    ``dual`` marks a map whose images are read in dual coordinates, so on
    subspaces it lands on annihilators of the target.
    """

    matrix: tuple
    sigma: int
    field: gf.FieldSpec
    dual: bool = False

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in self.matrix))
        if not is_invertible(self.matrix, self.field):
            raise GeometryError("semilinear map needs an invertible matrix")
        if not 0 <= self.sigma < self.field.m:
            raise GeometryError(f"sigma must be in 0..{self.field.m - 1}")

    def apply(self, vec):
        return vec_mat(frob_vec(vec, self.field, self.sigma), self.matrix, self.field)

    def compose(self, other):
        """self after other."""
        F = self.field
        mat = mat_mul(frob_mat(other.matrix, F, self.sigma), self.matrix, F)
        return SemilinearMap(mat, (self.sigma + other.sigma) % F.m, F, self.dual != other.dual)

    def inverse(self):
        F = self.field
        back = (-self.sigma) % F.m
        return SemilinearMap(frob_mat(mat_inv(self.matrix, F), F, back), back, F, self.dual)

    def apply_subspace(self, S):
        return ProjSubspace.from_rows([self.apply(r) for r in S.basis], self.field, S.n)


def induced_point_map(l, pg, target=None):
    """The point map P(l) on a projective space."""
    target = pg if target is None else target
    return PointMap(pg, target, tuple(target.point(l.apply(c)) for c in pg.coords))


def linear_point_map(source, target, matrix):
    """Point map x -> x @ matrix where source coordinates sit in a subfield of the target field.

    The prime field GF(p) embeds in GF(p^m) as the constant polynomials,
    which have the same integer codes.
    """
    sF, tF = source.field, target.field
    if sF != tF and not (sF.m == 1 and sF.p == tF.p):
        raise GeometryError(f"{sF!r} is not a subfield of {tF!r} here")
    if len(matrix) != source.n + 1 or any(len(r) != target.n + 1 for r in matrix):
        raise GeometryError("matrix shape does not match the spaces")
    images = []
    for c in source.coords:
        v = vec_mat(c, matrix, tF)
        if not any(v):
            raise GeometryError(f"point {c} lies in the kernel")
        images.append(target.point(v))
    return PointMap(source, target, tuple(images))


# -- duality


class DualSpace:
    """The space of hyperplanes of a projective space, with pencils as lines."""

    def __init__(self, pg):
        self.pg = pg
        n = pg.n
        self.hyperplanes = pg.subspaces_of_dim(n - 1)
        self.hyper_masks = [pg.mask_of(H) for H in self.hyperplanes]
        lines = []
        for U in pg.subspaces_of_dim(n - 2):
            um = pg.mask_of(U)
            lines.append([i for i, hm in enumerate(self.hyper_masks) if hm & um == um])
        self.space = LinearSpace(len(self.hyperplanes), lines, label=f"{pg.label}*")

    def dual_mask(self, S):
        """Mask (over hyperplane indices) of the hyperplanes containing S."""
        sm = self.pg.mask_of(S)
        return to_mask(i for i, hm in enumerate(self.hyper_masks) if hm & sm == sm)

    def primal(self, mask):
        """The subspace of the original space matching a subspace of the dual."""
        idx = list(bits(mask))
        if not idx:
            return annihilator(ProjSubspace((), self.pg.n, self.pg.field))
        cur = self.hyperplanes[idx[0]]
        for i in idx[1:]:
            cur = meet(cur, self.hyperplanes[i])
        return cur


def dual_space(pg):
    return DualSpace(pg)


def annihilator_collineation(pg, dual=None):
    """Hyperplane -> its annihilator point, as a map from the dual space into PG(n, q)."""
    dual = DualSpace(pg) if dual is None else dual
    images = [pg.point(annihilator(H).basis[0]) for H in dual.hyperplanes]
    return PointMap(dual.space, pg, tuple(images))


# -- axioms


def planes_of(space):
    """Masks of all planes (closures of non-collinear triples)."""
    planes = set()
    for L in space.line_masks:
        covered = L
        for p in range(space.n_points):
            if not covered >> p & 1:
                P = space.closure_mask(L | 1 << p)
                planes.add(P)
                covered |= P
    return sorted(planes)


def verify_projective_axioms(space):
    """Check every line has >= 3 points and any two lines in a common plane meet.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is
    ``("disjoint-coplanar-lines", plane, L1, L2)`` or ``("short-line", line)``;
    the plane condition is reported first.
    """
    for P in planes_of(space):
        inside = [L for L in space.line_masks if L & P == L]
        for a, b in itertools.combinations(inside, 2):
            if a & b == 0:
                return False, ("disjoint-coplanar-lines", sorted(bits(P)), sorted(bits(a)), sorted(bits(b)))
    for L in space.lines:
        if len(L) < 3:
            return False, ("short-line", L)
    return True, None


def iter_invertible(n1, field):
    """Every invertible n1 x n1 matrix over ``field``, row by row outside the span so far."""
    F = gf.field(field)
    vectors = list(itertools.product(range(F.q), repeat=n1))

    def grow(rows):
        if len(rows) == n1:
            yield tuple(rows)
            return
        for v in vectors:
            if rank(rows + [v], F) == len(rows) + 1:
                rows.append(v)
                yield from grow(rows)
                rows.pop()

    yield from grow([])
