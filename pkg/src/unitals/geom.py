"""Points, lines and incidence for PG(2,n) and PG(5,n).

Points are normalised coordinate tuples (first nonzero coordinate 1) of
field-element indices.  The canonical point index enumerates normalised
vectors in lexicographic order; lines of PG(2,n) are enumerated by the same
scheme through their dual vectors.  PG(5,n) lines are never enumerated
globally, only constructed from point pairs.

Everything here is immutable after construction; enumeration ranges can be
partitioned by index for data-parallel sweeps.
"""

from functools import lru_cache

import numpy as np

from .gf import GF, nullspace


class UnsupportedDimension(ValueError):
    pass


class CoincidentPoints(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class ProjectiveSpace:
    """PG(d,n) for d in {2,5} over the field F of order n."""

    def __init__(self, F: GF, dim: int):
        if dim not in (2, 5):
            raise UnsupportedDimension(f"dim {dim} not supported")
        self.field = F
        self.dim = dim
        m = F.order
        self.npoints = sum(m**k for k in range(dim + 1))
        # block of points whose leading one sits at position i starts here
        self._offsets = [(m ** (dim - i) - 1) // (m - 1) for i in range(dim + 1)]
        self._coords_array = None
        self._point_cache = None
        if dim == 2:
            self._build_incidence()
            self._point_cache = tuple(self._point(i) for i in range(self.npoints))

    def __repr__(self):
        return f"PG({self.dim},{self.field.order})"

    # -- canonical enumeration ------------------------------------------------

    def normalize(self, vec):
        F = self.field
        vec = tuple(vec)
        for i, c in enumerate(vec):
            if c:
                if c == 1:
                    return vec
                inv = F.inv(c)
                return tuple(0 if j < i else F.mul(inv, x) for j, x in enumerate(vec))
        raise ValueError("zero vector has no projective point")

    def index(self, coords) -> int:
        """Canonical index of a normalised point."""
        m, d = self.field.order, self.dim
        i = next(t for t, c in enumerate(coords) if c)
        idx = self._offsets[i]
        for t in range(i + 1, d + 1):
            idx += coords[t] * m ** (d - t)
        return idx

    def point(self, idx: int):
        """Normalised coordinates of the point with the given index."""
        if self._point_cache is not None:
            return self._point_cache[idx]
        return self._point(idx)

    def _point(self, idx: int):
        m, d = self.field.order, self.dim
        # offsets decrease with the leading position; pick the block containing idx
        lead = next(i for i in range(d + 1) if idx >= self._offsets[i])
        rem = idx - self._offsets[lead]
        coords = [0] * (d + 1)
        coords[lead] = 1
        for t in range(d, lead, -1):
            coords[t] = rem % m
            rem //= m
        return tuple(coords)

    def points(self):
        """All points in canonical order."""
        if self._point_cache is not None:
            return list(self._point_cache)
        return [self._point(i) for i in range(self.npoints)]

    def coords_array(self):
        """(npoints, dim+1) numpy array of all normalised points, cached."""
        if self._coords_array is None:
            m, d = self.field.order, self.dim
            dt = np.uint8 if m <= 256 else np.uint16
            cols = [np.zeros(self.npoints, dtype=dt) for _ in range(d + 1)]
            for i in range(d, -1, -1):
                start = self._offsets[i]
                size = m ** (d - i)
                r = np.arange(size)
                cols[i][start : start + size] = 1
                for t in range(i + 1, d + 1):
                    cols[t][start : start + size] = (r // m ** (d - t) % m).astype(dt)
            self._coords_array = np.column_stack(cols)
        return self._coords_array

    # -- lines -----------------------------------------------------------------

    def _build_incidence(self):
        F = self.field
        n = F.order
        nlines = self.npoints
        line_points = []
        masks = []
        point_lines = [[] for _ in range(self.npoints)]
        for li in range(nlines):
            dual = self.point(li)
            b1, b2 = nullspace(F, [dual])
            pts = [self.index(self.normalize(b2))]
            for lam in F.elements():
                v = tuple(F.add(x, F.mul(lam, y)) for x, y in zip(b1, b2))
                pts.append(self.index(self.normalize(v)))
            pts = tuple(sorted(pts))
            assert len(set(pts)) == n + 1
            line_points.append(pts)
            mask = 0
            for pi in pts:
                mask |= 1 << pi
                point_lines[pi].append(li)
            masks.append(mask)
        self.line_points = line_points
        self.line_masks = masks
        self.point_lines = [tuple(ls) for ls in point_lines]

    def line_index(self, dual) -> int:
        return self.index(self.normalize(dual))

    def line_through(self, P, Q):
        """The unique line through two distinct points.

        For d=2 returns the normalised dual vector; for d=5 the pair of the
        two smallest point indices on the line.
        """
        P, Q = tuple(P), tuple(Q)
        if self.normalize(P) == self.normalize(Q):
            raise CoincidentPoints(f"{P} and {Q} coincide")
        F = self.field
        if self.dim == 2:
            u = F.sub(F.mul(P[1], Q[2]), F.mul(P[2], Q[1]))
            v = F.sub(F.mul(P[2], Q[0]), F.mul(P[0], Q[2]))
            w = F.sub(F.mul(P[0], Q[1]), F.mul(P[1], Q[0]))
            return self.normalize((u, v, w))
        idxs = sorted(self.index(self.normalize(c)) for c in self._span(P, Q))
        return (idxs[0], idxs[1])

    def _span(self, P, Q):
        F = self.field
        pts = [Q]
        for lam in F.elements():
            pts.append(tuple(F.add(x, F.mul(lam, y)) for x, y in zip(P, Q)))
        return pts

    def points_on_line(self, line):
        """Points of a line in canonical index order, as coordinate tuples.

        d=2 accepts a dual vector or a line index; d=5 a pair of point indices.
        """
        if self.dim == 2:
            li = line if isinstance(line, int) else self.line_index(line)
            return [self.point(i) for i in self.line_points[li]]
        P, Q = (self.point(i) for i in line)
        idxs = sorted(self.index(self.normalize(c)) for c in self._span(P, Q))
        return [self.point(i) for i in idxs]


@lru_cache(maxsize=None)
def projective_space(F: GF, dim: int) -> ProjectiveSpace:
    return ProjectiveSpace(F, dim)


def projective_plane(F: GF) -> ProjectiveSpace:
    return projective_space(F, 2)


# -- 3x3 matrices over a field ----------------------------------------------


def det3(F: GF, M) -> int:
    a, b, c = M[0]
    d, e, f = M[1]
    g, h, i = M[2]
    t1 = F.mul(a, F.sub(F.mul(e, i), F.mul(f, h)))
    t2 = F.mul(b, F.sub(F.mul(d, i), F.mul(f, g)))
    t3 = F.mul(c, F.sub(F.mul(d, h), F.mul(e, g)))
    return F.add(F.sub(t1, t2), t3)


def matvec3(F: GF, M, v):
    return tuple(
        F.add(F.add(F.mul(row[0], v[0]), F.mul(row[1], v[1])), F.mul(row[2], v[2]))
        for row in M
    )


def matmul3(F: GF, A, B):
    return tuple(
        tuple(
            F.add(F.add(F.mul(A[i][0], B[0][j]), F.mul(A[i][1], B[1][j])), F.mul(A[i][2], B[2][j]))
            for j in range(3)
        )
        for i in range(3)
    )


def transpose3(M):
    return tuple(tuple(M[j][i] for j in range(3)) for i in range(3))


def inv3(F: GF, M):
    det = det3(F, M)
    if det == 0:
        raise SingularMatrix("matrix is singular")
    dinv = F.inv(det)
    cof = [[0] * 3 for _ in range(3)]
    idx = ((1, 2), (0, 2), (0, 1))
    for i in range(3):
        for j in range(3):
            r1, r2 = idx[i]
            c1, c2 = idx[j]
            minor = F.sub(F.mul(M[r1][c1], M[r2][c2]), F.mul(M[r1][c2], M[r2][c1]))
            cof[i][j] = F.mul(dinv, minor if (i + j) % 2 == 0 else F.neg(minor))
    return tuple(tuple(cof[j][i] for j in range(3)) for i in range(3))


def apply_collineation(space: ProjectiveSpace, M, P):
    """Image of a point of PG(2,n) under an invertible 3x3 matrix."""
    F = space.field
    if det3(F, M) == 0:
        raise SingularMatrix("collineation matrix is singular")
    return space.normalize(matvec3(F, M, P))


# -- point sets ---------------------------------------------------------------


class PointSet:
    """Bit-indexed subset of the points of a projective space."""

    __slots__ = ("space", "mask", "_card")

    def __init__(self, space: ProjectiveSpace, mask: int = 0):
        self.space = space
        self.mask = mask
        self._card = None

    @classmethod
    def from_indices(cls, space, idxs):
        mask = 0
        for i in idxs:
            mask |= 1 << i
        return cls(space, mask)

    @property
    def card(self) -> int:
        if self._card is None:
            self._card = self.mask.bit_count()
        return self._card

    def __len__(self):
        return self.card

    def contains(self, idx: int) -> bool:
        return bool(self.mask >> idx & 1)

    def indices(self):
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def __iter__(self):
        return iter(self.indices())

    def __or__(self, other):
        return PointSet(self.space, self.mask | other.mask)

    def __and__(self, other):
        return PointSet(self.space, self.mask & other.mask)

    def __sub__(self, other):
        return PointSet(self.space, self.mask & ~other.mask)

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.space is other.space and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.space), self.mask))

    def complement(self):
        full = (1 << self.space.npoints) - 1
        return PointSet(self.space, full & ~self.mask)
