"""Conic algebra over PG(2,n).

A conic is stored as the 6-tuple (a11,a22,a33,a12,a13,a23), normalised so
the first nonzero entry is 1.  In odd characteristic the quadratic form is
a11 x^2 + a22 y^2 + a33 z^2 + 2 a12 xy + 2 a13 xz + 2 a23 yz and the usual
symmetric-matrix machinery (rank, determinant, polarity) applies.  In even
characteristic the stored cross coefficients are the literal polynomial
coefficients and only point-set operations plus the nucleus are offered.
"""

import enum
from functools import lru_cache

import numpy as np

from .gf import GF, QuadraticCharacter, nullspace
from .geom import PointSet, det3, inv3, matmul3, matvec3, projective_plane, transpose3


class EvenCharacteristicUnsupported(ValueError):
    pass


class SingularConic(ValueError):
    pass


class PointNotOnConic(ValueError):
    pass


class OddCharacteristic(ValueError):
    pass


class NotIrreducible(ValueError):
    pass


class AlphaIsSquare(ValueError):
    pass


class PointClass(enum.Enum):
    ON_CONIC = "on"
    EXTERNAL = "external"
    INTERNAL = "internal"


class PencilKind(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"


@lru_cache(maxsize=None)
def _monomials(plane):
    """(npoints, 6) array of monomial values (x2, y2, z2, xy, xz, yz) per
    point, with the cross columns doubled in odd characteristic so that a
    conic evaluates as a plain dot product with its coefficient tuple."""
    F = plane.field
    mul = F.mul_table
    add = F.add_table
    c = plane.coords_array().astype(np.int64)
    x, y, z = c[:, 0], c[:, 1], c[:, 2]
    two = F.add(1, 1)
    cols = [mul[x, x], mul[y, y], mul[z, z]]
    for u, v in ((x, y), (x, z), (y, z)):
        col = mul[u, v]
        if F.p != 2:
            col = mul[two, col.astype(np.int64)]
        cols.append(col)
    return np.column_stack([col.astype(np.int64) for col in cols])


def eval_many(plane, coeffs, mon=None):
    """Values of the conic form at every point of the plane (numpy array)."""
    F = plane.field
    if mon is None:
        mon = _monomials(plane)
    mul, add = F.mul_table, F.add_table
    acc = mul[coeffs[0], mon[:, 0]].astype(np.int64)
    for i in range(1, 6):
        if coeffs[i]:
            acc = add[acc, mul[coeffs[i], mon[:, i]].astype(np.int64)].astype(np.int64)
    return acc


class Conic:
    """A conic of PG(2,n), identified with its normalised coefficient tuple."""

    __slots__ = ("field", "coeffs", "_points", "_rank", "_det")

    def __init__(self, F: GF, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != 6:
            raise ValueError("a conic needs 6 coefficients")
        lead = next((c for c in coeffs if c), None)
        if lead is None:
            raise ValueError("all-zero coefficient tuple")
        if lead != 1:
            inv = F.inv(lead)
            coeffs = tuple(F.mul(inv, c) for c in coeffs)
        self.field = F
        self.coeffs = coeffs
        self._points = None
        self._rank = None
        self._det = None

    def __eq__(self, other):
        return isinstance(other, Conic) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Conic{self.coeffs}"

    @property
    def plane(self):
        return projective_plane(self.field)

    # -- evaluation -------------------------------------------------------

    def evaluate(self, P) -> int:
        F = self.field
        a11, a22, a33, a12, a13, a23 = self.coeffs
        x, y, z = P
        v = F.mul(a11, F.mul(x, x))
        v = F.add(v, F.mul(a22, F.mul(y, y)))
        v = F.add(v, F.mul(a33, F.mul(z, z)))
        cross = F.add(F.add(F.mul(a12, F.mul(x, y)), F.mul(a13, F.mul(x, z))), F.mul(a23, F.mul(y, z)))
        if F.p != 2:
            cross = F.mul(F.add(1, 1), cross)
        return F.add(v, cross)

    def contains(self, P) -> bool:
        return self.evaluate(P) == 0

    def points(self) -> PointSet:
        if self._points is None:
            vals = eval_many(self.plane, self.coeffs)
            mask = 0
            for i in np.flatnonzero(vals == 0):
                mask |= 1 << int(i)
            self._points = PointSet(self.plane, mask)
        return self._points

    # -- matrix machinery (odd characteristic) ------------------------------

    def _require_odd(self):
        if self.field.p == 2:
            raise EvenCharacteristicUnsupported("matrix form needs odd characteristic")

    def matrix(self):
        self._require_odd()
        a11, a22, a33, a12, a13, a23 = self.coeffs
        return ((a11, a12, a13), (a12, a22, a23), (a13, a23, a33))

    def det(self) -> int:
        if self._det is None:
            self._det = det3(self.field, self.matrix())
        return self._det

    def rank(self) -> int:
        if self._rank is None:
            F = self.field
            M = self.matrix()
            if det3(F, M) != 0:
                self._rank = 3
            else:
                minors = any(
                    F.sub(F.mul(M[r1][c1], M[r2][c2]), F.mul(M[r1][c2], M[r2][c1])) != 0
                    for r1, r2, c1, c2 in (
                        (0, 1, 0, 1), (0, 1, 0, 2), (0, 1, 1, 2),
                        (0, 2, 0, 1), (0, 2, 0, 2), (0, 2, 1, 2),
                        (1, 2, 0, 1), (1, 2, 0, 2), (1, 2, 1, 2),
                    )
                )
                self._rank = 2 if minors else 1
        return self._rank

    @property
    def is_irreducible(self) -> bool:
        if self.field.p != 2:
            return self.rank() == 3
        return self._is_oval()

    def _is_oval(self) -> bool:
        n = self.field.order
        pts = self.points()
        if pts.card != n + 1:
            return False
        return all((pts.mask & lm).bit_count() <= 2 for lm in self.plane.line_masks)

    # -- classification ------------------------------------------------------

    def classify_point(self, P) -> PointClass:
        """External iff -det(A) * f(P) is a nonzero square; on the conic iff
        f(P) = 0; internal otherwise."""
        self._require_odd()
        if self.rank() != 3:
            raise SingularConic("point classification needs an irreducible conic")
        F = self.field
        v = self.evaluate(P)
        if v == 0:
            return PointClass.ON_CONIC
        w = F.mul(F.neg(self.det()), v)
        if F.quadratic_character(w) == QuadraticCharacter.NONZERO_SQUARE:
            return PointClass.EXTERNAL
        return PointClass.INTERNAL

    def classify_array(self):
        """int8 per plane point: 0 on the conic, 1 external, -1 internal."""
        self._require_odd()
        if self.rank() != 3:
            raise SingularConic("point classification needs an irreducible conic")
        F = self.field
        vals = eval_many(self.plane, self.coeffs)
        w = F.mul_table[F.neg(self.det()), vals]
        return F.character_table[w]

    def tangent_at(self, P):
        """Dual vector of the tangent line at a point of the conic (A.P)."""
        self._require_odd()
        if self.rank() != 3:
            raise SingularConic("tangents need an irreducible conic")
        if self.evaluate(P) != 0:
            raise PointNotOnConic(f"{P} is not on the conic")
        return self.plane.normalize(matvec3(self.field, self.matrix(), P))

    def nucleus(self):
        """Common point of all tangents of an irreducible conic, q even."""
        F = self.field
        if F.p != 2:
            raise OddCharacteristic("the nucleus exists only in even characteristic")
        plane = self.plane
        pts = self.points()
        if not self._is_oval():
            raise NotIrreducible("point set is not an oval")
        tangents = []
        for pi in pts.indices():
            tl = [li for li in plane.point_lines[pi] if (plane.line_masks[li] & pts.mask).bit_count() == 1]
            assert len(tl) == 1
            tangents.append(tl[0])
        common = None
        for li in tangents:
            lset = set(plane.line_points[li])
            common = lset if common is None else common & lset
        assert len(common) == 1
        return plane.point(common.pop())

    def transform(self, M):
        """The conic whose point set is the image of this one under x -> Mx."""
        F = self.field
        Mi = inv3(F, M)
        A2 = matmul3(F, transpose3(Mi), matmul3(F, self.matrix(), Mi))
        return Conic(F, (A2[0][0], A2[1][1], A2[2][2], A2[0][1], A2[0][2], A2[1][2]))

    def to_json(self):
        return list(self.coeffs)


def canonical_pencil(F: GF, kind: PencilKind, k: int, alpha: int | None = None) -> Conic:
    """Member with parameter k of one of the three canonical pencils:
    hyperbolic 2xy = kz^2, elliptic x^2 - alpha y^2 = kz^2 (alpha a fixed
    non-square), parabolic 2yz = x^2 + kz^2."""
    if F.p == 2:
        raise EvenCharacteristicUnsupported("canonical pencils use the factor-2 form")
    kind = PencilKind(kind)
    if kind == PencilKind.HYPERBOLIC:
        if k == 0:
            raise ValueError("k = 0 gives the singular member 2xy = 0")
        return Conic(F, (0, 0, F.neg(k), 1, 0, 0))
    if kind == PencilKind.ELLIPTIC:
        if alpha is None:
            alpha = min(F.nonsquares())
        if F.is_square(alpha):
            raise AlphaIsSquare(f"alpha = {alpha} is a square")
        if k == 0:
            raise ValueError("k = 0 gives a singular member")
        return Conic(F, (1, F.neg(alpha), F.neg(k), 0, 0, 0))
    return Conic(F, (1, 0, k, 0, 0, F.neg(1)))


def conics_through(F: GF, pts) -> list:
    """Basis (as raw coefficient tuples) of the conics through the given
    points; a unique conic comes back as a single-element list."""
    rows = []
    two = F.add(1, 1)
    for x, y, z in pts:
        row = [F.mul(x, x), F.mul(y, y), F.mul(z, z), F.mul(x, y), F.mul(x, z), F.mul(y, z)]
        if F.p != 2:
            row[3:] = [F.mul(two, c) for c in row[3:]]
        rows.append(row)
    return nullspace(F, rows)
