import random
from itertools import combinations

import pytest

from unitals.gf import field
from unitals.geom import (
    CoincidentPoints,
    PointSet,
    SingularMatrix,
    UnsupportedDimension,
    apply_collineation,
    det3,
    inv3,
    matmul3,
    projective_plane,
    projective_space,
)


def test_point_counts():
    assert projective_plane(field(3)).npoints == 13
    assert projective_plane(field(3, 2)).npoints == 91
    assert projective_space(field(3, 2), 5).npoints == 66430
    with pytest.raises(UnsupportedDimension):
        projective_space(field(3), 3)


def test_canonical_order_is_lexicographic():
    for F, d in ((field(3, 2), 2), (field(3), 5)):
        space = projective_space(F, d)
        pts = space.points()
        assert pts == sorted(pts)
        assert len(set(pts)) == space.npoints
        for i, P in enumerate(pts):
            assert space.index(P) == i


def test_index_roundtrip_pg59():
    space = projective_space(field(3, 2), 5)
    for i in (0, 1, 17, 12345, 66429):
        assert space.index(space.point(i)) == i
    arr = space.coords_array()
    for i in (0, 7, 4096, 66429):
        assert tuple(int(x) for x in arr[i]) == space.point(i)


@pytest.mark.parametrize("p,h", [(3, 1), (3, 2)])
def test_two_points_one_line_exhaustive(p, h):
    plane = projective_plane(field(p, h))
    n = plane.field.order
    for P, Q in combinations(plane.points(), 2):
        L = plane.line_through(P, Q)
        li = plane.line_index(L)
        pts = plane.line_points[li]
        assert plane.index(P) in pts and plane.index(Q) in pts
        # no second line carries both
        both = [l for l in plane.point_lines[plane.index(P)] if plane.index(Q) in plane.line_points[l]]
        assert both == [li]
    assert all(len(lp) == n + 1 for lp in plane.line_points)
    assert all(len(pl) == n + 1 for pl in plane.point_lines)


def test_two_points_one_line_pg2_25():
    plane = projective_plane(field(5, 2))
    n = plane.field.order
    # every pair of distinct lines meets in exactly one point
    line_sets = [frozenset(lp) for lp in plane.line_points]
    for a, b in combinations(line_sets, 2):
        assert len(a & b) == 1
    # every point pair lies on exactly one line: each line carries C(26,2)
    # pairs, lines are pairwise 1-intersecting, and the totals add up
    pairs_per_line = (n + 1) * n // 2
    assert len(line_sets) * pairs_per_line == plane.npoints * (plane.npoints - 1) // 2


def test_line_through_examples():
    pg9 = projective_plane(field(3, 2))
    assert pg9.line_through((1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    pg3 = projective_plane(field(3))
    L = pg3.line_through((1, 1, 1), (1, 2, 0))
    assert len(pg3.points_on_line(L)) == 4
    with pytest.raises(CoincidentPoints):
        pg3.line_through((1, 2, 0), (1, 2, 0))


def test_pg5_lines():
    space = projective_space(field(3, 2), 5)
    P, Q = space.point(3), space.point(40000)
    pair = space.line_through(P, Q)
    pts = space.points_on_line(pair)
    assert len(pts) == 10 and len(set(pts)) == 10
    idxs = [space.index(R) for R in pts]
    assert idxs == sorted(idxs)
    # the stored pair is the two smallest indices on the line
    assert pair == (idxs[0], idxs[1])


def test_points_on_line_canonical_order():
    plane = projective_plane(field(3, 2))
    pts = plane.points_on_line((0, 0, 1))
    assert pts == sorted(pts)
    assert all(P[2] == 0 for P in pts)
    assert len(pts) == 10


def test_collineations():
    F = field(3, 2)
    plane = projective_plane(F)
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for i in (0, 5, 90):
        assert apply_collineation(plane, ident, plane.point(i)) == plane.point(i)
    with pytest.raises(SingularMatrix):
        apply_collineation(plane, ((1, 0, 0), (0, 1, 0), (1, 1, 0)), (1, 0, 0))
    with pytest.raises(SingularMatrix):
        inv3(F, ((1, 2, 0), (0, 1, 1), (1, 0, 1)))  # determinant 3 = 0 mod 3
    M = ((1, 2, 0), (0, 1, 1), (1, 0, 2))
    assert det3(F, M) != 0
    assert matmul3(F, M, inv3(F, M)) == ident


@pytest.mark.parametrize("p,h", [(3, 2), (5, 2), (7, 2)])
def test_collineations_preserve_collinearity(p, h):
    F = field(p, h)
    plane = projective_plane(F)
    rng = random.Random(42)
    for _ in range(50):
        M = tuple(tuple(rng.randrange(F.order) for _ in range(3)) for _ in range(3))
        if det3(F, M) == 0:
            continue
        li = rng.randrange(plane.npoints)
        P, Q, R = (plane.point(i) for i in plane.line_points[li][:3])
        P2, Q2, R2 = (apply_collineation(plane, M, X) for X in (P, Q, R))
        L2 = plane.line_through(P2, Q2)
        assert plane.index(R2) in plane.line_points[plane.line_index(L2)]


def test_pointset_operations():
    plane = projective_plane(field(3))
    A = PointSet.from_indices(plane, [0, 3, 5])
    B = PointSet.from_indices(plane, [3, 7])
    assert A.card == 3 and len(A) == 3
    assert A.contains(3) and not A.contains(1)
    assert (A | B).indices() == [0, 3, 5, 7]
    assert (A & B).indices() == [3]
    assert (A - B).indices() == [0, 5]
    assert A.complement().card == 10
    assert list(A) == [0, 3, 5]
