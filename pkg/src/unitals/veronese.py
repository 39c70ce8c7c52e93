"""The PG(5,q) side: Veronese surface, conic points P(C), cones, and the
exhaustive cone-intersection oracle.

A conic corresponds to the PG(5,q) point carrying its coefficient tuple
(a11,a22,a33,a12,a13,a23); rank-1 conics make up the Veronese surface V and
every conic C of rank > 1 spans the cone Gamma(C) projecting V from P(C).
Cone membership is decided by scanning the n+1 points of a line for a
rank-1 symmetric matrix, never symbolically.  The full PG(5,n) sweeps are
vectorised and can be partitioned by index range across worker processes;
results are merged in canonical order, so worker count never changes output.
"""

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .conic import Conic
from .gf import GF, field
from .geom import projective_plane, projective_space


class RankOne(ValueError):
    pass


class ZeroTriple(ValueError):
    pass


# symmetric matrix from a 6-tuple q: rows ((q0,q3,q4),(q3,q1,q5),(q4,q5,q2));
# the six distinct 2x2 minors as index quadruples (i,j,k,l) meaning
# q_i*q_j == q_k*q_l
_MINOR_PAIRS = (
    (0, 1, 3, 3),
    (0, 2, 4, 4),
    (1, 2, 5, 5),
    (0, 5, 3, 4),
    (1, 4, 3, 5),
    (2, 3, 4, 5),
)


def symmetric_rank_leq1(F: GF, q) -> bool:
    """True when the symmetric 3x3 matrix built from the 6-tuple is nonzero
    of rank 1."""
    if not any(q):
        return False
    mul = F.mul
    return all(mul(q[i], q[j]) == mul(q[k], q[l]) for i, j, k, l in _MINOR_PAIRS)


def veronese_point(F: GF, a: int, b: int, c: int):
    """Normalised image (a^2,b^2,c^2,ab,ac,bc) of a nonzero triple."""
    if a == 0 and b == 0 and c == 0:
        raise ZeroTriple("the zero triple has no Veronese image")
    mul = F.mul
    v = (mul(a, a), mul(b, b), mul(c, c), mul(a, b), mul(a, c), mul(b, c))
    return projective_space(F, 5).normalize(v)


def veronese_indices(F: GF):
    """Sorted PG(5,n) indices of the Veronese surface (one per plane point)."""
    key = "_veronese_idx"
    cached = getattr(F, key, None)
    if cached is None:
        space = projective_space(F, 5)
        plane = projective_plane(F)
        cached = tuple(sorted(space.index(veronese_point(F, *plane.point(i))) for i in range(plane.npoints)))
        setattr(F, key, cached)
    return cached


def is_on_veronese(F: GF, q) -> bool:
    return symmetric_rank_leq1(F, q)


def conic_vpoint(C: Conic):
    """PG(5,q) coordinates of the point representing a conic."""
    return C.coeffs


def vpoint_conic(F: GF, q) -> Conic:
    return Conic(F, q)


def line_meets_veronese(F: GF, P, Q):
    """The points of the line PQ of PG(5,n) lying on V, canonical order."""
    space = projective_space(F, 5)
    found = {}
    for R in space._span(tuple(P), tuple(Q)):
        Rn = space.normalize(R)
        if symmetric_rank_leq1(F, Rn):
            found[space.index(Rn)] = Rn
    return [found[i] for i in sorted(found)]


def cone_contains(C: Conic, Q) -> bool:
    """Whether Q lies on the cone projecting V from P(C): Q = P(C) or the
    line P(C)Q meets V (line-scan, n+1 rank tests)."""
    F = C.field
    if F.p != 2 and C.rank() <= 1:
        raise RankOne("rank-1 conics are points of V, not cone apices")
    space = projective_space(F, 5)
    apex = space.normalize(C.coeffs)
    Qn = space.normalize(tuple(Q))
    if Qn == apex:
        return True
    return bool(line_meets_veronese(F, apex, Qn))


# -- vectorised cone sweeps ----------------------------------------------------


def _cone_hits_block(F: GF, coeffs, coords):
    """Boolean array marking rows of ``coords`` lying on the cone of the
    conic with the given coefficients (apex excluded)."""
    m = F.order
    add = F.add_table
    mulf = F.mul_table.ravel()
    wide = np.uint16 if m <= 256 else np.uint32
    cols = [np.ascontiguousarray(coords[:, i]) for i in range(6)]
    hits = np.zeros(len(coords), dtype=bool)

    def prod(a, b):
        return mulf[a.astype(wide) * m + b]

    for lam in range(m):
        s = []
        for i in range(6):
            t = F.mul(lam, coeffs[i])
            s.append(add[t][cols[i]] if t else cols[i])
        nz = s[0] | s[1]
        for i in range(2, 6):
            nz = nz | s[i]
        hit = nz != 0
        for i, j, k, l in _MINOR_PAIRS:
            if not hit.any():
                break
            hit &= prod(s[i], s[j]) == prod(s[k], s[l])
        hits |= hit
    return hits


def _cone_sweep_worker(args):
    p, h, modulus, coeffs, start, stop = args
    F = field(p, h, modulus)
    coords = projective_space(F, 5).coords_array()[start:stop]
    return start, np.flatnonzero(_cone_hits_block(F, coeffs, coords)) + start


_CONE_CACHE: dict = {}


def cone_point_indices(C: Conic, workers: int = 1):
    """Sorted PG(5,n) indices of the full cone of C, by exhaustive sweep.

    Every point of PG(5,n) is line-scanned against the cone; the result is
    cached per conic since case sweeps reuse one apex for many partners.
    """
    key = (C.field, C.coeffs)
    cached = _CONE_CACHE.get(key)
    if cached is not None:
        return cached
    F = C.field
    space = projective_space(F, 5)
    n = space.npoints
    if workers > 1:
        chunk = -(-n // workers)
        jobs = [(F.p, F.h, F.modulus, C.coeffs, s, min(s + chunk, n)) for s in range(0, n, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = sorted(pool.map(_cone_sweep_worker, jobs))
        idx = np.concatenate([part for _, part in parts]) if parts else np.empty(0, np.int64)
    else:
        idx = np.flatnonzero(_cone_hits_block(F, C.coeffs, space.coords_array()))
    apex = space.index(space.normalize(C.coeffs))
    idx = np.unique(np.append(idx, apex))
    if len(_CONE_CACHE) > 8:
        _CONE_CACHE.pop(next(iter(_CONE_CACHE)))
    _CONE_CACHE[key] = idx
    return idx


def cone_residual_intersection(
    C: Conic,
    D: Conic,
    method: str = "auto",
    workers: int = 1,
    samples: int = 0,
    seed: int = 0,
    extra_candidates=(),
):
    """All points of (Gamma(C) & Gamma(D)) minus the line P(C)P(D) minus V,
    in canonical index order, as coordinate tuples.

    method "scan" sweeps the whole of PG(5,n) (the oracle used up to n=25);
    "scalar" is the plain per-point reference implementation for small n;
    "sampled" verifies only supplied candidate points plus a seeded random
    sample of the space (for n > 25, where the full sweep is out of budget).
    """
    F = C.field
    if F != D.field:
        raise ValueError("conics live over different fields")
    if C == D:
        raise ValueError("cones of a single conic")
    if F.p != 2 and (C.rank() != 3 or D.rank() != 3):
        raise RankOne("residual intersection needs irreducible conics")
    space = projective_space(F, 5)
    if method == "auto":
        method = "scan" if space.npoints <= 11_000_000 else "sampled"

    apex_c = space.index(space.normalize(C.coeffs))
    apex_d = space.index(space.normalize(D.coeffs))
    line_idx = {space.index(P) for P in space.points_on_line(space.line_through(space.point(apex_c), space.point(apex_d)))}
    v_idx = set(veronese_indices(F))
    excluded = line_idx | v_idx

    if method == "scalar":
        out = []
        for i in range(space.npoints):
            if i in excluded:
                continue
            P = space.point(i)
            if cone_contains(C, P) and cone_contains(D, P):
                out.append(P)
        return out

    dt = np.uint8 if F.order <= 256 else np.uint16
    if method == "scan":
        cand = cone_point_indices(C, workers=workers)
    elif method == "sampled":
        rng = np.random.default_rng(seed)
        pool = set(int(i) for i in rng.integers(0, space.npoints, size=samples)) if samples else set()
        pool.update(space.index(space.normalize(tuple(q))) for q in extra_candidates)
        cand = np.array(sorted(pool), dtype=np.int64)
        coords = np.array([space.point(int(i)) for i in cand], dtype=dt) if len(cand) else np.empty((0, 6), dtype=dt)
        in_c = _cone_hits_block(F, C.coeffs, coords) if len(cand) else np.empty(0, bool)
        in_c |= cand == apex_c
        cand = cand[in_c]
    else:
        raise ValueError(f"unknown method {method!r}")

    if len(cand) == 0:
        return []
    coords = (
        space.coords_array()[cand]
        if method == "scan"
        else np.array([space.point(int(i)) for i in cand], dtype=dt)
    )
    in_d = _cone_hits_block(F, D.coeffs, coords)
    in_d |= cand == apex_d
    found = sorted(set(int(i) for i in cand[in_d]) - excluded)
    return [space.point(i) for i in found]
