"""The theorem engine: conic enumeration inside point sets, pencil
classification of conic pairs, difference-set searches over quadratic
classes, and the structural certificate for unitals that are unions of
conics.

All searches are exact and deterministic; sampling operations take an
explicit seed.  Searches are pure and partitionable (conic enumeration by
coefficient-index range, clique search by first-element branching), and
reports are merged in a fixed order.
"""

import enum
import random
from dataclasses import dataclass

import numpy as np

from .conic import (
    Conic,
    EvenCharacteristicUnsupported,
    PencilKind,
    PointClass,
    SingularConic,
    canonical_pencil,
    _monomials,
)
from .geom import PointSet, det3, projective_plane, projective_space
from .gf import GF, QuadraticCharacter
from .unital import is_unital
from .veronese import veronese_point


class CoincidentConics(ValueError):
    pass


class FieldTooSmall(ValueError):
    pass


class PencilType(enum.Enum):
    BITANGENT_REAL = "bitangent_real"
    BITANGENT_CONJUGATE = "bitangent_conjugate"
    HYPEROSCULATING = "hyperosculating"
    OTHER = "other"


@dataclass
class PencilReport:
    conics: tuple
    common_points: list
    ptype: PencilType
    rank1_member: Conic | None
    hypothesis_holds: bool

    def to_json(self):
        return {
            "conics": [list(C.coeffs) for C in self.conics],
            "common_points": [list(P) for P in self.common_points],
            "ptype": self.ptype.value,
            "rank1_member": list(self.rank1_member.coeffs) if self.rank1_member else None,
            "hypothesis_holds": self.hypothesis_holds,
        }


def pencil_members(C: Conic, D: Conic):
    """The n+1 members of the pencil spanned by two distinct conics."""
    F = C.field
    out = []
    for mu in F.elements():
        out.append(Conic(F, tuple(F.add(c, F.mul(mu, d)) for c, d in zip(C.coeffs, D.coeffs))))
    out.append(D)
    return out


def no_external_points(C: Conic, pts_c: PointSet, pts_d: PointSet) -> bool:
    """Whether every point of D minus C avoids the external points of C."""
    plane = pts_c.space
    for pi in (pts_d - pts_c).indices():
        if C.classify_point(plane.point(pi)) == PointClass.EXTERNAL:
            return False
    return True


def classify_pair(C: Conic, D: Conic, pts_c: PointSet | None = None, pts_d: PointSet | None = None) -> PencilReport:
    """Intersection pattern, pencil type and rank-1 member of a pair of
    distinct irreducible conics, plus whether D\\C avoids the external
    points of C."""
    if C.field != D.field:
        raise ValueError("conics live over different fields")
    if C == D:
        raise CoincidentConics("the two conics coincide")
    if C.rank() != 3 or D.rank() != 3:
        raise SingularConic("pencil classification needs irreducible conics")
    plane = C.plane
    if pts_c is None:
        pts_c = C.points()
    if pts_d is None:
        pts_d = D.points()
    common = [plane.point(i) for i in (pts_c & pts_d).indices()]
    rank1 = next((E for E in pencil_members(C, D) if E.rank() == 1), None)
    if rank1 is None:
        ptype = PencilType.OTHER
    elif len(common) == 2:
        ptype = PencilType.BITANGENT_REAL
    elif len(common) == 0:
        ptype = PencilType.BITANGENT_CONJUGATE
    elif len(common) == 1:
        ptype = PencilType.HYPEROSCULATING
    else:
        ptype = PencilType.OTHER
    hyp = no_external_points(C, pts_c, pts_d)
    return PencilReport((C, D), common, ptype, rank1, hyp)


# -- canonical pencil cases -----------------------------------------------------


def admissible_ks(F: GF, case: int, alpha: int | None = None):
    """Parameters k for which the canonical pair of the given case satisfies
    the internal-points hypothesis in both directions.

    Case 1 (bitangent, real): k a nonzero square, k-1 and k(k-1) non-squares.
    Case 2 (bitangent, conjugate): k a nonzero square != 1, k-1 a nonzero square.
    Case 3 (hyperosculating): k a non-square.
    """
    if case == 1:
        return [
            k
            for k in F.squares()
            if k != 1
            and not F.is_square(F.sub(k, 1))
            and not F.is_square(F.mul(k, F.sub(k, 1)))
        ]
    if case == 2:
        return [k for k in F.squares() if k != 1 and F.sub(k, 1) != 0 and F.is_square(F.sub(k, 1))]
    if case == 3:
        return F.nonsquares()
    raise ValueError(f"unknown case {case}")


def canonical_case_pair(F: GF, case: int, k: int, alpha: int | None = None):
    """The canonical conic pair of a case: (2xy=z^2, 2xy=kz^2) or
    (x^2-ay^2=z^2, x^2-ay^2=kz^2) or (2yz=x^2, 2yz=x^2+kz^2)."""
    if case == 1:
        return canonical_pencil(F, PencilKind.HYPERBOLIC, 1), canonical_pencil(F, PencilKind.HYPERBOLIC, k)
    if case == 2:
        return (
            canonical_pencil(F, PencilKind.ELLIPTIC, 1, alpha),
            canonical_pencil(F, PencilKind.ELLIPTIC, k, alpha),
        )
    if case == 3:
        return canonical_pencil(F, PencilKind.PARABOLIC, 0), canonical_pencil(F, PencilKind.PARABOLIC, k)
    raise ValueError(f"unknown case {case}")


def case_residual_formula(F: GF, case: int, k: int, alpha: int | None = None):
    """Closed-form list of the cone-intersection residual of a case pair,
    in canonical index order.  Case 3 has an empty residual."""
    space = projective_space(F, 5)
    pts = set()
    if case == 1:
        omk = F.sub(1, k)
        for b in F.units():
            pts.add(
                space.normalize(
                    (
                        omk,
                        F.mul(omk, F.mul(b, b)),
                        F.mul(F.add(k, k), b),
                        F.neg(F.mul(F.add(k, 1), b)),
                        0,
                        0,
                    )
                )
            )
    elif case == 2:
        if alpha is None:
            alpha = min(F.nonsquares())
        for b in F.units():
            b2 = F.mul(b, b)
            pts.add(
                space.normalize(
                    (
                        F.sub(alpha, F.mul(k, b2)),
                        F.mul(alpha, F.sub(b2, F.mul(alpha, k))),
                        F.mul(k, F.sub(b2, alpha)),
                        F.mul(F.mul(alpha, b), F.sub(1, k)),
                        0,
                        0,
                    )
                )
            )
        pts.add(space.normalize((k, F.neg(alpha), F.neg(k), 0, 0, 0)))
        pts.add(space.normalize((1, F.neg(F.mul(alpha, k)), F.neg(k), 0, 0, 0)))
    elif case != 3:
        raise ValueError(f"unknown case {case}")
    return [space.point(i) for i in sorted(space.index(P) for P in pts)]


def case1_exceptional_vpoints(F: GF, k: int, beta: int):
    """The pair of PG(5,q) points spanning the line that decides whether two
    case-1 exceptional conics can share a unital."""
    omk = F.sub(1, k)
    two_k = F.add(k, k)
    kp1 = F.add(k, 1)
    p1 = (omk, omk, two_k, F.neg(kp1), 0, 0)
    pb = (omk, F.mul(omk, F.mul(beta, beta)), F.mul(two_k, beta), F.neg(F.mul(beta, kp1)), 0, 0)
    return p1, pb


# -- conic enumeration inside a point set ----------------------------------------


def _unique_tangents(S: PointSet):
    """Map point index -> dual of the unique 1-point line through it, or
    None when some point lacks one."""
    plane = S.space
    out = {}
    for pi in S.indices():
        tls = [li for li in plane.point_lines[pi] if (plane.line_masks[li] & S.mask).bit_count() == 1]
        if len(tls) != 1:
            return None
        out[pi] = plane.point(tls[0])
    return out


def _contained_checker(S: PointSet):
    """Vectorised predicate: does a coefficient tuple vanish nowhere off S?"""
    plane = S.space
    F = plane.field
    comp = np.array(S.complement().indices(), dtype=np.int64)
    mon = _monomials(plane)[comp]
    add, mul = F.add_table, F.mul_table

    def contained(coeffs):
        acc = mul[coeffs[0], mon[:, 0]].astype(np.int64)
        for j in range(1, 6):
            if coeffs[j]:
                acc = add[acc, mul[coeffs[j], mon[:, j]].astype(np.int64)].astype(np.int64)
        return not (acc == 0).any()

    return contained


def _conics_contained_exhaustive(S: PointSet):
    """Oracle: sweep every normalised coefficient tuple over the field and
    keep the irreducible ones whose zero set lies inside S."""
    plane = S.space
    F = plane.field
    space5 = projective_space(F, 5)
    arr = space5.coords_array()
    cols = [np.ascontiguousarray(arr[:, j]) for j in range(6)]
    mon = _monomials(plane)
    add, mul = F.add_table, F.mul_table
    alive = np.arange(space5.npoints, dtype=np.int64)
    for ci in S.complement().indices():
        row = mon[ci]
        acc = mul[int(row[0]), cols[0][alive]].astype(np.int64)
        for j in range(1, 6):
            if row[j]:
                acc = add[acc, mul[int(row[j]), cols[j][alive]].astype(np.int64)].astype(np.int64)
        alive = alive[acc != 0]
        if len(alive) == 0:
            return []
    out = []
    for i in alive:
        C = Conic(F, space5.point(int(i)))
        if C.is_irreducible:
            out.append(C)
    return out


def _conics_contained_pencils(S: PointSet, tangents):
    """Output-sensitive search: for every point pair of S, the conics
    tangent at both points to the set's own tangent lines form a pencil;
    scan its members for irreducible conics contained in S."""
    plane = S.space
    F = plane.field
    space5 = projective_space(F, 5)
    contained = _contained_checker(S)
    two = F.add(1, 1)
    idxs = S.indices()
    found = {}
    seen = set()
    from .gf import nullspace

    def point_row(P):
        x, y, z = P
        row = [F.mul(x, x), F.mul(y, y), F.mul(z, z), F.mul(x, y), F.mul(x, z), F.mul(y, z)]
        row[3:] = [F.mul(two, c) for c in row[3:]]
        return row

    def flag_rows(P, L):
        x, y, z = P
        u = ((x, 0, 0, y, z, 0), (0, y, 0, x, 0, z), (0, 0, z, 0, x, y))
        rows = []
        for a, b in ((0, 1), (0, 2), (1, 2)):
            rows.append(tuple(F.sub(F.mul(L[b], ua), F.mul(L[a], ub)) for ua, ub in zip(u[a], u[b])))
        return rows

    for ii, pi in enumerate(idxs):
        Pi = plane.point(pi)
        rows_i = [point_row(Pi)] + flag_rows(Pi, tangents[pi])
        for pj in idxs[ii + 1 :]:
            Pj = plane.point(pj)
            rows = rows_i + [point_row(Pj)] + flag_rows(Pj, tangents[pj])
            basis = nullspace(F, rows)
            if not basis or len(basis) > 3:
                continue
            for coeffs in _span_coeffs(F, basis):
                C = Conic(F, coeffs)
                if C.coeffs in seen:
                    continue
                seen.add(C.coeffs)
                if contained(C.coeffs) and C.rank() == 3:
                    found[space5.index(C.coeffs)] = C
    return [found[i] for i in sorted(found)]


def _span_coeffs(F: GF, basis):
    """Normalised representatives of the projective points spanned by up to
    three independent coefficient vectors."""
    if len(basis) == 1:
        yield basis[0]
        return
    if len(basis) == 2:
        b1, b2 = basis
        yield b2
        for lam in F.elements():
            yield tuple(F.add(x, F.mul(lam, y)) for x, y in zip(b1, b2))
        return
    b1, b2, b3 = basis
    for mu in F.elements():
        for lam in F.elements():
            yield tuple(
                F.add(x, F.add(F.mul(lam, y), F.mul(mu, z))) for x, y, z in zip(b1, b2, b3)
            )
    yield b2
    for lam in F.elements():
        yield tuple(F.add(y, F.mul(lam, z)) for y, z in zip(b2, b3))
    yield b3


def conics_contained(S: PointSet, method: str = "auto"):
    """Every irreducible conic whose point set lies inside S, each exactly
    once, in canonical order.

    "pencil" uses the output-sensitive tangent-flag search (needs a unique
    tangent line at every point of S, as in a unital or a single conic);
    "exhaustive" sweeps all coefficient tuples and is the oracle for
    plane order <= 25.
    """
    plane = S.space
    F = plane.field
    if F.p == 2:
        raise EvenCharacteristicUnsupported("conic enumeration uses the rank form")
    if method == "auto":
        tangents = _unique_tangents(S)
        if tangents is not None:
            return _conics_contained_pencils(S, tangents)
        if F.order <= 25:
            return _conics_contained_exhaustive(S)
        raise ValueError("no unique tangents and plane too large for the exhaustive sweep")
    if method == "exhaustive":
        return _conics_contained_exhaustive(S)
    if method == "pencil":
        tangents = _unique_tangents(S)
        if tangents is None:
            raise ValueError("some point of S has no unique tangent line")
        return _conics_contained_pencils(S, tangents)
    raise ValueError(f"unknown method {method!r}")


# -- difference-set searches -----------------------------------------------------


@dataclass
class DiffSetReport:
    klass: str
    max_size: int
    witnesses: list
    all_maximal_are_cosets: bool | None = None
    zero_convention: str | None = None

    def to_json(self):
        return {
            "class": self.klass,
            "max_size": self.max_size,
            "witnesses": [list(w) for w in self.witnesses],
            "all_maximal_are_cosets": self.all_maximal_are_cosets,
            "zero_convention": self.zero_convention,
        }


def _max_cliques(vertices, adjacent):
    """All maximum cliques of a graph, by ordered branch-and-bound."""
    vertices = sorted(vertices)
    best: list = []
    found: list = []

    def extend(clique, cands):
        nonlocal best, found
        if len(clique) + len(cands) < len(best):
            return
        if not cands:
            if len(clique) > len(best):
                best = list(clique)
                found = [tuple(clique)]
            elif len(clique) == len(best):
                found.append(tuple(clique))
            return
        for i, v in enumerate(cands):
            rest = [w for w in cands[i + 1 :] if adjacent(v, w)]
            if len(clique) + 1 + len(rest) < len(best):
                continue
            extend(clique + [v], rest)

    extend([], vertices)
    return len(best), sorted(set(found))


def lemma1_search(F: GF) -> DiffSetReport:
    """Largest subsets of the nonzero squares whose pairwise differences are
    all non-squares, by exact clique search."""
    verts = F.squares()

    def adjacent(a, b):
        return not F.is_square(F.sub(a, b))

    size, witnesses = _max_cliques(verts, adjacent)
    return DiffSetReport("nonzero_squares", size, witnesses)


def lemma2_search(F: GF) -> DiffSetReport:
    """Largest pairwise-non-square-difference subsets of the non-squares.

    A size-q witness necessarily contains 0 (a strictly non-square set of
    that size cannot exist), so the ground set is the non-squares plus 0 and
    the report records which zero convention the coset match uses.
    """
    from .gf import _isqrt_exact

    q = _isqrt_exact(F.order)
    if q is None:
        raise ValueError("lemma2 search needs a square plane order")
    verts = [0] + F.nonsquares()

    def adjacent(a, b):
        return not F.is_square(F.sub(a, b))

    size, witnesses = _max_cliques(verts, adjacent)
    subfield = F.subfield_elements(q)
    cosets_ok = True
    includes_zero = all(0 in w for w in witnesses)
    for w in witnesses:
        t = next((x for x in w if x), None)
        coset = set(F.mul(t, u) for u in subfield) if t is not None else set()
        if set(w) != coset or (t is not None and F.is_square(t)):
            cosets_ok = False
    convention = "includes_zero" if includes_zero else "excludes_zero"
    return DiffSetReport("non_squares", size, witnesses, cosets_ok, convention)


# -- the trichotomy check ---------------------------------------------------------


@dataclass
class AfklReport:
    order: int
    exhaustive_pairs: int
    hypothesis_pairs: int
    symmetric_pairs: int
    sampled_pairs: int
    violations: list

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "order": self.order,
            "exhaustive_pairs": self.exhaustive_pairs,
            "hypothesis_pairs": self.hypothesis_pairs,
            "symmetric_pairs": self.symmetric_pairs,
            "sampled_pairs": self.sampled_pairs,
            "violations": [v.to_json() for v in self.violations],
            "ok": self.ok,
        }


def random_invertible(F: GF, rng: random.Random):
    while True:
        M = tuple(tuple(rng.randrange(F.order) for _ in range(3)) for _ in range(3))
        if det3(F, M) != 0:
            return M


def _transform_points(plane, M, pts: PointSet) -> PointSet:
    F = plane.field
    if det3(F, M) == 0:
        raise ValueError("transform needs an invertible matrix")
    from .geom import matvec3

    out = 0
    for pi in pts.indices():
        out |= 1 << plane.index(plane.normalize(matvec3(F, M, plane.point(pi))))
    return PointSet(plane, out)


def verify_afkl(F: GF, samples: int = 0, seed: int = 0) -> AfklReport:
    """Check the conic-pair trichotomy: every ordered pair of distinct
    irreducible conics for which D\\C avoids the external points of C must
    span a pencil of one of the three classes (a rank-1 member with the
    matching intersection pattern).

    The hypothesis alone does not force C\\D to be internal to D: over
    GF(25) the pair (2xy=z^2, 2xy=kz^2) with k-1 and k both non-squares has
    D\\C internal to C while C\\D is external to D (tangent-count check).
    The symmetric conclusion belongs to pairs satisfying the hypothesis in
    both directions, as conic pairs inside a common unital always do; the
    report counts those separately.

    All ordered pairs drawn from the three canonical families are checked
    exhaustively; ``samples`` extra hypothesis-satisfying pairs are produced
    by applying seeded random collineations to admissible canonical pairs.
    Fields of order below 17 are refused: the statement is not claimed there.
    """
    n = F.order
    if n < 17:
        raise FieldTooSmall(f"the trichotomy is stated for orders >= 17, got {n}")
    if F.p == 2:
        raise EvenCharacteristicUnsupported("the trichotomy concerns odd order")
    plane = projective_plane(F)
    alpha = min(F.nonsquares())
    conics = [canonical_pencil(F, PencilKind.HYPERBOLIC, k) for k in F.units()]
    conics += [canonical_pencil(F, PencilKind.ELLIPTIC, k, alpha) for k in F.units()]
    conics += [canonical_pencil(F, PencilKind.PARABOLIC, k) for k in F.elements()]
    pts = {C: C.points() for C in conics}
    violations = []
    checked = 0
    hyp_pairs = 0
    sym_pairs = 0
    for C in conics:
        for D in conics:
            if C == D:
                continue
            checked += 1
            if not no_external_points(C, pts[C], pts[D]):
                continue
            hyp_pairs += 1
            rep = classify_pair(C, D, pts[C], pts[D])
            if rep.ptype == PencilType.OTHER:
                violations.append(rep)
            if no_external_points(D, pts[D], pts[C]):
                sym_pairs += 1
    rng = random.Random(seed)
    cases = [(c, admissible_ks(F, c, alpha)) for c in (1, 2, 3)]
    cases = [(c, ks) for c, ks in cases if ks]
    sampled = 0
    for _ in range(samples):
        case, ks = cases[rng.randrange(len(cases))]
        k = ks[rng.randrange(len(ks))]
        C0, D0 = canonical_case_pair(F, case, k, alpha)
        M = random_invertible(F, rng)
        C1, D1 = C0.transform(M), D0.transform(M)
        pc = _transform_points(plane, M, C0.points())
        pd = _transform_points(plane, M, D0.points())
        sampled += 1
        rep = classify_pair(C1, D1, pc, pd)
        # admissible-case pairs satisfy the hypothesis in both directions,
        # so here the symmetric conclusion is part of the assertion
        if (
            not rep.hypothesis_holds
            or rep.ptype == PencilType.OTHER
            or not no_external_points(D1, pd, pc)
        ):
            violations.append(rep)
    return AfklReport(n, checked, hyp_pairs, sym_pairs, sampled, violations)


# -- the union-of-conics certificate ----------------------------------------------


@dataclass
class UnionCertificate:
    q: int
    q_odd: bool
    covered: bool
    signature: str | None
    conics: list
    base_point: tuple | None = None
    tangent: tuple | None = None
    parameters: list | None = None
    parameter_coset_ok: bool | None = None
    parameter_characters_ok: bool | None = None
    pair_types: list | None = None
    uncovered: list | None = None
    notes: list | None = None

    def to_json(self):
        return {
            "q": self.q,
            "q_odd": self.q_odd,
            "covered": self.covered,
            "signature": self.signature,
            "conics": [list(C.coeffs) for C in self.conics],
            "base_point": list(self.base_point) if self.base_point else None,
            "tangent": list(self.tangent) if self.tangent else None,
            "parameters": self.parameters,
            "parameter_coset_ok": self.parameter_coset_ok,
            "parameter_characters_ok": self.parameter_characters_ok,
            "pair_types": self.pair_types,
            "uncovered": self.uncovered,
            "notes": self.notes,
        }


def _ovals_contained_even(S: PointSet):
    """Irreducible conics (ovals) inside a point set over an even-order
    field, by exhaustive coefficient sweep."""
    plane = S.space
    F = plane.field
    space5 = projective_space(F, 5)
    arr = space5.coords_array()
    cols = [np.ascontiguousarray(arr[:, j]) for j in range(6)]
    mon = _monomials(plane)
    add, mul = F.add_table, F.mul_table
    alive = np.arange(space5.npoints, dtype=np.int64)
    for ci in S.complement().indices():
        row = mon[ci]
        acc = mul[int(row[0]), cols[0][alive]].astype(np.int64)
        for j in range(1, 6):
            if row[j]:
                acc = add[acc, mul[int(row[j]), cols[j][alive]].astype(np.int64)].astype(np.int64)
        alive = alive[acc != 0]
        if len(alive) == 0:
            return []
    out = []
    for i in alive:
        C = Conic(F, space5.point(int(i)))
        if C.is_irreducible:
            out.append(C)
    return out


def _pencil_parameter(F: GF, base, tangent_sq, Ci: Conic):
    """Parameter a with Ci ~ base + a * tangent_sq, or None when Ci is not
    in that pencil."""
    from .gf import nullspace

    rows = [(base[r], tangent_sq[r], F.neg(Ci.coeffs[r])) for r in range(6)]
    ns = nullspace(F, rows)
    if len(ns) != 1:
        return None
    mu, a, rho = ns[0]
    if mu == 0 or rho == 0:
        return None
    return F.div(a, mu)


def certify_union_of_conics(S: PointSet) -> UnionCertificate:
    """Certificate that a unital is, or is not, a union of conics of the
    hyperosculating (BEHS) kind.

    For odd q: enumerate the conics inside S, check they cover S, pairwise
    classify them (all hyperosculating through one base point with a common
    tangent), and test that the pencil parameters form a coset t*GF(q) whose
    nonzero members all have non-square character after the determinant
    normalisation.  For even q: no irreducible conic can be contained at
    all, since its nucleus would collect q^2+1 tangent lines.
    """
    from .unital import NotAUnital

    report = is_unital(S)
    if not report.is_unital:
        raise NotAUnital("certificate requires a verified unital")
    plane = S.space
    F = plane.field
    q = report.q
    notes = []
    if F.p == 2:
        conics = _ovals_contained_even(S)
        covered = bool(conics) and PointSet(
            plane, int(np.bitwise_or.reduce([C.points().mask for C in conics])) if conics else 0
        ).mask == S.mask
        if not conics:
            notes.append(
                "no irreducible conic lies in the unital; a contained conic would "
                f"put q^2+1 = {q*q+1} tangents through its nucleus, but at most q+1 = {q+1} "
                "tangents meet in any point"
            )
        return UnionCertificate(q, False, covered, None, conics, notes=notes)

    conics = conics_contained(S)
    if not conics:
        return UnionCertificate(q, True, False, None, [], notes=["no conics contained in the unital"])
    union = 0
    for C in conics:
        union |= C.points().mask
    covered = union == S.mask
    if not covered:
        uncovered = PointSet(plane, S.mask & ~union).indices()
        return UnionCertificate(q, True, False, None, conics, uncovered=uncovered)

    pair_types = []
    base_idx = None
    structure_ok = True
    for i in range(len(conics)):
        for j in range(i + 1, len(conics)):
            rep = classify_pair(conics[i], conics[j])
            pair_types.append(rep.ptype.value)
            if rep.ptype != PencilType.HYPEROSCULATING or not rep.hypothesis_holds:
                structure_ok = False
                continue
            b = plane.index(rep.common_points[0])
            if base_idx is None:
                base_idx = b
            elif base_idx != b:
                structure_ok = False
    if not structure_ok or base_idx is None:
        return UnionCertificate(
            q, True, covered, None, conics, pair_types=pair_types,
            notes=["pairwise structure is not a hyperosculating family with one base point"],
        )
    base = plane.point(base_idx)
    tangent = conics[0].tangent_at(base)
    if any(C.tangent_at(base) != tangent for C in conics[1:]):
        return UnionCertificate(
            q, True, covered, None, conics, base_point=base, pair_types=pair_types,
            notes=["contained conics do not share the tangent at the base point"],
        )
    tangent_sq = veronese_point(F, *tangent)
    base_conic = conics[0]
    params = []
    for C in conics:
        a = _pencil_parameter(F, base_conic.coeffs, tangent_sq, C)
        if a is None:
            return UnionCertificate(
                q, True, covered, None, conics, base_point=base, tangent=tangent,
                pair_types=pair_types, notes=["contained conics do not lie in one pencil"],
            )
        params.append(a)
    params_sorted = sorted(params)
    t = next((x for x in params_sorted if x), None)
    coset_ok = (
        len(params) == q
        and len(set(params)) == q
        and 0 in params
        and t is not None
        and set(params) == {F.mul(t, u) for u in F.subfield_elements(q)}
    )
    det0 = base_conic.det()
    chars_ok = all(
        F.quadratic_character(F.mul(det0, x)) == QuadraticCharacter.NON_SQUARE
        for x in params_sorted
        if x
    )
    signature = "BEHS" if (coset_ok and chars_ok) else None
    return UnionCertificate(
        q,
        True,
        covered,
        signature,
        conics,
        base_point=base,
        tangent=tangent,
        parameters=params_sorted,
        parameter_coset_ok=coset_ok,
        parameter_characters_ok=chars_ok,
        pair_types=pair_types,
    )
