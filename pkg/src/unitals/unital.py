"""Unitals of PG(2,q^2): Hermitian and BEHS constructions and the axioms
every unital must satisfy.

A unital is a set of q^3+1 points meeting every line in 1 or q+1 points.
The verifier reports the full line-intersection profile rather than a bare
boolean; the profile doubles as the two-intersection-set witness.
"""

from dataclasses import dataclass, field as dc_field

from .conic import PencilKind, canonical_pencil
from .geom import PointSet, projective_plane
from .gf import GF, _isqrt_exact


class NotASquareOrder(ValueError):
    pass


class EvenQ(ValueError):
    pass


class TIsSquare(ValueError):
    pass


class NotAUnital(ValueError):
    pass


def unital_q(F: GF) -> int:
    """q such that the plane order is q^2."""
    q = _isqrt_exact(F.order)
    if q is None:
        raise NotASquareOrder(f"plane order {F.order} is not a square")
    return q


def hermitian_unital(F: GF) -> PointSet:
    """Absolute points of the diagonal unitary form: the q^3+1 points with
    x^(q+1) + y^(q+1) + z^(q+1) = 0."""
    q = unital_q(F)
    plane = projective_plane(F)
    norm = [F.pow(e, q + 1) for e in F.elements()]
    mask = 0
    for i in range(plane.npoints):
        x, y, z = plane.point(i)
        if F.add(F.add(norm[x], norm[y]), norm[z]) == 0:
            mask |= 1 << i
    return PointSet(plane, mask)


def behs_unital(F: GF, t: int | None = None):
    """Union of the q conics 2yz - x^2 + a z^2 = 0 with a running over
    t*GF(q), t a fixed non-square.  Returns (point set, conic list)."""
    q = unital_q(F)
    if q % 2 == 0:
        raise EvenQ("the conic-union construction needs q odd")
    if t is None:
        t = min(F.nonsquares())
    if F.is_square(t):
        raise TIsSquare(f"t = {t} is a square")
    params = sorted(F.mul(t, u) for u in F.subfield_elements(q))
    conics = [canonical_pencil(F, PencilKind.PARABOLIC, F.neg(a)) for a in params]
    plane = projective_plane(F)
    mask = 0
    for C in conics:
        mask |= C.points().mask
    return PointSet(plane, mask), conics


@dataclass
class UnitalReport:
    is_unital: bool
    q: int
    cardinality: int
    profile: dict
    failures: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "is_unital": self.is_unital,
            "q": self.q,
            "cardinality": self.cardinality,
            "profile": {str(k): self.profile[k] for k in sorted(self.profile)},
            "failures": self.failures,
        }


def is_unital(S: PointSet) -> UnitalReport:
    """Full line-intersection profile of a point set; a unital meets every
    line in 1 or q+1 points and has q^3+1 points."""
    plane = S.space
    q = unital_q(plane.field)
    profile: dict = {}
    failures = []
    for li, lm in enumerate(plane.line_masks):
        size = (S.mask & lm).bit_count()
        profile[size] = profile.get(size, 0) + 1
        if size not in (1, q + 1):
            failures.append(li)
    ok = S.card == q**3 + 1 and not failures
    return UnitalReport(ok, q, S.card, profile, failures)


@dataclass
class TangentReport:
    ok: bool
    q: int
    tangents_per_point: list
    on_profile: dict
    off_profile: dict
    violations: list

    def to_json(self):
        return {
            "ok": self.ok,
            "q": self.q,
            "on_profile": {str(k): self.on_profile[k] for k in sorted(self.on_profile)},
            "off_profile": {str(k): self.off_profile[k] for k in sorted(self.off_profile)},
            "violations": self.violations,
        }


def tangent_structure(S: PointSet) -> TangentReport:
    """Per-point tangent counts of a verified unital: 1 tangent and q^2
    secants on the unital, q+1 tangents and q^2-q secants off it."""
    report = is_unital(S)
    if not report.is_unital:
        raise NotAUnital("tangent structure is only defined for unitals")
    plane = S.space
    q = report.q
    tangent_line = [(S.mask & lm).bit_count() == 1 for lm in plane.line_masks]
    per_point = [sum(1 for li in plane.point_lines[pi] if tangent_line[li]) for pi in range(plane.npoints)]
    on_profile: dict = {}
    off_profile: dict = {}
    violations = []
    for pi, cnt in enumerate(per_point):
        if S.contains(pi):
            on_profile[cnt] = on_profile.get(cnt, 0) + 1
            if cnt != 1:
                violations.append(pi)
        else:
            off_profile[cnt] = off_profile.get(cnt, 0) + 1
            if cnt != q + 1:
                violations.append(pi)
    return TangentReport(not violations, q, per_point, on_profile, off_profile, violations)
