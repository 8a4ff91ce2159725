"""Equivariant Morse counting series for the squared moment map and the
perfection checks against the equivariant Poincare series.

For the full torus acting on a symmetric toric input, the critical data is
computed combinatorially: a face F of the (origin-centered) moment polytope
is critical exactly when the orthogonal projection b_F of the origin onto
its affine hull lies in its relative interior.  The component sitting over
F is a torus orbit with stabilizer rank n - dim F, its index counts the
transverse directions along which |y|^2 decreases, and the involution pairs
F with -F.  For smaller torus actions the critical data is supplied
declaratively and only the series algebra is run here.

Coefficient systems: 'trivial' and 'sign' see the +/- halves of the zero
level; 'regular' is their sum and carries a factor 2 on every paired
component (the rank of the regular representation).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .linalg import dot, fvec, vsub
from .polytope import HPolytope, NotSimpleError, PolytopeError
from .ratfun import Poly, RationalFunction, one_minus_t2_power
from .toric import SignedBettiTable


class NotCentrallySymmetricError(PolytopeError):
    """Full-torus critical data needs a polytope symmetric about the origin."""


class UnpairedComponentError(Exception):
    """A critical component away from the zero level lacks a valid partner."""


class CoefficientSystem(enum.Enum):
    TRIVIAL = "trivial"
    SIGN = "sign"
    REGULAR = "regular"

    @property
    def rep_dim(self) -> int:
        return 2 if self is CoefficientSystem.REGULAR else 1


@dataclass(frozen=True)
class CriticalComponent:
    """One connected critical component away from the zero level."""

    id: str
    index: int
    stab_rank: int
    t_series: RationalFunction
    paired_with: str

    def __post_init__(self):
        if self.index < 0 or self.index % 2 != 0:
            raise ValueError(f"component {self.id}: index must be even and non-negative")
        if self.stab_rank < 0:
            raise ValueError(f"component {self.id}: negative stabilizer rank")
        if self.id == self.paired_with:
            raise ValueError(f"component {self.id} cannot be paired with itself")


@dataclass(frozen=True)
class ZeroLevel:
    """The zero level of the moment map, carried by the signed Betti table
    of the reduced space; its index is 0 and its weight is 1."""

    table0: SignedBettiTable


def _project_origin(points) -> linalg.Vec:
    """Orthogonal projection of the origin onto the affine hull of points."""
    base = fvec(points[0])
    dirs = [vsub(p, base) for p in points[1:]]
    red, _ = linalg.rref(dirs)
    if not red:
        return base
    E = linalg.fmat(red)
    gram = linalg.invert(linalg.mat_mul(E, linalg.transpose(E)))
    assert gram is not None
    lam = linalg.mat_vec(gram, linalg.mat_vec(E, linalg.vneg(base)))
    return linalg.vadd(base, linalg.mat_vec(linalg.transpose(E), lam))


def full_torus_critical_data(P: HPolytope):
    """Critical components of |y|^2 on a simple polytope centered at 0.

    Returns (ZeroLevel, components); the zero level is the face P itself
    (point reduction), every other critical face is paired with its
    antipode, which is always a distinct face.
    """
    center = P.central_symmetry_center()
    if center is None:
        raise NotCentrallySymmetricError("polytope is not centrally symmetric")
    if not linalg.is_zero_vec(center):
        raise NotCentrallySymmetricError(
            f"polytope center {center} is not the origin; translate it first"
        )
    if not P.is_simple():
        raise NotSimpleError("full-torus critical data requires a simple polytope")
    n = P.dim
    verts = P.vertices
    vindex = {v: i for i, v in enumerate(verts)}
    neg_of = {i: vindex[linalg.vneg(v)] for i, v in enumerate(verts)}

    critical = []
    for face in P.face_lattice:
        pts = [verts[i] for i in sorted(face.vertices)]
        b = _project_origin(pts)
        in_relint = True
        for i in range(P.num_facets):
            val = dot(P.normals[i], b)
            if i in face.tight_facets:
                assert val == P.offsets[i]
            elif val >= P.offsets[i]:
                in_relint = False
                break
        if in_relint:
            critical.append((face, b))

    zero = None
    proper = []
    for face, b in critical:
        if face.dim == n:
            assert linalg.is_zero_vec(b)
            zero = ZeroLevel(SignedBettiTable.point())
            continue
        cf = linalg.centroid([verts[i] for i in face.vertices])
        descending = 0
        for up in P.face_lattice.of_dim(face.dim + 1):
            if not face.vertices < up.vertices:
                continue
            v = vsub(linalg.centroid([verts[i] for i in up.vertices]), cf)
            if dot(b, v) < 0:
                descending += 1
        proper.append((face, 2 * descending))
    assert zero is not None, "the origin must be interior, giving the zero level"

    proper.sort(key=lambda fb: (fb[0].dim, tuple(sorted(fb[0].vertices))))
    id_of_vertexset = {
        frozenset(face.vertices): f"c{pos}" for pos, (face, _) in enumerate(proper)
    }
    components = []
    for pos, (face, index) in enumerate(proper):
        mirror = frozenset(neg_of[i] for i in face.vertices)
        partner = id_of_vertexset.get(mirror)
        assert partner is not None, "antipodal face of a critical face must be critical"
        assert partner != f"c{pos}", "a proper critical face can never be self-paired"
        series = RationalFunction(Poly.one(), one_minus_t2_power(n - face.dim))
        components.append(
            CriticalComponent(f"c{pos}", index, n - face.dim, series, partner)
        )
    return zero, tuple(components)


def _validate_pairing(components):
    by_id = {}
    for comp in components:
        if comp.id in by_id:
            raise UnpairedComponentError(f"duplicate component id {comp.id}")
        by_id[comp.id] = comp
    for comp in components:
        partner = by_id.get(comp.paired_with)
        if partner is None:
            raise UnpairedComponentError(
                f"component {comp.id} is paired with missing {comp.paired_with}"
            )
        if partner.paired_with != comp.id:
            raise UnpairedComponentError(
                f"pairing of {comp.id} and {partner.id} is not mutual"
            )
        if partner.index != comp.index or partner.t_series != comp.t_series:
            raise UnpairedComponentError(
                f"paired components {comp.id}, {partner.id} must share index and series"
            )
    return by_id


def counting_series(
    zero: ZeroLevel,
    components,
    rho: CoefficientSystem,
    k: int,
) -> RationalFunction:
    """Morse counting series: the zero-level term plus, for every other
    component, t^index * (1/2) * dim(rho) * (its equivariant series)."""
    if k < 1:
        raise ValueError("torus rank must be positive")
    _validate_pairing(components)
    for comp in components:
        if comp.stab_rank > k:
            raise ValueError(
                f"component {comp.id}: stabilizer rank {comp.stab_rank} exceeds torus rank {k}"
            )
    if rho is CoefficientSystem.TRIVIAL:
        total = RationalFunction(zero.table0.plus_poly())
    elif rho is CoefficientSystem.SIGN:
        total = RationalFunction(zero.table0.minus_poly())
    else:
        total = RationalFunction(zero.table0.betti_poly())
    weight = Fraction(rho.rep_dim, 2)
    for comp in components:
        total = total + comp.t_series * Poly.monomial(comp.index) * weight
    return total


@dataclass(frozen=True)
class PerfectionRow:
    rho: CoefficientSystem
    counting: RationalFunction
    target: RationalFunction
    residue: RationalFunction
    ok: bool
    classification: str  # "exact", "bott-residue", "non-bott-residue"


@dataclass(frozen=True)
class PerfectionReport:
    rows: tuple[PerfectionRow, ...]
    chi_theta: RationalFunction

    @property
    def holds(self) -> bool:
        return all(row.ok for row in self.rows)

    @property
    def verdict(self) -> str:
        return "HOLDS" if self.holds else "VIOLATED"


def _classify_residue(residue: RationalFunction, order: int) -> str:
    """A genuine Morse-Bott discrepancy is (1+t) times a series with
    non-negative integer coefficients; anything else means corrupt input."""
    if residue.is_zero():
        return "exact"
    q = residue / RationalFunction(Poly((1, 1)))
    coeffs = q.series(order).coeffs
    if all(c >= 0 and c.denominator == 1 for c in coeffs):
        return "bott-residue"
    return "non-bott-residue"


def perfection_check(
    zero: ZeroLevel,
    components,
    table: SignedBettiTable,
    k: int,
    expand_order: int | None = None,
) -> PerfectionReport:
    """Counting series against the eigenspace split of the equivariant
    Poincare series, for all three coefficient systems."""
    from .characters import equivariant_split

    plus, minus = equivariant_split(table, k)
    targets = {
        CoefficientSystem.TRIVIAL: plus,
        CoefficientSystem.SIGN: minus,
        CoefficientSystem.REGULAR: plus + minus,
    }
    order = expand_order if expand_order is not None else 2 * table.top_degree + 10
    rows = []
    for rho in CoefficientSystem:
        counting = counting_series(zero, components, rho, k)
        target = targets[rho]
        residue = counting - target
        ok = residue.is_zero()
        if ok and counting.series(order) != target.series(order):
            ok = False  # exact equality and expansion must agree
        rows.append(
            PerfectionRow(rho, counting, target, residue, ok, _classify_residue(residue, order))
        )
    chi = rows[0].counting - rows[1].counting
    return PerfectionReport(tuple(rows), chi)
