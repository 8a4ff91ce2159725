"""Exact rational convex polytopes from facet inequalities.

A polytope is {y in R^n : <a_i, y> <= b_i} with rational data; the stored
a_i are outward normals.  Vertex enumeration solves every n-subset of facet
equations exactly, which is the right trade below ~30 facets.  On top of the
vertex/facet incidence this module builds the full face lattice, f- and
h-vectors, central-symmetry detection, the normal fan (primitive inward
normals, so downstream linear forms are integral), and the hyperplane slice
that realizes reduction by a subtorus at the level of moment polytopes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from . import linalg
from .linalg import Vec, dot, fvec, vsub
from .ratfun import Poly
from .toric import SimplicialFan


class PolytopeError(Exception):
    pass


class UnboundedError(PolytopeError):
    """The inequality system has a nontrivial recession cone."""


class DegenerateError(PolytopeError):
    """Too few facets, empty interior, or less than full dimension."""


class NotSimpleError(PolytopeError):
    """Some vertex lies on more than dim-many facets."""


class IncompatibleInvolutionError(PolytopeError):
    """Involution or subtorus data does not match the polytope."""


class SliceNotSimpleError(PolytopeError):
    """The reduced polytope fails to be simple."""


@dataclass(frozen=True)
class RegularValueReport:
    """Outcome of the zero-level transversality check.

    Each violation is (face_dim, tight_facet_indices, projected_rank).
    """

    ok: bool
    violations: tuple[tuple[int, tuple[int, ...], int], ...] = ()
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok


class RegularValueViolation(PolytopeError):
    def __init__(self, report: RegularValueReport):
        self.report = report
        if report.violations:
            dim, facets, rk = report.violations[0]
            msg = (
                f"zero level meets the relative interior of a face of dimension {dim} "
                f"(tight facets {list(facets)}) whose direction space projects with rank {rk}"
            )
        else:
            msg = report.note or "zero is not a regular value"
        super().__init__(msg)


@dataclass(frozen=True)
class Face:
    dim: int
    vertices: frozenset[int]
    tight_facets: frozenset[int]


@dataclass(frozen=True)
class FaceLattice:
    """All nonempty faces, vertices up to the polytope itself, sorted by
    (dimension, vertex set)."""

    faces: tuple[Face, ...]

    def of_dim(self, d: int) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.dim == d)

    def __iter__(self):
        return iter(self.faces)

    def __len__(self):
        return len(self.faces)


def _solve_subset(normals, offsets, idxs) -> Vec | None:
    A = [normals[i] for i in idxs]
    b = [offsets[i] for i in idxs]
    return linalg.solve_square(A, b)


def _check_bounded(normals, dim):
    # A line in the recession cone shows up as a kernel vector of all normals.
    if linalg.rank(normals) < dim:
        raise UnboundedError("facet normals do not span; the polyhedron contains a line")
    # Otherwise the recession cone is pointed; if nontrivial it has an
    # extreme ray cut out by dim-1 independent normals.
    for subset in combinations(range(len(normals)), dim - 1):
        rows = [normals[i] for i in subset]
        kern = linalg.kernel_basis(rows, dim)
        if len(kern) != 1:
            continue
        ray = kern[0]
        for cand in (ray, linalg.vneg(ray)):
            if all(dot(a, cand) <= 0 for a in normals):
                raise UnboundedError(f"recession direction {cand}")


def _enumerate_vertices(normals, offsets):
    """All vertices with their tight facet sets, lexicographically sorted.

    Raises DegenerateError when the system has no chance of being a
    full-dimensional bounded polytope, UnboundedError when unbounded.
    """
    m = len(normals)
    dim = len(normals[0])
    if m < dim + 1:
        raise DegenerateError(f"{m} facets cannot bound a {dim}-dimensional polytope")
    _check_bounded(normals, dim)
    found = {}
    for subset in combinations(range(m), dim):
        y = _solve_subset(normals, offsets, subset)
        if y is None or y in found:
            continue
        if all(dot(a, y) <= b for a, b in zip(normals, offsets)):
            found[y] = None
    vertices = sorted(found)
    if not vertices:
        raise DegenerateError("empty polytope")
    tight = [
        frozenset(i for i in range(m) if dot(normals[i], y) == offsets[i])
        for y in vertices
    ]
    if linalg.affine_rank(vertices) < dim:
        raise DegenerateError("polytope is not full-dimensional")
    return tuple(vertices), tuple(tight)


def _build_face_lattice(dim, vertices, tight_sets, num_facets, validate_facets=True):
    facet_sets = [
        frozenset(v for v, ts in enumerate(tight_sets) if f in ts)
        for f in range(num_facets)
    ]
    if validate_facets:
        for f, vs in enumerate(facet_sets):
            if not vs or linalg.affine_rank([vertices[i] for i in vs]) != dim - 1:
                raise PolytopeError(
                    f"facet {f} is not supported on a face of dimension {dim - 1}; "
                    "redundant or duplicated inequality"
                )
    all_v = frozenset(range(len(vertices)))
    face_sets = {all_v}
    frontier = {all_v}
    while frontier:
        new = set()
        for x in frontier:
            for fs in facet_sets:
                y = x & fs
                if y and y not in face_sets:
                    new.add(y)
        face_sets |= new
        frontier = new
    faces = []
    for vs in face_sets:
        d = linalg.affine_rank([vertices[i] for i in vs])
        tf = frozenset(f for f, fs in enumerate(facet_sets) if vs <= fs)
        faces.append(Face(d, vs, tf))
    faces.sort(key=lambda f: (f.dim, tuple(sorted(f.vertices))))
    return FaceLattice(tuple(faces))


class HPolytope:
    """Bounded full-dimensional polytope in facet form, all data rational."""

    def __init__(self, normals, offsets):
        normals = tuple(fvec(a) for a in normals)
        offsets = tuple(Fraction(b) for b in offsets)
        if not normals or len(normals) != len(offsets):
            raise ValueError("need matching nonempty normals and offsets")
        dim = len(normals[0])
        if dim < 1 or any(len(a) != dim for a in normals):
            raise ValueError("inconsistent facet normal lengths")
        if any(linalg.is_zero_vec(a) for a in normals):
            raise ValueError("zero facet normal")
        self.normals = normals
        self.offsets = offsets
        self.dim = dim

    @property
    def num_facets(self) -> int:
        return len(self.normals)

    @cached_property
    def _vertex_data(self):
        return _enumerate_vertices(self.normals, self.offsets)

    @property
    def vertices(self) -> tuple[Vec, ...]:
        return self._vertex_data[0]

    @property
    def vertex_tight_sets(self) -> tuple[frozenset[int], ...]:
        return self._vertex_data[1]

    @cached_property
    def face_lattice(self) -> FaceLattice:
        vertices, tight = self._vertex_data
        return _build_face_lattice(self.dim, vertices, tight, self.num_facets)

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * self.dim
        for face in self.face_lattice:
            if face.dim < self.dim:
                counts[face.dim] += 1
        return tuple(counts)

    def is_simple(self) -> bool:
        return all(len(ts) == self.dim for ts in self.vertex_tight_sets)

    def h_vector(self) -> tuple[int, ...]:
        """(h_0..h_n) from sum_d f_d (t-1)^d = sum_k h_k t^{n-k}, f_n = 1.

        Only defined for simple polytopes, where it gives the even Betti
        numbers of the associated toric variety.
        """
        if not self.is_simple():
            raise NotSimpleError("h-vector is only computed for simple polytopes")
        n = self.dim
        f = self.f_vector() + (1,)
        tm1 = Poly((-1, 1))
        acc = Poly()
        for d, fd in enumerate(f):
            acc = acc + fd * tm1**d
        h = tuple(int(acc.coeff(n - k)) for k in range(n + 1))
        assert h[0] == 1 and h[n] == 1 and h == tuple(reversed(h)), (
            "h-vector of a simple polytope must be a palindrome with ends 1"
        )
        return h

    def central_symmetry_center(self) -> Vec | None:
        """Center c with vertex set invariant under y -> 2c - y, or None."""
        verts = self.vertices
        c = linalg.centroid(verts)
        vset = set(verts)
        twoc = linalg.vscale(2, c)
        if all(vsub(twoc, v) in vset for v in verts):
            return c
        return None

    def contains(self, y) -> bool:
        y = fvec(y)
        return all(dot(a, y) <= b for a, b in zip(self.normals, self.offsets))

    def tight_facets_at(self, y) -> frozenset[int]:
        y = fvec(y)
        if not self.contains(y):
            raise ValueError("point is outside the polytope")
        return frozenset(
            i for i in range(self.num_facets) if dot(self.normals[i], y) == self.offsets[i]
        )

    def translate(self, vec) -> "HPolytope":
        vec = fvec(vec)
        return HPolytope(
            self.normals,
            tuple(b + dot(a, vec) for a, b in zip(self.normals, self.offsets)),
        )

    def affine_image(self, U, tau) -> "HPolytope":
        """Polytope {U y + tau : y in P}; U must be invertible."""
        Uinv = linalg.invert(linalg.fmat(U))
        if Uinv is None:
            raise ValueError("affine image needs an invertible matrix")
        tau = fvec(tau)
        new_normals = [linalg.mat_vec(linalg.transpose(Uinv), a) for a in self.normals]
        new_offsets = [
            b + dot(na, tau) for na, b in zip(new_normals, self.offsets)
        ]
        return HPolytope(new_normals, new_offsets)

    def normal_fan(self) -> SimplicialFan:
        """Complete simplicial fan on the primitive inward facet normals."""
        if not self.is_simple():
            raise NotSimpleError("normal fan construction requires a simple polytope")
        rays = [linalg.primitive_int_vector(linalg.vneg(a)) for a in self.normals]
        if len(set(rays)) != len(rays):
            raise PolytopeError("two facets share an inward normal direction")
        cones = [frozenset(ts) for ts in self.vertex_tight_sets]
        return SimplicialFan(self.dim, rays, cones)

    def __repr__(self) -> str:
        return f"HPolytope(dim={self.dim}, facets={self.num_facets})"


@dataclass(frozen=True)
class AffineInvolution:
    """Affine involution y -> L y + c of the ambient space."""

    linear: linalg.Mat
    translation: Vec

    def __init__(self, linear, translation):
        L = linalg.fmat(linear)
        c = fvec(translation)
        n = len(c)
        if len(L) != n or any(len(row) != n for row in L):
            raise ValueError("involution matrix shape mismatch")
        if not linalg.is_identity(linalg.mat_mul(L, L)):
            raise ValueError("linear part squared is not the identity")
        if not linalg.is_zero_vec(linalg.vadd(linalg.mat_vec(L, c), c)):
            raise ValueError("L c + c != 0; the map is not an involution")
        object.__setattr__(self, "linear", L)
        object.__setattr__(self, "translation", c)

    @property
    def dim(self) -> int:
        return len(self.translation)

    @classmethod
    def negation(cls, n: int) -> "AffineInvolution":
        mat = [[-1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(mat, [0] * n)

    def apply(self, y) -> Vec:
        return linalg.vadd(linalg.mat_vec(self.linear, fvec(y)), self.translation)

    def preserves(self, poly: HPolytope) -> bool:
        verts = set(poly.vertices)
        return all(self.apply(v) in verts for v in verts)


@dataclass(frozen=True)
class SubtorusSpec:
    """Rank-k' subtorus described by a full-rank projection of the ambient
    coordinates; the dual involution must act on it by -1."""

    projection: linalg.Mat

    def __init__(self, projection):
        pi = linalg.fmat(projection)
        if not pi or linalg.rank(pi) != len(pi):
            raise ValueError("projection rows must be independent")
        object.__setattr__(self, "projection", pi)

    @property
    def rank(self) -> int:
        return len(self.projection)

    @property
    def ambient_dim(self) -> int:
        return len(self.projection[0])

    def compatible_with(self, invol: AffineInvolution) -> bool:
        prod = linalg.mat_mul(self.projection, invol.linear)
        return all(
            prod[i][j] == -self.projection[i][j]
            for i in range(self.rank)
            for j in range(self.ambient_dim)
        )


def _validate_reduction_data(P: HPolytope, invol: AffineInvolution, sub: SubtorusSpec):
    if invol.dim != P.dim or sub.ambient_dim != P.dim:
        raise IncompatibleInvolutionError("dimension mismatch between inputs")
    if sub.rank >= P.dim:
        raise IncompatibleInvolutionError("subtorus rank must be smaller than the dimension")
    if not invol.preserves(P):
        raise IncompatibleInvolutionError("involution does not preserve the polytope")
    if not sub.compatible_with(invol):
        raise IncompatibleInvolutionError(
            "dual involution does not act by -1 on the subtorus (pi L != -pi)"
        )


def _slice_frame(invol: AffineInvolution, sub: SubtorusSpec):
    """Level s = pi c / 2 fixed by the involution, a rational base point on
    the slice, and an integral basis of ker(pi)."""
    pi = sub.projection
    s = linalg.vscale(Fraction(1, 2), linalg.mat_vec(pi, invol.translation))
    gram = linalg.mat_mul(pi, linalg.transpose(pi))
    ginv = linalg.invert(gram)
    assert ginv is not None
    y0 = linalg.mat_vec(linalg.transpose(pi), linalg.mat_vec(ginv, s))
    int_rows = linalg.clear_row_denominators(pi)
    basis = linalg.kernel_lattice_basis(int_rows, sub.ambient_dim)
    return s, y0, tuple(tuple(x) for x in basis)


def _slice_inequalities(P: HPolytope, y0: Vec, basis):
    """Facet system of P cut down to slice coordinates y = y0 + B^T x.

    Returns (normals, offsets, feasible); inequalities whose normal dies on
    the slice are dropped (feasible=False when one of them is violated).
    """
    groups: dict[tuple[int, ...], Fraction] = {}
    for a, b in zip(P.normals, P.offsets):
        na = tuple(dot(row, a) for row in basis)
        off = b - dot(a, y0)
        if linalg.is_zero_vec(na):
            if off < 0:
                return (), (), False
            continue
        prim = linalg.primitive_int_vector(na)
        scale = next(Fraction(p, int(x)) for p, x in zip(prim, na) if x != 0)
        off = off * scale
        key = prim
        if key not in groups or off < groups[key]:
            groups[key] = off
    normals = tuple(fvec(k) for k in sorted(groups))
    offsets = tuple(groups[k] for k in sorted(groups))
    return normals, offsets, True


def check_regular_value(
    P: HPolytope, invol: AffineInvolution, sub: SubtorusSpec
) -> RegularValueReport:
    """Zero is regular iff every face of P whose relative interior meets the
    slice projects onto the subtorus directions with full rank."""
    _validate_reduction_data(P, invol, sub)
    _, y0, basis = _slice_frame(invol, sub)
    normals, offsets, feasible = _slice_inequalities(P, y0, basis)
    if not feasible:
        return RegularValueReport(False, (), "slice misses the polytope")
    qdim = P.dim - sub.rank
    try:
        verts, tights = _enumerate_vertices(normals, offsets)
    except DegenerateError as exc:
        return RegularValueReport(False, (), f"degenerate slice: {exc}")
    lattice = _build_face_lattice(qdim, verts, tights, len(normals), validate_facets=False)
    bt = linalg.transpose(linalg.fmat(basis))
    pi = sub.projection
    seen: set[frozenset[int]] = set()
    violations = []
    pverts = P.vertices
    ptights = P.vertex_tight_sets
    for face in lattice:
        x = linalg.centroid([verts[i] for i in face.vertices])
        y = linalg.vadd(y0, linalg.mat_vec(bt, x))
        tset = P.tight_facets_at(y)
        if tset in seen:
            continue
        seen.add(tset)
        if not tset:
            continue  # interior point; the projection has full rank by assumption
        members = [pverts[i] for i in range(len(pverts)) if tset <= ptights[i]]
        base = members[0]
        projected = [linalg.mat_vec(pi, vsub(v, base)) for v in members[1:]]
        rk = linalg.rank(projected) if projected else 0
        if rk != sub.rank:
            fdim = linalg.affine_rank(members)
            violations.append((fdim, tuple(sorted(tset)), rk))
    violations.sort()
    return RegularValueReport(not violations, tuple(violations))


def slice_reduce(P: HPolytope, invol: AffineInvolution, sub: SubtorusSpec):
    """Cut P by the involution-fixed level of the subtorus projection.

    Returns (Q, iota, basis): the slice polytope in integral coordinates on
    ker(pi), the restricted involution there, and the (n-k') x n basis
    matrix of the slice directions.
    """
    report = check_regular_value(P, invol, sub)
    if not report.ok:
        raise RegularValueViolation(report)
    _, y0, basis = _slice_frame(invol, sub)
    normals, offsets, feasible = _slice_inequalities(P, y0, basis)
    assert feasible
    qdim = P.dim - sub.rank
    verts, tights = _enumerate_vertices(normals, offsets)
    keep = []
    for i in range(len(normals)):
        members = [verts[v] for v in range(len(verts)) if i in tights[v]]
        if members and linalg.affine_rank(members) == qdim - 1:
            keep.append(i)
    Q = HPolytope([normals[i] for i in keep], [offsets[i] for i in keep])

    B = linalg.fmat(basis)
    bt = linalg.transpose(B)
    gram = linalg.invert(linalg.mat_mul(B, bt))
    assert gram is not None
    L, c = invol.linear, invol.translation
    lin = linalg.mat_mul(gram, linalg.mat_mul(B, linalg.mat_mul(L, bt)))
    shift = linalg.mat_vec(
        gram,
        linalg.mat_vec(B, vsub(linalg.vadd(linalg.mat_vec(L, y0), c), y0)),
    )
    try:
        iota = AffineInvolution(lin, shift)
    except ValueError as exc:
        raise IncompatibleInvolutionError(f"restricted map is not an involution: {exc}")
    if not iota.preserves(Q):
        raise IncompatibleInvolutionError("restricted involution does not preserve the slice")
    if not Q.is_simple():
        raise SliceNotSimpleError("the sliced polytope is not simple")
    return Q, iota, basis
