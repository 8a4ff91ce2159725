"""Graded trace of a fan automorphism on the cohomology of a complete
simplicial fan, by exact linear algebra.

The model: H^{2*}(X_Sigma; Q) = Q[x_ray] / (I_SR + lsop), where I_SR is
generated by the squarefree monomials on ray sets spanning no cone and the
lsop consists of the n linear forms sum_v <e_j, u_v> x_v.  Rational
coefficients make simplicial (orbifold) fans as good as smooth ones.  An
automorphism acts on the quotient by the induced ray permutation
x_v -> x_{psi(v)}; its trace per degree is read off from an explicit basis
chosen by deterministic row reduction over Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from . import linalg
from .ratfun import Poly


class IncompleteFanError(Exception):
    """The cone data fails the combinatorial completeness checks."""


class InvalidAutomorphismError(Exception):
    """The matrix does not map the fan to itself as a lattice involution."""


class NonIntegralSplitError(Exception):
    """(dim +/- trace)/2 failed to be a non-negative integer."""


@dataclass(frozen=True)
class SimplicialFan:
    """Complete simplicial fan: primitive integer rays plus maximal cones
    given as n-element ray index sets."""

    rank: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[frozenset[int], ...]

    def __init__(self, rank, rays, max_cones):
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        cones = tuple(frozenset(int(i) for i in c) for c in max_cones)
        cones = tuple(sorted(cones, key=sorted))
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        self._validate()

    def _validate(self):
        n = self.rank
        if n < 1:
            raise IncompleteFanError("fan rank must be at least 1")
        if len(set(self.rays)) != len(self.rays):
            raise IncompleteFanError("duplicate rays")
        for r in self.rays:
            if len(r) != n:
                raise IncompleteFanError("ray of wrong length")
            if linalg.primitive_int_vector(r) != r:
                raise IncompleteFanError(f"ray {r} is not primitive")
        if len(set(self.max_cones)) != len(self.max_cones):
            raise IncompleteFanError("duplicate maximal cones")
        used = set()
        for cone in self.max_cones:
            if len(cone) != n:
                raise IncompleteFanError("maximal cone is not full-dimensional")
            if any(i < 0 or i >= len(self.rays) for i in cone):
                raise IncompleteFanError("cone refers to a missing ray")
            if linalg.rank([self.rays[i] for i in cone]) != n:
                raise IncompleteFanError(f"cone {sorted(cone)} has dependent rays")
            used |= cone
        if used != set(range(len(self.rays))):
            raise IncompleteFanError("unused ray")
        # Completeness proxy: every ridge of a maximal cone must be shared by
        # exactly two maximal cones.
        ridge_count: dict[frozenset[int], int] = {}
        for cone in self.max_cones:
            for i in cone:
                ridge = cone - {i}
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        bad = [sorted(rg) for rg, cnt in ridge_count.items() if cnt != 2]
        if bad:
            raise IncompleteFanError(f"ridges not shared by exactly two cones: {bad[:3]}")

    def ray_count(self) -> int:
        return len(self.rays)


class FanAutomorphism:
    """Integer involution of the lattice mapping the fan to itself."""

    def __init__(self, fan: SimplicialFan, matrix):
        n = fan.rank
        mat = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(mat) != n or any(len(row) != n for row in mat):
            raise InvalidAutomorphismError("matrix shape does not match the fan rank")
        sq = [
            [sum(mat[i][k] * mat[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        if any(sq[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
            raise InvalidAutomorphismError("matrix is not an involution")
        index_of = {r: i for i, r in enumerate(fan.rays)}
        perm = []
        for r in fan.rays:
            image = tuple(sum(mat[i][j] * r[j] for j in range(n)) for i in range(n))
            if image not in index_of:
                raise InvalidAutomorphismError(f"ray {r} maps to {image}, not a ray")
            perm.append(index_of[image])
        cone_set = set(fan.max_cones)
        for cone in fan.max_cones:
            if frozenset(perm[i] for i in cone) not in cone_set:
                raise InvalidAutomorphismError(f"cone {sorted(cone)} is not preserved")
        self.fan = fan
        self.matrix = mat
        self.ray_permutation = tuple(perm)

    @classmethod
    def identity(cls, fan: SimplicialFan) -> "FanAutomorphism":
        n = fan.rank
        return cls(fan, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def negation(cls, fan: SimplicialFan) -> "FanAutomorphism":
        n = fan.rank
        return cls(fan, [[-1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_involution_dual(cls, fan: SimplicialFan, linear) -> "FanAutomorphism":
        """Automorphism induced on the ray lattice by the transpose of a
        polytope-side linear involution; entries must be integral."""
        rows = []
        for col in zip(*linear, strict=True):
            row = []
            for x in col:
                f = Fraction(x)
                if f.denominator != 1:
                    raise InvalidAutomorphismError(
                        "involution does not preserve the lattice (non-integer dual matrix)"
                    )
                row.append(int(f))
            rows.append(row)
        return cls(fan, rows)


Monomial = tuple[int, ...]  # weakly increasing ray indices with repetition


class _SRQuotient:
    """Per-degree bases and row-reduced relation data for the SR ring modulo
    the linear system of parameters."""

    def __init__(self, fan: SimplicialFan, lsop_rows=None):
        self.fan = fan
        n = fan.rank
        if lsop_rows is None:
            lsop_rows = linalg.identity(n)
        else:
            lsop_rows = linalg.fmat(lsop_rows)
            if len(lsop_rows) != n or linalg.rank(lsop_rows) != n:
                raise ValueError("lsop matrix must be square and invertible")
        # coefficient of x_v in the j-th linear form
        self.lin = [
            [linalg.dot(lsop_rows[j], linalg.fvec(fan.rays[v])) for v in range(fan.ray_count())]
            for j in range(n)
        ]
        self._adm: dict[frozenset[int], bool] = {}
        self._deg: dict[int, tuple[list[Monomial], dict[Monomial, int], dict[Monomial, dict], list[Monomial]]] = {}

    def admissible(self, support: frozenset[int]) -> bool:
        cached = self._adm.get(support)
        if cached is None:
            cached = any(support <= cone for cone in self.fan.max_cones)
            self._adm[support] = cached
        return cached

    def monomials(self, d: int) -> list[Monomial]:
        if d == 0:
            return [()]
        mons = set()
        for cone in self.fan.max_cones:
            for m in combinations_with_replacement(sorted(cone), d):
                mons.add(m)
        return sorted(mons)

    def _degree_data(self, d: int):
        data = self._deg.get(d)
        if data is not None:
            return data
        mons = self.monomials(d)
        index = {m: i for i, m in enumerate(mons)}
        pivots: dict[Monomial, dict] = {}
        if d > 0:
            n = self.fan.rank
            for m in self.monomials(d - 1):
                for j in range(n):
                    row: dict[Monomial, Fraction] = {}
                    for v in range(self.fan.ray_count()):
                        c = self.lin[j][v]
                        if c == 0:
                            continue
                        key = tuple(sorted(m + (v,)))
                        if not self.admissible(frozenset(key)):
                            continue
                        row[key] = row.get(key, Fraction(0)) + c
                    self._insert_row({k: v for k, v in row.items() if v}, index, pivots)
        basis = [m for m in mons if m not in pivots]
        data = (mons, index, pivots, basis)
        self._deg[d] = data
        return data

    @staticmethod
    def _leading(row: dict, index: dict) -> Monomial:
        return min(row, key=index.__getitem__)

    def _insert_row(self, row: dict, index: dict, pivots: dict):
        # Stored pivot rows carry no other pivot columns, so one subtraction
        # per pivot column present fully reduces the incoming row.
        row = dict(row)
        for k in [k for k in row if k in pivots]:
            f = row.get(k)
            if not f:
                continue
            for kk, vv in pivots[k].items():
                nv = row.get(kk, Fraction(0)) - f * vv
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
        if not row:
            return
        lead = self._leading(row, index)
        f = row[lead]
        row = {k: v / f for k, v in row.items()}
        # keep existing rows fully reduced as well
        for other in pivots.values():
            if lead in other:
                g = other[lead]
                for k, v in row.items():
                    nv = other.get(k, Fraction(0)) - g * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivots[lead] = row

    def reduce(self, vec: dict, d: int) -> dict:
        """Image of a degree-d vector in the chosen quotient basis."""
        _, index, pivots, _ = self._degree_data(d)
        out = dict(vec)
        for k in sorted(vec, key=index.__getitem__):
            c = out.get(k)
            if not c:
                continue
            prow = pivots.get(k)
            if prow is None:
                continue
            for kk, vv in prow.items():
                nv = out.get(kk, Fraction(0)) - c * vv
                if nv:
                    out[kk] = nv
                else:
                    out.pop(kk, None)
        return out

    def dim(self, d: int) -> int:
        mons, _, pivots, _ = self._degree_data(d)
        return len(mons) - len(pivots)

    def basis(self, d: int) -> list[Monomial]:
        return self._degree_data(d)[3]


def sr_cohomology_dims(fan: SimplicialFan, lsop_rows=None) -> tuple[int, ...]:
    """dim H^{2i} for i = 0..n; vanishing above n is asserted."""
    q = _SRQuotient(fan, lsop_rows)
    dims = tuple(q.dim(d) for d in range(fan.rank + 1))
    if q.dim(fan.rank + 1) != 0:
        raise IncompleteFanError(
            "graded quotient does not vanish above the fan rank; the fan is not complete"
        )
    return dims


def graded_trace(fan: SimplicialFan, auto: FanAutomorphism, lsop_rows=None) -> "GradedTrace":
    """Trace of the ray-permutation action on each graded cohomology piece."""
    if auto.fan is not fan and auto.fan.rays != fan.rays:
        raise InvalidAutomorphismError("automorphism belongs to a different fan")
    q = _SRQuotient(fan, lsop_rows)
    perm = auto.ray_permutation
    traces = []
    dims = []
    for d in range(fan.rank + 1):
        basis = q.basis(d)
        dims.append(len(basis))
        tr = Fraction(0)
        for m in basis:
            image = tuple(sorted(perm[i] for i in m))
            red = q.reduce({image: Fraction(1)}, d)
            tr += red.get(m, Fraction(0))
        assert tr.denominator == 1, "trace of an involution must be an integer"
        traces.append(int(tr))
    if q.dim(fan.rank + 1) != 0:
        raise IncompleteFanError(
            "graded quotient does not vanish above the fan rank; the fan is not complete"
        )
    return GradedTrace(tuple(traces), tuple(dims))


@dataclass(frozen=True)
class GradedTrace:
    """Involution traces on H^{2i} for i = 0..n, together with dimensions."""

    traces: tuple[int, ...]
    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.traces) != len(self.dims) or not self.traces:
            raise ValueError("traces and dims must be nonempty and equally long")
        if any(abs(t) > d for t, d in zip(self.traces, self.dims)):
            raise ValueError("a trace exceeds its dimension")
        if self.traces[0] != 1 or self.traces[-1] != 1:
            raise ValueError("trace must be 1 in degree 0 and in the top degree")
        if tuple(reversed(self.traces)) != self.traces:
            raise ValueError("traces must be palindromic")

    @property
    def top(self) -> int:
        return len(self.traces) - 1

    def trace_polynomial(self) -> Poly:
        """sum_i trace_i t^{2i}."""
        coeffs = []
        for t in self.traces:
            coeffs.extend([t, 0])
        return Poly(coeffs[:-1])


@dataclass(frozen=True)
class SignedBettiTable:
    """Per cohomological degree i, the pair (h_plus, h_minus) of dimensions
    of the +1 / -1 eigenspaces of the involution."""

    entries: tuple[tuple[int, int], ...]

    def __init__(self, entries):
        entries = tuple((int(p), int(m)) for p, m in entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("empty signed Betti table")
        if any(p < 0 or m < 0 for p, m in entries):
            raise ValueError("negative entry in signed Betti table")
        if entries[-1] == (0, 0) and len(entries) > 1:
            raise ValueError("top degree of a signed Betti table must be nonzero")
        top = len(entries) - 1
        for i in range(top + 1):
            if self._diff(entries, i) != self._diff(entries, top - i):
                raise ValueError("signed differences must be palindromic in degree")

    @staticmethod
    def _diff(entries, i) -> int:
        p, m = entries[i]
        return p - m

    @classmethod
    def from_graded_trace(cls, gt: GradedTrace) -> "SignedBettiTable":
        entries = []
        for t, d in zip(gt.traces, gt.dims):
            if (d + t) % 2 or (d - t) % 2 or d + t < 0 or d - t < 0:
                raise NonIntegralSplitError(
                    f"cannot split dimension {d} with trace {t} into eigenspaces"
                )
            entries.append(((d + t) // 2, (d - t) // 2))
            entries.append((0, 0))
        return cls(entries[:-1])

    @classmethod
    def point(cls) -> "SignedBettiTable":
        return cls(((1, 0),))

    @property
    def top_degree(self) -> int:
        return len(self.entries) - 1

    def entry(self, i: int) -> tuple[int, int]:
        if 0 <= i <= self.top_degree:
            return self.entries[i]
        return (0, 0)

    def betti(self, i: int) -> int:
        p, m = self.entry(i)
        return p + m

    def diff(self, i: int) -> int:
        p, m = self.entry(i)
        return p - m

    def plus_poly(self) -> Poly:
        return Poly(p for p, _ in self.entries)

    def minus_poly(self) -> Poly:
        return Poly(m for _, m in self.entries)

    def signed_poly(self) -> Poly:
        return Poly(p - m for p, m in self.entries)

    def betti_poly(self) -> Poly:
        return Poly(p + m for p, m in self.entries)


def signed_betti(gt: GradedTrace) -> SignedBettiTable:
    """Split graded traces into (h_plus, h_minus) per cohomological degree."""
    return SignedBettiTable.from_graded_trace(gt)
