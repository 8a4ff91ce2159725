"""Character-level identities tying a manifold-side signed Betti table to
the table of its reduction.

The central object is the graded character chi(t) of the involution acting
on equivariant cohomology.  From the manifold side it is the signed Betti
polynomial divided by (1+t^2)^k; from the reduction side it is the signed
Betti polynomial of the reduced space, a plain polynomial whenever zero is
a regular level.  Both are exact rational functions, so every check below
is a structural equality, and a failed divisibility is itself a meaningful
diagnostic rather than a numerical artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .ratfun import (
    NotDivisibleError,
    Poly,
    RationalFunction,
    exact_divide,
    one_minus_t2_power,
    one_plus_t2_power,
)
from .toric import SignedBettiTable


@dataclass(frozen=True)
class Character:
    """Graded character as an exact rational function in t."""

    value: RationalFunction

    def series(self, order: int) -> Poly:
        return self.value.series(order)

    def is_normalized(self) -> bool:
        """Degree-zero coefficient equals 1, as for any connected space."""
        return self.value.series(0).coeff(0) == 1

    def __str__(self) -> str:
        return str(self.value)


def bt_theta_character(k: int) -> Character:
    """Graded trace of the involution on the classifying-space ring of a
    rank-k torus: the generators of degree 2 are negated, so the character
    is sum_d (-1)^d C(d+k-1, k-1) t^{2d} = 1/(1+t^2)^k."""
    if k < 1:
        raise ValueError("torus rank must be positive")
    return Character(RationalFunction(Poly.one(), one_plus_t2_power(k)))


def chi_from_manifold(table: SignedBettiTable, k: int) -> Character:
    """sum_i (h^{i,+} - h^{i,-}) t^i / (1+t^2)^k in canonical form."""
    if k < 1:
        raise ValueError("torus rank must be positive")
    return Character(RationalFunction(table.signed_poly(), one_plus_t2_power(k)))


def chi_from_reduction(table0: SignedBettiTable) -> Character:
    """Signed Betti polynomial of the reduced space."""
    return Character(RationalFunction(table0.signed_poly()))


def solve_reduction_signature(table: SignedBettiTable, k: int) -> Poly:
    """Divide the signed Betti polynomial exactly by (1+t^2)^k, predicting
    the signed differences of the reduction; NotDivisibleError signals
    inputs inconsistent with zero being a regular level."""
    if k < 1:
        raise ValueError("torus rank must be positive")
    return exact_divide(table.signed_poly(), one_plus_t2_power(k))


@dataclass(frozen=True)
class MainIdentityReport:
    """Degreewise comparison h^{i,+}-h^{i,-} vs the binomial-weighted sums
    of the reduction differences, plus the equivalent character equality."""

    rows: tuple[tuple[int, int, int, bool], ...]
    chi_manifold: Character
    chi_reduction: Character
    chi_equal: bool

    @property
    def holds(self) -> bool:
        return self.chi_equal and all(ok for _, _, _, ok in self.rows)

    @property
    def first_failure(self) -> int | None:
        for degree, _, _, ok in self.rows:
            if not ok:
                return degree
        return None if self.chi_equal else -1

    @property
    def verdict(self) -> str:
        return "HOLDS" if self.holds else "VIOLATED"


def verify_main_identity(
    table: SignedBettiTable,
    table0: SignedBettiTable,
    k: int,
    expand_order: int | None = None,
) -> MainIdentityReport:
    """Check h^{i,+} - h^{i,-} = sum_j C(k,j) (h0^{i-2j,+} - h0^{i-2j,-})
    for every degree, together with the character form of the identity."""
    if k < 1:
        raise ValueError("torus rank must be positive")
    rows = []
    for i in range(table.top_degree + 1):
        lhs = table.diff(i)
        rhs = sum(comb(k, j) * table0.diff(i - 2 * j) for j in range(min(k, i // 2) + 1))
        rows.append((i, lhs, rhs, lhs == rhs))
    chi_m = chi_from_manifold(table, k)
    chi_r = chi_from_reduction(table0)
    chi_equal = chi_m.value == chi_r.value
    if chi_equal and expand_order is not None:
        chi_equal = chi_m.series(expand_order) == chi_r.series(expand_order)
    return MainIdentityReport(tuple(rows), chi_m, chi_r, chi_equal)


@dataclass(frozen=True)
class StanleyReport:
    """Signed differences against the binomial coefficients C(n, i/2)."""

    rows: tuple[tuple[int, int, int, bool], ...]

    @property
    def holds(self) -> bool:
        return all(ok for _, _, _, ok in self.rows)

    @property
    def first_failure(self) -> int | None:
        for degree, _, _, ok in self.rows:
            if not ok:
                return degree
        return None

    @property
    def verdict(self) -> str:
        return "HOLDS" if self.holds else "VIOLATED"


def stanley_check(table: SignedBettiTable, n: int) -> StanleyReport:
    """For a symmetric toric input of dimension n the signed differences
    must be exactly C(n, i) in degree 2i and zero in odd degrees."""
    rows = []
    for i in range(max(2 * n, table.top_degree) + 1):
        lhs = table.diff(i)
        rhs = comb(n, i // 2) if i % 2 == 0 and i <= 2 * n else 0
        rows.append((i, lhs, rhs, lhs == rhs))
    return StanleyReport(tuple(rows))


def equivariant_split(
    table: SignedBettiTable, k: int
) -> tuple[RationalFunction, RationalFunction]:
    """Graded dimensions of the +/- eigenspaces on equivariant cohomology.

    With B(t) = 1/(1-t^2)^k and A(t) = 1/(1+t^2)^k, the even/odd parts of
    the classifying-space series are (B+A)/2 and (B-A)/2; tensoring with the
    eigenspace decomposition downstairs mixes them in the checkerboard
    pattern implemented here.
    """
    if k < 1:
        raise ValueError("torus rank must be positive")
    b = RationalFunction(Poly.one(), one_minus_t2_power(k))
    a = RationalFunction(Poly.one(), one_plus_t2_power(k))
    half = Fraction(1, 2)
    b_plus = (b + a) * half
    b_minus = (b - a) * half
    p_plus = RationalFunction(table.plus_poly())
    p_minus = RationalFunction(table.minus_poly())
    plus = p_plus * b_plus + p_minus * b_minus
    minus = p_plus * b_minus + p_minus * b_plus
    return plus, minus
