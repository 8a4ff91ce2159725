"""Complete flags in C^n: coinvariant-algebra cohomology, the involution
A -> -A^t acting as the signed variable reversal x_i -> -x_{n+1-i}, its
graded trace, and the predicted signature of the circle reduction.

The trace is computed by exact rewriting in the coinvariant algebra
Q[x_1..x_n]/(e_1,..,e_n): the staircase monomials x^a with a_i <= n-i form
a basis, and any excess power x_k^{n-k+1} rewrites through the complete
homogeneous polynomial h_{n-k+1}(x_k,..,x_n), which lies in the ideal.  An
independent Molien-style computation (trace on the full polynomial ring
divided by the trace on the invariant subring) is exposed separately as an
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .characters import solve_reduction_signature
from .ratfun import Poly, exact_divide
from .toric import GradedTrace, SignedBettiTable

Exponents = tuple[int, ...]
MPoly = dict[Exponents, Fraction]


@dataclass(frozen=True)
class FlagSpec:
    """Spectrum and circle weights defining a flag manifold with involution.

    The spectrum must be centrally symmetric with positive, mutually
    distinct absolute values (plus a single zero when n is odd); the circle
    weights must be pairwise distinct rationals.
    """

    n: int
    spectrum: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]

    def __init__(self, n, spectrum=None, weights=None):
        n = int(n)
        if n < 2:
            raise ValueError("flag manifolds need n >= 2")
        if spectrum is None:
            half = [Fraction(i) for i in range(1, n // 2 + 1)]
            spectrum = sorted([-v for v in half] + ([Fraction(0)] if n % 2 else []) + half)
        spectrum = tuple(Fraction(x) for x in spectrum)
        if weights is None:
            weights = tuple(Fraction(i) for i in range(n))
        weights = tuple(Fraction(x) for x in weights)
        if len(spectrum) != n or len(weights) != n:
            raise ValueError("spectrum and weights must each have n entries")
        if len(set(weights)) != n:
            raise ValueError("circle weights must be pairwise distinct")
        zeros = sum(1 for x in spectrum if x == 0)
        if zeros != n % 2:
            raise ValueError("spectrum must contain a zero exactly when n is odd")
        pos = sorted(x for x in spectrum if x > 0)
        neg = sorted(-x for x in spectrum if x < 0)
        if pos != neg or len(set(pos)) != len(pos) or len(pos) != n // 2:
            raise ValueError(
                "spectrum must consist of distinct positive values and their negatives"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "spectrum", spectrum)
        object.__setattr__(self, "weights", weights)


def coinvariant_dims(n: int) -> tuple[int, ...]:
    """Dimensions of the graded pieces (indexed by half the cohomological
    degree): coefficients of prod_j (1 + q + ... + q^{j-1})."""
    if n < 2:
        raise ValueError("flag manifolds need n >= 2")
    poly = Poly.one()
    for j in range(1, n + 1):
        poly = poly * Poly([1] * j)
    return tuple(int(c) for c in poly.coeffs)


def _staircase(n: int, degree: int) -> list[Exponents]:
    """Exponent tuples a with a_i <= n-1-i (0-indexed) of the given total
    degree, lexicographically sorted."""
    out: list[Exponents] = []

    def rec(i, remaining, prefix):
        if i == n:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        cap = min(n - 1 - i, remaining)
        for e in range(cap + 1):
            rec(i + 1, remaining - e, prefix + [e])

    rec(0, degree, [])
    out.sort()
    return out


def _h_monomials(start: int, n: int, degree: int) -> list[Exponents]:
    """Exponent tuples of the degree-d monomials in x_start..x_{n-1}."""
    out = []
    for combo in combinations_with_replacement(range(start, n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class _CoinvariantRewriter:
    """Normal forms in Q[x]/(e_1..e_n) with respect to the staircase basis."""

    def __init__(self, n: int):
        self.n = n
        self.cache: dict[Exponents, MPoly] = {}

    def is_staircase(self, e: Exponents) -> bool:
        return all(e[i] <= self.n - 1 - i for i in range(self.n))

    def normal_form(self, e: Exponents) -> MPoly:
        cached = self.cache.get(e)
        if cached is not None:
            return cached
        if self.is_staircase(e):
            nf = {e: Fraction(1)}
            self.cache[e] = nf
            return nf
        n = self.n
        i = next(i for i in range(n) if e[i] >= n - i)
        r = n - i
        rest = list(e)
        rest[i] -= r
        out: MPoly = {}
        lead = tuple(r if j == i else 0 for j in range(n))
        for mono in _h_monomials(i, n, r):
            if mono == lead:
                continue
            combined = tuple(a + b for a, b in zip(rest, mono))
            for key, val in self.normal_form(combined).items():
                nv = out.get(key, Fraction(0)) - val
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        self.cache[e] = out
        return out


def theta_trace(n: int) -> GradedTrace:
    """Graded trace of x_i -> -x_{n+1-i} on the coinvariant algebra."""
    dims = coinvariant_dims(n)
    rewriter = _CoinvariantRewriter(n)
    traces = []
    for m, dim in enumerate(dims):
        basis = _staircase(n, m)
        assert len(basis) == dim
        sign = -1 if m % 2 else 1
        tr = Fraction(0)
        for a in basis:
            image = tuple(reversed(a))
            tr += sign * rewriter.normal_form(image).get(a, Fraction(0))
        assert tr.denominator == 1
        traces.append(int(tr))
    return GradedTrace(tuple(traces), tuple(dims))


def _poly_matrix_det(mat: list[list[Poly]]) -> Poly:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    det = Poly()
    for j in range(n):
        c = mat[0][j]
        if c.is_zero():
            continue
        minor = [[row[jj] for jj in range(n) if jj != j] for row in mat[1:]]
        term = c * _poly_matrix_det(minor)
        det = det + (term if j % 2 == 0 else -term)
    return det


def molien_trace(n: int) -> Poly:
    """Independent route to the coinvariant trace polynomial: the graded
    trace on the full polynomial ring is 1/det(1 - t^2 phi), the trace on
    the invariant subring is prod_j 1/(1 - (-1)^j t^{2j}), and the
    coinvariant trace is their quotient."""
    if n < 2:
        raise ValueError("flag manifolds need n >= 2")
    a = [[Poly((1,)) if i == j else Poly() for j in range(n)] for i in range(n)]
    for j in range(n):
        # phi(x_j) = -x_{n-1-j}; subtract t^2 * phi entrywise
        i = n - 1 - j
        a[i][j] = a[i][j] + Poly((0, 0, 1))
    det = _poly_matrix_det(a)
    numerator = Poly.one()
    for j in range(1, n + 1):
        sign = 1 if j % 2 else -1
        numerator = numerator * Poly([1] + [0] * (2 * j - 1) + [sign])
    return exact_divide(numerator, det)


def predict_reduction_signature(n: int) -> Poly:
    """Signed Betti differences forced on the circle reduction; the exact
    divisibility by (1+t^2) is itself a consistency check of the model."""
    table = SignedBettiTable.from_graded_trace(theta_trace(n))
    return solve_reduction_signature(table, 1)


def check_moment_compat(spec: FlagSpec) -> bool:
    """Structural verification that the diagonal-weighted moment map is odd
    under A -> -A^t and that the circle action intertwines with it.

    Matrix entries are kept formal: an expression is a linear combination of
    terms a_{ij} * d^e, keyed by the entry (i, j) and the exponent vector e
    of the diagonal circle factors d_1..d_n.
    """
    n = spec.n
    Expr = dict[tuple[tuple[int, int], tuple[int, ...]], Fraction]
    zero_exp = (0,) * n

    def base_matrix() -> list[list[Expr]]:
        return [[{((i, j), zero_exp): Fraction(1)} for j in range(n)] for i in range(n)]

    def scale_dexp(expr: Expr, up: int, down: int) -> Expr:
        out: Expr = {}
        for (entry, e), coeff in expr.items():
            ee = list(e)
            ee[up] += 1
            ee[down] -= 1
            out[(entry, tuple(ee))] = coeff
        return out

    def circle_act(mat, inverse=False):
        # D X D^{-1} entrywise: (i, j) picks up d_i / d_j (swapped if inverse)
        return [
            [
                scale_dexp(mat[i][j], j if inverse else i, i if inverse else j)
                for j in range(n)
            ]
            for i in range(n)
        ]

    def involution(mat):
        # X -> -X^t
        return [
            [{k: -v for k, v in mat[j][i].items()} for j in range(n)]
            for i in range(n)
        ]

    A = base_matrix()
    lhs = involution(circle_act(A))
    rhs = circle_act(involution(A), inverse=True)
    if any(lhs[i][j] != rhs[i][j] for i in range(n) for j in range(n)):
        return False

    # mu(theta(A)) + mu(A) must cancel termwise
    theta_a = involution(A)
    acc: Expr = {}
    for i in range(n):
        for source in (theta_a[i][i], A[i][i]):
            for key, coeff in source.items():
                nv = acc.get(key, Fraction(0)) + spec.weights[i] * coeff
                if nv:
                    acc[key] = nv
                else:
                    acc.pop(key, None)
    return not acc
