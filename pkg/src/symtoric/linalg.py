"""Dense exact linear algebra over Fraction, sized for desk-scale inputs.

Vectors are tuples of Fractions, matrices are tuples of row tuples.  All
eliminations pick the first usable pivot in scan order, so every result is
deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def fvec(xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def fmat(rows) -> Mat:
    return tuple(fvec(r) for r in rows)


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def vadd(u, v) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u, v) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, u) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in u)


def vneg(u) -> Vec:
    return tuple(-a for a in u)


def is_zero_vec(u) -> bool:
    return all(a == 0 for a in u)


def mat_vec(M, v) -> Vec:
    return tuple(dot(row, v) for row in M)


def mat_mul(A, B) -> Mat:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def transpose(M) -> Mat:
    return tuple(zip(*M, strict=True))


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def is_identity(M) -> bool:
    return all(
        c == (1 if i == j else 0) for i, row in enumerate(M) for j, c in enumerate(row)
    )


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form; returns (rows_without_zeros, pivot_columns)."""
    work = [list(fvec(r)) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [tuple(row) for row in work[:r]], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def affine_rank(points) -> int:
    """Dimension of the affine hull of a nonempty point set (0 for one point)."""
    pts = [fvec(p) for p in points]
    if not pts:
        raise ValueError("affine rank of an empty point set")
    base = pts[0]
    return rank([vsub(p, base) for p in pts[1:]])


def kernel_basis(rows, n: int) -> list[Vec]:
    """Rational basis of the kernel of the given row system in R^n."""
    red, pivots = rref(rows, n)
    pivot_of_col = {c: i for i, c in enumerate(pivots)}
    free = [c for c in range(n) if c not in pivot_of_col]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for c, i in pivot_of_col.items():
            v[c] = -red[i][f]
        basis.append(tuple(v))
    return basis


def solve_square(A, b) -> Vec | None:
    """Unique solution of the square system A x = b, or None if singular."""
    n = len(A)
    aug = [list(fvec(row)) + [Fraction(b[i])] for i, row in enumerate(A)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pr is None:
            return None
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(aug[i][n] for i in range(n))


def invert(M) -> Mat | None:
    n = len(M)
    aug = [list(fvec(row)) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pr is None:
            return None
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(aug[i][n:]) for i in range(n))


def centroid(points) -> Vec:
    pts = [fvec(p) for p in points]
    k = len(pts)
    return tuple(sum(col, Fraction(0)) / k for col in zip(*pts, strict=True))


def primitive_int_vector(v) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to coprime integers."""
    v = fvec(v)
    if is_zero_vec(v):
        raise ValueError("cannot primitivize the zero vector")
    mult = lcm(*(f.denominator for f in v))
    ints = [int(f * mult) for f in v]
    g = gcd(*(abs(x) for x in ints))
    return tuple(x // g for x in ints)


def clear_row_denominators(rows) -> list[tuple[int, ...]]:
    """Scale each row by a positive integer so all entries are integers."""
    out = []
    for r in rows:
        r = fvec(r)
        mult = lcm(*(f.denominator for f in r)) if r else 1
        out.append(tuple(int(f * mult) for f in r))
    return out


def kernel_lattice_basis(int_rows, n: int) -> list[tuple[int, ...]]:
    """Basis of {x in Z^n : A x = 0} for an integer row matrix A.

    Column-operation Hermite-style reduction: an accumulated unimodular U
    tracks the operations, and the columns of U on which A ends up zero form
    a basis of the saturated kernel lattice.
    """
    A = [list(r) for r in int_rows]
    k = len(A)
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def colswap(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    def colsub(a, b, q):
        # column a -= q * column b
        for row in A:
            row[a] -= q * row[b]
        for row in U:
            row[a] -= q * row[b]

    col = 0
    for r in range(k):
        while True:
            nz = [j for j in range(col, n) if A[r][j] != 0]
            if not nz:
                break
            if len(nz) == 1:
                if nz[0] != col:
                    colswap(nz[0], col)
                col += 1
                break
            j = min(nz, key=lambda jj: (abs(A[r][jj]), jj))
            for jj in nz:
                if jj != j:
                    colsub(jj, j, A[r][jj] // A[r][j])
    basis = [tuple(U[i][j] for i in range(n)) for j in range(col, n)]
    for v in basis:
        assert all(sum(row[i] * v[i] for i in range(n)) == 0 for row in int_rows)
    return basis
