"""Exact rational linear algebra: kernels, ranks, prescribed-kernel matrices.

Vectors are tuples of Fraction, matrices are tuples of row tuples.  All
operations are pure and deterministic, so results can be compared with ==.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple

Rat = Fraction
Vec = tuple[Fraction, ...]
Mat = tuple[tuple[Fraction, ...], ...]


class DependentInput(ValueError):
    """Raised when allegedly independent vectors are not."""


# ---------------------------------------------------------------------------
# construction and formatting


def vec(entries: Iterable) -> Vec:
    return tuple(Fraction(e) for e in entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def rat_to_str(q: Fraction) -> str:
    """Canonical "p/q" string, "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def rat_from_str(s: str) -> Fraction:
    """Parse a canonical rational string; rejects zero denominators."""
    s = s.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        d = int(den)
        if d == 0:
            raise ValueError("zero denominator in rational %r" % s)
        return Fraction(int(num), d)
    return Fraction(int(s))


# ---------------------------------------------------------------------------
# elementary operations


def dot(u: Vec, v: Vec) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch: %d vs %d" % (len(u), len(v)))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matvec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def is_zero(v: Vec) -> bool:
    return all(x == 0 for x in v)


def scale_vec(c: Fraction, v: Vec) -> Vec:
    return tuple(c * x for x in v)


def add_vec(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def neg_vec(v: Vec) -> Vec:
    return tuple(-x for x in v)


def columns(m: Mat) -> tuple[Vec, ...]:
    return transpose(m)


def from_columns(cols: Iterable[Vec]) -> Mat:
    return transpose(tuple(cols))


# ---------------------------------------------------------------------------
# elimination


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form with the deterministic pivot rule.

    Pivot = first nonzero entry scanning rows top-down within the leftmost
    unresolved column.  Returns the reduced matrix and the pivot columns.
    """
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    prow = 0
    for col in range(ncols):
        src = next((r for r in range(prow, nrows) if rows[r][col] != 0), None)
        if src is None:
            continue
        rows[prow], rows[src] = rows[src], rows[prow]
        inv = 1 / rows[prow][col]
        rows[prow] = [x * inv for x in rows[prow]]
        for r in range(nrows):
            if r != prow and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[prow])]
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    return tuple(tuple(r) for r in rows), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def rank_fraction_free(m: Mat) -> int:
    """Rank by Bareiss fraction-free elimination over the integers.

    Independent of rref(); used to cross-check kernel dimensions.
    """
    if not m or not m[0]:
        return 0
    rows = []
    for r in m:
        den = math.lcm(*(x.denominator for x in r))
        rows.append([int(x * den) for x in r])
    nrows, ncols = len(rows), len(rows[0])
    prev = 1
    prow = 0
    for col in range(ncols):
        src = next((r for r in range(prow, nrows) if rows[r][col] != 0), None)
        if src is None:
            continue
        rows[prow], rows[src] = rows[src], rows[prow]
        for r in range(prow + 1, nrows):
            rows[r] = [
                (rows[prow][col] * rows[r][c] - rows[r][col] * rows[prow][c]) // prev
                for c in range(ncols)
            ]
        prev = rows[prow][col]
        prow += 1
        if prow == nrows:
            break
    return prow


def kernel_basis(m: Mat) -> list[Vec]:
    """Canonical basis of the right kernel of m.

    Free coordinates carry an identity pattern: restricting the basis
    vectors to the non-pivot columns gives the identity matrix.  Empty
    list iff the kernel is trivial.
    """
    if not m:
        return []
    ncols = len(m[0])
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            v[pcol] = -red[prow][f]
        basis.append(tuple(v))
    return basis


def inverse(m: Mat) -> Mat:
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("inverse of non-square matrix")
    aug = tuple(r + ident_row for r, ident_row in zip(m, identity(n)))
    red, pivots = rref(aug)
    if tuple(pivots) != tuple(range(n)):
        raise ValueError("singular matrix")
    return tuple(r[n:] for r in red)


def solve(m: Mat, rhs: Vec) -> Vec | None:
    """Least-index particular solution of m x = rhs, or None if inconsistent.

    Pivot variables are solved, free variables are set to zero.
    """
    if not m:
        return ()
    ncols = len(m[0])
    aug = tuple(r + (b,) for r, b in zip(m, rhs))
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for prow, pcol in enumerate(pivots):
        x[pcol] = red[prow][ncols]
    return tuple(x)


def span_rank(vectors: Iterable[Vec]) -> int:
    vs = tuple(vectors)
    return rank(vs) if vs else 0


def same_span(us: Iterable[Vec], vs: Iterable[Vec]) -> bool:
    """Exact mutual-containment test of two spans."""
    us, vs = tuple(us), tuple(vs)
    ru = span_rank(us)
    rv = span_rank(vs)
    return ru == rv == span_rank(us + vs)


# ---------------------------------------------------------------------------
# prescribed-kernel symmetric matrices


class PrescribedKernel(NamedTuple):
    matrix: Mat
    completion: tuple[Vec, ...]
    scale: int


def prescribed_kernel_matrix(vs: list[Vec]) -> PrescribedKernel:
    """Integral symmetric n-by-n matrix whose kernel is exactly span(vs).

    The given vectors are completed to a basis greedily over the standard
    basis in index order; the scale is the least positive integer clearing
    all denominators.
    """
    if not vs:
        raise DependentInput("need at least one vector")
    n = len(vs[0])
    d = len(vs)
    if any(len(v) != n for v in vs):
        raise ValueError("vectors of mixed dimension")
    if span_rank(vs) != d:
        raise DependentInput("input vectors are linearly dependent")
    cols = list(vs)
    completion = []
    for j in range(n):
        if len(cols) == n:
            break
        e = tuple(Fraction(1 if i == j else 0) for i in range(n))
        if span_rank(cols + [e]) > len(cols):
            cols.append(e)
            completion.append(e)
    q_inv = inverse(from_columns(cols))
    # (Q^-1)^T diag(0..0,1..1) Q^-1 = sum of outer products of the last rows
    bbar = [[Fraction(0)] * n for _ in range(n)]
    for row in q_inv[d:]:
        for i in range(n):
            if row[i] == 0:
                continue
            for j in range(n):
                bbar[i][j] += row[i] * row[j]
    scale = math.lcm(1, *(x.denominator for r in bbar for x in r))
    abar = tuple(tuple(x * scale for x in r) for r in bbar)
    return PrescribedKernel(abar, tuple(completion), scale)
