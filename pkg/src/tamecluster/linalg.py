"""Thin exact linear algebra layer over python-flint rational matrices.

Every helper accepts matrices with zero rows or columns, which flint handles
unevenly, so callers never special-case empty spaces.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from flint import fmpq, fmpq_mat, fmpz_mat

Mat = fmpq_mat


def zeros(r: int, c: int) -> fmpq_mat:
    return fmpq_mat(r, c)


def identity(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def from_rows(rows, ncols: int | None = None) -> fmpq_mat:
    rows = [list(r) for r in rows]
    r = len(rows)
    c = len(rows[0]) if rows else (ncols or 0)
    if r == 0 or c == 0:
        return fmpq_mat(r, c)
    return fmpq_mat(rows)


def to_rows(m: fmpq_mat) -> list[list[fmpq]]:
    return [[m[i, j] for j in range(m.ncols())] for i in range(m.nrows())]


def integral(m: fmpq_mat) -> fmpz_mat:
    """Row space preserving integer matrix (common denominator cleared)."""
    return m.numer_denom()[0]


def rank(m: fmpq_mat) -> int:
    # fraction-free elimination over Z is far faster than flint's rational rank
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return integral(m).rank()


def hstack(blocks, nrows: int) -> fmpq_mat:
    cols = sum(b.ncols() for b in blocks)
    out = fmpq_mat(nrows, cols)
    off = 0
    for b in blocks:
        for i in range(nrows):
            for j in range(b.ncols()):
                v = b[i, j]
                if v:
                    out[i, off + j] = v
        off += b.ncols()
    return out


def rref_pivots(m: fmpq_mat) -> tuple[fmpq_mat, list[int]]:
    """Reduced row echelon form and its pivot columns."""
    r, c = m.nrows(), m.ncols()
    if r == 0 or c == 0:
        return fmpq_mat(r, c), []
    num, den, rk = integral(m).rref()
    red = fmpq_mat(num) / den
    pivots = []
    row = 0
    for j in range(c):
        if row < rk and red[row, j] != 0:
            pivots.append(j)
            row += 1
    return red, pivots


def nullspace(m: fmpq_mat) -> fmpq_mat:
    """Matrix whose columns form a basis of the right kernel of ``m``."""
    r, c = m.nrows(), m.ncols()
    if c == 0:
        return fmpq_mat(0, 0)
    if r == 0:
        return identity(c)
    basis, nullity = integral(m).nullspace()
    out = fmpq_mat(c, nullity)
    for k in range(nullity):
        col = [int(basis[i, k]) for i in range(c)]
        g = 0
        for v in col:
            g = gcd(g, v)
        for i, v in enumerate(col):
            if v:
                out[i, k] = v // g
    return out


def complement_columns(span: fmpq_mat, candidates: fmpq_mat) -> list[int]:
    """Indices of ``candidates`` columns extending a basis of colspace(span), greedily."""
    r = span.nrows()
    joined = hstack([span, candidates], r)
    _, pivots = rref_pivots(joined)
    s = span.ncols()
    return [p - s for p in pivots if p >= s]


def solve(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    """The unique X with a X = b, for ``a`` of full column rank; raises if inconsistent."""
    r, c = a.nrows(), a.ncols()
    k = b.ncols()
    if c == 0 or k == 0:
        if k and any(b[i, j] != 0 for i in range(r) for j in range(k)):
            raise ValueError("inconsistent system")
        return fmpq_mat(c, k)
    red, pivots = rref_pivots(hstack([a, b], r))
    if len([p for p in pivots if p < c]) != c or any(p >= c for p in pivots):
        raise ValueError("system is inconsistent or not of full column rank")
    out = fmpq_mat(c, k)
    for row in range(c):
        for j in range(k):
            out[row, j] = red[row, c + j]
    return out


def matmul(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    if a.ncols() != b.nrows():
        raise ValueError("shape mismatch")
    if a.nrows() == 0 or b.ncols() == 0 or a.ncols() == 0:
        return fmpq_mat(a.nrows(), b.ncols())
    return a * b


def is_zero(m: fmpq_mat) -> bool:
    return all(m[i, j] == 0 for i in range(m.nrows()) for j in range(m.ncols()))


def fmt_entry(v) -> str:
    v = Fraction(int(v.p), int(v.q))
    return f"{v.numerator}/{v.denominator}"
