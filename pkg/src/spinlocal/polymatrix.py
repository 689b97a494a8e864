"""Dense matrices with polynomial entries (lists of rows of ``Poly``)."""
from __future__ import annotations

import itertools
from typing import Sequence

from .exactpoly import GF, Poly, PolyRing, rank_mod_p

Matrix = list  # list[list[Poly]]


def zeros(ring: PolyRing, rows: int, cols: int) -> Matrix:
    return [[ring.zero for _ in range(cols)] for _ in range(rows)]


def identity(ring: PolyRing, size: int) -> Matrix:
    m = zeros(ring, size, size)
    for k in range(size):
        m[k][k] = ring.one
    return m


def antidiagonal(ring: PolyRing, size: int) -> Matrix:
    """The matrix H_size with ones on the antidiagonal."""
    m = zeros(ring, size, size)
    for k in range(size):
        m[k][size - 1 - k] = ring.one
    return m


def diagonal(entries: Sequence[Poly]) -> Matrix:
    ring = entries[0].ring
    m = zeros(ring, len(entries), len(entries))
    for k, e in enumerate(entries):
        m[k][k] = e
    return m


def block_diagonal(blocks: Sequence[Matrix], ring: PolyRing) -> Matrix:
    size = sum(len(b) for b in blocks)
    m = zeros(ring, size, size)
    off = 0
    for b in blocks:
        for r, row in enumerate(b):
            for c, e in enumerate(row):
                m[off + r][off + c] = e
        off += len(b)
    return m


def assemble(blocks: Sequence[Sequence[Matrix]], row_sizes, col_sizes, ring: PolyRing) -> Matrix:
    """Build a matrix from a grid of blocks; ``None`` stands for a zero block."""
    m = zeros(ring, sum(row_sizes), sum(col_sizes))
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            blk = blocks[bi][bj]
            if blk is not None:
                if len(blk) != rs or any(len(row) != cs for row in blk):
                    raise ValueError(f"block ({bi},{bj}) has the wrong shape")
                for r in range(rs):
                    for c in range(cs):
                        m[r0 + r][c0 + c] = blk[r][c]
            c0 += cs
        r0 += rs
    return m


def submatrix(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[m[r][c] for c in cols] for r in rows]


def transpose(m: Matrix) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    if len(a[0]) != len(b):
        raise ValueError("shape mismatch in matmul")
    ring = a[0][0].ring
    bt = transpose(b)
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = ring.zero
            for x, y in zip(row, col):
                if x.terms and y.terms:
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def is_zero(m: Matrix) -> bool:
    return all(e.is_zero() for row in m for e in row)


def det(m: Matrix) -> Poly:
    """Determinant by Laplace expansion along rows, memoised on column subsets."""
    size = len(m)
    if size == 0:
        raise ValueError("determinant of an empty matrix needs a ring")
    ring = m[0][0].ring
    memo: dict = {}

    def rec(row: int, cols: tuple) -> Poly:
        if row == size:
            return ring.one
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = ring.zero
        for pos, c in enumerate(cols):
            e = m[row][c]
            if e.terms:
                rest = rec(row + 1, cols[:pos] + cols[pos + 1:])
                if rest.terms:
                    term = e * rest
                    acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return rec(0, tuple(range(size)))


def minor(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Poly:
    return det(submatrix(m, rows, cols))


def maximal_minors(m: Matrix) -> dict[tuple, Poly]:
    """All maximal minors of a tall matrix, keyed by 0-based row subsets.

    Uses a shared Laplace recursion over the columns so each sub-minor is
    computed once.
    """
    nrows, ncols = len(m), len(m[0])
    ring = m[0][0].ring
    memo: dict = {}

    def rec(col: int, rows: tuple) -> Poly:
        # determinant of the submatrix on the given rows and columns col..end
        if col == ncols:
            return ring.one
        key = rows
        if key in memo:
            return memo[key]
        acc = ring.zero
        for pos, r in enumerate(rows):
            e = m[r][col]
            if e.terms:
                rest = rec(col + 1, rows[:pos] + rows[pos + 1:])
                if rest.terms:
                    term = e * rest
                    acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return {rows: rec(0, rows) for rows in itertools.combinations(range(nrows), ncols)}


def evaluate(m: Matrix, point: dict) -> list[list]:
    return [[e.evaluate(point) for e in row] for row in m]


def rank_over_prime(m: Matrix, point: dict, p: int) -> int:
    """Rank over F_p of the matrix evaluated at a point."""
    field = GF(p)
    rows = [[field(e.change_field(field).evaluate(point)) if e.ring.field != field else e.evaluate(point)
             for e in row] for row in m]
    return rank_mod_p(rows, p) if rows else 0


def rational_rank(rows: list[list]) -> int:
    """Rank of a matrix of rationals (gmpy2 mpq or Fraction) by exact elimination."""
    from gmpy2 import mpq

    a = [[mpq(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col] / a[rank][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def to_str(m: Matrix) -> str:
    return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in m)
