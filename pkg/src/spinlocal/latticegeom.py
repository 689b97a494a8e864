"""Points of the naive local model at level i, written in explicit lattice bases.

Basis of Lambda_i (called alpha, 1-based indices 1..2n+2):
    pi0^-1 e_1..pi0^-1 e_i, e_{i+1}..e_{2n}, pi0^-1 f_1, f_2
Basis of Lambda_{-i} (called beta):
    e_1..e_{2n-i}, pi0 e_{i*}..pi0 e_{2n}, f_1, f_2
with pi0 = -pi^2.  A point is a pair of (2n+2) x (n+1) matrices whose columns
span F_i inside Lambda_i and F_{-i} inside Lambda_{-i}.  Entries are
polynomials in ``pi``; a point of the special fiber has constant entries.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import polymatrix as pm
from .exactpoly import QQ, Poly, PolyRing
from .weylcomb import invariant_range, star

PI_RING = PolyRing(["pi"], QQ)


def pi0(ring: PolyRing = PI_RING) -> Poly:
    return -(ring["pi"] ** 2)


@dataclass
class LatticePoint:
    n: int
    i: int
    pos: pm.Matrix  # F_i in alpha coordinates
    neg: pm.Matrix  # F_{-i} in beta coordinates
    ring: PolyRing = field(default=PI_RING)
    special: bool = False  # a point over the residue field (pi = 0)

    def at_special_fiber(self) -> "LatticePoint":
        red = lambda m: [[self.ring.const(_at_zero(e)) for e in row] for row in m]
        return LatticePoint(self.n, self.i, red(self.pos), red(self.neg), self.ring, True)

    def same_special_fiber(self, other: "LatticePoint") -> bool:
        """Whether both points reduce to the same pair of subspaces at pi = 0."""
        return _same_span(self.pos, other.pos) and _same_span(self.neg, other.neg)


def _at_zero(e: Poly):
    return e.evaluate({"pi": 0}) if "pi" in e.ring.index else e.constant_value()


def _numeric(m: pm.Matrix) -> list[list]:
    return [[_at_zero(e) for e in row] for row in m]


def _same_span(a: pm.Matrix, b: pm.Matrix) -> bool:
    na, nb = _numeric(a), _numeric(b)
    ra, rb = pm.rational_rank(na), pm.rational_rank(nb)
    joined = [x + y for x, y in zip(na, nb)]
    return ra == rb == pm.rational_rank(joined)


@dataclass
class NaiveReport:
    unit_minor_pos: tuple | None
    unit_minor_neg: tuple | None
    orthogonal: bool
    lambda1_contained: bool
    lambda2_contained: bool

    @property
    def ok(self) -> bool:
        return (
            self.unit_minor_pos is not None
            and self.unit_minor_neg is not None
            and self.orthogonal
            and self.lambda1_contained
            and self.lambda2_contained
        )


def _check_level(n: int, i: int):
    if n < 1 or not 0 <= i <= n:
        raise ValueError("need n >= 1 and 0 <= i <= n")


def pairing_matrix(n: int, ring: PolyRing = PI_RING) -> pm.Matrix:
    """Gram matrix of the pairing between the beta and alpha bases: H_{2n} + I_2."""
    return pm.block_diagonal([pm.antidiagonal(ring, 2 * n), pm.identity(ring, 2)], ring)


def lambda1_matrix(n: int, i: int, ring: PolyRing = PI_RING) -> pm.Matrix:
    """Inclusion Lambda_{-i} -> Lambda_i from beta to alpha coordinates."""
    p0, one = pi0(ring), ring.one
    diag = [p0] * i + [one] * (2 * n - 2 * i) + [p0] * i + [p0, one]
    return pm.diagonal(diag)


def lambda2_matrix(n: int, i: int, ring: PolyRing = PI_RING) -> pm.Matrix:
    """Multiplication by pi0 from Lambda_i to Lambda_{-i}, alpha to beta coordinates."""
    p0, one = pi0(ring), ring.one
    diag = [one] * i + [p0] * (2 * n - 2 * i) + [one] * i + [one, p0]
    return pm.diagonal(diag)


def _columns_to_matrix(cols: list[dict[int, Poly]], size: int, ring: PolyRing) -> pm.Matrix:
    m = pm.zeros(ring, size, len(cols))
    for c, vec in enumerate(cols):
        for r, v in vec.items():
            m[r - 1][c] = v
    return m


def representative_point(n: int, i: int, level: int, ring: PolyRing = PI_RING) -> LatticePoint:
    """The special-fiber point attached to E^level = [i + 1 - level, n + i - level]."""
    _check_level(n, i)
    if level not in invariant_range(n, i):
        raise ValueError("level outside the invariant range")
    one = ring.one
    size = 2 * n + 2
    pos_idx = list(range(i + 1 - level, n + i - level + 1)) + [2 * n + 2]
    neg_idx = list(range(1, n - i + level + 1)) + list(range(star(i, n) + level, 2 * n + 1)) + [2 * n + 1]
    pos = _columns_to_matrix([{j: one} for j in pos_idx], size, ring)
    neg = _columns_to_matrix([{j: one} for j in neg_idx], size, ring)
    return LatticePoint(n, i, pos, neg, ring, True)


def base_point(n: int, i: int, ring: PolyRing = PI_RING) -> LatticePoint:
    """The most degenerate point: F_i = <e_{i+1}..e_{n+i}, f_2>."""
    return representative_point(n, i, max(0, 2 * i - n), ring)


def lift_point(n: int, i: int, level: int, twist: int = 1, ring: PolyRing = PI_RING) -> LatticePoint:
    """A point over Q[pi] whose reduction at pi = 0 is the representative point.

    ``twist`` (+1 or -1) picks the isotropic line f_1 + twist*pi*f_2 of the
    (f_1, f_2)-plane; the two choices lie on different spin components.
    """
    _check_level(n, i)
    if twist not in (1, -1):
        raise ValueError("twist must be +1 or -1")
    if level not in invariant_range(n, i):
        raise ValueError("level outside the invariant range")
    pi, one = ring["pi"], ring.one
    size = 2 * n + 2
    pos: list[dict[int, Poly]] = []
    neg: list[dict[int, Poly]] = []
    gap = i - level
    for k in range(i + 1 - level, n - i + level + 1):
        pos.append({k: one})
    for m in range(1, gap + 1):
        pos.append({n - i + level + m: one, i - level + 1 - m: pi})
    for m in range(1, gap + 1):
        pos.append({n + m: one, 2 * n + 1 - m: pi})
    pos.append({2 * n + 2: one, 2 * n + 1: -twist * pi})
    for m in range(1, gap + 1):
        neg.append({i - level + 1 - m: one, n - i + level + m: -pi})
    for k in range(i - level + 1, n - i + level + 1):
        neg.append({k: one})
    for m in range(1, gap + 1):
        neg.append({2 * n + 1 - m: one, n + m: -pi})
    neg.append({2 * n + 1: one, 2 * n + 2: twist * pi})
    return LatticePoint(n, i, _columns_to_matrix(pos, size, ring), _columns_to_matrix(neg, size, ring), ring)


def _unit_minor(m: pm.Matrix) -> tuple | None:
    """Rows of a maximal minor that is a nonzero constant, if any."""
    ncols = len(m[0])
    at_zero = _numeric(m)
    # greedy pivot rows first, then a full search
    candidates = []
    rows_used, basis = [], []
    for r, row in enumerate(at_zero):
        if pm.rational_rank(basis + [row]) > len(basis):
            basis.append(row)
            rows_used.append(r)
        if len(rows_used) == ncols:
            break
    if len(rows_used) == ncols:
        candidates.append(tuple(rows_used))
    for rows in candidates + list(itertools.combinations(range(len(m)), ncols)):
        d = pm.minor(m, rows, range(ncols))
        if not d.is_zero() and d.is_constant():
            return rows
    return None


def _contained(target: pm.Matrix, image: pm.Matrix, rows: tuple) -> bool:
    """Whether the columns of ``image`` lie in the column span of ``target``.

    ``rows`` indexes a unit maximal minor of ``target``; the coefficient
    matrix is adj(T_R) * image_R / det(T_R), which is integral because det
    is a nonzero constant.
    """
    size = len(rows)
    t_r = pm.submatrix(target, rows, range(size))
    d = pm.det(t_r)
    inv_d = d.ring.field.inv(d.constant_value())
    adj = pm.zeros(d.ring, size, size)
    for a in range(size):
        for b in range(size):
            rest_r = [r for r in range(size) if r != b]
            rest_c = [c for c in range(size) if c != a]
            cof = pm.det(pm.submatrix(t_r, rest_r, rest_c)) if size > 1 else d.ring.one
            adj[a][b] = cof if (a + b) % 2 == 0 else -cof
    coeffs = pm.scale(pm.matmul(adj, [image[r] for r in rows]), inv_d)
    return pm.is_zero(pm.sub(pm.matmul(target, coeffs), image))


def _check_naive_special(point: LatticePoint) -> NaiveReport:
    n, i = point.n, point.i
    pos, neg = _numeric(point.pos), _numeric(point.neg)
    k = n + 1

    def full_rank_rows(m):
        rows, basis = [], []
        for r, row in enumerate(m):
            if pm.rational_rank(basis + [row]) > len(basis):
                basis.append(row)
                rows.append(r)
        return tuple(rows) if len(rows) == k else None

    def contained(target, image):
        joined = [x + y for x, y in zip(target, image)]
        return pm.rational_rank(joined) == pm.rational_rank(target)

    def apply(matrix, m):
        return [[x * y for y in row] for x, row in zip([_at_zero(matrix[r][r]) for r in range(len(m))], m)]

    gram = _numeric(pm.matmul(pm.matmul(pm.transpose(point.neg), pairing_matrix(n, point.ring)), point.pos))
    return NaiveReport(
        full_rank_rows(pos),
        full_rank_rows(neg),
        all(x == 0 for row in gram for x in row),
        contained(pos, apply(lambda1_matrix(n, i, point.ring), neg)),
        contained(neg, apply(lambda2_matrix(n, i, point.ring), pos)),
    )


def check_naive(point: LatticePoint) -> NaiveReport:
    """The three defining conditions of the naive model at level i.

    Points over Q[pi] are checked as polynomial identities; special-fiber
    points are checked over Q after setting pi = 0 in the transition maps.
    """
    if point.special:
        return _check_naive_special(point)
    n, i, ring = point.n, point.i, point.ring
    up = _unit_minor(point.pos)
    un = _unit_minor(point.neg)
    gram = pm.matmul(pm.matmul(pm.transpose(point.neg), pairing_matrix(n, ring)), point.pos)
    orth = pm.is_zero(gram)
    l1 = l2 = False
    if up is not None:
        l1 = _contained(point.pos, pm.matmul(lambda1_matrix(n, i, ring), point.neg), up)
    if un is not None:
        l2 = _contained(point.neg, pm.matmul(lambda2_matrix(n, i, ring), point.pos), un)
    return NaiveReport(up, un, orth, l1, l2)


def surviving_rows(n: int, i: int) -> list[int]:
    """0-based alpha rows kept by the reduction of iota = lambda_2 modulo pi."""
    return list(range(i)) + list(range(2 * n - i, 2 * n)) + [2 * n]


def stratum_rank(point: LatticePoint) -> int:
    """Rank over k of iota(F_i), iota: Lambda_i -> pi0^-1 Lambda_{-i} reduced mod pi."""
    sf = point.at_special_fiber()
    rows = [[e.constant_value() for e in sf.pos[r]] for r in surviving_rows(point.n, point.i)]
    return pm.rational_rank(rows)
