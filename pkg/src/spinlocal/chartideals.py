"""Affine chart around the worst point at level i (with 2i <= n).

The chart matrix X is (2i+1) x (2i+1) with entries ``x{r}{c}``.  In the
reordered bases

    Lambda_i^dual: e_1..e_i, pi0 e_{2n+1-i}..pi0 e_{2n}, e_{i+1}..e_{2n-i}, f_1, f_2
    Lambda_i:      pi0^-1 e_1..pi0^-1 e_i, e_{2n+1-i}..e_{2n}, e_{i+1}..e_{2n-i}, pi0^-1 f_1, f_2

F-perp has row blocks (2i, m, 2i, m, 1, 1), m = n - 2i, and columns (2i, m, 1):

    [ I   0   0 ]
    [ 0   I   0 ]
    [ A1  A2  C1]
    [ A3  A4  C2]
    [ 0   0   1 ]
    [ C3  C4  c ]

The entries of A2, C4 and the upper-left triangle of A4 stay free; A3, C2
and the rest of A4 are solved from the linear relations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import polymatrix as pm
from .exactpoly import (
    GF,
    QQ,
    Ideal,
    Poly,
    PolyRing,
    eliminate,
    first_non_member,
    ideal_equal,
    jacobian_rank_at,
    krull_dim,
    radical_member,
)
from .spinalg import SpinPair, matrix_names, parse_sign, spin_ideal_generators, spin_pairs


def _check(n: int, i: int):
    if i < 0 or 2 * i > n:
        raise ValueError("the chart is built for 0 <= 2i <= n")


# ---------------------------------------------------------------- naive ideal in X


def x_names(i: int) -> list[str]:
    return [nm for row in matrix_names(2 * i + 1) for nm in row]


def x_ring(i: int, field=QQ, extra: tuple = ()) -> PolyRing:
    return PolyRing(x_names(i) + list(extra) + ["pi"], field)


def x_matrix(i: int, ring: PolyRing) -> pm.Matrix:
    return [[ring[nm] for nm in row] for row in matrix_names(2 * i + 1)]


def naive_generators(i: int, ring: PolyRing) -> list[Poly]:
    """Distinct entries of X^t H X - pi^2 H and X H X^t - pi^2 H."""
    size = 2 * i + 1
    X = x_matrix(i, ring)
    H = pm.antidiagonal(ring, size)
    pi2 = ring["pi"] ** 2
    left = pm.matmul(pm.matmul(pm.transpose(X), H), X)
    right = pm.matmul(pm.matmul(X, H), pm.transpose(X))
    out = []
    for mat in (left, right):
        for a in range(size):
            for b in range(a, size):
                g = mat[a][b] - (pi2 if a + b == size - 1 else 0)
                if not any(g == h for h in out):
                    out.append(g)
    return out


def build_naive_ideal(i: int, field=QQ) -> Ideal:
    ring = x_ring(i, field)
    return Ideal(naive_generators(i, ring), ring)


def spin_ideal(i: int, sign, field=QQ) -> Ideal:
    ring = x_ring(i, field)
    return Ideal(spin_ideal_generators(i, sign, ring), ring)


def local_model_ideal(i: int, sign, field=QQ) -> Ideal:
    """I^naive + I^sign in Q[X, pi]."""
    ring = x_ring(i, field)
    return Ideal(naive_generators(i, ring) + spin_ideal_generators(i, sign, ring), ring)


# ---------------------------------------------------------------- the full chart


def _ad(mat: pm.Matrix, ring: PolyRing) -> pm.Matrix:
    """A^ad = H A^t H."""
    if not mat or not mat[0]:
        return [[] for _ in range(len(mat[0]) if mat else 0)]
    p, q = len(mat), len(mat[0])
    return [[mat[p - 1 - k][q - 1 - j] for k in range(p)] for j in range(q)]


def _neg(mat):
    return [[-e for e in row] for row in mat]


def _mul(a, b, ring, rows, cols):
    if not a or not b or not a[0]:
        return pm.zeros(ring, rows, cols)
    return pm.matmul(a, b)


def _add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


@dataclass
class Chart:
    n: int
    i: int
    ring: PolyRing
    free: list[str]
    blocks: dict
    ledger: dict  # dependent entry name -> polynomial in the chart ring
    perp: pm.Matrix = field(default_factory=list)
    dual: pm.Matrix = field(default_factory=list)

    @property
    def m(self) -> int:
        return self.n - 2 * self.i

    @property
    def free_count(self) -> int:
        return len(self.free)


def _a_row(r: int, i: int) -> int:
    """Row (or column) of X holding row r of the 2i-block A1."""
    return r if r < i else r + 1


def build_chart(n: int, i: int, field=QQ) -> Chart:
    _check(n, i)
    m = n - 2 * i
    two_i = 2 * i
    free = (
        [f"b{r}_{c}" for r in range(1, two_i + 1) for c in range(1, m + 1)]
        + [f"q{c}" for c in range(1, m + 1)]
        + [f"t{j}_{k}" for j in range(1, m + 1) for k in range(1, m + 1) if j + k < m + 1]
    )
    ring = PolyRing(x_names(i) + free + ["pi"], field)
    X = x_matrix(i, ring)
    A1 = [[X[_a_row(r, i)][_a_row(c, i)] for c in range(two_i)] for r in range(two_i)]
    C1 = [[X[_a_row(r, i)][i]] for r in range(two_i)]
    C3 = [[X[i][_a_row(c, i)] for c in range(two_i)]]
    c = X[i][i]
    A2 = [[ring[f"b{r}_{k}"] for k in range(1, m + 1)] for r in range(1, two_i + 1)]
    C4 = [[ring[f"q{k}"] for k in range(1, m + 1)]]
    ledger = {}

    # A3 = -(A2^ad A1 + H C4^t C3)
    HC4t = [[C4[0][m - 1 - r]] for r in range(m)]
    A3 = _neg(_add(_mul(_ad(A2, ring), A1, ring, m, two_i), _mul(HC4t, C3, ring, m, two_i)))
    # C2 = -H (A2^t H C1 + c C4^t)
    HC1 = [C1[two_i - 1 - r] for r in range(two_i)]
    inner = _add(_mul(pm.transpose(A2), HC1, ring, m, 1), [[c * C4[0][k]] for k in range(m)])
    C2 = [[-inner[m - 1 - r][0]] for r in range(m)]
    # A4 + A4^ad + A2^ad A2 + H C4^t C4 = 0
    R = _add(_mul(_ad(A2, ring), A2, ring, m, m), _mul(HC4t, C4, ring, m, m))
    A4 = pm.zeros(ring, m, m)
    for j in range(m):
        for k in range(m):
            if j + k < m - 1:
                A4[j][k] = ring[f"t{j + 1}_{k + 1}"]
    for j in range(m):
        for k in range(m):
            if j + k == m - 1:
                A4[j][k] = R[j][k] * QQ(-1) / 2 if field == QQ else R[j][k] * field.inv(field(-2))
            elif j + k > m - 1:
                A4[j][k] = -A4[m - 1 - k][m - 1 - j] - R[j][k]
    for j in range(m):
        for k in range(two_i):
            ledger[f"A3[{j + 1},{k + 1}]"] = A3[j][k]
        ledger[f"C2[{j + 1}]"] = C2[j][0]
        for k in range(m):
            if j + k >= m - 1:
                ledger[f"A4[{j + 1},{k + 1}]"] = A4[j][k]
    blocks = dict(A1=A1, A2=A2, A3=A3, A4=A4, C1=C1, C2=C2, C3=C3, C4=C4, c=c)
    chart = Chart(n, i, ring, free, blocks, ledger)
    chart.perp = _perp_matrix(chart)
    chart.dual = _dual_matrix(chart)
    return chart


def _perp_matrix(ch: Chart) -> pm.Matrix:
    ring, m, two_i = ch.ring, ch.m, 2 * ch.i
    b = ch.blocks
    I2, Im = pm.identity(ring, two_i), pm.identity(ring, m)
    one = [[ring.one]]
    rows = [two_i, m, two_i, m, 1, 1]
    cols = [two_i, m, 1]
    grid = [
        [I2, None, None],
        [None, Im, None],
        [b["A1"], b["A2"], b["C1"]],
        [b["A3"], b["A4"], b["C2"]],
        [None, None, one],
        [b["C3"], b["C4"], [[b["c"]]]],
    ]
    return pm.assemble(grid, rows, cols, ring)


def _dual_matrix(ch: Chart) -> pm.Matrix:
    """F written through the orthogonality solution B = -A^ad, D = -H C^t or -C^t H, d = -c."""
    ring, m, two_i = ch.ring, ch.m, 2 * ch.i
    b = ch.blocks
    hflip = lambda col: [col[len(col) - 1 - r] for r in range(len(col))]
    B1 = _neg(_ad(b["A1"], ring))
    B2 = _neg(_ad(b["A3"], ring)) if m else pm.zeros(ring, two_i, 0)
    B3 = _neg(_ad(b["A2"], ring)) if m and two_i else [[] for _ in range(m)] if m else []
    B4 = _neg(_ad(b["A4"], ring))
    D1 = [[-e] for e in hflip([row[0] for row in pm.transpose(b["C3"])])]
    D2 = [[-e] for e in hflip(b["C4"][0])]
    D3 = [[-e for e in hflip([row[0] for row in b["C1"]])]]
    D4 = [[-e for e in hflip([row[0] for row in b["C2"]])]]
    I2, Im = pm.identity(ring, two_i), pm.identity(ring, m)
    rows = [two_i, m, two_i, m, 1, 1]
    cols = [m, two_i, 1]
    grid = [
        [B2, B1, D1],
        [Im, None, None],
        [None, I2, None],
        [B4, B3, D2],
        [D4, D3, [[-b["c"]]]],
        [None, None, [[ring.one]]],
    ]
    return pm.assemble(grid, rows, cols, ring)


def reordered_pairing(ch: Chart) -> pm.Matrix:
    ring = ch.ring
    return pm.block_diagonal(
        [pm.antidiagonal(ring, 2 * ch.i), pm.antidiagonal(ring, 2 * ch.n - 2 * ch.i), pm.identity(ring, 2)], ring
    )


def _diag_maps(ch: Chart):
    ring = ch.ring
    p0 = -(ring["pi"] ** 2)
    one = ring.one
    two_i, mid = 2 * ch.i, 2 * ch.n - 2 * ch.i
    lam = pm.diagonal([p0] * two_i + [one] * mid + [p0, one])
    mu = pm.diagonal([one] * two_i + [p0] * mid + [one, p0])
    return lam, mu


def chart_relations(ch: Chart) -> dict[str, list[Poly]]:
    """Entries that must vanish on the chart, derived from the matrices directly.

    ``lambda``: lambda(F-perp) - F * Q with Q read off the pivot rows of F;
    ``mu``: mu(F) - F-perp * Q' with Q' read off the pivot rows of F-perp;
    ``orthogonality``: F-perp^t Phi F.
    """
    lam, mu = _diag_maps(ch)
    m, two_i, n = ch.m, 2 * ch.i, ch.n
    P, F = ch.perp, ch.dual
    lp = pm.matmul(lam, P)
    pivots_f = list(range(two_i, two_i + m)) + list(range(two_i + m, 2 * two_i + m)) + [2 * n + 1]
    Q = [lp[r] for r in pivots_f]
    rel1 = pm.sub(lp, pm.matmul(F, Q))
    mf = pm.matmul(mu, F)
    pivots_p = list(range(two_i)) + list(range(two_i, two_i + m)) + [2 * n]
    Q2 = [mf[r] for r in pivots_p]
    rel2 = pm.sub(mf, pm.matmul(P, Q2))
    orth = pm.matmul(pm.matmul(pm.transpose(P), reordered_pairing(ch)), F)
    flat = lambda M: [e for row in M for e in row if not e.is_zero()]
    return {"lambda": flat(rel1), "mu": flat(rel2), "orthogonality": flat(orth)}


def displayed_block_relations(ch: Chart) -> dict[str, list[Poly]]:
    """The block identities as written for the chart (two lists of matrix equations)."""
    if ch.i == 0:
        raise ValueError("the block identities need i >= 1")
    ring = ch.ring
    b = ch.blocks
    m, two_i = ch.m, 2 * ch.i
    p0 = -(ring["pi"] ** 2)
    A1, A2, A3, A4 = b["A1"], b["A2"], b["A3"], b["A4"]
    C1, C2, C3, C4, c = b["C1"], b["C2"], b["C3"], b["C4"], b["c"]
    ad = lambda M: _ad(M, ring)
    t = pm.transpose
    H = lambda k: pm.antidiagonal(ring, k)
    mul = lambda *ms: _chain(ms, ring)
    sc = lambda M, s: [[e * s for e in row] for row in M]
    ident = lambda k: pm.identity(ring, k)
    cc = [[c]]
    eq1 = [
        _add(mul(ad(A1), A1), mul(H(two_i), t(C3), C3)), sc(ident(two_i), -p0),
        _add(mul(ad(A2), A1), mul(H(m), t(C4), C3)), _neg(A3),
        _add(mul(t(C1), H(two_i), A1), mul(cc, C3)), None,
        _add(_add(_add(A4, ad(A4)), mul(ad(A2), A2)), mul(H(m), t(C4), C4)), None,
        _add(_add(mul(t(C2), H(m)), mul(t(C1), H(two_i), A2)), mul(cc, C4)), None,
        _add(mul(t(C1), H(two_i), C1), [[c * c]]), [[-p0]],
    ]
    eq2 = [
        _add(_add(mul(A1, ad(A3)), sc(A2, -p0)), mul(C1, t(C2), H(m))), None,
        _add(_add(mul(A3, ad(A3)), sc(A4, -p0)), mul(C2, t(C2), H(m))), sc(ad(A4), p0),
        _add(_add(sc(mul(C3, ad(A3)), -1), sc(C4, p0)), sc(mul(t(C2), H(m)), -c)), None,
        _add(mul(A1, ad(A1)), mul(C1, t(C1), H(two_i))), sc(ident(two_i), -p0),
        _add(mul(A3, ad(A1)), mul(C2, t(C1), H(two_i))), sc(ad(A2), p0),
        _add(mul(C3, ad(A1)), sc(mul(t(C1), H(two_i)), c)), None,
        _add(mul(A3, H(two_i), t(C3)), sc(C2, c)), sc(mul(H(m), t(C4)), p0),
        _add(mul(C3, H(two_i), t(C3)), [[c * c]]), [[-p0]],
    ]
    out = {}
    for label, eqs in (("first", eq1), ("second", eq2)):
        polys = []
        for lhs, rhs in zip(eqs[::2], eqs[1::2]):
            diff = lhs if rhs is None else [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(lhs, rhs)]
            polys += [e for row in diff for e in row if not e.is_zero()]
        out[label] = polys
    return out


def _chain(ms, ring):
    acc = ms[0]
    for nxt in ms[1:]:
        rows = len(acc)
        cols = len(nxt[0]) if nxt else 0
        if not acc or not acc[0] or not nxt or not nxt[0]:
            acc = pm.zeros(ring, rows, cols)
        else:
            acc = pm.matmul(acc, nxt)
    return acc


def chart_naive_ideal(ch: Chart) -> Ideal:
    return Ideal(naive_generators(ch.i, ch.ring), ch.ring)


@dataclass
class RelationReport:
    ok: bool
    checked: int
    offending: str | None = None
    group: str | None = None


def implied_relations_check(n: int, i: int, field=QQ, displayed: bool = False) -> RelationReport:
    """Every chart relation reduces to zero modulo the naive ideal in X."""
    ch = build_chart(n, i, field)
    ideal = chart_naive_ideal(ch)
    groups = displayed_block_relations(ch) if displayed else chart_relations(ch)
    count = 0
    for label, polys in groups.items():
        bad = first_non_member(polys, ideal)
        count += len(polys)
        if bad is not None:
            return RelationReport(False, count, str(bad), label)
    return RelationReport(True, count)


# ---------------------------------------------------------------- the spin oracle on the chart


def perp_in_g_basis(ch: Chart) -> pm.Matrix:
    """Rows of F-perp reordered to the g basis e_1..e_n, f_1, f_2, e_{n+1}..e_{2n-i}, pi0 e_{2n+1-i}..pi0 e_{2n}."""
    n, i = ch.n, ch.i
    order = []
    for k in range(1, 2 * n + 3):
        if k <= i:
            order.append(k - 1)
        elif k <= n:
            order.append(2 * i + (k - i) - 1)
        elif k == n + 1:
            order.append(2 * n)
        elif k == n + 2:
            order.append(2 * n + 1)
        elif k <= 2 * n - i + 2:
            order.append(2 * i + (k - 2 - i) - 1)
        else:
            order.append(i + (k - 2 - (2 * n - i)) - 1)
    return [ch.perp[r] for r in order]


def spin_oracle_generators(ch: Chart, sign) -> list[Poly]:
    s = parse_sign(sign)
    minors = pm.maximal_minors(perp_in_g_basis(ch))
    keyed = {frozenset(r + 1 for r in k): v for k, v in minors.items()}
    out = []
    for pair in spin_pairs(ch.n, ch.i):
        coeff = pair.coefficient(s).embed(ch.ring)
        g = keyed[pair.target] - coeff * keyed[pair.rep]
        if not g.is_zero():
            out.append(g)
    return out


@dataclass
class OracleReport:
    ok: bool
    oracle_in_explicit: bool
    explicit_in_oracle: bool
    oracle_count: int
    offending: str | None = None


def spin_oracle_check(n: int, i: int, sign, field=QQ) -> OracleReport:
    """(naive + oracle relations) == (naive + explicit spin generators) on the chart."""
    ch = build_chart(n, i, field)
    naive = naive_generators(i, ch.ring)
    oracle = spin_oracle_generators(ch, sign)
    explicit = spin_ideal_generators(i, sign, ch.ring)
    with_explicit = Ideal(naive + explicit, ch.ring)
    bad = first_non_member(oracle, with_explicit)
    if bad is not None:
        return OracleReport(False, False, False, len(oracle), str(bad))
    with_oracle = Ideal(naive + oracle, ch.ring)
    bad = first_non_member(explicit, with_oracle)
    if bad is not None:
        return OracleReport(False, True, False, len(oracle), str(bad))
    return OracleReport(True, True, True, len(oracle))


# ---------------------------------------------------------------- special fiber


def r_ideal_generators(i: int, ring: PolyRing) -> list[Poly]:
    """X H X^t, X^t H X and all (i+1)-minors of X."""
    size = 2 * i + 1
    X = x_matrix(i, ring)
    H = pm.antidiagonal(ring, size)
    out = []
    for mat in (pm.matmul(pm.matmul(X, H), pm.transpose(X)), pm.matmul(pm.matmul(pm.transpose(X), H), X)):
        for a in range(size):
            for b in range(a, size):
                if not mat[a][b].is_zero():
                    out.append(mat[a][b])
    for rows in itertools.combinations(range(size), i + 1):
        for cols in itertools.combinations(range(size), i + 1):
            out.append(pm.minor(X, rows, cols))
    return out


def r_ring(i: int, prime: int) -> PolyRing:
    return PolyRing(x_names(i), GF(prime))


def r_ideal(i: int, prime: int = 32003) -> Ideal:
    ring = r_ring(i, prime)
    return Ideal(r_ideal_generators(i, ring), ring)


def special_fiber_ideal(i: int, sign, prime: int = 32003) -> Ideal:
    """(naive + spin) with pi set to zero, over F_p."""
    src = local_model_ideal(i, sign, GF(prime))
    ring = r_ring(i, prime)
    return Ideal([g.subs({"pi": 0}, ring) for g in src.gens], ring)


def special_fiber_equality(i: int, sign, prime: int = 32003) -> bool:
    return ideal_equal(special_fiber_ideal(i, sign, prime), r_ideal(i, prime))


def irreducibility_oracle(i: int = 1, prime: int = 32003) -> bool:
    """For i = 1: R equals, up to radical, the closure of {u v^t : u, v isotropic}."""
    if i != 1:
        raise ValueError("the rank-one parametrisation applies to i = 1")
    field = GF(prime)
    us, vs = ["u1", "u2", "u3"], ["v1", "v2", "v3"]
    ring = PolyRing(us + vs + x_names(1), field)
    X = x_matrix(1, ring)
    u = [ring[n] for n in us]
    v = [ring[n] for n in vs]
    gens = [X[r][c] - u[r] * v[c] for r in range(3) for c in range(3)]
    gens.append(u[0] * u[2] * 2 + u[1] ** 2)
    gens.append(v[0] * v[2] * 2 + v[1] ** 2)
    image = eliminate(Ideal(gens, ring), us + vs)
    target = r_ideal(1, prime)
    image = image.embed(target.ring)
    return all(radical_member(g, target) for g in image.gens) and all(
        radical_member(g, image) for g in target.gens
    )


def _random_isotropic_block(i: int, rng, p: int):
    """(E', B') with B' H + H B'^t + E' E'^t = 0 for i x i blocks (E' a column)."""
    e = [rng.randrange(p) for _ in range(i)]
    skew = [[0] * i for _ in range(i)]
    for a in range(i):
        for b in range(a + 1, i):
            x = rng.randrange(p)
            skew[a][b], skew[b][a] = x, -x % p
    half = pow(2, -1, p)
    z = [[(-half * e[a] * e[b] + skew[a][b]) % p for b in range(i)] for a in range(i)]
    # B' = Z H, so that B' H = Z and Z + Z^t = -E' E'^t
    bprime = [[z[a][i - 1 - b] for b in range(i)] for a in range(i)]
    return e, bprime


def sample_r_point(i: int, rng, p: int) -> dict[str, int]:
    """A random F_p point of R_i with invertible upper-left i x i block.

    X = L A R with R = [I, E1', B'] and L = [I; E2'; C'] satisfying
    R H R^t = 0 and L^t H L = 0.
    """
    while True:
        a = [[rng.randrange(p) for _ in range(i)] for _ in range(i)]
        if i == 0 or pm.rank_over_prime(
            [[PolyRing([], GF(p)).const(x) for x in row] for row in a], {}, p
        ) == i:
            break
    e1, b1 = _random_isotropic_block(i, rng, p)
    e2, c1t = _random_isotropic_block(i, rng, p)
    # L^t H L = 0 is the transpose of the same condition on L^t = [I, E2'^t, C'^t]
    right = [[(1 if b == r else 0) for b in range(i)] + [e1[r]] + b1[r] for r in range(i)]
    left_t = [[(1 if b == r else 0) for b in range(i)] + [e2[r]] + c1t[r] for r in range(i)]
    size = 2 * i + 1
    X = [[0] * size for _ in range(size)]
    for r in range(size):
        for c in range(size):
            X[r][c] = sum(left_t[k][r] * a[k][l] * right[l][c] for k in range(i) for l in range(i)) % p
    names = matrix_names(size)
    return {names[r][c]: X[r][c] for r in range(size) for c in range(size)}


def generic_smoothness_probe(i: int, trials: int = 100, prime: int = 32003, seed: int = 0) -> tuple[int, int]:
    """(#points with Jacobian rank equal to the codimension, #trials)."""
    import random

    rng = random.Random(seed)
    ideal = r_ideal(i, prime)
    size = 2 * i + 1
    expected = size * size - i * (2 * i + 1)
    good = 0
    for _ in range(trials):
        point = sample_r_point(i, rng, prime)
        if jacobian_rank_at(ideal.gens, point, prime) == expected:
            good += 1
    return good, trials


# ---------------------------------------------------------------- i = 0


@dataclass
class ExoticReport:
    equal: bool
    free_rank_one: bool
    reduced_basis: str


def exotic_i0_check(sign) -> ExoticReport:
    """<x^2 - pi^2, x - sign*pi> = <x - sign*pi>, and the quotient is free of rank one over Q[pi]."""
    from .exactpoly import BlockElimination

    s = parse_sign(sign)
    ring = PolyRing(["x", "pi"], QQ)
    x, pi = ring["x"], ring["pi"]
    full = Ideal([x ** 2 - pi ** 2, x - pi * s], ring)
    small = Ideal([x - pi * s], ring)
    equal = ideal_equal(full, small)
    order = BlockElimination(1)
    gb = full.groebner(order)
    # Q[pi]-basis of the quotient = monomials x^k not divisible by a leading x-power
    free = len(gb) == 1 and gb[0].lead(order)[0] == (1, 0)
    return ExoticReport(equal, free, "; ".join(str(g) for g in gb))
