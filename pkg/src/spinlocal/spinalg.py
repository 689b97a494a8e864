"""The involution on the top wedge, the spin eigenbasis, and the explicit spin ideal.

Subsets ``S`` of ``[1, 2n+2]`` of size ``n+1`` index wedge basis vectors.  The
reordered basis ``g`` of Lambda_{-i} is

    g = e_1..e_n, f_1, f_2, e_{n+1}..e_{2n-i}, pi0 e_{2n+1-i}..pi0 e_{2n}

and the split basis ``e'`` of V is

    e' = e_1..e_n, f_1 + pi f_2, (f_1 - pi f_2) / (2 pi0), e_{n+1}..e_{2n}

with ``phi(e'_a, e'_{2n+3-b}) = delta_ab``.  The involution is
``a(e'_S) = sgn(sigma_S) e'_{S-perp}``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import polymatrix as pm
from .exactpoly import QQ, Poly, PolyRing
from .latticegeom import PI_RING, LatticePoint, lift_point


def parse_sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ValueError(f"sign must be plus or minus, got {sign!r}")


def sign_label(sign: int) -> str:
    return "plus" if sign == 1 else "minus"


# ---------------------------------------------------------------- permutation signs


def shuffle_sign_bruteforce(subset: Iterable[int], size: int) -> int:
    """Sign of the permutation sending [1, k] onto the subset and the rest onto its complement, both increasing."""
    subset = sorted(subset)
    rest = [x for x in range(1, size + 1) if x not in set(subset)]
    images = subset + rest
    inversions = sum(1 for a, b in itertools.combinations(range(size), 2) if images[a] > images[b])
    return -1 if inversions % 2 else 1


def sgn_sigma_S(subset: Iterable[int], n: int) -> int:
    """(-1)^(sum S + ceil((n+1)/2)) for an (n+1)-subset of [1, 2n+2]."""
    subset = list(subset)
    return -1 if (sum(subset) + (n + 2) // 2) % 2 else 1


def sgn_sigma_U(subset: Iterable[int], i: int) -> int:
    """(-1)^(sum U + ceil(i/2)) for an i-subset of [1, 2i+1]."""
    subset = list(subset)
    return -1 if (sum(subset) + (i + 1) // 2) % 2 else 1


# ---------------------------------------------------------------- subset involutions


def subset_star(subset: Iterable[int], n: int) -> frozenset:
    return frozenset(2 * n + 3 - s for s in subset)


def subset_perp(subset: Iterable[int], n: int) -> frozenset:
    """Complement of S* in [1, 2n+2]."""
    return frozenset(range(1, 2 * n + 3)) - subset_star(subset, n)


def swap_middle(subset: Iterable[int], n: int) -> frozenset:
    """Exchange n+1 and n+2."""
    swap = {n + 1: n + 2, n + 2: n + 1}
    return frozenset(swap.get(s, s) for s in subset)


def wedge_subsets(n: int) -> list[frozenset]:
    return [frozenset(c) for c in itertools.combinations(range(1, 2 * n + 3), n + 1)]


def depth(subset: Iterable[int], n: int, i: int) -> int:
    """d_S = #(S intersect [2n+3-i, 2n+2])."""
    return sum(1 for s in subset if s >= 2 * n + 3 - i)


def partner(subset: frozenset, n: int) -> frozenset:
    """S-perp when S holds both or neither of n+1, n+2; otherwise S-perp with n+1, n+2 exchanged."""
    inside = (n + 1 in subset) + (n + 2 in subset)
    p = subset_perp(subset, n)
    return p if inside != 1 else swap_middle(p, n)


@dataclass(frozen=True)
class SpinPair:
    """One basis vector h_S = g_S + coefficient * g_T of the spin eigenspace."""

    rep: frozenset
    target: frozenset
    kind: str
    excess: int  # d_S - d_{S-perp}
    sgn: int

    def coefficient(self, sign: int, ring: PolyRing = PI_RING) -> Poly:
        pi = ring["pi"]
        p0 = -(pi ** 2)
        k, s = self.excess, sign * self.sgn
        if self.kind in ("I", "II"):
            return pi * p0 ** k * s
        if self.kind == "III":
            return -(pi ** (2 * k - 1)) * (-1) ** k * s
        if self.kind == "IV":
            return pi ** (2 * k - 1) * (-1) ** k * s
        return pi * s  # V, VI


def spin_pairs(n: int, i: int) -> list[SpinPair]:
    """The representatives S of B_0 with their partner and relation type."""
    out = []
    seen = set()
    for s in wedge_subsets(n):
        if s in seen:
            continue
        t = partner(s, n)
        if partner(t, n) != s or t == s:
            raise AssertionError("partner map is not a fixed-point-free involution")
        seen.update((s, t))
        ds, dt = depth(s, n, i), depth(t, n, i)
        if ds < dt or (ds == dt and n + 1 not in s):
            s, t, ds, dt = t, s, dt, ds
        has1, has2 = n + 1 in s, n + 2 in s
        if ds > dt:
            kind = {(True, True): "I", (True, False): "II", (False, True): "III", (False, False): "IV"}[(has1, has2)]
        else:
            kind = "V" if has2 else "VI"
        out.append(SpinPair(s, t, kind, ds - dt, sgn_sigma_S(s, n)))
    return out


def self_perp_subsets(n: int) -> list[frozenset]:
    """Subsets with S = S-perp (they are never their own partner)."""
    return [s for s in wedge_subsets(n) if subset_perp(s, n) == s]


# ---------------------------------------------------------------- change of basis g -> e'


def g_to_beta(n: int, i: int) -> list[int]:
    """0-based beta row feeding each g coordinate."""
    order = list(range(n)) + [2 * n, 2 * n + 1] + list(range(n, 2 * n))
    return order


def _eprime_columns(n: int, i: int, ring: PolyRing) -> dict[int, dict[int, Poly]]:
    """Columns of 2*pi*C where C expresses g_k in the e' basis (1-based, sparse)."""
    pi = ring["pi"]
    cube = -(pi ** 3) * 2
    cols: dict[int, dict[int, Poly]] = {}
    for k in range(1, 2 * n + 3):
        if k == n + 1:
            cols[k] = {n + 1: pi, n + 2: cube}
        elif k == n + 2:
            cols[k] = {n + 1: ring.one, n + 2: pi ** 2 * 2}
        elif k >= 2 * n - i + 3:
            cols[k] = {k: cube}
        else:
            cols[k] = {k: pi * 2}
    return cols


def wedge_to_eprime(coords: Mapping[frozenset, Poly], n: int, i: int, ring: PolyRing = PI_RING) -> dict:
    """Transform wedge coordinates in the g basis into the e' basis (up to a common unit factor).

    Uses that the change of basis is diagonal apart from the (n+1, n+2) block.
    """
    cols = _eprime_columns(n, i, ring)
    mid = {n + 1, n + 2}
    out: dict[frozenset, Poly] = {}

    def bump(key, val):
        if not val.is_zero():
            out[key] = out.get(key, ring.zero) + val

    for t, c in coords.items():
        if c.is_zero():
            continue
        rest = [k for k in t if k not in mid]
        diag = ring.one
        for k in rest:
            diag = diag * cols[k][k]
        inner = sorted(mid & t)
        if not inner:
            bump(t, c * diag)
        elif len(inner) == 2:
            block = cols[n + 1][n + 1] * cols[n + 2][n + 2] - cols[n + 2][n + 1] * cols[n + 1][n + 2]
            bump(t, c * diag * block)
        else:
            (col,) = inner
            for row, v in cols[col].items():
                r = frozenset(rest) | {row}
                bump(r, c * diag * v)
    return {k: v for k, v in out.items() if not v.is_zero()}


def apply_involution(coords: Mapping[frozenset, Poly], n: int) -> dict:
    """a(sum w_S e'_S) = sum w_S sgn(sigma_S) e'_{S-perp}."""
    return {subset_perp(s, n): v * sgn_sigma_S(s, n) for s, v in coords.items()}


def eigen_sign(coords: Mapping[frozenset, Poly], n: int) -> int | None:
    """+1 or -1 if the e'-coordinate vector is an eigenvector of the involution, else None."""
    if not coords:
        return None
    zero = next(iter(coords.values())).ring.zero
    image = apply_involution(coords, n)
    keys = set(coords) | set(image)
    for sign in (1, -1):
        if all((image.get(k, zero) - coords.get(k, zero) * sign).is_zero() for k in keys):
            return sign
    return None


def h_vector(pair: SpinPair, sign: int, ring: PolyRing = PI_RING) -> dict:
    return {pair.rep: ring.one, pair.target: pair.coefficient(sign, ring)}


# ---------------------------------------------------------------- membership


def g_minors(point: LatticePoint) -> dict[frozenset, Poly]:
    """Maximal minors of F_{-i} in the g basis, keyed by 1-based row subsets."""
    n = point.n
    order = g_to_beta(n, point.i)
    rows = [point.neg[r] for r in order]
    minors = pm.maximal_minors(rows)
    return {frozenset(r + 1 for r in key): v for key, v in minors.items()}


def spin_relations(minors: Mapping[frozenset, Poly], n: int, i: int, sign: int, ring: PolyRing = PI_RING) -> list:
    """a_T - coefficient * a_S for every representative S with partner T."""
    out = []
    for pair in spin_pairs(n, i):
        coeff = pair.coefficient(sign, PI_RING)
        coeff = coeff.embed(ring) if ring != PI_RING else coeff
        out.append(minors[pair.target] - coeff * minors[pair.rep])
    return out


class SpinInconsistency(AssertionError):
    """The relation test and the eigenvector test disagree."""


def spin_membership(point: LatticePoint, sign, cross_check: bool = True) -> bool:
    """Whether the wedge of F_{-i} lies in the declared spin eigenspace.

    Over Q[pi] the relations must hold identically; for a special-fiber point
    they are evaluated at pi = 0.  The eigenvector test in the e' basis is run
    as an independent cross-check for points over Q[pi].
    """
    s = parse_sign(sign)
    n, i = point.n, point.i
    minors = g_minors(point)
    rels = spin_relations(minors, n, i, s, point.ring)
    if point.special:
        return all(r.evaluate({"pi": 0}) == 0 for r in rels)
    verdict = all(r.is_zero() for r in rels)
    if cross_check:
        eig = eigen_sign(wedge_to_eprime(minors, n, i, point.ring), n)
        if verdict != (eig == s):
            raise SpinInconsistency(f"relation test says {verdict}, eigen test gives {eig}")
    return verdict


def spin_sign_of(point: LatticePoint):
    """The eigen sign of a point over Q[pi], or None."""
    return eigen_sign(wedge_to_eprime(g_minors(point), point.n, point.i, point.ring), point.n)


def lift_in_component(n: int, i: int, level: int, sign) -> LatticePoint:
    """The lift of the level-l representative that lies on the given spin component."""
    return lift_point(n, i, level, twist=parse_sign(sign) * (-1) ** (i - level))


# ---------------------------------------------------------------- the explicit ideal


def matrix_names(size: int, stem: str = "x") -> list[list[str]]:
    return [[f"{stem}{r}{c}" if size < 10 else f"{stem}{r}_{c}" for c in range(1, size + 1)] for r in range(1, size + 1)]


def u_perp(subset: Iterable[int], i: int) -> frozenset:
    return frozenset(range(1, 2 * i + 2)) - frozenset(2 * i + 2 - u for u in subset)


def spin_ideal_generators(i: int, sign, ring: PolyRing, stem: str = "x") -> list[Poly]:
    """[U-perp : U'-perp] - sign * (-1)^i sgn(U) sgn(U') pi [U : U'] over all i-subsets U, U'."""
    s = parse_sign(sign)
    size = 2 * i + 1
    names = matrix_names(size, stem)
    X = [[ring[nm] for nm in row] for row in names]
    pi = ring["pi"]
    subsets = [tuple(c) for c in itertools.combinations(range(1, size + 1), i)]
    out = []

    def m(rows, cols):
        if not rows:
            return ring.one
        return pm.minor(X, [r - 1 for r in rows], [c - 1 for c in cols])

    for u in subsets:
        for v in subsets:
            up, vp = sorted(u_perp(u, i)), sorted(u_perp(v, i))
            coeff = s * (-1) ** i * sgn_sigma_U(u, i) * sgn_sigma_U(v, i)
            out.append(m(up, vp) - pi * m(u, v) * coeff)
    return out
