"""Blow-up of the i = 1 chart along (X, pi) and checks on its affine charts.

The base is Q[X, pi] / (I^naive + I^sign) with X a 3 x 3 matrix.  The blow-up
has ten affine charts: one per entry y_rc (X = x_rc Y, pi = x_rc alpha with
y_rc = 1) and the alpha chart (X = pi Y).  Transpose, row reversal and column
reversal permute the entry charts (the reversals swap the two signs), leaving
four families represented by y11, y12, y22 and alpha.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import polymatrix as pm
from .chartideals import local_model_ideal, naive_generators, x_ring
from .exactpoly import (
    GF,
    QQ,
    Ideal,
    Poly,
    PolyRing,
    first_non_member,
    ideal_equal,
    jacobian_rank_at,
    krull_dim,
    radical_member,
    saturate,
)
from .spinalg import parse_sign, sign_label, spin_ideal_generators

POSITIONS = [(r, c) for r in (1, 2, 3) for c in (1, 2, 3)]
ENTRY_LABELS = [f"y{r}{c}" for r, c in POSITIONS]
ALL_LABELS = ENTRY_LABELS + ["alpha"]


def _position(label: str) -> tuple[int, int]:
    if label not in ENTRY_LABELS:
        raise ValueError(f"unknown chart label {label!r}")
    return int(label[1]), int(label[2])


# ---------------------------------------------------------------- symmetries

# name -> (entry map, sign factor applied to the spin ideal)
SYMMETRIES: dict[str, tuple[Callable[[int, int], tuple[int, int]], int]] = {
    "transpose": (lambda r, c: (c, r), 1),
    "reverse_rows": (lambda r, c: (4 - r, c), -1),
    "reverse_cols": (lambda r, c: (r, 4 - c), -1),
}

REPRESENTATIVES = ("y11", "y12", "y22")


def apply_symmetry(name: str, ideal: Ideal) -> Ideal:
    """Pull back an ideal in Q[X, pi] along the entry permutation."""
    move, _ = SYMMETRIES[name]
    ring = ideal.ring
    mapping = {f"x{r}{c}": ring["x%d%d" % move(r, c)] for r, c in POSITIONS}
    return Ideal([g.subs(mapping) for g in ideal.gens], ring)


def symmetry_check(name: str, sign) -> bool:
    """The symmetry carries I^naive + I^sign onto I^naive + I^(factor*sign)."""
    s = parse_sign(sign)
    _, factor = SYMMETRIES[name]
    return ideal_equal(apply_symmetry(name, local_model_ideal(1, s)), local_model_ideal(1, factor * s))


def chart_representative(label: str) -> tuple[str, list[str], int]:
    """(representative label, symmetry word carrying the chart to it, sign factor)."""
    if label == "alpha":
        return "alpha", [], 1
    start = _position(label)
    seen = {start: ([], 1)}
    frontier = [start]
    while frontier:
        nxt = []
        for pos in frontier:
            word, factor = seen[pos]
            if f"y{pos[0]}{pos[1]}" in REPRESENTATIVES:
                return f"y{pos[0]}{pos[1]}", word, factor
            for name, (move, f) in SYMMETRIES.items():
                image = move(*pos)
                if image not in seen:
                    seen[image] = (word + [name], factor * f)
                    nxt.append(image)
        frontier = nxt
    raise AssertionError("every entry is equivalent to a representative")


# ---------------------------------------------------------------- charts


@dataclass
class BlowupChart:
    label: str
    pivot: str  # the variable whose square is divided out
    ring: PolyRing
    substitution: dict[str, Poly]  # x_rc and pi in terms of chart variables
    naive: list[Poly]  # strict transforms of the naive generators
    relations: list[Poly]  # pi - x_pivot*alpha and unit relations y*w - 1
    units: dict[str, str]  # inverted variable -> inverse

    def strict_transform(self, g: Poly) -> Poly:
        h = g.subs(self.substitution, self.ring)
        return h.divide_by_monomial({self.pivot: 2})

    def total_transform(self, g: Poly) -> Poly:
        return g.subs(self.substitution, self.ring)

    def spin(self, sign) -> list[Poly]:
        src = x_ring(1, self.ring.field)
        return [self.strict_transform(g) for g in spin_ideal_generators(1, sign, src)]

    def ideal(self, sign=None) -> Ideal:
        gens = list(self.naive) + list(self.relations)
        if sign is not None:
            gens += self.spin(sign)
        return Ideal(gens, self.ring)


def _inverse_name(var: str) -> str:
    return "w" + var[1:]


def build_chart(label: str, localize: tuple[str, ...] = (), field=QQ) -> BlowupChart:
    """The chart D+(label) of the blow-up, optionally with some y-variables inverted."""
    y_all = [f"y{r}{c}" for r, c in POSITIONS]
    inverses = [_inverse_name(v) for v in localize]
    if label == "alpha":
        ring = PolyRing(y_all + inverses + ["pi"], field)
        pivot = "pi"
        sub = {f"x{r}{c}": ring["pi"] * ring[f"y{r}{c}"] for r, c in POSITIONS}
        sub["pi"] = ring["pi"]
        relations = []
    else:
        r0, c0 = _position(label)
        pivot = f"x{r0}{c0}"
        ys = [v for v in y_all if v != label]
        ring = PolyRing([pivot] + ys + ["alpha"] + inverses + ["pi"], field)
        x = ring[pivot]
        sub = {f"x{r}{c}": (x if (r, c) == (r0, c0) else x * ring[f"y{r}{c}"]) for r, c in POSITIONS}
        sub["pi"] = x * ring["alpha"]
        relations = [ring["pi"] - x * ring["alpha"]]
    for v in localize:
        if v not in ring.index:
            raise ValueError(f"{v} is not a chart variable")
        relations.append(ring[v] * ring[_inverse_name(v)] - 1)
    chart = BlowupChart(label, pivot, ring, sub, [], relations, dict(zip(localize, inverses)))
    chart.naive = [chart.strict_transform(g) for g in naive_generators(1, x_ring(1, field))]
    return chart


def saturation_cross_check(label: str, sign, localize: tuple[str, ...] = ()) -> bool:
    """The divided generators agree with the saturation of the total transform by the pivot."""
    chart = build_chart(label, localize)
    src = local_model_ideal(1, sign)
    total = Ideal([chart.total_transform(g) for g in src.gens] + chart.relations, chart.ring)
    return ideal_equal(saturate(total, chart.ring[chart.pivot]), chart.ideal(sign))


# ---------------------------------------------------------------- case families


@dataclass
class CaseFamily:
    key: str
    label: str
    localize: tuple[str, ...]
    eliminations: Callable  # (ring, s) -> ordered dict var -> expression
    target: Callable  # (ring, s) -> generators of the simplified ideal
    factors: Callable  # ring -> (f1, f2) with f1*f2 the pi = 0 generator
    cleared: Callable  # ring -> second factor times the clearing unit, without inverses
    clear_by: str | None  # the inverted variable used to clear the second factor
    solve_for: tuple[str, str]  # a variable each factor is linear in
    probe: dict[str, int]  # a point on both special-fiber components


def _case1_elim(R, s):
    y12, y21, y22 = R["y12"], R["y21"], R["y22"]
    t = y12 * y21 - y22 * 2
    return {
        "y13": -(y12 ** 2) / 2,
        "y31": -(y21 ** 2) / 2,
        "y23": y12 * t / 2,
        "y32": y21 * t / 2,
        "y33": t ** 2 / 4,
        "alpha": (y22 - y12 * y21) * (-s),
    }


def _case2_elim(R, s):
    y13, w13, y22, y23 = R["y13"], R["w13"], R["y22"], R["y23"]
    y11 = -w13 / 2
    q = y11 * y23 + y22
    return {
        "y11": y11,
        "y21": y11 * q * 2,
        "y31": -(y11 * q ** 2) * 2,
        "y32": y11 * y23 * q * 2,
        "y33": y11 * y23 ** 2,
        "alpha": (y13 * y22 - y23) * w13 * s,
    }


def _case3a_elim(R, s):
    y12, y21, w11 = R["y12"], R["y21"], R["w11"]
    return {
        "y13": -(y12 ** 2) * w11 / 2,
        "y31": -(y21 ** 2) * w11 / 2,
        "y23": -w11 * (y12 + R["y13"] * y21),
        "y32": -w11 * (y21 + y12 * R["y31"]),
        "y33": w11 * (1 + y21 * R["y23"] * 2 - y12 * R["y32"] - R["y13"] * R["y31"]),
        "alpha": (y12 * y21 * w11 - 1) * s,
    }


def _case3b_elim(R, s):
    y12, y23, w13 = R["y12"], R["y23"], R["w13"]
    return {
        "y11": -(y12 ** 2) * w13 / 2,
        "y33": -(y23 ** 2) * w13 / 2,
        "y21": -w13 * (y12 + R["y11"] * y23),
        "y32": -w13 * (y23 + y12 * R["y33"]),
        "y31": w13 * (1 + y12 * R["y32"] - R["y11"] * R["y33"]),
        "alpha": (y12 * y23 * w13 - 1) * (-s),
    }


CASES: dict[str, CaseFamily] = {
    "y11": CaseFamily(
        "y11", "y11", (), _case1_elim,
        lambda R, s: [R["x11"] * (R["y22"] - R["y12"] * R["y21"]) + R["pi"] * s],
        lambda R: (R["x11"], R["y22"] - R["y12"] * R["y21"]),
        lambda R: R["y22"] - R["y12"] * R["y21"],
        None,
        ("x11", "y22"),
        {"x11": 0, "y12": 0, "y21": 0, "y22": 0},
    ),
    "y12": CaseFamily(
        "y12", "y12", ("y13",), _case2_elim,
        lambda R, s: [R["x12"] * (R["y13"] * R["y22"] - R["y23"]) - R["pi"] * R["y13"] * s, R["y13"] * R["w13"] - 1],
        lambda R: (R["x12"], R["y13"] * R["y22"] - R["y23"]),
        lambda R: R["y13"] * R["y22"] - R["y23"],
        None,
        ("x12", "y23"),
        {"x12": 0, "y13": 1, "w13": 1, "y22": 0, "y23": 0},
    ),
    "y22:y11": CaseFamily(
        "y22:y11", "y22", ("y11",), _case3a_elim,
        lambda R, s: [R["x22"] * (R["y12"] * R["y21"] * R["w11"] - 1) - R["pi"] * s, R["y11"] * R["w11"] - 1],
        lambda R: (R["x22"], R["y12"] * R["y21"] * R["w11"] - 1),
        lambda R: R["y12"] * R["y21"] - R["y11"],
        "y11",
        ("x22", "y21"),
        {"x22": 0, "y11": 1, "w11": 1, "y12": 1, "y21": 1},
    ),
    "y22:y13": CaseFamily(
        "y22:y13", "y22", ("y13",), _case3b_elim,
        lambda R, s: [R["x22"] * (R["y12"] * R["y23"] * R["w13"] - 1) + R["pi"] * s, R["y13"] * R["w13"] - 1],
        lambda R: (R["x22"], R["y12"] * R["y23"] * R["w13"] - 1),
        lambda R: R["y12"] * R["y23"] - R["y13"],
        "y13",
        ("x22", "y12"),
        {"x22": 0, "y13": 1, "w13": 1, "y12": 1, "y23": 1},
    ),
}

# variables of the y22 chart whose non-vanishing loci cover it; y12 and y21
# are not needed since y12^2 + 2 y11 y13 and y21^2 + 2 y11 y31 vanish there
Y22_COVER = ("y11", "y13")


def case_chart(key: str, field=QQ) -> BlowupChart:
    fam = CASES[key]
    return build_chart(fam.label, fam.localize, field)


def _resolve(raw: dict[str, Poly]) -> dict[str, Poly]:
    """Rewrite each elimination in terms of the variables that are kept."""
    out: dict[str, Poly] = {}
    for var, expr in raw.items():
        out[var] = expr.subs(out) if out else expr
    return out


def reduced_ring(key: str, chart: BlowupChart) -> PolyRing:
    gone = set(CASES[key].eliminations(chart.ring, 1))
    return PolyRing([n for n in chart.ring.names if n not in gone], chart.ring.field)


@dataclass
class CaseReport:
    key: str
    sign: str
    ok: bool
    eliminations_hold: bool
    chart_in_target: bool
    target_in_chart: bool
    offending: str | None = None


def verify_case_simplification(key: str, sign, family: CaseFamily | None = None) -> CaseReport:
    """Check that the chart with the spin condition is the displayed principal ideal.

    Each claimed elimination v = e lies in the chart ideal, and after
    substituting them the chart ideal equals the target in the remaining
    variables (containment both ways).
    """
    s = parse_sign(sign)
    fam = family or CASES[key]
    chart = build_chart(fam.label, fam.localize)
    full = chart.ideal(s)
    elim = _resolve(fam.eliminations(chart.ring, s))
    bad = first_non_member([chart.ring[v] - e for v, e in elim.items()], full)
    if bad is not None:
        return CaseReport(key, sign_label(s), False, False, False, False, str(bad))
    small = PolyRing([n for n in chart.ring.names if n not in elim], chart.ring.field)
    image = Ideal([g.subs(elim, small) for g in full.gens], small)
    target = Ideal([t.embed(small) for t in fam.target(chart.ring, s)], small)
    bad = first_non_member(image.gens, target)
    forward = bad is None
    back = first_non_member(target.gens, image)
    offending = str(bad) if bad is not None else (str(back) if back is not None else None)
    ok = forward and back is None
    return CaseReport(key, sign_label(s), ok, True, forward, back is None, offending)


def y22_cover_check(sign=None, cover: tuple[str, ...] = Y22_COVER) -> bool:
    """The y22 chart is covered by the loci where one of ``cover`` is invertible."""
    chart = build_chart("y22")
    ideal = chart.ideal(sign) + [chart.ring[v] for v in cover]
    return ideal.is_unit()


def base_chart_ideal_check(sign) -> bool:
    """The y11 chart ideal contains 2*y13 + y12^2 (the y13 elimination with y11 = 1)."""
    chart = build_chart("y11")
    R = chart.ring
    return chart.ideal(sign).contains(R["y13"] * 2 + R["y12"] ** 2)


# ---------------------------------------------------------------- orthogonal-group chart


def _det3(R: PolyRing) -> Poly:
    Y = [[R[f"y{r}{c}"] for c in (1, 2, 3)] for r in (1, 2, 3)]
    return pm.det(Y)


def spin_component_det(sign) -> int:
    """Determinant of Y on the component cut out by the spin condition."""
    return -parse_sign(sign)


@dataclass
class OrthogonalReport:
    sign: str
    ok: bool
    two_components: bool  # det Y = +1 and det Y = -1 both meet O(3)
    separated: bool  # det Y - d is not in rad(O(3)) but lies in O(3) + spin
    equals_component: bool  # O(3) + spin = O(3) + (det Y - d)
    jacobian_rank_identity: int  # rank of the O(3) relations at Y = I
    jacobian_rank_spin: int  # rank of O(3) + spin at Y = d*I


def orthogonal_chart_check(sign, prime: int = 32003) -> OrthogonalReport:
    s = parse_sign(sign)
    chart = build_chart("alpha")
    R = chart.ring
    o3 = Ideal(chart.naive, R)
    with_spin = Ideal(chart.naive + chart.spin(s), R)
    det = _det3(R)
    d = spin_component_det(s)
    two = o3.contains(det ** 2 - 1) and not radical_member(det - 1, o3) and not radical_member(det + 1, o3)
    separated = not radical_member(det - d, o3) and with_spin.contains(det - d) and not with_spin.is_unit()
    equals = ideal_equal(with_spin, o3 + [det - d])
    ident = {f"y{r}{c}": int(r == c) for r, c in POSITIONS}
    ident["pi"] = 0
    scaled = {k: (v * d if k != "pi" else 0) for k, v in ident.items()}
    names = [f"y{r}{c}" for r, c in POSITIONS]
    rank_id = jacobian_rank_at(chart.naive, ident, prime, names)
    rank_spin = jacobian_rank_at(chart.naive + chart.spin(s), scaled, prime, names)
    ok = two and separated and equals and rank_id == 6 and rank_spin == 6
    return OrthogonalReport(sign_label(s), ok, two, separated, equals, rank_id, rank_spin)


# ---------------------------------------------------------------- compatibility


def chart_compatibility(sign, first: str = "y11", second: str = "y22") -> bool:
    """On the overlap of two entry charts the ideals agree under the transition map."""
    s = parse_sign(sign)
    a = build_chart(first)
    b = build_chart(second)
    z = a.ring.fresh_name("z")
    ring = a.ring.extend([z])
    zz = ring[z]
    xa = ring[a.pivot]
    hinge = ring[second]  # y_second in chart a, inverted by z
    mapping = {b.pivot: xa * hinge, "alpha": ring["alpha"] * zz, "pi": ring["pi"]}
    for r, c in POSITIONS:
        name = f"y{r}{c}"
        if name == second:
            continue
        mapping[name] = zz if name == first else ring[name] * zz
    unit = hinge * zz - 1
    left = Ideal([g.embed(ring) for g in a.ideal(s).gens] + [unit], ring)
    right = Ideal([g.subs(mapping, ring) for g in b.ideal(s).gens] + [unit], ring)
    return ideal_equal(left, right)


def isomorphism_off_center(sign, label: str = "y11") -> bool:
    """Inverting the pivot entry, the chart ideal pulls back to the base ideal."""
    s = parse_sign(sign)
    chart = build_chart(label)
    base = local_model_ideal(1, s)
    z = base.ring.fresh_name("z")
    ring = base.ring.extend([z])
    zz = ring[z]
    mapping = {chart.pivot: ring[chart.pivot], "alpha": ring["pi"] * zz, "pi": ring["pi"]}
    for r, c in POSITIONS:
        name = f"y{r}{c}"
        if name in chart.ring.index:
            mapping[name] = ring[f"x{r}{c}"] * zz
    unit = ring[chart.pivot] * zz - 1
    left = Ideal([g.embed(ring) for g in base.gens] + [unit], ring)
    right = Ideal([g.subs(mapping, ring) for g in chart.ideal(s).gens] + [unit], ring)
    return ideal_equal(left, right)


# ---------------------------------------------------------------- semi-stability


def _quadric_rank(f: Poly) -> int:
    """Rank of the quadratic form of the homogenisation of f (degree <= 2)."""
    from fractions import Fraction

    names = f.variables()
    size = len(names) + 1  # last slot is the homogenising variable
    idx = {n: k for k, n in enumerate(names)}
    q = [[Fraction(0)] * size for _ in range(size)]
    for m, c in f.terms.items():
        c = f.ring.field.to_fraction(c)
        slots = []
        for j, e in enumerate(m):
            if e:
                slots += [idx[f.ring.names[j]]] * e
        slots += [size - 1] * (2 - len(slots))
        a, b = slots
        if a == b:
            q[a][a] += c
        else:
            q[a][b] += c / 2
            q[b][a] += c / 2
    return pm.rational_rank(q)


def is_irreducible_low_degree(f: Poly) -> bool:
    """Irreducibility over the algebraic closure for polynomials of degree at most 2."""
    d = f.total_degree()
    if d == 1:
        return True
    if d != 2:
        raise ValueError("only degrees 1 and 2 are handled")
    return _quadric_rank(f) >= 3


@dataclass
class SemistabilityReport:
    key: str
    sign: str
    product_exact: bool
    smooth_samples: tuple[int, int]  # good points on each factor
    trials: int
    insufficient: bool  # too many rejected samples
    coprime: bool
    irreducible: bool
    transversal_probe: int  # gradient rank at the probe point (units excluded)
    transversal_samples: int  # random points on both factors with rank 2

    @property
    def ok(self) -> bool:
        return (
            self.product_exact
            and self.smooth_samples == (self.trials, self.trials)
            and not self.insufficient
            and self.coprime
            and self.irreducible
            and self.transversal_probe == 2
            and self.transversal_samples == self.trials
        )


def _sample_on(f: Poly, var: str, free: list[str], units: dict[str, str], rng, p: int,
               fixed: dict[str, int] | None = None):
    """A random F_p point with f = 0, solving the linear variable ``var``; None on failure."""
    point = {v: rng.randrange(p) for v in free}
    point.update(fixed or {})
    for y, w in units.items():
        if point[y] % p == 0:
            return None
        point[w] = pow(point[y], -1, p)
    if f.degree_in(var) != 1:
        raise ValueError(f"{f} is not linear in {var}")
    a = f.diff(var)
    b = f.subs({var: 0})
    partial = {k: v for k, v in point.items() if k != var}
    av = a.evaluate(partial) % p
    if av == 0:
        return None
    point[var] = (-b.evaluate(partial) * pow(av, -1, p)) % p
    return point


def semistability_check(key: str, sign, trials: int = 100, prime: int = 32003, seed: int = 0) -> SemistabilityReport:
    """Special fiber of a verified chart: a product of two smooth, coprime, transversal factors."""
    if key not in CASES:
        raise ValueError("semi-stability is checked on the y11, y12 and y22 case families")
    s = parse_sign(sign)
    fam = CASES[key]
    chart = case_chart(key)
    small = reduced_ring(key, chart)
    fq = GF(prime)
    target = [t.embed(small) for t in fam.target(chart.ring, s)]
    f1, f2 = (f.embed(small) for f in fam.factors(chart.ring))
    product_exact = target[0].subs({"pi": 0}) == f1 * f2

    units = dict(chart.units)
    unit_rel = [small[y] * small[w] - 1 for y, w in units.items()]
    special = [n for n in small.names if n != "pi"]
    unit_vars = set(units.values())
    free = [n for n in special if n not in unit_vars]
    rng = random.Random(seed)
    factors = [f1, f2]
    good = [0, 0]
    rejected = 0
    for k in (0, 1):
        f, other, var = factors[k], factors[1 - k], fam.solve_for[k]
        fp, op = f.change_field(fq), other.change_field(fq)
        rel_p = [u.change_field(fq) for u in unit_rel]
        got = 0
        while got < trials and rejected < 20 * trials:
            pt = _sample_on(fp, var, [v for v in free if v != var], units, rng, prime)
            if pt is None or op.evaluate(pt) % prime == 0:
                rejected += 1
                continue
            pt["pi"] = 0
            got += 1
            if jacobian_rank_at([fp] + rel_p, pt, prime, special) == 1 + len(rel_p):
                good[k] += 1
    insufficient = rejected >= 20 * trials

    def with_units(gens):
        return Ideal(list(gens) + unit_rel, small)

    coprime = (
        not radical_member(f2, with_units([f1]))
        and not radical_member(f1, with_units([f2]))
        and krull_dim(with_units([f1, f2])) == small.nvars - len(unit_rel) - 2
    )
    cleared = fam.cleared(chart.ring).embed(small)
    if fam.clear_by is None:
        same = cleared == f2
    else:
        same = with_units([]).contains(small[fam.clear_by] * f2 - cleared)
    irreducible = same and is_irreducible_low_degree(f1) and is_irreducible_low_degree(cleared)

    f1p, f2p = f1.change_field(fq), f2.change_field(fq)
    rel_p = [u.change_field(fq) for u in unit_rel]
    probe = dict(fam.probe)
    for n in special:
        probe.setdefault(n, 0)
    probe["pi"] = 0
    probe_rank = jacobian_rank_at([f1p, f2p] + rel_p, probe, prime, special) - len(rel_p)
    cross = 0
    attempts = 0
    var1, var2 = fam.solve_for
    while cross < trials and attempts < 20 * trials:
        attempts += 1
        pt = _sample_on(f2p, var2, [v for v in free if v not in (var1, var2)], units, rng, prime, {var1: 0})
        if pt is None:
            continue
        pt["pi"] = 0
        if jacobian_rank_at([f1p, f2p] + rel_p, pt, prime, special) == 2 + len(rel_p):
            cross += 1
    return SemistabilityReport(
        key, sign_label(s), product_exact, (good[0], good[1]), trials,
        insufficient or attempts >= 20 * trials, coprime, irreducible, probe_rank, cross,
    )

