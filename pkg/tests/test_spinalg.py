import itertools

import pytest

from spinlocal import polymatrix as pm
from spinlocal.exactpoly import QQ, PolyRing
from spinlocal.latticegeom import representative_point
from spinlocal.spinalg import (
    lift_in_component,
    matrix_names,
    parse_sign,
    partner,
    self_perp_subsets,
    sgn_sigma_S,
    sgn_sigma_U,
    shuffle_sign_bruteforce,
    spin_ideal_generators,
    spin_membership,
    spin_pairs,
    spin_sign_of,
    subset_perp,
    wedge_subsets,
)
from spinlocal.weylcomb import invariant_range


@pytest.mark.parametrize("n", range(1, 6))
def test_sigma_s_closed_form(n):
    for s in itertools.combinations(range(1, 2 * n + 3), n + 1):
        assert sgn_sigma_S(s, n) == shuffle_sign_bruteforce(s, 2 * n + 2)


@pytest.mark.parametrize("i", range(1, 6))
def test_sigma_u_closed_form(i):
    for u in itertools.combinations(range(1, 2 * i + 2), i):
        assert sgn_sigma_U(u, i) == shuffle_sign_bruteforce(u, 2 * i + 1)


def test_parse_sign():
    assert parse_sign("plus") == parse_sign("+") == parse_sign(1) == 1
    assert parse_sign("minus") == -1
    with pytest.raises(ValueError):
        parse_sign(0)


@pytest.mark.parametrize("n", range(1, 5))
def test_partner_is_fixed_point_free_involution(n):
    for s in wedge_subsets(n):
        t = partner(s, n)
        assert t != s and partner(t, n) == s
        assert subset_perp(subset_perp(s, n), n) == s
    assert self_perp_subsets(n)
    for i in range(n + 1):
        pairs = spin_pairs(n, i)
        assert 2 * len(pairs) == len(wedge_subsets(n))


LEVELS = [(n, i, level) for n in range(1, 5) for i in range(n + 1) for level in invariant_range(n, i)]


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("n,i,level", LEVELS)
def test_lift_lands_in_requested_component(n, i, level, sign):
    point = lift_in_component(n, i, level, sign)
    assert spin_membership(point, sign)
    assert not spin_membership(point, -sign)
    assert spin_sign_of(point) == sign


@pytest.mark.parametrize("n,i,level", LEVELS)
def test_representatives_on_both_special_fibers(n, i, level):
    rep = representative_point(n, i, level)
    assert spin_membership(rep, 1) and spin_membership(rep, -1)


@pytest.mark.parametrize("sign", [1, -1])
def test_level_one_generators_have_checkerboard_signs(sign):
    names = [nm for row in matrix_names(3) for nm in row]
    ring = PolyRing(names + ["pi"], QQ)
    X = [[ring[nm] for nm in row] for row in matrix_names(3)]
    gens = spin_ideal_generators(1, sign, ring)
    expected = []
    for u in range(1, 4):
        for v in range(1, 4):
            rows = [r - 1 for r in range(1, 4) if r != 4 - u]
            cols = [c - 1 for c in range(1, 4) if c != 4 - v]
            expected.append(pm.minor(X, rows, cols) + ring["pi"] * X[u - 1][v - 1] * (sign * (-1) ** (u + v)))
    assert gens == expected
