from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spinlocal.exactpoly import (
    GF,
    GREVLEX,
    LEX,
    QQ,
    BlockElimination,
    Ideal,
    NotOnVariety,
    PolyRing,
    ResourceLimit,
    budget,
    eliminate,
    groebner,
    ideal_equal,
    ideal_member,
    jacobian_rank_at,
    krull_dim,
    radical_member,
    recording_bases,
    saturate,
    spair_certificate,
)

R = PolyRing(["x", "y", "z"], QQ)
x, y, z = R.gens()


def small_poly(ring):
    term = st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))

    def build(terms):
        return ring.from_terms({(a, b, c): k for k, a, b, c in terms if k}) if terms else ring.zero

    return st.lists(term, max_size=4).map(build)


@given(small_poly(R), small_poly(R), small_poly(R))
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()
    assert (a * b) * c == a * (b * c)


@given(small_poly(PolyRing(["x", "y", "z"], GF(7))), small_poly(PolyRing(["x", "y", "z"], GF(7))))
@settings(max_examples=40, deadline=None)
def test_prime_field_arithmetic(a, b):
    assert (a + b) ** 2 == a * a + a * b * 2 + b * b
    assert all(0 < c < 7 for c in (a * b).terms.values())


def test_field_inverse_and_characteristic():
    F = GF(32003)
    assert F(F.inv(F(5)) * 5) == 1
    with pytest.raises(ValueError):
        GF(15)


def test_orders():
    assert x.lead(LEX)[0] == (1, 0, 0)
    f = x * y + z ** 3
    assert f.lead(GREVLEX)[0] == (0, 0, 3)
    assert f.lead(LEX)[0] == (1, 1, 0)
    assert f.lead(BlockElimination(1))[0] == (1, 1, 0)


def _sympy_basis(polys, order):
    syms = sympy.symbols("x y z")
    exprs = [sum(int(c) * sympy.prod(v ** e for v, e in zip(syms, m)) for m, c in p.terms.items())
             for p in polys]
    basis = sympy.groebner(exprs, *syms, order=order)
    return [R.from_terms({m: Fraction(int(c.p), int(c.q)) for m, c in sympy.Poly(g, *syms).terms()}) for g in basis.exprs]


@pytest.mark.parametrize("gens", [
    lambda: [x + y + z, x * y + y * z + z * x, x * y * z - 1],
    lambda: [x ** 2 - y, x ** 3 - z],
    lambda: [x * y - z ** 2, y ** 2 - x * z, x ** 2 * y - z ** 3 + 1],
])
@pytest.mark.parametrize("order,name", [(GREVLEX, "grevlex"), (LEX, "lex")])
def test_groebner_matches_sympy(gens, order, name):
    gens = gens()
    ours = groebner(gens, order)
    theirs = [g.monic(order) for g in _sympy_basis(gens, name)]
    key = lambda g: order.key(g.lead(order)[0])
    assert sorted(ours, key=key) == sorted(theirs, key=key)
    assert spair_certificate(ours, order)


def test_chain_criterion_does_not_change_basis():
    gens = [x ** 2 * y - z, x * y ** 2 - x, y * z - x ** 2]
    assert groebner(gens, chain_criterion=True) == groebner(gens, chain_criterion=False)


def test_membership_agrees_between_orders():
    ideal = Ideal([x ** 2 - y, x * y - z], R)
    for f in (x ** 3 - z, x * z - y ** 2, x + y):
        assert ideal_member(f, ideal, GREVLEX) == ideal_member(f, ideal, LEX)


def test_unit_ideal():
    assert Ideal([x, x - 1], R).is_unit()
    assert krull_dim(Ideal([x, x - 1], R)) == -1


def test_elimination_twisted_cubic():
    T = PolyRing(["t", "x", "y", "z"], QQ)
    t = T["t"]
    image = eliminate(Ideal([T["x"] - t, T["y"] - t ** 2, T["z"] - t ** 3], T), ["t"])
    target = Ideal([x ** 2 - y, x * y - z, y ** 2 - x * z], R)
    assert ideal_equal(image.embed(R), target)
    assert krull_dim(target) == 1


def test_radical_and_saturation():
    ideal = Ideal([x ** 2], R)
    assert radical_member(x, ideal)
    assert not ideal.contains(x)
    assert not radical_member(y, ideal)
    sat = saturate(Ideal([x * y, x * z], R), x)
    assert ideal_equal(sat, Ideal([y, z], R))


def test_jacobian_rank():
    F = PolyRing(["x", "y", "z"], GF(101))
    sphere = [F["x"] ** 2 + F["y"] ** 2 + F["z"] ** 2 - 1]
    assert jacobian_rank_at(sphere, {"x": 1, "y": 0, "z": 0}, 101) == 1
    cone = [F["x"] ** 2 + F["y"] ** 2 - F["z"] ** 2]
    assert jacobian_rank_at(cone, {"x": 0, "y": 0, "z": 0}, 101) == 0
    with pytest.raises(NotOnVariety):
        jacobian_rank_at(sphere, {"x": 0, "y": 0, "z": 0}, 101)


def test_resource_budget():
    gens = [x ** 3 - y * z, y ** 3 - x * z, z ** 3 - x * y, x * y * z - 1]
    with pytest.raises(ResourceLimit):
        groebner(gens, max_pairs=2)
    with budget(max_basis=2):
        with pytest.raises(ResourceLimit):
            groebner(gens)
    assert groebner(gens)  # the budget is restored on exit


def test_recording_bases():
    with recording_bases() as seen:
        Ideal([x ** 2 - y], R).contains(x ** 4 - y ** 2)
    assert len(seen) == 1 and spair_certificate(*seen[0])


def test_substitution_and_division():
    f = (x * y + z) ** 2
    assert f.subs({"z": x * y}) == x ** 2 * y ** 2 * 4
    g = (x ** 2 * y + x ** 3).divide_by_monomial({"x": 2})
    assert g == y + x
    with pytest.raises(ValueError):
        (x + y).divide_by_monomial({"x": 1})
    assert (x ** 2 * y + x ** 3).monomial_content() == {"x": 2}


@pytest.mark.parametrize("product,chain", [(True, True), (True, False), (False, True), (False, False)])
def test_certificate_rejects_non_basis(product, chain):
    flags = {"product_criterion": product, "chain_criterion": chain}
    gens = [x ** 2 - y, x * y - z]
    assert not spair_certificate(gens, **flags)
    basis = groebner(gens)
    assert spair_certificate(basis, **flags)
    assert spair_certificate([x - 1, y ** 2 - z], **flags)
    full = groebner([x ** 2 * y - z, x * y ** 2 - x, y * z - x ** 2])
    assert spair_certificate(full, **flags)
    # dropping y^2 z - z leaves an S-pair with a nonzero remainder
    assert not spair_certificate([full[0], full[2]], **flags)
