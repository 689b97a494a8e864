import pytest

from spinlocal.chartideals import (
    build_chart,
    displayed_block_relations,
    exotic_i0_check,
    generic_smoothness_probe,
    implied_relations_check,
    irreducibility_oracle,
    local_model_ideal,
    r_ideal,
    special_fiber_equality,
    spin_oracle_check,
)
from spinlocal.exactpoly import ideal_equal, krull_dim


@pytest.mark.parametrize("n,i", [(1, 0), (2, 0), (2, 1), (3, 1), (4, 1), (5, 2)])
def test_free_variable_count(n, i):
    assert build_chart(n, i).free_count == (n - 2 * i) * (n + 2 * i + 1) // 2


def test_chart_needs_room():
    with pytest.raises(ValueError):
        build_chart(3, 2)


@pytest.mark.parametrize("n,i", [(1, 0), (2, 0), (2, 1), (3, 1)])
def test_implied_relations(n, i):
    assert implied_relations_check(n, i).ok
    if i:
        assert implied_relations_check(n, i, displayed=True).ok


def test_displayed_relations_need_positive_level():
    with pytest.raises(ValueError):
        displayed_block_relations(build_chart(2, 0))


@pytest.mark.parametrize("sign", ["plus", "minus"])
@pytest.mark.parametrize("n,i", [(1, 0), (2, 0), (2, 1), (3, 1)])
def test_spin_oracle(n, i, sign):
    report = spin_oracle_check(n, i, sign)
    assert report.ok, report.offending


def test_spin_oracle_distinguishes_signs():
    plus, minus = local_model_ideal(1, 1), local_model_ideal(1, -1)
    assert not ideal_equal(plus, minus)


@pytest.mark.parametrize("sign", [1, -1])
def test_special_fiber_level_one(sign):
    assert special_fiber_equality(1, sign)


def test_level_one_fiber_geometry():
    assert krull_dim(r_ideal(1)) == 3
    assert irreducibility_oracle(1)
    assert generic_smoothness_probe(1, prime=32003) == (100, 100)
    assert generic_smoothness_probe(1, prime=10007) == (100, 100)


@pytest.mark.parametrize("sign", [1, -1])
def test_exotic_level_zero(sign):
    report = exotic_i0_check(sign)
    assert report.equal and report.free_rank_one


@pytest.mark.deep
@pytest.mark.parametrize("sign", [1, -1])
def test_special_fiber_level_two(sign):
    assert special_fiber_equality(2, sign)
    assert krull_dim(r_ideal(2)) == 10


@pytest.mark.deep
def test_spin_oracle_level_two():
    assert spin_oracle_check(4, 2, "plus").ok
