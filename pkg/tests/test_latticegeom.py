import pytest

from spinlocal.latticegeom import (
    base_point,
    check_naive,
    lift_point,
    representative_point,
    stratum_rank,
)
from spinlocal.weylcomb import invariant_range

LEVELS = [(n, i, level) for n in range(1, 6) for i in range(n + 1) for level in invariant_range(n, i)]


@pytest.mark.parametrize("n,i,level", LEVELS)
def test_representatives_are_naive_points(n, i, level):
    point = representative_point(n, i, level)
    assert check_naive(point).ok
    assert stratum_rank(point) == level


@pytest.mark.parametrize("twist", [1, -1])
@pytest.mark.parametrize("n,i,level", LEVELS)
def test_lifts_reduce_to_representatives(n, i, level, twist):
    lift = lift_point(n, i, level, twist)
    assert check_naive(lift).ok
    assert lift.same_special_fiber(representative_point(n, i, level))


def test_base_point_is_most_degenerate():
    assert stratum_rank(base_point(4, 2)) == 0
    assert stratum_rank(base_point(4, 3)) == 2


def test_bad_arguments():
    with pytest.raises(ValueError):
        representative_point(2, 3, 0)
    with pytest.raises(ValueError):
        lift_point(4, 2, 0, twist=2)
    with pytest.raises(ValueError):
        lift_point(4, 1, 5)
