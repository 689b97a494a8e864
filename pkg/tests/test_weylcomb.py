import itertools
import math

import pytest

from spinlocal.weylcomb import (
    AffineWeylElement,
    StarPermutation,
    all_star_permutations,
    canonical_parahoric,
    enumerate_perm_subsets,
    enumerate_permissible_faces,
    face_defect,
    face_from_subset,
    face_subset,
    identity_permutation,
    invariant_range,
    is_naively_permissible,
    is_permissible_face,
    is_permissible_general,
    maximal_class_count,
    maximal_classes,
    omega,
    omega_neg,
    orbit_count,
    orbit_invariant,
    orbit_representative,
    orbits,
    parahoric_classes,
)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hyperoctahedral_group(n):
    perms = list(all_star_permutations(n))
    assert len(set(perms)) == 2 ** n * math.factorial(n)
    e = identity_permutation(n)
    for p in perms[:10]:
        assert p.compose(p.inverse()) == e


def test_star_permutation_rejects_bad_images():
    with pytest.raises(ValueError):
        StarPermutation((1, 2, 4, 3))


def test_action_is_a_group_action():
    n = 2
    perms = list(all_star_permutations(n))
    a = AffineWeylElement.from_parts(n, (1, -1), 0, perms[3])
    b = AffineWeylElement.from_parts(n, (0, 2), 1, perms[5])
    v = (3, -1, 4, 1, 5)
    assert a.compose(b).act(v) == a.act(b.act(v))


def test_translation_shifts_defect_by_twice_c():
    n, i = 3, 1
    base = face_defect(omega(n, i), omega_neg(n, i), n)
    assert base == 0
    for b in itertools.product(range(-1, 2), repeat=n):
        for c in (-1, 0, 1, 2):
            for p in list(all_star_permutations(n))[:6]:
                w = AffineWeylElement.from_parts(n, b, c, p)
                d = face_defect(w.act(omega(n, i)), w.act(omega_neg(n, i)), n)
                assert d == base + 2 * c


def test_group_faces_are_never_permissible():
    # the defect is always even, while permissible faces have defect one
    n, i = 2, 1
    for b in itertools.product(range(-1, 2), repeat=n):
        for c in (-1, 0, 1):
            for p in all_star_permutations(n):
                w = AffineWeylElement.from_parts(n, b, c, p)
                assert not is_permissible_general(w, [i])


def test_small_example_has_a_unique_partner():
    v_pos = (0, 0, 1, 0, 0)
    partners = [v for v in itertools.product((0, 1), repeat=5) if is_permissible_face(v_pos, v, 2, 1)]
    assert partners == [(1, 0, 1, 1, 1)]
    assert not is_permissible_face(v_pos, (0, 0, 1, 0, 1), 2, 1)


@pytest.mark.parametrize("n,i,count", [(1, 0, 2), (2, 1, 5), (3, 1, 12), (4, 2, 33), (4, 1, 28)])
def test_subset_counts(n, i, count):
    assert len(enumerate_perm_subsets(n, i)) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_faces_biject_with_subsets(n):
    for i in range(n + 1):
        faces = enumerate_permissible_faces(n, i)
        subsets = enumerate_perm_subsets(n, i)
        assert sorted(map(sorted, (face_subset(f[0], n, i) for f in faces))) == sorted(map(sorted, subsets))
        for s in subsets:
            v_pos, v_neg = face_from_subset(s, n, i)
            assert is_permissible_face(v_pos, v_neg, n, i)
            assert face_subset(v_pos, n, i) == s
            assert face_defect(v_pos, v_neg, n) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_orbit_counts_and_invariant(n):
    for i in range(n + 1):
        orbs = orbits(n, i)
        assert orbit_count(n, i) == min(i, n - i) + 1
        levels = sorted({orbit_invariant(s, n, i) for s in orb}.pop() for orb in orbs)
        assert all(len({orbit_invariant(s, n, i) for s in orb}) == 1 for orb in orbs)
        assert levels == list(invariant_range(n, i))
        for level in invariant_range(n, i):
            rep = orbit_representative(n, i, level)
            assert is_naively_permissible(rep, n, i)
            assert orbit_invariant(rep, n, i) == level


def test_representative_outside_range():
    with pytest.raises(ValueError):
        orbit_representative(4, 2, 3)
    with pytest.raises(ValueError):
        orbit_count(2, 3)


def test_face_dict_general_levels():
    n = 2
    faces = {i: face_from_subset(orbit_representative(n, i, max(0, 2 * i - n)), n, i) for i in (0, 1)}
    assert is_permissible_general(faces, [0, 1])
    assert not is_permissible_general(faces, [0, 1, 2])


@pytest.mark.parametrize("n", range(1, 7))
def test_parahoric_classes(n):
    assert len(parahoric_classes(n)) == (2 ** (n + 1) + 2 ** ((n + 2) // 2)) // 2 - 1
    assert len(maximal_classes(n)) == maximal_class_count(n)
    for c in parahoric_classes(n):
        assert canonical_parahoric(c, n) == c
        assert canonical_parahoric([n - i for i in c], n) == c
