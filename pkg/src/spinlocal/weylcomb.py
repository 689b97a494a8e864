"""Combinatorics of the extended affine Weyl group of the even orthogonal group.

Index conventions: for j in [1, 2n] the partner index is ``j* = 2n + 1 - j``.
Vectors in ``Z^{2n+1}`` are 0-based tuples whose last slot is the extra
coordinate ``2n+1``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


def star(j: int, n: int) -> int:
    return 2 * n + 1 - j


def vector_star(v: Sequence[int], n: int) -> tuple:
    """v*(j) = v(j*) on [1, 2n] and v*(2n+1) = -v(2n+1) - 1."""
    body = [v[star(j, n) - 1] for j in range(1, 2 * n + 1)]
    return tuple(body) + (-v[2 * n] - 1,)


# ---------------------------------------------------------------- signed permutations


@dataclass(frozen=True)
class StarPermutation:
    """A permutation of [1, 2m] commuting with j -> 2m + 1 - j (one-line notation)."""

    images: tuple

    def __post_init__(self):
        size = len(self.images)
        if size % 2 or sorted(self.images) != list(range(1, size + 1)):
            raise ValueError("not a permutation of [1, 2m]")
        for j, s in enumerate(self.images, start=1):
            if s + self.images[size - j] != size + 1:
                raise ValueError("permutation does not satisfy s(j) + s(2m+1-j) = 2m+1")

    @property
    def rank(self) -> int:
        return len(self.images) // 2

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def inverse(self) -> "StarPermutation":
        inv = [0] * len(self.images)
        for j, s in enumerate(self.images, start=1):
            inv[s - 1] = j
        return StarPermutation(tuple(inv))

    def compose(self, other: "StarPermutation") -> "StarPermutation":
        """(self o other)(j) = self(other(j))."""
        return StarPermutation(tuple(self(other(j)) for j in range(1, len(self.images) + 1)))


def identity_permutation(n: int) -> StarPermutation:
    return StarPermutation(tuple(range(1, 2 * n + 1)))


def all_star_permutations(n: int) -> Iterable[StarPermutation]:
    """All 2^n n! elements of the hyperoctahedral group acting on [1, 2n]."""
    for perm in itertools.permutations(range(1, n + 1)):
        for flips in itertools.product((False, True), repeat=n):
            images = [0] * (2 * n)
            for j, (target, flip) in enumerate(zip(perm, flips), start=1):
                t = star(target, n) if flip else target
                images[j - 1] = t
                images[star(j, n) - 1] = star(t, n)
            yield StarPermutation(tuple(images))


# ---------------------------------------------------------------- affine elements


def translation_vector(b: Sequence[int], c: int) -> tuple:
    """(b_1, ..., b_n, 2c - b_n, ..., 2c - b_1, c)."""
    b = tuple(int(x) for x in b)
    return b + tuple(2 * c - x for x in reversed(b)) + (int(c),)


def is_translation_vector(t: Sequence[int], n: int) -> bool:
    if len(t) != 2 * n + 1:
        return False
    c = t[2 * n]
    return all(t[j - 1] + t[star(j, n) - 1] == 2 * c for j in range(1, n + 1))


@dataclass(frozen=True)
class AffineWeylElement:
    """w = t_lambda * w0 acting on Z^{2n+1} by (w v)(i) = v(w0^{-1}(i)) + t(i)."""

    n: int
    translation: tuple
    finite: StarPermutation

    def __post_init__(self):
        if self.finite.rank != self.n:
            raise ValueError("finite part has the wrong rank")
        if not is_translation_vector(self.translation, self.n):
            raise ValueError("translation is not of the form (b, 2c - b reversed, c)")

    @classmethod
    def from_parts(cls, n: int, b: Sequence[int], c: int, finite: StarPermutation | None = None):
        return cls(n, translation_vector(b, c), finite or identity_permutation(n))

    def act(self, v: Sequence[int]) -> tuple:
        n = self.n
        if len(v) != 2 * n + 1:
            raise ValueError("vector has the wrong length")
        inv = self.finite.inverse()
        body = tuple(v[inv(j) - 1] + self.translation[j - 1] for j in range(1, 2 * n + 1))
        return body + (v[2 * n] + self.translation[2 * n],)

    def compose(self, other: "AffineWeylElement") -> "AffineWeylElement":
        """Group law with (self o other).act(v) == self.act(other.act(v))."""
        # t1 w1 t2 w2 = t1 (w1 . t2) w1 w2
        moved = self.act(other.translation)
        t = tuple(a for a in moved)
        return AffineWeylElement(self.n, t, self.finite.compose(other.finite))


# ---------------------------------------------------------------- faces and permissibility


def omega(n: int, i: int) -> tuple:
    """The vertex vector omega_i = ((-1)^(i), 0^(2n - i), -1)."""
    return (-1,) * i + (0,) * (2 * n - i) + (-1,)


def omega_neg(n: int, i: int) -> tuple:
    """The vertex vector omega_{-i} = (0^(2n - i), 1^(i), 0)."""
    return (0,) * (2 * n - i) + (1,) * i + (0,)


def face_defect(v_pos: Sequence[int], v_neg: Sequence[int], n: int):
    """The constant d with v_pos* + v_neg = (d^(2n), 0), or None when no such d exists."""
    s = vector_star(v_pos, n)
    tot = [a + b for a, b in zip(s, v_neg)]
    if tot[2 * n] != 0 or len(set(tot[: 2 * n])) != 1:
        return None
    return tot[0]


def is_face(v_pos: Sequence[int], v_neg: Sequence[int], n: int, i: int) -> bool:
    if len(v_pos) != 2 * n + 1 or len(v_neg) != 2 * n + 1:
        return False
    if not all(b >= a >= b - 1 for a, b in zip(v_pos, v_neg)):
        return False
    if sum(v_pos) != sum(v_neg) - 2 * i - 1:
        return False
    return face_defect(v_pos, v_neg, n) is not None


def is_permissible_face(v_pos: Sequence[int], v_neg: Sequence[int], n: int, i: int) -> bool:
    """Box bounds around (omega_i, omega_{-i}) and the sum condition, on a face.

    Accepted pairs always have v_pos(2n+1) = 0, v_neg(2n+1) = 1 and
    v_pos* + v_neg = (1^(2n), 0); these are asserted on the way out.
    """
    if not is_face(v_pos, v_neg, n, i):
        return False
    lo_p, lo_n = omega(n, i), omega_neg(n, i)
    if not all(lo <= v <= lo + 1 for lo, v in zip(lo_p, v_pos)):
        return False
    if not all(lo <= v <= lo + 1 for lo, v in zip(lo_n, v_neg)):
        return False
    if sum(v_pos) != n - i:
        return False
    # the last slot pairs f1 against f2; a nonzero value there is not isotropic
    if v_pos[2 * n] != 0:
        return False
    assert v_neg[2 * n] == 1
    assert face_defect(v_pos, v_neg, n) == 1
    return True


def face_subset(v_pos: Sequence[int], n: int, i: int) -> frozenset:
    """E = {j in [1, 2n] : v_pos(j) = omega_i(j)}."""
    base = omega(n, i)
    return frozenset(j for j in range(1, 2 * n + 1) if v_pos[j - 1] == base[j - 1])


def face_from_subset(subset: Iterable[int], n: int, i: int) -> tuple[tuple, tuple]:
    """The face with v_pos = omega_i + mu, mu(j) = 0 exactly on the subset, mu(2n+1) = 1."""
    subset = set(subset)
    base = omega(n, i)
    v_pos = tuple(base[j - 1] + (0 if j in subset else 1) for j in range(1, 2 * n + 1)) + (0,)
    s = vector_star(v_pos, n)
    v_neg = tuple(1 - x for x in s[: 2 * n]) + (1,)
    return v_pos, v_neg


def enumerate_permissible_faces(n: int, i: int) -> list[tuple[tuple, tuple]]:
    """All permissible faces at level i, found by brute force over the box bounds."""
    lo = omega(n, i)
    found = []
    for mu in itertools.product((0, 1), repeat=2 * n):
        v_pos = tuple(a + b for a, b in zip(lo[: 2 * n], mu)) + (0,)
        if sum(v_pos) != n - i:
            continue
        s = vector_star(v_pos, n)
        v_neg = tuple(1 - x for x in s[: 2 * n]) + (1,)
        if is_permissible_face(v_pos, v_neg, n, i):
            found.append((v_pos, v_neg))
    return found


# ---------------------------------------------------------------- subsets and orbits


def block_a(n: int, i: int) -> frozenset:
    """A_i = [1, i] union [i*, 2n]."""
    return frozenset(range(1, i + 1)) | frozenset(range(star(i, n), 2 * n + 1))


def block_b(n: int, i: int) -> frozenset:
    """B_i = [i + 1, i* - 1]."""
    return frozenset(range(i + 1, star(i, n)))


def _pairs_in(block: frozenset, n: int) -> list[tuple[int, int]]:
    return [(j, star(j, n)) for j in sorted(block) if j < star(j, n)]


def is_naively_permissible(subset: Iterable[int], n: int, i: int) -> bool:
    """|E| = n, no star pair of A_i inside E, every star pair of B_i meets E."""
    e = frozenset(subset)
    if len(e) != n or not e <= frozenset(range(1, 2 * n + 1)):
        return False
    for j, k in _pairs_in(block_a(n, i), n):
        if j in e and k in e:
            return False
    for j, k in _pairs_in(block_b(n, i), n):
        if j not in e and k not in e:
            return False
    return True


def enumerate_perm_subsets(n: int, i: int) -> list[frozenset]:
    return [
        frozenset(c)
        for c in itertools.combinations(range(1, 2 * n + 1), n)
        if is_naively_permissible(c, n, i)
    ]


def stabilizer_generators(n: int, i: int) -> list[dict[int, int]]:
    """Generators of W_i: pair swaps and pair flips inside A_i and inside B_i."""
    gens = []
    for block in (block_a(n, i), block_b(n, i)):
        lows = [j for j in sorted(block) if j <= n]
        for j in lows:
            gens.append({j: star(j, n), star(j, n): j})
        for j, k in zip(lows, lows[1:]):
            gens.append({j: k, k: j, star(j, n): star(k, n), star(k, n): star(j, n)})
    return gens


def _apply(gen: dict[int, int], subset: frozenset) -> frozenset:
    return frozenset(gen.get(j, j) for j in subset)


def orbits(n: int, i: int) -> list[frozenset]:
    """W_i-orbits on naively-permissible subsets, as frozensets of subsets."""
    remaining = set(enumerate_perm_subsets(n, i))
    gens = stabilizer_generators(n, i)
    out = []
    while remaining:
        start = min(remaining, key=lambda s: sorted(s))
        seen = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for g in gens:
                nxt = _apply(g, cur)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        if not seen <= remaining:
            raise AssertionError("orbit left the naively-permissible set")
        remaining -= seen
        out.append(frozenset(seen))
    return out


def orbit_count(n: int, i: int) -> int:
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    return len(orbits(n, i))


def orbit_invariant(subset: Iterable[int], n: int, i: int) -> int:
    """Number of star pairs of A_i meeting E in exactly one element."""
    e = frozenset(subset)
    return sum(1 for j, k in _pairs_in(block_a(n, i), n) if (j in e) != (k in e))


def invariant_range(n: int, i: int) -> range:
    return range(max(0, 2 * i - n), i + 1)


def orbit_representative(n: int, i: int, level: int) -> frozenset:
    """E^l = [i + 1 - l, n + i - l]."""
    if level not in invariant_range(n, i):
        raise ValueError(f"level {level} outside [{max(0, 2 * i - n)}, {i}]")
    return frozenset(range(i + 1 - level, n + i - level + 1))


def is_permissible_general(element, levels: Iterable[int], n: int | None = None) -> bool:
    """Permissibility for a parahoric level set.

    ``element`` is either an AffineWeylElement, whose faces are obtained by
    acting on the vertex pairs, or a mapping level -> (v_pos, v_neg).
    """
    levels = sorted(set(levels))
    if isinstance(element, AffineWeylElement):
        n = element.n
        faces = {i: (element.act(omega(n, i)), element.act(omega_neg(n, i))) for i in levels}
    else:
        faces = dict(element)
        if n is None:
            n = (len(next(iter(faces.values()))[0]) - 1) // 2
    return all(i in faces and is_permissible_face(*faces[i], n, i) for i in levels)


# ---------------------------------------------------------------- parahoric level sets


def canonical_parahoric(levels: Iterable[int], n: int) -> tuple:
    """The lexicographically smaller of I and its reflection {n - i}."""
    levels = sorted(set(levels))
    if not levels or any(not 0 <= i <= n for i in levels):
        raise ValueError("level set must be a nonempty subset of [0, n]")
    mirrored = sorted(n - i for i in levels)
    return min(tuple(levels), tuple(mirrored))


def parahoric_classes(n: int) -> set:
    out = set()
    for k in range(1, n + 2):
        for c in itertools.combinations(range(n + 1), k):
            out.add(canonical_parahoric(c, n))
    return out


def maximal_class_count(n: int) -> int:
    return n // 2 + 1


def maximal_classes(n: int) -> set:
    return {canonical_parahoric([i], n) for i in range(n + 1)}
