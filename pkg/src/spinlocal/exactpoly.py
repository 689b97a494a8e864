"""Sparse multivariate polynomials over Q or F_p and the ideal operations built on them.

A polynomial is a dict from exponent tuples to nonzero coefficients.  Rational
coefficients are ``gmpy2.mpq``; prime-field coefficients are plain ints in
``[0, p)``.  Groebner bases use Buchberger's algorithm with the normal selection
strategy, the coprime-leading-monomial criterion, and (by default) the
Gebauer-Moeller chain criterion.
"""
from __future__ import annotations

import contextlib
import heapq
import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import gmpy2
from gmpy2 import mpq

Monomial = tuple


class ResourceLimit(RuntimeError):
    """A Groebner computation exceeded its basis-size or pair budget."""


class NotOnVariety(ValueError):
    """A point handed to a Jacobian probe does not satisfy the equations."""


# budget applied when a Groebner call passes no explicit limits
_DEFAULT_BUDGET: dict = {"max_basis": None, "max_pairs": None}
# open recorders; each collects (basis, order) for every computed basis
_RECORDERS: list[list] = []


@contextlib.contextmanager
def budget(max_basis: int | None = None, max_pairs: int | None = None):
    """Default Groebner limits for the duration of the block."""
    saved = dict(_DEFAULT_BUDGET)
    _DEFAULT_BUDGET.update(max_basis=max_basis, max_pairs=max_pairs)
    try:
        yield
    finally:
        _DEFAULT_BUDGET.update(saved)


@contextlib.contextmanager
def recording_bases():
    """Collect every reduced basis computed inside the block."""
    seen: list = []
    _RECORDERS.append(seen)
    try:
        yield seen
    finally:
        _RECORDERS.remove(seen)


# ---------------------------------------------------------------- fields


class RationalField:
    characteristic = 0
    modulus = None
    name = "QQ"

    def __call__(self, value) -> mpq:
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    def inv(self, c):
        return mpq(1) / c

    def to_fraction(self, c) -> Fraction:
        c = mpq(c)
        return Fraction(int(c.numerator), int(c.denominator))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p for an odd prime p."""

    def __init__(self, p: int):
        p = int(p)
        if p < 3 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.modulus = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, value) -> int:
        p = self.modulus
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
        else:
            q = mpq(value)
            num, den = int(q.numerator), int(q.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
        return num * pow(den, -1, p) % p

    def inv(self, c):
        if c % self.modulus == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return pow(c, -1, self.modulus)

    def to_fraction(self, c) -> Fraction:
        return Fraction(c)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.modulus))

    def __repr__(self):
        return self.name


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------- orders


class MonomialOrder:
    """Total order on exponent tuples given by a sort key (larger key = larger monomial)."""

    name = "order"

    def __init__(self):
        self._neg_cache: dict = {}

    def key(self, m: Monomial) -> tuple:
        raise NotImplementedError

    def neg_key(self, m: Monomial) -> tuple:
        k = self._neg_cache.get(m)
        if k is None:
            k = tuple(-x for x in self.key(m))
            self._neg_cache[m] = k
        return k

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self).__name__, self._ident()))

    def _ident(self):
        return ()

    def __repr__(self):
        return self.name


def _grevlex_key(m: Monomial) -> tuple:
    return (sum(m),) + tuple(-x for x in reversed(m))


class Grevlex(MonomialOrder):
    name = "grevlex"

    def key(self, m):
        return _grevlex_key(m)


class Lex(MonomialOrder):
    name = "lex"

    def key(self, m):
        return m


class BlockElimination(MonomialOrder):
    """Grevlex on the first ``k`` variables, ties broken by grevlex on the rest."""

    def __init__(self, k: int):
        super().__init__()
        self.k = k
        self.name = f"block({k})"

    def key(self, m):
        return _grevlex_key(m[: self.k]) + _grevlex_key(m[self.k:])

    def _ident(self):
        return (self.k,)


GREVLEX = Grevlex()
LEX = Lex()


# ---------------------------------------------------------------- rings and polynomials


class PolyRing:
    """Polynomial ring over ``field`` in the named variables."""

    def __init__(self, names: Sequence[str], field=QQ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.nvars = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self._zero_mono = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.field!r})"

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self._zero_mono: c} if c != 0 else {})

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): self.field(1)})

    __getitem__ = gen

    def gens(self) -> list["Poly"]:
        return [self.gen(n) for n in self.names]

    def monomial(self, exps: Mapping[str, int], coeff=1) -> "Poly":
        e = [0] * self.nvars
        for n, k in exps.items():
            e[self.index[n]] = k
        return Poly(self, {tuple(e): self.field(coeff)})

    def from_terms(self, terms: Mapping[Monomial, object]) -> "Poly":
        f = self.field
        out = {}
        for m, c in terms.items():
            c = f(c)
            if c != 0:
                out[tuple(m)] = c
        return Poly(self, out)

    def extend(self, extra: Sequence[str]) -> "PolyRing":
        return PolyRing(self.names + tuple(extra), self.field)

    def with_field(self, field) -> "PolyRing":
        return PolyRing(self.names, field)

    def fresh_name(self, stem: str) -> str:
        name, k = stem, 0
        while name in self.index:
            k += 1
            name = f"{stem}{k}"
        return name


def _add_terms(a: dict, b: dict, mod, sign=1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        v = sign * c if v is None else v + sign * c
        if mod:
            v %= mod
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul_terms(a: dict, b: dict, mod) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if mod:
                v %= mod
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- coercion helpers
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                if other.ring.field != self.ring.field:
                    raise TypeError(f"cannot mix {other.ring!r} and {self.ring!r}")
                return other.embed(self.ring)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, _add_terms(self.terms, other.terms, self.ring.field.modulus))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, _add_terms(self.terms, other.terms, self.ring.field.modulus, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        mod = self.ring.field.modulus
        return Poly(self.ring, {m: (-c % mod if mod else -c) for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            if c == 0:
                return self.ring.zero
            mod = self.ring.field.modulus
            return Poly(self.ring, {m: (v * c % mod if mod else v * c) for m, v in self.terms.items()})
        other = self._coerce(other)
        return Poly(self.ring, _mul_terms(self.terms, other.terms, self.ring.field.modulus))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise TypeError("division by a non-constant polynomial; use exact_divide")
            other = other.constant_value()
        return self * self.ring.field.inv(self.ring.field(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                try:
                    other = other.embed(self.ring)
                except (KeyError, ValueError):
                    return False
            return self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    __hash__ = None

    # -- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_mono in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring._zero_mono, self.ring.field(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        j = self.ring.index[name]
        return max((m[j] for m in self.terms), default=-1)

    def variables(self) -> list[str]:
        used = set()
        for m in self.terms:
            used.update(j for j, e in enumerate(m) if e)
        return [self.ring.names[j] for j in sorted(used)]

    def lead(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Poly":
        _, c = self.lead(order)
        return self * self.ring.field.inv(c)

    def coeff(self, exps: Mapping[str, int]):
        e = [0] * self.ring.nvars
        for n, k in exps.items():
            e[self.ring.index[n]] = k
        return self.terms.get(tuple(e), self.ring.field(0))

    # -- transformations
    def embed(self, ring: PolyRing) -> "Poly":
        """Re-express in ``ring`` by matching variable names."""
        if ring == self.ring:
            return self
        pos = []
        for j, n in enumerate(self.ring.names):
            pos.append(ring.index.get(n))
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for j, k in enumerate(m):
                if k:
                    if pos[j] is None:
                        raise ValueError(f"variable {self.ring.names[j]} missing from target ring")
                    e[pos[j]] = k
            out[tuple(e)] = ring.field(ring.field.to_fraction(c) if ring.field != self.ring.field else c)
        return ring.from_terms(out)

    def change_field(self, field) -> "Poly":
        ring = self.ring.with_field(field)
        src = self.ring.field
        return ring.from_terms({m: src.to_fraction(c) for m, c in self.terms.items()})

    def subs(self, mapping: Mapping[str, object], ring: PolyRing | None = None) -> "Poly":
        """Substitute polynomials (or scalars) for variables; result lives in ``ring``."""
        ring = ring or self.ring
        images = []
        for n in self.ring.names:
            if n in mapping:
                v = mapping[n]
                images.append(v.embed(ring) if isinstance(v, Poly) else ring.const(v))
            else:
                images.append(ring.gen(n) if n in ring.index else None)
        power_cache: dict = {}

        def power(j, k):
            key = (j, k)
            if key not in power_cache:
                if images[j] is None:
                    raise ValueError(f"variable {self.ring.names[j]} has no image")
                power_cache[key] = images[j] ** k
            return power_cache[key]

        acc: dict = {}
        mod = ring.field.modulus
        same_field = ring.field == self.ring.field
        for m, c in self.terms.items():
            c = c if same_field else ring.field(self.ring.field.to_fraction(c))
            term = {ring._zero_mono: c}
            for j, k in enumerate(m):
                if k:
                    term = _mul_terms(term, power(j, k).terms, mod)
            acc = _add_terms(acc, term, mod)
        return Poly(ring, acc)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a point given as name -> field element (every used variable needed)."""
        f = self.ring.field
        vals = [f(point[n]) if n in point else None for n in self.ring.names]
        mod = f.modulus
        total = f(0)
        for m, c in self.terms.items():
            v = c
            for j, k in enumerate(m):
                if k:
                    if vals[j] is None:
                        raise KeyError(self.ring.names[j])
                    v = v * (pow(vals[j], k, mod) if mod else vals[j] ** k)
            total = total + v
        return total % mod if mod else total

    def diff(self, name: str) -> "Poly":
        j = self.ring.index[name]
        mod = self.ring.field.modulus
        out = {}
        for m, c in self.terms.items():
            if m[j]:
                e = list(m)
                e[j] -= 1
                v = c * m[j]
                if mod:
                    v %= mod
                if v:
                    out[tuple(e)] = v
        return Poly(self.ring, out)

    def divide_by_monomial(self, exps: Mapping[str, int]) -> "Poly":
        """Exact division by a monomial; raises if some term is not divisible."""
        d = [0] * self.ring.nvars
        for n, k in exps.items():
            d[self.ring.index[n]] = k
        out = {}
        for m, c in self.terms.items():
            e = tuple(a - b for a, b in zip(m, d))
            if min(e, default=0) < 0:
                raise ValueError("polynomial is not divisible by the monomial")
            out[e] = c
        return Poly(self.ring, out)

    def monomial_content(self) -> dict[str, int]:
        """Largest monomial dividing every term."""
        if not self.terms:
            return {}
        lo = [min(m[j] for m in self.terms) for j in range(self.ring.nvars)]
        return {self.ring.names[j]: k for j, k in enumerate(lo) if k}

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=GREVLEX.key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.ring.names, m) if k
            )
            cs = str(c)
            if mono:
                if cs == "1":
                    s = mono
                elif cs == "-1":
                    s = "-" + mono
                else:
                    s = f"{cs}*{mono}"
            else:
                s = cs
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------- reduction kernel


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mask(m: Monomial) -> int:
    bits = 0
    for j, e in enumerate(m):
        if e:
            bits |= 1 << j
    return bits


class _Basis:
    """Monic polynomials with cached leading data, used inside the reduction loop."""

    def __init__(self, order: MonomialOrder, field):
        self.order = order
        self.field = field
        self.polys: list[dict] = []
        self.lms: list[Monomial] = []
        self.masks: list[int] = []
        self.sugar: list[int] = []

    def add(self, terms: dict, sugar: int) -> int:
        lm = max(terms, key=self.order.key)
        inv = self.field.inv(terms[lm])
        mod = self.field.modulus
        if inv != 1:
            terms = {m: (c * inv % mod if mod else c * inv) for m, c in terms.items()}
        self.polys.append(terms)
        self.lms.append(lm)
        self.masks.append(_mask(lm))
        self.sugar.append(sugar)
        return len(self.polys) - 1


def _reduce(f: dict, basis: _Basis, active: Sequence[int], full: bool = True) -> dict:
    """Normal form of ``f`` with respect to the basis elements listed in ``active``."""
    if not f or not active:
        return dict(f)
    order = basis.order
    nk = order.neg_key
    mod = basis.field.modulus
    lms, masks, polys = basis.lms, basis.masks, basis.polys
    act = list(active)
    p = dict(f)
    heap = [(nk(m), m) for m in p]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        mm = _mask(m)
        hit = None
        for j in act:
            if masks[j] & ~mm:
                continue
            if _divides(lms[j], m):
                hit = j
                break
        if hit is None:
            rem[m] = c
            if not full:
                rem.update(p)
                return rem
            continue
        lm = lms[hit]
        shift = tuple(a - b for a, b in zip(m, lm))
        for mg, cg in polys[hit].items():
            if mg == lm:
                continue
            t = tuple(a + b for a, b in zip(mg, shift))
            old = p.get(t)
            if old is None:
                v = -c * cg
                if mod:
                    v %= mod
                p[t] = v
                heapq.heappush(heap, (nk(t), t))
            else:
                v = old - c * cg
                if mod:
                    v %= mod
                if v:
                    p[t] = v
                else:
                    del p[t]
    return rem


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _spoly(basis: _Basis, i: int, j: int) -> dict:
    li, lj = basis.lms[i], basis.lms[j]
    L = _lcm(li, lj)
    si = tuple(a - b for a, b in zip(L, li))
    sj = tuple(a - b for a, b in zip(L, lj))
    mod = basis.field.modulus
    out = {}
    for m, c in basis.polys[i].items():
        out[tuple(a + b for a, b in zip(m, si))] = c
    for m, c in basis.polys[j].items():
        t = tuple(a + b for a, b in zip(m, sj))
        v = out.get(t, 0) - c
        if mod:
            v %= mod
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


# ---------------------------------------------------------------- Buchberger


def _same_ring(polys: Sequence[Poly]) -> PolyRing:
    rings = {p.ring for p in polys}
    if len(rings) != 1:
        raise ValueError("polynomials live in different rings")
    return rings.pop()


def groebner(
    polys: Sequence[Poly],
    order: MonomialOrder = GREVLEX,
    *,
    ring: PolyRing | None = None,
    max_basis: int | None = None,
    max_pairs: int | None = None,
    chain_criterion: bool = True,
) -> list[Poly]:
    """Reduced Groebner basis (monic, sorted by decreasing leading monomial).

    Raises ``ResourceLimit`` once more than ``max_basis`` elements are live or
    more than ``max_pairs`` S-pairs have been reduced.  Limits left at None
    fall back to the ones set with ``budget``.
    """
    if max_basis is None:
        max_basis = _DEFAULT_BUDGET["max_basis"]
    if max_pairs is None:
        max_pairs = _DEFAULT_BUDGET["max_pairs"]
    out = _buchberger(polys, order, ring, max_basis, max_pairs, chain_criterion)
    for seen in _RECORDERS:
        seen.append((out, order))
    return out


def _buchberger(polys, order, ring, max_basis, max_pairs, chain_criterion) -> list[Poly]:
    polys = [p for p in polys if not p.is_zero()]
    if ring is None:
        if not polys:
            raise ValueError("ring needed for an empty generating set")
        ring = _same_ring(polys)
    field = ring.field
    basis = _Basis(order, field)
    active: list[int] = []
    pairs: list = []  # heap of (deg lcm, sugar, tiebreak, i, j)
    counter = itertools.count()
    processed = 0

    def push_pair(i, j):
        L = _lcm(basis.lms[i], basis.lms[j])
        si = basis.sugar[i] + sum(L) - sum(basis.lms[i])
        sj = basis.sugar[j] + sum(L) - sum(basis.lms[j])
        heapq.heappush(pairs, (sum(L), max(si, sj), next(counter), i, j, L))

    def insert(h: dict, sugar: int):
        nonlocal pairs, active
        k = basis.add(h, sugar)
        lm_h = basis.lms[k]
        if not chain_criterion:
            for g in active:
                if not _coprime(basis.lms[g], lm_h):
                    push_pair(g, k)
            active.append(k)
        else:
            cand = [(g, _lcm(basis.lms[g], lm_h)) for g in active]
            keep = []
            for idx, (g, L) in enumerate(cand):
                if _coprime(basis.lms[g], lm_h):
                    keep.append((g, L, True))
                    continue
                dominated = False
                for g2, L2 in cand[idx + 1:]:
                    if _divides(L2, L):
                        dominated = True
                        break
                if not dominated:
                    for g2, L2, _ in keep:
                        if _divides(L2, L):
                            dominated = True
                            break
                if not dominated:
                    keep.append((g, L, False))
            # old pairs killed by the new leading monomial
            survivors = []
            for entry in pairs:
                i, j, L = entry[3], entry[4], entry[5]
                if (
                    _divides(lm_h, L)
                    and _lcm(basis.lms[i], lm_h) != L
                    and _lcm(basis.lms[j], lm_h) != L
                ):
                    continue
                survivors.append(entry)
            if len(survivors) != len(pairs):
                heapq.heapify(survivors)
                pairs = survivors
            for g, L, cop in keep:
                if not cop:
                    push_pair(g, k)
            active = [g for g in active if not _divides(lm_h, basis.lms[g])]
            active.append(k)
        if max_basis is not None and len(active) > max_basis:
            raise ResourceLimit(f"basis size exceeded {max_basis}")

    for p in polys:
        if p.ring != ring:
            raise ValueError("generator from a different ring")
        h = _reduce(p.terms, basis, active)
        if h:
            insert(h, max(sum(m) for m in p.terms))

    while pairs:
        entry = heapq.heappop(pairs)
        _, sugar, _, i, j, _ = entry
        processed += 1
        if max_pairs is not None and processed > max_pairs:
            raise ResourceLimit(f"pair budget exceeded {max_pairs}")
        h = _reduce(_spoly(basis, i, j), basis, active)
        if h:
            if len(h) == 1 and not any(next(iter(h))):
                return [ring.one]
            insert(h, sugar)

    # minimal then reduced
    lms = basis.lms
    minimal = [
        g for g in active
        if not any(h != g and _divides(lms[h], lms[g]) and (lms[h] != lms[g] or h < g) for h in active)
    ]
    reduced = []
    for g in minimal:
        others = [h for h in minimal if h != g]
        lm = lms[g]
        tail = {m: c for m, c in basis.polys[g].items() if m != lm}
        r = _reduce(tail, basis, others)
        r[lm] = field(1)
        reduced.append(Poly(ring, r))
    reduced.sort(key=lambda q: order.key(max(q.terms, key=order.key)), reverse=True)
    if any(q.is_constant() for q in reduced):
        return [ring.one]
    return reduced


def normal_form(f: Poly, basis: Sequence[Poly], order: MonomialOrder = GREVLEX) -> Poly:
    """Fully reduced remainder of ``f`` on division by ``basis`` (any generating list)."""
    ring = f.ring
    b = _Basis(order, ring.field)
    idx = [b.add(dict(g.terms), 0) for g in basis if not g.is_zero()]
    return Poly(ring, _reduce(f.terms, b, idx))


def spoly(f: Poly, g: Poly, order: MonomialOrder = GREVLEX) -> Poly:
    b = _Basis(order, f.ring.field)
    i = b.add(dict(f.terms), 0)
    j = b.add(dict(g.terms), 0)
    return Poly(f.ring, _spoly(b, i, j))


def spair_certificate(basis: Sequence[Poly], order: MonomialOrder = GREVLEX,
                      product_criterion: bool = True, chain_criterion: bool = True) -> bool:
    """True when the S-polynomials of ``basis`` prove it is a Groebner basis.

    Pairs are visited by increasing lcm degree.  A pair is skipped when its
    leading monomials are coprime (``product_criterion``), or when some k
    with lm(k) dividing the lcm has both (i, k) and (j, k) already visited
    (``chain_criterion``); every other S-polynomial must reduce to zero.
    Reduction stops at the first irreducible leading term.
    """
    basis = [g for g in basis if not g.is_zero()]
    if not basis:
        return True
    ring = basis[0].ring
    b = _Basis(order, ring.field)
    idx = [b.add(dict(g.terms), 0) for g in basis]
    lms, masks = b.lms, b.masks
    pairs = sorted(
        itertools.combinations(idx, 2),
        key=lambda p: (sum(_lcm(lms[p[0]], lms[p[1]])), p),
    )
    visited: dict[int, set] = {k: set() for k in idx}
    for i, j in pairs:
        lcm = _lcm(lms[i], lms[j])
        skip = product_criterion and _coprime(lms[i], lms[j])
        if not skip and chain_criterion:
            mask = _mask(lcm)
            skip = any(
                not masks[k] & ~mask and _divides(lms[k], lcm)
                for k in visited[i] & visited[j]
            )
        if not skip and _reduce(_spoly(b, i, j), b, idx, full=False):
            return False
        visited[i].add(j)
        visited[j].add(i)
    return True


# ---------------------------------------------------------------- ideals


class Ideal:
    """Generators in a fixed ring, with Groebner bases cached per monomial order."""

    def __init__(self, gens: Iterable[Poly], ring: PolyRing | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring needed for the zero ideal")
            ring = gens[0].ring
        self.ring = ring
        self.gens = [g.embed(ring) if g.ring != ring else g for g in gens if not g.is_zero()]
        self._gb: dict = {}
        self.budget: dict = {}

    def with_budget(self, max_basis=None, max_pairs=None) -> "Ideal":
        self.budget = {"max_basis": max_basis, "max_pairs": max_pairs}
        return self

    def groebner(self, order: MonomialOrder = GREVLEX) -> list[Poly]:
        if order not in self._gb:
            if not self.gens:
                self._gb[order] = []
            else:
                self._gb[order] = groebner(self.gens, order, ring=self.ring, **self.budget)
        return self._gb[order]

    def contains(self, f: Poly, order: MonomialOrder = GREVLEX) -> bool:
        f = f.embed(self.ring) if f.ring != self.ring else f
        return normal_form(f, self.groebner(order), order).is_zero()

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def __add__(self, other) -> "Ideal":
        extra = other.gens if isinstance(other, Ideal) else list(other)
        out = Ideal(self.gens + [g.embed(self.ring) for g in extra], self.ring)
        out.budget = dict(self.budget)
        return out

    def embed(self, ring: PolyRing) -> "Ideal":
        out = Ideal([g.embed(ring) for g in self.gens], ring)
        out.budget = dict(self.budget)
        return out

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens in {self.ring!r})"


def ideal_member(f: Poly, ideal: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    return ideal.contains(f, order)


def ideal_equal(a: Ideal, b: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    """Equality of ideals in the same ring via mutual membership of generators."""
    if a.ring != b.ring:
        raise ValueError("ideals live in different rings")
    return all(b.contains(g, order) for g in a.gens) and all(a.contains(g, order) for g in b.gens)


def first_non_member(gens: Iterable[Poly], ideal: Ideal, order: MonomialOrder = GREVLEX):
    for g in gens:
        if not ideal.contains(g, order):
            return g
    return None


def _min_hitting_set(supports: list[frozenset], bound: int) -> int:
    """Size of a smallest set meeting every support (branch and bound)."""
    supports = sorted(set(supports), key=len)
    minimal = []
    for s in supports:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = [bound]

    def search(remaining: list[frozenset], size: int):
        if size >= best[0]:
            return
        if not remaining:
            best[0] = size
            return
        pick = min(remaining, key=len)
        for v in sorted(pick):
            search([s for s in remaining if v not in s], size + 1)

    search(minimal, 0)
    return best[0]


def krull_dim(ideal: Ideal, order: MonomialOrder = GREVLEX) -> int:
    """Krull dimension of the quotient ring; -1 for the unit ideal."""
    gb = ideal.groebner(order)
    n = ideal.ring.nvars
    if not gb:
        return n
    if any(g.is_constant() for g in gb):
        return -1
    supports = []
    for g in gb:
        m, _ = g.lead(order)
        supports.append(frozenset(j for j, e in enumerate(m) if e))
    return n - _min_hitting_set(supports, n + 1)


def eliminate(ideal: Ideal, drop: Sequence[str]) -> Ideal:
    """Intersection of the ideal with the polynomial ring in the remaining variables."""
    drop = list(drop)
    keep = [n for n in ideal.ring.names if n not in drop]
    work = PolyRing(drop + keep, ideal.ring.field)
    gb = groebner([g.embed(work) for g in ideal.gens], BlockElimination(len(drop)), ring=work, **ideal.budget)
    sub = PolyRing(keep, ideal.ring.field)
    k = len(drop)
    out = [g for g in gb if all(not any(m[:k]) for m in g.terms)]
    res = Ideal([g.embed(sub) for g in out], sub)
    res.budget = dict(ideal.budget)
    return res


def radical_member(f: Poly, ideal: Ideal) -> bool:
    """Whether some power of ``f`` lies in the ideal (Rabinowitsch trick)."""
    z = ideal.ring.fresh_name("zrab")
    ring = ideal.ring.extend([z])
    extended = Ideal([g.embed(ring) for g in ideal.gens] + [ring.one - ring[z] * f.embed(ring)], ring)
    extended.budget = dict(ideal.budget)
    return extended.is_unit()


def saturate(ideal: Ideal, f: Poly) -> Ideal:
    """The saturation I : f^infinity, returned in the original ring."""
    z = ideal.ring.fresh_name("zsat")
    ring = ideal.ring.extend([z])
    extended = Ideal([g.embed(ring) for g in ideal.gens] + [ring.one - ring[z] * f.embed(ring)], ring)
    extended.budget = dict(ideal.budget)
    out = eliminate(extended, [z])
    return out.embed(ideal.ring)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        prow = [x * inv % p for x in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], prow)]
        rank += 1
    return rank


def jacobian_rank_at(polys: Sequence[Poly], point: Mapping[str, int], prime: int = 32003,
                     variables: Sequence[str] | None = None) -> int:
    """Rank over F_p of the Jacobian of ``polys`` at ``point``.

    Raises ``NotOnVariety`` when some polynomial does not vanish there.
    """
    field = GF(prime)
    polys = [q.change_field(field) if q.ring.field != field else q for q in polys]
    if not polys:
        return 0
    ring = polys[0].ring
    names = list(variables) if variables is not None else list(ring.names)
    for q in polys:
        v = q.evaluate(point)
        if v % prime:
            raise NotOnVariety(f"generator {q} takes value {v} at the point")
    rows = [[q.diff(n).evaluate(point) for n in names] for q in polys]
    return rank_mod_p(rows, prime)
