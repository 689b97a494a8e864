"""Command-line driver: every check family with a JSON report and fixed exit codes.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or internal error,
3 a resource limit was hit and nothing failed.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass
from typing import Callable

from . import __version__
from . import blowup as bl
from . import chartideals as ci
from . import latticegeom as lg
from . import spinalg as sa
from . import weylcomb as wc
from .exactpoly import NotOnVariety, ResourceLimit, budget, krull_dim, recording_bases, spair_certificate

DEFAULT_PRIME = 32003
CONFIRM_PRIME = 10007
# enough for every i <= 1 check; the i = 2 checks need --deep
DEFAULT_MAX_BASIS = 5000
DEFAULT_MAX_PAIRS = 500000

PASS, FAIL, SKIPPED, LIMIT = "pass", "fail", "skipped", "resource-limit"


@dataclass
class CheckResult:
    id: str
    status: str
    expected: str
    actual: str
    runtime_ms: int

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "runtime_ms": self.runtime_ms,
        }


class Runner:
    """Collects check results; ids are made unique by an optional prefix."""

    def __init__(self, deep: bool = False):
        self.results: list[CheckResult] = []
        self.prefix = ""
        self.deep = deep

    def scoped(self, prefix: str) -> "Runner":
        child = Runner(self.deep)
        child.results = self.results
        child.prefix = self.prefix + prefix + "/"
        return child

    def check(self, cid: str, expected, fn: Callable[[], object],
              accept: Callable[[object], bool] | None = None) -> None:
        full = self.prefix + cid
        if any(r.id == full for r in self.results):
            raise ValueError(f"duplicate check id {full}")
        start = time.perf_counter()
        try:
            actual = fn()
            ok = accept(actual) if accept is not None else actual == expected
            status = PASS if ok else FAIL
        except ResourceLimit as exc:
            actual, status = f"resource limit: {exc}", LIMIT
        except (AssertionError, NotOnVariety) as exc:
            actual, status = f"error: {exc!r}", FAIL
        ms = int((time.perf_counter() - start) * 1000)
        self.results.append(CheckResult(full, status, str(expected), str(actual), ms))

    def skip(self, cid: str, expected, reason: str) -> None:
        self.results.append(CheckResult(self.prefix + cid, SKIPPED, str(expected), reason, 0))


def overall(results: list[CheckResult]) -> str:
    statuses = {r.status for r in results}
    if FAIL in statuses:
        return FAIL
    if LIMIT in statuses:
        return LIMIT
    return PASS


# ---------------------------------------------------------------- check families


def run_cells(r: Runner, n: int, i: int) -> None:
    r.check("subsets_enumerated", len(wc.enumerate_permissible_faces(n, i)),
            lambda: len(wc.enumerate_perm_subsets(n, i)))
    r.check("orbit_count", min(i, n - i) + 1, lambda: wc.orbit_count(n, i))

    def invariants():
        return sorted(min(wc.orbit_invariant(s, n, i) for s in o) for o in wc.orbits(n, i))

    def constant_on_orbits():
        return all(len({wc.orbit_invariant(s, n, i) for s in o}) == 1 for o in wc.orbits(n, i))

    r.check("invariant_constant_on_orbits", True, constant_on_orbits)
    r.check("orbit_levels", list(wc.invariant_range(n, i)), invariants)

    def reps_inside():
        return all(
            wc.orbit_representative(n, i, wc.orbit_invariant(next(iter(o)), n, i)) in o
            for o in wc.orbits(n, i)
        )

    r.check("representatives_in_orbits", True, reps_inside)


def run_faces(r: Runner, n: int, i: int) -> None:
    faces = wc.enumerate_permissible_faces(n, i)
    subsets = set(wc.enumerate_perm_subsets(n, i))
    r.check("permissible_faces", len(subsets), lambda: len(faces))
    r.check("faces_match_subsets", True, lambda: {wc.face_subset(f[0], n, i) for f in faces} == subsets)
    r.check("defect_is_one", True, lambda: all(wc.face_defect(a, b, n) == 1 for a, b in faces))
    r.check("roundtrip", True, lambda: all(wc.face_from_subset(wc.face_subset(f[0], n, i), n, i) == f for f in faces))


def run_reps(r: Runner, n: int, i: int) -> None:
    for level in wc.invariant_range(n, i):
        rep = lg.representative_point(n, i, level)
        r.check(f"l{level}/representative_naive", True, lambda: lg.check_naive(rep).ok)
        r.check(f"l{level}/stratum_rank", level, lambda: lg.stratum_rank(rep))
        lift = lg.lift_point(n, i, level)
        r.check(f"l{level}/lift_naive", True, lambda: lg.check_naive(lift).ok)
        r.check(f"l{level}/lift_reduction", True, lambda: lift.same_special_fiber(rep))


def run_signs(r: Runner, n: int) -> None:
    def sigma_s():
        return all(
            sa.sgn_sigma_S(s, n) == sa.shuffle_sign_bruteforce(s, 2 * n + 2)
            for s in itertools.combinations(range(1, 2 * n + 3), n + 1)
        )

    r.check("sigma_S", True, sigma_s)
    for i in range(1, n + 1):
        def sigma_u(i=i):
            return all(
                sa.sgn_sigma_U(u, i) == sa.shuffle_sign_bruteforce(u, 2 * i + 1)
                for u in itertools.combinations(range(1, 2 * i + 2), i)
            )

        r.check(f"sigma_U/i{i}", True, sigma_u)


def _default_chart_n(i: int) -> int:
    return max(1, 2 * i)


def run_chart(r: Runner, i: int, n: int | None) -> None:
    n = _default_chart_n(i) if n is None else n
    if i >= 2 and not r.deep:
        for cid in ("free_count", "implied_relations", "displayed_relations"):
            r.skip(cid, True, "i >= 2 needs --deep")
        return
    r.check("free_count", (n - 2 * i) * (n + 2 * i + 1) // 2, lambda: ci.build_chart(n, i).free_count)
    r.check("implied_relations", True, lambda: ci.implied_relations_check(n, i).ok)
    if i >= 1:
        r.check("displayed_relations", True, lambda: ci.implied_relations_check(n, i, displayed=True).ok)


def run_spin_oracle(r: Runner, n: int, i: int, signs) -> None:
    for s in signs:
        cid = f"oracle_equality/{sa.sign_label(s)}"
        if i >= 2 and not r.deep:
            r.skip(cid, True, "i >= 2 needs --deep")
            continue
        r.check(cid, True, lambda s=s: ci.spin_oracle_check(n, i, s).ok)


def run_special_fiber(r: Runner, i: int, trials: int, prime: int, seed: int) -> None:
    if i >= 2 and not r.deep:
        r.skip("equality", True, "i >= 2 needs --deep")
        return
    for s in (1, -1):
        r.check(f"equality/{sa.sign_label(s)}", True, lambda s=s: ci.special_fiber_equality(i, s, prime))
    r.check("krull_dim", i * (2 * i + 1), lambda: krull_dim(ci.r_ideal(i, prime)))
    if i == 1:
        r.check("irreducibility", True, lambda: ci.irreducibility_oracle(i, prime))
    else:
        r.skip("irreducibility", True, "the rank-one parametrisation covers i = 1")
    primes = [prime] + ([CONFIRM_PRIME] if prime != CONFIRM_PRIME else [])
    for p in primes:
        r.check(f"smoothness/p{p}", f"{trials}/{trials}",
                lambda p=p: "%d/%d" % ci.generic_smoothness_probe(i, trials, p, seed))


def run_exotic(r: Runner) -> None:
    for s in (1, -1):
        def exotic(s=s):
            rep = ci.exotic_i0_check(s)
            return rep.equal and rep.free_rank_one

        r.check(f"exotic/{sa.sign_label(s)}", True, exotic)


BLOWUP_FAMILIES = {
    "y11": ["y11"],
    "y12": ["y12"],
    "y22": ["y22:y11", "y22:y13"],
}


def run_blowup(r: Runner, label: str | None, trials: int, prime: int, seed: int) -> None:
    labels = [label] if label else ["y11", "y12", "y22", "alpha"]
    for lab in labels:
        rep, word, factor = bl.chart_representative(lab)
        scope = r.scoped(lab)
        if rep != lab:
            scope.check("representative", rep, lambda: rep)
            for name in word:
                for s in (1, -1):
                    scope.check(f"symmetry/{name}/{sa.sign_label(s)}", True,
                                lambda name=name, s=s: bl.symmetry_check(name, s))
        if rep == "alpha":
            for s in (1, -1):
                scope.check(f"orthogonal/{sa.sign_label(s)}", True, lambda s=s: bl.orthogonal_chart_check(s, prime).ok)
            continue
        if rep == "y22":
            scope.check("cover", True, lambda: bl.y22_cover_check())
        for key in BLOWUP_FAMILIES[rep]:
            for s in (1, -1):
                tag = f"{key}/{sa.sign_label(s)}"
                scope.check(f"simplification/{tag}", True, lambda key=key, s=s: bl.verify_case_simplification(key, s).ok)
                scope.check(f"semistability/{tag}", True,
                            lambda key=key, s=s: bl.semistability_check(key, s, trials, prime, seed).ok)
                if r.deep:
                    fam = bl.CASES[key]
                    scope.check(f"saturation/{tag}", True,
                                lambda fam=fam, s=s: bl.saturation_cross_check(fam.label, s, fam.localize))
        if rep == "y11":
            for s in (1, -1):
                scope.check(f"compatibility_y22/{sa.sign_label(s)}", True, lambda s=s: bl.chart_compatibility(s))
                scope.check(f"off_center/{sa.sign_label(s)}", True, lambda s=s: bl.isomorphism_off_center(s))


def run_parahoric(r: Runner, n: int) -> None:
    subsets = [c for k in range(1, n + 2) for c in itertools.combinations(range(n + 1), k)]
    r.check("maximal_classes", n // 2 + 1, lambda: len(wc.maximal_classes(n)))
    r.check("maximal_class_count", len(wc.maximal_classes(n)), lambda: wc.maximal_class_count(n))
    # Burnside count of nonempty subsets of [0, n] up to i -> n - i
    classes = (2 ** (n + 1) + 2 ** ((n + 2) // 2)) // 2 - 1
    r.check("class_count", classes, lambda: len(wc.parahoric_classes(n)))
    r.check("idempotent", True,
            lambda: all(wc.canonical_parahoric(wc.canonical_parahoric(c, n), n) == wc.canonical_parahoric(c, n)
                        for c in subsets))
    r.check("reflection_invariant", True,
            lambda: all(wc.canonical_parahoric([n - x for x in c], n) == wc.canonical_parahoric(c, n)
                        for c in subsets))


def run_all(r: Runner, max_n: int, trials: int, prime: int, seed: int) -> None:
    with recording_bases() as bases:
        for n in range(1, max_n + 1):
            for i in range(n + 1):
                run_cells(r.scoped(f"cells/n{n}/i{i}"), n, i)
                run_faces(r.scoped(f"faces/n{n}/i{i}"), n, i)
                run_reps(r.scoped(f"reps/n{n}/i{i}"), n, i)
            run_signs(r.scoped(f"signs/n{n}"), n)
            run_parahoric(r.scoped(f"parahoric/n{n}"), n)
        for n, i in [(1, 0), (2, 0), (2, 1), (3, 1), (4, 2)]:
            run_chart(r.scoped(f"chart/n{n}/i{i}"), i, n)
        for n, i in [(2, 1), (3, 1)]:
            run_spin_oracle(r.scoped(f"spin-oracle/n{n}/i{i}"), n, i, (1, -1))
        run_special_fiber(r.scoped("special-fiber/i1"), 1, trials, prime, seed)
        run_exotic(r.scoped("exotic"))
        run_blowup(r.scoped("blowup"), None, trials, prime, seed)
    # the same ideal can be rebuilt by several checks; certify each basis once
    distinct = {(order, tuple(sorted(map(str, b)))): (b, order) for b, order in bases}
    r.check("engine/spair_certificates", True,
            lambda: all(spair_certificate(b, order) for b, order in distinct.values()))


# ---------------------------------------------------------------- argument parsing


def _sign_arg(text: str) -> int:
    try:
        return sa.parse_sign(text)
    except ValueError:
        raise argparse.ArgumentTypeError("sign must be plus or minus")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-basis", type=int, default=DEFAULT_MAX_BASIS)
    common.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS)
    common.add_argument("--deep", action="store_true", help="include the i = 2 checks")
    common.add_argument("--out", help="write the JSON report here")

    parser = argparse.ArgumentParser(prog="spinlocal", description="Exact checks for spin local models.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    for name, text in (("cells", "orbit and subset counts"), ("faces", "permissible faces"),
                       ("reps", "representatives, lifts and stratum ranks")):
        p = add(name, text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--i", type=int, required=True)
    add("signs", "sign formulas against brute force").add_argument("--n", type=int, required=True)
    p = add("chart", "naive chart and implied relations")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--n", type=int)
    p = add("spin-oracle", "spin ideal against the minor-relation oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--sign", type=_sign_arg, required=True)
    add("special-fiber", "special fiber, dimension and smoothness").add_argument("--i", type=int, required=True)
    add("exotic", "the i = 0 case")
    add("blowup", "blow-up charts and semi-stability").add_argument(
        "--chart", choices=bl.ALL_LABELS, help="one chart label (default: the four case representatives)")
    add("parahoric", "level-set canonicalisation").add_argument("--n", type=int, required=True)
    add("all", "the full suite").add_argument("--max-n", type=int, default=4)
    return parser


def _validate(args) -> None:
    n, i = getattr(args, "n", None), getattr(args, "i", None)
    if n is not None and n < 1:
        raise ValueError("--n must be at least 1")
    if i is not None and i < 0:
        raise ValueError("--i must be nonnegative")
    if args.command in ("cells", "faces", "reps", "spin-oracle") and i > n:
        raise ValueError("need 0 <= i <= n")
    if args.command in ("chart", "spin-oracle") and n is not None and 2 * i > n:
        raise ValueError("the chart needs 2i <= n")
    if args.command == "special-fiber" and i < 1:
        raise ValueError("--i must be at least 1")
    if args.trials < 1:
        raise ValueError("--trials must be positive")


def _params(args) -> dict:
    skip = {"command", "out"}
    out = {}
    for key, value in vars(args).items():
        if key in skip or value is None:
            continue
        out[key] = sa.sign_label(value) if key == "sign" else value
    return out


def dispatch(args, r: Runner) -> None:
    c = args.command
    if c == "cells":
        run_cells(r, args.n, args.i)
    elif c == "faces":
        run_faces(r, args.n, args.i)
    elif c == "reps":
        run_reps(r, args.n, args.i)
    elif c == "signs":
        run_signs(r, args.n)
    elif c == "chart":
        run_chart(r, args.i, args.n)
    elif c == "spin-oracle":
        run_spin_oracle(r, args.n, args.i, (args.sign,))
    elif c == "special-fiber":
        run_special_fiber(r, args.i, args.trials, args.prime, args.seed)
    elif c == "exotic":
        run_exotic(r)
    elif c == "blowup":
        run_blowup(r, args.chart, args.trials, args.prime, args.seed)
    elif c == "parahoric":
        run_parahoric(r, args.n)
    elif c == "all":
        run_all(r, args.max_n, args.trials, args.prime, args.seed)


def make_report(args, results: list[CheckResult]) -> dict:
    return {
        "version": __version__,
        "command": args.command,
        "params": _params(args),
        "checks": [c.as_dict() for c in results],
        "overall": overall(results),
    }


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        _validate(args)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    runner = Runner(deep=args.deep)
    try:
        with budget(args.max_basis, args.max_pairs):
            dispatch(args, runner)
    except Exception as exc:  # internal error
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2
    report = make_report(args, runner.results)
    for c in runner.results:
        print(f"{c.status.upper():15s} {c.id}  expected={c.expected} actual={c.actual}  ({c.runtime_ms} ms)")
    print(f"overall: {report['overall']}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    return {PASS: 0, FAIL: 1, LIMIT: 3}[report["overall"]]


if __name__ == "__main__":
    sys.exit(main())
