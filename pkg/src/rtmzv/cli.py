"""Command-line front end.

Exit codes: 0 pass (or plain output), 1 a verification failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import fbasis, kawa, mzvnum, quasi, rtmap
from .errors import AlgebraError
from .forest import Forest, coproduct, enumerate_forests
from .hpoly import Poly, parse_poly

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InvalidInput(Exception):
    pass


@dataclass
class RunReport:
    command: str
    parameters: dict
    outcome: str
    wall_time: float = 0.0
    artifacts: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def _forest(text: str) -> Forest:
    try:
        return Forest(text.strip())
    except AlgebraError as e:
        raise InvalidInput(str(e)) from e


def _poly(text: str) -> Poly:
    try:
        return parse_poly(text)
    except AlgebraError as e:
        raise InvalidInput(str(e)) from e


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _finish(args, report: RunReport, lines: list[str]) -> int:
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        for line in lines:
            print(line)
        print(f"{report.command}: {report.outcome} ({report.wall_time:.2f}s)")
    return EXIT_PASS if report.outcome in ("pass", "report") else EXIT_FAIL


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_apply(args) -> int:
    f = _forest(args.forest)
    p = _poly(args.poly)
    out = rtmap.rtm_apply(f, p)
    _emit(args, out.to_json(), str(out))
    return EXIT_PASS


def cmd_coproduct(args) -> int:
    t = coproduct(_forest(args.forest))
    _emit(args, t.to_json(), str(t))
    return EXIT_PASS


def cmd_harmonic(args) -> int:
    out = quasi.harmonic(_poly(args.p), _poly(args.q))
    _emit(args, out.to_json(), str(out))
    return EXIT_PASS


def cmd_theta_inv(args) -> int:
    m = fbasis.theta_inv(_poly(args.poly))
    _emit(args, m.to_json(), str(m))
    return EXIT_PASS


def cmd_decompose(args) -> int:
    v, w = _poly(args.v), _poly(args.w)
    f, u = kawa.kawashima_decompose(v, w)
    lhs = rtmap.rtm_apply(f, u)
    rhs = kawa.chi_x(quasi.harmonic(w, v))
    ok = lhs == rhs
    payload = {"f": f.to_json(), "u": u.to_json(), "f(u)": lhs.to_json(), "verified": ok}
    _emit(args, payload, f"f = {f}\nu = {u}\nf(u) = {lhs}\nverified: {ok}")
    return EXIT_PASS if ok else EXIT_FAIL


def _lemma_checks(max_d: int) -> list[tuple[str, int, bool]]:
    out = []
    for d in range(1, max_d + 1):
        out.append(("lemma2", d, fbasis.verify_lemma2(d)))
        out.append(("prop1", d, fbasis.verify_prop1(d)))
        if d >= 2:
            out.append(("lemma1", d, fbasis.verify_lemma1(d)))
            out.append(("lemma3", d, fbasis.verify_lemma3(d)))
            out.append(("lemma4", d, fbasis.verify_lemma4(d)))
    return out


def _property_checks(max_d: int, seed: int = 0) -> list[tuple[str, int, bool]]:
    from .forest import coproduct_terms, mul_codes
    from .hpoly import hy_words

    rng = random.Random(seed)
    out = []
    for d in range(0, min(max_d, 5) + 1):
        ok = True
        for f in enumerate_forests(d):
            left: dict = {}
            right: dict = {}
            for a, b, c in coproduct_terms(f.code):
                for a1, a2, c1 in coproduct_terms(a):
                    left[(a1, a2, b)] = left.get((a1, a2, b), 0) + c * c1
                for b1, b2, c2 in coproduct_terms(b):
                    right[(a, b1, b2)] = right.get((a, b1, b2), 0) + c * c2
            ok &= left == right
        out.append(("coassociativity", d, ok))
    ok = True
    pool = [w for n in range(1, 4) for w in hy_words(n)]
    for _ in range(20):
        a, b, c = (Poly.word(rng.choice(pool)) for _ in range(3))
        ok &= quasi.harmonic(a, b) == quasi.harmonic(b, a)
        ok &= quasi.harmonic(quasi.harmonic(a, b), c) == quasi.harmonic(a, quasi.harmonic(b, c))
    out.append(("harmonic comm/assoc", 9, ok))
    return out


def cmd_verify_lemmas(args) -> int:
    if args.max_degree < 2:
        raise InvalidInput("--max-degree must be >= 2")
    t0 = time.perf_counter()
    checks = _lemma_checks(args.max_degree) + _property_checks(args.max_degree)
    ok = all(r for _, _, r in checks)
    report = RunReport("verify-lemmas", {"max_degree": args.max_degree}, "pass" if ok else "fail",
                       time.perf_counter() - t0,
                       details={"checks": [{"name": n, "degree": d, "ok": r} for n, d, r in checks]})
    lines = [f"{n:22s} d={d:<2d} {'ok' if r else 'FAIL'}" for n, d, r in checks]
    return _finish(args, report, lines)


def _write_table(path: Path, rows: list[kawa.RankReport]) -> None:
    if path.suffix == ".json":
        path.write_text(json.dumps([r.to_json() for r in rows], indent=2))
        return
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "r_rtm", "r_kaw", "r_joint", "R_ref", "C_ref"])
        for r in rows:
            w.writerow([r.k, r.r_rtm, r.r_kaw, r.r_joint, r.R_ref, r.C_ref])


def cmd_rk_table(args) -> int:
    if args.max_weight < 2:
        raise InvalidInput("--max-weight must be >= 2")
    t0 = time.perf_counter()
    ks = list(range(2, args.max_weight + 1))

    def one(k):
        return kawa.weight_report(k, args.all_forests, exact=k <= args.exact_upto,
                                  kawashima=not args.rtm_only)

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        rows = list(pool.map(one, ks))
    ok = all(r.matches_reference and (args.rtm_only or r.spans_equal) for r in rows)
    artifacts = []
    if args.output:
        path = Path(args.output)
        _write_table(path, rows)
        artifacts.append(str(path))
    report = RunReport("rk-table", {"max_weight": args.max_weight, "all_forests": args.all_forests,
                                    "exact_upto": args.exact_upto}, "pass" if ok else "fail",
                       time.perf_counter() - t0, artifacts, {"rows": [r.to_json() for r in rows]})
    lines = ["  k  r_rtm  r_kaw  r_joint  R_ref  C_ref"]
    for r in rows:
        lines.append(f"{r.k:3d} {r.r_rtm:6d} {r.r_kaw:6d} {r.r_joint:8d} {r.R_ref!s:>6} {r.C_ref!s:>6}")
    return _finish(args, report, lines)


def cmd_span_equality(args) -> int:
    if args.weight < 3:
        raise InvalidInput("--weight must be >= 3")
    t0 = time.perf_counter()
    rep = kawa.weight_report(args.weight)
    report = RunReport("span-equality", {"weight": args.weight}, "pass" if rep.spans_equal else "fail",
                       time.perf_counter() - t0, details=rep.to_json())
    return _finish(args, report, [f"r_rtm={rep.r_rtm} r_kaw={rep.r_kaw} r_joint={rep.r_joint}"])


def cmd_intertwine(args) -> int:
    f = _forest(args.forest)
    if f.degree < 1 or f not in fbasis.forest_vector(f.degree):
        raise InvalidInput(f"{f.code!r} is not an entry of forest_vector({f.degree})")
    t0 = time.perf_counter()
    ok = kawa.intertwine_check(f, args.max_degree)
    w = kawa.intertwiner(f)
    report = RunReport("intertwine", {"forest": f.code, "max_degree": args.max_degree},
                       "pass" if ok else "fail", time.perf_counter() - t0, details={"w": str(w)})
    return _finish(args, report, [f"w = {w}"])


def cmd_find_map_relations(args) -> int:
    if args.degree < 1 or args.max_word_degree < 1:
        raise InvalidInput("--degree and --max-word-degree must be >= 1")
    t0 = time.perf_counter()
    basis = rtmap.find_map_relations(args.degree, args.max_word_degree)
    expected = basis.n_forests - 2 ** (args.degree - 1)
    details = basis.to_json()
    details["conjectured_dimension"] = expected
    details["matches_conjecture"] = basis.dimension == expected
    report = RunReport("find-map-relations", {"degree": args.degree, "max_word_degree": args.max_word_degree},
                       "report", time.perf_counter() - t0, details=details)
    lines = [f"forests: {basis.n_forests}  kernel dimension: {basis.dimension}  "
             f"(conjecture: {expected})"]
    lines += [f"  {r}" for r in basis.relations]
    return _finish(args, report, lines)


def cmd_numeric_check(args) -> int:
    if args.weight < 3 or args.samples < 1 or not args.tol > 0:
        raise InvalidInput("need --weight >= 3, --samples >= 1, --tol > 0")
    t0 = time.perf_counter()
    prec = mzvnum.PrecisionSpec(min(1e-10, args.tol / 100))
    gens = kawa.rtm_generators(args.weight)
    rng = random.Random(args.seed)
    picks = [rng.randrange(len(gens)) for _ in range(args.samples)]
    rows = []
    for i in picks:
        value = mzvnum.zeta_value(gens[i], prec)
        rows.append((i, str(gens[i]), float(value), abs(value) <= args.tol))
    ok = all(r[3] for r in rows)
    report = RunReport("numeric-check", {"weight": args.weight, "samples": args.samples, "tol": args.tol,
                                         "seed": args.seed}, "pass" if ok else "fail",
                       time.perf_counter() - t0,
                       details={"samples": [{"index": i, "poly": p, "Z": v, "ok": o} for i, p, v, o in rows]})
    lines = [f"#{i:<4d} |Z| = {abs(v):.2e}  {'ok' if o else 'FAIL'}" for i, _, v, o in rows]
    return _finish(args, report, lines)


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rtmzv", description="Rooted tree maps and MZV relation checks.")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--threads", type=int, default=1, help="worker cap")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", help="apply a rooted tree map to a polynomial")
    p.add_argument("forest")
    p.add_argument("poly")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("coproduct")
    p.add_argument("forest")
    p.set_defaults(func=cmd_coproduct)

    p = sub.add_parser("harmonic")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_harmonic)

    p = sub.add_parser("theta-inv")
    p.add_argument("poly")
    p.set_defaults(func=cmd_theta_inv)

    p = sub.add_parser("decompose")
    p.add_argument("v")
    p.add_argument("w")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify-lemmas")
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("rk-table")
    p.add_argument("--max-weight", type=int, default=10)
    p.add_argument("--all-forests", action="store_true", help="use every forest, not only the F basis")
    p.add_argument("--exact-upto", type=int, default=10, help="certify exact ranks up to this weight")
    p.add_argument("--rtm-only", action="store_true", help="skip the Kawashima family")
    p.add_argument("--output", help="write CSV (or JSON if the name ends in .json)")
    p.set_defaults(func=cmd_rk_table)

    p = sub.add_parser("span-equality")
    p.add_argument("--weight", type=int, required=True)
    p.set_defaults(func=cmd_span_equality)

    p = sub.add_parser("intertwine")
    p.add_argument("forest")
    p.add_argument("--max-degree", type=int, default=5)
    p.set_defaults(func=cmd_intertwine)

    p = sub.add_parser("find-map-relations")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--max-word-degree", type=int, default=6)
    p.set_defaults(func=cmd_find_map_relations)

    p = sub.add_parser("numeric-check")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_numeric_check)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_PASS
    try:
        return args.func(args)
    except (InvalidInput, AlgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
