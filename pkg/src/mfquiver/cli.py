"""Command-line front end.

Every command prints canonical JSON (sorted keys, ``"schema": 1``) on stdout.
Exit status: 0 when all checks pass, 1 when a check fails, 2 for usage or
input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import checks
from .algebra import format_rational, is_regular_weight_system, milnor_number
from .decompose import ar_quiver, certificate_holds, decompose
from .homalg import UnsupportedObject, hom, hom_dim_table, verify_serre_duality
from .jsonio import MFFormatError, dumps, load_mf
from .mfcore import GradedMF, verify_mf
from .quiverlat import cartan_matrix_A, equivalence_report, euler_matrix, exceptional_collection
from .stability import check_bridgeland, hn_filtration

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(payload: dict, passed: bool = True) -> int:
    sys.stdout.write(dumps(payload))
    return EXIT_OK if passed else EXIT_FAIL


def _univariate(m: GradedMF, path: str) -> GradedMF:
    if not m.is_univariate():
        raise UsageError(f"{path}: this command needs a one-variable object (weights a = [1])")
    return m


def _positive_h(h: int, least: int = 2) -> int:
    if h < least:
        raise UsageError(f"--h must be at least {least}")
    return h


# -- subcommands ----------------------------------------------------------------

def cmd_verify(args) -> int:
    report = verify_mf(load_mf(args.file))
    return _emit({"command": "verify", "file": args.file, **report.to_json()}, report.passed)


def cmd_hom(args) -> int:
    a = _univariate(load_mf(args.file_a), args.file_a)
    b = _univariate(load_mf(args.file_b), args.file_b)
    if args.table:
        w = args.window
        degrees = list(range(-w, w + 1))
        return _emit({"command": "hom", "degrees": degrees, "dims": [hom(a, b, q).dim for q in degrees]})
    return _emit({"command": "hom", **hom(a, b, args.degree).to_json()})


def cmd_decompose(args) -> int:
    m = _univariate(load_mf(args.file), args.file)
    dec = decompose(m)
    payload = {"command": "decompose", **dec.to_json(certificate=args.certificate)}
    ok = True
    if args.certificate:
        ok = certificate_holds(m, dec)
        payload["certificate_verified"] = ok
    return _emit(payload, ok)


def cmd_ar(args) -> int:
    q = ar_quiver(_positive_h(args.h), args.window)
    return _emit({"command": "ar", **q.to_json()}, q.passed)


def cmd_euler(args) -> int:
    h = _positive_h(args.h)
    sources = ["mf", "quiver"] if args.source == "both" else [args.source]
    data = {s: euler_matrix(h, s) for s in sources}
    cartan = cartan_matrix_A(h - 1)
    payload: dict = {"command": "euler", "h": h, "cartan": cartan.to_int_rows()}
    for s, e in data.items():
        payload[s] = e.to_json()
    ok = all(e.I == cartan for e in data.values())
    if len(data) == 2:
        same = data["mf"].A == data["quiver"].A
        payload["verdict"] = "match" if same else "mismatch"
        ok = ok and same
    payload["intersection_form_is_cartan"] = all(e.I == cartan for e in data.values())
    return _emit(payload, ok)


def cmd_serre(args) -> int:
    rep = verify_serre_duality(_positive_h(args.h), args.range)
    return _emit({"command": "serre", **rep.to_json()}, rep.passed)


def cmd_stability_hn(args) -> int:
    m = _univariate(load_mf(args.file), args.file)
    try:
        filt = hn_filtration(m)
    except ValueError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    return _emit({"command": "stability hn", **filt.to_json()}, filt.passed)


def cmd_stability_check(args) -> int:
    rep = check_bridgeland(_positive_h(args.h), args.window, args.seed)
    return _emit({"command": "stability check", **rep.to_json()}, rep.passed)


def cmd_quiver_compare(args) -> int:
    rep = equivalence_report(_positive_h(args.h))
    return _emit({"command": "quiver compare", **rep.to_json()}, rep.passed)


def cmd_weights_check(args) -> int:
    try:
        wit = is_regular_weight_system(args.a, args.b, args.c, args.h)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"command": "weights check", "weights": [args.a, args.b, args.c], "h": args.h,
               "regular": wit.regular}
    if wit.regular:
        payload["chi"] = wit.chi.to_json()
        payload["milnor_number"] = format_rational(milnor_number(args.a, args.b, args.c, args.h))
    else:
        payload["poles"] = list(wit.poles)
    return _emit(payload)


def _suite(h: int, seed: int) -> list[checks.CheckResult]:
    return [
        checks.hom_table(h),
        checks.serre_duality(h),
        checks.serre_power(h),
        checks.lattice(h),
        checks.root_count(h),
        checks.polar_form(h),
        checks.bridgeland(h, seed=seed),
        checks.decompose_roundtrip(h, seed=seed),
        checks.knorrer(h),
    ]


def cmd_report(args) -> int:
    h = _positive_h(args.h)
    runs = _suite(h, args.seed)
    payload = {
        "command": "report",
        "h": h,
        "seed": args.seed,
        "hom_table": hom_dim_table(exceptional_collection(h)),
        "euler": euler_matrix(h, "mf").to_json(),
        "ar": ar_quiver(h, 1).to_json(),
        "equivalence": equivalence_report(h).to_json(),
        "checks": [r.to_json() for r in runs],
    }
    passed = all(r.passed for r in runs)
    payload["passed"] = passed
    Path(args.output).write_text(dumps(payload), encoding="utf-8")
    return _emit({"command": "report", "output": args.output, "passed": passed}, passed)


def cmd_selftest(args) -> int:
    top = _positive_h(args.max_h)
    runs = [checks.differential_identities(seed=args.seed, max_h=min(top, 6))]
    for h in range(2, top + 1):
        runs.extend(_suite(h, args.seed))
    runs.append(checks.weight_scan(20))
    passed = all(r.passed for r in runs)
    return _emit({"command": "selftest", "max_h": top, "seed": args.seed,
                  "checks": [r.to_json() for r in runs], "passed": passed}, passed)


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mfquiver", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check Q^2 = f and homogeneity of an object file")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("hom", help="cohomology of the morphism complex")
    s.add_argument("file_a")
    s.add_argument("file_b")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--degree", type=int, default=0)
    g.add_argument("--table", action="store_true", help="dimensions over a degree window")
    s.add_argument("--window", type=int, default=4)
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("decompose", help="split into indecomposables")
    s.add_argument("file")
    s.add_argument("--certificate", action="store_true", help="emit and check the base change")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("ar", help="Auslander-Reiten quiver with verified arrows")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--window", type=int, default=1)
    s.set_defaults(func=cmd_ar)

    s = sub.add_parser("euler", help="Euler matrix and intersection form")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--source", choices=("mf", "quiver", "both"), default="both")
    s.set_defaults(func=cmd_euler)

    s = sub.add_parser("serre", help="Serre duality with trace pairings")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--range", type=int, default=2)
    s.set_defaults(func=cmd_serre)

    s = sub.add_parser("stability", help="phases, HN filtrations and axiom checks")
    ssub = s.add_subparsers(dest="stability_command", required=True)
    t = ssub.add_parser("hn")
    t.add_argument("file")
    t.set_defaults(func=cmd_stability_hn)
    t = ssub.add_parser("check")
    t.add_argument("--h", type=int, required=True)
    t.add_argument("--window", type=int, default=2)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_stability_check)

    s = sub.add_parser("quiver", help="comparison with the linear quiver")
    qsub = s.add_subparsers(dest="quiver_command", required=True)
    t = qsub.add_parser("compare")
    t.add_argument("--h", type=int, required=True)
    t.set_defaults(func=cmd_quiver_compare)

    s = sub.add_parser("weights", help="regular weight systems")
    wsub = s.add_subparsers(dest="weights_command", required=True)
    t = wsub.add_parser("check")
    for name in ("a", "b", "c", "h"):
        t.add_argument(f"--{name}", type=int, required=True)
    t.set_defaults(func=cmd_weights_check)

    s = sub.add_parser("report", help="run everything for one h and write a JSON report")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("selftest", help="full property suite")
    s.add_argument("--max-h", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    func: Callable = args.func
    try:
        return func(args)
    except (UsageError, MFFormatError, UnsupportedObject) as exc:
        print(f"mfquiver: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
