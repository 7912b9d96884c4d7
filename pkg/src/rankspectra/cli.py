"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 usage or domain error,
3 enumeration guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

import numpy as np

from .code import (
    RankMetricCode,
    codeword,
    dual,
    is_nondegenerate,
    weight_spectrum_exhaustive,
    weight_spectrum_sampled,
    weight_spectrum_witness,
)
from .constructions import construct, construction_profile
from .errors import EnumerationTooLargeError, RankSpectraError
from .field import FieldDescriptor, descriptor_for_q, make_descriptor, prime_power_parts
from .formulas import expected_spectrum, fws_exists, lrk, params
from .geometry import weight_via_dual, weight_via_geometry
from .linalg import rank_weight
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _descriptor(args, m: int) -> FieldDescriptor:
    if getattr(args, "p", None) is not None:
        return make_descriptor(args.p, args.e or 1, m)
    return descriptor_for_q(args.q, m)


def _load_code(path: str) -> tuple[RankMetricCode, dict]:
    with open(path) as fh:
        data = json.load(fh)
    return RankMetricCode.from_json(data), data


def _witnesses(data: dict, desc: FieldDescriptor) -> list[list]:
    raw = data.get("witnesses")
    if raw is None:
        raise RankSpectraError("code file carries no witnesses; rebuild it with construct --witnesses")
    return [[desc.elem(e) for e in vec] for vec in raw.values()]


# -- subcommands ------------------------------------------------------------


def cmd_lrk(args) -> int:
    prime_power_parts(args.q)
    value = lrk(args.n, args.m, args.k, args.q)
    report = {
        "n": args.n,
        "m": args.m,
        "k": args.k,
        "q": args.q,
        "lrk": value,
        "params": params(args.n, args.m, args.k).as_dict(),
        "expected_spectrum": expected_spectrum(args.n, args.m, args.k),
        "fws": fws_exists(args.n, args.m, args.k),
    }
    if args.format == "json":
        _emit(report)
    else:
        print(f"lrk {value}")
        p = {k: v for k, v in report["params"].items() if v is not None and k not in ("n", "m", "k")}
        print("params " + " ".join(f"{k}={v}" for k, v in p.items()))
        print("expected_spectrum " + " ".join(map(str, report["expected_spectrum"])))
        print(f"fws {str(report['fws']).lower()}")
    return EXIT_OK


def table_rows(m: int, k: int, q: int, n_max: int) -> list[dict]:
    rows = []
    for n in range(k + 1, n_max + 1):
        p = params(n, m, k)
        rows.append(
            {
                "n": n,
                "m": m,
                "k": k,
                "q": q,
                "lrk": lrk(n, m, k, q),
                "regime": p.regime,
                "s_or_h": p.s if p.regime == "small" else p.h,
                "fws": fws_exists(n, m, k),
            }
        )
    return rows


def cmd_table(args) -> int:
    prime_power_parts(args.q)
    if args.n_max > args.k * args.m:
        raise RankSpectraError(f"--n-max {args.n_max} exceeds k*m = {args.k * args.m}")
    rows = table_rows(args.m, args.k, args.q, args.n_max)
    if args.format == "json":
        _emit(rows)
        return EXIT_OK
    fields = ["n", "m", "k", "q", "lrk", "regime", "s_or_h", "fws"]
    writer = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({**r, "fws": str(r["fws"]).lower()})
    return EXIT_OK


def cmd_construct(args) -> int:
    profile = construction_profile(args.n, args.m, args.k)
    if args.profile_only:
        _emit(list(profile), args.out)
        return EXIT_OK
    desc = _descriptor(args, args.m)
    code, plan = construct(args.n, args.m, args.k, desc)
    data = code.to_json()
    data["profile"] = list(profile)
    if args.witnesses:
        data["witnesses"] = plan.to_json()
    _emit(data, args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    code, data = _load_code(args.input)
    reports = {}
    if args.method in ("witness", "both"):
        reports["witness"] = weight_spectrum_witness(code, _witnesses(data, code.desc))
    if args.method in ("exhaustive", "both"):
        reports["exhaustive"] = weight_spectrum_exhaustive(code, args.limit)
    if args.method == "sampled":
        reports["sampled"] = weight_spectrum_sampled(code, args.samples, args.seed)
    if args.method != "both":
        _emit(next(iter(reports.values())).to_json())
        return EXIT_OK
    _emit({k: r.to_json() for k, r in reports.items()})
    if not set(reports["witness"].weights) <= set(reports["exhaustive"].weights):
        print("witness weights are not a subset of the exhaustive spectrum", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_dual(args) -> int:
    code, _ = _load_code(args.input)
    D = dual(code)
    out = {"dual": D.to_json(), "nondegenerate": is_nondegenerate(D)}
    if not args.no_spectrum:
        out["spectrum"] = weight_spectrum_exhaustive(D, args.limit).to_json()
    _emit(out, args.out)
    return EXIT_OK


def cmd_geometry(args) -> int:
    code, _ = _load_code(args.input)
    desc = code.desc
    rng = np.random.default_rng(args.seed)
    mismatches = []
    for _ in range(args.samples):
        x = [desc.zero]
        while not any(x):
            x = [desc.random_element(rng) for _ in range(code.k)]
        triple = (
            rank_weight(codeword(code, x), desc),
            weight_via_geometry(code, x),
            weight_via_dual(code, x),
        )
        if len(set(triple)) != 1:
            mismatches.append({"x": [e.to_json() for e in x], "weights": list(triple)})
    _emit({"samples": args.samples, "seed": args.seed, "mismatches": mismatches})
    return EXIT_OK if not mismatches else EXIT_FAIL


def cmd_verify(args) -> int:
    print(f"suite {args.suite} seed {args.seed}")
    checks = run_suite(args.suite, args.seed)
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if not failed else EXIT_FAIL


# -- parser -----------------------------------------------------------------


def _field_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, default=2, help="base field size (prime power)")
    p.add_argument("--p", type=int, help="characteristic; overrides --q together with --e")
    p.add_argument("--e", type=int, help="degree of F_q over F_p")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankspectra", description="Rank-weight spectra of F_{q^m}-linear codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lrk", help="maximum number of distinct rank weights")
    for flag in ("--n", "--m", "--k"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_lrk)

    p = sub.add_parser("table", help="L_rk over a range of lengths")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("construct", help="optimal construction as code JSON")
    for flag in ("--n", "--m", "--k"):
        p.add_argument(flag, type=int, required=True)
    _field_flags(p)
    p.add_argument("--out")
    p.add_argument("--witnesses", action="store_true", help="embed the certifying coefficient vectors")
    p.add_argument("--profile-only", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectrum", help="weight spectrum of a code file")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("exhaustive", "witness", "both", "sampled"), default="exhaustive")
    p.add_argument("--limit", type=int, help="projective point guard")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("dual", help="dual code and its spectrum")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.add_argument("--limit", type=int)
    p.add_argument("--no-spectrum", action="store_true")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("geometry", help="three-path weight check on random codewords")
    p.add_argument("--input", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EnumerationTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps({"required_points": exc.required, "limit": exc.limit}), file=sys.stderr)
        return EXIT_GUARD
    except (RankSpectraError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
