"""Command-line front end.

Exit status: 0 on success or a passing verification, 1 when a verification
fails, 2 on a usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from . import albert as al
from . import orbits as ob
from .gf import FieldError, parse_field_spec
from .se6 import GeneratorWord, word_to_map
from .verify import SUITES, run_suite

SCHEMA = "albert-e6/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("ALBERT_E6_THREADS", "1")))
    except ValueError:
        return 1


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--q", default="2", help="field size as p^k or an integer (default 2)")
    p.add_argument("--modulus", default=None, help="irreducible modulus [c0,...,ck] for extension fields")
    p.add_argument("--threads", type=int, default=_default_threads(),
                   help="worker threads (default $ALBERT_E6_THREADS or 1)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--seed", type=int, default=0, help="seed for every sampled check")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms from the report")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="albert-e6", description="Exact computations in the 27-dimensional E6 module over GF(q).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="colour and determinant of an Albert vector")
    p.add_argument("vector", help='e.g. "(0,0,1|0;0;0)"')

    p = sub.add_parser("count-white", parents=[common], help="number of white vectors")
    p.add_argument("--method", choices=("formula", "stratified", "enumerate", "points"), default="formula")

    sub.add_parser("order", parents=[common], help="orders of SE6(q) and E6(q)")

    p = sub.add_parser("orbit", parents=[common], help="orbit of a white point under a generator set")
    p.add_argument("--start", default="(0,0,1|0;0;0)")
    p.add_argument("--gens", default="standard",
                   help='"standard", "stabiliser" or a semicolon-separated generator word')
    p.add_argument("--max-points", type=int, default=2_000_000)

    p = sub.add_parser("reduce", parents=[common], help="reduce a vector to its canonical representative")
    p.add_argument("vector")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("matrix", parents=[common], help="27x27 matrix of a generator word")
    p.add_argument("word", help='e.g. "M:x=e1;tau"')
    return parser


# -- commands -----------------------------------------------------------------


def _vector(F, text):
    try:
        return al.AlbertVector.parse(F, text)
    except al.ParseError as e:
        raise UsageError(str(e)) from None


def cmd_classify(F, args):
    X = _vector(F, args.vector)
    return [{"vector": str(X), "color": str(al.classify(X)), "delta": F.format(al.delta(X).code)}], EXIT_OK


def cmd_count_white(F, args):
    q = F.q
    rec = {"q": q, "method": args.method}
    if args.method == "formula":
        rec["white_vectors"] = ob.count_white_formula(q)
    elif args.method == "points":
        rec["white_points"] = ob.count_white_points(q)
    elif args.method == "stratified":
        n10, n26, nout, tot = ob.count_white_stratified(q)
        rec |= {"J10": n10, "J26_minus_J10": n26, "outside_J26": nout, "white_vectors": tot}
    else:
        try:
            n10, n26, nout, tot = ob.count_white_enumerate(q, threads=args.threads, stratified=True)
        except OverflowError as e:
            raise UsageError(str(e)) from None
        rec |= {"J10": n10, "J26_minus_J10": n26, "outside_J26": nout, "white_vectors": tot}
    return [rec], EXIT_OK


def cmd_order(F, args):
    q = F.q
    return [{
        "q": q,
        "order_se6": ob.order_se6(q),
        "order_e6": ob.order_e6(q),
        "stabilizer_consistent": ob.stabilizer_order_consistency(q),
    }], EXIT_OK


def cmd_orbit(F, args):
    start = _vector(F, args.start)
    if args.gens == "standard":
        gens = ob.standard_generators(F)
    elif args.gens in ("stabiliser", "stabilizer"):
        gens = ob.stabiliser_generators(F)
    else:
        gens = list(_word(F, args.gens))
    try:
        orbit = ob.white_point_orbit_bfs(F, start, gens, threads=args.threads, max_points=args.max_points)
    except (OverflowError, ValueError) as e:
        raise UsageError(str(e)) from None
    return [{"q": F.q, "start": str(start), "generators": len(gens), "orbit_size": len(orbit)}], EXIT_OK


def cmd_reduce(F, args):
    X = _vector(F, args.vector)
    cf = ob.reduce_to_canonical(X)
    return [{
        "vector": str(X),
        "kind": str(cf.kind),
        "lambda": None if cf.lam is None else F.format(cf.lam.code),
        "representative": str(cf.representative),
        "word": str(cf.word),
    }], EXIT_OK


def cmd_verify(F, args):
    checks = run_suite(args.suite, F, seed=args.seed, samples=args.samples, threads=args.threads)
    recs = [{"check": c.name, "passed": c.passed} for c in checks]
    return recs, EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def _word(F, text):
    try:
        return GeneratorWord.parse(F, text)
    except (ValueError, FieldError) as e:
        raise UsageError(str(e)) from None


def cmd_matrix(F, args):
    m = word_to_map(_word(F, args.word), F).matrix
    return [{"row": i, "entries": " ".join(F.format(v) for v in m[i])} for i in range(al.DIM)], EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "count-white": cmd_count_white,
    "order": cmd_order,
    "orbit": cmd_orbit,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "matrix": cmd_matrix,
}


# -- output -------------------------------------------------------------------


def render(command: str, records: list[dict], fmt: str, elapsed_ms: float | None, passed: bool | None = None) -> str:
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command}
        if len(records) == 1 and command != "verify":
            doc |= records[0]
        else:
            doc["records"] = records
        if passed is not None:
            doc["passed"] = passed
        if elapsed_ms is not None:
            doc["elapsed_ms"] = round(elapsed_ms, 3)
        return json.dumps(doc, default=_jsonable)
    if fmt == "csv":
        buf = io.StringIO()
        keys = list(dict.fromkeys(k for r in records for k in r))
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(records)
        return buf.getvalue().rstrip("\n")
    lines = []
    for r in records:
        lines.append("  ".join(f"{k}={v}" for k, v in r.items()))
    if elapsed_ms is not None:
        lines.append(f"elapsed_ms={elapsed_ms:.1f}")
    return "\n".join(lines)


def _jsonable(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"{type(o).__name__} is not JSON serializable")


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        F = parse_field_spec(args.q, args.modulus)
        t0 = time.perf_counter()
        records, code = COMMANDS[args.command](F, args)
        elapsed = None if args.no_timing else (time.perf_counter() - t0) * 1000
    except (UsageError, FieldError, ValueError) as e:
        print(f"albert-e6: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    passed = (code == EXIT_OK) if args.command == "verify" else None
    print(render(args.command, records, args.format, elapsed, passed), file=out)
    return code


def main() -> None:
    sys.exit(run())
