"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when a verification or axiom check
fails, 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import finite_engine as fe
from . import grid_sets as gs
from .combinators import OracleSyntaxError, parse_oracle, restrict_window
from .oracles import NotABase
from .witnesses import WITNESS_WINDOW, Certificate, CertificateFormatError, base_gap, verify_certificate, witness


class UsageError(Exception):
    pass


def parse_window(text: str) -> tuple:
    try:
        r, c = text.lower().split("x")
        R, C = int(r), int(c)
    except ValueError:
        raise UsageError(f"window must look like RxC, got {text!r}") from None
    if R < 1 or C < 1:
        raise UsageError("window dimensions must be positive")
    return R, C


def parse_k(text: str) -> list:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            ks = list(range(int(lo), int(hi) + 1))
        else:
            ks = [int(text)]
    except ValueError:
        raise UsageError(f"--k must be an integer or a range a..b, got {text!r}") from None
    if not ks or min(ks) < 1:
        raise UsageError("k values must be positive")
    return ks


def _emit(args, reports: list, out=None) -> int:
    out = out or sys.stdout
    if args.format == "json":
        payload = {"command": args.command, "passed": all(r.passed for r in reports),
                   "reports": [r.record() for r in reports]}
        out.write(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")
    else:
        for r in reports:
            out.write(r.text())
    return 0 if all(r.passed for r in reports) else 1


def sampled_axioms(oracle, R: int, C: int, samples: int, seed: int) -> fe.Report:
    """I1-I3 on random subsets of a window too large to enumerate."""
    u = oracle.universe
    ground = [e for e in u.window_elements(R, C) if oracle.ground_contains(e)]
    rng = np.random.default_rng(seed)
    rep = fe.Report(f"sampled axioms on {len(ground)} elements, {samples} samples, seed {seed}", fmt=u.format_element)
    indep = lambda elems: oracle.is_independent(u.from_elements(elems))

    def greedy(stop_prob: float) -> list:
        picked = []
        for i in rng.permutation(len(ground)):
            if rng.random() < stop_prob:
                break
            if indep(picked + [ground[i]]):
                picked.append(ground[i])
        return picked

    rep.add("I1", indep([]), "empty set independent")
    bad = None
    for _ in range(samples):
        S = greedy(0.0 if rng.random() < 0.5 else 0.1)
        for e in S:
            if not indep([x for x in S if x != e]):
                bad = S
                break
        if bad:
            break
    rep.add("I2", bad is None, "removing one element keeps sampled sets independent", bad)
    bad = None
    for _ in range(samples):
        B = greedy(0.0)
        A = greedy(0.2)
        if not any(indep(A + [e]) for e in ground if e not in A):
            continue
        if not any(indep(A + [b]) for b in B if b not in A):
            bad = A
            break
    rep.add("I3", bad is None, "sampled (base, non-maximal) pairs augment", bad)
    rep.add("I4", True, "finite ground: every subfamily has maximal elements")
    return rep


def cmd_axioms(args) -> int:
    oracle = parse_oracle(args.oracle)
    R, C = parse_window(args.window)
    n = len([e for e in oracle.universe.window_elements(R, C) if oracle.ground_contains(e)])
    if n <= fe.MAX_GROUND:
        fm = restrict_window(oracle, R, C)
        rep = fe.check_axioms(fm)
        rep.title = f"{oracle.name} on {R}x{C} window: " + rep.title
        rep.fmt = oracle.universe.format_element
    else:
        rep = sampled_axioms(oracle, R, C, args.samples, args.seed)
        rep.title = f"{oracle.name} on {R}x{C} window: " + rep.title
    return _emit(args, [rep])


def cmd_witness(args) -> int:
    ks = parse_k(args.k)
    certs = [witness(k, args.window_limit) for k in ks]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for c in certs:
            (out / f"k{c.k}.json").write_text(c.to_json())
        reports = []
        for c in certs:
            rep = fe.Report(f"wrote {out / f'k{c.k}.json'}")
            for ch in c.checks:
                rep.add(ch.name, ch.verdict, ch.detail)
            reports.append(rep)
        return _emit(args, reports)
    for c in certs:
        sys.stdout.write(c.to_json())
    return 0 if all(ch.verdict for c in certs for ch in c.checks) else 1


def cmd_verify(args) -> int:
    reports = []
    for path in args.paths:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise UsageError(str(exc)) from exc
        cert = Certificate.from_json(text)
        rep = verify_certificate(cert, args.window_limit)
        rep.title = f"{path}: {rep.title}"
        reports.append(rep)
    return _emit(args, reports)


def cmd_crosscheck(args) -> int:
    oracle = parse_oracle(args.oracle)
    R, C = parse_window(args.window)
    return _emit(args, [fe.crosscheck(oracle, R, C, args.samples, args.seed)])


def cmd_gap(args) -> int:
    if (args.set is None) == (args.file is None):
        raise UsageError("give exactly one of --set or --file")
    oracle = parse_oracle(args.oracle)
    if args.set is not None:
        S = gs.parse_set(args.set) if oracle.universe.kind == "grid" else None
        if S is None:
            raise UsageError("--set only describes grid sets; use --file")
    else:
        try:
            rec = json.loads(Path(args.file).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        S = oracle.universe.from_record(rec)
    try:
        gap = base_gap(S, oracle)
    except NotABase as exc:
        print(f"not a base: {exc}", file=sys.stderr)
        return 1
    value = "inf" if gap == math.inf else int(gap)
    if args.format == "json":
        print(json.dumps({"command": "gap", "oracle": oracle.name, "gap": value}, sort_keys=True))
    else:
        print(value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nearfin", description="Verification runs for the grid matroids M1 and M.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, oracle=True, window=None):
        if oracle:
            sp.add_argument("--oracle", default="m", help="oracle expression, e.g. m, m1, trunc(2,m1), sum(m,toy)")
        if window:
            sp.add_argument("--window", default=window, help="window RxC (default %(default)s)")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("axioms", help="check I1-I4 on a window restriction")
    common(sp, window="8x8")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("witness", help="write certificates that M is not k-nearly finitary")
    common(sp, oracle=False)
    sp.add_argument("--k", required=True, help="k or a range a..b")
    sp.add_argument("--out", help="directory for k<K>.json files (stdout if omitted)")
    sp.add_argument("--window-limit", type=int, default=WITNESS_WINDOW)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("verify", help="re-verify certificate files from scratch")
    common(sp, oracle=False)
    sp.add_argument("paths", nargs="+")
    sp.add_argument("--window-limit", type=int, default=100)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("crosscheck", help="compare an oracle with window enumeration")
    common(sp, window="4x4")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_crosscheck)

    sp = sub.add_parser("gap", help="size of F - B for completions of a base B")
    common(sp)
    sp.add_argument("--set", help='grid set, e.g. "coltail 3 4" or "ray 1 1 1; point 2 5"')
    sp.add_argument("--file", help="JSON set record")
    sp.set_defaults(func=cmd_gap)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OracleSyntaxError, gs.MalformedSet, CertificateFormatError, fe.WindowTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
