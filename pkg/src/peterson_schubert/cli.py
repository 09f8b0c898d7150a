"""Command line front end: ``peterson-schubert <command> ...``.

Tables print as plain text unless an output flag picks a machine format
(``--json`` gives JSON lines).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass

from . import constants
from .bikelock import IdentityParams, verify_identity
from .constants import b_general, expand_product
from .monomial import TMonomial
from .restriction import restrict
from .subsets import SubsetMask, parse_subset
from .verify import verify_formula, verify_identity_grid, verify_oracle

CACHE_FORMAT = "peterson-schubert-memo"
CACHE_VERSION = 1


@dataclass(frozen=True)
class OutputRecord:
    A: list
    B: list
    C: list
    coeff: str
    t_power: int
    n: int

    @classmethod
    def make(cls, A: SubsetMask, B: SubsetMask, C: SubsetMask, value: TMonomial, n: int) -> "OutputRecord":
        return cls(list(A), list(B), list(C), str(value.coeff), value.power, n)

    @property
    def value(self) -> TMonomial:
        return TMonomial(int(self.coeff), self.t_power)

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        d = json.loads(text)
        return cls(list(d["A"]), list(d["B"]), list(d["C"]), str(d["coeff"]), int(d["t_power"]), int(d["n"]))


def _braces(xs) -> str:
    return "{" + ",".join(map(str, xs)) + "}"


def _latex_value(rec: OutputRecord) -> str:
    if rec.t_power == 0:
        return rec.coeff
    power = "t" if rec.t_power == 1 else f"t^{{{rec.t_power}}}"
    return power if rec.coeff == "1" else rec.coeff + power


def render(records: list[OutputRecord], fmt: str) -> str:
    if fmt == "json":
        return "\n".join(r.to_json() for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["A", "B", "C", "coeff", "t_power", "n"])
        for r in records:
            w.writerow([",".join(map(str, r.A)), ",".join(map(str, r.B)),
                        ",".join(map(str, r.C)), r.coeff, r.t_power, r.n])
        return buf.getvalue().rstrip("\n")
    if fmt == "latex":
        lines = [r"\begin{tabular}{lllr}", r"$A$ & $B$ & $C$ & coefficient \\", r"\hline"]
        for r in records:
            sets = [r"\{" + ",".join(map(str, s)) + r"\}" for s in (r.A, r.B, r.C)]
            lines.append(f"${sets[0]}$ & ${sets[1]}$ & ${sets[2]}$ & ${_latex_value(r)}$ \\\\")
        lines.append(r"\end{tabular}")
        return "\n".join(lines)
    return "\n".join(f"A={_braces(r.A)} B={_braces(r.B)} C={_braces(r.C)}  {r.value}" for r in records)


class UsageError(Exception):
    pass


def _subset(text: str, n: int, name: str) -> SubsetMask:
    try:
        return parse_subset(text, n)
    except ValueError as exc:
        raise UsageError(f"--{name} {text!r}: {exc}") from None


def _fmt(args) -> str:
    for f in ("json", "csv", "latex"):
        if getattr(args, f, False):
            return f
    return "text"


def cmd_constant(args) -> int:
    A, B, C = (_subset(getattr(args, k), args.n, k) for k in "abc")
    rec = OutputRecord.make(A, B, C, b_general(A, B, C), args.n)
    fmt = _fmt(args)
    print(str(rec.value) if fmt == "text" else render([rec], fmt))
    return 0


def cmd_expand(args) -> int:
    A, B = _subset(args.a, args.n, "a"), _subset(args.b, args.n, "b")
    rows = expand_product(A, B, args.n)
    if args.ordinary:
        rows = {C: v for C, v in rows.items() if len(C) == len(A) + len(B)}
    records = [OutputRecord.make(A, B, C, v, args.n) for C, v in rows.items()]
    if records:
        print(render(records, _fmt(args)))
    return 0


def cmd_restrict(args) -> int:
    A, C = _subset(args.a, args.n, "a"), _subset(args.c, args.n, "c")
    rec = OutputRecord.make(A, SubsetMask(args.n, 0), C, restrict(A, C), args.n)
    fmt = _fmt(args)
    print(str(rec.value) if fmt == "text" else render([rec], fmt))
    return 0


def cmd_verify(args) -> int:
    if args.mode == "formula":
        report = verify_formula(args.max_n, args.min_n)
    elif args.mode == "oracle":
        report = verify_oracle(args.max_n, args.min_n)
    else:
        report = verify_identity_grid(args.grid_m, args.grid_n, args.grid_max, args.grid_width,
                                      bijection=not args.counts_only)
    if args.json:
        print(json.dumps({"mode": report.mode, "unit": report.unit, "checked": report.checked,
                          "mismatches": report.mismatches, "elapsed": report.elapsed,
                          "counterexamples": report.counterexamples, **report.extra}))
    else:
        print(report.summary())
        for k, v in report.extra.items():
            print(f"  {k}: {v}")
        for ce in report.counterexamples:
            print("  counterexample:", json.dumps(ce))
    return 0 if report.ok else 1


def cmd_identity(args) -> int:
    p = IdentityParams(args.m, args.n, args.w, args.x, args.y, args.z)
    cert = verify_identity(p, bijection=args.bijection, trace=args.trace)
    if args.json:
        print(json.dumps(cert.to_dict()))
        return 0 if cert.ok else 1
    print("params: " + " ".join(f"{k}={v}" for k, v in vars(p).items()))
    print(f"lhs={cert.lhs} rhs={cert.rhs} |S|={cert.size_S} |V|={cert.size_V}")
    if cert.vacuous:
        print("vacuous: no matrices on either side")
    if cert.bijection is None:
        print("bijection: not checked")
    else:
        print("bijection: " + ("valid" if cert.bijection else "INVALID"))
        for k, v in cert.checks.items():
            if not v:
                print(f"  failed: {k}")
    print(f"elapsed: {cert.elapsed:.3f}s")
    for pair in cert.pairs or []:
        print(" | ".join(f"{k}: {'/'.join(v)}" for k, v in pair.items()))
    return 0 if cert.ok else 1


def _load_cache(path: str) -> None:
    if not os.path.exists(path):
        return
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("format") != CACHE_FORMAT or data.get("version") != CACHE_VERSION:
        raise UsageError(f"{path}: not a version {CACHE_VERSION} memo snapshot")
    constants.load_memo(data["entries"])


def _save_cache(path: str) -> None:
    rows = [[str(v) for v in row] for row in constants.memo_snapshot()]
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump({"format": CACHE_FORMAT, "version": CACHE_VERSION, "entries": rows}, fh)
    os.replace(tmp, path)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="JSON lines")
    g.add_argument("--csv", action="store_true")
    g.add_argument("--latex", action="store_true", help="LaTeX tabular")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peterson-schubert",
        description="Structure constants of Peterson Schubert classes and the bike lock identity.")
    parser.add_argument("--cache", metavar="PATH", help="load and save a memo snapshot of computed constants")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constant", help="one structure constant b_{A,B}^C")
    for k in "abc":
        p.add_argument(f"--{k}", required=True, help="subset such as 1,2,4-5 (empty string for none)")
    p.add_argument("--n", type=int, required=True, help="rank; subsets live in 1..n-1")
    _add_output_flags(p)
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("expand", help="every nonzero b_{A,B}^C")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ordinary", action="store_true", help="only |C| = |A| + |B|")
    _add_output_flags(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("restrict", help="p_A restricted to the fixed point w_C")
    p.add_argument("--a", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("verify", help="exhaustive comparison sweeps")
    p.add_argument("--mode", choices=["formula", "oracle", "identity"], default="formula")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--grid-m", type=int, default=3)
    p.add_argument("--grid-n", type=int, default=3)
    p.add_argument("--grid-max", type=int, default=5, help="bound on w, x, y, z")
    p.add_argument("--grid-width", type=int, default=12, help="bound on w + m + n")
    p.add_argument("--counts-only", action="store_true", help="identity mode: skip the move pipeline")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identity", help="certificate for one parameter point")
    for k in "mnwxyz":
        p.add_argument(f"--{k}", type=int, required=True)
    p.add_argument("--bijection", action="store_true", help="run the move pipeline and correspondence")
    p.add_argument("--trace", action="store_true", help="list every matched pair")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_identity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "identity":
        if args.w + args.x != args.y + args.z:
            parser.error(f"w + x = {args.w + args.x} must equal y + z = {args.y + args.z}")
        if args.m < 0 or args.n < 0:
            parser.error("m and n must be nonnegative")
    if getattr(args, "n", None) is not None and args.command in ("constant", "expand", "restrict"):
        if not 1 <= args.n <= 64:
            parser.error("--n must lie in 1..64")
    if args.command == "verify" and args.mode != "identity" and not 2 <= args.min_n <= args.max_n <= 12:
        parser.error("need 2 <= --min-n <= --max-n <= 12")
    try:
        if args.cache:
            _load_cache(args.cache)
        status = args.func(args)
        if args.cache:
            _save_cache(args.cache)
        return status
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
