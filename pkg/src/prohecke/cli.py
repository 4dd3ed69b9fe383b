"""Command-line front end.

Subcommands:
  run <id|all>            verify fixtures; exit 0 iff every check passes
  list                    list registered fixtures
  dump-algebra            structure constants of basis products up to a length
  ss-solve <pagefile>     propagate a spectral-sequence page
  classify                simple modules of dimension 1 or 2

Exit codes: 0 pass, 1 verification failure, 2 usage, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .algebra import HeckeAlgebraDescriptor, structure_constants
from .enumeration import canonical_form, enumerate_gl2, enumerate_sl2
from .field import is_prime
from .fixtures import Check, FixtureError, load_fixture, registry, verify
from .modules import ModuleError, classify_simples
from .spectral import PageSyntaxError, SpectralError, parse_page, ss_propagate

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class VerificationReport:
    fixture: str
    group: str
    p: int
    q: int
    seed: int
    assumptions: list[str]
    checks: list[Check] = field(default_factory=list)
    seconds: float | None = None

    @property
    def status(self) -> str:
        statuses = {c.status for c in self.checks}
        if "fail" in statuses:
            return "fail"
        return "inconclusive" if "inconclusive" in statuses else "pass"

    def to_dict(self, timing: bool) -> dict:
        out = {
            "fixture": self.fixture,
            "status": self.status,
            "config": {"p": self.p, "q": self.q, "group": self.group, "seed": self.seed,
                       "assumptions": self.assumptions},
            "checks": [asdict(c) for c in self.checks],
        }
        if timing:
            out["seconds"] = round(self.seconds or 0.0, 3)
        return out


# ----------------------------------------------------------------- helpers

def _exponent(p: int, q: int | None) -> int:
    if not is_prime(p) or p == 2:
        raise UsageError(f"--p must be an odd prime, got {p}")
    if q is None:
        return 1
    e, x = 0, 1
    while x < q:
        x *= p
        e += 1
    if x != q or e == 0:
        raise UsageError(f"--q must be a power of p = {p}, got {q}")
    return e


def _emit(args, data, human: list[str]) -> None:
    if args.format == "structured":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print("\n".join(human))


# ------------------------------------------------------------- subcommands

def cmd_run(args) -> int:
    reg = registry()
    if args.target == "all":
        ids = sorted(reg)
    elif args.target in reg:
        ids = [args.target]
    else:
        raise UsageError(f"unknown fixture {args.target!r}; known: {', '.join(sorted(reg))}")
    e = _exponent(args.p, args.q)
    enabled = ("split",) if args.assume_split else ()
    reports = []
    for fid in ids:
        fx = load_fixture(fid)
        start = time.perf_counter()
        checks = verify(fx, p=args.p, e=e, enabled=enabled, seed=args.seed)
        rep = VerificationReport(fid, fx.group, args.p, args.p ** e, args.seed, list(enabled), checks)
        rep.seconds = time.perf_counter() - start
        reports.append(rep)
    reports.sort(key=lambda r: r.fixture)
    overall = "pass" if all(r.status == "pass" for r in reports) else (
        "fail" if any(r.status == "fail" for r in reports) else "inconclusive")
    human = []
    for r in reports:
        head = f"{r.fixture}: {r.status.upper()} ({len(r.checks)} checks, p={r.p}, q={r.q}, group {r.group})"
        if args.timing:
            head += f" in {r.seconds:.2f}s"
        human.append(head)
        for c in r.checks:
            if args.verbose or c.status != "pass":
                inst = f" [{c.instance}]" if c.instance else ""
                human.append(f"  {c.status:<12} {c.name}{inst}: {c.detail}  <{c.citation}>")
    human.append(f"overall: {overall.upper()}")
    data = {"status": overall, "reports": [r.to_dict(args.timing) for r in reports]}
    _emit(args, data, human)
    return EXIT_PASS if overall == "pass" else EXIT_FAIL


def cmd_list(args) -> int:
    rows = []
    for fid in sorted(registry()):
        fx = load_fixture(fid)
        rows.append({"id": fid, "group": fx.group, "cite": fx.cite, "externals": fx.externals})
    _emit(args, rows, [f"{r['id']:<22} {r['group']:<4} {r['cite']}" for r in rows])
    return EXIT_PASS


def cmd_dump_algebra(args) -> int:
    if args.max_length < 0:
        raise UsageError("--max-length must be nonnegative")
    desc = HeckeAlgebraDescriptor.make(args.group, args.p, _exponent(args.p, args.q))
    lines = structure_constants(desc, args.max_length)
    _emit(args, {"algebra": repr(desc), "max_length": args.max_length, "products": lines},
          [f"# {desc!r}, length <= {args.max_length}"] + lines)
    return EXIT_PASS


def cmd_ss_solve(args) -> int:
    path = Path(args.pagefile)
    if not path.is_file():
        raise UsageError(f"no such page file: {path}")
    try:
        page = parse_page(path.read_text())
    except PageSyntaxError as exc:
        raise UsageError(f"{path}: {exc}") from None
    enabled = list(args.assume or [])
    if args.assume_split:
        enabled.append("split")
    res = ss_propagate(page, enabled=enabled)
    facts = sorted((f.kind, f.text, f.rule) for f in res.facts) if res.consistent else []
    data = {
        "consistent": res.consistent,
        "exhaustive": res.exhaustive,
        "assumptions": sorted(enabled),
        "facts": [{"kind": k, "text": t, "rule": r} for k, t, r in facts],
        "conflict": list(res.conflict or []),
    }
    if res.consistent:
        human = [f"{t}  [{r}]" for _, t, r in facts] or ["no deductions"]
        if not res.exhaustive:
            human.append("note: search budget exhausted; bounds may be loose")
    else:
        human = ["contradiction; minimal conflicting set:"] + [f"  {s}" for s in res.conflict]
    _emit(args, data, human)
    return EXIT_PASS if res.consistent else EXIT_FAIL


def cmd_classify(args) -> int:
    e = _exponent(args.p, args.q)
    if args.dim not in (1, 2):
        raise UsageError("--dim must be 1 or 2")
    desc = HeckeAlgebraDescriptor.make(args.group, args.p, e)
    exps = (args.r, args.r2) if args.group == "GL2" else (args.r,)
    mods = classify_simples(desc, args.dim, exps, args.pi_square)
    entries = [{"label": m.label, "dim": m.dim, "generators": {k: A.tolist() for k, A in m.gens.items()}}
               for m in mods]
    entries.sort(key=lambda x: json.dumps(x["generators"], sort_keys=True))
    data = {"algebra": repr(desc), "dim": args.dim, "exponents": list(exps), "modules": entries}
    human = [f"# {desc!r}: {len(entries)} simple module(s) of dimension {args.dim}, exponents {exps}"]
    for ent in entries:
        human.append(ent["label"])
        human += [f"  {k} = {v}" for k, v in ent["generators"].items()]
    code = EXIT_PASS
    if args.cross_check:
        if e != 1:
            raise UsageError("--cross-check needs q = p")
        ours = {canonical_form(m) for m in mods}
        if args.group == "GL2":
            theirs = enumerate_gl2(args.p, args.dim, exps, args.pi_square)
        else:
            theirs = enumerate_sl2(args.p, args.dim, args.r)
        agree = ours == theirs
        data["cross_check"] = agree
        human.append(f"direct enumeration agrees: {'yes' if agree else 'NO'}")
        code = EXIT_PASS if agree else EXIT_FAIL
    _emit(args, data, human)
    return code


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=5, help="residue characteristic (default 5)")
    common.add_argument("--q", type=int, default=None, help="size of the residue field (default p)")
    common.add_argument("--format", choices=["human", "structured"], default="human")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized isomorphism searches")

    parser = argparse.ArgumentParser(prog="prohecke", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="verify fixtures")
    run.add_argument("target", help="fixture id or 'all'")
    run.add_argument("--assume-split", action="store_true", help="enable the 'split' page assumption")
    run.add_argument("--timing", action="store_true", help="include wall-clock timings")
    run.add_argument("-v", "--verbose", action="store_true", help="list passing checks too")
    run.set_defaults(func=cmd_run)

    ls = sub.add_parser("list", parents=[common], help="list fixtures")
    ls.set_defaults(func=cmd_list)

    dump = sub.add_parser("dump-algebra", parents=[common], help="structure constants")
    dump.add_argument("--group", choices=["GL2", "SL2"], default="GL2")
    dump.add_argument("--max-length", type=int, required=True)
    dump.set_defaults(func=cmd_dump_algebra)

    ss = sub.add_parser("ss-solve", parents=[common], help="propagate a spectral-sequence page")
    ss.add_argument("pagefile")
    ss.add_argument("--assume", action="append", metavar="NAME", help="enable a named assumption")
    ss.add_argument("--assume-split", action="store_true", help="shorthand for --assume split")
    ss.set_defaults(func=cmd_ss_solve)

    cl = sub.add_parser("classify", parents=[common], help="classify simple modules")
    cl.add_argument("--group", choices=["GL2", "SL2"], required=True)
    cl.add_argument("--dim", type=int, required=True)
    cl.add_argument("--r", type=int, required=True, help="torus exponent on the first diagonal entry")
    cl.add_argument("--r2", type=int, default=0, help="torus exponent on the second diagonal entry (GL2)")
    cl.add_argument("--pi-square", type=int, default=1, help="scalar action of the square of Pi (GL2)")
    cl.add_argument("--cross-check", action="store_true", help="compare with direct matrix enumeration")
    cl.set_defaults(func=cmd_classify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FixtureError, SpectralError, ModuleError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
