"""qc: command-line front end for the verification engine.

Subcommands
- verify      one target at one instance
- sweep       several targets over an n range or a prime set, optionally in parallel
- conjecture  observed p-adic valuations against the conjectured thresholds
- identity    terminating summation/transformation identities, single instance or corpus

Exit codes: 0 all pass, 1 any fail, 2 any ill-posed (fail dominates), 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from .arith import save_cyclotomic_cache
from .congruence import CongruenceVerdict, Status, combine_status
from .qseries import IdentityKind, identity_corpus, pfaff_sides, phi43_T_sides, watson_sides
from .verify import TARGETS, explore_conjecture

EXIT_PASS, EXIT_FAIL, EXIT_ILL_POSED, EXIT_USAGE = 0, 1, 2, 64
RECORD_FIELDS = ("target", "instance", "modulus", "verdict", "runtime_ms", "witness_digest")

_EXIT_OF = {Status.PASS: EXIT_PASS, Status.FAIL: EXIT_FAIL, Status.ILL_POSED: EXIT_ILL_POSED}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def exit_code(statuses) -> int:
    return _EXIT_OF[combine_status(statuses)]


# --- argument helpers ------------------------------------------------------------------

def parse_range(text: str) -> range:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected A:B") from None
    return range(lo, hi + 1)


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _target_kwargs(target: str, args: argparse.Namespace) -> dict:
    _, arity, _ = TARGETS[target]
    kwargs = {}
    for name in arity.split(","):
        value = getattr(args, name, None)
        if value is None:
            raise UsageError(f"target {target} needs --{name}")
        kwargs[name] = value
    return kwargs


# --- running targets ---------------------------------------------------------------------

def run_target(target: str, kwargs: dict, seed: int = 0) -> CongruenceVerdict:
    fn, _, seeded = TARGETS[target]
    if seeded:
        kwargs = dict(kwargs, seed=seed)
    return fn(**kwargs)


def _job(target: str, kwargs: dict, seed: int):
    """Worker body: a record, or (None, reason) when the instance is outside the target's domain."""
    start = time.perf_counter()
    try:
        verdict = run_target(target, kwargs, seed)
    except ValueError as exc:
        return None, f"{target} {kwargs}: {exc}"
    elapsed = round((time.perf_counter() - start) * 1000, 3)
    return {
        "target": target,
        "instance": verdict.instance,
        "modulus": verdict.modulus,
        "verdict": verdict.status.value,
        "runtime_ms": elapsed,
        "witness_digest": verdict.witness,
    }, None


def _record_key(rec: dict):
    inst = rec["instance"]
    return rec["target"], [(k, (0, inst[k], "") if isinstance(inst[k], int) else (1, 0, str(inst[k])))
                           for k in inst]


def sweep_jobs(targets: Sequence[str], n_values: Sequence[int] | None, p_values: Sequence[int] | None,
               r_values: Sequence[int]) -> list[tuple[str, dict]]:
    jobs = []
    for target in targets:
        arity = TARGETS[target][1].split(",")
        if arity == ["n"] and n_values is not None:
            jobs.extend((target, {"n": n}) for n in n_values if n % 2)
        elif arity == ["n", "r"] and n_values is not None:
            jobs.extend((target, {"n": n, "r": r}) for n in n_values if n % 2 for r in r_values)
        elif arity == ["p"] and p_values is not None:
            jobs.extend((target, {"p": p}) for p in p_values)
        else:
            raise UsageError(f"target {target} cannot be swept over the given range")
    return jobs


def run_sweep(jobs: Sequence[tuple[str, dict]], seed: int = 0, workers: int = 1):
    """Run every job; returns (records sorted deterministically, skip reasons)."""
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_job, *zip(*[(t, kw, seed) for t, kw in jobs])))
    else:
        results = [_job(t, kw, seed) for t, kw in jobs]
    records = sorted((r for r, _ in results if r is not None), key=_record_key)
    skipped = [why for r, why in results if r is None]
    return records, skipped


# --- output ------------------------------------------------------------------------------

def _instance_text(instance: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in instance.items())


def format_records(records: Sequence[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps({k: r[k] for k in RECORD_FIELDS}, ensure_ascii=False) + "\n"
                       for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for r in records:
            writer.writerow([r["target"], _instance_text(r["instance"]), r["modulus"], r["verdict"],
                             r["runtime_ms"], r["witness_digest"]])
        return buf.getvalue()
    lines = []
    for r in records:
        lines.append(f"{r['verdict'].upper():10} {r['target']:16} {_instance_text(r['instance']):24} "
                     f"mod {r['modulus']}  ({r['runtime_ms']:.0f} ms)  {r['witness_digest'][:12]}")
    return "\n".join(lines) + ("\n" if lines else "")


def format_verdict(v: CongruenceVerdict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = [f"{pad}{v.status.value.upper()}  {v.theorem} {_instance_text(v.instance)}  mod {v.modulus}"]
    if indent == 0:
        lines.append(f"{pad}  witness {v.witness}")
    lines.extend(f"{pad}  note: {note}" for note in v.notes)
    for part in v.parts:
        lines.append(format_verdict(part, indent + 1))
    return "\n".join(lines)


# --- subcommands -------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    kwargs = _target_kwargs(args.target, args)
    try:
        verdict = run_target(args.target, kwargs, args.seed_points)
    except ValueError as exc:
        raise UsageError(f"parameter error: {exc}") from None
    if args.format == "json":
        print(json.dumps(verdict.to_dict(), ensure_ascii=False))
    else:
        print(format_verdict(verdict))
    return _EXIT_OF[verdict.status]


def cmd_sweep(args: argparse.Namespace) -> int:
    targets = [t for t in args.targets.split(",") if t]
    for t in targets:
        if t not in TARGETS:
            raise UsageError(f"unknown target {t!r}")
    if (args.n_range is None) == (args.p_set is None):
        raise UsageError("give exactly one of --n-range and --p-set")
    n_values = list(parse_range(args.n_range)) if args.n_range else None
    p_values = parse_int_list(args.p_set) if args.p_set else None
    jobs = sweep_jobs(targets, n_values, p_values, parse_int_list(args.r_set))
    if not jobs:
        raise UsageError("the range selects no instances")
    records, skipped = run_sweep(jobs, args.seed_points, max(1, args.jobs))
    for why in skipped:
        print(f"skipped: {why}", file=sys.stderr)
    if not records:
        raise UsageError("no instance in the range satisfies the target preconditions")
    sys.stdout.write(format_records(records, args.format))
    return exit_code(Status(r["verdict"]) for r in records)


def cmd_conjecture(args: argparse.Namespace) -> int:
    rows = []
    for p in parse_int_list(args.p_set):
        for r in parse_int_list(args.r_set):
            try:
                rows.append(explore_conjecture(p, r).to_dict())
            except ValueError as exc:
                rows.append({"p": p, "r": r, "skipped": str(exc)})
    if not rows:
        raise UsageError("empty p or r set")
    if args.format == "json":
        sys.stdout.write("".join(json.dumps(row) + "\n" for row in rows))
    else:
        for row in rows:
            if "skipped" in row:
                print(f"p={row['p']} r={row['r']} skipped: {row['skipped']}")
            else:
                flag = "meets" if row["meets"] else "SHORTFALL"
                print(f"p={row['p']} r={row['r']} valuation={row['valuation']} "
                      f"threshold={row['threshold']} {flag}")
    # evidence for an open statement: never a failing exit
    return EXIT_PASS


def _identity_instances(args: argparse.Namespace):
    kind = IdentityKind(args.kind)
    single = {
        IdentityKind.WATSON: ("a", "b", "c", "d", "e", "m"),
        IdentityKind.PFAFF: ("a", "b", "c", "m"),
        IdentityKind.PHI43_T: ("n", "t", "b"),
    }[kind]
    given = [name for name in single if getattr(args, name) is not None]
    if not given:
        return identity_corpus(kind, seed=args.seed_points)
    if len(given) != len(single):
        raise UsageError(f"{kind.value} needs all of " + ", ".join(f"--{x}" for x in single))
    if kind is IdentityKind.WATSON:
        return [watson_sides(args.a, args.b, args.c, args.d, args.e, args.m, q_val=args.q)]
    if kind is IdentityKind.PFAFF:
        return [pfaff_sides(args.a, args.b, args.c, args.m, q_val=args.q)]
    return [phi43_T_sides(args.n, args.t, args.b, q_val=args.q)]


def cmd_identity(args: argparse.Namespace) -> int:
    try:
        instances = _identity_instances(args)
    except ZeroDivisionError as exc:
        print(f"ILL-POSED  {args.kind}: {exc}")
        return EXIT_ILL_POSED
    except ValueError as exc:
        raise UsageError(f"parameter error: {exc}") from None
    statuses = []
    for inst in instances:
        try:
            ok = inst.holds()
            status = Status.PASS if ok else Status.FAIL
        except ZeroDivisionError:
            status = Status.ILL_POSED
        statuses.append(status)
        params = ",".join(f"{k}={v}" for k, v in inst.parameters.items())
        print(f"{status.value.upper():10} {inst.kind.value} m_or_n={inst.m_or_n} {params}")
    print(f"{sum(s is Status.PASS for s in statuses)}/{len(statuses)} hold")
    return exit_code(statuses)


# --- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qc", description="Exact verification of q-supercongruences.")
    parser.add_argument("--seed-points", type=int, default=0,
                        help="Start of the evaluation-point stream for parametric checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="Verify one target at one instance.")
    p.add_argument("target", choices=sorted(TARGETS))
    for name in ("n", "p", "r", "d", "m", "k"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--format", choices=("pretty", "json"), default="pretty")

    p = sub.add_parser("sweep", help="Verify targets over a range of instances.")
    p.add_argument("targets", help="Comma-separated target names.")
    p.add_argument("--n-range", help="Inclusive A:B; only odd n are used.")
    p.add_argument("--p-set", help="Comma-separated primes.")
    p.add_argument("--r-set", default="1,-1", help="r values for targets that take r.")
    p.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("conjecture", help="Report p-adic valuations against conjectured thresholds.")
    p.add_argument("--p-set", required=True)
    p.add_argument("--r-set", default="1")
    p.add_argument("--format", choices=("pretty", "json"), default="pretty")

    p = sub.add_parser("identity", help="Check a terminating identity (corpus if no parameters).")
    p.add_argument("kind", choices=[k.value for k in IdentityKind])
    for name in ("a", "b", "c", "d", "e", "q"):
        p.add_argument(f"--{name}", type=_rational)
    for name in ("m", "n", "t"):
        p.add_argument(f"--{name}", type=int)

    for name, sp in sub.choices.items():
        sp.add_argument("--seed-points", type=int, default=argparse.SUPPRESS,
                        help="Same as the global option.")
    return parser


_COMMANDS = {"verify": cmd_verify, "sweep": cmd_sweep, "conjecture": cmd_conjecture,
             "identity": cmd_identity}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    save_cyclotomic_cache()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
