"""Command-line driver.

Exit codes: 0 success or VALID, 1 INVALID (or verifier disagreement under
``--cross-check``), 2 usage or input error, 3 enumeration cap or budget
exceeded.  Instances are read from ``--in FILE`` or standard input.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path
from typing import Sequence, TextIO

from .approx import algorithm_a
from .errors import BudgetExceeded, CapExceeded, EmptyResult, FormatError, TrackpathError
from .exact import count_min_tracking_sets, min_tracking_set
from .graph import Instance, biconnected_components, face_count
from .hardness import CnfLayout, canonical_tracking_set, format_labels, parse_dimacs, parse_layout, reduce_sat
from .instancegen import gen_random_planar, gen_tight_alg, gen_tight_opt
from .io import format_instance, format_trackers, parse_instance, parse_trackers, to_dot
from .reduce import reduce_fully
from .verify import find_violation, verify_by_cycles, verify_by_definition

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise _Usage(f"cannot write {path}: {e.strerror}") from None


def _instance(args) -> Instance:
    return parse_instance(_read(args.input))


def stats_lines(inst: Instance) -> list[str]:
    g = inst.graph
    blocks, _ = biconnected_components(g)
    connected = g.is_connected()
    faces = str(face_count(g)) if connected else "?"
    hist = Counter(g.degree(v) for v in range(g.n))
    out = [
        f"n={g.n} m={g.m} F={faces} blocks={len(blocks)}",
        "degrees " + " ".join(f"{d}:{hist[d]}" for d in sorted(hist)),
    ]
    if connected:
        out.append("note F=m-n+2 counts faces only if the graph is planar")
    else:
        out.append("note graph is disconnected, F undefined")
    return out


def _cmd_stats(args, out: TextIO) -> int:
    out.write("\n".join(stats_lines(_instance(args))) + "\n")
    return EXIT_OK


def _cmd_reduce(args, out: TextIO) -> int:
    inst = _instance(args)
    small, trace = reduce_fully(inst)
    out.write(format_instance(small))
    if args.trace:
        _write(args.trace, "\n".join(trace.lines()) + "\n")
    if args.dot:
        _write(args.dot, to_dot(small))
    return EXIT_OK


def _cmd_approx(args, out: TextIO) -> int:
    inst = _instance(args)
    cert = algorithm_a(inst)
    out.write(f"ALG {cert.alg_size} FACES {cert.faces} LB {cert.opt_lower}\n")
    out.write(format_trackers(cert.trackers))
    if args.dot:
        _write(args.dot, to_dot(inst, cert.trackers))
    return EXIT_OK


def _cmd_exact(args, out: TextIO) -> int:
    inst = _instance(args)
    if args.jobs < 1:
        raise _Usage("--jobs must be positive")
    if args.count:
        opt, count = count_min_tracking_sets(inst)
        out.write(f"OPT {opt} COUNT {count}\n")
        return EXIT_OK
    found = min_tracking_set(inst, budget=args.budget, reduce=not args.no_reduce, jobs=args.jobs)
    out.write(f"OPT {len(found)}\n")
    out.write(format_trackers(found))
    if args.dot:
        _write(args.dot, to_dot(inst, found))
    return EXIT_OK


def _cmd_verify(args, out: TextIO) -> int:
    inst = _instance(args)
    trackers = parse_trackers(_read(args.trackers), inst.n)
    violation = None
    if args.cross_check:
        by_def = verify_by_definition(inst, trackers)
        by_cycles = verify_by_cycles(inst, trackers)
        violation = find_violation(inst, trackers)
        by_witness = violation is None
        if not by_def == by_cycles == by_witness:
            out.write(f"DISAGREE def={by_def} cycles={by_cycles} witness={by_witness}\n")
            return EXIT_INVALID
        ok = by_def
    elif args.method == "def":
        ok = verify_by_definition(inst, trackers)
    elif args.method == "cycles":
        ok = verify_by_cycles(inst, trackers)
    else:
        violation = find_violation(inst, trackers)
        ok = violation is None
    if ok:
        out.write("VALID\n")
    else:
        if violation is None:
            violation = find_violation(inst, trackers)
        out.write("INVALID\n")
        if violation is not None:
            out.write(violation.report() + "\n")
    if args.dot:
        _write(args.dot, to_dot(inst, trackers))
    return EXIT_OK if ok else EXIT_INVALID


def _cmd_gen(args, out: TextIO) -> int:
    if args.family == "tight-opt":
        inst = gen_tight_opt(args.k)
    elif args.family == "tight-alg":
        inst = gen_tight_alg(args.k)
    else:
        inst = gen_random_planar(args.n, args.seed)
    out.write(format_instance(inst))
    if args.dot:
        _write(args.dot, to_dot(inst))
    return EXIT_OK


def _parse_assignment(text: str, num_vars: int) -> dict[int, bool]:
    try:
        lits = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise _Usage("--assign takes signed variable numbers, e.g. '1,-2,3'") from None
    values = {abs(x): x > 0 for x in lits if x != 0}
    if sorted(values) != list(range(1, num_vars + 1)) or len(values) != len(lits):
        raise _Usage(f"--assign must set each of the {num_vars} variables exactly once")
    return values


def _cmd_sat(args, out: TextIO) -> int:
    formula = parse_dimacs(_read(args.input))
    layout = parse_layout(_read(args.layout), formula) if args.layout else CnfLayout.simple(formula)
    red = reduce_sat(formula, layout)
    out.write(format_instance(red.instance, [f"T {red.target}"]))
    if args.labels:
        _write(args.labels, format_labels(red))
    trackers = None
    if args.assign is not None:
        values = _parse_assignment(args.assign, formula.num_vars)
        trackers = canonical_tracking_set(red, values)
        if args.trackers_out:
            _write(args.trackers_out, format_trackers(trackers))
    elif args.trackers_out:
        raise _Usage("--trackers-out needs --assign")
    if args.dot:
        names = {v: k for k, v in red.names().items()}
        _write(args.dot, to_dot(red.instance, trackers or (), names))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trackpath", description="Tracking paths toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, help_text, func, aliases=(), reads="instance"):
        c = sub.add_parser(name, help=help_text, aliases=list(aliases))
        if reads:
            c.add_argument("--in", dest="input", metavar="FILE", help=f"{reads} file (default: stdin)")
        c.add_argument("--dot", metavar="FILE", help="also write annotated DOT")
        c.set_defaults(func=func)
        return c

    c = command("reduce", "apply reductions 1-4", _cmd_reduce)
    c.add_argument("--trace", metavar="FILE", help="write the reduction trace sidecar")

    command("approx", "Algorithm A with its face certificate", _cmd_approx)

    c = command("exact", "exhaustive minimum tracking set", _cmd_exact)
    c.add_argument("--budget", type=int, metavar="K", help="give up beyond K trackers (exit 3)")
    c.add_argument("--count", action="store_true", help="count minimum tracking sets")
    c.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")
    c.add_argument("--no-reduce", action="store_true", help="search the instance as given")

    c = command("verify", "check a tracker set", _cmd_verify)
    c.add_argument("--trackers", required=True, metavar="FILE")
    c.add_argument("--method", choices=("def", "cycles", "witness"), default="cycles")
    c.add_argument("--cross-check", action="store_true", help="run all three verifiers")

    c = command("gen", "generate an instance", _cmd_gen, reads=None)
    c.add_argument("family", choices=("tight-opt", "tight-alg", "random"))
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--n", type=int, default=8)
    c.add_argument("--seed", type=int)

    c = command("sat", "compile a 3-CNF formula", _cmd_sat, aliases=("compile-sat",), reads="DIMACS")
    c.add_argument("--layout", metavar="FILE", help="layout sidecar (default: all clauses above)")
    c.add_argument("--labels", metavar="FILE", help="write the labels sidecar")
    c.add_argument("--assign", metavar="LITS", help="assignment such as '1,-2,3'")
    c.add_argument("--trackers-out", metavar="FILE", help="write the assignment's canonical trackers")

    command("stats", "size, face count, degrees and blocks", _cmd_stats)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if args.command == "gen" and args.family == "random" and args.seed is None:
        err.write("trackpath: gen random needs --seed\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (CapExceeded, BudgetExceeded) as e:
        err.write(f"trackpath: {e}\n")
        return EXIT_CAP
    except FormatError as e:
        err.write(f"trackpath: malformed input: {e}\n")
        return EXIT_USAGE
    except EmptyResult as e:
        err.write(f"trackpath: {e}\n")
        return EXIT_USAGE
    except (_Usage, TrackpathError) as e:
        err.write(f"trackpath: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
