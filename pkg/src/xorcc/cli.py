"""Command-line front end.

Exit status: 0 on success, 1 when a checked statement or verification
fails, 2 when the command is used incorrectly or an input is malformed.
"""

import argparse
import logging
import sys
from typing import List, Optional

from . import io
from ._errors import PreconditionError, UsageError, VerificationError, set_dimension_cap
from .boolfn import make_fk, unbalanced_subspace, walsh_spectrum
from .codes import (
    direct_sum,
    fk_protocol_from_code,
    greedy_covering,
    hamming_code,
    reed_muller_1_5,
    repetition_code,
    rm15_radius_sweep,
    verify_covering,
)
from .cube import (
    VertexSet,
    boundary,
    gamma_prime_segment_monotonicity_checks,
    hales_order,
    harper_check,
    initial_segment,
    isoperim_final_check,
)
from .experiments import render_report, run_equality_suite, run_separation_suite
from .gf2 import from_bitstring, to_bitstring
from .nadt import dtp_exact, nadt_complexity, synthesize_nadt, verify_nadt
from .owcc import OneWayProtocol, optimal_message_map, owcc_bounds, owcc_exact, synthesize_oneway, verify_oneway
from .shifts import max_subspace_in, preserving_shifts
from .sumset import run_algorithm1, sumset_bound_check

log = logging.getLogger("xorcc")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, help="dimension")
    p.add_argument("--k", type=int, help="f_k parameter")
    p.add_argument("--input", metavar="PATH", help="input file")
    p.add_argument("--output", metavar="PATH", help="write the result here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap-override", type=int, metavar="N", help="raise the dimension cap")
    p.add_argument("--fk", action="store_true", help="use f_k with --n and --k as the input function")
    p.add_argument("--table", help="input function as a string of 0, 1 and * (undefined)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="xorcc", description="Complexity of partial XOR functions.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    add("nadt", "non-adaptive parity decision tree complexity")
    add("dtp", "adaptive parity decision tree depth (n <= 6)")
    p = add("owcc", "one-way communication complexity")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--bounds", action="store_true")
    add("shifts", "f-preserving shifts and a maximum subspace inside them")

    p = add("protocol", "synthesize or verify protocols")
    p.add_argument("action", choices=["synth", "verify"])
    p.add_argument("--model", choices=["nadt", "oneway"], required=True)
    p.add_argument("--protocol", metavar="PATH", help="protocol file to verify")
    p.add_argument("--code", metavar="PATH", help="covering code for an f_k one-way protocol")

    p = add("code", "covering codes")
    p.add_argument("action", choices=["build", "verify", "sum"])
    p.add_argument("--family", choices=["hamming", "rm15", "repetition", "greedy", "file"])
    p.add_argument("--m", type=int, help="Hamming parameter")
    p.add_argument("--R", type=int, help="radius for greedy codes")
    p.add_argument("--other", metavar="PATH", help="second code file for 'sum'")
    p.add_argument("--sweep", action="store_true", help="exhaustive radius sweep for rm15")

    p = add("iso", "hypercube isoperimetry checks")
    p.add_argument("action", choices=["harper", "segment", "boundary", "lemma-checks"])
    p.add_argument("--m", type=int, help="cube dimension (harper: 4, lemma-checks: 14)")
    p.add_argument("--a", type=int, help="segment length")

    p = add("sumset", "sumsets and the compression procedure")
    p.add_argument("action", choices=["run", "bound-check"])
    p.add_argument("--A", help="comma-separated binary strings")
    p.add_argument("--B", help="comma-separated binary strings")

    p = add("fourier", "Walsh spectrum of a total function")
    p.add_argument("--unbalanced", action="store_true", help="print a hyperplane where h is unbalanced")

    p = add("suite", "theorem suites")
    p.add_argument("which", choices=["equality", "separation"])
    p.add_argument("--ns", default="4,5,6,7", help="dimensions for sampled legs")
    return parser


def _emit(args, text: str) -> None:
    if args.output:
        io.write_text(args.output, text)
    else:
        sys.stdout.write(text)


def _function(args):
    if args.fk:
        if args.n is None or args.k is None:
            raise UsageError("--fk needs --n and --k")
        return make_fk(args.n, args.k)
    if args.table:
        return io.parse_table(args.table)
    if args.input:
        return io.load_function(io.read_text(args.input), args.input)
    raise UsageError("no input function: give --input, --table or --fk")


def _cmd_nadt(args):
    _emit(args, f"{nadt_complexity(_function(args))}\n")
    return EXIT_OK


def _cmd_dtp(args):
    _emit(args, f"{dtp_exact(_function(args))}\n")
    return EXIT_OK


def _cmd_owcc(args):
    f = _function(args)
    if args.bounds:
        lower, upper = owcc_bounds(f)
        _emit(args, f"{lower} {upper}\n")
    else:
        _emit(args, f"{owcc_exact(f)}\n")
    return EXIT_OK


def _cmd_shifts(args):
    f = _function(args)
    d = preserving_shifts(f)
    subspace = max_subspace_in(d)
    lines = [f"size {len(d)}", f"max_subspace_dim {subspace.dim}", f"nadt {f.n - subspace.dim}"]
    lines.extend(f"basis {to_bitstring(b, f.n)}" for b in subspace.basis)
    if len(d) <= 4096:
        lines.extend(f"shift {to_bitstring(x, f.n)}" for x in d.members())
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_protocol(args):
    f = _function(args)
    if args.action == "synth":
        if args.model == "nadt":
            _emit(args, io.dump_nadt_protocol(synthesize_nadt(f)))
            return EXIT_OK
        if args.code:
            if not args.fk:
                raise UsageError("--code builds f_k protocols; give --fk --n --k")
            code = io.load_code(io.read_text(args.code), args.code)
            protocol = fk_protocol_from_code(f.n, args.k, code)
            if not isinstance(protocol, OneWayProtocol):
                raise UsageError("n too large for a tabulated protocol file")
        else:
            protocol = synthesize_oneway(f, optimal_message_map(f))
        _emit(args, io.dump_oneway_protocol(protocol))
        return EXIT_OK
    if not args.protocol:
        raise UsageError("verify needs --protocol PATH")
    text = io.read_text(args.protocol)
    if args.model == "nadt":
        ok = verify_nadt(f, io.load_nadt_protocol(text, args.protocol))
    else:
        ok = verify_oneway(f, io.load_oneway_protocol(text, args.protocol))
    _emit(args, "valid\n" if ok else "invalid\n")
    return EXIT_OK if ok else EXIT_FAILED


def _family_code(args):
    if args.family == "hamming":
        if args.m is None:
            raise UsageError("--family hamming needs --m")
        return hamming_code(args.m)
    if args.family == "rm15":
        return reed_muller_1_5()
    if args.family == "repetition":
        if args.n is None:
            raise UsageError("--family repetition needs --n")
        return repetition_code(args.n)
    if args.family == "greedy":
        if args.n is None or args.R is None:
            raise UsageError("--family greedy needs --n and --R")
        return greedy_covering(args.n, args.R, None if args.seed == 0 else args.seed)
    if args.input:
        return io.load_code(io.read_text(args.input), args.input)
    raise UsageError("give --family or --input")


def _cmd_code(args):
    if args.action == "build":
        _emit(args, io.dump_code(_family_code(args)))
        return EXIT_OK
    if args.action == "sum":
        if not args.other:
            raise UsageError("sum needs --other PATH")
        first = _family_code(args)
        second = io.load_code(io.read_text(args.other), args.other)
        _emit(args, io.dump_code(direct_sum(first, second)))
        return EXIT_OK
    code = _family_code(args)
    if args.sweep:
        if code.n != 32 or args.family != "rm15":
            raise UsageError("--sweep applies to --family rm15")
        radius, g = rm15_radius_sweep()
        ok = radius <= code.radius
        _emit(args, f"mode\tsweep\nradius\t{radius}\nclaimed\t{code.radius}\nwitness\t{g:08x}\nok\t{int(ok)}\n")
        return EXIT_OK if ok else EXIT_FAILED
    sampled = args.samples is not None or code.n > 24
    report = verify_covering(code, "sampled" if sampled else "exhaustive", args.samples or 10**6, args.seed)
    lines = [
        f"mode\t{report.mode}",
        f"params\t{code.n} {code.size} {code.radius}",
        f"max_distance\t{report.max_distance}",
        f"ok\t{int(report.ok)}",
    ]
    if report.mode == "exhaustive":
        lines.append(f"perfect\t{int(report.perfect)}")
    else:
        lines.append(f"samples\t{report.samples}\nseed\t{report.seed}")
    if report.witness is not None:
        lines.append(f"witness\t{to_bitstring(report.witness, code.n)}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_FAILED


def _iso_rows(reports) -> str:
    lines = ["check\tchecked\tviolations\tverdict\tdetail"]
    for r in reports:
        verdict = "skipped" if r.skipped else ("pass" if r.ok else "fail")
        detail = r.skipped or ";".join(f"{k}={v}" for k, v in sorted(r.details.items()))
        lines.append(f"{r.name}\t{r.checked}\t{len(r.violations)}\t{verdict}\t{detail}")
    return "\n".join(lines) + "\n"


def _cmd_iso(args):
    if args.action == "harper":
        report = harper_check(4 if args.m is None else args.m)
        _emit(args, _iso_rows([report]))
        return EXIT_OK if report.ok else EXIT_FAILED
    if args.action in ("segment", "boundary"):
        if args.m is None or args.a is None:
            raise UsageError(f"{args.action} needs --m and --a")
        segment = initial_segment(args.m, args.a)
        if args.action == "segment":
            order = hales_order(args.m)[: args.a]
            _emit(args, "".join(to_bitstring(x, args.m) + "\n" for x in order))
        else:
            gamma, outer = boundary(segment)
            _emit(args, f"gamma\t{len(gamma)}\nouter\t{len(outer)}\n")
        return EXIT_OK
    reports = [gamma_prime_segment_monotonicity_checks(14 if args.m is None else args.m)]
    reports.extend(isoperim_final_check(m, 4) for m in range(1, 5))
    _emit(args, _iso_rows(reports))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def _vertex_set(text: Optional[str], name: str) -> VertexSet:
    if not text:
        raise UsageError(f"give --{name} as comma-separated binary strings")
    words = [w.strip() for w in text.split(",") if w.strip()]
    m = len(words[0])
    if any(len(w) != m for w in words):
        raise UsageError(f"--{name}: strings of unequal length")
    return VertexSet.from_points(m, (from_bitstring(w) for w in words))


def _cmd_sumset(args):
    a, b = _vertex_set(args.A, "A"), _vertex_set(args.B, "B")
    if args.action == "run":
        trace = run_algorithm1(a, b)
        _emit(args, trace.dump() + "\n")
        return EXIT_OK
    report = sumset_bound_check(a, b)
    if report.skipped:
        _emit(args, f"skipped\t{report.skipped}\n")
        return EXIT_OK
    _emit(args, f"size_a\t{report.size_a}\nsize_b\t{report.size_b}\nsize_sum\t{report.size_sum}\n"
                f"bound\t{report.bound}\nok\t{int(report.ok)}\n")
    return EXIT_OK if report.ok else EXIT_FAILED


def _cmd_fourier(args):
    f = _function(args)
    if not f.is_total():
        raise UsageError("the Walsh spectrum needs a total function")
    if args.unbalanced:
        subspace = unbalanced_subspace(f)
        _emit(args, "".join(f"basis {to_bitstring(b, f.n)}\n" for b in subspace.basis))
        return EXIT_OK
    spectrum = walsh_spectrum(f.value, f.n)
    lines = [f"{to_bitstring(s, f.n)}\t{spectrum.coefficient(s)}" for s in range(1 << f.n)]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_suite(args):
    if args.which == "equality":
        ns = [int(v) for v in args.ns.split(",") if v.strip()]
        rows = run_equality_suite(ns, args.samples or 1000, args.seed, max(1, args.jobs))
    else:
        rows = run_separation_suite(args.samples or 10**6, args.seed)
    _emit(args, render_report(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAILED


COMMANDS = {
    "nadt": _cmd_nadt,
    "dtp": _cmd_dtp,
    "owcc": _cmd_owcc,
    "shifts": _cmd_shifts,
    "protocol": _cmd_protocol,
    "code": _cmd_code,
    "iso": _cmd_iso,
    "sumset": _cmd_sumset,
    "fourier": _cmd_fourier,
    "suite": _cmd_suite,
}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.cap_override is not None:
            set_dimension_cap(args.cap_override)
        return COMMANDS[args.command](args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_FAILED
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
