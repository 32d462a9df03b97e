"""Command line interface.

Subcommands: check (feasibility hypotheses), run (gcd iterations),
verify (run plus the full oracle report), example (the built-in worked
instance), random (seeded fuzz loop with summary rates).

Instance files are JSON objects {"prime": p, "d": d, "psi": [[str]],
"f": str} with variables named x1..x{d+1} and T1..T{d+1}; "prime" is
optional and --prime overrides it.  All output polynomials use the
canonical grammar (grevlex term order, explicit * and ^), so JSON
output re-parses bit-exactly.

Exit codes: 0 success, 1 usage or parse error, 2 hypothesis failure,
3 verification failure, 4 Groebner budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import groebner
from .groebner import BudgetExceeded
from .ring import DEFAULT_PRIME
from .pipeline import (
    InstanceRejected,
    InstanceSpec,
    IterationError,
    builtin_example,
    check_hypotheses,
    gcd_iterations,
    minimality_and_invariants,
    optional_structural_checks,
    sample_random_instances,
    verify_main_theorem,
    verify_well_definedness,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESES = 2
EXIT_VERIFICATION = 3
EXIT_BUDGET = 4

_SECTIONS = (
    ("hypotheses", "hypothesis checks"),
    ("main", "main identities"),
    ("well_definedness", "well-definedness"),
    ("minimality", "minimality and invariants"),
    ("structural", "structural checks"),
)


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped onto exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _load_instance(path, prime):
    try:
        with open(path) as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ValueError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ValueError("%s: invalid JSON at line %d column %d: %s"
                         % (path, exc.lineno, exc.colno, exc.msg))
    if not isinstance(data, dict):
        raise ValueError("%s: instance file must hold a JSON object"
                         % path)
    inst = InstanceSpec.from_dict(data)
    if prime is not None and prime != inst.prime:
        inst = inst.with_prime(prime)
    return inst


def _dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True)


def _print_report(report, title):
    print("%s:" % title)
    for line in report.lines():
        print("  " + line)


def _print_trace(trace):
    for i, step in enumerate(trace.steps, 1):
        if step.gcd.is_zero:
            print("g%d = 0" % i)
        else:
            print("g%d = %s" % (i, step.gcd))
            print("     bidegree (%d, %d)" % step.bidegree)
    gens = [g for g in trace.generators() if not g.is_zero]
    print("candidate defining ideal: %d generators" % len(gens))


def _full_verification(inst):
    """Hypotheses first; the remaining sections only when those pass."""
    sections = {"hypotheses": check_hypotheses(inst)}
    trace = None
    if sections["hypotheses"].ok:
        trace = gcd_iterations(inst)
        sections["main"] = verify_main_theorem(inst, trace)
        sections["well_definedness"] = verify_well_definedness(inst,
                                                               trace)
        sections["minimality"] = minimality_and_invariants(trace)
        sections["structural"] = optional_structural_checks(inst)
    return trace, sections


def _sections_ok(sections):
    return all(rep.ok for rep in sections.values())


def _statuses(sections):
    """Flat check-id to status map, for cross-prime comparison."""
    out = {}
    for key, _ in _SECTIONS:
        rep = sections.get(key)
        if rep is not None:
            for c in rep.checks:
                out["%s/%s" % (key, c.check_id)] = c.status
    return out


def _section_dicts(sections):
    return {key: sections[key].to_dict()
            for key, _ in _SECTIONS if key in sections}


def cmd_check(args):
    inst = _load_instance(args.file, args.prime)
    report = check_hypotheses(inst)
    if args.json:
        print(_dumps({"command": "check", "prime": inst.prime,
                      "instance": inst.to_dict(),
                      "hypotheses": report.to_dict(),
                      "ok": report.ok}))
    else:
        _print_report(report, "hypothesis checks")
    return EXIT_OK if report.ok else EXIT_HYPOTHESES


def cmd_run(args):
    inst = _load_instance(args.file, args.prime)
    hypotheses = check_hypotheses(inst)
    if not hypotheses.ok:
        if args.json:
            print(_dumps({"command": "run", "prime": inst.prime,
                          "instance": inst.to_dict(),
                          "hypotheses": hypotheses.to_dict(),
                          "ok": False}))
        else:
            _print_report(hypotheses, "hypothesis checks")
        return EXIT_HYPOTHESES
    trace = gcd_iterations(inst)
    if args.json:
        print(_dumps({"command": "run", "prime": inst.prime,
                      "instance": inst.to_dict(),
                      "hypotheses": hypotheses.to_dict(),
                      "iterations": trace.to_dict(),
                      "ok": True}))
    else:
        _print_trace(trace)
    return EXIT_OK


def cmd_verify(args):
    inst = _load_instance(args.file, args.prime)
    trace, sections = _full_verification(inst)
    ok = _sections_ok(sections)
    if not sections["hypotheses"].ok:
        code = EXIT_HYPOTHESES
    elif not ok:
        code = EXIT_VERIFICATION
    else:
        code = EXIT_OK

    doc = {"command": "verify", "prime": inst.prime,
           "instance": inst.to_dict()}
    doc.update(_section_dicts(sections))
    if trace is not None:
        doc["iterations"] = trace.to_dict()

    consistent = None
    if args.second_prime is not None and code != EXIT_HYPOTHESES:
        other = inst.with_prime(args.second_prime)
        _, second = _full_verification(other)
        consistent = _statuses(sections) == _statuses(second)
        doc["second_prime"] = {"prime": args.second_prime,
                               "ok": _sections_ok(second),
                               "consistent": consistent}
        if not consistent and code == EXIT_OK:
            code = EXIT_VERIFICATION

    doc["ok"] = ok and consistent is not False
    doc["exit"] = code
    if args.json:
        print(_dumps(doc))
    else:
        if trace is not None:
            _print_trace(trace)
        for key, title in _SECTIONS:
            if key in sections:
                _print_report(sections[key], title)
        if consistent is not None:
            print("second prime %d: %s" % (
                args.second_prime,
                "consistent" if consistent else "INCONSISTENT"))
        print("verdict: %s" % ("pass" if doc["ok"] else "fail"))
    return code


def cmd_example(args):
    inst = builtin_example(args.prime if args.prime else DEFAULT_PRIME)
    trace = gcd_iterations(inst)
    minimality = minimality_and_invariants(trace)
    generators = minimality.find("generator-minimality").data
    relation = minimality.find("relation-type").data
    if args.json:
        print(_dumps({"command": "example", "prime": inst.prime,
                      "instance": inst.to_dict(),
                      "iterations": trace.to_dict(),
                      "minimality": minimality.to_dict(),
                      "ok": minimality.ok}))
    else:
        for i, step in enumerate(trace.steps, 1):
            print("g%d = %s" % (i, step.gcd))
        if minimality.ok:
            print("%d minimal generators, relation type %d"
                  % (generators["generators"],
                     relation["relation_type"]))
        else:
            _print_report(minimality, "minimality and invariants")
    return EXIT_OK if minimality.ok else EXIT_VERIFICATION


def cmd_random(args):
    prime = args.prime if args.prime else DEFAULT_PRIME
    pairs = sample_random_instances(args.d, args.m, args.count,
                                    prime, args.seed)
    results = []
    all_ok = True
    candidates = 0
    for k, (inst, attempts) in enumerate(pairs):
        candidates += attempts
        trace, sections = _full_verification(inst)
        ok = _sections_ok(sections)
        entry = {"seed": args.seed + k, "candidates": attempts,
                 "instance": inst.to_dict(),
                 "ok": ok}
        entry.update(_section_dicts(sections))
        if trace is not None:
            entry["gcds"] = [str(g) for g in trace.gcds]
        if args.second_prime is not None:
            other = inst.with_prime(args.second_prime)
            _, second = _full_verification(other)
            consistent = _statuses(sections) == _statuses(second)
            entry["second_prime"] = {"prime": args.second_prime,
                                     "consistent": consistent}
            ok = ok and consistent
            entry["ok"] = ok
        all_ok = all_ok and ok
        results.append(entry)
        if not args.json:
            print("instance %d (seed %d): %s after %d candidate(s)"
                  % (k + 1, args.seed + k,
                     "pass" if ok else "FAIL", attempts))
    accept_rate = len(pairs) / candidates if candidates else 0.0
    pass_rate = (sum(1 for r in results if r["ok"]) / len(results)
                 if results else 0.0)
    if args.json:
        print(_dumps({"command": "random", "prime": prime,
                      "d": args.d, "m": args.m, "seed": args.seed,
                      "instances": results,
                      "accept_rate": accept_rate,
                      "all_pass_rate": pass_rate,
                      "ok": all_ok}))
    else:
        print("accept rate: %d/%d = %.3f"
              % (len(pairs), candidates, accept_rate))
        print("all-pass rate: %.3f" % pass_rate)
    return EXIT_OK if all_ok else EXIT_VERIFICATION


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--prime", type=int, default=None,
                        help="coefficient field prime "
                             "(default: instance file, then %d)"
                             % DEFAULT_PRIME)
    common.add_argument("--json", action="store_true",
                        help="machine-readable output")
    common.add_argument("--max-gb-size", dest="max_gb_size", type=int,
                        default=None, metavar="N",
                        help="abort any Groebner run growing past N "
                             "basis elements")

    parser = _Parser(prog="reesgcd",
                     description="gcd iterations for defining ideals "
                                 "of Rees algebras over hypersurface "
                                 "rings, with Groebner certification")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("check", parents=[common],
                       help="feasibility hypotheses for an instance "
                            "file")
    p.add_argument("file", help="instance JSON file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run", parents=[common],
                       help="gcd iterations on an instance file")
    p.add_argument("file", help="instance JSON file")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", parents=[common],
                       help="iterations plus the full oracle report")
    p.add_argument("file", help="instance JSON file")
    p.add_argument("--second-prime", type=int, default=None,
                   metavar="Q",
                   help="repeat modulo Q and require consistent "
                        "verdicts")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example", parents=[common],
                       help="run the built-in worked instance")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("random", parents=[common],
                       help="seeded random instances with full "
                            "verification")
    p.add_argument("count", nargs="?", type=int, default=1,
                   help="number of instances (default 1)")
    p.add_argument("-d", type=int, default=4,
                   help="matrix size parameter, even, at least 4")
    p.add_argument("-m", type=int, default=1,
                   help="degree of the hypersurface equation")
    p.add_argument("--seed", type=int, default=0,
                   help="base seed; instance k uses seed+k")
    p.add_argument("--second-prime", type=int, default=None,
                   metavar="Q",
                   help="repeat each instance modulo Q and require "
                        "consistent verdicts")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_gb_size is not None:
        if args.max_gb_size < 1:
            parser.error("--max-gb-size must be positive")
        groebner.DEFAULT_MAX_BASIS = args.max_gb_size
    try:
        return args.func(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except InstanceRejected as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_HYPOTHESES
    except IterationError as exc:
        print("iteration failure: %s" % exc, file=sys.stderr)
        return EXIT_VERIFICATION
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
