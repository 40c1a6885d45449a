"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

import numpy as np

from . import __version__
from .claims import reproduce_claims
from .discern import DEFAULT_BUDGET, default_pool, discern_pair, verify_iff
from .errors import QuarticleError
from .observables import SingleParticleObservable, diagonal_observable
from .parser import evaluate, parse_state
from .probability import NON_REAL_FLAG, Atom, Query, conditional_value, transpose_query
from .report import FORMATS, ReportDocument, emit_report
from .suites import fr_butterfield_suite, general_query_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONVENTIONS = """\
conventions:
  basis labels inside kets are 0-based:  |0,1,2> = phi_1 phi_2 phi_3
  slot (particle) indices are 1-based:   S(2,3), A(1,2), --pair 1,2, Q1=0
  angles are radians:                    exp(i 1.0472)
  S/A apply right to left:               S(2,3)A(1,2)|0,1,2> antisymmetrizes first
  observable Q is diag(0, 1, ..., d-1):  eigenvalue k belongs to basis label k
"""

_ATOM = re.compile(r"\s*([A-Za-z][A-Za-z]*)_?(\d+)\s*=\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*")


class UsageError(Exception):
    pass


def _pair(text):
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j, got {text!r}") from None
    return i, j


def _observables(defs, d):
    table = {"Q": diagonal_observable(d)}
    for item in defs or ():
        name, _, payload = item.partition("=")
        try:
            rows = json.loads(payload)
            mat = np.array([[complex(x) if isinstance(x, str) else x for x in row] for row in rows],
                           dtype=complex)
        except (ValueError, TypeError) as exc:
            raise UsageError(f"cannot read matrix for {name!r}: {exc}") from None
        table[name.strip()] = SingleParticleObservable(mat, name=name.strip())
    return table


def parse_atoms(spec, observables):
    """``"Q1=0 & R2=1.5"`` (``&`` or ``,`` separated) into a list of atoms."""
    atoms = []
    for chunk in re.split(r"[&,]", spec or ""):
        if not chunk.strip():
            continue
        m = _ATOM.fullmatch(chunk)
        if m is None:
            raise UsageError(f"cannot parse atom {chunk.strip()!r}; expected NAME<slot>=<eigenvalue>")
        name, slot, value = m.groups()
        if name not in observables:
            raise UsageError(f"unknown observable {name!r} (known: {', '.join(sorted(observables))})")
        atoms.append(Atom(observables[name], int(slot), float(value)))
    return atoms


def _load_state(args):
    return evaluate(parse_state(args.expr), d=args.d)


def cmd_state_eval(args):
    k = _load_state(args)
    doc = ReportDocument("state eval", inputs={"expr": args.expr, "d": k.dim, "n": k.slots},
                         details={"state": k, "norm": k.norm()})
    return doc, EXIT_OK


def _q_table(k, i, j):
    q = diagonal_observable(k.dim)
    rows = []
    for value in q.eigenvalues():
        a = conditional_value(k, Query((Atom(q, i, value),))).real
        b = conditional_value(k, Query((Atom(q, j, value),))).real
        rows.append({"slot": i, "eigenvalue": value, "value_ij": a, "value_ji": b, "abs_diff": abs(a - b)})
    return {"name": "Q single atoms", "pair": [i, j], "rows": rows, "tolerance": 1e-10}


def cmd_prob(args):
    k = _load_state(args)
    obs = _observables(args.define, k.dim)
    conclusion = parse_atoms(args.atoms, obs)
    condition = parse_atoms(args.given, obs)
    if not conclusion:
        raise UsageError("--atoms needs at least one atom")
    q = Query(tuple(conclusion), tuple(condition))
    value = conditional_value(k, q)
    details = {"query": str(q), "value": value, "real": abs(value.imag) <= NON_REAL_FLAG,
               "kind": "conditional" if condition else "joint"}
    if args.pair:
        i, j = args.pair
        t = transpose_query(q, i, j)
        details.update(transposed_query=str(t), transposed_value=conditional_value(k, t))
    doc = ReportDocument("prob", inputs={"expr": args.expr, "atoms": args.atoms, "given": args.given or "",
                                         "d": k.dim, "n": k.slots}, details=details)
    return doc, EXIT_OK


def cmd_discern(args):
    k = _load_state(args)
    i, j = args.pair
    v = discern_pair(k, i, j, pool=default_pool(k.dim, args.seed), budget=args.budget, seed=args.seed)
    doc = ReportDocument("discern", inputs={"expr": args.expr, "pair": [i, j], "budget": args.budget,
                                            "seed": args.seed, "d": k.dim, "n": k.slots},
                         verdicts=[v], tables=[_q_table(k, i, j)])
    return doc, EXIT_OK


def cmd_verify_fr(args):
    fr = fr_butterfield_suite(args.n, args.d, args.trials, args.seed)
    # the general suite needs a spectator slot
    general = general_query_suite(args.n, args.d, args.trials, 10, args.seed) if args.n >= 3 else None
    failed = fr["failed"] + (general["failed"] if general else 0)
    tallies = dict(fr["tallies"], max_abs_diff=fr["max_abs_diff"], failures=failed)
    details = {"general_queries": general} if general else {}
    doc = ReportDocument("verify fr-butterfield",
                         inputs={"n": args.n, "d": args.d, "trials": args.trials, "seed": args.seed},
                         tallies=tallies, details=details, status="pass" if failed == 0 else "fail")
    return doc, EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_verify_iff(args):
    report = verify_iff(args.d, args.n, args.trials, args.seed, args.budget)
    tallies = dict(report.counts, violations=len(report.violations))
    doc = ReportDocument("verify iff",
                         inputs={"n": args.n, "d": args.d, "trials": args.trials, "seed": args.seed,
                                 "budget": args.budget},
                         tallies=tallies, details={"violations": report.violations},
                         status="pass" if report.ok else "fail")
    return doc, EXIT_OK if report.ok else EXIT_FAIL


def cmd_reproduce_claims(args):
    claims, tables = reproduce_claims(args.m, budget=args.budget, seed=args.seed)
    checks = claims.pop("checks")
    verdicts = []
    for key in ("claim_i", "claim_ii_psi_s", "claim_ii_psi_a", "claim_iii"):
        verdicts.extend({"state": key, **v} for v in _verdicts_json(claims[key].pop("verdicts")))
    ok = all(checks.values())
    tallies = {k: v for k, v in checks.items()}
    tallies["closed_forms_psi_d"] = "MATCH" if claims["claim_iii"]["closed_forms_match"] else "DIFFER"
    doc = ReportDocument("reproduce claims", inputs={"m": args.m, "budget": args.budget, "seed": args.seed},
                         verdicts=verdicts, tables=tables, tallies=tallies, details=claims,
                         status="pass" if ok else "fail")
    return doc, EXIT_OK if ok else EXIT_FAIL


def _verdicts_json(verdicts):
    from .report import verdict_json

    return [verdict_json(v) for v in verdicts]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="report format (default: text)")
    common.add_argument("--output", "-o", help="write the report to this file instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")

    state_args = argparse.ArgumentParser(add_help=False)
    state_args.add_argument("expr", help="state expression, e.g. 'S(2,3)A(1,2)|0,1,2>'")
    state_args.add_argument("--d", type=int, default=None,
                            help="single-particle dimension (default: largest label + 1, at least 2)")

    parser = argparse.ArgumentParser(
        prog="quarticle", description="Discernibility of identical particles in permutation-structured states.",
        epilog=CONVENTIONS, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.RawDescriptionHelpFormatter

    state = sub.add_parser("state", help="state utilities", epilog=CONVENTIONS, formatter_class=fmt)
    state_sub = state.add_subparsers(dest="action", required=True)
    ev = state_sub.add_parser("eval", parents=[common, state_args], help="print normalized amplitudes",
                              epilog=CONVENTIONS, formatter_class=fmt)
    ev.set_defaults(func=cmd_state_eval)

    prob = sub.add_parser("prob", parents=[common, state_args], help="joint or conditional values",
                          epilog=CONVENTIONS, formatter_class=fmt)
    prob.add_argument("--atoms", required=True, help="conclusion atoms, e.g. 'Q1=0 & Q2=1'")
    prob.add_argument("--given", default=None, help="condition atoms, same syntax")
    prob.add_argument("--pair", type=_pair, default=None, help="also evaluate the i<->j transposed query")
    prob.add_argument("--define", action="append", metavar="NAME=JSON",
                      help="extra observable as a JSON d x d matrix; entries may be strings like '1+2j'")
    prob.set_defaults(func=cmd_prob)

    dis = sub.add_parser("discern", parents=[common, state_args], help="verdict and witness for a pair",
                         epilog=CONVENTIONS, formatter_class=fmt)
    dis.add_argument("--pair", type=_pair, required=True)
    dis.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    dis.add_argument("--seed", type=int, default=0)
    dis.set_defaults(func=cmd_discern)

    verify = sub.add_parser("verify", help="randomized theorem suites")
    vsub = verify.add_subparsers(dest="suite", required=True)
    fr = vsub.add_parser("fr-butterfield", parents=[common], help="pairwise equalities for exchange eigenstates")
    iff = vsub.add_parser("iff", parents=[common], help="indiscernible iff P_ij psi = +-psi")
    for p, defaults in ((fr, (3, 3, 50)), (iff, (2, 2, 200))):
        p.add_argument("--n", type=int, default=defaults[0])
        p.add_argument("--d", type=int, default=defaults[1])
        p.add_argument("--trials", type=int, default=defaults[2])
        p.add_argument("--seed", type=int, default=0)
    iff.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    fr.set_defaults(func=cmd_verify_fr)
    iff.set_defaults(func=cmd_verify_iff)

    rep = sub.add_parser("reproduce", help="reproduce the three discernibility claims")
    rsub = rep.add_subparsers(dest="what", required=True)
    cl = rsub.add_parser("claims", parents=[common], help="claims (i)-(iii) for m particles")
    cl.add_argument("--m", type=int, default=3)
    cl.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    cl.add_argument("--seed", type=int, default=0)
    cl.set_defaults(func=cmd_reproduce_claims)
    return parser


def run_command(argv=None, stdout=None, stderr=None):
    """Run the CLI; returns ``(exit status, report document or None)``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_USAGE if exc.code else EXIT_OK), None
    start = time.perf_counter()
    try:
        doc, status = args.func(args)
    except (UsageError, QuarticleError) as exc:
        print(f"quarticle: error: {exc}", file=stderr)
        return EXIT_USAGE, None
    if args.timing:
        doc.timing = {"seconds": time.perf_counter() - start}
    payload = emit_report(doc, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(payload)
    else:
        stdout.write(payload.decode("utf-8"))
    return status, doc


def main(argv=None):
    status, _ = run_command(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
