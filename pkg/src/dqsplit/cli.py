"""Command-line entry point: ``dqsplit {split,verify,riccati,standard,criteria}``.

Exit status: 0 on success or a positive result, 1 on a failed verification or
a negative verdict, 2 on usage and input errors.  Budget exhaustion is not a
failure: the command exits 0 and reports ``"status": "inconclusive"``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arith import RatFunc
from .certio import CertificateFormatError, dumps, emit_certificate_json, loads
from .criteria import (finite_split_search, finite_split_witness_check, nonsplit_algebraic_check,
                       standard_analyze, CriteriaVerdict)
from .engine import CertificateError, construct_certificate, verify_certificate
from .odesolve import riccati_pattern_solutions, riccati_rational_solutions
from .problem import ProblemError, load_problem
from .quaternion import build_P, build_riccati, mat_det, mat_eq, mat_map
from .tower import Tower, render_elem

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

WITNESS_TAG = "norm-quotient witness"
NOTE_TAG = "constant base field"


class UsageError(Exception):
    pass


# -- commands -------------------------------------------------------------------------


def cmd_split(args):
    prob = load_problem(args.problem)
    try:
        cert = construct_certificate(prob.algebra(), prob.derivation(), prob.hints,
                                     n_max=args.n_max, budget=args.budget)
    except CertificateError as exc:
        return EXIT_FAIL, {"command": "split", "status": "failed", "error": str(exc)}, \
            f"split: certificate construction failed: {exc}"
    doc = emit_certificate_json(cert)
    lines = [
        f"equation: {doc['riccati']}",
        "tower: " + ("; ".join(s["description"] for s in doc["tower"]["steps"]) or "Q(t)"),
        f"lambda1 = {doc['lambda1']}",
        f"lambda2 = {doc['lambda2']}",
        f"mu = {doc['mu']}",
        f"F = {doc['F']}",
        f"det F = {doc['det_F']}",
        f"verified: {str(doc['verified']).lower()}",
        f"trdeg: {doc['trdeg']}",
    ]
    lines += [f"note: {n}" for n in doc["notes"]]
    return (EXIT_OK if cert.verified else EXIT_FAIL), doc, "\n".join(lines)


def cmd_verify(args):
    try:
        with open(args.certificate) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.certificate}: {exc}") from exc
    try:
        cert = loads(text)
    except CertificateFormatError as exc:
        doc = {"command": "verify", "status": "failed", "passed": False, "error": str(exc)}
        return EXIT_FAIL, doc, f"verify: FAIL ({exc})"
    res = verify_certificate(cert)
    messages = list(res.messages)
    stored = json.loads(text)
    det = render_elem(mat_det(cert.F))
    consistent = stored.get("det_F") == det
    if not consistent:
        messages.append(f"stored det_F {stored.get('det_F')!r} differs from computed {det!r}")
    P = mat_map(build_P(cert.algebra, cert.spec, cert.xi), cert.tower.elem)
    if not mat_eq(P, cert.P):
        consistent = False
        messages.append("stored P differs from the matrix determined by the problem data")
    passed = res.passed and res.det_is_one and consistent
    doc = {
        "command": "verify",
        "status": "passed" if passed else "failed",
        "passed": passed,
        "det_nonzero": res.det_nonzero,
        "det_is_one": res.det_is_one,
        "failing_entry": list(res.failing_entry) if res.failing_entry else None,
        "messages": messages,
    }
    text_out = "verify: " + ("PASS" if passed else "FAIL")
    if messages:
        text_out += "\n" + "\n".join(messages)
    return (EXIT_OK if passed else EXIT_FAIL), doc, text_out


def cmd_riccati(args):
    prob = load_problem(args.problem)
    alg, spec = prob.algebra(), prob.derivation()
    tower, xi = alg.resolve_xi(Tower(alg.base))
    eq = build_riccati(alg, spec, xi)
    doc = {"command": "riccati", "equation": eq.render(), "status": "complete",
           "solutions": [], "solver": None, "pattern": None}
    if eq.rational_coeffs() is not None and alg.base.is_standard():
        sol = riccati_rational_solutions(eq, args.budget)
        doc["solver"] = sol.rendered()
        doc["solutions"] = [render_elem(x) for x in sol.all_solutions()]
        doc["status"] = "inconclusive" if sol.status == "exhausted" else sol.status
    else:
        doc["status"] = "not-applicable"
        doc["solver"] = {"status": "not-applicable",
                         "reason": ("coefficients outside Q(t)" if alg.base.is_standard()
                                    else "rational solver requires t' = 1")}
    hit = riccati_pattern_solutions(eq, alg, spec, tower)
    if hit is not None:
        doc["pattern"] = [render_elem(x) for x in hit.roots]
    lines = [f"equation: {doc['equation']}",
             "rational solutions: [" + ", ".join(doc["solutions"]) + "]",
             f"status: {doc['status']}"]
    if doc["solver"] and doc["solver"].get("family"):
        lines.append(f"family: {doc['solver']['family']['description']}")
    if doc["solver"] and doc["solver"].get("radical"):
        lines.append(f"radical solutions: {doc['solver']['radical']['description']}")
    if doc["pattern"]:
        lines.append("pattern solutions: " + ", ".join(doc["pattern"]))
    return EXIT_OK, doc, "\n".join(lines)


def cmd_standard(args):
    prob = load_problem(args.problem)
    alg, spec = prob.algebra(), prob.derivation()
    if not alg.base.is_standard():
        doc = {"command": "standard", "status": "inconclusive",
               "report": {"status": "Inconclusive", "reasons": ["analysis requires t' = 1"]}}
        return EXIT_OK, doc, "standard: Inconclusive (analysis requires t' = 1)"
    rep = standard_analyze(alg, spec, args.budget)
    body = rep.render(alg)
    status = {"Standard": "standard", "NotStandard": "not-standard"}.get(rep.status, "inconclusive")
    doc = {"command": "standard", "status": status, "report": body}
    lines = [f"standard: {rep.status}"]
    if "pair" in body:
        lines.append("pair: (" + ", ".join(body["pair"]) + ")")
    if body["eigen_elements"]:
        lines.append("eigen-elements: " + ", ".join(body["eigen_elements"]))
    lines += [f"reason: {r}" for r in body["reasons"]]
    return (EXIT_FAIL if rep.status == "NotStandard" else EXIT_OK), doc, "\n".join(lines)


def _criteria_verdicts(prob, args):
    if not prob.t_prime:
        return [CriteriaVerdict("Note", None, {
            "reason": "t' = 0: every element of Q(t) is a constant; the algebra splits "
                      "differentially exactly when it splits as an algebra, which is not tested"},
            NOTE_TAG)]
    reasons = []
    if prob.t_prime != 1:
        reasons.append("criteria require t' = 1")
    if prob.a2 or prob.a3:
        reasons.append("criteria require a2 = a3 = 0")
    if not prob.alpha.is_polynomial():
        reasons.append("criteria require alpha to be a polynomial")
    if reasons:
        return [CriteriaVerdict("NoVerdict", None, {"reason": "; ".join(reasons)}, "")]
    alpha, a = prob.alpha, prob.a1
    out = []
    res = finite_split_search(alpha, a, args.degree_bound, args.n_max, args.budget)
    if res.status == "found":
        w = res.witness
        ok = finite_split_witness_check(alpha, a, RatFunc(w.g0), RatFunc(w.g1), w.n, w.c)
        out.append(CriteriaVerdict("FinitelySplit" if ok else "NoVerdict", None,
                                   {"witness": w.render(), "checked": ok, "candidates": res.candidates},
                                   WITNESS_TAG))
    else:
        out.append(CriteriaVerdict("NoVerdict", None, {
            "reason": ("candidate budget reached" if res.candidates >= args.budget
                       else "search space exhausted"),
            "candidates": res.candidates,
            "degree_bound": args.degree_bound}, WITNESS_TAG))
    if alpha.num.degree % 2 == 1:
        out.append(nonsplit_algebraic_check(alpha, a, conjunction=args.conjunction))
    else:
        out.append(CriteriaVerdict("NoVerdict", None,
                                   {"reason": "nonsplitting test needs alpha of odd degree"}, ""))
    return out


def cmd_criteria(args):
    prob = load_problem(args.problem)
    verdicts = _criteria_verdicts(prob, args)
    negative = any(v.verdict == "NotSplitByAlgebraic" for v in verdicts)
    positive = any(v.verdict in ("FinitelySplit", "NotSplitByAlgebraic", "Note") for v in verdicts)
    status = "negative" if negative else ("positive" if positive else "inconclusive")
    doc = {"command": "criteria", "status": status, "mode": "conjunction" if args.conjunction else "disjunction",
           "problem": prob.rendered(), "verdicts": [v.render() for v in verdicts]}
    lines = []
    for v in verdicts:
        head = v.verdict + (f" via ({v.condition})" if v.condition else "")
        if v.tag:
            head += f" [{v.tag}]"
        lines.append(head)
        for k, val in v.evidence.items():
            lines.append(f"  {k}: {val}")
    return (EXIT_FAIL if negative else EXIT_OK), doc, "\n".join(lines)


# -- argument handling -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n-max", type=int, default=16, help="largest radical index tried (default 16)")
    common.add_argument("--degree-bound", type=int, default=4, help="witness degree bound (default 4)")
    common.add_argument("--budget", type=int, default=10000, help="candidate cap for searches (default 10000)")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--out", metavar="PATH", help="also write the JSON document to PATH")

    parser = _Parser(prog="dqsplit", description="Differential splitting of quaternion algebras over Q(t).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in (("split", "construct and verify a splitting certificate"),
                           ("riccati", "build the Riccati equation and list rational solutions"),
                           ("standard", "decide whether the derivation is standard")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("problem")
    p = sub.add_parser("criteria", parents=[common], help="finite-splitting and non-splitting tests")
    p.add_argument("problem")
    p.add_argument("--conjunction", action="store_true",
                   help="require both non-splitting conditions instead of either")
    p = sub.add_parser("verify", parents=[common], help="re-check a certificate document")
    p.add_argument("certificate")
    return parser


COMMANDS = {"split": cmd_split, "verify": cmd_verify, "riccati": cmd_riccati,
            "standard": cmd_standard, "criteria": cmd_criteria}


def run_command(argv):
    """Parse argv and run; returns (exit code, JSON document, text report, parsed args)."""
    args = build_parser().parse_args(argv)
    for flag in ("n_max", "degree_bound", "budget"):
        if getattr(args, flag) < 1:
            raise UsageError(f"--{flag.replace('_', '-')} must be positive")
    code, doc, text = COMMANDS[args.command](args)
    return code, doc, text, args


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        code, doc, text, args = run_command(argv)
    except UsageError as exc:
        print(f"dqsplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ProblemError as exc:
        print(f"dqsplit: problem error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    payload = dumps(doc)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"dqsplit: error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    sys.stdout.write(payload if args.json else text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
