"""Command-line interface.

Exit status: 0 success, 1 semantic rejection or counterexample, 2 input
error (bad syntax, missing file, unbound variable, bad flags).
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys
from typing import Sequence

from . import bundled
from .proofs import ProofError, check_proof, parse_proof, path_str
from .semantics import RewriteBudgetExceeded, UnboundVariable, eval_closed, eval_rewrite
from .sexpr import ParseError
from .syntax import parse_formula, parse_term, print_sequent
from .truth import NotAOneForm, explain, holds_qf
from .valuation import build_valuation_tree, tree_to_sexpr, value_dn

GRAMMAR = """\
grammar:
  term     0 | x<k> | (S t) | (half t) | (len t) | (s0 t) | (s1 t) | (parity t)
           | (+ t t) | (* t t) | (# t t) | (bp t t) | (cond t t t)
  formula  (<= t t) | (= t t) | (E t) | (not <atom>) | (and F F) | (or F F)
           | (all x<k> (len t) F) | (ex x<k> t F)
  sequent  (seq (ants F...) (sucs F...))
  proof    (proof <rule> (concl <sequent>) [(inst (x<k> t)...)] (prems <proof>...))
  rules    identity axiom (axiom <family>) weak-l weak-r contr-l contr-r exch-l exch-r
           neg-l neg-r and-l1 and-l2 and-r or-l or-r1 or-r2 all-l all-r ex-l ex-r cut
files may name a bundled proof as examples/NAME or corpus:NAME.
"""


class InputError(Exception):
    pass


def parse_env(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"--env expects comma-separated naturals, got {text!r}") from None
    if any(v < 0 for v in values):
        raise InputError("--env entries must be natural numbers")
    return values


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected a natural number")
    return value


def _emit_json(obj: dict, target: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if target in (None, "-"):
        print(text)
    else:
        pathlib.Path(target).write_text(text + "\n", encoding="utf-8")


# ------------------------------------------------------------ commands


def cmd_oracle_term(args) -> int:
    t = parse_term(args.term)
    env = parse_env(args.env)
    closed = eval_closed(t, env)
    if args.method in ("rewrite", "both"):
        rewritten = eval_rewrite(t, env)
        if args.method == "rewrite":
            closed = rewritten
        elif rewritten != closed:
            print(f"evaluators disagree: closed {closed}, rewrite {rewritten}", file=sys.stderr)
            return 1
    print(closed)
    return 0


def cmd_eval_term(args) -> int:
    t = parse_term(args.term)
    env = parse_env(args.env)
    c = value_dn(t, env, args.bound)
    print("None" if c is None else f"Some {c}")
    if args.tree and c is not None:
        print(tree_to_sexpr(build_valuation_tree(t, env, args.bound)))
    return 0


def cmd_truth(args) -> int:
    f = parse_formula(args.formula)
    env = parse_env(args.env)
    if args.mode == "t0":
        result = holds_qf(args.bound, f, env)
        trace = None
    else:
        tr = explain(args.bound, f, env)
        result, trace = tr.result, tr
    print("true" if result else "false")
    if args.trace and trace is not None:
        print(json.dumps({"class": trace.form, **trace.notes}, sort_keys=True))
    return 0


def cmd_check_proof(args) -> int:
    p = parse_proof(bundled.read_source(args.file))
    report: dict = {"file": args.file}
    try:
        checked = check_proof(p)
    except ProofError as e:
        report.update(accepted=False, error={"category": e.category, "nodePath": path_str(e.path), "message": e.message})
        status = 1
    else:
        report.update(
            accepted=True,
            endSequent=print_sequent(checked.end_sequent),
            nodes=[
                {"nodePath": path_str(m.path), "rule": m.rule, "k": m.k, "codeBits": m.code.bit_length()}
                for m in checked.meta.values()
            ],
        )
        status = 0
    if args.json_report is not None:
        _emit_json(report, args.json_report)
    elif report["accepted"]:
        print(f"accepted: {report['endSequent']} ({len(report['nodes'])} nodes)")
    else:
        err = report["error"]
        print(f"rejected [{err['category']}] at {err['nodePath']}: {err['message']}")
    return status


def cmd_soundness(args) -> int:
    from .soundness import check_proof_soundness

    if args.sample is not None and args.seed is None:
        raise InputError("--sample requires --seed")
    p = parse_proof(bundled.read_source(args.file))
    if not args.forged:
        try:
            check_proof(p)
        except ProofError as e:
            print(f"proof rejected: {e}", file=sys.stderr)
            return 1
    mode = "sample" if args.sample is not None else "enumerate"
    report = check_proof_soundness(
        p, args.u, mode=mode, samples=args.sample or 0, seed=args.seed or 0,
        relative=args.relative, require_checked=not args.forged,
    )
    if args.json_report:
        _emit_json({"file": args.file, **report.to_json()}, None)
    else:
        for n in report.nodes:
            extra = f" counterexample {n.counterexample}" if n.counterexample else ""
            print(f"{n.nodePath:<16} {n.rule:<8} k={n.k} checked={n.checked:<7} {n.strategy:<16} {n.outcome}{extra}")
        print(report.verdict)
    if args.plot:
        from .plotting import plot_soundness

        plot_soundness(report, args.plot)
    return 0 if report.ok else 1


def cmd_fuzz(args) -> int:
    from .fuzz import fuzz

    report = fuzz(args.count, args.seed, u=args.u, samples_per_node=args.samples)
    if args.json_report:
        _emit_json(report.to_json(), None)
    else:
        j = report.to_json()
        print(f"attempts {report.count}, accepted {report.accepted} ({j['acceptanceRate']:.1%})")
        print(f"rejected {j['rejected']}")
        print(f"empty end-sequents accepted: {report.empty_sequent_accepted}")
        print(f"soundness failures: {len(report.soundness_failures)}")
        print(f"budget-law violations: {len(report.budget_violations)}")
        print(j["verdict"])
    if args.plot:
        from .plotting import plot_fuzz

        plot_fuzz(report, args.plot)
    return 0 if report.ok else 1


def cmd_corpus(args) -> int:
    if args.action == "list":
        for e in bundled.entries():
            print(f"{e.name:<40} {e.expect} {e.category or ''}".rstrip())
    elif args.action == "show":
        if not args.name:
            raise InputError("corpus show needs a NAME")
        print(bundled.entry(args.name).text, end="")
    else:
        out = pathlib.Path(args.name or "examples")
        out.mkdir(parents=True, exist_ok=True)
        for e in bundled.entries():
            (out / e.name).write_text(e.text, encoding="utf-8")
        print(f"wrote {len(bundled.names())} files to {out}")
    return 0


# -------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="s02e",
        description="Proof checker and bounded-truth engine for a weak bounded arithmetic.",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_: str):
        return sub.add_parser(name, help=help_, epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)

    p = command("oracle-term", "value of a term in the standard model")
    p.add_argument("term")
    p.add_argument("--env", default="", help="comma-separated values of x1, x2, ...")
    p.add_argument("--method", choices=("closed", "rewrite", "both"), default="both")
    p.set_defaults(run=cmd_oracle_term)

    p = command("eval-term", "bounded evaluation through a valuation tree")
    p.add_argument("term")
    p.add_argument("--env", default="")
    p.add_argument("--bound", type=_natural, required=True)
    p.add_argument("--tree", action="store_true", help="also print the valuation tree")
    p.set_defaults(run=cmd_eval_term)

    p = command("truth", "bounded truth of a formula")
    p.add_argument("formula")
    p.add_argument("--env", default="")
    p.add_argument("--bound", type=_natural, required=True)
    p.add_argument("--mode", choices=("t0", "t"), default="t")
    p.add_argument("--trace", action="store_true", help="print witnesses and refutations")
    p.set_defaults(run=cmd_truth)

    p = command("check-proof", "check a strictly 1-normal proof")
    p.add_argument("file")
    p.add_argument("--json-report", nargs="?", const="-", default=None, metavar="PATH",
                   help="write a JSON report to PATH (stdout if omitted)")
    p.set_defaults(run=cmd_check_proof)

    p = command("soundness", "check the per-node soundness statement on a grid")
    p.add_argument("file")
    p.add_argument("--u", type=_natural, required=True)
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--enumerate", action="store_true", help="enumerate the whole grid (default)")
    grid.add_argument("--sample", type=_natural, metavar="N", help="check N pseudo-random grid points per node")
    p.add_argument("--seed", type=int)
    p.add_argument("--relative", action="store_true", help="check node r at u (+) r so that u' ranges over 0..u")
    p.add_argument("--forged", action="store_true", help="skip the proof check (for forged proofs)")
    p.add_argument("--json-report", action="store_true")
    p.add_argument("--plot", metavar="PNG", help="also write a bar chart of the per-node outcomes")
    p.set_defaults(run=cmd_soundness)

    p = command("fuzz", "random proof attempts: consistency and soundness probe")
    p.add_argument("--count", type=_natural, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--u", type=_natural, default=16)
    p.add_argument("--samples", type=_natural, default=16, help="grid samples per node of accepted proofs")
    p.add_argument("--json-report", action="store_true")
    p.add_argument("--plot", metavar="PNG", help="also write outcome and size charts")
    p.set_defaults(run=cmd_fuzz)

    p = command("corpus", "list, show or export the bundled proofs")
    p.add_argument("action", choices=("list", "show", "export"))
    p.add_argument("name", nargs="?", help="file name for show, target directory for export")
    p.set_defaults(run=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as e:
        print(f"parse error [{e.category}]: {e}", file=sys.stderr)
    except (InputError, UnboundVariable, NotAOneForm, FileNotFoundError, KeyError, RewriteBudgetExceeded, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
