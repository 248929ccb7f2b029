"""Command-line front end: validate workbench documents, synthesize codes,
and run the verification suite.

Exit codes: 0 pass, 1 check or validation failure, 2 parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .codes import fold_fcode, fold_true, print_code, print_fcode
from .history import history_of_condition, history_of_name, tuple_space
from .iteration import ResourceCapExceeded
from .models import check_nice_subposet
from .synth import synth_E, synth_F
from .verify import run_checks
from .workdoc import DocError, load_doc, parse_doc

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_CAP = 3


def _load(path: str):
    try:
        return load_doc(path), None
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        return None, EXIT_PARSE
    except json.JSONDecodeError as exc:
        print(f"parse error: line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return None, EXIT_PARSE
    except DocError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return None, EXIT_PARSE


def _validate(doc) -> list[str]:
    diagnostics = []
    for v in doc.template_violations:
        diagnostics.append(f"template: {v}")
    for label, problems in doc.model_violations.items():
        for p in problems:
            diagnostics.append(f"model {label}: {p}")
    if doc.iteration is not None:
        it = doc.iteration
        for x in it.template.points:
            asg = it.assignments[x]
            if asg.kind != "R":
                continue
            for member, spec in zip(asg.qname.antichain, asg.qname.table):
                try:
                    problems = check_nice_subposet(asg.model, spec.elements, spec.z_space)
                except ValueError as exc:
                    diagnostics.append(f"subposet at {x} ({member}): {exc}")
                    continue
                for p in problems:
                    diagnostics.append(f"subposet at {x} under {member}: {p}")
    return diagnostics


def cmd_validate(args) -> int:
    doc, err = _load(args.doc)
    if doc is None:
        return err
    diagnostics = _validate(doc)
    if diagnostics:
        for d in diagnostics:
            print(d)
        return EXIT_FAIL
    print("ok")
    return EXIT_PASS


def cmd_synth(args) -> int:
    doc, err = _load(args.doc)
    if doc is None:
        return err
    if doc.template_violations:
        for v in doc.template_violations:
            print(f"template: {v}", file=sys.stderr)
        return EXIT_FAIL
    it = doc.iteration
    full = it.template.all_points()
    if args.name:
        if args.name not in doc.names:
            print(f"error: unknown name {args.name!r}", file=sys.stderr)
            return EXIT_FAIL
        name = doc.names[args.name]
        fcode = fold_fcode(synth_F(it, full, name))
        space = tuple_space(it, history_of_name(it, full, name))
        print(print_fcode(fcode))
        print(f"space: {space}")
        return EXIT_PASS
    if args.cond is not None:
        try:
            literal = json.loads(args.cond)
        except json.JSONDecodeError as exc:
            print(f"parse error in --cond: {exc.msg}", file=sys.stderr)
            return EXIT_PARSE
        from .workdoc import _parse_condition

        try:
            entry_names = {}
            for x in it.template.points:
                for e in it.assignments[x].extra_entries:
                    entry_names[e.label] = e
            cond = _parse_condition(
                literal, it.rank, doc.point_models, entry_names, "--cond"
            )
        except DocError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        if not it.member_pstar(full, cond):
            print(f"error: {cond} is not a member of the iteration", file=sys.stderr)
            return EXIT_FAIL
        code = fold_true(synth_E(it, full, cond))
        space = tuple_space(it, history_of_condition(it, full, cond))
        print(print_code(code))
        print(f"space: {space}")
        return EXIT_PASS
    print("error: synth needs --name or --cond", file=sys.stderr)
    return EXIT_FAIL


def _report_text(reports) -> str:
    lines = []
    for r in reports:
        lines.append(r.summary())
        for f in sorted(r.failures, key=lambda f: f.sort_key()):
            lines.append(
                f"  failure kind={f.kind} condition={f.condition} name={f.name} "
                f"zbar={f.zbar} expected={f.expected} actual={f.actual}"
            )
    return "\n".join(lines) + "\n"


def _report_structured(reports) -> str:
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2) + "\n"


def cmd_verify(args) -> int:
    doc, err = _load(args.doc)
    if doc is None:
        return err
    diagnostics = _validate(doc)
    if diagnostics:
        for d in diagnostics:
            print(d)
        return EXIT_FAIL
    it = doc.iteration
    if args.max_conditions:
        it.max_conditions = args.max_conditions
    seed = args.seed if args.seed else doc.seed
    try:
        reports = run_checks(it, doc.names, doc.checks, seed=seed)
    except ResourceCapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    text = _report_text(reports) if args.format == "text" else _report_structured(reports)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    for r in reports:
        print(r.summary())
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finforce",
        description="finite template-iteration workbench: validate, synthesize, verify",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="validate a workbench document")
    p_val.add_argument("--doc", required=True, help="path to the document")
    p_val.set_defaults(fn=cmd_validate)

    p_syn = sub.add_parser("synth", help="print a membership code or evaluation function")
    p_syn.add_argument("--doc", required=True)
    p_syn.add_argument("--name", help="registered name label")
    p_syn.add_argument("--cond", help="condition literal as JSON")
    p_syn.set_defaults(fn=cmd_synth)

    p_ver = sub.add_parser("verify", help="run the registered checks")
    p_ver.add_argument("--doc", required=True)
    p_ver.add_argument("--report", help="write the report to this path")
    p_ver.add_argument("--max-conditions", type=int, default=0)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--format", choices=("text", "structured"), default="structured")
    p_ver.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
