"""Command-line front-end.

Exit status: 0 success / true, 1 false (check, define), 2 usage or parse
error, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import fragments, io, logic
from .errors import ParseError, PreconditionError, ResourceLimitError
from .forget import ForgetOptions, forget_cnf, forget_dnf
from .logic import CnfTheory, DnfTheory, atom, prime_implicants, prime_implicates
from .reasoning import TaskKind, Verdict, decide, defines, snc, wsc

log = logging.getLogger("propforget")

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _atoms(spec: Optional[str]) -> list[int]:
    if not spec:
        return []
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for n in names:
        if not io.IDENT.match(n):
            raise _UsageError(f"bad atom name {n!r}")
    return [atom(n) for n in names]


def _read(path: str, dnf: bool, fmt: str) -> io.InputDocument:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    doc = io.parse(text, dnf=dnf, fmt=fmt)
    for w in doc.warnings:
        log.warning("%s: %s", path, w)
    return doc


def _theory_text(theory, doc: io.InputDocument) -> str:
    if doc.source_format == "dimacs" and isinstance(theory, CnfTheory):
        return io.emit_dimacs(theory, doc.nvars)
    return io.emit_named_text(theory)


def _certificate_json(v: Verdict):
    c = v.certificate
    if c is None:
        return None
    return {
        "direction": c.direction,
        "clause": c.clause.tokens() if c.clause is not None else None,
        "countermodel": sorted(logic.atom_name(a) for a in c.countermodel)
        if c.countermodel is not None else None,
    }


def _emit_verdict(v: Verdict, fmt: str, extra: Optional[dict] = None) -> int:
    if fmt == "json":
        out = {"answer": v.answer, "certificate": _certificate_json(v)}
        out.update(extra or {})
        print(json.dumps(out, sort_keys=True))
    else:
        print("true" if v.answer else "false")
        cert = _certificate_json(v)
        if cert:
            print(f"failed: {cert['direction']}")
            if cert["clause"] is not None:
                print("clause: " + (" ".join(cert["clause"]) or io.EMPTY_CLAUSE_TOKEN))
            if cert["countermodel"] is not None:
                print("countermodel: {" + ", ".join(cert["countermodel"]) + "}")
        for key, theory in (extra or {}).items():
            print(f"{key}:")
            sys.stdout.write(io.emit_named_text(io.theory_from_json(theory)))
    return EXIT_OK if v.answer else EXIT_FALSE


def _emit_theory(theory, doc, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(io.theory_to_json(theory), sort_keys=True))
    else:
        sys.stdout.write(_theory_text(theory, doc))
    return EXIT_OK


def _report_json(r: fragments.FragmentReport) -> dict:
    names = lambda s: sorted(logic.atom_name(a) for a in s)  # noqa: E731
    q = None
    if r.q_horn is not None:
        V, part = r.q_horn
        q = {"renaming": names(V), "Q": names(part.Q), "H": names(part.H)}
    return {
        "horn": r.horn,
        "krom": r.krom,
        "renamable_horn": None if r.renamable_horn is None else {"renaming": names(r.renamable_horn)},
        "q_horn": q,
        "double_horn": r.double_horn,
    }


def _cmd_classify(args, doc) -> int:
    _require_cnf(doc, "classify")
    report = _report_json(fragments.classify(doc.theory, args.max_atoms))
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
        return EXIT_OK
    print(f"horn: {'yes' if report['horn'] else 'no'}")
    print(f"krom: {'yes' if report['krom'] else 'no'}")
    rh = report["renamable_horn"]
    print("renamable_horn: " + ("no" if rh is None else "yes, V={" + ", ".join(rh["renaming"]) + "}"))
    q = report["q_horn"]
    if q is None:
        print("q_horn: no")
    else:
        print("q_horn: yes, V={%s} Q={%s} H={%s}" % tuple(", ".join(q[k]) for k in ("renaming", "Q", "H")))
    dh = report["double_horn"]
    print("double_horn: " + ("unknown (too many atoms)" if dh is None else ("yes" if dh else "no")))
    return EXIT_OK


def _require_cnf(doc, cmd: str) -> None:
    if not isinstance(doc.theory, CnfTheory):
        raise _UsageError(f"{cmd} expects a CNF theory")


def _cmd_forget(args, doc) -> int:
    V = _atoms(args.forget)
    if isinstance(doc.theory, DnfTheory):
        return _emit_theory(forget_dnf(doc.theory, V), doc, args.format)
    opts = ForgetOptions(prune_entailed=args.prune_entailed, minimize_subsumed=args.minimize)
    return _emit_theory(forget_cnf(doc.theory, V, opts), doc, args.format)


def _cmd_pi(args, doc) -> int:
    return _emit_theory(prime_implicates(doc.theory), doc, args.format)


def _cmd_ip(args, doc) -> int:
    _require_cnf(doc, "ip")
    return _emit_theory(prime_implicants(doc.theory), doc, args.format)


def _target(args) -> int:
    if not args.target:
        raise _UsageError("--target is required")
    (t,) = _atoms(args.target)
    return t


def _cmd_snc(args, doc) -> int:
    _require_cnf(doc, "snc")
    return _emit_theory(snc(doc.theory, _target(args), _atoms(args.over)), doc, args.format)


def _cmd_wsc(args, doc) -> int:
    _require_cnf(doc, "wsc")
    return _emit_theory(wsc(doc.theory, _target(args), _atoms(args.over)), doc, args.format)


def _cmd_define(args, doc) -> int:
    _require_cnf(doc, "define")
    p, X = _target(args), _atoms(args.over)
    v = defines(doc.theory, p, X)
    extra = None
    if v.answer:
        extra = {
            "strongest": io.theory_to_json(snc(doc.theory, p, X)),
            "weakest": io.theory_to_json(wsc(doc.theory, p, X)),
        }
    return _emit_verdict(v, args.format, extra)


def _cmd_check(args, doc, second) -> int:
    if not args.task:
        raise _UsageError("--task is required")
    task = TaskKind(args.task)
    _require_cnf(doc, "check")
    sigma = None
    if task is not TaskKind.VAR_IND:
        if second is None:
            raise _UsageError(f"{args.task} needs two theory files")
        _require_cnf(second, "check")
        sigma = second.theory
    return _emit_verdict(decide(task, doc.theory, sigma, _atoms(args.forget)), args.format)


COMMANDS = {
    "classify": _cmd_classify,
    "forget": _cmd_forget,
    "pi": _cmd_pi,
    "ip": _cmd_ip,
    "snc": _cmd_snc,
    "wsc": _cmd_wsc,
    "define": _cmd_define,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--input-format", choices=("auto", "named", "dimacs"), default="auto")
    common.add_argument("--dnf", action="store_true", help="input lines are terms")
    common.add_argument("--max-atoms", type=int, default=logic.MODEL_LIMIT,
                        help="model-enumeration guard")
    common.add_argument("-f", "--forget", help="comma-separated atoms to forget")
    common.add_argument("--target", help="target atom (snc, wsc, define)")
    common.add_argument("--over", help="comma-separated vocabulary (snc, wsc, define)")
    common.add_argument("--prune-entailed", action="store_true")
    common.add_argument("--minimize", action="store_true")
    common.add_argument("--task", choices=[t.value for t in TaskKind])

    parser = _Parser(prog="propforget", description="Propositional forgetting toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("classify", "forget", "pi", "ip", "snc", "wsc", "define"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("path", help="theory file, '-' for stdin")
    p = sub.add_parser("check", parents=[common])
    p.add_argument("path", help="first theory (P)")
    p.add_argument("second", nargs="?", help="second theory (S)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    level = os.environ.get("PROPFORGET_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        doc = _read(args.path, args.dnf, args.input_format)
        if args.command == "check":
            second = _read(args.second, False, args.input_format) if args.second else None
            return _cmd_check(args, doc, second)
        return COMMANDS[args.command](args, doc)
    except (_UsageError, ParseError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
