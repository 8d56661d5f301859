"""Named-text and DIMACS readers/writers."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import ParseError
from .logic import (
    Clause,
    CnfTheory,
    DnfTheory,
    Term,
    atom,
    atom_name,
    literal_str,
    normalize_clause,
    TAUTOLOGY,
)

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
EMPTY_CLAUSE_TOKEN = "_|_"
EMPTY_TERM_TOKEN = "<T>"
_DIMACS_HEADER = re.compile(r"p\s+cnf\s+\d+\s+\d+\s*\Z")


@dataclass
class InputDocument:
    theory: Union[CnfTheory, DnfTheory]
    source_format: str = "named"
    nvars: Optional[int] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def kind(self) -> str:
        return "dnf" if isinstance(self.theory, DnfTheory) else "cnf"


def parse_named_text(text: str, dnf: bool = False) -> InputDocument:
    """One clause (or term, with ``dnf``) per line; ``#`` comments and blank lines skipped."""
    empty_token = EMPTY_TERM_TOKEN if dnf else EMPTY_CLAUSE_TOKEN
    items = []
    warnings = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped == empty_token:
            items.append(frozenset())
            continue
        lits = []
        for m in re.finditer(r"\S+", line):
            tok = m.group()
            positive = tok[0] not in "-~"
            name = tok if positive else tok[1:]
            if not IDENT.match(name):
                raise ParseError(f"malformed literal {tok!r}", lineno, m.start() + 1)
            lits.append(2 * atom(name) + positive)
        if normalize_clause(lits) is TAUTOLOGY:
            if dnf:
                raise ParseError("term contains a complementary pair", lineno)
            warnings.append(f"line {lineno}: tautology dropped")
            continue
        items.append(frozenset(lits))
    if dnf:
        theory = DnfTheory._trusted(Term._trusted(t) for t in items)
    else:
        theory = CnfTheory._trusted(Clause._trusted(c) for c in items)
    return InputDocument(theory, "named", None, warnings)


def parse_dimacs(text: str) -> InputDocument:
    """DIMACS CNF; atom i is named ``x<i>``."""
    nvars = nclauses = None
    warnings = []
    clauses = []
    current: list[int] = []
    cur_line = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c") or stripped.startswith("%"):
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("malformed header, expected 'p cnf <nvars> <nclauses>'", lineno)
            try:
                nvars, nclauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer counts in header", lineno) from None
            continue
        if nvars is None:
            raise ParseError("missing 'p cnf' header", lineno)
        for m in re.finditer(r"\S+", line):
            try:
                v = int(m.group())
            except ValueError:
                raise ParseError(f"malformed literal {m.group()!r}", lineno, m.start() + 1) from None
            if v == 0:
                if not current:
                    raise ParseError("zero-length clause", lineno, m.start() + 1)
                clauses.append((cur_line, current))
                current = []
                continue
            if abs(v) > nvars:
                raise ParseError(f"literal {v} exceeds nvars={nvars}", lineno, m.start() + 1)
            if not current:
                cur_line = lineno
            current.append(v)
    if nvars is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        clauses.append((cur_line, current))
    if len(clauses) != nclauses:
        warnings.append(f"header declares {nclauses} clauses, found {len(clauses)}")
    out = []
    for lineno, ints in clauses:
        c = normalize_clause(2 * atom(f"x{abs(v)}") + (v > 0) for v in ints)
        if c is TAUTOLOGY:
            warnings.append(f"line {lineno}: tautology dropped")
            continue
        out.append(c)
    return InputDocument(CnfTheory._trusted(out), "dimacs", nvars, warnings)


def looks_like_dimacs(text: str) -> bool:
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("c") or s.startswith("#"):
            continue
        return _DIMACS_HEADER.match(s) is not None
    return False


def parse(text: str, dnf: bool = False, fmt: str = "auto") -> InputDocument:
    if fmt == "dimacs" or (fmt == "auto" and not dnf and looks_like_dimacs(text)):
        return parse_dimacs(text)
    return parse_named_text(text, dnf=dnf)


def emit_named_text(theory: Union[CnfTheory, DnfTheory]) -> str:
    empty = EMPTY_TERM_TOKEN if isinstance(theory, DnfTheory) else EMPTY_CLAUSE_TOKEN
    lines = [" ".join(literal_str(l) for l in c.literals) or empty for c in theory.sorted()]
    return "".join(line + "\n" for line in lines)


def _dimacs_index(a: int) -> int:
    name = atom_name(a)
    if not re.fullmatch(r"x[1-9][0-9]*", name):
        raise ValueError(f"atom {name!r} has no DIMACS index")
    return int(name[1:])


def emit_dimacs(theory: CnfTheory, nvars: Optional[int] = None) -> str:
    rows = []
    for c in theory.sorted():
        ints = sorted((_dimacs_index(l >> 1) * (1 if l & 1 else -1) for l in c), key=lambda v: (abs(v), v))
        rows.append(" ".join(map(str, ints + [0])))
    n = max([_dimacs_index(a) for a in theory.signature] + [nvars or 0])
    return f"p cnf {n} {len(rows)}\n" + "".join(r + "\n" for r in rows)


def theory_to_json(theory: Union[CnfTheory, DnfTheory]) -> dict:
    key = "terms" if isinstance(theory, DnfTheory) else "clauses"
    return {key: [c.tokens() for c in theory.sorted()]}


def theory_from_json(data: Union[str, dict]) -> Union[CnfTheory, DnfTheory]:
    if isinstance(data, str):
        data = json.loads(data)
    if "terms" in data:
        return DnfTheory(Term(_json_lits(t)) for t in data["terms"])
    return CnfTheory(Clause(_json_lits(c)) for c in data["clauses"])


def _json_lits(tokens: list[str]) -> list[int]:
    out = []
    for tok in tokens:
        positive = tok[:1] not in ("-", "~")
        name = tok if positive else tok[1:]
        if not IDENT.match(name):
            raise ParseError(f"malformed literal {tok!r}")
        out.append(2 * atom(name) + positive)
    return out
