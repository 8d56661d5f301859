"""Decision problems about forgetting, SNC/WSC and definability."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import PreconditionError
from .forget import ForgetOptions, forget_cnf
from .logic import (
    Clause,
    CnfTheory,
    DnfTheory,
    atom_name,
    negate_cnf,
    substitute,
)
from .sat import counter_model, solve

Formula = Union[CnfTheory, DnfTheory]

_MINIMAL = ForgetOptions(minimize_subsumed=True)


class TaskKind(enum.Enum):
    VAR_IND = "var-ind"
    VAR_WEAK = "var-weak"
    VAR_STRONG = "var-strong"
    VAR_MATCH = "var-match"
    VAR_ENT = "var-ent"
    VAR_EQ = "var-eq"


@dataclass(frozen=True)
class Certificate:
    """Why an entailment failed: the offending clause and/or a countermodel.

    ``direction`` names the entailment that failed, e.g. ``"forget(S,V) |= P"``.
    """

    direction: str
    clause: Optional[Clause] = None
    countermodel: Optional[frozenset] = None


@dataclass(frozen=True)
class Verdict:
    answer: bool
    certificate: Optional[Certificate] = None

    def __bool__(self) -> bool:
        return self.answer


TRUE = Verdict(True)


def strip(c: Clause, V: frozenset) -> Clause:
    return Clause._trusted(l for l in c if l >> 1 not in V)


def _falsify_on(model: frozenset, c: Clause, V: frozenset) -> frozenset:
    # reassign V atoms so that the V-literals of c are false
    out = set(model)
    for l in c:
        if l >> 1 in V:
            if l & 1:
                out.discard(l >> 1)
            else:
                out.add(l >> 1)
    return frozenset(out)


def _forgotten_entails(source: CnfTheory, V: frozenset, target: CnfTheory, direction: str) -> Verdict:
    """``forget(source, V) |= target`` without computing the forgetting.

    ``forget(source, V)`` is V-free, so it entails c iff it entails c minus its
    V-literals, which holds iff ``source`` does.
    """
    for c in target.sorted():
        m = counter_model(source, strip(c, V))
        if m is not None:
            return Verdict(False, Certificate(direction, c, _falsify_on(m, c, V)))
    return TRUE


def _entails_theory(source: CnfTheory, target: CnfTheory, direction: str) -> Verdict:
    for c in target.sorted():
        m = counter_model(source, c)
        if m is not None:
            return Verdict(False, Certificate(direction, c, m))
    return TRUE


def decide(
    task: TaskKind, pi: CnfTheory, sigma: Optional[CnfTheory] = None, atoms: Iterable[int] = ()
) -> Verdict:
    """Decide one of the six forgetting problems.

    VAR_IND    forget(P,V) == P
    VAR_WEAK   P |= forget(S,V)
    VAR_STRONG forget(S,V) |= P
    VAR_MATCH  forget(S,V) == P
    VAR_ENT    forget(P,V) |= forget(S,V)
    VAR_EQ     forget(P,V) == forget(S,V)
    """
    task = TaskKind(task)
    V = frozenset(atoms)
    if task is TaskKind.VAR_IND:
        return _forgotten_entails(pi, V, pi, "forget(P,V) |= P")
    if sigma is None:
        raise PreconditionError(f"{task.name} needs a second theory")
    if task is TaskKind.VAR_STRONG:
        return _forgotten_entails(sigma, V, pi, "forget(S,V) |= P")
    if task is TaskKind.VAR_WEAK:
        return _entails_theory(pi, forget_cnf(sigma, V, _MINIMAL), "P |= forget(S,V)")
    if task is TaskKind.VAR_MATCH:
        weak = decide(TaskKind.VAR_WEAK, pi, sigma, V)
        return weak if not weak else decide(TaskKind.VAR_STRONG, pi, sigma, V)
    if task is TaskKind.VAR_ENT:
        # a model of P satisfies forget(P,V), so P |= F iff forget(P,V) |= F for V-free F
        return _entails_theory(pi, forget_cnf(sigma, V, _MINIMAL), "forget(P,V) |= forget(S,V)")
    ent = decide(TaskKind.VAR_ENT, pi, sigma, V)
    if not ent:
        return ent
    back = _entails_theory(sigma, forget_cnf(pi, V, _MINIMAL), "forget(S,V) |= forget(P,V)")
    return back


def _condition_atoms(T: CnfTheory, q: int, V: frozenset) -> frozenset:
    if q in V:
        raise PreconditionError(f"target {atom_name(q)} must not be in the vocabulary")
    return T.signature - V - {q}


def snc(T: CnfTheory, q: int, atoms: Iterable[int]) -> CnfTheory:
    """Strongest necessary condition of ``q`` on ``atoms`` under ``T``."""
    V = frozenset(atoms)
    rest = _condition_atoms(T, q, V)
    return forget_cnf(substitute(T, q, True), rest, _MINIMAL)


def wsc(T: CnfTheory, q: int, atoms: Iterable[int]) -> DnfTheory:
    """Weakest sufficient condition of ``q`` on ``atoms`` under ``T``, as a DNF."""
    V = frozenset(atoms)
    rest = _condition_atoms(T, q, V)
    return negate_cnf(forget_cnf(substitute(T, q, False), rest, _MINIMAL))


def _branches(f: Formula) -> list[CnfTheory]:
    """``f`` as a disjunction of CNF theories."""
    if isinstance(f, DnfTheory):
        return [CnfTheory._trusted(Clause._trusted((l,)) for l in t) for t in f]
    return [f]


def _negated_branches(f: Formula) -> list[CnfTheory]:
    """``not f`` as a disjunction of CNF theories."""
    if isinstance(f, DnfTheory):
        return [CnfTheory._trusted(Clause._trusted(t.complement()) for t in f)]
    return [CnfTheory._trusted(Clause._trusted((l ^ 1,)) for l in c) for c in f]


def formula_entails(a: Formula, b: Formula, background: CnfTheory = CnfTheory(),
                    direction: str = "") -> Verdict:
    """``background and a |= b`` for CNF/DNF formulas; a countermodel on failure."""
    for left in _branches(a):
        for right in _negated_branches(b):
            res = solve(background | left | right)
            if res.satisfiable:
                return Verdict(False, Certificate(direction, None, res.model))
    return TRUE


def equivalent(a: Formula, b: Formula, background: CnfTheory = CnfTheory()) -> Verdict:
    v = formula_entails(a, b, background, "phi |= target")
    if not v:
        return v
    return formula_entails(b, a, background, "target |= phi")


def check_condition(kind: str, phi: Formula, T: CnfTheory, q: int, atoms: Iterable[int]) -> Verdict:
    """Is ``phi`` a necessary / sufficient / strongest necessary / weakest sufficient
    condition of ``q`` on ``atoms`` under ``T``?"""
    V = frozenset(atoms)
    if not phi.signature <= V:
        raise PreconditionError("condition mentions atoms outside the vocabulary")
    qunit = CnfTheory._trusted([Clause._trusted((2 * q + 1,))])
    if kind == "necessary":
        return formula_entails(qunit, phi, T, "T |= q -> phi")
    if kind == "sufficient":
        return formula_entails(phi, qunit, T, "T |= phi -> q")
    if kind == "snc":
        return equivalent(phi, snc(T, q, V))
    if kind == "wsc":
        return equivalent(phi, wsc(T, q, V))
    raise PreconditionError(f"unknown condition kind {kind!r}")


def defines(sigma: CnfTheory, p: int, over: Iterable[int]) -> Verdict:
    """Whether ``sigma`` defines ``p`` in terms of ``over``.

    Holds iff the strongest necessary condition of ``p`` is also sufficient.
    """
    X = frozenset(over)
    if p in X:
        raise PreconditionError(f"{atom_name(p)} must not be among the defining atoms")
    punit = CnfTheory._trusted([Clause._trusted((2 * p + 1,))])
    return formula_entails(snc(sigma, p, X), punit, sigma, "S |= snc -> p")


def strongest_definition(sigma: CnfTheory, p: int, over: Iterable[int]) -> Optional[CnfTheory]:
    X = frozenset(over)
    return snc(sigma, p, X) if defines(sigma, p, X) else None


def weakest_definition(sigma: CnfTheory, p: int, over: Iterable[int]) -> Optional[DnfTheory]:
    X = frozenset(over)
    return wsc(sigma, p, X) if defines(sigma, p, X) else None
