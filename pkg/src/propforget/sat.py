"""Satisfiability and entailment: Horn unit propagation, 2-SAT, and DPLL."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import PreconditionError
from .logic import Clause, CnfTheory, satisfies


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    model: Optional[frozenset] = None

    def __bool__(self) -> bool:
        return self.satisfiable


UNSAT = SatResult(False)


def _require(theory: CnfTheory, ok, what: str) -> None:
    for c in theory.sorted():
        if not ok(c):
            raise PreconditionError(f"clause {c!r} is not {what}")


def horn_sat(theory: CnfTheory) -> SatResult:
    """Unit propagation on a Horn theory; a satisfiable result carries the least model."""
    _require(theory, lambda c: len(c.pos()) <= 1, "Horn")
    clauses = list(theory)
    pending = [len(c.neg()) for c in clauses]
    watch: dict[int, list[int]] = {}
    for i, c in enumerate(clauses):
        for l in c:
            if not l & 1:
                watch.setdefault(l >> 1, []).append(i)
    true: set[int] = set()
    queue = []
    for i, c in enumerate(clauses):
        if pending[i] == 0:
            queue.append(i)
    while queue:
        i = queue.pop()
        head = clauses[i].pos()
        if not head:
            return UNSAT
        (h,) = head
        if h in true:
            continue
        true.add(h)
        for j in watch.get(h, ()):
            pending[j] -= 1
            if pending[j] == 0:
                queue.append(j)
    return SatResult(True, frozenset(true))


def strongly_connected_components(graph: dict[int, list[int]]) -> dict[int, int]:
    """Iterative Tarjan.  Component numbers come out in reverse topological order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    comp: dict[int, int] = {}
    stack: list[int] = []
    on_stack: set[int] = set()
    counter = 0
    ncomp = 0
    for root in graph:
        if root in index:
            continue
        work = [(root, iter(graph.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(graph.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def implication_graph(theory: CnfTheory) -> dict[int, list[int]]:
    """Edges ``-a -> b`` and ``-b -> a`` per binary clause, ``-a -> a`` per unit."""
    graph: dict[int, list[int]] = {}
    for a in theory.signature:
        graph.setdefault(2 * a, [])
        graph.setdefault(2 * a + 1, [])
    for c in theory:
        if len(c) == 1:
            (a,) = c
            graph[a ^ 1].append(a)
        elif len(c) == 2:
            a, b = c
            graph[a ^ 1].append(b)
            graph[b ^ 1].append(a)
    return graph


def two_sat(theory: CnfTheory) -> SatResult:
    """2-SAT via strongly connected components of the implication graph."""
    _require(theory, lambda c: len(c) <= 2, "a 2-clause")
    if theory.is_bottom():
        return UNSAT
    comp = strongly_connected_components(implication_graph(theory))
    model = set()
    for a in theory.signature:
        cp, cn = comp[2 * a + 1], comp[2 * a]
        if cp == cn:
            return UNSAT
        # Tarjan numbers sinks first: the literal closer to a sink is set true
        if cp < cn:
            model.add(a)
    return SatResult(True, frozenset(model))


def dpll_sat(theory: CnfTheory) -> SatResult:
    """DPLL with unit propagation and pure literals; branches on the lowest atom, true first."""
    result = _dpll([frozenset(c) for c in theory], {})
    if result is None:
        return UNSAT
    return SatResult(True, frozenset(a for a, v in result.items() if v))


def _simplify(clauses: list[frozenset], l: int) -> Optional[list[frozenset]]:
    out = []
    dead = l ^ 1
    for c in clauses:
        if l in c:
            continue
        if dead in c:
            c = c - {dead}
            if not c:
                return None
        out.append(c)
    return out


def _dpll(clauses: list[frozenset], assign: dict[int, bool]) -> Optional[dict[int, bool]]:
    assign = dict(assign)
    if any(not c for c in clauses):
        return None
    while True:
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is not None:
            (l,) = unit
        else:
            present = {l for c in clauses for l in c}
            pure = [l for l in present if l ^ 1 not in present]
            if not pure:
                break
            l = min(pure)
        assign[l >> 1] = bool(l & 1)
        clauses = _simplify(clauses, l)
        if clauses is None:
            return None
    if not clauses:
        return assign
    a = min(l >> 1 for c in clauses for l in c)
    for value in (True, False):
        l = 2 * a + value
        rest = _simplify(clauses, l)
        if rest is None:
            continue
        found = _dpll(rest, {**assign, a: value})
        if found is not None:
            return found
    return None


def is_horn_clause(c: Iterable[int]) -> bool:
    return sum(l & 1 for l in c) <= 1


def solve(theory: CnfTheory) -> SatResult:
    """Fragment-aware dispatch: Horn, then 2-CNF, then DPLL."""
    if all(is_horn_clause(c) for c in theory):
        return horn_sat(theory)
    if all(len(c) <= 2 for c in theory):
        return two_sat(theory)
    return dpll_sat(theory)


def with_units(theory: CnfTheory, lits: Iterable[int]) -> CnfTheory:
    return theory | [Clause._trusted((l,)) for l in lits]


def counter_model(theory: CnfTheory, c: Clause) -> Optional[frozenset]:
    """A model of ``theory`` falsifying ``c``, or ``None`` when ``theory`` entails ``c``."""
    res = solve(with_units(theory, c.complement()))
    return res.model if res.satisfiable else None


def entails(theory: CnfTheory, c: Clause) -> bool:
    """``theory |= c``, decided as unsatisfiability of ``theory`` plus the negated clause."""
    return counter_model(theory, c) is None


def check_model(theory: CnfTheory, result: SatResult) -> bool:
    return not result.satisfiable or satisfies(result.model, theory)
