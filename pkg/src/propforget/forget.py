"""Forgetting atoms from CNF and DNF theories.

The production route is iterated strong unfolding (:func:`forget_cnf`).
:func:`forget_via_pi`, :func:`forget_substitution` and
:func:`forget_models_oracle` compute the same thing by independent means and
exist to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .logic import (
    EMPTY_CLAUSE,
    EMPTY_TERM,
    MODEL_LIMIT,
    Clause,
    CnfTheory,
    DnfTheory,
    Term,
    masks_to_interpretations,
    minimize,
    model_masks,
    prime_implicates,
    resolve,
    substitute,
)
from .sat import entails, implication_graph, strongly_connected_components, two_sat

EXPANSION_LIMIT = 10


@dataclass(frozen=True)
class ForgetOptions:
    prune_entailed: bool = False
    minimize_subsumed: bool = False
    atom_order: Optional[Sequence[int]] = None


def _weak_unfold_resolvents(positive, negative, keep=None):
    for c in positive:
        for d in negative:
            r = resolve(c, d)
            if r is not None and (keep is None or keep(r)):
                yield r


def strong_unfold(theory: CnfTheory, p: int) -> CnfTheory:
    """Replace clauses containing p by their resolvents on p, then drop those containing -p."""
    plit, nlit = 2 * p + 1, 2 * p
    positive = [c for c in theory if plit in c]
    negative = [c for c in theory if nlit in c]
    out = {c for c in theory if plit not in c and nlit not in c}
    out.update(_weak_unfold_resolvents(positive, negative))
    return CnfTheory._trusted(out)


def forget_cnf(
    theory: CnfTheory, atoms: Iterable[int], opts: ForgetOptions = ForgetOptions()
) -> CnfTheory:
    """Forget ``atoms`` from a CNF theory by strong unfolding, one atom at a time."""
    V = frozenset(atoms)
    if opts.atom_order is not None:
        order = list(opts.atom_order)
        if sorted(order) != sorted(V) or len(set(order)) != len(order):
            raise PreconditionError("atom_order must be a permutation of the forgotten atoms")
    else:
        order = sorted(V)
    order = [p for p in order if p in theory.signature]

    aside = {c for c in theory if not (c.atoms() & V)}
    work = set(theory) - aside
    for p in order:
        plit, nlit = 2 * p + 1, 2 * p
        positive = [c for c in work if plit in c]
        negative = [c for c in work if nlit in c]
        acc = {c for c in work if plit not in c and nlit not in c}
        if opts.prune_entailed:
            for c in positive:
                for d in negative:
                    r = resolve(c, d)
                    if r is None or r in acc:
                        continue
                    if not entails(CnfTheory._trusted(acc), r):
                        acc.add(r)
        else:
            acc.update(_weak_unfold_resolvents(positive, negative))
        work = acc
    result = work | aside
    if opts.minimize_subsumed:
        result = minimize(result)
    return CnfTheory._trusted(result)


def forget_via_pi(theory: CnfTheory, atoms: Iterable[int]) -> CnfTheory:
    """The prime implicates of ``theory`` that avoid ``atoms``."""
    V = frozenset(atoms)
    return CnfTheory._trusted(c for c in prime_implicates(theory) if not (c.atoms() & V))


def forget_dnf(theory: DnfTheory, atoms: Iterable[int]) -> DnfTheory:
    V = frozenset(atoms)
    terms = set()
    for t in theory:
        t = Term._trusted(l for l in t if l >> 1 not in V)
        if not t:
            return DnfTheory._trusted([EMPTY_TERM])
        terms.add(t)
    return DnfTheory._trusted(minimize(terms))


def forget_substitution(
    theory: CnfTheory, atoms: Iterable[int], limit: int = EXPANSION_LIMIT
) -> list[CnfTheory]:
    """Disjuncts of the iterated expansion ``S[p/T] v S[p/F]`` over every atom.

    The result is a disjunction of CNF theories, 2**|atoms| of them.
    """
    V = sorted(set(atoms))
    if len(V) > limit:
        raise ResourceLimitError(f"substitution expansion of {len(V)} atoms exceeds limit {limit}")
    branches = [theory]
    for p in V:
        branches = [substitute(b, p, v) for b in branches for v in (True, False)]
    return branches


def _extend_masks(atoms: list[int], vec, V: Iterable[int]):
    pos_of = {a: i for i, a in enumerate(atoms)}
    idx = np.arange(vec.size, dtype=np.int64)
    vec = vec.copy()
    for p in V:
        if p in pos_of:
            vec = vec | vec[idx ^ (1 << pos_of[p])]
    return vec


def forget_models_oracle(
    theory: CnfTheory, atoms: Iterable[int], universe: Iterable[int], limit: int = MODEL_LIMIT
) -> set[frozenset]:
    """``Mod(theory)`` closed under arbitrary reassignment of ``atoms``."""
    universe_atoms, vec = model_masks(theory, universe, limit)
    return masks_to_interpretations(universe_atoms, _extend_masks(universe_atoms, vec, atoms))


def forget_krom(theory: CnfTheory, atoms: Iterable[int]) -> CnfTheory:
    """All entailed clauses of width <= 2 over the remaining atoms, subsumption-minimal.

    For satisfiable 2-CNF, ``l1 v l2`` is entailed iff the implication graph has a
    path ``-l1 -> l2`` (a unit ``l`` iff ``-l -> l``).  Reachability is
    propagated as integer bitsets over the condensation.
    """
    if not all(len(c) <= 2 for c in theory):
        bad = next(c for c in theory.sorted() if len(c) > 2)
        raise PreconditionError(f"clause {bad!r} is not a 2-clause")
    if not two_sat(theory).satisfiable:
        return CnfTheory._trusted([EMPTY_CLAUSE])
    V = frozenset(atoms)
    graph = implication_graph(theory)
    comp = strongly_connected_components(graph)
    ncomp = max(comp.values(), default=-1) + 1
    members = [0] * ncomp
    succ: list[set[int]] = [set() for _ in range(ncomp)]
    for v, ws in graph.items():
        cv = comp[v]
        members[cv] |= 1 << v
        for w in ws:
            if comp[w] != cv:
                succ[cv].add(comp[w])
    reach = [0] * ncomp
    # Tarjan numbering is reverse topological: successors carry lower numbers
    for cv in range(ncomp):
        r = members[cv]
        for cw in succ[cv]:
            r |= reach[cw]
        reach[cv] = r

    keep_atoms = sorted(theory.signature - V)
    keep_mask = 0
    for a in keep_atoms:
        keep_mask |= 3 << (2 * a)
    out = []
    units = 0
    for a in keep_atoms:
        for l in (2 * a, 2 * a + 1):
            if reach[comp[l ^ 1]] >> l & 1:
                units |= 1 << l
                out.append(Clause._trusted((l,)))
    free = keep_mask & ~units
    for a in keep_atoms:
        for l1 in (2 * a, 2 * a + 1):
            if units >> l1 & 1:
                continue
            # l2 > l1 visits each clause once; the atom's own pair is excluded
            cand = reach[comp[l1 ^ 1]] & free & ~((1 << (2 * a + 2)) - 1)
            while cand:
                low = cand & -cand
                l2 = low.bit_length() - 1
                out.append(Clause._trusted((l1, l2)))
                cand ^= low
    return CnfTheory._trusted(out)


def expansion_vector(theory: CnfTheory, atoms: Iterable[int], universe: Iterable[int],
                     limit: int = MODEL_LIMIT):
    """Model vector of ``forget_substitution`` over ``universe`` (disjunction of branches)."""
    universe = sorted(set(universe))
    acc = None
    for branch in forget_substitution(theory, atoms):
        _, vec = model_masks(branch, universe, limit)
        acc = vec if acc is None else acc | vec
    return acc
