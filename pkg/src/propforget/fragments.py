"""Fragment recognition: Horn, Krom, renamable Horn, q-Horn and double Horn."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .logic import MODEL_LIMIT, Clause, CnfTheory, model_masks, rename
from .sat import is_horn_clause, two_sat


@dataclass(frozen=True)
class QhPartition:
    Q: frozenset
    H: frozenset

    def __post_init__(self):
        object.__setattr__(self, "Q", frozenset(self.Q))
        object.__setattr__(self, "H", frozenset(self.H))
        if self.Q & self.H:
            raise PreconditionError("Q and H overlap")


@dataclass(frozen=True)
class FragmentReport:
    horn: bool
    krom: bool
    renamable_horn: Optional[frozenset]
    q_horn: Optional[tuple[frozenset, QhPartition]]
    double_horn: Optional[bool]


def is_horn(theory: CnfTheory) -> bool:
    return all(is_horn_clause(c) for c in theory)


def is_krom(theory: CnfTheory) -> bool:
    return all(len(c) <= 2 for c in theory)


def renamable_horn_witness(theory: CnfTheory) -> Optional[frozenset]:
    """A set V with ``rename(theory, V)`` Horn, or ``None``.

    Selector atom s_x (reusing x's id) is true iff x is renamed.  Two literals
    of one clause may not both be positive after renaming, which is exactly
    the binary clause made of the two literals themselves over the selectors.
    """
    if is_horn(theory):
        return frozenset()
    pairs = []
    for c in theory:
        lits = sorted(c)
        for i, a in enumerate(lits):
            for b in lits[i + 1:]:
                pairs.append(Clause._trusted((a, b)))
    res = two_sat(CnfTheory._trusted(pairs))
    if not res.satisfiable:
        return None
    witness = frozenset(res.model)
    assert is_horn(rename(theory, witness))
    return witness


def qh_partition_check(theory: CnfTheory, part: QhPartition) -> bool:
    uncovered = theory.signature - part.Q - part.H
    if uncovered:
        raise PreconditionError(f"partition does not cover atoms {sorted(uncovered)}")
    Q, H = part.Q, part.H
    for c in theory:
        nq = sum(1 for a in c.atoms() if a in Q)
        nh = sum(1 for a in c.pos() if a in H)
        if nq > 2 or nh > 1 or (nh == 1 and nq > 0):
            return False
    return True


# weights in halves: alpha 0, 1/2, 1 -> 0, 1, 2 ; a positive literal weighs alpha,
# a negative one 1 - alpha ; each clause may weigh at most 1 (2 halves)
_VALUE_ORDER = (1, 2, 0)


def q_horn_weights(theory: CnfTheory) -> Optional[dict[int, int]]:
    """Backtracking search for a {0, 1/2, 1} weighting (in halves) or ``None``."""
    clauses = [tuple(c) for c in theory]
    occurs: dict[int, list[int]] = {}
    for i, c in enumerate(clauses):
        for l in c:
            occurs.setdefault(l >> 1, []).append(i)
    order = sorted(occurs, key=lambda a: (-len(occurs[a]), a))
    load = [0] * len(clauses)
    alpha: dict[int, int] = {}

    def weight(l: int, v: int) -> int:
        return v if l & 1 else 2 - v

    def search(k: int) -> bool:
        if k == len(order):
            return True
        a = order[k]
        for v in _VALUE_ORDER:
            touched = []
            ok = True
            for i in occurs[a]:
                for l in clauses[i]:
                    if l >> 1 == a:
                        w = weight(l, v)
                        load[i] += w
                        touched.append((i, w))
                        if load[i] > 2:
                            ok = False
                if not ok:
                    break
            if ok:
                alpha[a] = v
                if search(k + 1):
                    return True
                del alpha[a]
            for i, w in touched:
                load[i] -= w
        return False

    return alpha if search(0) else None


def q_horn_witness(theory: CnfTheory) -> Optional[tuple[frozenset, QhPartition]]:
    """Renaming set V and QH-partition of ``rename(theory, V)``, or ``None``."""
    alpha = q_horn_weights(theory)
    if alpha is None:
        return None
    V = frozenset(a for a, v in alpha.items() if v == 0)
    part = QhPartition(
        frozenset(a for a, v in alpha.items() if v == 1),
        frozenset(a for a, v in alpha.items() if v != 1),
    )
    assert qh_partition_check(rename(theory, V), part)
    return V, part


def is_intersection_closed(vector, n: int) -> bool:
    """Whether the set of interpretation indices marked in ``vector`` is closed under
    pairwise intersection.

    x is an intersection of members iff x equals the intersection of all members
    above it, so compute that meet for every x with a superset-sum transform.
    """
    size = 1 << n
    full = size - 1
    idx = np.arange(size, dtype=np.int64)
    meet = np.where(vector, idx, full)
    above = vector.copy()
    for i in range(n):
        bit = 1 << i
        low = idx[(idx & bit) == 0]
        meet[low] &= meet[low | bit]
        above[low] |= above[low | bit]
    bad = above & ~vector & (meet == idx)
    return not bad.any()


def is_double_horn(theory: CnfTheory, limit: int = MODEL_LIMIT) -> bool:
    """Models and non-models both closed under intersection (model-based)."""
    if len(theory.signature) > limit:
        raise ResourceLimitError(
            f"double-Horn check over {len(theory.signature)} atoms exceeds limit {limit}"
        )
    atoms, vec = model_masks(theory, theory.signature, limit)
    n = len(atoms)
    return is_intersection_closed(vec, n) and is_intersection_closed(~vec, n)


def classify(theory: CnfTheory, limit: int = MODEL_LIMIT) -> FragmentReport:
    try:
        double = is_double_horn(theory, limit)
    except ResourceLimitError:
        double = None
    return FragmentReport(
        horn=is_horn(theory),
        krom=is_krom(theory),
        renamable_horn=renamable_horn_witness(theory),
        q_horn=q_horn_witness(theory),
        double_horn=double,
    )

