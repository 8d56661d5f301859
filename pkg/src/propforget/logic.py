"""Clauses, terms, theories and the basic operations over them.

Atoms are dense integer ids interned from names.  A literal is encoded as
``2 * atom + positive`` so that sorting literal codes yields the canonical
order (atom id ascending, negative before positive) and ``lit ^ 1`` is the
complement.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import PreconditionError, ResourceLimitError

__all__ = [
    "AtomTable", "ATOMS", "atom", "atom_name", "lit", "var", "is_pos", "neg",
    "parse_literal", "literal_str", "TAUTOLOGY", "Clause", "Term", "CnfTheory",
    "DnfTheory", "normalize_clause", "clause", "term", "cnf", "dnf", "resolve",
    "subsumes", "rename", "substitute", "satisfies", "enumerate_models",
    "model_masks", "prime_implicates", "prime_implicants", "minimize",
    "dnf_to_cnf", "negate_cnf", "MODEL_LIMIT",
]

MODEL_LIMIT = 20
DISTRIBUTION_LIMIT = 20_000


class AtomTable:
    """Bijective interning of atom names to dense ids."""

    def __init__(self) -> None:
        self._ids: dict[str, int] = {}
        self._names: list[str] = []

    def intern(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            a = len(self._names)
            self._ids[name] = a
            self._names.append(name)
            return a

    def name(self, a: int) -> str:
        return self._names[a]

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids


ATOMS = AtomTable()


def atom(name: str) -> int:
    return ATOMS.intern(name)


def atom_name(a: int) -> str:
    return ATOMS.name(a)


def lit(a: int, positive: bool = True) -> int:
    return 2 * a + bool(positive)


def var(l: int) -> int:
    return l >> 1


def is_pos(l: int) -> bool:
    return bool(l & 1)


def neg(l: int) -> int:
    return l ^ 1


def parse_literal(token: str) -> int:
    """``'p'`` -> positive p, ``'-p'`` or ``'~p'`` -> negative p."""
    if token[:1] in ("-", "~"):
        return lit(atom(token[1:]), False)
    return lit(atom(token), True)


def literal_str(l: int, ascii: bool = True) -> str:
    name = atom_name(var(l))
    if is_pos(l):
        return name
    return ("-" if ascii else "¬") + name


class _Tautology:
    __slots__ = ()

    def __repr__(self) -> str:
        return "TAUTOLOGY"

    def __bool__(self) -> bool:
        return False


TAUTOLOGY = _Tautology()


def _has_complementary_pair(lits: frozenset) -> bool:
    return any(l ^ 1 in lits for l in lits if l & 1)


class _LiteralSet(frozenset):
    __slots__ = ()
    _join = " "

    def __new__(cls, lits: Iterable[int] = ()):
        s = frozenset.__new__(cls, lits)
        if _has_complementary_pair(s):
            raise ValueError(f"complementary literals in {cls.__name__}: {sorted(s)}")
        return s

    @classmethod
    def _trusted(cls, lits: Iterable[int]):
        # caller guarantees no complementary pair
        return frozenset.__new__(cls, lits)

    @property
    def literals(self) -> tuple[int, ...]:
        return tuple(sorted(self))

    def atoms(self) -> frozenset[int]:
        return frozenset(l >> 1 for l in self)

    def pos(self) -> frozenset[int]:
        return frozenset(l >> 1 for l in self if l & 1)

    def neg(self) -> frozenset[int]:
        return frozenset(l >> 1 for l in self if not l & 1)

    def complement(self) -> list[int]:
        return [l ^ 1 for l in self]

    def sort_key(self) -> tuple:
        return (len(self), self.literals)

    def tokens(self) -> list[str]:
        return [literal_str(l) for l in self.literals]

    def __repr__(self) -> str:
        body = self._symbol.join(literal_str(l, ascii=False) for l in self.literals)
        return f"{type(self).__name__}({body or self._empty})"

    def __str__(self) -> str:
        return " ".join(self.tokens()) or self._empty


class Clause(_LiteralSet):
    """A disjunction of literals; the empty clause is falsity."""

    __slots__ = ()
    _symbol = " ∨ "
    _empty = "_|_"


class Term(_LiteralSet):
    """A conjunction of literals; the empty term is truth."""

    __slots__ = ()
    _symbol = " ∧ "
    _empty = "<T>"


def normalize_clause(literals: Iterable[int]) -> Union[Clause, _Tautology]:
    s = frozenset(literals)
    if _has_complementary_pair(s):
        return TAUTOLOGY
    return Clause._trusted(s)


def _parse_tokens(spec: Union[str, Iterable]) -> list[int]:
    if isinstance(spec, str):
        return [parse_literal(t) for t in spec.split()]
    return [parse_literal(t) if isinstance(t, str) else t for t in spec]


def clause(spec: Union[str, Iterable] = ()) -> Clause:
    """Build a clause from ``"p -q r"`` or an iterable of tokens/codes."""
    return Clause(_parse_tokens(spec))


def term(spec: Union[str, Iterable] = ()) -> Term:
    return Term(_parse_tokens(spec))


class _Theory:
    __slots__ = ("_items", "_signature")
    _member: type = _LiteralSet

    def __init__(self, items: Iterable = ()) -> None:
        member = self._member
        self._items = frozenset(
            x if isinstance(x, member) else member(x) for x in items
        )
        self._signature = None

    @classmethod
    def _trusted(cls, items: Iterable):
        self = cls.__new__(cls)
        self._items = frozenset(items)
        self._signature = None
        return self

    @property
    def signature(self) -> frozenset[int]:
        if self._signature is None:
            self._signature = frozenset(l >> 1 for c in self._items for l in c)
        return self._signature

    def __iter__(self) -> Iterator:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item) -> bool:
        return item in self._items

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._items))

    def sorted(self) -> list:
        return sorted(self._items, key=_LiteralSet.sort_key)

    def __or__(self, other):
        return type(self)._trusted(self._items | frozenset(other))

    def __repr__(self) -> str:
        body = ", ".join(repr(c) for c in self.sorted())
        return f"{type(self).__name__}([{body}])"


class CnfTheory(_Theory):
    """A conjunction of clauses; the empty theory is truth."""

    __slots__ = ()
    _member = Clause

    @property
    def clauses(self) -> frozenset[Clause]:
        return self._items

    def is_bottom(self) -> bool:
        """True iff the empty clause is a member (syntactic falsity)."""
        return Clause._trusted(()) in self._items


class DnfTheory(_Theory):
    """A disjunction of terms; the empty theory is falsity."""

    __slots__ = ()
    _member = Term

    @property
    def terms(self) -> frozenset[Term]:
        return self._items

    def is_top(self) -> bool:
        return Term._trusted(()) in self._items


EMPTY_CLAUSE = Clause._trusted(())
EMPTY_TERM = Term._trusted(())


def cnf(*clauses: Union[str, Iterable]) -> CnfTheory:
    """``cnf("p q -a", "p -q")``; tautologous clauses are dropped."""
    out = []
    for spec in clauses:
        c = normalize_clause(_parse_tokens(spec))
        if c is not TAUTOLOGY:
            out.append(c)
    return CnfTheory._trusted(out)


def dnf(*terms: Union[str, Iterable]) -> DnfTheory:
    return DnfTheory(term(t) for t in terms)


def resolve(c1: Clause, c2: Clause):
    """Resolvent of two clauses, or ``None`` when they are not resolvable."""
    pivots = [l for l in c1 if l ^ 1 in c2]
    if len(pivots) != 1:
        # several clashing atoms: every candidate resolvent keeps a clashing pair
        return None
    p = pivots[0]
    return Clause._trusted((c1 | c2) - {p, p ^ 1})


def subsumes(c1: frozenset, c2: frozenset) -> bool:
    return c1 <= c2


def rename(theory: CnfTheory, atoms: Iterable[int]) -> CnfTheory:
    flip = frozenset(atoms)
    if not flip:
        return theory
    return type(theory)._trusted(
        type(c)._trusted(l ^ 1 if l >> 1 in flip else l for l in c) for c in theory
    )


def substitute(theory: CnfTheory, p: int, value: bool) -> CnfTheory:
    """``theory[p/value]`` for a CNF theory."""
    sat_lit = lit(p, value)
    dead = sat_lit ^ 1
    out = []
    for c in theory:
        if sat_lit in c:
            continue
        out.append(Clause._trusted(c - {dead}) if dead in c else c)
    return CnfTheory._trusted(out)


def satisfies(model: Iterable[int], formula) -> bool:
    """Direct evaluation of a clause, term, CNF or DNF under a set of true atoms."""
    true = model if isinstance(model, (set, frozenset)) else frozenset(model)

    def holds(l: int) -> bool:
        return ((l >> 1) in true) == bool(l & 1)

    if isinstance(formula, Clause):
        return any(holds(l) for l in formula)
    if isinstance(formula, Term):
        return all(holds(l) for l in formula)
    if isinstance(formula, DnfTheory):
        return any(all(holds(l) for l in t) for t in formula)
    return all(any(holds(l) for l in c) for c in formula)


def _check_universe(formula, universe: Iterable[int], limit: int) -> list[int]:
    atoms = sorted(set(universe))
    missing = formula.signature - set(atoms)
    if missing:
        raise PreconditionError(
            "universe misses atoms " + ", ".join(sorted(atom_name(a) for a in missing))
        )
    if len(atoms) > limit:
        raise ResourceLimitError(
            f"model enumeration over {len(atoms)} atoms exceeds limit {limit}"
        )
    return atoms


def model_masks(formula, universe: Iterable[int], limit: int = MODEL_LIMIT):
    """Boolean vector over all ``2**n`` interpretations of ``universe``.

    Bit ``i`` of an interpretation index is the truth value of the i-th atom
    of ``sorted(universe)``.  Returns ``(atoms, vector)``.
    """
    atoms = _check_universe(formula, universe, limit)
    pos_of = {a: i for i, a in enumerate(atoms)}
    idx = np.arange(1 << len(atoms), dtype=np.int64)
    is_dnf = isinstance(formula, DnfTheory)
    acc = np.zeros(idx.shape, bool) if is_dnf else np.ones(idx.shape, bool)
    for c in formula:
        pmask = nmask = 0
        for l in c:
            bit = 1 << pos_of[l >> 1]
            if l & 1:
                pmask |= bit
            else:
                nmask |= bit
        if is_dnf:
            acc |= ((idx & pmask) == pmask) & ((idx & nmask) == 0)
        else:
            acc &= ((idx & pmask) != 0) | ((~idx & nmask) != 0)
    return atoms, acc


def masks_to_interpretations(atoms: list[int], vector) -> set[frozenset[int]]:
    return {
        frozenset(a for i, a in enumerate(atoms) if m >> i & 1)
        for m in np.flatnonzero(vector).tolist()
    }


def enumerate_models(formula, universe: Iterable[int], limit: int = MODEL_LIMIT):
    """All interpretations over ``universe`` satisfying ``formula``."""
    atoms, vec = model_masks(formula, universe, limit)
    return masks_to_interpretations(atoms, vec)


def minimize(items: Iterable[frozenset]) -> list:
    """Drop members that strictly contain another member."""
    kept: list = []
    index: set = set()
    widths: set[int] = set()
    for c in sorted(set(items), key=len):
        smaller = [k for k in widths if k < len(c)]
        probes = sum(math.comb(len(c), k) for k in smaller)
        if probes < len(kept):
            hit = any(frozenset(sub) in index
                      for k in smaller for sub in itertools.combinations(c, k))
        else:
            hit = any(d <= c for d in kept)
        if not hit:
            kept.append(c)
            index.add(c)
            widths.add(len(c))
    return kept


def _saturate(clauses: Iterable[Clause]) -> list[Clause]:
    """Resolution closure with subsumption deletion; returns the minimal set."""
    kept = minimize(clauses)
    if EMPTY_CLAUSE in kept:
        return [EMPTY_CLAUSE]
    new = list(kept)
    while new:
        # resolvents between new clauses and everything kept so far
        candidates = set()
        for c in new:
            for d in kept:
                r = resolve(c, d)
                if r is not None:
                    candidates.add(r)
        fresh = []
        for r in sorted(candidates, key=len):
            if any(d <= r for d in kept) or any(d <= r for d in fresh):
                continue
            fresh.append(r)
        if not fresh:
            break
        kept = [d for d in kept if not any(r <= d for r in fresh)] + fresh
        if EMPTY_CLAUSE in fresh:
            return [EMPTY_CLAUSE]
        new = [r for r in fresh if r in set(kept)]
    return kept


def prime_implicates(theory) -> CnfTheory:
    """All prime implicates, by saturation under resolution.

    A DNF argument is first distributed into CNF.
    """
    if isinstance(theory, DnfTheory):
        theory = dnf_to_cnf(theory)
    return CnfTheory._trusted(_saturate(theory))


def _distribute(groups: list[list[int]], factory, limit: int) -> list:
    # one literal from each group, tautologies dropped, kept subsumption-minimal
    acc = [frozenset()]
    for g in sorted(groups, key=len):
        nxt = set()
        for part in acc:
            for l in g:
                if l ^ 1 in part:
                    continue
                nxt.add(part | {l})
        if len(nxt) > limit:
            raise ResourceLimitError(f"distribution exceeded {limit} members")
        acc = minimize(nxt)
    return [factory(s) for s in acc]


def dnf_to_cnf(theory: DnfTheory, limit: int = DISTRIBUTION_LIMIT) -> CnfTheory:
    """Equivalent CNF of a DNF by distribution."""
    return CnfTheory._trusted(_distribute([list(t) for t in theory], Clause._trusted, limit))


def negate_cnf(theory: CnfTheory) -> DnfTheory:
    """De Morgan: each clause becomes the term of its complemented literals."""
    return DnfTheory._trusted(minimize(Term._trusted(c.complement()) for c in theory))


def prime_implicants(theory: CnfTheory, limit: int = DISTRIBUTION_LIMIT) -> DnfTheory:
    """Prime implicants through ``t in IP(S)  iff  -t in PI(-S)``."""
    # -S is a DNF of negated clauses; its CNF picks one complemented literal per clause
    negated = _distribute([c.complement() for c in theory], Clause._trusted, limit)
    pis = _saturate(negated)
    return DnfTheory._trusted(Term._trusted(c.complement()) for c in pis)


def all_clauses(atoms: Iterable[int], max_width: int | None = None) -> Iterator[Clause]:
    """Every non-tautological clause over ``atoms`` (test and oracle helper)."""
    atoms = sorted(atoms)
    width = len(atoms) if max_width is None else max_width
    for k in range(width + 1):
        for chosen in itertools.combinations(atoms, k):
            for signs in itertools.product((0, 1), repeat=k):
                yield Clause._trusted(2 * a + s for a, s in zip(chosen, signs))
