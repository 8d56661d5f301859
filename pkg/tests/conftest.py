"""Shared generators and brute-force oracles.

The oracles here evaluate formulas literal by literal over ``itertools.product``
and do not go through the vectorised model enumeration they are used to check.
"""

import itertools
import sys
import random

import pytest

from propforget.fragments import QhPartition
from propforget.logic import Clause, CnfTheory, DnfTheory, Term, atom, cnf, rename, satisfies
from propforget.reasoning import TaskKind
from propforget.sat import entails

POOL = [atom(f"v{i}") for i in range(12)]


def interpretations(universe):
    universe = sorted(universe)
    for bits in itertools.product((False, True), repeat=len(universe)):
        yield frozenset(a for a, b in zip(universe, bits) if b)


def brute_models(formula, universe):
    return {m for m in interpretations(universe) if satisfies(m, formula)}


def brute_extension(models, V, universe):
    """Every interpretation over ``universe`` agreeing with some model outside ``V``."""
    V = frozenset(V) & frozenset(universe)
    out = set()
    for m in models:
        base = m - V
        for extra in interpretations(V):
            out.add(base | extra)
    return out


def brute_equivalent(a, b, universe):
    return brute_models(a, universe) == brute_models(b, universe)


def brute_entails(a, b, universe):
    return brute_models(a, universe) <= brute_models(b, universe)


def random_clause(rng, atoms, max_width):
    w = rng.randint(1, min(max_width, len(atoms)))
    return Clause(2 * a + rng.randint(0, 1) for a in rng.sample(atoms, w))


def random_cnf(rng, n_atoms=8, max_clauses=12, max_width=4, min_clauses=0):
    atoms = POOL[:n_atoms]
    k = rng.randint(min_clauses, max_clauses)
    return CnfTheory(random_clause(rng, atoms, max_width) for _ in range(k))


def random_horn(rng, n_atoms=8, max_clauses=12, max_width=4):
    atoms = POOL[:n_atoms]
    out = []
    for _ in range(rng.randint(0, max_clauses)):
        w = rng.randint(1, max_width)
        chosen = rng.sample(atoms, w)
        head = rng.random() < 0.7
        out.append(Clause(2 * a + (head and i == 0) for i, a in enumerate(chosen)))
    return CnfTheory(out)


def random_krom(rng, n_atoms=8, max_clauses=12):
    return random_cnf(rng, n_atoms, max_clauses, max_width=2)


def random_dnf(rng, n_atoms=6, max_terms=5, max_width=3):
    atoms = POOL[:n_atoms]
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        w = rng.randint(1, min(max_width, n_atoms))
        terms.append(Term(2 * a + rng.randint(0, 1) for a in rng.sample(atoms, w)))
    return DnfTheory(terms)


def random_subset(rng, atoms, max_size):
    return frozenset(rng.sample(list(atoms), rng.randint(0, min(max_size, len(atoms)))))


@pytest.fixture
def rng():
    return random.Random(20240611)


# the two theories of the unfolding walkthrough
UNFOLD_PI = cnf("p q -a", "p -q", "b -p", "c -p")
UNFOLD_SIGMA = cnf("p -a", "p -q -b", "q -p", "c -p")


def blowup_family(n):
    """Horn family whose forgetting of q1..qn has 2**n prime clauses (rr_i stands for r_i')."""
    lines = ["p " + " ".join(f"-q{i}" for i in range(1, n + 1))]
    for i in range(1, n + 1):
        lines += [f"q{i} -r{i}", f"q{i} -rr{i}"]
    return cnf(*lines)


def random_q_horn(rng, n=7, k=9):
    """A theory with a known renaming and QH-partition."""
    atoms = POOL[:n]
    Q = random_subset(rng, atoms, 4)
    H = [x for x in atoms if x not in Q]
    out = []
    for _ in range(rng.randint(1, k)):
        if Q and (not H or rng.random() < 0.5):
            qs = rng.sample(sorted(Q), rng.randint(1, min(2, len(Q))))
            hs = rng.sample(H, rng.randint(0, min(2, len(H))))
            lits = [2 * x + rng.randint(0, 1) for x in qs] + [2 * x for x in hs]
        else:
            hs = rng.sample(H, rng.randint(1, min(3, len(H))))
            lits = [2 * x + (i == 0 and rng.random() < 0.6) for i, x in enumerate(hs)]
        out.append(Clause(lits))
    V0 = random_subset(rng, atoms, n)
    return rename(CnfTheory(out), V0), V0, QhPartition(Q, H)


def brute_task(task, pi, sigma, V):
    universe = sorted(pi.signature | (sigma.signature if sigma is not None else set()) | V)
    mp = brute_models(pi, universe)
    fp = brute_extension(mp, V, universe)
    if task is TaskKind.VAR_IND:
        return fp == mp
    ms = brute_models(sigma, universe)
    fs = brute_extension(ms, V, universe)
    return {
        TaskKind.VAR_WEAK: mp <= fs,
        TaskKind.VAR_STRONG: fs <= mp,
        TaskKind.VAR_MATCH: fs == mp,
        TaskKind.VAR_ENT: fp <= fs,
        TaskKind.VAR_EQ: fp == fs,
    }[task]


def certificate_ok(verdict, pi, sigma, V):
    """The countermodel sits in the left-hand side and falsifies the reported clause."""
    cert = verdict.certificate
    m, c = cert.countermodel, cert.clause
    if m is None or c is None or satisfies(m, c):
        return False
    universe = sorted(pi.signature | (sigma.signature if sigma is not None else set()) | V)
    left = {"forget(P,V) |= P": pi, "forget(S,V) |= P": sigma, "P |= forget(S,V)": pi,
            "forget(P,V) |= forget(S,V)": pi, "forget(S,V) |= forget(P,V)": sigma}[cert.direction]
    in_left = m in brute_extension(brute_models(left, universe), V, universe)
    right = {"forget(P,V) |= P": None, "forget(S,V) |= P": None}.get(cert.direction, "forgotten")
    if right == "forgotten":
        # the clause must be a V-free consequence of the right-hand theory
        src = sigma if "forget(S,V)" in cert.direction.split("|=")[1] else pi
        return in_left and not (c.atoms() & V) and entails(src, c)
    return in_left


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
