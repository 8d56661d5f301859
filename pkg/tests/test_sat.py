import pytest

from propforget.errors import PreconditionError
from propforget.logic import CnfTheory, atom, clause, cnf, satisfies
from propforget.sat import dpll_sat, entails, horn_sat, solve, two_sat

from conftest import POOL, brute_models, random_cnf, random_horn, random_krom

p, q, r = atom("p"), atom("q"), atom("r")


class TestHornSat:
    def test_unsat_chain(self):
        assert not horn_sat(cnf("p", "-p q", "-q")).satisfiable

    def test_least_model_empty(self):
        res = horn_sat(cnf("-p q"))
        assert res.satisfiable and res.model == frozenset()

    def test_propagation_chain(self):
        assert horn_sat(cnf("p", "-p q")).model == {p, q}

    def test_non_horn_rejected_naming_clause(self):
        with pytest.raises(PreconditionError, match="p ∨ q"):
            horn_sat(cnf("p q"))

    def test_least_model_is_intersection_of_models(self, rng):
        universe = POOL[:7]
        for _ in range(300):
            t = random_horn(rng, 7, 10)
            models = brute_models(t, universe)
            res = horn_sat(t)
            assert res.satisfiable == bool(models)
            if models:
                assert res.model == frozenset.intersection(*models)


class TestTwoSat:
    def test_all_four_clauses_unsat(self):
        assert not two_sat(cnf("p q", "-p q", "p -q", "-p -q")).satisfiable

    def test_single_clause(self):
        assert two_sat(cnf("p q")).satisfiable

    def test_three_atoms(self):
        t = cnf("p1 p2", "-p1 p3", "-p2 -p3")
        universe = [atom("p1"), atom("p2"), atom("p3")]
        # enumerating the eight assignments leaves {p1,p3} and {p2}
        assert brute_models(t, universe) == {frozenset({atom("p1"), atom("p3")}), frozenset({atom("p2")})}
        res = two_sat(t)
        assert res.satisfiable and satisfies(res.model, t)

    def test_rejects_wide_clause(self):
        with pytest.raises(PreconditionError):
            two_sat(cnf("p q r"))

    def test_empty_clause(self):
        assert not two_sat(CnfTheory([clause()])).satisfiable


class TestDpll:
    def test_contradiction(self):
        assert not dpll_sat(cnf("p", "-p")).satisfiable

    def test_empty_theory(self):
        res = dpll_sat(CnfTheory())
        assert res.satisfiable and res.model == frozenset()

    def test_forced(self):
        assert dpll_sat(cnf("p q r", "-p", "-q")).model == {r}

    def test_deterministic(self, rng):
        for _ in range(20):
            t = random_cnf(rng, 8, 12)
            assert dpll_sat(t) == dpll_sat(t)


def test_engines_agree_with_enumeration(rng):
    universe = POOL[:10]
    for i in range(400):
        kind = i % 3
        if kind == 0:
            t = random_horn(rng, 10, 14)
        elif kind == 1:
            t = random_krom(rng, 10, 14)
        else:
            t = random_cnf(rng, 10, 14)
        expected = bool(brute_models(t, universe))
        results = [dpll_sat(t), solve(t)]
        if kind == 0:
            results.append(horn_sat(t))
        if kind == 1:
            results.append(two_sat(t))
        for res in results:
            assert res.satisfiable == expected
            if res.satisfiable:
                assert satisfies(res.model, t)


class TestEntails:
    def test_blowup_family_member(self):
        pi = cnf("p -q1 -q2", "q1 -r1", "q1 -rr1", "q2 -r2", "q2 -rr2")
        assert entails(pi, clause("-r1 -rr2 p"))

    def test_trivial(self):
        assert entails(cnf("p"), clause("p q"))
        assert not entails(cnf("p q"), clause("p"))

    def test_empty_clause_means_unsat(self):
        assert entails(cnf("p", "-p"), clause())
        assert not entails(cnf("p"), clause())

    def test_matches_model_containment(self, rng):
        universe = POOL[:6]
        for _ in range(300):
            t = random_cnf(rng, 6, 8)
            c = next(iter(random_cnf(rng, 6, 1, 3, min_clauses=1)))
            models = brute_models(t, universe)
            assert entails(t, c) == all(satisfies(m, c) for m in models)
