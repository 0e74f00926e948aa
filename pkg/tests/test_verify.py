from fractions import Fraction

import pytest

from prismdom.graph import Graph, complete, cycle, path, random_graph, star
from prismdom.prism import Permutation, build_prism
from prismdom.solver import Proportion, gamma_p
from prismdom.sweep import Mode
from prismdom.verify import (Certificate, FindTError, Prop7CaseError, Prop7PreconditionError,
                             Verdict, audit_T, case_iii_permutations, check_prop6_preconditions,
                             check_prop7_preconditions, find_T, interval_points, over_permutations,
                             prop7_case, recheck, verify_gu_bound, verify_prop1, verify_prop2,
                             verify_prop3, verify_prop4, verify_prop5, verify_prop6, verify_prop7,
                             verify_remark)

ID = Permutation.identity


def test_interval_points():
    pts = interval_points(Fraction(0), Fraction(5, 8), 8)
    assert pts[-1] == Fraction(5, 8) and all(0 < p <= Fraction(5, 8) for p in pts)
    assert pts[0] <= Fraction(1, 8)
    hi = interval_points(Fraction(5, 8), Fraction(1), 8)
    assert Fraction(5, 8) < hi[0] < Fraction(6, 8) and hi[-1] == 1
    with pytest.raises(ValueError):
        interval_points(Fraction(1, 2), Fraction(1, 2), 4)


class TestProp1:
    def test_star4(self):
        r = verify_prop1(star(4), Mode.exhaustive())
        assert r.verdict is Verdict.HOLDS and r.checked == 24
        assert r.details["threshold"] == "5/8"
        assert r.details["classification"]["5/8"] == "Fixer"
        assert r.details["classification"]["1/1"] == "Doubler"

    def test_complete5(self):
        r = verify_prop1(complete(5), Mode.exhaustive())
        assert r.holds and r.details["threshold"] == "3/5"

    def test_unmet(self):
        assert verify_prop1(path(4)).verdict is Verdict.UNMET
        assert verify_prop1(complete(1)).verdict is Verdict.UNMET
        assert verify_prop1(Graph.from_edges(3, [(0, 1)])).verdict is Verdict.UNMET


def test_prop1_witness_pair_can_fail_while_claim_holds():
    # {v, pi(v)} need not dominate: star(4), pi swaps the centre with leaf 1
    pi = Permutation((1, 0, 2, 3))
    pr = build_prism(star(4), pi)
    from prismdom.graph import coverage
    assert coverage(pr.combined, {0, 4 + pi(0)}) < 8
    assert gamma_p(pr.combined, 1) == 2


def test_prop2():
    r = verify_prop2(path(6), ID(6))
    assert r.holds and r.instance["p"] == "2/3" and r.details["gamma"] == 2
    for pi in [ID(3), Permutation((2, 0, 1))]:
        assert verify_prop2(complete(3), pi).holds
    g = random_graph(8, seed=1, density="1/2")
    assert over_permutations("prop2", lambda q: verify_prop2(g, q), g, Mode.sampled(30, 4)).holds


def test_prop3():
    r = verify_prop3("path", 6, Mode.exhaustive())
    assert r.holds and r.checked == 720 and r.instance["p"] == "2/3"
    r = verify_prop3("cycle", 5, Mode.exhaustive())
    assert r.holds and r.checked == 120 and r.instance["p"] == "7/10"
    r = verify_prop3("path", 2, Mode.exhaustive())
    assert r.holds and r.instance["p"] == "3/4"
    assert verify_prop3("cycle", 2).verdict is Verdict.UNMET


def test_remark():
    assert verify_remark(complete(4), Permutation((3, 2, 1, 0))).details["lhs"] is True
    r = verify_remark(path(6), ID(6))
    assert r.holds and r.details["lhs"] is False and r.details["rhs"] is False
    r = verify_remark(complete(1), ID(1))
    assert r.holds and r.details["lhs"] and r.instance["p"] == "1/1"


def test_prop4():
    r = verify_prop4(path(4), Permutation((1, 3, 0, 2)))
    assert r.holds and r.details["readings"]["first"]["condition"]
    r = verify_prop4(complete(4), ID(4))
    assert r.holds and not r.details["readings"]["first"]["lhs"]
    r = verify_prop4(cycle(9), ID(9))
    first = r.details["readings"]["first"]
    assert r.instance["p"] == "2/3" and first["i"] == 2 and not first["condition"]
    assert r.holds


def test_prop4_necessity_counterexample_rechecks():
    # spider with centre 4 (gamma=3, Delta=3); pi makes i=2 at the centre, yet another pair covers n+gamma=9
    g = Graph.from_edges(6, [(0, 3), (1, 2), (2, 4), (3, 4), (4, 5)])
    r = verify_prop4(g, Permutation((2, 5, 0, 1, 3, 4)))
    assert r.verdict is Verdict.COUNTEREXAMPLE
    for reading in ("first", "exists"):
        entry = r.details["readings"][reading]
        assert (entry["u"], entry["i"], entry["condition"], entry["lhs"]) == (4, 2, False, True)
        assert entry["direction"] == "necessity"
    assert len(r.certificates) == 2 and all(recheck(c) for c in r.certificates)
    assert r.to_dict()["certificate"]["predicted"] == "!= 2"


def test_prop5_and_gu():
    for pi in [ID(5), Permutation((4, 3, 2, 1, 0))]:
        g = random_graph(5, seed=2, density="1/2")
        assert verify_prop5(g, pi).holds
        assert verify_gu_bound(g, pi).holds
    r = verify_prop5(complete(1), ID(1), grid=["1/3", "1"])
    assert r.holds and r.checked == 2
    g = random_graph(7, seed=3, density="1/2")
    assert over_permutations("prop5", lambda q: verify_prop5(g, q), g, Mode.sampled(30, 0)).holds


def test_recheck_rejects_bogus_certificate():
    cert = Certificate(path(3), ID(3), Proportion(1), "prism", "==", 2, 2)
    assert not recheck(cert)
    cert = Certificate(path(3), ID(3), Proportion(1), "prism", "==", 3, 2)
    assert recheck(cert)


def test_prop6_preconditions(two_stars):
    assert check_prop6_preconditions(two_stars, {0, 4})
    assert check_prop6_preconditions(cycle(6), {0, 3})
    assert not check_prop6_preconditions(cycle(6), {0, 2})
    assert not check_prop6_preconditions(path(4), {0, 3})


def test_prop6(two_stars):
    r = verify_prop6(cycle(6), {0, 3}, Mode.exhaustive())
    assert r.holds and r.details["points"]["1/3"] == 1 and r.details["points"]["2/3"] == 2
    r = verify_prop6(two_stars, {0, 4}, Mode.sampled(50, 1))
    assert r.holds and r.details["points"]["5/16"] == 1 and r.details["points"]["5/8"] == 2
    assert verify_prop6(cycle(6), {0, 2}).verdict is Verdict.UNMET


class TestProp7:
    def test_preconditions(self, gadget, two_gadgets, two_stars):
        assert check_prop7_preconditions(gadget, {0, 1}).pairs == ((0, 1),)
        assert check_prop7_preconditions(two_gadgets, {0, 1, 5, 6}).pairs == ((0, 1), (5, 6))
        with pytest.raises(Prop7PreconditionError):
            check_prop7_preconditions(two_stars, {0, 4})
        with pytest.raises(Prop7PreconditionError):
            check_prop7_preconditions(gadget, {0, 2})
        with pytest.raises(Prop7PreconditionError):
            check_prop7_preconditions(gadget, {0, 1, 2})
        # c4: the two opposite vertices share two neighbours
        with pytest.raises(Prop7PreconditionError):
            check_prop7_preconditions(cycle(4), {0, 2})

    def test_case_i(self, gadget):
        pairing = check_prop7_preconditions(gadget, {0, 1})
        assert find_T(gadget, pairing, ID(5)) == {0, 5 + 1}

    def test_case_ii(self, gadget):
        pairing = check_prop7_preconditions(gadget, {0, 1})
        pi = Permutation((1, 0, 2, 3, 4))
        assert prop7_case(pairing, pi) == "pair-swap"
        assert find_T(gadget, pairing, pi) in ({0, 5}, {1, 6})

    def test_two_gadgets(self, two_gadgets):
        pairing = check_prop7_preconditions(two_gadgets, {0, 1, 5, 6})
        t = find_T(two_gadgets, pairing, ID(10))
        assert len(t) == 4
        pr = build_prism(two_gadgets, ID(10))
        closed = pr.combined.closed_masks
        for a in t:
            for b in t:
                if a < b:
                    assert not closed[a] & closed[b]
        assert not audit_T(pr, t, 2)

    def test_case_guard(self, gadget):
        pairing = check_prop7_preconditions(gadget, {0, 1})
        bad = Permutation((2, 1, 0, 3, 4))
        assert prop7_case(pairing, bad) is None
        with pytest.raises(Prop7CaseError):
            find_T(gadget, pairing, bad)
        assert verify_prop7(gadget, {0, 1}, bad).verdict is Verdict.UNMET

    def test_verify(self, gadget):
        r = verify_prop7(gadget, {0, 1}, ID(5))
        assert r.holds and r.details["case"] == "identity"
        assert r.details["points"]["2/5"] == 1 and r.details["points"]["4/5"] == 2
        r = verify_prop7(gadget, {0, 1}, Permutation((1, 0, 2, 3, 4)))
        assert r.holds and r.details["case"] == "pair-swap"

    def test_case_iii_generation(self, gadget, two_gadgets):
        pairing = check_prop7_preconditions(gadget, {0, 1})
        assert len(case_iii_permutations(pairing, 5, 20)) == 5
        pairing = check_prop7_preconditions(two_gadgets, {0, 1, 5, 6})
        perms = case_iii_permutations(pairing, 10, 20, seed=3)
        assert len(perms) == 20 and all(prop7_case(pairing, p) == "iii" for p in perms)

    def test_audit_catches_bad_T(self, gadget):
        pr = build_prism(gadget, ID(5))
        assert audit_T(pr, {0, 5}, 2)   # 0 and its twin are adjacent
        assert audit_T(pr, {0, 1}, 2)   # share c
        assert not audit_T(pr, {0, 6}, 2)

    def test_find_t_error_carries_partial(self):
        err = FindTError("x", frozenset({1}))
        assert err.partial == {1}
