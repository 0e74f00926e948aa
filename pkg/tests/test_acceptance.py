"""Acceptance criteria. Each test records one PASS/FAIL line, printed at the end of the run.

Run alone with ``pytest tests/test_acceptance.py -v`` (or ``python tests/test_acceptance.py``).
"""
import time
from fractions import Fraction
from math import ceil

import pytest

from prismdom.graph import (complete, cycle, banner_graph, gadget_graph, max_degree, random_graph,
                            star)
from prismdom.prism import Permutation, build_prism, parse_permutation
from prismdom.solver import (Proportion, check_profile, coverage_profile, gamma, gamma_p,
                             gamma_p_from_profile, gamma_p_many, gamma_p_oracle)
from prismdom.sweep import Classification, Mode, classify, enumerate_permutations, sample_permutations
from prismdom.verify import (Verdict, audit_T, case_iii_permutations, check_prop7_preconditions,
                             find_T, prop7_case, recheck, verify_gu_bound, verify_prop1, verify_prop2,
                             verify_prop3, verify_prop4, verify_prop5, verify_prop6, verify_prop7)

from conftest import all_graphs

RESULTS: list[str] = []
DENSITIES = ("1/4", "1/3", "1/2", "2/3")
AC1_PS = [Proportion(p) for p in ("1/4", "1/3", "1/2", "2/3", "3/4", "1")]


def record(tag: str, ok: bool, text: str, started: float, limit: float) -> None:
    elapsed = time.perf_counter() - started
    ok = ok and elapsed < limit
    RESULTS.append(f"{tag} {'PASS' if ok else 'FAIL'}  {text}  [{elapsed:.1f}s, limit {limit:.0f}s]")
    assert ok, RESULTS[-1]


def ac1_corpus():
    return [random_graph(1 + i % 10, seed=i, density=DENSITIES[i % 4]) for i in range(200)]


def ac2_corpus():
    return [g for n in range(1, 5) for g in all_graphs(n)]


def test_ac01_oracle_equivalence():
    t0 = time.perf_counter()
    bad = [(g.edges(), str(p)) for g in ac1_corpus() for p in AC1_PS if gamma_p(g, p) != gamma_p_oracle(g, p)]
    record("AC01", not bad, f"gamma_p == oracle on 200 seeded graphs x 6 proportions; mismatches={len(bad)}",
           t0, 120)


def test_ac02_prop5_sandwich_all_small_graphs():
    t0 = time.perf_counter()
    checked = violations = 0
    for g in ac2_corpus():
        for pi in enumerate_permutations(g.n):
            rep = verify_prop5(g, pi)
            checked += rep.checked
            violations += len(rep.certificates)
    record("AC02", violations == 0,
           f"gamma_p(G) <= gamma_p(piG) <= 2 gamma_p(G) at {checked} (G, pi, breakpoint) triples; "
           f"violations={violations}", t0, 300)


def test_ac03_gamma_sandwich_all_small_graphs():
    t0 = time.perf_counter()
    checked = violations = 0
    for g in ac2_corpus():
        for pi in enumerate_permutations(g.n):
            rep = verify_gu_bound(g, pi)
            checked += 1
            violations += len(rep.certificates)
            # second route through the partial solver at p=1
            value = gamma_p(build_prism(g, pi).combined, 1)
            violations += not gamma_p(g, 1) <= value <= 2 * gamma_p(g, 1)
    record("AC03", violations == 0, f"gamma(G) <= gamma(piG) <= 2 gamma(G) on {checked} (G, pi); "
                                    f"violations={violations}", t0, 300)


def test_ac04_prop1_stars_and_complete_graphs():
    t0 = time.perf_counter()
    failures = []
    for n in range(4, 8):
        for g, name in ((star(n), f"star({n})"), (complete(n), f"K{n}")):
            rep = verify_prop1(g, Mode.exhaustive())
            if rep.verdict is not Verdict.HOLDS or rep.checked != len(list(enumerate_permutations(n))):
                failures.append(f"{name}: {rep.verdict.value}")
                continue
            t = Proportion(n + 1, 2 * n)
            labels = rep.details["classification"]
            want = {p: ("Fixer" if Fraction(p) <= t else "Doubler") for p in labels}
            if labels != want:
                failures.append(f"{name}: labels {labels}")
            if classify(g, t, Mode.exhaustive()) is not Classification.FIXER:
                failures.append(f"{name}: not Fixer at {t}")
            if classify(g, 1, Mode.exhaustive()) is not Classification.DOUBLER:
                failures.append(f"{name}: not Doubler at 1")
    record("AC04", not failures, f"step at (n+1)/(2n), Fixer below / Doubler above, n=4..7; "
                                 f"failures={failures}", t0, 600)


def test_ac05_prop3_paths_and_cycles():
    t0 = time.perf_counter()
    failures = []
    for family in ("path", "cycle"):
        for n in range(3, 8):
            rep = verify_prop3(family, n, Mode.exhaustive())
            if rep.verdict is not Verdict.HOLDS or rep.details["gamma"] != ceil(n / 3):
                failures.append(f"{family}({n}): {rep.verdict.value} gamma={rep.details.get('gamma')}")
    record("AC05", not failures, f"gamma_(n+ceil(n/3))/2n(piG) = ceil(n/3) for P_n, C_n, n=3..7, all pi; "
                                 f"failures={failures}", t0, 600)


def test_ac06_prop2_random_graphs():
    t0 = time.perf_counter()
    violations = checked = 0
    for i in range(100):
        g = random_graph(1 + i % 8, seed=1000 + i, density=DENSITIES[i % 4])
        for pi in sample_permutations(g.n, 50, seed=i):
            rep = verify_prop2(g, pi)
            checked += 1
            violations += not rep.holds
    record("AC06", violations == 0, f"gamma_p(piG) <= gamma(G) at p=(n+gamma)/2n over {checked} (G, pi); "
                                    f"violations={violations}", t0, 300)


def test_ac07_prop6_intervals(two_stars):
    t0 = time.perf_counter()
    outcomes = []
    for g, m in ((cycle(6), {0, 3}), (two_stars, {0, 4})):
        rep = verify_prop6(g, m, Mode.sampled(100, 6))
        outcomes.append(rep.verdict is Verdict.HOLDS and rep.checked == 100)
    record("AC07", all(outcomes), f"c_i(piG) = i(Delta+2) and gamma_p steps on both instances, 100 pi each; "
                                  f"ok={outcomes}", t0, 120)


def test_ac08_prop7_find_T(gadget, two_gadgets):
    t0 = time.perf_counter()
    failures = []
    counted_iii = 0
    for g, m in ((gadget, {0, 1}), (two_gadgets, {0, 1, 5, 6})):
        pairing = check_prop7_preconditions(g, m)
        swap = list(range(g.n))
        for a, b in pairing.pairs:
            swap[a], swap[b] = b, a
        iii = case_iii_permutations(pairing, g.n, 20, seed=8)
        counted_iii += len(iii)
        if g.n == 10 and len(iii) < 20:
            failures.append("fewer than 20 case (iii) permutations")
        for pi in [Permutation.identity(g.n), Permutation(tuple(swap))] + iii:
            case = prop7_case(pairing, pi)
            t = find_T(g, pairing, pi)
            delta, _ = max_degree(g)
            if len(t) != len(m) or audit_T(build_prism(g, pi), t, delta):
                failures.append(f"bad T {sorted(t)} for {pi.image}")
            rep = verify_prop7(g, m, pi)
            if not rep.holds or rep.details["case"] != case:
                failures.append(f"{pi.image}: {rep.verdict.value}")
    record("AC08", not failures, f"find_T audited and intervals hold for identity, pair swap and "
                                 f"{counted_iii} case-(iii) permutations; failures={failures[:3]}", t0, 120)


def test_ac09_banner():
    t0 = time.perf_counter()
    g = banner_graph()
    pr = build_prism(g, parse_permutation("(2 3 4)", 5, one_indexed=True))
    ok = (pr.combined.n, pr.combined.m) == (10, 15) and gamma(g) == 2 == gamma_p_oracle(g, 1)
    record("AC09", ok, f"banner prism has {pr.combined.n} vertices, {pr.combined.m} edges; gamma(G)={gamma(g)}",
           t0, 10)


def test_ac10_prop4_biconditional():
    t0 = time.perf_counter()
    graphs = []
    i = 0
    while len(graphs) < 500:
        g = random_graph(2 + i % 5, seed=5000 + i, density=DENSITIES[i % 4])
        if g.is_connected():
            graphs.append((i, g))
        i += 1
    tally = {r: {"holds": 0, "counterexample": 0, "sufficiency": 0, "necessity": 0} for r in ("first", "exists")}
    bad_certs = 0
    for idx, g in graphs:
        for pi in sample_permutations(g.n, 20, seed=idx):
            rep = verify_prop4(g, pi)
            for name, entry in rep.details["readings"].items():
                tally[name]["holds" if entry["agree"] else "counterexample"] += 1
                if not entry["agree"]:
                    tally[name][entry["direction"]] += 1
            bad_certs += sum(not recheck(c) for c in rep.certificates)
    ok = all(t["sufficiency"] == 0 for t in tally.values()) and bad_certs == 0
    record("AC10", ok, f"{len(graphs)} connected graphs x 20 pi; partition {tally}; "
                       f"non-replaying certificates={bad_certs}", t0, 600)


def test_ac11_profile_invariants():
    t0 = time.perf_counter()
    problems = 0
    checked = 0
    corpus = ac1_corpus() + ac2_corpus()
    corpus += [build_prism(g, pi).combined for g in ac2_corpus() for pi in enumerate_permutations(g.n)]
    for g in corpus:
        prof = coverage_profile(g)
        problems += bool(check_profile(g, prof))
        bps = prof.breakpoints()
        direct = gamma_p_many(g, bps)
        for p in bps:
            checked += 1
            problems += gamma_p_from_profile(prof, p, g.n) != direct[p] or gamma_p(g, p) != direct[p]
    record("AC11", problems == 0, f"profile invariants and profile lookup == gamma_p on {len(corpus)} graphs, "
                                  f"{checked} breakpoints; problems={problems}", t0, 300)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
