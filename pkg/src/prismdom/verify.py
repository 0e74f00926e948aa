"""Machine checks of the partial-domination results for prisms.

Each ``verify_*`` returns a :class:`VerificationReport`. A counterexample
always carries a :class:`Certificate` that :func:`recheck` can replay from
scratch with a fresh solver run.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import ceil
from typing import Callable, Iterable

import numpy as np

from .graph import (Graph, GraphError, SplitMix64, coverage_mask, from_mask, generate_family,
                    is_independent, max_degree, to_mask)
from .prism import Permutation, PrismGraph, build_prism, compute_i
from .solver import (Proportion, as_proportion, coverage_profile, gamma, gamma_p, gamma_p_many,
                     min_dominating_set, min_p_dominating_set)
from .sweep import Mode, permutation_matrix, prism_min_k, prism_profiles

CLAIMS = ("prop1", "prop2", "prop3", "prop4", "prop5", "prop6", "prop7", "remark", "gu-bound")


class Verdict(str, Enum):
    HOLDS = "holds"
    COUNTEREXAMPLE = "counterexample"
    UNMET = "preconditions-unmet"


_RELATIONS: dict[str, Callable[[int, int], bool]] = {
    "==": operator.eq, "!=": operator.ne, "<=": operator.le, ">=": operator.ge,
}


@dataclass
class Certificate:
    """The claim predicted ``value <relation> expected``; the solver computed ``computed``.

    ``target`` is "prism" for gamma_p(piG) and "base" for gamma_p(G).
    """

    graph: Graph
    pi: Permutation | None
    p: Proportion
    target: str
    relation: str
    expected: int
    computed: int
    witnesses: dict[str, frozenset[int]] = field(default_factory=dict)
    note: str = ""

    def to_dict(self, one_indexed: bool = False) -> dict:
        s = 1 if one_indexed else 0
        return {
            "graph": {"n": self.graph.n, "m": self.graph.m,
                      "edges": [[u + s, v + s] for u, v in self.graph.edges()]},
            "permutation": self.pi.format_line(one_indexed) if self.pi else None,
            "p": str(self.p),
            "target": self.target,
            "predicted": f"{self.relation} {self.expected}",
            "computed": self.computed,
            "witnesses": {k: sorted(v + s for v in w) for k, w in self.witnesses.items()},
            "note": self.note,
        }


def recheck(cert: Certificate) -> bool:
    """True iff a fresh solver run reproduces the discrepancy."""
    if cert.target == "prism":
        value = gamma_p(build_prism(cert.graph, cert.pi).combined, cert.p)
    else:
        value = gamma_p(cert.graph, cert.p)
    return value == cert.computed and not _RELATIONS[cert.relation](value, cert.expected)


@dataclass
class VerificationReport:
    claim: str
    instance: dict
    verdict: Verdict
    mode: Mode | None = None
    certificates: list[Certificate] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    checked: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_dict(self, one_indexed: bool = False) -> dict:
        return {
            "claim": self.claim,
            "instance": self.instance,
            "mode": self.mode.to_dict() if self.mode else None,
            "verdict": self.verdict.value,
            "checked": self.checked,
            "certificate": self.certificates[0].to_dict(one_indexed) if self.certificates else None,
            "counterexamples": len(self.certificates),
            "details": self.details,
        }


def describe(g: Graph, source: str | None = None) -> dict:
    out = {"n": g.n, "m": g.m, "edges": [list(e) for e in g.edges()]}
    if source:
        out["source"] = source
    return out


def _report(claim, g, certs, checked, mode=None, pi=None, details=None, **instance) -> VerificationReport:
    inst = {"graph": describe(g)}
    if pi is not None:
        inst["pi"] = pi.format_line()
    inst.update({k: (str(v) if isinstance(v, Fraction) else v) for k, v in instance.items()})
    verdict = Verdict.COUNTEREXAMPLE if certs else Verdict.HOLDS
    return VerificationReport(claim, inst, verdict, mode, certs, details or {}, checked)


def _unmet(claim, g, reason, mode=None, pi=None) -> VerificationReport:
    inst = {"graph": describe(g)}
    if pi is not None:
        inst["pi"] = pi.format_line()
    return VerificationReport(claim, inst, Verdict.UNMET, mode, details={"reason": reason})


def interval_points(lo: Fraction, hi: Fraction, order: int) -> list[Proportion]:
    """Just above ``lo``, the midpoint, and ``hi`` for the half-open interval (lo, hi].

    The first point sits closer to ``lo`` than any ratio c/order other than lo
    itself, so it lands on the first step of any gamma_p on ``order`` vertices.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi}]")
    step = min((hi - lo) / 2, Fraction(1, 2 * order * lo.denominator))
    return sorted({Proportion(lo + step), Proportion((lo + hi) / 2), Proportion(hi)})


def _perms(mode: Mode, n: int) -> list[Permutation]:
    return list(mode.permutations(n))


def _prism_values(g: Graph, perms: list[Permutation], ps, jobs: int) -> tuple[list[Proportion], np.ndarray]:
    return prism_min_k(g, permutation_matrix(perms), ps, jobs)


# -- Prop 1 / Corollary ---------------------------------------------------------

def verify_prop1(g: Graph, mode: Mode | None = None, jobs: int = 1) -> VerificationReport:
    """gamma=1 graphs: gamma_p(piG) is 1 up to (n+1)/(2n) and 2 beyond, for every pi."""
    mode = mode or Mode.default_for(g.n)
    if g.n < 1 or not g.is_connected() or g.has_isolated_vertex():
        return _unmet("prop1", g, "graph must be connected without isolated vertices", mode)
    gam, _ = min_dominating_set(g)
    if gam != 1:
        return _unmet("prop1", g, f"gamma(G)={gam}, not 1", mode)
    n = g.n
    t = Fraction(n + 1, 2 * n)
    low = interval_points(Fraction(0), t, 2 * n)
    high = interval_points(t, Fraction(1), 2 * n)
    expected = {p: 1 for p in low} | {p: 2 for p in high}

    perms = _perms(mode, n)
    props, values = _prism_values(g, perms, expected, jobs)
    profiles = prism_profiles(g, permutation_matrix(perms), jobs)
    base = gamma_p_many(g, props)

    certs = []
    for row, pi in enumerate(perms):
        for col, p in enumerate(props):
            if values[row, col] != expected[p]:
                certs.append(Certificate(g, pi, p, "prism", "==", expected[p], int(values[row, col])))
        c1, c2 = profiles[row, 1], profiles[row, 2]
        if c1 != n + 1:
            certs.append(Certificate(g, pi, Proportion(t), "prism", "==", 1,
                                     gamma_p(build_prism(g, pi).combined, t), note=f"profile c1={c1}"))
        elif c2 != 2 * n:
            certs.append(Certificate(g, pi, Proportion(1), "prism", "==", 2,
                                     gamma_p(build_prism(g, pi).combined, 1), note=f"profile c2={c2}"))
    labels = {}
    for col, p in enumerate(props):
        col_vals = set(values[:, col].tolist())
        if col_vals == {base[p]}:
            labels[str(p)] = "Fixer"
        elif col_vals == {2 * base[p]}:
            labels[str(p)] = "Doubler"
        else:
            labels[str(p)] = "Neither"
    details = {"threshold": str(t), "classification": labels,
               "points": {str(p): expected[p] for p in props}}
    return _report("prop1", g, certs, len(perms), mode, details=details)


# -- Prop 2 ---------------------------------------------------------------------

def prop2_proportion(n: int, gam: int) -> Proportion:
    return Proportion(n + gam, 2 * n)


def verify_prop2(g: Graph, pi: Permutation) -> VerificationReport:
    gam, gset = min_dominating_set(g)
    p = prop2_proportion(g.n, gam)
    pr = build_prism(g, pi)
    value, wit = min_p_dominating_set(pr.combined, p)
    certs = []
    if value > gam:
        certs.append(Certificate(g, pi, p, "prism", "<=", gam, value,
                                 {"gamma_set": gset}, note="gamma-set of G should already suffice"))
    return _report("prop2", g, certs, 1, pi=pi, p=p,
                   details={"gamma": gam, "gamma_p_prism": value,
                            "gamma_set_coverage_in_prism": coverage_mask(pr.combined, gset).bit_count()})


# -- Prop 3 ---------------------------------------------------------------------

def verify_prop3(family: str, n: int, mode: Mode | None = None, jobs: int = 1) -> VerificationReport:
    if family not in ("path", "cycle"):
        raise ValueError("prop3 covers paths and cycles only")
    if n < 2 or (family == "cycle" and n < 3):
        g = generate_family("path", max(n, 1))
        return _unmet("prop3", g, f"{family} needs n >= {2 if family == 'path' else 3}")
    g = generate_family(family, n)
    mode = mode or Mode.default_for(n)
    gam = gamma(g)
    formula = ceil(Fraction(n, 3))
    certs = []
    if gam != formula:
        certs.append(Certificate(g, None, Proportion(1), "base", "==", formula, gamma_p(g, 1),
                                 note="gamma(G) disagrees with ceil(n/3)"))
    p = prop2_proportion(n, gam)
    perms = _perms(mode, n)
    _, values = _prism_values(g, perms, [p], jobs)
    for row, pi in enumerate(perms):
        if values[row, 0] != gam:
            certs.append(Certificate(g, pi, p, "prism", "==", gam, int(values[row, 0])))
    return _report("prop3", g, certs, len(perms), mode, family=family, p=p,
                   details={"gamma": gam, "ceil_n_over_3": formula})


# -- Remark ---------------------------------------------------------------------

def verify_remark(g: Graph, pi: Permutation) -> VerificationReport:
    gam = gamma(g)
    p = prop2_proportion(g.n, gam)
    value = gamma_p(build_prism(g, pi).combined, p)
    lhs, rhs = value == 1, gam == 1
    certs = []
    if lhs != rhs:
        certs.append(Certificate(g, pi, p, "prism", "==" if rhs else "!=", 1, value))
    return _report("remark", g, certs, 1, pi=pi, p=p,
                   details={"lhs": lhs, "rhs": rhs, "gamma": gam, "gamma_p_prism": value})


# -- Prop 4 ---------------------------------------------------------------------

def prop4_condition(n: int, gam: int, delta: int, i: int) -> bool:
    return gam == 2 or (gam >= 3 and 2 * delta >= n + gam - 4 + i)


def verify_prop4(g: Graph, pi: Permutation) -> VerificationReport:
    """Check the iff under two readings of u_Delta: the first max-degree vertex, and any of them."""
    gam = gamma(g)
    p = prop2_proportion(g.n, gam)
    pr = build_prism(g, pi)
    value, wit = min_p_dominating_set(pr.combined, p)
    lhs = value == 2
    delta, argmax = max_degree(g)
    i_values = {u: compute_i(pr, u) for u in sorted(argmax)}
    first = min(argmax)
    conds = {u: prop4_condition(g.n, gam, delta, i) for u, i in i_values.items()}
    readings = {
        "first": (conds[first], first),
        "exists": (any(conds.values()), next((u for u in sorted(conds) if conds[u]), first)),
    }
    certs = []
    out = {}
    for name, (rhs, u) in readings.items():
        entry = {"u": u, "i": i_values[u], "condition": rhs, "lhs": lhs, "agree": lhs == rhs}
        if lhs != rhs:
            direction = "sufficiency" if rhs else "necessity"
            entry["direction"] = direction
            certs.append(Certificate(g, pi, p, "prism", "==" if rhs else "!=", 2, value,
                                     {"u_delta": frozenset({u}), "found": wit},
                                     note=f"{name} reading, {direction} fails"))
        out[name] = entry
    return _report("prop4", g, certs, 1, pi=pi, p=p,
                   details={"gamma": gam, "delta": delta, "gamma_p_prism": value, "readings": out})


# -- Prop 5 and the gamma sandwich -------------------------------------------------

def breakpoint_grid(g: Graph, pr: PrismGraph) -> list[Proportion]:
    """Every value where gamma_p(G) or gamma_p(piG) can change, including 1."""
    return sorted(set(coverage_profile(g).breakpoints()) | set(coverage_profile(pr.combined).breakpoints()))


def verify_prop5(g: Graph, pi: Permutation, grid: Iterable | None = None) -> VerificationReport:
    pr = build_prism(g, pi)
    ps = breakpoint_grid(g, pr) if grid is None else sorted({as_proportion(p) for p in grid})
    base = gamma_p_many(g, ps)
    prism = gamma_p_many(pr.combined, ps)
    certs = []
    for p in ps:
        if prism[p] < base[p]:
            certs.append(Certificate(g, pi, p, "prism", ">=", base[p], prism[p], note="lower bound"))
        if prism[p] > 2 * base[p]:
            certs.append(Certificate(g, pi, p, "prism", "<=", 2 * base[p], prism[p], note="upper bound"))
    return _report("prop5", g, certs, len(ps), pi=pi, grid=[str(p) for p in ps])


def verify_gu_bound(g: Graph, pi: Permutation) -> VerificationReport:
    """gamma(G) <= gamma(piG) <= 2 gamma(G), through the dominating-set search."""
    gam = gamma(g)
    value = gamma(build_prism(g, pi).combined)
    certs = []
    one = Proportion(1)
    if value < gam:
        certs.append(Certificate(g, pi, one, "prism", ">=", gam, value))
    if value > 2 * gam:
        certs.append(Certificate(g, pi, one, "prism", "<=", 2 * gam, value))
    return _report("gu-bound", g, certs, 1, pi=pi, details={"gamma": gam, "gamma_prism": value})


# -- Prop 6 ---------------------------------------------------------------------

def check_prop6_preconditions(g: Graph, m: Iterable[int]) -> bool:
    verts = sorted(set(m))
    if not verts:
        raise ValueError("M must be nonempty")
    delta, _ = max_degree(g)
    if not is_independent(g, verts) or any(g.degree(v) != delta for v in verts):
        return False
    return all(not (g.adj[a] & g.adj[b]) for x, a in enumerate(verts) for b in verts[x + 1:])


def _interval_checks(g, perms, delta, k, jobs, profiles=None):
    """gamma_p(piG) = i on ((i-1)(Delta+2)/2n, i(Delta+2)/2n] for i = 1..k, for each pi."""
    two_n = 2 * g.n
    expected: dict[Proportion, int] = {}
    for i in range(1, k + 1):
        lo = Fraction((i - 1) * (delta + 2), two_n)
        hi = Fraction(i * (delta + 2), two_n)
        for p in interval_points(lo, hi, two_n):
            expected[p] = i
    props, values = _prism_values(g, perms, expected, jobs)
    certs = []
    for row, pi in enumerate(perms):
        for col, p in enumerate(props):
            if values[row, col] != expected[p]:
                certs.append(Certificate(g, pi, p, "prism", "==", expected[p], int(values[row, col])))
        if profiles is not None:
            for i in range(1, k + 1):
                if profiles[row, i] != i * (delta + 2):
                    hi = Proportion(i * (delta + 2), two_n)
                    certs.append(Certificate(g, pi, hi, "prism", "==", i,
                                             gamma_p(build_prism(g, pi).combined, hi),
                                             note=f"c_{i}(piG)={profiles[row, i]} != {i * (delta + 2)}"))
    return expected, certs


def verify_prop6(g: Graph, m: Iterable[int], mode: Mode | None = None, jobs: int = 1) -> VerificationReport:
    verts = sorted(set(m))
    mode = mode or Mode.default_for(g.n)
    if not verts or not check_prop6_preconditions(g, verts):
        return _unmet("prop6", g, "M must be a nonempty independent set of max-degree vertices "
                                  "with pairwise disjoint neighbourhoods", mode)
    delta, _ = max_degree(g)
    perms = _perms(mode, g.n)
    profiles = prism_profiles(g, permutation_matrix(perms), jobs)
    expected, certs = _interval_checks(g, perms, delta, len(verts), jobs, profiles)
    return _report("prop6", g, certs, len(perms), mode, M=verts,
                   details={"delta": delta, "points": {str(p): v for p, v in sorted(expected.items())}})


# -- Prop 7 and the construction of T ------------------------------------------------

class Prop7PreconditionError(ValueError):
    def __init__(self, message: str, vertex: int | None = None):
        super().__init__(message)
        self.vertex = vertex


class Prop7CaseError(ValueError):
    pass


class FindTError(RuntimeError):
    def __init__(self, message: str, partial: frozenset[int]):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class PairedMaxSet:
    m: frozenset[int]
    pairs: tuple[tuple[int, int], ...]

    @property
    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a], out[b] = b, a
        return out


def check_prop7_preconditions(g: Graph, m: Iterable[int]) -> PairedMaxSet:
    verts = sorted(set(m))
    if not verts:
        raise Prop7PreconditionError("M is empty")
    delta, _ = max_degree(g)
    for v in verts:
        if g.degree(v) != delta:
            raise Prop7PreconditionError(f"vertex {v} has degree {g.degree(v)}, not Delta={delta}", v)
    if not is_independent(g, verts):
        bad = next(v for v in verts if g.adj[v] & to_mask(verts))
        raise Prop7PreconditionError(f"M is not independent (vertex {bad})", bad)
    pairs = []
    for v in verts:
        partners = []
        for w in verts:
            if w == v:
                continue
            common = (g.adj[v] & g.adj[w]).bit_count()
            if common == 1:
                partners.append(w)
            elif common >= 2:
                raise Prop7PreconditionError(f"vertices {v} and {w} share {common} neighbours", v)
        if len(partners) != 1:
            raise Prop7PreconditionError(f"vertex {v} has {len(partners)} partners, needs exactly one", v)
        if v < partners[0]:
            pairs.append((v, partners[0]))
    return PairedMaxSet(frozenset(verts), tuple(pairs))


def prop7_case(pairing: PairedMaxSet, pi: Permutation) -> str | None:
    """"identity", "pair-swap", "iii", or None when pi fits none of the three cases."""
    if pi.is_identity():
        return "identity"
    if all(pi(a) == b and pi(b) == a for a, b in pairing.pairs):
        return "pair-swap"
    if all(pi(v) in pairing.m for v in pairing.m):
        return "iii"
    return None


def audit_T(pr: PrismGraph, t: Iterable[int], delta: int) -> list[str]:
    """Independent check: pairwise non-adjacent, disjoint closed neighbourhoods, each of size Delta+2."""
    problems = []
    verts = sorted(t)
    closed = pr.combined.closed_masks
    for x, a in enumerate(verts):
        if closed[a].bit_count() != delta + 2:
            problems.append(f"{a} covers {closed[a].bit_count()} vertices, not {delta + 2}")
        for b in verts[x + 1:]:
            if pr.combined.adj[a] >> b & 1:
                problems.append(f"{a} and {b} are adjacent")
            if closed[a] & closed[b]:
                problems.append(f"{a} and {b} share {sorted(from_mask(closed[a] & closed[b]))}")
    return problems


def find_T(g: Graph, pairing: PairedMaxSet, pi: Permutation) -> frozenset[int]:
    """Pick one representative per vertex of M from M and its twin copy M'.

    Walks the pairs in index order: take v, put the twin of pi(partner(v))
    into T, then continue from the M-vertex whose image is paired with
    pi(partner(v)), until the walk closes. At most |M|^2 steps.
    """
    if prop7_case(pairing, pi) is None:
        raise Prop7CaseError("pi is not the identity, the pair swap, or an M-preserving permutation")
    n = g.n
    partner = pairing.partner
    order = sorted(pairing.m)
    m = len(order)

    def star(v: int) -> int:
        return n + pi(v)

    chosen: list[int] = []
    taken: set[int] = set()
    steps = 0
    for start in order:
        if start in taken or star(start) in taken:
            continue
        cur = start
        while True:
            steps += 1
            if steps > m * m:
                raise FindTError("iteration bound exhausted", frozenset(chosen))
            chosen.append(cur)
            taken.add(cur)
            j = partner[cur]
            chosen.append(star(j))
            taken.add(star(j))
            nxt = pi.inverse[partner[pi(j)]]
            if nxt in taken or star(nxt) in taken:
                break
            cur = nxt
    t = frozenset(chosen)
    if len(t) != m:
        raise FindTError(f"built {len(t)} of {m} vertices", t)
    delta, _ = max_degree(g)
    problems = audit_T(build_prism(g, pi), t, delta)
    if problems:
        raise FindTError("; ".join(problems), t)
    return t


def verify_prop7(g: Graph, m: Iterable[int], pi: Permutation) -> VerificationReport:
    try:
        pairing = check_prop7_preconditions(g, m)
    except Prop7PreconditionError as exc:
        return _unmet("prop7", g, str(exc), pi=pi)
    case = prop7_case(pairing, pi)
    if case is None:
        return _unmet("prop7", g, "pi fits none of the three cases", pi=pi)
    delta, _ = max_degree(g)
    k = len(pairing.m)
    try:
        t = find_T(g, pairing, pi)
    except FindTError as exc:
        cert = Certificate(g, pi, Proportion(1), "prism", "==", -1, -1, {"partial_T": exc.partial},
                           note=f"construction failed: {exc}")
        return VerificationReport("prop7", {"graph": describe(g), "pi": pi.format_line()},
                                  Verdict.COUNTEREXAMPLE, None, [cert], {"case": case})
    pr = build_prism(g, pi)
    ordered = sorted(t)
    witness_cov = [coverage_mask(pr.combined, ordered[:i]).bit_count() for i in range(1, k + 1)]
    certs = []
    expected, more = _interval_checks(g, [pi], delta, k, 1)
    for c in more:
        c.witnesses["T"] = t
    certs += more
    return _report("prop7", g, certs, 1, pi=pi, M=sorted(pairing.m),
                   details={"case": case, "T": sorted(t), "pairs": [list(pq) for pq in pairing.pairs],
                            "delta": delta, "witness_coverage": witness_cov,
                            "points": {str(p): v for p, v in sorted(expected.items())}})


# -- aggregation over permutations -----------------------------------------------

def over_permutations(claim: str, fn: Callable[[Permutation], VerificationReport], g: Graph,
                      mode: Mode) -> VerificationReport:
    """Fold per-permutation reports for the single-pi claims into one."""
    certs: list[Certificate] = []
    checked = 0
    verdicts = set()
    detail_rows = []
    for pi in mode.permutations(g.n):
        rep = fn(pi)
        checked += 1
        verdicts.add(rep.verdict)
        certs += rep.certificates
        if rep.verdict is not Verdict.HOLDS and len(detail_rows) < 20:
            detail_rows.append({"pi": pi.format_line(), "verdict": rep.verdict.value, **rep.details})
    if Verdict.COUNTEREXAMPLE in verdicts:
        verdict = Verdict.COUNTEREXAMPLE
    elif verdicts == {Verdict.UNMET}:
        verdict = Verdict.UNMET
    else:
        verdict = Verdict.HOLDS
    return VerificationReport(claim, {"graph": describe(g)}, verdict, mode, certs,
                              {"failures": detail_rows} if detail_rows else {}, checked)


def case_iii_permutations(pairing: PairedMaxSet, n: int, count: int, seed: int = 0) -> list[Permutation]:
    """Up to ``count`` distinct M-preserving permutations that are neither the identity nor the pair swap.

    Each candidate shuffles M among itself and the remaining vertices among
    themselves (Fisher-Yates on SplitMix64); duplicates and the two excluded
    cases are dropped, with a bounded number of attempts.
    """
    inside = sorted(pairing.m)
    outside = [v for v in range(n) if v not in pairing.m]
    rng = SplitMix64(seed)
    found: dict[tuple[int, ...], Permutation] = {}
    for _ in range(50 * count):
        if len(found) >= count:
            break
        image = list(range(n))
        for block in (inside, outside):
            shuffled = list(block)
            for i in range(len(shuffled) - 1, 0, -1):
                j = rng.below(i + 1)
                shuffled[i], shuffled[j] = shuffled[j], shuffled[i]
            for src, dst in zip(block, shuffled):
                image[src] = dst
        pi = Permutation(tuple(image))
        if prop7_case(pairing, pi) == "iii":
            found.setdefault(pi.image, pi)
    return list(found.values())
