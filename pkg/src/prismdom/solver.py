"""Exact domination and partial-domination numbers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable

import numpy as np

from . import _kernels
from .graph import Graph, GraphError, coverage, from_mask, max_degree

ORACLE_CAP = 16


class ProportionError(ValueError):
    pass


class OracleCapError(RuntimeError):
    pass


class Proportion(Fraction):
    """A rational p in (0, 1]. Floats are refused so thresholds stay exact."""

    def __new__(cls, numerator: int | str | Rational = 1, denominator: int | None = None):
        if isinstance(numerator, float) or isinstance(denominator, float):
            raise TypeError("proportions must be exact; pass 'a/b' or integers")
        try:
            self = super().__new__(cls, numerator, denominator)
        except (ValueError, ZeroDivisionError) as exc:
            raise ProportionError(f"bad proportion {numerator!r}: {exc}") from None
        if not 0 < self <= 1:
            raise ProportionError(f"proportion {self} outside (0, 1]")
        return self

    @classmethod
    def parse(cls, text: str) -> Proportion:
        return cls(text.strip())

    def target(self, n: int) -> int:
        """Fewest dominated vertices out of n that meet p: ceil(p*n)."""
        return -(-self.numerator * n // self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"Proportion({self.numerator}, {self.denominator})"


def as_proportion(p) -> Proportion:
    return p if isinstance(p, Proportion) else Proportion(p)


def _require_nonempty(g: Graph) -> None:
    if g.n < 1:
        raise GraphError("graph must have at least one vertex")


def is_p_dominating(g: Graph, s: Iterable[int], p) -> bool:
    _require_nonempty(g)
    p = as_proportion(p)
    return p.denominator * coverage(g, s) >= p.numerator * g.n


def min_dominating_set(g: Graph) -> tuple[int, frozenset[int]]:
    _require_nonempty(g)
    size, mask = _kernels.min_dominating_set(g.closed_array)
    return int(size), from_mask(int(mask))


def gamma(g: Graph) -> int:
    return min_dominating_set(g)[0]


def min_p_dominating_set(g: Graph, p) -> tuple[int, frozenset[int]]:
    _require_nonempty(g)
    p = as_proportion(p)
    k, mask = _kernels.min_k_reaching(g.closed_array, p.target(g.n))
    return int(k), from_mask(int(mask))


def gamma_p(g: Graph, p) -> int:
    return min_p_dominating_set(g, p)[0]


def gamma_p_many(g: Graph, ps: Iterable) -> dict[Proportion, int]:
    """gamma_p at several proportions with one incremental search."""
    _require_nonempty(g)
    props = sorted({as_proportion(p) for p in ps})
    if not props:
        return {}
    targets = np.array([p.target(g.n) for p in props], dtype=np.int64)
    ks = _kernels.min_k_reaching_many(g.closed_array, targets)
    return {p: int(k) for p, k in zip(props, ks)}


def gamma_p_oracle(g: Graph, p, cap: int = ORACLE_CAP) -> int:
    """Plain enumeration of k-subsets in increasing k, no pruning."""
    _require_nonempty(g)
    if g.n > cap:
        raise OracleCapError(f"oracle refuses n={g.n} (cap {cap})")
    p = as_proportion(p)
    closed = [nb | 1 << v for v, nb in enumerate(g.adj)]
    for k in range(1, g.n + 1):
        for subset in combinations(closed, k):
            acc = 0
            for mask in subset:
                acc |= mask
            if p.denominator * acc.bit_count() >= p.numerator * g.n:
                return k
    raise AssertionError("the whole vertex set always dominates")


def coverage_profile_oracle(g: Graph, cap: int = ORACLE_CAP) -> tuple[int, ...]:
    if g.n > cap:
        raise OracleCapError(f"oracle refuses n={g.n} (cap {cap})")
    closed = g.closed_masks
    prof = [0]
    for k in range(1, g.n + 1):
        best = 0
        for subset in combinations(closed, k):
            acc = 0
            for mask in subset:
                acc |= mask
            best = max(best, acc.bit_count())
        prof.append(best)
    return tuple(prof)


@dataclass(frozen=True)
class CoverageProfile:
    """``c[k]`` is the largest number of vertices any k-set dominates."""

    c: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.c) - 1

    def gamma_p(self, p) -> int:
        return gamma_p_from_profile(self, p, self.n)

    def breakpoints(self) -> list[Proportion]:
        """Distinct values c[k]/n in (0, 1]; gamma_p is constant between consecutive ones."""
        return sorted({Proportion(v, self.n) for v in self.c if v > 0})

    def violations(self, delta: int | None = None) -> list[str]:
        out = []
        c, n = self.c, self.n
        if c[0] != 0:
            out.append(f"c[0]={c[0]}")
        if n >= 1:
            if delta is not None and c[1] != delta + 1:
                out.append(f"c[1]={c[1]} != Delta+1={delta + 1}")
            if c[n] != n:
                out.append(f"c[n]={c[n]} != n")
        for k in range(n):
            if c[k] < n and c[k + 1] < c[k] + 1:
                out.append(f"no growth at k={k}: {c[k]} -> {c[k + 1]}")
            if c[k] >= n and c[k + 1] != n:
                out.append(f"c[{k + 1}]={c[k + 1]} after reaching n")
            if delta is not None and c[k + 1] > (k + 1) * (delta + 1):
                out.append(f"c[{k + 1}] exceeds (k)(Delta+1)")
        return out

    def format(self) -> str:
        return "".join(f"{k} {v}\n" for k, v in enumerate(self.c))


def coverage_profile(g: Graph) -> CoverageProfile:
    _require_nonempty(g)
    return CoverageProfile(tuple(int(x) for x in _kernels.coverage_profile(g.closed_array)))


def gamma_p_from_profile(profile: CoverageProfile, p, n: int) -> int:
    p = as_proportion(p)
    if profile.n != n:
        raise ValueError(f"profile is for {profile.n} vertices, not {n}")
    for k in range(1, n + 1):
        if p.denominator * profile.c[k] >= p.numerator * n:
            return k
    raise ValueError("invalid profile: c[n] must equal n")


def check_profile(g: Graph, profile: CoverageProfile) -> list[str]:
    return profile.violations(max_degree(g)[0])
