"""Sweeps of gamma_p over the prisms of one graph, and fixer/doubler classification."""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from math import factorial
from typing import Iterator

import numpy as np

from . import _kernels
from .graph import Graph, SplitMix64
from .prism import Permutation
from .solver import Proportion, as_proportion, gamma_p

DEFAULT_EXHAUSTIVE_CAP = 8
DEFAULT_SAMPLES = 1000
EXHAUSTIVE_DEFAULT_MAX_N = 7


class CapError(RuntimeError):
    pass


def exhaustive_cap() -> int:
    raw = os.environ.get("PRISMDOM_CAP")
    return int(raw) if raw else DEFAULT_EXHAUSTIVE_CAP


def enumerate_permutations(n: int, cap: int | None = None) -> Iterator[Permutation]:
    """All n! permutations in lexicographic order of their image tuples (identity first)."""
    cap = exhaustive_cap() if cap is None else cap
    if n > cap:
        raise CapError(f"n={n} exceeds the exhaustive cap {cap} ({factorial(n)} permutations); "
                       "sample instead or raise PRISMDOM_CAP")
    for image in permutations(range(n)):
        yield Permutation(image)


def sample_permutations(n: int, count: int, seed: int) -> Iterator[Permutation]:
    """Identity, then count-1 Fisher-Yates shuffles of 0..n-1 driven by SplitMix64(seed).

    Each shuffle starts from the identity; for i = n-1 down to 1 it swaps
    positions i and ``next() % (i+1)``.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    yield Permutation.identity(n)
    rng = SplitMix64(seed)
    for _ in range(count - 1):
        image = list(range(n))
        for i in range(n - 1, 0, -1):
            j = rng.below(i + 1)
            image[i], image[j] = image[j], image[i]
        yield Permutation(tuple(image))


@dataclass(frozen=True)
class Mode:
    kind: str = "exhaustive"
    count: int | None = None
    seed: int | None = None

    @classmethod
    def exhaustive(cls) -> Mode:
        return cls("exhaustive")

    @classmethod
    def sampled(cls, count: int, seed: int = 0) -> Mode:
        return cls("sampled", count, seed)

    @classmethod
    def default_for(cls, n: int) -> Mode:
        if n <= EXHAUSTIVE_DEFAULT_MAX_N:
            return cls.exhaustive()
        return cls.sampled(DEFAULT_SAMPLES, 0)

    @property
    def is_exhaustive(self) -> bool:
        return self.kind == "exhaustive"

    def permutations(self, n: int, cap: int | None = None) -> Iterator[Permutation]:
        if self.is_exhaustive:
            return enumerate_permutations(n, cap)
        return sample_permutations(n, self.count, self.seed)

    def to_dict(self) -> dict:
        if self.is_exhaustive:
            return {"kind": "exhaustive"}
        return {"kind": "sampled", "count": self.count, "seed": self.seed}


def permutation_matrix(perms) -> np.ndarray:
    rows = [p.image for p in perms]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def _batch_worker(kind: str, closed: np.ndarray, perms: np.ndarray, targets: np.ndarray | None):
    if kind == "min_k":
        return _kernels.batch_prism_min_k(closed, perms, targets)
    if kind == "profile":
        return _kernels.batch_prism_profiles(closed, perms)
    if kind == "gamma":
        return _kernels.batch_prism_gamma(closed, perms)
    raise ValueError(kind)


def _run_batched(kind: str, g: Graph, perms: np.ndarray, targets=None, jobs: int = 1) -> np.ndarray:
    closed = np.ascontiguousarray(g.closed_array)
    if jobs <= 1 or len(perms) < 64:
        return _batch_worker(kind, closed, perms, targets)
    chunks = np.array_split(perms, jobs * 4)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_batch_worker, [kind] * len(chunks), [closed] * len(chunks),
                              chunks, [targets] * len(chunks)))
    return np.concatenate(parts)


def prism_min_k(g: Graph, perms: np.ndarray, ps, jobs: int = 1) -> tuple[list[Proportion], np.ndarray]:
    """gamma_p of every prism at each proportion; columns follow the sorted proportions."""
    props = sorted({as_proportion(p) for p in ps})
    targets = np.array([p.target(2 * g.n) for p in props], dtype=np.int64)
    return props, _run_batched("min_k", g, perms, targets, jobs)


def prism_profiles(g: Graph, perms: np.ndarray, jobs: int = 1) -> np.ndarray:
    return _run_batched("profile", g, perms, None, jobs)


def prism_gammas(g: Graph, perms: np.ndarray, jobs: int = 1) -> np.ndarray:
    return _run_batched("gamma", g, perms, None, jobs)


class Classification(str, Enum):
    FIXER = "Fixer"
    DOUBLER = "Doubler"
    NEITHER = "Neither"
    FIXER_AND_DOUBLER = "FixerAndDoubler"


@dataclass
class SweepResult:
    n: int
    p: Proportion
    mode: Mode
    base_value: int
    histogram: dict[int, int] = field(default_factory=dict)
    min: int = 0
    max: int = 0
    witness_min: Permutation | None = None
    witness_max: Permutation | None = None

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    @property
    def classification(self) -> Classification:
        fixer = self.min == self.max == self.base_value
        doubler = self.min == self.max == 2 * self.base_value
        if fixer and doubler:
            return Classification.FIXER_AND_DOUBLER
        if fixer:
            return Classification.FIXER
        if doubler:
            return Classification.DOUBLER
        return Classification.NEITHER

    def within_sandwich(self) -> bool:
        return self.base_value <= self.min <= self.max <= 2 * self.base_value

    def to_dict(self, one_indexed: bool = False) -> dict:
        return {
            "n": self.n,
            "p": str(self.p),
            "mode": self.mode.to_dict(),
            "gamma_p_base": self.base_value,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "min": self.min,
            "max": self.max,
            "witness_min": self.witness_min.format_line(one_indexed) if self.witness_min else None,
            "witness_max": self.witness_max.format_line(one_indexed) if self.witness_max else None,
            "classification": self.classification.value,
            "evidence": "universal" if self.mode.is_exhaustive else "sampled evidence",
        }


def sweep(g: Graph, p, mode: Mode | None = None, jobs: int = 1, cap: int | None = None) -> SweepResult:
    p = as_proportion(p)
    mode = mode or Mode.default_for(g.n)
    perms = permutation_matrix(mode.permutations(g.n, cap))
    _, values = prism_min_k(g, perms, [p], jobs)
    values = values[:, 0]
    result = SweepResult(g.n, p, mode, gamma_p(g, p))
    result.histogram = {int(k): int(v) for k, v in sorted(Counter(values.tolist()).items())}
    # first occurrence in enumeration order; enumeration starts at the identity
    lo, hi = int(np.argmin(values)), int(np.argmax(values))
    result.min, result.max = int(values[lo]), int(values[hi])
    result.witness_min = Permutation(tuple(int(x) for x in perms[lo]))
    result.witness_max = Permutation(tuple(int(x) for x in perms[hi]))
    return result


def classify(g: Graph, p, mode: Mode | None = None, jobs: int = 1) -> Classification:
    return sweep(g, p, mode, jobs).classification
