"""Triangular power-commutator presentations compiled to Cayley tables.

Normal form g1^e1 * ... * gn^en with all exponents in [0, p); the element
index is the little-endian base-p encoding of the exponent vector, so the
identity is index 0.  Products are computed by naive collection from the
left and the finished table goes through full group validation, so an
inconsistent presentation is rejected rather than silently collapsed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import InconsistentPresentation, PGroupsError, SizeCapExceeded
from .groups import DEFAULT_MAX_ORDER, INDEX_DTYPE, FiniteGroup

_COLLECTION_STEP_CAP = 2_000_000  # safety net; collection terminates in theory


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PcPresentation:
    """Power-commutator data: g_i^p and [g_j, g_i] (j > i) as exponent vectors.

    Vectors are little-endian in generator index (position 0 is g1) and may
    only mention generators strictly after g_i, i.e. positions >= i for the
    1-based generator index i.  Missing relations default to trivial.
    """

    p: int
    rank: int
    powers: Mapping[int, Sequence[int]] = field(default_factory=dict)
    commutators: Mapping[tuple[int, int], Sequence[int]] = field(default_factory=dict)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        powers = {}
        for i, vec in dict(self.powers).items():
            vec = self._check_vector(int(i), vec, f"power of g{i}")
            if any(vec):
                powers[int(i)] = vec
        comms = {}
        for (j, i), vec in dict(self.commutators).items():
            j, i = int(j), int(i)
            if not (1 <= i < j <= self.rank):
                raise ValueError(f"commutator key ({j}, {i}) must satisfy rank >= j > i >= 1")
            vec = self._check_vector(i, vec, f"[g{j}, g{i}]")
            if any(vec):
                comms[(j, i)] = vec
        object.__setattr__(self, "powers", powers)
        object.__setattr__(self, "commutators", comms)

    def _check_vector(self, i: int, vec: Sequence[int], what: str) -> tuple[int, ...]:
        if not (1 <= i <= self.rank):
            raise ValueError(f"generator index {i} out of range 1..{self.rank}")
        vec = tuple(int(e) for e in vec)
        if len(vec) != self.rank:
            raise ValueError(f"{what}: vector length {len(vec)} != rank {self.rank}")
        if any(not (0 <= e < self.p) for e in vec):
            raise ValueError(f"{what}: exponents must lie in [0, {self.p})")
        if any(vec[k] for k in range(i)):
            raise ValueError(f"{what}: may only mention generators after g{i}")
        return vec

    @property
    def order(self) -> int:
        return self.p ** self.rank

    def to_json(self) -> dict:
        return {
            "format": "pc",
            "p": self.p,
            "rank": self.rank,
            "powers": {str(i): list(v) for i, v in sorted(self.powers.items())},
            "commutators": {f"{j},{i}": list(v)
                            for (j, i), v in sorted(self.commutators.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PcPresentation":
        powers = {int(k): tuple(v) for k, v in data.get("powers", {}).items()}
        comms = {}
        for key, v in data.get("commutators", {}).items():
            j, i = (int(t) for t in str(key).split(","))
            comms[(j, i)] = tuple(v)
        return cls(p=int(data["p"]), rank=int(data["rank"]),
                   powers=powers, commutators=comms)


class _Collector:
    """Naive left-collection on letter lists (0-based generator letters)."""

    def __init__(self, pcp: PcPresentation):
        self.p = pcp.p
        self.rank = pcp.rank
        self.power_letters = {}
        for i in range(1, pcp.rank + 1):
            vec = pcp.powers.get(i, (0,) * pcp.rank)
            self.power_letters[i - 1] = self._letters(vec)
        self.comm_letters = {}
        for j in range(1, pcp.rank + 1):
            for i in range(1, j):
                vec = pcp.commutators.get((j, i), (0,) * pcp.rank)
                self.comm_letters[(j - 1, i - 1)] = self._letters(vec)

    @staticmethod
    def _letters(vec: Sequence[int]) -> list[int]:
        out: list[int] = []
        for g, e in enumerate(vec):
            out.extend([g] * e)
        return out

    def collect(self, letters: Sequence[int]) -> tuple[int, ...]:
        """Collect a word into its normal exponent vector."""
        p = self.p
        word = list(letters)
        k = 0
        steps = 0
        while k < len(word):
            steps += 1
            if steps > _COLLECTION_STEP_CAP:
                raise InconsistentPresentation("collection step cap exceeded")
            a = word[k]
            if k + p <= len(word) and all(word[k + t] == a for t in range(1, p)):
                word[k:k + p] = self.power_letters[a]
                k = max(0, k - p)  # a run may now start up to p-1 positions left
            elif k + 1 < len(word) and a > word[k + 1]:
                b = word[k + 1]
                word[k:k + 2] = [b, a] + self.comm_letters[(a, b)]
                k = max(0, k - p)
            else:
                k += 1
        vec = [0] * self.rank
        for a in word:
            vec[a] += 1
        return tuple(vec)


def index_to_vector(idx: int, p: int, rank: int) -> tuple[int, ...]:
    vec = []
    for _ in range(rank):
        vec.append(idx % p)
        idx //= p
    return tuple(vec)


def vector_to_index(vec: Sequence[int], p: int) -> int:
    idx = 0
    for e in reversed(vec):
        idx = idx * p + e
    return idx


def _word_label(vec: Sequence[int]) -> str:
    parts = []
    for g, e in enumerate(vec, start=1):
        if e == 1:
            parts.append(f"g{g}")
        elif e > 1:
            parts.append(f"g{g}^{e}")
    return "*".join(parts) if parts else "e"


def from_pc_presentation(pcp: PcPresentation, *,
                         max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Compile a presentation to a validated group of order p^rank.

    Raises InconsistentPresentation when the collected table fails the group
    axioms (collection itself never checks consistency).
    """
    n = pcp.order
    if n > max_order:
        raise SizeCapExceeded(n, max_order)
    p, rank = pcp.p, pcp.rank
    collector = _Collector(pcp)

    vectors = [index_to_vector(x, p, rank) for x in range(n)]
    letters = [collector._letters(v) for v in vectors]

    # right-multiplication by each generator, then fold columns through words
    by_gen = np.empty((rank, n), dtype=np.int64)
    for g in range(rank):
        for x in range(n):
            by_gen[g, x] = vector_to_index(collector.collect(letters[x] + [g]), p)

    table = np.empty((n, n), dtype=np.int64)
    col = np.arange(n, dtype=np.int64)
    for y in range(n):
        acc = col
        for g in letters[y]:
            acc = by_gen[g][acc]
        table[:, y] = acc

    try:
        G = FiniteGroup.from_cayley_table(table, labels=[_word_label(v) for v in vectors],
                                          max_order=max_order)
    except SizeCapExceeded:
        raise
    except PGroupsError as exc:
        raise InconsistentPresentation(f"collected table is not a group: {exc}") from exc
    return G
