"""Integer partitions and the index sets built from them.

A :class:`Partition` is an immutable, weakly decreasing tuple of positive
integers.  Every matrix in the package is indexed by partitions in the order
returned by :func:`enumerate_partitions`, which is reverse lexicographic on
the part sequences, e.g. ``(3), (2, 1), (1, 1, 1)``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """A partition, stored as its parts in weakly decreasing order.

    Construction normalizes: ``Partition([1, 3, 1]) == (3, 1, 1)``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        if isinstance(parts, Partition):
            return parts
        parts = [int(p) for p in parts]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, r: int) -> int:
        return self.count(r)

    def multiplicities(self) -> dict[int, int]:
        """Map part value -> multiplicity, parts in decreasing order."""
        return dict(Counter(self))

    def remove_part(self, r: int) -> "Partition":
        parts = list(self)
        parts.remove(r)
        return Partition(parts)

    def to_json(self) -> list[int]:
        return list(self)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Partition":
        return cls(data)


EMPTY = Partition()


def z_of(lam: Partition) -> int:
    """Centralizer order prod_r r**m_r * m_r! of a permutation of cycle type lam."""
    z = 1
    for r, m in Counter(lam).items():
        z *= r**m * math.factorial(m)
    return z


def _partitions_bounded(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    # reverse lexicographic: largest first part first
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions_bounded(n, n))


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_enumerate(n))


@lru_cache(maxsize=None)
def _rank_table(n: int) -> dict[Partition, int]:
    return {lam: i for i, lam in enumerate(_enumerate(n))}


def partition_rank(lam: Partition) -> int:
    """Position of lam in enumerate_partitions(|lam|)."""
    return _rank_table(lam.size)[Partition(lam)]


def add_part(lam: Partition, i: int) -> list[tuple[Partition, int]]:
    """Pieri-type moves: add i to one part of lam (possibly an implicit zero part).

    Returns the pairs (mu, a) with a = number of parts of mu equal to j + i,
    j being the part that was raised.  Each mu appears once, in canonical order.
    """
    if i < 1:
        raise ValueError("i must be positive")
    lam = Partition(lam)
    out = []
    for j in sorted(set(lam) | {0}):
        parts = list(lam)
        if j == 0:
            parts.append(i)
        else:
            parts[parts.index(j)] = j + i
        mu = Partition(parts)
        out.append((mu, mu.multiplicity(j + i)))
    out.sort(key=lambda pair: partition_rank(pair[0]))
    return out


def union(lam: Partition, mu: Partition) -> Partition:
    return Partition(tuple(lam) + tuple(mu))


def multiplicity(lam: Partition, k: int) -> int:
    return Partition(lam).multiplicity(k)


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """True iff lam <= mu in the dominance order (partial sums of lam never exceed mu's)."""
    if sum(lam) != sum(mu):
        raise ValueError(f"dominance compares partitions of equal size, got {lam} and {mu}")
    length = max(len(lam), len(mu))
    a = list(lam) + [0] * (length - len(lam))
    b = list(mu) + [0] * (length - len(mu))
    return all(x <= y for x, y in zip(itertools.accumulate(a), itertools.accumulate(b)))


def sub_multisets(lam: Partition) -> list[tuple[Partition, Partition]]:
    """All ordered pairs (lam1, lam2) with union(lam1, lam2) == lam."""
    counts = Partition(lam).multiplicities()
    values = list(counts)
    out = []
    for choice in itertools.product(*(range(counts[v] + 1) for v in values)):
        first = [v for v, c in zip(values, choice) for _ in range(c)]
        second = [v for v, c in zip(values, choice) for _ in range(counts[v] - c)]
        out.append((Partition(first), Partition(second)))
    return out


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of n into k parts, lexicographically ascending."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate_multi(k_total: int, n: int) -> tuple[tuple[Partition, ...], ...]:
    out = []
    for sizes in compositions(n, k_total):
        out.extend(itertools.product(*(_enumerate(s) for s in sizes)))
    return tuple(out)


def enumerate_multipartitions(k_total: int, n: int) -> list[tuple[Partition, ...]]:
    """All k_total-tuples of partitions with total size n.

    Ordered by the slot sizes (lexicographically ascending), then slotwise by
    the canonical partition order.
    """
    if k_total < 1:
        raise ValueError("k_total must be positive")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_enumerate_multi(k_total, n))


def multipartition_sort_key(key: Sequence[Partition]) -> tuple:
    """Sort key reproducing the enumerate_multipartitions order (degrees ascending)."""
    sizes = tuple(sum(p) for p in key)
    return (sum(sizes), sizes, tuple(partition_rank(Partition(p)) for p in key))
