"""
combinatorics.py — partitions, multipartitions, hooks and symbols

Conventions:
- Partition parts are stored without trailing zeros; ℓ(λ) is len(parts).
- Nodes are 1-based (row, col) pairs, listed row-major.
- μ'_j is 0 beyond the first row of μ, so generalized hooks are total.
- Enumeration is lazy and deterministic: partitions in lexicographically
  decreasing order, multipartitions by composition (first component
  largest first) then component partitions varied rightmost-fastest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial, prod
from typing import Iterator, NamedTuple, Sequence

from errors import InvalidInputError, InvalidNodeError, SymbolLengthError


class Node(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 0:
                raise InvalidInputError(f"partition parts must be non-negative integers | Parts={parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidInputError(f"partition parts must be weakly decreasing | Parts={parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        """1-based row access; rows past the end have length 0."""
        if i < 1:
            raise IndexError(i)
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def __repr__(self) -> str:
        return f"Partition{self.parts}" if self.parts else "Partition(∅)"

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def first(self) -> int:
        return self.parts[0] if self.parts else 0

    @cached_property
    def conjugate(self) -> "Partition":
        return conjugate(self)

    def contains(self, x: tuple[int, int]) -> bool:
        i, j = x
        return i >= 1 and j >= 1 and j <= self[i]

    def to_list(self) -> list[int]:
        return list(self.parts)


@dataclass(frozen=True)
class MultiPartition:
    components: tuple[Partition, ...]

    def __post_init__(self) -> None:
        comps = tuple(c if isinstance(c, Partition) else Partition(tuple(c)) for c in self.components)
        if not comps:
            raise InvalidInputError("a multipartition needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "MultiPartition":
        return cls(tuple(Partition(tuple(r)) for r in rows))

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.components)

    def __getitem__(self, s: int) -> Partition:
        return self.components[s]

    def __repr__(self) -> str:
        return f"MultiPartition({self.to_lists()})"

    @property
    def d(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    @property
    def length(self) -> int:
        return max(c.length for c in self.components)

    def swapped(self, s: int, t: int) -> "MultiPartition":
        comps = list(self.components)
        comps[s], comps[t] = comps[t], comps[s]
        return MultiPartition(tuple(comps))

    def to_lists(self) -> list[list[int]]:
        return [c.to_list() for c in self.components]


@dataclass(frozen=True)
class BetaSet:
    L: int
    betas: tuple[int, ...]


@dataclass(frozen=True)
class Symbol:
    L: int
    rows: tuple[BetaSet, ...]

    def __post_init__(self) -> None:
        if any(row.L != self.L for row in self.rows):
            raise InvalidInputError("all symbol rows must share L")


# ======================
# Single partitions
# ======================
def conjugate(lam: Partition) -> Partition:
    return Partition(tuple(sum(1 for p in lam.parts if p >= k) for k in range(1, lam.first + 1)))


def nodes(lam: Partition) -> list[Node]:
    return [Node(i, j) for i, row in enumerate(lam.parts, start=1) for j in range(1, row + 1)]


def _check_node(lam: Partition, x: tuple[int, int]) -> Node:
    if not lam.contains(x):
        raise InvalidNodeError(x, lam.parts)
    return Node(*x)


def is_removable(lam: Partition, x: tuple[int, int]) -> bool:
    i, j = _check_node(lam, x)
    return j == lam[i] and lam[i + 1] < lam[i]


def removable_nodes(lam: Partition) -> list[Node]:
    return [Node(i, row) for i, row in enumerate(lam.parts, start=1) if lam[i + 1] < row]


def remove_node(lam: Partition, x: tuple[int, int]) -> Partition:
    if not is_removable(lam, x):
        raise InvalidInputError(f"node is not removable | Node={tuple(x)} | Shape={lam.parts}")
    parts = list(lam.parts)
    parts[x[0] - 1] -= 1
    return Partition(tuple(parts))


def content(x: tuple[int, int]) -> int:
    i, j = x
    return j - i


def classical_hook(lam: Partition, x: tuple[int, int]) -> int:
    return generalized_hook(lam, lam, x)


def generalized_hook(lam: Partition, mu: Partition, x: tuple[int, int]) -> int:
    """h^μ_{i,j} = λ_i − i + μ'_j − j + 1; zero or negative when μ is small."""
    i, j = _check_node(lam, x)
    return lam[i] - i + mu.conjugate[j] - j + 1


def n_value(lam: Partition) -> int:
    return sum((i - 1) * p for i, p in enumerate(lam.parts, start=1))


def n_value_from_conjugate(lam: Partition) -> int:
    return sum((c - 1) * c for c in lam.conjugate.parts) // 2


def hook_lengths(lam: Partition) -> list[int]:
    return [classical_hook(lam, x) for x in nodes(lam)]


# ======================
# Multipartitions
# ======================
def bar_partition(lam: MultiPartition) -> Partition:
    return Partition(tuple(sorted((p for c in lam for p in c.parts), reverse=True)))


def beta_set(lam: Partition, L: int) -> BetaSet:
    if L < lam.length:
        raise SymbolLengthError(L, lam.length)
    return BetaSet(L, tuple(lam[i] + L - i for i in range(1, L + 1)))


def symbol(lam: MultiPartition, L: int) -> Symbol:
    if L < lam.length:
        raise SymbolLengthError(L, lam.length)
    return Symbol(L, tuple(beta_set(c, L) for c in lam))


def specht_dimension(lam: MultiPartition) -> int:
    """r! over the product of all classical hooks."""
    return factorial(lam.size) // prod(h for c in lam for h in hook_lengths(c))


# ======================
# Enumeration
# ======================
def _partitions(m: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for first in range(min(m, max_part), 0, -1):
        for rest in _partitions(m - first, first):
            yield (first,) + rest


def enumerate_partitions(m: int) -> Iterator[Partition]:
    if m < 0:
        raise InvalidInputError(f"size must be non-negative | m={m}")
    for parts in _partitions(m, m):
        yield Partition(parts)


def _compositions(r: int, d: int) -> Iterator[tuple[int, ...]]:
    if d == 1:
        yield (r,)
        return
    for first in range(r, -1, -1):
        for rest in _compositions(r - first, d - 1):
            yield (first,) + rest


def enumerate_multipartitions(d: int, r: int) -> Iterator[MultiPartition]:
    if d < 1 or r < 0:
        raise InvalidInputError(f"need d >= 1 and r >= 0 | d={d} | r={r}")
    for sizes in _compositions(r, d):
        # itertools.product varies the rightmost factor fastest
        for comps in itertools.product(*(tuple(enumerate_partitions(m)) for m in sizes)):
            yield MultiPartition(comps)


@lru_cache(maxsize=None)
def partition_count(m: int) -> int:
    """p(m) via Euler's pentagonal recurrence."""
    if m < 0:
        return 0
    if m == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > m:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(m - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= m:
            total += sign * partition_count(m - g2)
        k += 1
    return total


def count_multipartitions(d: int, r: int) -> int:
    """Coefficient of x^r in (Σ p(m) x^m)^d."""
    series = [1] + [0] * r
    base = [partition_count(m) for m in range(r + 1)]
    for _ in range(d):
        series = [sum(series[a] * base[n - a] for a in range(n + 1)) for n in range(r + 1)]
    return series[r]
