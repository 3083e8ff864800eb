"""Ballot compositions: weak compositions of n whose prefix sums stay ahead.

K_n is the set of (k_1, ..., k_n) with nonnegative integer parts summing
to n such that k_1 + ... + k_j >= j for every j < n.  These index the
monomials of the volume polynomial and the chambers of the binary-tree
subdivision; there are Catalan(n) of them.
"""

from __future__ import annotations

import math
from typing import Iterator


class BallotComposition:
    """An element of K_n, stored as a tuple of parts."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        n = len(parts)
        if n == 0:
            raise ValueError("empty composition")
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if sum(parts) != n:
            raise ValueError(f"parts of {parts} must sum to {n}")
        prefix = 0
        for j in range(n - 1):
            prefix += parts[j]
            if prefix < j + 1:
                raise ValueError(f"{parts} fails the prefix inequality at {j + 1}")
        self.parts = parts

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, BallotComposition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"BallotComposition{self.parts}"


def is_ballot(parts) -> bool:
    """True iff the tuple lies in K_n (sum n, prefix sums >= index)."""
    parts = tuple(parts)
    n = len(parts)
    if n == 0 or any(p < 0 for p in parts) or sum(parts) != n:
        return False
    prefix = 0
    for j in range(n - 1):
        prefix += parts[j]
        if prefix < j + 1:
            return False
    return True


def iter_K(n: int) -> Iterator[tuple]:
    """Yield the part tuples of K_n in ascending lexicographic order."""
    if n < 1:
        raise ValueError("K_n needs n >= 1")

    def extend(prefix: list, used: int):
        i = len(prefix)
        if i == n - 1:
            # last part is forced; prefix inequalities already hold
            yield tuple(prefix) + (n - used,)
            return
        # k_1+...+k_i must reach i, and must leave a feasible remainder
        low = max(0, (i + 1) - used)
        for part in range(low, n - used + 1):
            prefix.append(part)
            yield from extend(prefix, used + part)
            prefix.pop()

    yield from extend([], 0)


def enumerate_K(n: int) -> list:
    """All of K_n as BallotComposition values, lexicographically sorted."""
    return [BallotComposition(parts) for parts in iter_K(n)]


def catalan(n: int) -> int:
    """The Catalan number binomial(2n, n) / (n + 1)."""
    if n < 0:
        raise ValueError("catalan needs n >= 0")
    return math.comb(2 * n, n) // (n + 1)
