"""Parking functions and their prefix-sum generalization.

A sequence of positive integers parks for x when its weakly increasing
rearrangement b satisfies b_i <= u_i = x_1 + ... + x_i.  Ordinary parking
functions are the case x = (1, ..., 1).
"""

from __future__ import annotations

from itertools import product

from .errors import ResourceLimitError
from .volume import as_spec


class ParkingSequence:
    __slots__ = ("values",)

    def __init__(self, values):
        values = tuple(int(v) for v in values)
        if not values or any(v < 1 for v in values):
            raise ValueError("parking sequences are nonempty with positive entries")
        self.values = values

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        other_values = other.values if isinstance(other, ParkingSequence) else tuple(other)
        return self.values == other_values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"ParkingSequence{self.values}"


def is_x_parking(a, spec) -> bool:
    """Sorted entries must stay under the prefix sums of x."""
    spec = as_spec(spec)
    values = tuple(int(v) for v in a)
    if len(values) != spec.n:
        raise ValueError(f"sequence length {len(values)} != n = {spec.n}")
    if any(v < 1 for v in values):
        raise ValueError("entries must be positive")
    return all(b <= u for b, u in zip(sorted(values), spec.u))


def count_x_parking(spec, max_total: int = 8, max_n: int = 6) -> int:
    """Count x-parking sequences by scanning {1..u_n}^n."""
    spec = as_spec(spec)
    x = spec.integer_x()
    n = spec.n
    u = [int(t) for t in spec.u]
    if u[-1] > max_total or n > max_n:
        raise ResourceLimitError(f"scan bound exceeded: u_n = {u[-1]}, n = {n}")
    if u[-1] == 0:
        return 0
    count = 0
    for a in product(range(1, u[-1] + 1), repeat=n):
        if all(b <= ui for b, ui in zip(sorted(a), u)):
            count += 1
    return count


def weighted_parking_sum(spec):
    """Sum of x_{a_1} ... x_{a_n} over ordinary parking functions of length n."""
    spec = as_spec(spec)
    n = spec.n
    total = 0
    for pf in enumerate_parking(n):
        term = 1
        for a in pf:
            term *= spec.x[a - 1]
        total += term
    return total


def enumerate_parking(n: int, guard: int = 6) -> list:
    """All ordinary parking functions of length n, in lexicographic order."""
    if n < 1:
        raise ValueError("enumerate_parking needs n >= 1")
    if n > guard:
        raise ResourceLimitError(f"enumeration bound exceeded: n = {n} > {guard}")
    out = []
    for a in product(range(1, n + 1), repeat=n):
        if all(b <= i for i, b in enumerate(sorted(a), start=1)):
            out.append(ParkingSequence(a))
    return out
