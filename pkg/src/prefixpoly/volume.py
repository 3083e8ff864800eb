"""The volume polynomial of the prefix-sum polytope and its special values.

Pi_n(x) is the set of y >= 0 in R^n whose prefix sums are bounded by the
prefix sums u_i = x_1 + ... + x_i.  Its n-dimensional volume V_n(x) is a
homogeneous polynomial of degree n:

    V_n(x) = sum over k in K_n of  x_1^{k_1}/k_1! * ... * x_n^{k_n}/k_n!

with Catalan(n) terms.  The same polynomial falls out of an n x n
determinant in the prefix sums (Steck's determinant), which this module
expands symbolically as an independent route to V_n.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from itertools import product
from typing import Sequence

from .ballot import iter_K
from .errors import ResourceLimitError
from .exactmath import (
    ExactRational,
    MultivariatePolynomial,
    RationalMatrix,
    determinant,
    poly_eval,
)


class PolytopeSpec:
    """The vector x >= 0 defining Pi_n(x), with derived prefix sums u."""

    __slots__ = ("x", "u")

    def __init__(self, x: Sequence):
        xs = tuple(Fraction(v) for v in x)
        if not xs:
            raise ValueError("x must be nonempty")
        if any(v < 0 for v in xs):
            raise ValueError("all x_i must be nonnegative")
        self.x = xs
        u = []
        acc = Fraction(0)
        for v in xs:
            acc += v
            u.append(acc)
        self.u = tuple(u)

    @property
    def n(self) -> int:
        return len(self.x)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.x)

    def integer_x(self) -> tuple:
        if not self.is_integral():
            raise ValueError(f"x = {self.x} is not integral")
        return tuple(int(v) for v in self.x)

    def __repr__(self):
        return f"PolytopeSpec({[str(v) for v in self.x]})"


def as_spec(x) -> PolytopeSpec:
    return x if isinstance(x, PolytopeSpec) else PolytopeSpec(x)


@functools.cache
def volume_poly(n: int) -> MultivariatePolynomial:
    """V_n as an n-variable polynomial; cached per n after first build."""
    if n < 1:
        raise ValueError("volume_poly needs n >= 1")
    terms = {}
    for k in iter_K(n):
        denom = 1
        for part in k:
            denom *= math.factorial(part)
        terms[k] = Fraction(1, denom)
    return MultivariatePolynomial(n, terms)


def steck_matrix(n: int) -> RationalMatrix:
    """The n x n matrix with (i, j) entry u_i^{j-i+1} / (j-i+1)!.

    Entries with j - i + 1 < 0 are zero.  Everything is symbolic in the
    x variables, with u_i expanded as x_1 + ... + x_i.
    """
    prefix = []
    acc = MultivariatePolynomial.zero(n)
    for i in range(n):
        acc = acc + MultivariatePolynomial.variable(n, i)
        prefix.append(acc)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            e = j - i + 1
            if e < 0:
                row.append(MultivariatePolynomial.zero(n))
            else:
                row.append(prefix[i - 1] ** e * Fraction(1, math.factorial(e)))
        rows.append(row)
    return RationalMatrix.from_rows(rows)


def volume_steck(n: int) -> MultivariatePolynomial:
    """V_n by symbolic expansion of the prefix-sum determinant."""
    if n < 1:
        raise ValueError("volume_steck needs n >= 1")
    return determinant(steck_matrix(n))


def volume_at(x) -> Fraction:
    """Exact volume of Pi_n(x)."""
    spec = as_spec(x)
    return poly_eval(volume_poly(spec.n), spec.x)


def special_ab(n: int, a, b) -> Fraction:
    """Closed form a (a + n b)^{n-1} for n! V_n(a, b, ..., b)."""
    if n < 1:
        raise ValueError("special_ab needs n >= 1")
    a = Fraction(a)
    b = Fraction(b)
    if a < 0 or b < 0:
        raise ValueError("a, b must be nonnegative")
    return a * (a + n * b) ** (n - 1)


def special_abc(n: int, a, b, c) -> Fraction:
    """Closed form for n! V_n(a, b, ..., b, c) with n-2 middle b's."""
    if n < 3:
        raise ValueError("special_abc needs n >= 3")
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a < 0 or b < 0 or c < 0:
        raise ValueError("a, b, c must be nonnegative")
    return a * (a + n * b) ** (n - 1) + n * a * (c - b) * (a + (n - 1) * b) ** (n - 2)


def special_abcm(n: int, m: int, a, b, c) -> Fraction:
    """Closed form for n! V_n(a, b,...,b, c, 0,...,0).

    The argument vector has n - m - 1 b's after a, then c, then m - 1
    zeros.  Valid for 1 <= m <= n - 2.
    """
    if n < 3:
        raise ValueError("special_abcm needs n >= 3")
    if not 1 <= m <= n - 2:
        raise ValueError(f"m = {m} out of range 1..{n - 2}")
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a < 0 or b < 0 or c < 0:
        raise ValueError("a, b, c must be nonnegative")
    total = Fraction(0)
    for j in range(m + 1):
        total += (
            math.comb(n, j)
            * (c - (m + 1 - j) * b) ** j
            * (a + (n - j) * b) ** (n - j - 1)
        )
    return a * total


def special_abcm_vector(n: int, m: int, a, b, c) -> tuple:
    """The x vector (a, b,...,b, c, 0,...,0) that special_abcm evaluates."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return (a,) + (b,) * (n - m - 1) + (c,) + (Fraction(0),) * (m - 1)


def q_specialization(n: int, q) -> Fraction:
    """n! V_n(1, q, q^2, ..., q^{n-1}) evaluated exactly."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("q must be positive")
    point = [q**i for i in range(n)]
    return math.factorial(n) * poly_eval(volume_poly(n), point)


def _prufer_tree_edges(seq: tuple, nverts: int) -> list:
    """Decode a Prufer sequence over {0..nverts-1} into tree edges."""
    degree = [1] * nverts
    for v in seq:
        degree[v] += 1
    import heapq

    leaves = [v for v in range(nverts) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def tree_inversions(edges: list, nverts: int) -> int:
    """Inversions of a tree on {0..nverts-1} rooted at 0.

    A pair i > j >= 1 counts when i lies on the path from the root 0
    to j, i.e. i is a proper ancestor of j.
    """
    adj = [[] for _ in range(nverts)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    parent = [-1] * nverts
    order = [0]
    seen = [False] * nverts
    seen[0] = True
    for v in order:
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                order.append(w)
    count = 0
    for j in range(1, nverts):
        v = parent[j]
        while v > 0:
            if v > j:
                count += 1
            v = parent[v]
    return count


def inversion_oracle(n: int, limit: int = 6) -> MultivariatePolynomial:
    """The tree inversion enumerator I_n(q) by brute force.

    Enumerates all (n+1)^{n-1} labeled trees on {0, ..., n} through their
    Prufer sequences and tallies q^{inversions}.
    """
    if n < 1:
        raise ValueError("inversion_oracle needs n >= 1")
    if n > limit:
        raise ResourceLimitError(f"tree enumeration bound exceeded: n = {n} > {limit}")
    nverts = n + 1
    counts: dict = {}
    if n == 1:
        counts[0] = 1
    else:
        for seq in product(range(nverts), repeat=nverts - 2):
            inv = tree_inversions(_prufer_tree_edges(seq, nverts), nverts)
            counts[inv] = counts.get(inv, 0) + 1
    return MultivariatePolynomial(1, {(e,): Fraction(c) for e, c in counts.items()})
