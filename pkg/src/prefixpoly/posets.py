"""Finite posets, linear extensions, and order-cone sections.

A section of the order cone of a poset P fixes the values u_1 < ... < u_n
along a chain C ending at the top element and keeps the order-preserving
maps on the rest.  Its lattice points split by linear extension into
chains of interleaved equalities, giving a multichoose summation for the
count and, in the top degree, a sum of monomials over extensions for the
volume.  The 2 x n grid poset with the upper row as chain recovers
Pi_n(x) exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import ResourceLimitError
from .exactmath import MultivariatePolynomial, multichoose
from .volume import as_spec

LINEAR_EXTENSION_GUARD = 12
IDEAL_GUARD = 16


class FinitePoset:
    """Poset on {1..p} given by covers (i, j) with i < j (natural labeling)."""

    __slots__ = ("p", "covers", "below", "above")

    def __init__(self, p: int, covers):
        if p < 1:
            raise ValueError("poset must be nonempty")
        covers = sorted({(int(a), int(b)) for a, b in covers})
        for a, b in covers:
            if not (1 <= a < b <= p):
                raise ValueError(f"cover ({a}, {b}) violates the natural labeling 1 <= i < j <= p")
        # strict down-sets as bitmasks, index 1..p; bit k set means k+1 below
        below = [0] * (p + 1)
        ups = [[] for _ in range(p + 1)]
        downs = [[] for _ in range(p + 1)]
        for a, b in covers:
            ups[a].append(b)
            downs[b].append(a)
        for v in range(1, p + 1):
            mask = 0
            for a in downs[v]:
                mask |= below[a] | (1 << (a - 1))
            below[v] = mask
        above = [0] * (p + 1)
        for v in range(p, 0, -1):
            mask = 0
            for b in ups[v]:
                mask |= above[b] | (1 << (b - 1))
            above[v] = mask
        # reject covers that are implied by transitivity
        for a, b in covers:
            for c in downs[b]:
                if c != a and (below[c] >> (a - 1)) & 1:
                    raise ValueError(f"cover ({a}, {b}) is not transitively reduced")
        self.p = p
        self.covers = tuple(covers)
        self.below = tuple(below)
        self.above = tuple(above)

    def less(self, a: int, b: int) -> bool:
        return bool((self.below[b] >> (a - 1)) & 1)

    def comparable(self, a: int, b: int) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def maximal_elements(self) -> list:
        return [v for v in range(1, self.p + 1) if self.above[v] == 0]

    def has_top(self) -> bool:
        return len(self.maximal_elements()) == 1

    def with_adjoined_top(self) -> "FinitePoset":
        """Adjoin a new maximum above every maximal element."""
        top = self.p + 1
        covers = list(self.covers) + [(v, top) for v in self.maximal_elements()]
        return FinitePoset(top, covers)

    def to_json_dict(self) -> dict:
        return {"size": self.p, "covers": [list(c) for c in self.covers]}

    @staticmethod
    def from_json_dict(data: dict) -> "FinitePoset":
        return FinitePoset(data["size"], [tuple(c) for c in data["covers"]])

    @staticmethod
    def chain(p: int) -> "FinitePoset":
        return FinitePoset(p, [(i, i + 1) for i in range(1, p)])

    @staticmethod
    def antichain(p: int) -> "FinitePoset":
        return FinitePoset(p, [])

    @staticmethod
    def grid(rows: int, cols: int) -> "FinitePoset":
        """The rows x cols grid: element (r, c) is r * cols + c + 1."""
        covers = []
        for r in range(rows):
            for c in range(cols):
                label = r * cols + c + 1
                if c + 1 < cols:
                    covers.append((label, label + 1))
                if r + 1 < rows:
                    covers.append((label, label + cols))
        return FinitePoset(rows * cols, covers)

    def __repr__(self):
        return f"FinitePoset(p={self.p}, covers={list(self.covers)})"


def q_poset(n: int) -> FinitePoset:
    """The 2 x n grid with lower chain 1..n and upper chain n+1..2n."""
    covers = [(i, i + 1) for i in range(1, n)]
    covers += [(n + i, n + i + 1) for i in range(1, n)]
    covers += [(i, n + i) for i in range(1, n + 1)]
    return FinitePoset(2 * n, covers)


def q_chain(n: int) -> "MarkedChain":
    return MarkedChain(q_poset(n), range(n + 1, 2 * n + 1))


class LinearExtension:
    """A linear extension as the word a_1 ... a_p: a_t sits at position t."""

    __slots__ = ("word", "position")

    def __init__(self, word):
        word = tuple(int(a) for a in word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{word} is not a permutation word")
        pos = [0] * (len(word) + 1)
        for t, a in enumerate(word, start=1):
            pos[a] = t
        self.word = word
        self.position = tuple(pos)

    def __len__(self):
        return len(self.word)

    def __eq__(self, other):
        if isinstance(other, LinearExtension):
            return self.word == other.word
        if isinstance(other, tuple):
            return self.word == other
        return NotImplemented

    def __hash__(self):
        return hash(self.word)

    def descent_positions(self):
        w = self.word
        return [t for t in range(1, len(w)) if w[t - 1] > w[t]]

    def __repr__(self):
        return "LinearExtension(" + "".join(map(str, self.word)) + ")"


class MarkedChain:
    """A chain t_1 < ... < t_n in P whose last member is the top of P."""

    __slots__ = ("poset", "members")

    def __init__(self, poset: FinitePoset, members):
        members = tuple(int(t) for t in members)
        if not members:
            raise ValueError("chain must be nonempty")
        for a, b in zip(members, members[1:]):
            if not poset.less(a, b):
                raise ValueError(f"{members} is not a chain: {a} not below {b}")
        top = members[-1]
        if poset.above[top] != 0 or not poset.has_top():
            raise ValueError("chain must end at the unique top element")
        self.poset = poset
        self.members = members

    @property
    def n(self):
        return len(self.members)

    def __repr__(self):
        return f"MarkedChain{self.members}"


def linear_extensions(poset: FinitePoset, guard: int = LINEAR_EXTENSION_GUARD) -> list:
    """All linear extensions, lexicographic by word."""
    if poset.p > guard:
        raise ResourceLimitError(f"poset size {poset.p} exceeds extension guard {guard}")
    p = poset.p
    below = poset.below
    out = []
    word: list = []
    placed_mask = 0

    def rec(placed_mask: int):
        if len(word) == p:
            out.append(LinearExtension(word))
            return
        for cand in range(1, p + 1):
            bit = 1 << (cand - 1)
            if placed_mask & bit:
                continue
            if below[cand] & ~placed_mask:
                continue
            word.append(cand)
            rec(placed_mask | bit)
            word.pop()

    rec(0)
    return out


def heights_descents(extension: LinearExtension, chain: MarkedChain):
    """Heights of the chain members in the word, and descent counts of the
    word within each consecutive height window.

    h_i is the position of t_i; d_i counts positions j with
    h_{i-1} <= j < h_i where the word descends between j and j+1
    (h_0 = 0 and a virtual a_0 = 0 in front, which never descends).
    """
    word = extension.word
    h = [extension.position[t] for t in chain.members]
    if any(a >= b for a, b in zip(h, h[1:])):
        raise ValueError("chain members out of order in the extension")
    if h[-1] != len(word):
        raise ValueError("top element must sit at the last position")
    padded = (0,) + word
    d = []
    prev = 0
    for hi in h:
        d.append(sum(1 for j in range(prev, hi) if padded[j] > padded[j + 1]))
        prev = hi
    return tuple(h), tuple(d)


def section_count(poset: FinitePoset, chain: MarkedChain, x: Sequence[int]) -> int:
    """Lattice points of the order-cone section: the number of integer
    order-preserving maps on P - C whose extension by f(t_i) = u_i is
    still order-preserving.  Computed by the multichoose sum over linear
    extensions."""
    x = [int(t) for t in x]
    if len(x) != chain.n:
        raise ValueError("x must assign one increment per chain member")
    if any(t < 0 for t in x):
        raise ValueError("x must be nonnegative")
    total = Fraction(0)
    for pi in linear_extensions(poset):
        h, d = heights_descents(pi, chain)
        term = Fraction(1)
        prev = 0
        for i in range(chain.n):
            term *= multichoose(x[i] - d[i] + 1, h[i] - prev - 1)
            if term == 0:
                break
            prev = h[i]
        total += term
    assert total.denominator == 1
    return int(total)


def section_count_brute(poset: FinitePoset, chain: MarkedChain, x: Sequence[int]) -> int:
    """Oracle for section_count by direct search over integer maps.

    Values are assigned in label order (a linear extension of P), each
    bounded below by already-assigned predecessors and above by assigned
    successors, with the chain members pinned to the prefix sums of x.
    """
    x = [int(t) for t in x]
    p = poset.p
    u = {}
    acc = 0
    for t, inc in zip(chain.members, x):
        acc += inc
        u[t] = acc
    top_value = acc
    value = [None] * (p + 1)

    def rec(v: int) -> int:
        if v > p:
            return 1
        lo, hi = 0, top_value
        for w in range(1, v):
            if value[w] is None:
                continue
            if poset.less(w, v):
                lo = max(lo, value[w])
            elif poset.less(v, w):
                hi = min(hi, value[w])
        if v in u:
            if lo <= u[v] <= hi:
                value[v] = u[v]
                result = rec(v + 1)
                value[v] = None
                return result
            return 0
        total = 0
        for t in range(lo, hi + 1):
            value[v] = t
            total += rec(v + 1)
        value[v] = None
        return total

    return rec(1)


def section_volume(poset: FinitePoset, chain: MarkedChain) -> MultivariatePolynomial:
    """Volume of the order-cone section as a polynomial in x_1..x_n.

    Each extension contributes the volume of its cell, a product of
    simplices of dimensions h_i - h_{i-1} - 1 with edge x_i; the free
    coordinates in the window before t_i form an ordered
    (h_i - h_{i-1} - 1)-tuple in an interval of width x_i.
    """
    n = chain.n
    total = MultivariatePolynomial.zero(n)
    for pi in linear_extensions(poset):
        h, _ = heights_descents(pi, chain)
        exps = []
        prev = 0
        denom = 1
        for hi in h:
            gap = hi - prev - 1
            exps.append(gap)
            denom *= math.factorial(gap)
            prev = hi
        total = total + MultivariatePolynomial(n, {tuple(exps): Fraction(1, denom)})
    return total


# ----------------------------------------------------------------------
# Order ideals, Loewy chains, interior faces


class IdealLattice:
    """All order ideals of P as bitmasks, with their cover relation."""

    __slots__ = ("poset", "ideals", "covers")

    def __init__(self, poset: FinitePoset, ideals, covers):
        self.poset = poset
        self.ideals = ideals
        self.covers = covers

    def __len__(self):
        return len(self.ideals)


def ideal_lattice(poset: FinitePoset, guard: int = IDEAL_GUARD) -> IdealLattice:
    if poset.p > guard:
        raise ResourceLimitError(f"poset size {poset.p} exceeds ideal guard {guard}")
    p = poset.p
    below = poset.below
    full = (1 << p) - 1
    ideals = []
    seen = set()
    frontier = [0]
    seen.add(0)
    while frontier:
        ideals.extend(frontier)
        nxt = []
        for ideal in frontier:
            for v in range(1, p + 1):
                bit = 1 << (v - 1)
                if ideal & bit:
                    continue
                if below[v] & ~ideal:
                    continue
                new = ideal | bit
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    ideals.sort(key=lambda m: (bin(m).count("1"), m))
    covers = []
    index = {m: i for i, m in enumerate(ideals)}
    for ideal in ideals:
        for v in range(1, p + 1):
            bit = 1 << (v - 1)
            if ideal & bit or (below[v] & ~ideal):
                continue
            covers.append((index[ideal], index[ideal | bit]))
    assert full in index
    return IdealLattice(poset, ideals, covers)


def _is_antichain(poset: FinitePoset, mask: int) -> bool:
    members = [v for v in range(1, poset.p + 1) if (mask >> (v - 1)) & 1]
    for a, b in combinations(members, 2):
        if poset.comparable(a, b):
            return False
    return True


def loewy_chains(poset: FinitePoset, guard: int = IDEAL_GUARD) -> list:
    """Chains of ideals 0 = I_0 < ... < I_k = P whose steps are antichains."""
    if poset.p > guard:
        raise ResourceLimitError(f"poset size {poset.p} exceeds ideal guard {guard}")
    p = poset.p
    below = poset.below
    full = (1 << p) - 1
    chains = []
    current = [0]

    def antichain_successors(ideal: int):
        # greedily grow antichain steps: candidates are the addable elements
        addable = [
            v
            for v in range(1, p + 1)
            if not (ideal >> (v - 1)) & 1 and not (below[v] & ~ideal)
        ]
        # nonempty antichain subsets of the addable set
        for r in range(1, len(addable) + 1):
            for subset in combinations(addable, r):
                mask = 0
                for v in subset:
                    mask |= 1 << (v - 1)
                if _is_antichain(poset, mask):
                    yield mask

    def rec(ideal: int):
        if ideal == full:
            chains.append(tuple(current))
            return
        for step in antichain_successors(ideal):
            current.append(ideal | step)
            rec(ideal | step)
            current.pop()

    rec(0)
    return chains


def loewy_interior_stats(poset: FinitePoset, guard: int = IDEAL_GUARD) -> dict:
    """Interior faces of the section decomposition, counted by dimension.

    Loewy chains index the interior faces.  Ideals present in every Loewy
    chain carry no freedom, so a chain through e of the everywhere-present
    ideals and k+1 ideals total corresponds to a face of dimension
    k - e (one less than the count of free ideals).
    """
    chains = loewy_chains(poset, guard=guard)
    forced = set(chains[0])
    for chain in chains[1:]:
        forced &= set(chain)
    stats: dict = {}
    for chain in chains:
        dim = len(chain) - len(forced) - 1
        stats[dim] = stats.get(dim, 0) + 1
    return stats


# ----------------------------------------------------------------------
# Minkowski decomposition support check


def support_function_simplices(spec, w: Sequence[int]) -> Fraction:
    """Support function of x_1 T_1 + ... + x_n T_n in direction w, where
    T_i is the simplex spanned by 0 and the unit vectors e_i, ..., e_n."""
    spec = as_spec(spec)
    n = spec.n
    total = Fraction(0)
    tail_max = Fraction(0)
    for i in range(n - 1, -1, -1):
        tail_max = max(tail_max, Fraction(w[i]))
        total += spec.x[i] * max(Fraction(0), tail_max)
    return total


def minkowski_support_check(spec, trials: int, seed: int, guard: int = 4) -> bool:
    """Compare the vertex-scan support function of Pi_n(x) with the sum of
    simplex support functions on random integer directions."""
    import random

    from .treefan import polytope_vertices

    spec = as_spec(spec)
    if spec.n > guard:
        raise ResourceLimitError(f"vertex enumeration bound exceeded: n = {spec.n} > {guard}")
    vertices = polytope_vertices(spec)
    rng = random.Random(seed)
    for _ in range(trials):
        w = [rng.randint(-9, 9) for _ in range(spec.n)]
        by_vertices = max(sum(Fraction(wi) * vi for wi, vi in zip(w, vertex)) for vertex in vertices)
        if by_vertices != support_function_simplices(spec, w):
            return False
    return True
