"""Plane binary trees, the tree fan, and the tree subdivision of Pi_n(x).

Internal vertices carry the binary search labeling: each label exceeds
everything in its left subtree and precedes everything in its right
subtree.  Each labeled tree T cuts out a simplicial cone in R^{n-1}
(coordinates y_2..y_n) from its parent-child edges:

    child c of parent p, c > p (right child):  y_{p+1} + ... + y_c <= 0
    child c of parent p, c < p (left child):   y_{c+1} + ... + y_p >= 0

These C_n cones tile R^{n-1}; translating by (x_2, ..., x_n) and
intersecting with Pi_n(x) yields the chamber Delta_T, whose volume is the
monomial of the volume polynomial indexed by the left-chain composition
k(T).  The incidence geometry of the fan is the dual of the polytope of
polygon decompositions (the associahedron), realized here through the
classical bijection with triangulations of a convex (n+2)-gon.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .ballot import BallotComposition, catalan
from .errors import ResourceLimitError
from .exactmath import MultivariatePolynomial, poly_eval
from .volume import PolytopeSpec, as_spec, volume_poly

TREE_GUARD = 10


class PlaneBinaryTree:
    """A plane binary tree stored by its shape.

    The shape is a nested pair structure: None is a leaf, and an internal
    node is a (left, right) tuple of shapes.  Internal vertices are
    labeled 1..n by the binary search rule, so the vertex reached by a
    path is identified by its in-order rank.
    """

    __slots__ = ("shape", "_covers", "_n")

    def __init__(self, shape):
        self.shape = _freeze_shape(shape)
        self._n = _count_internal(self.shape)
        self._covers = None

    @property
    def n(self) -> int:
        return self._n

    def covers(self) -> tuple:
        """Parent-child pairs (p, c, is_left) over internal vertices only."""
        if self._covers is None:
            pairs = []

            def walk(node, offset):
                # returns (label of this internal node, subtree internal count)
                left, right = node
                size_l = _count_internal(left)
                label = offset + size_l + 1
                if left is not None:
                    child, _ = walk(left, offset)
                    pairs.append((label, child, True))
                if right is not None:
                    child, _ = walk(right, offset + size_l + 1)
                    pairs.append((label, child, False))
                return label, size_l + 1 + _count_internal(right)

            if self.shape is not None:
                walk(self.shape, 0)
            self._covers = tuple(sorted(pairs))
        return self._covers

    def root_label(self) -> int:
        left, _ = self.shape
        return _count_internal(left) + 1

    def left_child_internal(self) -> tuple:
        """For each label 1..n, whether its left child is internal."""
        flags = [False] * (self.n + 1)

        def walk(node, offset):
            left, right = node
            size_l = _count_internal(left)
            label = offset + size_l + 1
            if left is not None:
                flags[label] = True
                walk(left, offset)
            if right is not None:
                walk(right, offset + size_l + 1)

        walk(self.shape, 0)
        return tuple(flags[1:])

    def to_parens(self) -> str:
        """Preorder balanced-parenthesis encoding of the shape."""

        def enc(node):
            if node is None:
                return ""
            return "(" + enc(node[0]) + ")" + enc(node[1])

        return enc(self.shape)

    @staticmethod
    def from_parens(text: str) -> "PlaneBinaryTree":
        pos = 0

        def parse():
            nonlocal pos
            if pos < len(text) and text[pos] == "(":
                pos += 1
                left = parse()
                if pos >= len(text) or text[pos] != ")":
                    raise ValueError(f"unbalanced parentheses in {text!r}")
                pos += 1
                right = parse()
                return (left, right)
            return None

        shape = parse()
        if pos != len(text) or shape is None:
            raise ValueError(f"invalid tree encoding {text!r}")
        return PlaneBinaryTree(shape)

    def __eq__(self, other):
        return isinstance(other, PlaneBinaryTree) and self.shape == other.shape

    def __hash__(self):
        return hash(self.shape)

    def __repr__(self):
        return f"PlaneBinaryTree({self.to_parens()!r})"


def _freeze_shape(node):
    if node is None:
        return None
    left, right = node
    return (_freeze_shape(left), _freeze_shape(right))


def _count_internal(node) -> int:
    if node is None:
        return 0
    return 1 + _count_internal(node[0]) + _count_internal(node[1])


def enumerate_trees(n: int, guard: int = TREE_GUARD) -> list:
    """All plane binary trees with n internal vertices."""
    if n < 1:
        raise ValueError("enumerate_trees needs n >= 1")
    if n > guard:
        raise ResourceLimitError(f"tree enumeration bound exceeded: n = {n} > {guard}")
    memo = {0: [None]}

    def shapes(k):
        if k not in memo:
            out = []
            for size_l in range(k):
                for left in shapes(size_l):
                    for right in shapes(k - 1 - size_l):
                        out.append((left, right))
            memo[k] = out
        return memo[k]

    return [PlaneBinaryTree(s) for s in shapes(n)]


# ----------------------------------------------------------------------
# The left-chain composition k(T) and its inverse


def k_of_tree(tree: PlaneBinaryTree) -> BallotComposition:
    """k_i = 0 when the left child of vertex i is internal; otherwise the
    length of the longest chain i = j_1 < ... < j_r with each j_h a left
    child of j_{h+1}."""
    n = tree.n
    parent = {}
    for p, c, is_left in tree.covers():
        parent[c] = (p, is_left)
    left_internal = tree.left_child_internal()
    parts = []
    for i in range(1, n + 1):
        if left_internal[i - 1]:
            parts.append(0)
            continue
        r = 1
        v = i
        while v in parent and parent[v][1]:
            v = parent[v][0]
            r += 1
        parts.append(r)
    return BallotComposition(parts)


def tree_of_k(k) -> PlaneBinaryTree:
    """The unique tree with k(T) = k, by the incremental left-right walk.

    Nodes hold [left, right, parent]; the final structure over internal
    vertices is completed with leaves to form the binary shape.
    """
    k = k if isinstance(k, BallotComposition) else BallotComposition(k)
    n = len(k)
    nodes = [[None, None, None] for _ in range(n + 1)]  # 1-based scratch ids
    next_id = 1
    root = next_id
    cur = root
    next_id += 1
    for _ in range(k[0] - 1):
        nodes[cur][0] = next_id
        nodes[next_id][2] = (cur, True)
        cur = next_id
        next_id += 1
    for part in k.parts[1:]:
        if part > 0:
            nodes[cur][1] = next_id
            nodes[next_id][2] = (cur, False)
            cur = next_id
            next_id += 1
            for _ in range(part - 1):
                nodes[cur][0] = next_id
                nodes[next_id][2] = (cur, True)
                cur = next_id
                next_id += 1
        else:
            # descend toward the root until one left-child edge is crossed
            while True:
                link = nodes[cur][2]
                if link is None:
                    raise ValueError(f"{k.parts} is not a valid ballot composition walk")
                cur, was_left = link[0], link[1]
                if was_left:
                    break

    def build(node_id):
        if node_id is None:
            return None
        return (build(nodes[node_id][0]), build(nodes[node_id][1]))

    return PlaneBinaryTree(build(root))


# ----------------------------------------------------------------------
# Fan inequalities and chamber membership


class SignedIntervalInequality:
    """The constraint sign * (y_lo + ... + y_hi) >= 0 in fan coordinates,
    or with each y_h replaced by y_h - x_h in polytope coordinates."""

    __slots__ = ("lo", "hi", "sign")

    def __init__(self, lo: int, hi: int, sign: int):
        if lo > hi or sign not in (-1, 1):
            raise ValueError("bad interval inequality")
        self.lo = lo
        self.hi = hi
        self.sign = sign

    def as_tuple(self):
        return (self.lo, self.hi, self.sign)

    def __eq__(self, other):
        return isinstance(other, SignedIntervalInequality) and self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        body = f"y{self.lo}" if self.lo == self.hi else f"y{self.lo}+...+y{self.hi}"
        return f"{body} {'>=' if self.sign > 0 else '<='} 0"


def fan_inequalities(tree: PlaneBinaryTree) -> list:
    """The n-1 inequalities of the chamber of T in R^{n-1}.

    A right child c of p contributes y_{p+1} + ... + y_c <= 0; a left
    child c of p contributes y_{c+1} + ... + y_p >= 0.  (Child vertices
    sit farther from the root, so along each edge the prefix sums drop
    toward the child on the right and rise on the left.)
    """
    if tree.n < 2:
        raise ValueError("the fan needs n >= 2")
    out = []
    for p, c, is_left in tree.covers():
        if is_left:
            out.append(SignedIntervalInequality(c + 1, p, +1))
        else:
            out.append(SignedIntervalInequality(p + 1, c, -1))
    return sorted(out, key=lambda q: q.as_tuple())


def _interval_sums_ok(inequalities, prefix, strict: bool) -> bool:
    # prefix[i] = value_2 + ... + value_i, prefix[1] = 0
    for q in inequalities:
        s = prefix[q.hi] - prefix[q.lo - 1]
        if strict:
            if not (s * q.sign > 0):
                return False
        elif s * q.sign < 0:
            return False
    return True


def _prefix_from_point(point) -> list:
    # point holds coordinates (y_2, ..., y_n); prefix is 1-indexed with
    # prefix[1] = 0 and prefix[i] = y_2 + ... + y_i
    prefix = [Fraction(0), Fraction(0)]
    acc = Fraction(0)
    for v in point:
        acc += Fraction(v)
        prefix.append(acc)
    return prefix


def _cartesian_tree_shape(heights: Sequence) -> Optional[tuple]:
    """Min-rooted cartesian tree of the height sequence; None on ties."""

    def build(lo, hi):
        if lo > hi:
            return None
        best = lo
        for i in range(lo + 1, hi + 1):
            if heights[i] < heights[best]:
                best = i
        # a tie anywhere on this level means the point is non-generic
        for i in range(lo, hi + 1):
            if i != best and heights[i] == heights[best]:
                raise _TieError()
        return (build(lo, best - 1), build(best + 1, hi))

    return build(0, len(heights) - 1)


class _TieError(Exception):
    pass


def locate_in_fan(point: Sequence, n: int):
    """The tree whose open chamber contains the point, or None on a boundary.

    The candidate tree comes from the min-rooted cartesian tree of the
    running sums (vertex i of the walk sits at height -(y_2 + ... + y_i)),
    then its inequalities are checked strictly.
    """
    point = [Fraction(v) for v in point]
    if len(point) != n - 1:
        raise ValueError(f"point must have length n - 1 = {n - 1}")
    prefix = _prefix_from_point(point)
    heights = [-prefix[i] for i in range(1, n + 1)]
    try:
        shape = _cartesian_tree_shape(heights)
    except _TieError:
        return None
    tree = PlaneBinaryTree(shape)
    if _interval_sums_ok(fan_inequalities(tree), prefix, strict=True):
        return tree
    return None


def fan_contains(tree: PlaneBinaryTree, point: Sequence, strict: bool = False) -> bool:
    prefix = _prefix_from_point([Fraction(v) for v in point])
    return _interval_sums_ok(fan_inequalities(tree), prefix, strict)


def delta_membership(tree: PlaneBinaryTree, spec, y: Sequence, strict: bool = False) -> bool:
    """Whether y lies in the (closed) chamber of T inside Pi_n(x).

    The chamber constraints are the fan inequalities with every y_h
    replaced by y_h - x_h."""
    spec = as_spec(spec)
    y = [Fraction(v) for v in y]
    if len(y) != spec.n or spec.n != tree.n:
        raise ValueError("dimension mismatch")
    shifted = [y[i] - spec.x[i] for i in range(1, spec.n)]
    prefix = _prefix_from_point(shifted)
    return _interval_sums_ok(fan_inequalities(tree), prefix, strict)


def delta_volume(tree: PlaneBinaryTree, spec) -> Fraction:
    """Volume of the chamber of T: the volume-polynomial monomial at k(T)."""
    spec = as_spec(spec)
    k = k_of_tree(tree)
    value = Fraction(1)
    for xi, ki in zip(spec.x, k):
        value *= xi**ki / math.factorial(ki)
    return value


def subdivision_volume_total(spec) -> Fraction:
    spec = as_spec(spec)
    return sum(
        (delta_volume(t, spec) for t in enumerate_trees(spec.n)), start=Fraction(0)
    )


# ----------------------------------------------------------------------
# Triangulations of the (n+2)-gon


class PolygonDecomposition:
    """A noncrossing set of diagonals of a convex polygon on 0..n_gon-1."""

    __slots__ = ("n_gon", "diagonals")

    def __init__(self, n_gon: int, diagonals):
        diagonals = frozenset((min(a, b), max(a, b)) for a, b in diagonals)
        for a, b in diagonals:
            if not (0 <= a and b <= n_gon - 1) or b - a < 2 or (a == 0 and b == n_gon - 1):
                raise ValueError(f"({a}, {b}) is not a diagonal of the {n_gon}-gon")
        for d1, d2 in combinations(diagonals, 2):
            if _diagonals_cross(d1, d2):
                raise ValueError(f"diagonals {d1} and {d2} cross")
        self.n_gon = n_gon
        self.diagonals = diagonals

    def __eq__(self, other):
        return (
            isinstance(other, PolygonDecomposition)
            and self.n_gon == other.n_gon
            and self.diagonals == other.diagonals
        )

    def __hash__(self):
        return hash((self.n_gon, self.diagonals))

    def __repr__(self):
        return f"PolygonDecomposition({self.n_gon}, {sorted(self.diagonals)})"


def _diagonals_cross(d1, d2) -> bool:
    (a, b), (c, d) = sorted([d1, d2])
    return a < c < b < d


def tree_triangulation(tree: PlaneBinaryTree) -> PolygonDecomposition:
    """The triangulation of the (n+2)-gon matching T.

    Polygon vertices are 0..n+1 with root edge (0, n+1).  The triangle on
    chord (lo, hi) has apex equal to the subtree root's label; its two
    chords recurse into the left and right subtrees.  The vertex labels
    cut off above a diagonal (i, j) are exactly i+1..j-1.
    """
    n = tree.n
    diagonals = []

    def walk(node, lo, hi):
        if node is None:
            return
        left, right = node
        apex = lo + _count_internal(left) + 1
        if apex - lo >= 2:
            diagonals.append((lo, apex))
        if hi - apex >= 2:
            diagonals.append((apex, hi))
        walk(left, lo, apex)
        walk(right, apex, hi)

    walk(tree.shape, 0, n + 1)
    return PolygonDecomposition(n + 2, diagonals)


def triangulation_tree(dec: PolygonDecomposition) -> PlaneBinaryTree:
    """Inverse of tree_triangulation."""
    n = dec.n_gon - 2
    if len(dec.diagonals) != n - 1:
        raise ValueError("not a triangulation: wrong number of diagonals")
    diagonals = set(dec.diagonals)

    def chord_present(a, b):
        return b - a == 1 or (a, b) in diagonals or (a, b) == (0, n + 1)

    def build(lo, hi):
        if hi - lo == 1:
            return None
        for apex in range(lo + 1, hi):
            if chord_present(lo, apex) and chord_present(apex, hi):
                return (build(lo, apex), build(apex, hi))
        raise ValueError(f"no triangle on chord ({lo}, {hi}); not a triangulation")

    return PlaneBinaryTree(build(0, n + 1))


def diagonal_ray(diagonal, n: int) -> tuple:
    """The fan ray attached to a diagonal (i, j) of the (n+2)-gon, as an
    integer vector in coordinates y_2..y_n: e_j for i = 0, -e_{i+1} for
    j = n+1, and e_j - e_{i+1} otherwise."""
    i, j = min(diagonal), max(diagonal)
    vec = [0] * (n - 1)

    def unit(index):  # coordinate y_index lives at slot index - 2
        vec[index - 2] += 1

    def neg_unit(index):
        vec[index - 2] -= 1

    if i == 0:
        unit(j)
    elif j == n + 1:
        neg_unit(i + 1)
    else:
        unit(j)
        neg_unit(i + 1)
    return tuple(vec)


# ----------------------------------------------------------------------
# Chamber rays and the fan face poset


def _solve_ray(rows: list, keep_out: int, n: int) -> tuple:
    """Primitive integer generator of the ray cut out by all inequality
    hyperplanes except row keep_out, oriented into the chamber."""
    dim = n - 1
    system = [rows[r] for r in range(len(rows)) if r != keep_out]
    # gaussian elimination to a kernel vector
    m = [list(map(Fraction, row)) for row in system]
    pivots = []
    row_idx = 0
    for col in range(dim):
        pivot = next((r for r in range(row_idx, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row_idx], m[pivot] = m[pivot], m[row_idx]
        inv = m[row_idx][col]
        m[row_idx] = [v / inv for v in m[row_idx]]
        for r in range(len(m)):
            if r != row_idx and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row_idx])]
        pivots.append(col)
        row_idx += 1
    free = [c for c in range(dim) if c not in pivots]
    if len(free) != 1:
        raise ValueError("chamber is not simplicial")
    vec = [Fraction(0)] * dim
    vec[free[0]] = Fraction(1)
    for r, col in enumerate(pivots):
        vec[col] = -m[r][free[0]]
    # orient into the half-space of the kept row
    value = sum(a * b for a, b in zip(rows[keep_out], vec))
    if value == 0:
        raise ValueError("degenerate ray")
    if value < 0:
        vec = [-v for v in vec]
    lcm = 1
    for v in vec:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    return tuple(v // g for v in ints)


def chamber_rays(tree: PlaneBinaryTree) -> frozenset:
    """The n-1 extreme ray generators of the chamber of T."""
    n = tree.n
    if n < 2:
        raise ValueError("the fan needs n >= 2")
    rows = []
    for q in fan_inequalities(tree):
        row = [0] * (n - 1)
        for idx in range(q.lo, q.hi + 1):
            row[idx - 2] = q.sign
        rows.append(row)
    return frozenset(_solve_ray(rows, r, n) for r in range(len(rows)))


def fan_face_sets(n: int) -> set:
    """All faces of the fan, each as the frozenset of its rays.

    The fan is simplicial, so the faces of a chamber are exactly the
    subsets of its ray set; the empty set is the origin."""
    faces = set()
    for tree in enumerate_trees(n):
        rays = tuple(sorted(chamber_rays(tree)))
        for r in range(len(rays) + 1):
            for subset in combinations(rays, r):
                faces.add(frozenset(subset))
    return faces


def polygon_decompositions(n: int) -> set:
    """All noncrossing diagonal sets of the (n+2)-gon."""
    all_diagonals = [
        (i, j)
        for i in range(n + 2)
        for j in range(i + 2, n + 2)
        if not (i == 0 and j == n + 1)
    ]
    out = set()

    def rec(start, chosen):
        out.add(frozenset(chosen))
        for idx in range(start, len(all_diagonals)):
            d = all_diagonals[idx]
            if all(not _diagonals_cross(d, e) for e in chosen):
                chosen.append(d)
                rec(idx + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def assoc_face_poset_check(n: int, guard: int = 6) -> bool:
    """Verify the fan's face poset matches polygon decompositions.

    The bijection sends a noncrossing diagonal set D to the face spanned
    by its rays; it must be injective, onto, and turn containment of
    diagonal sets into containment of faces.  With tops adjoined on both
    sides this is exactly the poset duality with decompositions ordered
    by reverse inclusion.
    """
    if not 2 <= n <= guard:
        raise ResourceLimitError(f"face poset check supports 2 <= n <= {guard}")
    faces = fan_face_sets(n)
    decs = polygon_decompositions(n)
    mapped = {}
    for dec in decs:
        face = frozenset(diagonal_ray(d, n) for d in dec)
        if len(face) != len(dec):
            return False
        mapped[dec] = face
    if set(mapped.values()) != faces:
        return False
    if len(set(mapped.values())) != len(decs):
        return False
    decs_list = list(decs)
    for d1 in decs_list:
        for d2 in decs_list:
            if (d1 <= d2) != (mapped[d1] <= mapped[d2]):
                return False
    return True


# ----------------------------------------------------------------------
# The planted-tree construction from an alternating walk


class PlantedTreeWithLengths:
    """A rooted plane tree with positive rational edge lengths.

    `children` maps each node id to its ordered child list; node 0 is the
    planted root.  `length` maps a node to the length of the edge joining
    it to its parent.  `vertex_label` marks the internal walk vertices
    (valleys) with their 1-based discovery index; leaves carry None.
    Degenerate walks (ties among valley heights, zero-length edges) are
    flagged and need not be binary.
    """

    __slots__ = ("children", "length", "vertex_label", "degenerate")

    def __init__(self, children, length, vertex_label, degenerate):
        self.children = children
        self.length = length
        self.vertex_label = vertex_label
        self.degenerate = degenerate

    def total_length(self) -> Fraction:
        return sum(self.length.values(), start=Fraction(0))

    def is_planted_binary(self) -> bool:
        counts = {node: len(kids) for node, kids in self.children.items()}
        if counts.get(0, 0) != 1:
            return False
        return all(
            c in (0, 2) for node, c in counts.items() if node != 0
        )

    def binary_shape(self) -> PlaneBinaryTree:
        if self.degenerate or not self.is_planted_binary():
            raise ValueError("walk was degenerate; no binary shape")

        def build(node):
            kids = self.children[node]
            if not kids:
                return None
            return (build(kids[0]), build(kids[1]))

        root = self.children[0][0]
        return PlaneBinaryTree(build(root))


def build_tree_phi(spec, y: Sequence, s) -> PlantedTreeWithLengths:
    """Grow the planted tree of the alternating up-x / down-y walk.

    Walk up x_1, down y_1, ..., up x_{n+1} = s - sum(x), down
    y_{n+1} = s - sum(y).  Peaks become leaves, valleys become internal
    vertices; valley i sits at height u_i - v_i.  Requires y in Pi_n(x)
    and sum(x) < s.
    """
    spec = as_spec(spec)
    y = [Fraction(v) for v in y]
    n = spec.n
    if len(y) != n:
        raise ValueError("y must have length n")
    s = Fraction(s)
    if spec.u[-1] >= s:
        raise ValueError("s must exceed the total of x")
    acc = Fraction(0)
    vy = []
    for i, t in enumerate(y):
        if t < 0:
            raise ValueError("y must be nonnegative")
        acc += t
        if acc > spec.u[i]:
            raise ValueError("y is outside the polytope: prefix sums exceed those of x")
        vy.append(acc)

    xs = list(spec.x) + [s - spec.u[-1]]
    ys = y + [s - vy[-1]]
    degenerate = any(t == 0 for t in xs) or any(t == 0 for t in ys)

    children = {0: []}
    length = {}
    vertex_label = {0: None}
    next_id = 1
    # stack of (node id, height) from the planted root up the current spine
    stack = [(0, Fraction(0))]
    height = Fraction(0)
    for i in range(n + 1):
        peak = height + xs[i]
        leaf = next_id
        next_id += 1
        children[leaf] = []
        vertex_label[leaf] = None
        parent, ph = stack[-1]
        children[parent].append(leaf)
        length[leaf] = peak - ph
        height = peak - ys[i]
        if i == n:
            break
        # the new valley becomes an internal vertex on the current spine
        while stack and stack[-1][1] > height:
            stack.pop()
        if not stack:
            raise ValueError("walk descended below the root")
        base, bh = stack[-1]
        if bh == height:
            # valley lands exactly on an existing vertex: non-generic
            degenerate = True
            vertex = base
        else:
            vertex = next_id
            next_id += 1
            children[vertex] = [children[base].pop()]
            vertex_label[vertex] = None
            children[base].append(vertex)
            # splice: the edge base -> leaf is cut at the valley height
            length[vertex] = height - bh
            length[children[vertex][0]] -= length[vertex]
            stack.append((vertex, height))
        vertex_label[vertex] = i + 1
    if height != 0:
        raise ValueError("walk does not return to the root")
    return PlantedTreeWithLengths(children, length, vertex_label, degenerate)


# ----------------------------------------------------------------------
# Vertices and faces of Pi_n(x)


def polytope_vertices(spec, guard: int = 5) -> list:
    """All vertices of Pi_n(x) by basic-solution enumeration.

    Facet candidates are y_i = 0 and y_1 + ... + y_i = u_i; every vertex
    solves n of these.  Exact, intended for small n.
    """
    spec = as_spec(spec)
    n = spec.n
    if n > guard:
        raise ResourceLimitError(f"vertex enumeration bound exceeded: n = {n} > {guard}")
    vertices = set()
    facets = [("zero", i) for i in range(n)] + [("prefix", i) for i in range(n)]
    for subset in combinations(range(2 * n), n):
        chosen = [facets[i] for i in subset]
        # rows of the linear system
        matrix = []
        rhs = []
        for kind, i in chosen:
            if kind == "zero":
                row = [Fraction(0)] * n
                row[i] = Fraction(1)
                matrix.append(row)
                rhs.append(Fraction(0))
            else:
                matrix.append([Fraction(1)] * (i + 1) + [Fraction(0)] * (n - i - 1))
                rhs.append(spec.u[i])
        point = _solve_square(matrix, rhs)
        if point is None:
            continue
        acc = Fraction(0)
        feasible = True
        for i in range(n):
            if point[i] < 0:
                feasible = False
                break
            acc += point[i]
            if acc > spec.u[i]:
                feasible = False
                break
        if feasible:
            vertices.add(tuple(point))
    return sorted(vertices)


def _solve_square(matrix, rhs):
    n = len(matrix)
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col]
        m[col] = [v / inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def face_structure(spec) -> tuple:
    """Block sizes of the equality pattern of u, and the vertex count.

    Strict increases of u delimit the blocks b_1, ..., b_k; the polytope
    is combinatorially a product of simplices of those dimensions, and so
    has (b_1 + 1) ... (b_k + 1) vertices.  All x_i > 0 gives blocks of
    size one, the cube type.
    """
    spec = as_spec(spec)
    if spec.x[0] == 0:
        raise ValueError("face structure needs x_1 > 0")
    blocks = []
    size = 1
    for i in range(1, spec.n):
        if spec.u[i] > spec.u[i - 1]:
            blocks.append(size)
            size = 1
        else:
            size += 1
    blocks.append(size)
    count = 1
    for b in blocks:
        count *= b + 1
    return tuple(blocks), count


# ----------------------------------------------------------------------
# Subdivision geometry emission


def chamber_vertices(tree: PlaneBinaryTree, spec, guard: int = 5) -> list:
    """Vertices of the closed chamber of T inside Pi_n(x)."""
    spec = as_spec(spec)
    n = spec.n
    if n > guard:
        raise ResourceLimitError(f"vertex enumeration bound exceeded: n = {n} > {guard}")
    halfspaces = []  # rows (a, b) meaning a . y <= b
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(-1)
        halfspaces.append((row, Fraction(0)))
    for i in range(n):
        halfspaces.append(([Fraction(1)] * (i + 1) + [Fraction(0)] * (n - i - 1), spec.u[i]))
    if n >= 2:
        for q in fan_inequalities(tree):
            row = [Fraction(0)] * n
            bound = Fraction(0)
            for idx in range(q.lo, q.hi + 1):
                row[idx - 1] = Fraction(-q.sign)
                bound -= q.sign * spec.x[idx - 1]
            halfspaces.append((row, bound))
    vertices = set()
    for subset in combinations(range(len(halfspaces)), n):
        matrix = [halfspaces[i][0] for i in subset]
        rhs = [halfspaces[i][1] for i in subset]
        point = _solve_square(matrix, rhs)
        if point is None:
            continue
        if all(
            sum(a * p for a, p in zip(row, point)) <= b for row, b in halfspaces
        ):
            vertices.add(tuple(point))
    return sorted(vertices)


def subdivision_chambers(spec) -> list:
    """Per-tree geometry of the subdivision: tree, k, inequalities, volume,
    and exact vertices.  Intended for the small n used in drawings."""
    spec = as_spec(spec)
    out = []
    for tree in enumerate_trees(spec.n):
        entry = {
            "tree": tree,
            "k": k_of_tree(tree).parts,
            "inequalities": fan_inequalities(tree) if spec.n >= 2 else [],
            "volume": delta_volume(tree, spec),
            "vertices": chamber_vertices(tree, spec),
        }
        out.append(entry)
    return out
