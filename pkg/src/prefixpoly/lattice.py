"""Exact lattice-point counts of Pi_n(x) and its generalizations.

Covers the multichoose summation formula for N(Pi_n(x)), a brute-force
scan oracle, the product Ehrhart polynomial for x = (a, b, ..., b), the
plane-partition bijection, the matrix polytope Pi_n^m(x), Steck's count
of bounded strictly increasing integer tuples, and the two-sided polytope
Pi_n(z, x) with its cell decomposition.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .ballot import iter_K
from .errors import ResourceLimitError
from .exactmath import (
    MultivariatePolynomial,
    RationalMatrix,
    determinant,
    hook_count_rectangular,
    lagrange_interpolate,
    multichoose,
)
from .volume import PolytopeSpec, as_spec

DEFAULT_SCAN_BUDGET = 10_000_000


class Shape:
    """A partition: weakly decreasing nonnegative integer parts."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError("shape parts must be nonnegative")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"{parts} is not weakly decreasing")
        self.parts = tuple(p for p in parts)

    def cells(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        other_parts = other.parts if isinstance(other, Shape) else tuple(other)
        return self.parts == other_parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Shape{self.parts}"


def reversed_prefix_shape(spec) -> Shape:
    """The partition (u_n, ..., u_1) attached to an integral x."""
    spec = as_spec(spec)
    spec.integer_x()
    return Shape(tuple(int(v) for v in reversed(spec.u)))


class TwoSidedSpec:
    """Lower and upper bounding vectors (z, x) with prefix sums v <= u."""

    __slots__ = ("z", "x", "v", "u")

    def __init__(self, z: Sequence, x: Sequence):
        z = tuple(Fraction(t) for t in z)
        x = tuple(Fraction(t) for t in x)
        if len(z) != len(x) or not x:
            raise ValueError("z and x must be nonempty and the same length")
        if any(t < 0 for t in z) or any(t < 0 for t in x):
            raise ValueError("z and x must be nonnegative")
        v, u = [], []
        av = au = Fraction(0)
        for zi, xi in zip(z, x):
            av += zi
            au += xi
            if av > au:
                raise ValueError(f"prefix sums violate v <= u at {len(v) + 1}")
            v.append(av)
            u.append(au)
        self.z, self.x, self.v, self.u = z, x, tuple(v), tuple(u)

    @property
    def n(self):
        return len(self.x)

    def integer_data(self):
        if any(t.denominator != 1 for t in self.z + self.x):
            raise ValueError("two-sided counts need integer z and x")
        return tuple(int(t) for t in self.z), tuple(int(t) for t in self.x)


# ----------------------------------------------------------------------
# Lattice points of Pi_n(x)


def count_points(spec) -> int:
    """N(Pi_n(x)) by the ballot-composition multichoose sum."""
    spec = as_spec(spec)
    x = spec.integer_x()
    n = spec.n
    total = Fraction(0)
    for k in iter_K(n):
        term = multichoose(x[0] + 1, k[0])
        for i in range(1, n):
            if term == 0:
                break
            term *= multichoose(x[i], k[i])
        total += term
    assert total.denominator == 1
    return int(total)


def count_points_brute(spec, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """N(Pi_n(x)) by exhaustive scan over prefix-bounded integer vectors."""
    spec = as_spec(spec)
    x = spec.integer_x()
    n = spec.n
    u = [int(t) for t in spec.u]
    box = 1
    for ui in u:
        box *= ui + 1
        if box > budget:
            raise ResourceLimitError(f"scan box exceeds budget {budget}")

    def rec(i: int, partial: int) -> int:
        room = u[i] - partial
        if i == n - 1:
            return room + 1
        return sum(rec(i + 1, partial + yi) for yi in range(room + 1))

    return rec(0, 0)


def ehrhart_ab(n: int, a: int, b: int) -> MultivariatePolynomial:
    """Ehrhart polynomial of Pi_n((a, b, ..., b)) in the dilation r.

    The closed product form (1/n!) (ra + 1) prod_{k=2..n} (r(a + nb) + k).
    """
    if n < 1:
        raise ValueError("ehrhart_ab needs n >= 1")
    r = MultivariatePolynomial.variable(1, 0)
    poly = r * a + 1
    slope = a + n * b
    for k in range(2, n + 1):
        poly = poly * (r * slope + k)
    return poly * Fraction(1, math.factorial(n))


def lattice_count_symbolic(n: int) -> MultivariatePolynomial:
    """N(Pi_n(x)) as a polynomial in x_1, ..., x_n."""
    variables = [MultivariatePolynomial.variable(n, i) for i in range(n)]
    total = MultivariatePolynomial.zero(n)
    for k in iter_K(n):
        term = multichoose(variables[0] + 1, k[0])
        for i in range(1, n):
            term = term * multichoose(variables[i], k[i])
        total = total + term
    return total


def shifted_nonneg_check(n: int, limit: int = 6) -> bool:
    """True iff N(Pi_n(x_1 - 1, x_2, ..., x_n)) has nonnegative coefficients."""
    if n > limit:
        raise ResourceLimitError(f"symbolic expansion bound exceeded: n = {n} > {limit}")
    poly = lattice_count_symbolic(n)
    variables = [MultivariatePolynomial.variable(n, i) for i in range(n)]
    shifted = poly.substitute([variables[0] - 1] + variables[1:])
    return all(c >= 0 for c in shifted.terms.values())


# ----------------------------------------------------------------------
# Plane partitions


def plane_partitions(shape, maxpart: int, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """Count plane partitions of the shape with entries in {1, ..., maxpart}.

    Every cell is filled; rows and columns are weakly decreasing.  (The
    all-zero row convention: dropping all entries by one gives the usual
    picture of partitions with parts at most maxpart - 1 and suppressed
    zeros.)  Counting is by row-major backtracking with min(above, left)
    upper bounds, guarded by a visited-node budget.
    """
    shape = shape if isinstance(shape, Shape) else Shape(shape)
    if maxpart < 1:
        raise ValueError("maxpart must be >= 1")
    parts = [p for p in shape.parts if p > 0]
    if not parts:
        return 1
    rows = len(parts)
    nodes = 0

    grid = [[0] * p for p in parts]

    def rec(r: int, c: int) -> int:
        nonlocal nodes
        if r == rows:
            return 1
        nr, nc = (r, c + 1) if c + 1 < parts[r] else (r + 1, 0)
        hi = maxpart
        if c > 0:
            hi = min(hi, grid[r][c - 1])
        if r > 0 and c < parts[r - 1]:
            hi = min(hi, grid[r - 1][c])
        total = 0
        for v in range(1, hi + 1):
            nodes += 1
            if nodes > budget:
                raise ResourceLimitError(f"plane partition backtracking exceeded {budget} nodes")
            grid[r][c] = v
            total += rec(nr, nc)
        return total

    return rec(0, 0)


# ----------------------------------------------------------------------
# The matrix polytope Pi_n^m(x)


def count_points_nm(spec, m: int, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """Lattice points of Pi_n^m(x): n x m integer matrices y >= 0 whose
    column prefix sums v_{ij} = y_{1j} + ... + y_{ij} satisfy, per row i,

        v_{i1} <= v_{i2} <= ... <= v_{im} <= u_i.

    Column profiles (v_{1j}, ..., v_{nj}) are nondecreasing vectors bounded
    by u; the count is over componentwise nondecreasing chains of m such
    profiles, tallied exactly by iterated box suffix sums.
    """
    spec = as_spec(spec)
    spec.integer_x()
    if m < 1:
        raise ValueError("count_points_nm needs m >= 1")
    n = spec.n
    u = [int(t) for t in spec.u]
    dims = [ui + 1 for ui in u]
    total_cells = 1
    for d in dims:
        total_cells *= d
    if total_cells * m > budget:
        raise ResourceLimitError(f"profile box {total_cells} x {m} exceeds budget {budget}")

    strides = [0] * n
    s = 1
    for i in range(n - 1, -1, -1):
        strides[i] = s
        s *= dims[i]

    valid = [True] * total_cells
    for i in range(1, n):
        for flat in range(total_cells):
            if (flat // strides[i]) % dims[i] < (flat // strides[i - 1]) % dims[i - 1]:
                valid[flat] = False

    g = [1 if ok else 0 for ok in valid]
    for _ in range(m - 1):
        h = g[:]
        for axis in range(n):
            stride = strides[axis]
            dim = dims[axis]
            if dim == 1:
                continue
            block = stride * dim
            for start in range(0, total_cells, block):
                for p in range(start + block - stride - stride, start - stride, -stride):
                    for off in range(stride):
                        h[p + off] += h[p + off + stride]
        g = [h[f] if valid[f] else 0 for f in range(total_cells)]
    return sum(g)


def count_points_nm_scan(spec, m: int, budget: int = 200_000) -> int:
    """Plain cell-by-cell scan over the matrices of Pi_n^m(x).

    Cross-check for count_points_nm on tiny instances; enumerates every
    matrix so the budget is tight.
    """
    spec = as_spec(spec)
    spec.integer_x()
    n = spec.n
    u = [int(t) for t in spec.u]
    nodes = 0

    def rec(j: int, prev_profile: tuple) -> int:
        nonlocal nodes
        if j == m:
            return 1
        total = 0

        def fill(i: int, profile: list) -> None:
            nonlocal total, nodes
            if i == n:
                nonlocal_result = rec(j + 1, tuple(profile))
                total += nonlocal_result
                return
            lo = max(prev_profile[i], profile[i - 1] if i else 0)
            for v in range(lo, u[i] + 1):
                nodes += 1
                if nodes > budget:
                    raise ResourceLimitError("matrix scan budget exceeded")
                profile.append(v)
                fill(i + 1, profile)
                profile.pop()

        fill(0, [])
        return total

    return rec(0, (0,) * n)


def volume_nm_formula(n: int, m: int, a, b) -> Fraction:
    """Closed form of the top Ehrhart coefficient (volume) of Pi_n^m at
    x = (a, b, ..., b):

        (nm)! V = f * prod_{j=0}^{n-1} (a + j b)^{max(0, m - j)}
                    * prod_{j=n}^{n+m-1} (a + j b)^{max(0, j - m)}

    where f counts standard Young tableaux of the n x m rectangle.  At
    a = b = 1 the two products collapse to 1! 2! ... m! and
    (n+1)^{n-m} (n+2)^{n-m+1} ... (n+m)^{n-1}.
    """
    if n < 1 or m < 1:
        raise ValueError("volume_nm_formula needs n, m >= 1")
    a, b = Fraction(a), Fraction(b)
    value = Fraction(hook_count_rectangular(m, n))
    for j in range(n):
        e = m - j
        if e > 0:
            value *= (a + j * b) ** e
    for j in range(n, n + m):
        e = j - m
        if e > 0:
            value *= (a + j * b) ** e
    return value / math.factorial(n * m)


def ehrhart_nm_interpolated(n: int, m: int, a: int, b: int) -> MultivariatePolynomial:
    """Ehrhart polynomial of Pi_n^m((a, b, ..., b)) by exact interpolation."""
    d = n * m
    points = []
    for r in range(d + 1):
        dilated = PolytopeSpec([r * a] + [r * b] * (n - 1))
        points.append((Fraction(r), Fraction(count_points_nm(dilated, m))))
    return lagrange_interpolate(points)


# ----------------------------------------------------------------------
# Steck's count of bounded strictly increasing tuples


def steck_count(b: Sequence[int], c: Sequence[int]) -> int:
    """Number of integer tuples j_1 < ... < j_n with b_i < j_i < c_i.

    Computed as the determinant of the binomial matrix with (i, j) entry
    binom(c_i - b_j + j - i - 1, j - i + 1), zeroed unless j - i + 1 >= 0
    and c_i - b_j > 1.
    """
    b = [int(t) for t in b]
    c = [int(t) for t in c]
    n = len(b)
    if len(c) != n or n == 0:
        raise ValueError("b and c must be nonempty and the same length")
    if any(b[i] > b[i + 1] for i in range(n - 1)) or any(
        c[i] > c[i + 1] for i in range(n - 1)
    ):
        raise ValueError("b and c must be weakly increasing")
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j - i + 1 >= 0 and c[i - 1] - b[j - 1] > 1:
                row.append(Fraction(math.comb(c[i - 1] - b[j - 1] + j - i - 1, j - i + 1)))
            else:
                row.append(Fraction(0))
        rows.append(row)
    value = determinant(RationalMatrix.from_rows(rows))
    assert value.denominator == 1
    return int(value)


def steck_count_brute(b: Sequence[int], c: Sequence[int]) -> int:
    """Oracle: enumerate the strictly increasing tuples directly."""
    b = [int(t) for t in b]
    c = [int(t) for t in c]
    n = len(b)

    def rec(i: int, prev: int) -> int:
        if i == n:
            return 1
        lo = max(b[i] + 1, prev + 1)
        hi = c[i] - 1
        return sum(rec(i + 1, j) for j in range(lo, hi + 1))

    return rec(0, -(10**9))


# ----------------------------------------------------------------------
# The two-sided polytope Pi_n(z, x)


def two_sided_count(spec: TwoSidedSpec, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """N(Pi_n(z, x)) by exhaustive scan: integer y >= 0 with
    v_i <= y_1 + ... + y_i <= u_i for all i."""
    z, x = spec.integer_data()
    n = spec.n
    v = [int(t) for t in spec.v]
    u = [int(t) for t in spec.u]
    box = 1
    for ui in u:
        box *= ui + 1
        if box > budget:
            raise ResourceLimitError(f"scan box exceeds budget {budget}")

    def rec(i: int, partial: int) -> int:
        lo = max(0, v[i] - partial)
        hi = u[i] - partial
        if i == n - 1:
            return max(0, hi - lo + 1)
        return sum(rec(i + 1, partial + yi) for yi in range(lo, hi + 1))

    return rec(0, 0)


def two_sided_count_n2_closed(spec: TwoSidedSpec) -> int:
    """The closed form for n = 2, split by whether x_1 >= z_1 + z_2."""
    if spec.n != 2:
        raise ValueError("closed form is for n = 2 only")
    (z1, z2), (x1, x2) = spec.integer_data()
    if x1 >= z1 + z2:
        value = (
            multichoose(x1 - z1 - z2 + 1, 2)
            + multichoose(x1 - z1 - z2 + 1, 1) * multichoose(x2, 1)
            + multichoose(z2, 1) * multichoose(x1 - z1 - z2 + 1, 1)
            + multichoose(z2, 1) * multichoose(x2, 1)
        )
    else:
        value = multichoose(x1 - z1 + 1, 1) * multichoose(x1 + x2 - z1 - z2 + 1, 1)
    assert value.denominator == 1
    return int(value)


class TwoSidedCell:
    """One cell of the decomposition of Pi_n(z, x).

    `word` is a linear extension of the 3 x n grid poset whose three rows
    carry the values v_i, the prefix sums of y, and u_i.  `terms` lists the
    chain entries in word order as ("v", i), ("y", i) or ("u", i) with
    1-based i, where ("y", i) stands for y_1 + ... + y_i.  `strict[t]` is
    True when the inequality between terms t and t+1 is strict (a descent
    of the word).
    """

    __slots__ = ("word", "terms", "strict")

    def __init__(self, word, terms, strict):
        self.word = tuple(word)
        self.terms = tuple(terms)
        self.strict = tuple(strict)

    def _term_value(self, kind: str, index: int, spec: TwoSidedSpec, prefix):
        if kind == "v":
            return spec.v[index - 1]
        if kind == "u":
            return spec.u[index - 1]
        return prefix[index - 1]

    def contains(self, spec: TwoSidedSpec, y: Sequence) -> bool:
        """Whether the integer (or rational) point y satisfies the chain."""
        prefix = []
        acc = Fraction(0)
        for t in y:
            acc += Fraction(t)
            prefix.append(acc)
        values = [self._term_value(k, i, spec, prefix) for k, i in self.terms]
        if values[0] < 0:
            return False
        for t in range(len(values) - 1):
            if self.strict[t]:
                if not values[t] < values[t + 1]:
                    return False
            elif not values[t] <= values[t + 1]:
                return False
        return True

    def is_empty(self, spec: TwoSidedSpec) -> bool:
        """Emptiness of the cell as a region of real points.

        Detected from the constants alone: the v and u entries appearing
        in the chain must already be ordered consistently, strictly so
        whenever a strict step separates them.
        """
        last_value = None
        strict_pending = False
        for t, (kind, index) in enumerate(self.terms):
            if t > 0 and self.strict[t - 1]:
                strict_pending = True
            if kind == "y":
                continue
            value = self._term_value(kind, index, spec, None)
            if last_value is not None:
                if value < last_value:
                    return True
                if strict_pending and value == last_value:
                    return True
            last_value = value
            strict_pending = False
        return False

    def count(self, spec: TwoSidedSpec, budget: int = DEFAULT_SCAN_BUDGET) -> int:
        """Integer points of Pi_n(z, x) lying in this cell."""
        z, x = spec.integer_data()
        n = spec.n
        u = [int(t) for t in spec.u]
        box = 1
        for ui in u:
            box *= ui + 1
            if box > budget:
                raise ResourceLimitError(f"scan box exceeds budget {budget}")
        total = 0

        def rec(i, partial, point):
            nonlocal total
            if i == n:
                if self.contains(spec, point):
                    total += 1
                return
            for yi in range(0, u[i] - partial + 1):
                point.append(yi)
                rec(i + 1, partial + yi, point)
                point.pop()

        rec(0, 0, [])
        return total

    def __repr__(self):
        bits = []
        for t, (kind, index) in enumerate(self.terms):
            name = {"v": f"v{index}", "u": f"u{index}"}.get(kind, f"Y{index}")
            bits.append(name)
            if t < len(self.strict):
                bits.append("<" if self.strict[t] else "<=")
        return "TwoSidedCell(0 <= " + " ".join(bits) + ")"


def _grid_poset_extensions(rows: int, n: int):
    """Linear extensions of the rows x n grid poset, natural labeling.

    Element r*n + c + 1 (row r, column c) is below r*n + c + 2 and
    (r+1)*n + c + 1.  Words are emitted in lexicographic order.
    """
    p = rows * n
    preds = [[] for _ in range(p + 1)]
    for r in range(rows):
        for c in range(n):
            label = r * n + c + 1
            if c > 0:
                preds[label].append(label - 1)
            if r > 0:
                preds[label].append(label - n)
    word: list = []
    placed = [False] * (p + 1)

    def rec():
        if len(word) == p:
            yield tuple(word)
            return
        for cand in range(1, p + 1):
            if placed[cand]:
                continue
            if all(placed[q] for q in preds[cand]):
                placed[cand] = True
                word.append(cand)
                yield from rec()
                word.pop()
                placed[cand] = False

    yield from rec()


def two_sided_cells(n: int, guard: int = 4) -> list:
    """The cells of the decomposition of Pi_n(z, x), one per linear
    extension of the 3 x n grid poset."""
    if n < 1:
        raise ValueError("two_sided_cells needs n >= 1")
    if n > guard:
        raise ResourceLimitError(f"extension enumeration bound exceeded: n = {n} > {guard}")
    cells = []
    for word in _grid_poset_extensions(3, n):
        terms = []
        for label in word:
            row, col = divmod(label - 1, n)
            kind = ("v", "y", "u")[row]
            terms.append((kind, col + 1))
        strict = [word[t] > word[t + 1] for t in range(len(word) - 1)]
        cells.append(TwoSidedCell(word, terms, strict))
    return cells
