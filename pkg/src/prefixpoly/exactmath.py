"""Exact rational scalars, sparse multivariate polynomials, and determinants.

Scalars are `fractions.Fraction` (arbitrary precision, always normalized,
positive denominator), imported here under the alias `ExactRational` so the
rest of the package has a single spelling for "exact rational number".

A polynomial in `nvars` variables is a sparse map from exponent tuples to
nonzero rational coefficients.  The zero polynomial stores no terms.  All
arithmetic is exact; there is no floating-point mode anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

ExactRational = Fraction

Scalar = Union[int, Fraction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"not an exact rational: {value!r}")


class MultivariatePolynomial:
    """Sparse polynomial over the rationals in variables x1..x{nvars}.

    Terms are held in a dict mapping exponent tuples (length `nvars`,
    nonnegative ints) to nonzero Fraction coefficients.  Instances are
    treated as immutable: every operation returns a new polynomial, which
    makes sharing (e.g. the per-degree volume cache) safe.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, Scalar] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length != {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _as_fraction(coeff)
            if c != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self.nvars = nvars
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MultivariatePolynomial":
        return MultivariatePolynomial(nvars, {})

    @staticmethod
    def constant(nvars: int, value: Scalar) -> "MultivariatePolynomial":
        return MultivariatePolynomial(nvars, {(0,) * nvars: _as_fraction(value)})

    @staticmethod
    def variable(nvars: int, index: int) -> "MultivariatePolynomial":
        """The monomial x{index+1} (0-based index into the variable list)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        exps = [0] * nvars
        exps[index] = 1
        return MultivariatePolynomial(nvars, {tuple(exps): Fraction(1)})

    # -- ring operations ----------------------------------------------

    def _coerce(self, other) -> "MultivariatePolynomial":
        if isinstance(other, MultivariatePolynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials have different numbers of variables")
            return other
        return MultivariatePolynomial.constant(self.nvars, _as_fraction(other))

    def __add__(self, other) -> "MultivariatePolynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return MultivariatePolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultivariatePolynomial":
        return MultivariatePolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultivariatePolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultivariatePolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultivariatePolynomial":
        if not isinstance(other, MultivariatePolynomial):
            c = _as_fraction(other)
            return MultivariatePolynomial(self.nvars, {e: k * c for e, k in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MultivariatePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultivariatePolynomial":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = MultivariatePolynomial.constant(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultivariatePolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultivariatePolynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; the zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        if not self.terms:
            return True
        degrees = {sum(e) for e in self.terms}
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def top_degree_part(self) -> "MultivariatePolynomial":
        d = self.total_degree()
        return MultivariatePolynomial(
            self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d}
        )

    def sorted_terms(self):
        """Terms in descending graded-lex order (degree first, then lex)."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    # -- evaluation and substitution ------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        values = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def substitute(self, values: Sequence) -> "MultivariatePolynomial":
        """Substitute a polynomial or scalar for every variable.

        All polynomial values must share one variable count, which becomes
        the variable count of the result.
        """
        if len(values) != self.nvars:
            raise ValueError(f"substitution needs {self.nvars} values, got {len(values)}")
        out_nvars = None
        for v in values:
            if isinstance(v, MultivariatePolynomial):
                if out_nvars is not None and v.nvars != out_nvars:
                    raise ValueError("substituted polynomials disagree on nvars")
                out_nvars = v.nvars
        if out_nvars is None:
            return MultivariatePolynomial.constant(0, self.evaluate(values))
        coerced = [
            v if isinstance(v, MultivariatePolynomial)
            else MultivariatePolynomial.constant(out_nvars, _as_fraction(v))
            for v in values
        ]
        result = MultivariatePolynomial.zero(out_nvars)
        power_cache = [{0: MultivariatePolynomial.constant(out_nvars, 1)} for _ in coerced]
        for exps, coeff in self.terms.items():
            term = MultivariatePolynomial.constant(out_nvars, coeff)
            for i, e in enumerate(exps):
                if e:
                    cache = power_cache[i]
                    if e not in cache:
                        cache[e] = coerced[i] ** e
                    term = term * cache[e]
            result = result + term
        return result

    # -- serialization ---------------------------------------------------

    def to_text(self, varnames: Sequence[str] | None = None) -> str:
        """Canonical text form: graded-lex descending, "p/q" coefficients."""
        if not self.terms:
            return "0"
        if varnames is None:
            varnames = [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(varnames, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = " ".join(factors)
            if not body:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append(body)
            elif coeff == -1:
                pieces.append(f"-{body}")
            else:
                pieces.append(f"{coeff} {body}")
        return " + ".join(pieces).replace("+ -", "- ")

    def to_json_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"coeff": str(coeff), "exps": list(exps)}
                for exps, coeff in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "MultivariatePolynomial":
        return MultivariatePolynomial(
            data["nvars"],
            {tuple(t["exps"]): Fraction(t["coeff"]) for t in data["terms"]},
        )

    def __repr__(self):
        return f"MultivariatePolynomial({self.to_text()!r})"


class RationalMatrix:
    """Dense matrix whose entries are Fractions or polynomials."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "RationalMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return RationalMatrix(r, c, [x for row in rows for x in row])

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix shape mismatch")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = self.entry(i, 0) * other.entry(0, j)
                for k in range(1, self.cols):
                    acc = acc + self.entry(i, k) * other.entry(k, j)
                out.append(acc)
        return RationalMatrix(self.rows, other.cols, out)


def _bareiss_determinant(rows: list) -> Fraction:
    """Fraction-free determinant of a scalar matrix.

    Denominators are cleared first, then the Bareiss pivoting scheme keeps
    every intermediate value an integer, so no rational blowup occurs.
    """
    n = len(rows)
    scale = Fraction(1)
    m = []
    for row in rows:
        denom_lcm = 1
        for v in row:
            denom_lcm = denom_lcm * v.denominator // math.gcd(denom_lcm, v.denominator)
        scale /= denom_lcm
        m.append([int(v * denom_lcm) for v in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return scale * sign * m[-1][-1]


def _minor_expansion_determinant(rows: list, nvars: int) -> MultivariatePolynomial:
    """Determinant over the polynomial ring by expansion on column subsets.

    Works down the rows keeping one minor per surviving column subset, which
    is exponentially cheaper than raw cofactor recursion for the dense
    symbolic matrices built from prefix-sum powers.
    """
    n = len(rows)
    zero = MultivariatePolynomial.zero(nvars)
    minors = {frozenset(range(n)): MultivariatePolynomial.constant(nvars, 1)}
    for i in range(n):
        next_minors: dict = {}
        for colset, minor in minors.items():
            if minor.is_zero():
                continue
            for sign_idx, j in enumerate(sorted(colset)):
                entry = rows[i][j]
                if isinstance(entry, MultivariatePolynomial):
                    if entry.is_zero():
                        continue
                    piece = entry * minor
                elif entry == 0:
                    continue
                else:
                    piece = minor * _as_fraction(entry)
                if sign_idx % 2:
                    piece = -piece
                key = colset - {j}
                next_minors[key] = next_minors.get(key, zero) + piece
        minors = next_minors
    return minors.get(frozenset(), zero)


def determinant(matrix: RationalMatrix):
    """Exact determinant of a square matrix of rationals or polynomials."""
    if matrix.rows != matrix.cols:
        raise ValueError(f"determinant needs a square matrix, got {matrix.rows}x{matrix.cols}")
    if matrix.rows == 0:
        return Fraction(1)
    rows = [matrix.row(i) for i in range(matrix.rows)]
    nvars = None
    for row in rows:
        for v in row:
            if isinstance(v, MultivariatePolynomial):
                nvars = v.nvars
                break
        if nvars is not None:
            break
    if nvars is None:
        return _bareiss_determinant([[_as_fraction(v) for v in row] for row in rows])
    coerced = [
        [
            v if isinstance(v, MultivariatePolynomial)
            else MultivariatePolynomial.constant(nvars, _as_fraction(v))
            for v in row
        ]
        for row in rows
    ]
    return _minor_expansion_determinant(coerced, nvars)


def multichoose(k, j: int):
    """Number of multisets of size j from k objects: k(k+1)...(k+j-1)/j!.

    Treated as a polynomial identity in k, so k may be an integer, a
    Fraction, or a polynomial.  For integer k the value is 0 whenever
    -j+1 <= k <= 0, which the falling product produces automatically.
    """
    if j < 0:
        raise ValueError("multichoose needs j >= 0")
    if isinstance(k, MultivariatePolynomial):
        result = MultivariatePolynomial.constant(k.nvars, 1)
        for t in range(j):
            result = result * (k + t)
        return result * Fraction(1, math.factorial(j))
    kf = _as_fraction(k)
    result = Fraction(1)
    for t in range(j):
        result *= kf + t
    return result / math.factorial(j)


def hook_count_rectangular(m: int, n: int) -> int:
    """Standard Young tableaux of the n-row, m-column rectangle.

    Hook lengths of cell (i, j) in the rectangle are (m - j) + (n - i) + 1
    with 0-based i, j; the count is (nm)! divided by their product.
    """
    if m < 1 or n < 1:
        raise ValueError("rectangle sides must be >= 1")
    count = math.factorial(m * n)
    for i in range(n):
        for j in range(m):
            count //= (m - j) + (n - i) - 1
    return count


def poly_eval(p: MultivariatePolynomial, point: Sequence[Scalar]) -> Fraction:
    """Exact evaluation of p at a rational point."""
    return p.evaluate(point)


def lagrange_interpolate(points: Iterable[tuple]) -> MultivariatePolynomial:
    """Univariate polynomial through the given (x, y) rational points."""
    pts = [(_as_fraction(x), _as_fraction(y)) for x, y in points]
    if len({x for x, _ in pts}) != len(pts):
        raise ValueError("interpolation nodes must be distinct")
    t = MultivariatePolynomial.variable(1, 0)
    result = MultivariatePolynomial.zero(1)
    for i, (xi, yi) in enumerate(pts):
        basis = MultivariatePolynomial.constant(1, yi)
        for j, (xj, _) in enumerate(pts):
            if i != j:
                basis = basis * (t - xj) * Fraction(1, 1) * Fraction(1, (xi - xj))
        result = result + basis
    return result


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or integer text into an exact rational."""
    return Fraction(text.strip())
