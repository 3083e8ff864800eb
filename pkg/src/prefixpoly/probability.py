"""Order-statistic band probabilities driven by the volume polynomial.

For n independent uniforms on (0, 1) with order statistics U_(1) <= ... <=
U_(n), one-sided band probabilities are exact evaluations of n! V_n at
difference vectors of the band, two-sided bands have a determinant form,
and several classical closed forms (the straight-line crossing identity,
the ballot-style multinomial bounds, the piecewise line-crossing sum)
follow by specializing the band.  A seeded Monte Carlo sampler validates
the exact values.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import MultivariatePolynomial, RationalMatrix, determinant, poly_eval
from .volume import volume_poly


class BandSpec:
    """Lower and upper band vectors inside the ordered simplex."""

    __slots__ = ("r", "s")

    def __init__(self, r: Sequence | None, s: Sequence | None, n: int | None = None):
        if r is None and s is None:
            raise ValueError("at least one band side is required")
        length = len(r if r is not None else s) if n is None else n
        self.r = _check_simplex(r, length) if r is not None else tuple([Fraction(0)] * length)
        self.s = _check_simplex(s, length) if s is not None else tuple([Fraction(1)] * length)
        if any(a > b for a, b in zip(self.r, self.s)):
            raise ValueError("need r <= s componentwise")

    @property
    def n(self):
        return len(self.r)


def _check_simplex(v, length: int) -> tuple:
    v = tuple(Fraction(t) for t in v)
    if len(v) != length:
        raise ValueError(f"band has length {len(v)}, expected {length}")
    if any(t < 0 or t > 1 for t in v):
        raise ValueError("band values must lie in [0, 1]")
    if any(a > b for a, b in zip(v, v[1:])):
        raise ValueError("band values must be weakly increasing")
    return v


def upper_band_prob(s: Sequence) -> Fraction:
    """P(U_(j) <= s_j for all j) = n! V_n(s_1 - s_0, ..., s_n - s_{n-1})."""
    s = _check_simplex(s, len(s))
    n = len(s)
    x = [s[0]] + [s[j] - s[j - 1] for j in range(1, n)]
    return math.factorial(n) * poly_eval(volume_poly(n), x)


def lower_band_prob(r: Sequence) -> Fraction:
    """P(U_(j) >= r_j for all j), via the reversed difference vector."""
    r = _check_simplex(r, len(r))
    n = len(r)
    padded = list(r) + [Fraction(1)]
    x = [padded[n + 1 - j] - padded[n - j] for j in range(1, n + 1)]
    return math.factorial(n) * poly_eval(volume_poly(n), x)


def band_prob(r: Sequence, s: Sequence) -> Fraction:
    """P(r_j <= U_(j) <= s_j for all j) by the determinant with entries
    (s_i - r_j)_+^{j-i+1} / (j-i+1)! (zero when j - i + 1 < 0)."""
    band = BandSpec(r, s)
    n = band.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            e = j - i + 1
            if e < 0:
                row.append(Fraction(0))
            else:
                base = max(Fraction(0), band.s[i - 1] - band.r[j - 1])
                row.append(base**e / math.factorial(e))
        rows.append(row)
    return math.factorial(n) * determinant(RationalMatrix.from_rows(rows))


def multinomial_ballot(p: Sequence) -> tuple:
    """For multinomial counts N_1..N_{n+1} with cell probabilities p, the
    probabilities that every prefix sum of counts reaches, respectively
    stays below, its index: (n! V_n(p_1..p_n), n! V_n(p_{n+1}, p_n, .., p_2))."""
    p = [Fraction(t) for t in p]
    if len(p) < 2:
        raise ValueError("need at least two cells")
    if any(t < 0 for t in p) or sum(p) != 1:
        raise ValueError("p must be a probability vector")
    n = len(p) - 1
    ahead = math.factorial(n) * poly_eval(volume_poly(n), p[:n])
    behind_point = [p[n]] + [p[j] for j in range(n - 1, 0, -1)]
    behind = math.factorial(n) * poly_eval(volume_poly(n), behind_point)
    return ahead, behind


def pyke_vector(n: int, b, x) -> list:
    """The band difference vector whose volume gives the line-crossing
    probability: (1 + x - nb, b, ..., b, (f+1)b - x, 0, ..., 0) with
    f = floor(x / b)."""
    b, x = Fraction(b), Fraction(x)
    f = int(x / b) if b > 0 else 0
    boundary = n - f + 1
    vec = []
    for i in range(1, n + 1):
        if i == 1:
            vec.append(1 + x - n * b)
        elif i < boundary:
            vec.append(b)
        elif i == boundary:
            vec.append((f + 1) * b - x)
        else:
            vec.append(Fraction(0))
    return vec


def pyke_formula(n: int, b, x) -> Fraction:
    """P(max_i (b i - U_(i)) <= x) for 0 <= b <= 1, 0 <= nb - x <= 1, x >= 0:

        (1 + x - nb) sum_{j=0}^{floor(x/b)} C(n,j) (jb - x)^j (1 + x - jb)^{n-j-1}
    """
    b, x = Fraction(b), Fraction(x)
    if not 0 < b <= 1:
        raise ValueError("need 0 < b <= 1")
    if not 0 <= n * b - x <= 1:
        raise ValueError("need 0 <= n b - x <= 1")
    if x < 0:
        raise ValueError("need x >= 0")
    f = int(x / b)
    total = Fraction(0)
    for j in range(f + 1):
        total += math.comb(n, j) * (j * b - x) ** j * (1 + x - j * b) ** (n - j - 1)
    return (1 + x - n * b) * total


@dataclass
class MonteCarloResult:
    estimate: float
    std_error: float
    trials: int
    seed: int

    def within(self, exact, sigmas: float = 3.0) -> bool:
        exact = float(exact)
        slack = sigmas * self.std_error
        return abs(self.estimate - exact) <= slack or slack == 0 and self.estimate == exact

    def to_json_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "trials": self.trials,
            "seed": self.seed,
        }


def mc_band(band: BandSpec, trials: int, seed: int) -> MonteCarloResult:
    """Estimate P(r_j <= U_(j) <= s_j for all j) by seeded sampling."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    n = band.n
    lo = [float(t) for t in band.r]
    hi = [float(t) for t in band.s]
    hits = 0
    for _ in range(trials):
        sample = sorted(rng.random() for _ in range(n))
        ok = True
        for j in range(n):
            if not lo[j] <= sample[j] <= hi[j]:
                ok = False
                break
        hits += ok
    estimate = hits / trials
    std_error = math.sqrt(estimate * (1 - estimate) / trials)
    return MonteCarloResult(estimate, std_error, trials, seed)


def daniels_band(n: int, p) -> list:
    """The lower band r_j = j p / n of the straight-line crossing identity."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    return [Fraction(j) * p / n for j in range(1, n + 1)]


def daniels_identity_poly(n: int) -> bool:
    """Check n! V_n(1 - p, p/n, ..., p/n) = 1 - p as a polynomial in p."""
    t = MultivariatePolynomial.variable(1, 0)
    point = [1 - t] + [t * Fraction(1, n)] * (n - 1)
    value = volume_poly(n).substitute(point) * math.factorial(n)
    return value == 1 - t
